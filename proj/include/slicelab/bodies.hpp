#pragma once

#include "slicelab/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace slicelab {

enum class BodyFamily { lq_ball, cube, cross_polytope, ellipsoid, custom };

std::string to_string(BodyFamily family);

using GaugeFn = std::function<double(const Vec&)>;

struct CustomBodyOptions {
  bool symmetric = true;
  /// Declares the body convex; enables chord-based section integration.
  bool convex = false;
  /// Random probes of homogeneity and symmetry run at construction.
  int check_samples = 64;
  std::uint64_t check_seed = 1;
};

/// An origin-symmetric star body with the origin in its interior, described by
/// its gauge (Minkowski functional). Values are immutable and cheap to copy;
/// all evaluators are re-entrant.
class StarBody {
 public:
  /// Unit ball of l_q^n scaled by `scale`. q = +inf yields the cube family.
  static StarBody lq_ball(int n, double q, double scale = 1.0);
  static StarBody euclidean_ball(int n, double radius = 1.0);
  static StarBody cube(int n, double half_side);
  static StarBody cross_polytope(int n, double scale = 1.0);
  static StarBody ellipsoid(std::vector<double> axes);
  static StarBody custom(int n, GaugeFn gauge, double bounding_radius,
                         CustomBodyOptions options = {});

  int dim() const { return n_; }
  BodyFamily family() const { return family_; }
  double q() const { return q_; }
  /// Scale for l_q balls and cross-polytopes, half side for cubes.
  double scale() const { return scale_; }
  const std::vector<double>& axes() const { return axes_; }
  bool symmetric() const { return symmetric_; }
  bool convex() const { return convex_; }
  bool has_linear_map() const { return static_cast<bool>(map_); }
  double bounding_radius() const { return bounding_radius_; }
  std::optional<double> exact_volume() const { return exact_volume_; }
  /// Diagnostics from construction-time probes (custom bodies only).
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// ||x||_K; +inf when x lies in no dilate of K.
  double gauge(const Vec& x) const;
  /// r_K(theta) = 1 / ||theta||_K for a unit direction.
  double radial(const Vec& theta) const;
  bool contains(const Vec& x, double tol = 0.0) const;

  /// sup{t >= 0 : c + t u in K} for c in K. Exact for ellipsoids and cubes,
  /// bracketed root finding otherwise. Requires a body that is star-shaped
  /// about c (any convex body, or c = 0).
  double ray_exit(const Vec& c, const Vec& u) const;

  /// lambda * K.
  StarBody scaled(double lambda) const;
  /// T(K) for an invertible linear map T.
  StarBody linear_image(const Mat& map) const;

  nlohmann::json to_json() const;
  static StarBody from_json(const nlohmann::json& spec);

 private:
  StarBody() = default;
  double family_gauge(const Vec& y) const;
  double family_ray_exit(const Vec& c, const Vec& u) const;
  double numeric_ray_exit(const Vec& c, const Vec& u) const;
  void probe_custom(const CustomBodyOptions& options);

  int n_ = 0;
  BodyFamily family_ = BodyFamily::custom;
  double q_ = 2.0;
  double scale_ = 1.0;
  std::vector<double> axes_;
  bool symmetric_ = true;
  bool convex_ = true;
  double bounding_radius_ = 1.0;
  std::optional<double> exact_volume_;
  std::shared_ptr<const GaugeFn> custom_;
  // Forward map T and its inverse; gauge_{TK}(x) = gauge_K(T^{-1} x).
  std::shared_ptr<const Mat> map_;
  std::shared_ptr<const Mat> inverse_map_;
  std::vector<std::string> warnings_;
};

/// Volume of the unit Euclidean ball in R^n.
double unit_ball_volume(int n);
/// Closed-form volume of the unit l_q ball, (2 Gamma(1/q+1))^n / Gamma(n/q+1).
double lq_ball_volume(int n, double q);

}  // namespace slicelab
