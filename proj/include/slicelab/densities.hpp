#pragma once

#include "slicelab/types.hpp"

#include <json.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace slicelab {

enum class DensityFamily { constant, gaussian, radial_power, exp_l1, mixture, custom };

std::string to_string(DensityFamily family);

using DensityFn = std::function<double(const Vec&)>;

/// Nonnegative weight function f on R^n. Built-in families are even and
/// dimension-agnostic; custom evaluators may declare a dimension.
class Density {
 public:
  static Density constant(double c);
  /// exp(-|x|^2 / (2 sigma^2)).
  static Density gaussian(double sigma);
  /// |x|^alpha, alpha >= 0.
  static Density radial_power(double alpha);
  /// exp(-sum |x_i| / sigma).
  static Density exp_l1(double sigma);
  /// Convex combination; weights are normalized to sum to one.
  static Density mixture(std::vector<Density> parts, std::vector<double> weights);
  /// Black-box evaluator. Evenness is probed on `even_check_pairs` antipodal
  /// pairs when `even` is claimed; failure is an input error.
  static Density custom(int n, DensityFn fn, bool even = true, int even_check_pairs = 64);

  double operator()(const Vec& x) const;

  DensityFamily family() const { return family_; }
  bool even() const { return even_; }
  /// 0 for dimension-agnostic built-ins.
  int dim() const { return dim_; }
  /// Value of f when f is constant, used for closed-form radial integrals.
  std::optional<double> constant_value() const;

  /// x -> f(x / lambda).
  Density dilated(double lambda) const;

  nlohmann::json to_json() const;
  static Density from_json(const nlohmann::json& spec);

 private:
  Density() = default;

  DensityFamily family_ = DensityFamily::constant;
  double param_ = 1.0;
  bool even_ = true;
  int dim_ = 0;
  std::vector<Density> parts_;
  std::vector<double> weights_;
  std::shared_ptr<const DensityFn> custom_;
};

struct Atom {
  Vec direction;
  double weight = 0.0;
};

/// Finite even measure on S^{n-1}: point masses plus a multiple of the
/// (unnormalized) surface measure. An optional linear map A turns the measure
/// into the witness of the body A^{-1}(D), since ||x||_{A^{-1}D} = ||A x||_D.
class DirectionMeasure {
 public:
  DirectionMeasure(int n, std::vector<Atom> atoms, double uniform_weight,
                   std::optional<Mat> linear_map = std::nullopt);

  int dim() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double uniform_weight() const { return uniform_weight_; }
  const std::optional<Mat>& linear_map() const { return linear_map_; }

  /// nu(S^{n-1}) = sum of atom weights + uniform_weight * s_{n-1}.
  double total_mass() const;

  /// (int |(x, theta)|^p dnu(theta))^{1/p}; the uniform part uses the closed-form
  /// spherical identity.
  double gauge(double p, const Vec& x) const;

 private:
  int n_;
  std::vector<Atom> atoms_;
  double uniform_weight_;
  std::optional<Mat> linear_map_;
};

double gauge_from_measure(const DirectionMeasure& measure, double p, const Vec& x);

/// Atoms at +-e_i with weight 1/2: reproduces the l_p gauge exactly.
DirectionMeasure lp_ball_measure(int n, double p);

/// Uniform measure with weight spherical_constant(n, p): reproduces |x|.
DirectionMeasure euclidean_ball_measure(int n, double p);

/// Witness for the ellipsoid with the given semi-axes: Euclidean witness
/// composed with diag(1 / axes).
DirectionMeasure ellipsoid_measure(const std::vector<double>& axes, double p);

inline double total_mass(const DirectionMeasure& measure) { return measure.total_mass(); }

}  // namespace slicelab
