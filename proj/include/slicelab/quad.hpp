#pragma once

#include "slicelab/bodies.hpp"
#include "slicelab/densities.hpp"
#include "slicelab/special.hpp"
#include "slicelab/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace slicelab {

enum class Method { mc, qmc, product_polar, grid1d };

std::string to_string(Method method);

/// Every quadrature and search budget in one place. The first block mirrors
/// the cfg JSON; the remainder are optional knobs with desk-scale defaults.
struct IntegrationConfig {
  Method method = Method::qmc;
  int sphere_samples = 65536;
  int radial_nodes = 32;
  long mc_samples = 1000000;
  std::uint64_t seed = 42;
  double rel_tol_target = 0.005;
  int batch_size = 4096;

  /// Independent batches used for the standard error of randomized rules.
  int replicates = 16;
  /// Pair every random node with its antipode.
  bool antipodal = true;
  /// Directions of the in-plane rule used for hyperplane sections.
  int section_samples = 4096;
  /// Offsets in the 1-D grid for section suprema (before golden polish).
  int section_grid = 129;
  int golden_iterations = 24;
  /// Random starts of every multi-start sphere search (axes are added).
  int random_starts = 8;
  /// Nelder-Mead evaluation budget per start.
  int search_evals = 200;
  /// Local searches per sphere search (best starts first); -1 = all starts.
  int local_searches = -1;
  /// Directions sampled when estimating sup/inf of radial ratios.
  int containment_samples = 16384;
  /// Directions on which comparison hypotheses are checked.
  int hypothesis_directions = 512;

  void validate() const;
  nlohmann::json to_json() const;
  static IntegrationConfig from_json(const nlohmann::json& spec);
};

enum class Status { ok, tolerance_not_met };

std::string to_string(Status status);

struct ValueWithError {
  double value = 0.0;
  double std_error = 0.0;
  long samples_used = 0;
  Status status = Status::ok;

  nlohmann::json to_json() const;
};

/// Classifies `error` against `rel_tol` relative to |value|.
Status tolerance_status(double value, double error, double rel_tol);

/// A weighted node set on S^{n-1} integrating against the unnormalized
/// surface measure, plus the structure needed for an error estimate:
/// batch labels for randomized rules, or a second (coarser) weight vector for
/// deterministic rules. When `paired()`, node i + size()/2 is the antipode of node i.
class SphereRule {
 public:
  /// Cached, shared construction. `stream` selects an independent randomization.
  static std::shared_ptr<const SphereRule> get(int n, int samples, const IntegrationConfig& cfg,
                                               std::uint64_t stream = 0);

  int dim() const { return n_; }
  int size() const { return static_cast<int>(weights_.size()); }
  bool paired() const { return paired_; }
  const Eigen::MatrixXd& nodes() const { return nodes_; }  // n x size()
  const Eigen::VectorXd& weights() const { return weights_; }
  int batches() const { return batches_; }
  const std::vector<int>& batch() const { return batch_; }
  /// Weights of the coarse rule for two-level error estimates (empty if unused).
  const Eigen::VectorXd& coarse_weights() const { return coarse_; }

  /// Combines per-node values into an estimate with error.
  ValueWithError reduce(const Eigen::VectorXd& values, double rel_tol) const;
  /// Evaluates g on every node and reduces.
  ValueWithError integrate(const std::function<double(const Vec&)>& g, double rel_tol) const;

  SphereRule(int n, int samples, Method method, std::uint64_t seed, std::uint64_t stream, int replicates,
             bool antipodal);

 private:
  void build_exact_s0();
  void build_circle(int samples);
  void build_random(int samples, Method method, std::uint64_t seed, std::uint64_t stream, int replicates,
                    bool antipodal);
  void build_product(int samples);

  int n_;
  bool paired_ = false;
  Eigen::MatrixXd nodes_;
  Eigen::VectorXd weights_;
  int batches_ = 0;
  std::vector<int> batch_;
  Eigen::VectorXd coarse_;
};

/// Gauss-Legendre nodes and weights on [-1, 1] (cached per order).
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order);

/// int_{S^{n-1}} g(theta) dtheta (unnormalized; total measure s_{n-1}).
ValueWithError sphere_integrate(const std::function<double(const Vec&)>& g, int n, const IntegrationConfig& cfg);

/// |K| by the polar formula n|K| = int ||theta||_K^{-n} dtheta.
ValueWithError volume(const StarBody& body, const IntegrationConfig& cfg);

/// int_a^b t^power f(c + t u) dt; closed form when f is constant.
double ray_integral(const Density& f, const Vec& c, const Vec& u, double a, double b, double power, int nodes);

/// int_K f(x) dx in polar coordinates.
ValueWithError body_integrate(const StarBody& body, const Density& f, const IntegrationConfig& cfg);

/// int_K g(x) dx for an arbitrary integrand (radial Gauss-Legendre always used).
ValueWithError body_integrate(const StarBody& body, const std::function<double(const Vec&)>& g,
                              const IntegrationConfig& cfg);

/// Per-direction radial weights of a body/density pair, reused for every
/// direction-dependent polar integral:
///   int_K |(x, xi)|^p f(x) dx = sum_k w_k |(theta_k, xi)|^p,
///   w_k = omega_k * int_0^{r_K(theta_k)} t^{n-1+p} f(t theta_k) dt.
/// Antipodal node pairs are merged, since |(theta, xi)|^p is even in theta.
class PolarMomentKernel {
 public:
  PolarMomentKernel(const StarBody& body, const Density& f, double p, const IntegrationConfig& cfg);

  int dim() const { return n_; }
  double p() const { return p_; }
  ValueWithError moment(const Vec& xi) const;
  ValueWithError mass() const { return mass_; }
  /// Moment value only (no error bookkeeping); used inside searches.
  double moment_value(const Vec& xi) const;

 private:
  ValueWithError reduce(const Eigen::VectorXd& terms) const;

  int n_;
  double p_;
  double rel_tol_;
  Eigen::MatrixXd directions_;  // n x m
  Eigen::VectorXd weights_;
  Eigen::VectorXd coarse_;
  std::vector<int> batch_;
  int batches_ = 0;
  ValueWithError mass_;
};

/// Section integrals A(s) = int_{K cap {(x, xi) = s}} f dx for one direction xi.
/// Convex bodies (and every central section) are integrated in polar
/// coordinates inside the hyperplane around a point of the slice; nonconvex
/// bodies fall back to indicator quasi-Monte Carlo over the bounding box.
class SectionProfile {
 public:
  SectionProfile(const StarBody& body, const Density& f, const Vec& xi, const IntegrationConfig& cfg,
                 bool central_only = false);

  ValueWithError operator()(double s) const;
  const Vec& direction() const { return xi_; }
  /// Offsets outside [-support_minus(), support_plus()] give empty sections.
  double support_plus() const { return h_plus_; }
  double support_minus() const { return h_minus_; }
  /// Profile is even in s (symmetric body and even density).
  bool even() const { return even_; }

 private:
  ValueWithError polar_section(const Vec& center) const;
  ValueWithError indicator_section(double s) const;

  StarBody body_;
  Density f_;
  IntegrationConfig cfg_;
  int n_;
  Vec xi_;
  bool central_only_;
  bool even_;
  Mat basis_;                    // n x (n-1)
  Eigen::MatrixXd in_plane_;     // n x m directions within the hyperplane
  std::shared_ptr<const SphereRule> rule_;
  Vec p_plus_, p_minus_;
  double h_plus_ = 0.0, h_minus_ = 0.0;
};

ValueWithError section_integrate(const StarBody& body, const Density& f, const Vec& xi, double s,
                                 const IntegrationConfig& cfg);

struct SectionSup {
  double offset = 0.0;
  ValueWithError value;
  int evaluations = 0;
};

/// sup_s A(s): grid over the nonempty offset range, then golden-section polish
/// around the best grid point. A lower bound on the true supremum.
SectionSup section_sup(const SectionProfile& profile, const IntegrationConfig& cfg);

/// The normalized profile g(t) = A(t) / sup_s A(s), with values in [0, 1].
class ProfileG {
 public:
  ProfileG(const StarBody& body, const Density& f, const Vec& xi, const IntegrationConfig& cfg);

  double operator()(double t) const;
  const SectionSup& sup() const { return sup_; }
  const SectionProfile& profile() const { return profile_; }

 private:
  SectionProfile profile_;
  SectionSup sup_;
};

inline ProfileG profile_g(const StarBody& body, const Density& f, const Vec& xi, const IntegrationConfig& cfg) {
  return ProfileG(body, f, xi, cfg);
}

}  // namespace slicelab
