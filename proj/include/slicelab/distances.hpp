#pragma once

#include "slicelab/bodies.hpp"
#include "slicelab/densities.hpp"
#include "slicelab/quad.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace slicelab {

/// A body D in L_p^n together with its representing measure. Construction
/// checks that the measure gauge matches the body gauge on 256 random points.
class Witness {
 public:
  Witness(StarBody body, DirectionMeasure measure, double p, std::string tag = "witness");

  /// The representation for built-in families that belong to L_p^n: Euclidean
  /// balls and ellipsoids (any p >= 1), l_q balls with q == p, cross-polytopes
  /// when p == 1. Empty otherwise.
  static std::optional<Witness> builtin(const StarBody& body, double p, std::string tag = "");

  const StarBody& body() const { return body_; }
  const DirectionMeasure& measure() const { return measure_; }
  double p() const { return p_; }
  const std::string& tag() const { return tag_; }
  /// Largest relative gauge mismatch seen by the consistency probe.
  double consistency_error() const { return consistency_error_; }

 private:
  StarBody body_;
  DirectionMeasure measure_;
  double p_;
  std::string tag_;
  double consistency_error_ = 0.0;
};

/// Exact volume when the family knows it, polar quadrature otherwise.
double reference_volume(const StarBody& body, const IntegrationConfig& cfg);

struct Containment {
  bool contained = false;
  /// sup_theta ||theta||_outer / ||theta||_inner: the least s with inner in s * outer.
  double margin = 0.0;
  Vec worst_direction;
};

/// Sampled sup of the gauge ratio (containment_samples directions) with local
/// maximization from the 8 best samples.
Containment contains_body(const StarBody& inner, const StarBody& outer, const IntegrationConfig& cfg,
                          double tol = 1e-9);

struct WitnessDistance {
  std::string tag;
  double scaling = 0.0;
  double bound = 0.0;
};

struct DistanceReport {
  double dovr_upper = 0.0;
  std::string best_witness_tag;
  double scaling_used = 0.0;
  std::vector<WitnessDistance> per_witness;

  nlohmann::json to_json() const;
};

/// min over witnesses of s*(D) (|D| / |K|)^{1/n}, an upper bound on d_ovr(K, L_p^n).
DistanceReport dovr_upper(const StarBody& body, double p, const std::vector<Witness>& witnesses,
                          const IntegrationConfig& cfg);

struct RadialRatioRange {
  double inf = 0.0;
  double sup = 0.0;
  double ratio() const { return sup / inf; }
};

/// inf and sup of r_M / r_D over the sphere.
RadialRatioRange radial_ratio_range(const StarBody& m, const StarBody& d, const IntegrationConfig& cfg);

/// Least a with s D in M in a s D for some s > 0. Restricted to homothets of
/// D; linear images of D are not searched.
double dbm_scaling(const StarBody& m, const StarBody& d, const IntegrationConfig& cfg);

struct JensenReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_error = 0.0;
  double rhs_error = 0.0;
  bool holds = false;
};

/// int ||theta||^{-n} dsigma >= (int ||theta||^p dsigma)^{-n/p}, normalized sphere measure.
JensenReport jensen_check(const StarBody& body, double p, const IntegrationConfig& cfg);

enum class CompareStatus { ok, hypothesis_violated, conclusion_violated };

std::string to_string(CompareStatus status);

struct CompareReport {
  /// min over the direction grid of (M_M - M_K) / M_M; negative means a violation.
  double worst_hypothesis_margin = 0.0;
  Vec worst_direction;
  int directions_checked = 0;
  bool hypothesis_holds = false;
  double a = 1.0;
  ValueWithError mass_k;
  ValueWithError mass_m;
  /// a^p int_M f - int_K f.
  double conclusion_margin = 0.0;
  double combined_error = 0.0;
  CompareStatus status = CompareStatus::ok;

  nlohmann::json to_json() const;
};

/// Comparison of moments implies comparison of masses up to d_BM(M, L_p^n)^p.
/// D should belong to L_p^n; a is the homothety-restricted dbm_scaling(M, D).
CompareReport bp_compare(const StarBody& k, const StarBody& m, const Density& f, double p, const StarBody& d,
                         const IntegrationConfig& cfg);

}  // namespace slicelab
