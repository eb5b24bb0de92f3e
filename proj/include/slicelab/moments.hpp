#pragma once

#include "slicelab/bodies.hpp"
#include "slicelab/densities.hpp"
#include "slicelab/distances.hpp"
#include "slicelab/quad.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace slicelab {

/// M(xi) = int_K |(x, xi)|^p f(x) dx.
ValueWithError moment(const StarBody& body, const Density& f, double p, const Vec& xi, const IntegrationConfig& cfg);

struct MomentResult {
  Vec direction;
  ValueWithError value;
  double p = 0.0;
  /// (min M / (|K|^{p/n} int_K f))^{1/p}.
  double normalized_gamma = 0.0;
  ValueWithError volume;
  ValueWithError mass;
  /// Spread of the local-search results relative to the best value.
  double relative_spread = 0.0;
  int evaluations = 0;
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
};

/// Multi-start search for the direction of least moment. The value is the
/// best found, so it bounds the true minimum from above.
MomentResult min_moment(const StarBody& body, const Density& f, double p, const IntegrationConfig& cfg);

/// Shares the kernel with callers that need moments in other directions too.
MomentResult min_moment(const PolarMomentKernel& kernel, const StarBody& body, const IntegrationConfig& cfg);

inline double gamma_ratio(const StarBody& body, const Density& f, double p, const IntegrationConfig& cfg) {
  return min_moment(body, f, p, cfg).normalized_gamma;
}

struct WitnessVolume {
  std::string tag;
  double scaling = 0.0;
  /// |s D|^{1/n}.
  double root_volume = 0.0;
};

struct Thm12Report {
  double p = 0.0;
  /// min over xi of int |(x, xi)|^p dmu with mu = f / int f.
  double min_moment_normalized = 0.0;
  double v_hat = 0.0;
  std::string best_witness;
  double scaling = 0.0;
  double ratio = 0.0;
  MomentResult min;
  std::vector<WitnessVolume> witnesses;

  nlohmann::json to_json() const;
};

/// ratio = (min_xi int |(x,xi)|^p dmu)^{1/p} / (sqrt(p) V_hat), where V_hat is
/// the least |s D|^{1/n} over witnesses D scaled to contain K.
Thm12Report thm12_ratio(const StarBody& body, const Density& f, double p, const std::vector<Witness>& witnesses,
                        const IntegrationConfig& cfg);

}  // namespace slicelab
