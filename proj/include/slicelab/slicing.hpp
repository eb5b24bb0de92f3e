#pragma once

#include "slicelab/bodies.hpp"
#include "slicelab/densities.hpp"
#include "slicelab/quad.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace slicelab {

enum class SliceMode { central, affine };

std::string to_string(SliceMode mode);
SliceMode slice_mode_from_string(const std::string& s);

struct MaxSection {
  Vec direction;
  double offset = 0.0;
  ValueWithError value;
  int evaluations = 0;
  double relative_spread = 0.0;
};

/// Largest section integral over central hyperplanes xi^perp, or over all
/// affine hyperplanes (sup over s for each direction). A lower bound on the
/// true supremum.
MaxSection max_section(const StarBody& body, const Density& f, SliceMode mode, const IntegrationConfig& cfg,
                       const std::vector<Vec>& extra_starts = {});

struct SlicingReport {
  std::optional<double> central_constant;
  std::optional<double> affine_constant;
  Vec maximizing_direction;
  double maximizing_offset = 0.0;
  ValueWithError max_section;
  ValueWithError mass;
  ValueWithError volume;
  /// Relative error of the constant from the component error estimates.
  double relative_error = 0.0;

  nlohmann::json to_json() const;
};

/// int_K f / (max section * |K|^{1/n}) for the requested mode.
SlicingReport slicing_constant(const StarBody& body, const Density& f, SliceMode mode, const IntegrationConfig& cfg,
                               const std::vector<Vec>& extra_starts = {});

/// A function of one variable supported in [lo, hi] with its known kinks or
/// jumps; g must take values in [0, 1].
struct Profile1D {
  std::function<double(double)> g;
  double lo = -1.0;
  double hi = 1.0;
  std::vector<double> breakpoints;
};

/// Piecewise constant on the cells [edges[i], edges[i+1]).
Profile1D step_profile(std::vector<double> edges, std::vector<double> heights);
/// Indicator of [-a, a].
Profile1D indicator_profile(double a);
/// max(0, 1 - |t| / w).
Profile1D tent_profile(double w);
/// 32 equal cells on [lo, hi] with heights uniform in [0, 1].
Profile1D random_step_profile(std::uint64_t seed, std::uint64_t index, double lo = -2.0, double hi = 2.0,
                              int cells = 32);

/// F(q) = ((q+1)/2 int |t|^q g(t) dt)^{1/(q+1)} for q > -1. Gauss-Legendre on
/// the pieces between breakpoints; pieces touching 0 use a geometric mesh of 64
/// cells with the innermost cell integrated analytically.
double moment_functional(const Profile1D& g, double q, const IntegrationConfig& cfg);

struct Lemma16Report {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double combined_error = 0.0;
  bool holds = false;
  double sup_section = 0.0;
  double sup_offset = 0.0;
  ValueWithError moment;
  ValueWithError mass;

  nlohmann::json to_json() const;
};

/// 2^p (p+1) (sup_s A(s))^p M(xi) >= (int f)^{p+1}. The supremum is a
/// grid-plus-polish lower bound, which can only shrink the left side.
Lemma16Report lemma16_check(const StarBody& body, const Density& f, double p, const Vec& xi,
                            const IntegrationConfig& cfg);

struct Thm17Report {
  double c_hat = 0.0;
  double p = 0.0;
  double dovr_upper = 0.0;
  ValueWithError mass;
  ValueWithError volume;
  MaxSection section;
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
};

/// C_hat = int_K f / (sqrt(p) d_ovr |K|^{1/n} sup_H int_{K cap H} f).
Thm17Report thm17_ratio(const StarBody& body, const Density& f, double p, double dovr_upper,
                        const IntegrationConfig& cfg);

/// Same, reusing an affine max_section result (it does not depend on p).
Thm17Report thm17_ratio(const StarBody& body, const Density& f, double p, double dovr_upper,
                        const MaxSection& affine_section, const IntegrationConfig& cfg);

}  // namespace slicelab
