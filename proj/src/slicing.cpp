#include "slicelab/slicing.hpp"

#include "slicelab/rng.hpp"
#include "slicelab/sphere_search.hpp"

#include <algorithm>
#include <cmath>

namespace slicelab {

std::string to_string(SliceMode mode) { return mode == SliceMode::central ? "central" : "affine"; }

SliceMode slice_mode_from_string(const std::string& s) {
  if (s == "central") return SliceMode::central;
  if (s == "affine") return SliceMode::affine;
  throw InputError("unknown slicing mode '" + s + "' (expected central or affine)");
}

namespace {

std::vector<double> to_std(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

double relative(const ValueWithError& v) { return v.value != 0.0 ? v.std_error / std::abs(v.value) : 0.0; }

}  // namespace

MaxSection max_section(const StarBody& body, const Density& f, SliceMode mode, const IntegrationConfig& cfg,
                       const std::vector<Vec>& extra_starts) {
  cfg.validate();
  const int n = body.dim();
  // Directions are ranked with a reduced in-plane budget; the winner is
  // re-evaluated with the full one.
  IntegrationConfig coarse = cfg;
  coarse.section_samples = std::min(cfg.section_samples, 256);
  coarse.section_grid = std::min(cfg.section_grid, 17);
  coarse.golden_iterations = std::min(cfg.golden_iterations, 8);
  coarse.radial_nodes = std::min(cfg.radial_nodes, 12);
  auto central = [&](const Vec& xi) { return SectionProfile(body, f, xi, coarse, true)(0.0).value; };
  auto affine = [&](const Vec& xi) { return section_sup(SectionProfile(body, f, xi, coarse), coarse).value.value; };

  SphereSearchOptions opt;
  opt.random_starts = cfg.random_starts;
  opt.local_searches = cfg.local_searches;
  opt.max_evals = cfg.search_evals;
  opt.seed = cfg.seed;
  opt.extra_starts = extra_starts;
  const auto search = mode == SliceMode::central ? maximize_on_sphere(central, n, opt)
                                                 : maximize_on_sphere(affine, n, opt);
  MaxSection r;
  r.direction = search.direction;
  r.evaluations = search.evaluations;
  r.relative_spread = search.relative_spread;
  if (mode == SliceMode::central) {
    r.offset = 0.0;
    r.value = SectionProfile(body, f, r.direction, cfg, true)(0.0);
  } else {
    const auto sup = section_sup(SectionProfile(body, f, r.direction, cfg), cfg);
    r.offset = sup.offset;
    r.value = sup.value;
  }
  return r;
}

SlicingReport slicing_constant(const StarBody& body, const Density& f, SliceMode mode, const IntegrationConfig& cfg,
                               const std::vector<Vec>& extra_starts) {
  const int n = body.dim();
  SlicingReport r;
  const MaxSection m = max_section(body, f, mode, cfg, extra_starts);
  if (!(m.value.value > 0.0)) throw DegenerateError("slicing_constant: every section integral vanishes");
  r.maximizing_direction = m.direction;
  r.maximizing_offset = m.offset;
  r.max_section = m.value;
  r.mass = body_integrate(body, f, cfg);
  r.volume = volume(body, cfg);
  const double s = r.mass.value / (m.value.value * std::pow(r.volume.value, 1.0 / n));
  if (mode == SliceMode::central) r.central_constant = s;
  else r.affine_constant = s;
  r.relative_error = relative(r.mass) + relative(r.max_section) + relative(r.volume) / n;
  return r;
}

nlohmann::json SlicingReport::to_json() const {
  nlohmann::json j = {{"maximizing_direction", to_std(maximizing_direction)},
                      {"maximizing_offset", maximizing_offset},
                      {"max_section", max_section.to_json()},
                      {"mass", mass.to_json()},
                      {"volume", volume.to_json()},
                      {"relative_error", relative_error}};
  j["central_constant"] = central_constant ? nlohmann::json(*central_constant) : nlohmann::json(nullptr);
  j["affine_constant"] = affine_constant ? nlohmann::json(*affine_constant) : nlohmann::json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// One-dimensional profiles

Profile1D step_profile(std::vector<double> edges, std::vector<double> heights) {
  if (edges.size() < 2 || heights.size() + 1 != edges.size())
    throw InputError("step profile: need k+1 edges for k heights");
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (!(edges[i] < edges[i + 1])) throw InputError("step profile: edges must increase");
  Profile1D p;
  p.lo = edges.front();
  p.hi = edges.back();
  p.breakpoints = edges;
  p.g = [edges, heights](double t) {
    if (t < edges.front() || t >= edges.back()) return 0.0;
    const auto it = std::upper_bound(edges.begin(), edges.end(), t);
    return heights[static_cast<std::size_t>(it - edges.begin()) - 1];
  };
  return p;
}

Profile1D indicator_profile(double a) {
  if (!(a > 0.0)) throw InputError("indicator profile: half width must be positive");
  return step_profile({-a, a}, {1.0});
}

Profile1D tent_profile(double w) {
  if (!(w > 0.0)) throw InputError("tent profile: half width must be positive");
  Profile1D p;
  p.lo = -w;
  p.hi = w;
  p.breakpoints = {-w, 0.0, w};
  p.g = [w](double t) { return std::max(0.0, 1.0 - std::abs(t) / w); };
  return p;
}

Profile1D random_step_profile(std::uint64_t seed, std::uint64_t index, double lo, double hi, int cells) {
  Rng rng(seed, index);
  std::vector<double> edges(cells + 1), heights(cells);
  for (int i = 0; i <= cells; ++i) edges[i] = lo + (hi - lo) * i / cells;
  for (auto& h : heights) h = rng.uniform();
  return step_profile(std::move(edges), std::move(heights));
}

namespace {

double gl_piece(const std::function<double(double)>& g, double q, double a, double b, int nodes) {
  const auto& [x, w] = gauss_legendre(nodes);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double t = mid + half * x[i];
    sum += w[i] * std::pow(std::abs(t), q) * g(t);
  }
  return half * sum;
}

// int_0^c |t|^q g(sign * t) dt with a geometric mesh toward 0.
double graded_piece(const std::function<double(double)>& g, double q, double c, double sign, int nodes) {
  constexpr int kCells = 64;
  constexpr double kRatio = 0.5;
  auto h = [&](double t) { return g(sign * t); };
  double sum = 0.0;
  double right = c;
  for (int k = 0; k < kCells; ++k) {
    const double left = right * kRatio;
    sum += gl_piece(h, q, left, right, nodes);
    right = left;
  }
  // Innermost cell [0, right]: g taken constant at its midpoint.
  sum += h(0.5 * right) * std::pow(right, q + 1.0) / (q + 1.0);
  return sum;
}

}  // namespace

double moment_functional(const Profile1D& g, double q, const IntegrationConfig& cfg) {
  if (!(q > -1.0) || !std::isfinite(q)) throw InputError("moment_functional: q must be > -1");
  if (!g.g) throw InputError("moment_functional: empty profile");
  if (!(g.lo < g.hi)) throw InputError("moment_functional: empty support interval");

  std::vector<double> cuts = {g.lo, g.hi};
  for (double b : g.breakpoints)
    if (b > g.lo && b < g.hi) cuts.push_back(b);
  if (g.lo < 0.0 && g.hi > 0.0) cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Sampled validation of 0 <= g <= 1.
  constexpr int kProbes = 257;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    for (int k = 0; k < kProbes; ++k) {
      const double t = cuts[i] + (cuts[i + 1] - cuts[i]) * (k + 0.5) / kProbes;
      const double v = g.g(t);
      if (!(v >= -1e-12 && v <= 1.0 + 1e-12))
        throw InputError("moment_functional: g(" + std::to_string(t) + ") = " + std::to_string(v) +
                         " lies outside [0, 1]");
    }
  }

  const int nodes = std::max(24, cfg.radial_nodes);
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const bool smooth_power = q == std::floor(q) && q >= 0.0 && q < 2.0 * nodes;
    if (a == 0.0 && !smooth_power) integral += graded_piece(g.g, q, b, 1.0, nodes);
    else if (b == 0.0 && !smooth_power) integral += graded_piece(g.g, q, -a, -1.0, nodes);
    else integral += gl_piece(g.g, q, a, b, nodes);
  }
  return std::pow(0.5 * (q + 1.0) * integral, 1.0 / (q + 1.0));
}

// ---------------------------------------------------------------------------

Lemma16Report lemma16_check(const StarBody& body, const Density& f, double p, const Vec& xi,
                            const IntegrationConfig& cfg) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InputError("lemma16: p must be positive");
  require_dim(xi, body.dim(), "lemma16 direction");
  const PolarMomentKernel kernel(body, f, p, cfg);
  const SectionProfile profile(body, f, xi, cfg);
  const SectionSup sup = section_sup(profile, cfg);
  Lemma16Report r;
  r.moment = kernel.moment(profile.direction());
  r.mass = kernel.mass();
  r.sup_section = sup.value.value;
  r.sup_offset = sup.offset;
  r.lhs = std::pow(2.0, p) * (p + 1.0) * std::pow(r.sup_section, p) * r.moment.value;
  r.rhs = std::pow(r.mass.value, p + 1.0);
  r.margin = r.lhs - r.rhs;
  r.combined_error = r.lhs * (p * relative(sup.value) + relative(r.moment)) + r.rhs * (p + 1.0) * relative(r.mass);
  r.holds = r.margin >= -2.0 * r.combined_error - 1e-12 * std::max(r.lhs, r.rhs);
  return r;
}

nlohmann::json Lemma16Report::to_json() const {
  return {{"lhs", lhs},
          {"rhs", rhs},
          {"margin", margin},
          {"combined_error", combined_error},
          {"holds", holds},
          {"sup_section", sup_section},
          {"sup_offset", sup_offset},
          {"moment", moment.to_json()},
          {"mass", mass.to_json()}};
}

Thm17Report thm17_ratio(const StarBody& body, const Density& f, double p, double dovr_upper,
                        const IntegrationConfig& cfg) {
  return thm17_ratio(body, f, p, dovr_upper, max_section(body, f, SliceMode::affine, cfg), cfg);
}

Thm17Report thm17_ratio(const StarBody& body, const Density& f, double p, double dovr_upper,
                        const MaxSection& affine_section, const IntegrationConfig& cfg) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InputError("thm17_ratio: p must be >= 1");
  if (!(dovr_upper >= 1.0 - 1e-3) || !std::isfinite(dovr_upper))
    throw InputError("thm17_ratio: dovr_upper must be >= 1");
  const int n = body.dim();
  Thm17Report r;
  r.p = p;
  r.dovr_upper = dovr_upper;
  if (p <= 2.0) r.notes.push_back("1 <= p <= 2: report only");
  r.section = affine_section;
  if (!(r.section.value.value > 0.0)) throw DegenerateError("thm17_ratio: every section integral vanishes");
  r.mass = body_integrate(body, f, cfg);
  r.volume = volume(body, cfg);
  r.c_hat = r.mass.value /
            (std::sqrt(p) * dovr_upper * std::pow(r.volume.value, 1.0 / n) * r.section.value.value);
  return r;
}

nlohmann::json Thm17Report::to_json() const {
  return {{"c_hat", c_hat},
          {"p", p},
          {"dovr_upper", dovr_upper},
          {"mass", mass.to_json()},
          {"volume", volume.to_json()},
          {"max_section", section.value.to_json()},
          {"maximizing_direction", to_std(section.direction)},
          {"maximizing_offset", section.offset},
          {"notes", notes}};
}

}  // namespace slicelab
