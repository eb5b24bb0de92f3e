#include "slicelab/distances.hpp"

#include "slicelab/moments.hpp"
#include "slicelab/parallel.hpp"
#include "slicelab/rng.hpp"
#include "slicelab/special.hpp"
#include "slicelab/sphere_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace slicelab {

namespace {

std::vector<double> to_std(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

DirectionMeasure axis_atoms(int n, double weight) {
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) {
    atoms.push_back({axis(n, i), weight});
    atoms.push_back({-axis(n, i), weight});
  }
  return DirectionMeasure(n, std::move(atoms), 0.0);
}

struct Extremum {
  double value = 0.0;
  Vec direction;
};

// Extremum of a direction function: dense rule, then Nelder-Mead from the
// best `polish` nodes.
Extremum extremize(const std::function<double(const Vec&)>& fn, int n, const IntegrationConfig& cfg, bool maximize,
                   std::uint64_t stream, int polish = 8) {
  const double sign = maximize ? -1.0 : 1.0;
  auto objective = [&](const Vec& x) { return sign * fn(x); };
  Extremum best;
  if (n == 1) {
    const Vec a = axis(1, 0);
    const double va = objective(a), vb = objective(Vec(-a));
    best.direction = vb < va ? Vec(-a) : a;
    best.value = sign * std::min(va, vb);
    return best;
  }
  const auto rule = SphereRule::get(n, cfg.containment_samples, cfg, stream);
  const Eigen::MatrixXd& nodes = rule->nodes();
  const int m = rule->size();
  std::vector<double> values(m);
  const std::size_t chunk = 2048;
  parallel_for((m + chunk - 1) / chunk, [&](std::size_t c) {
    const int end = std::min<int>(m, static_cast<int>((c + 1) * chunk));
    for (int k = static_cast<int>(c * chunk); k < end; ++k) values[k] = objective(Vec(nodes.col(k)));
  });
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  const int keep = std::min(polish, m);
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](int a, int b) { return values[a] < values[b] || (values[a] == values[b] && a < b); });
  SphereSearchOptions opt;
  opt.axis_starts = true;
  opt.random_starts = 0;
  for (int i = 0; i < keep; ++i) opt.extra_starts.push_back(nodes.col(order[i]));
  opt.local_searches = keep;
  opt.max_evals = cfg.search_evals;
  opt.initial_step = 0.05;
  opt.step_tol = 1e-10;
  opt.seed = cfg.seed;
  const auto r = minimize_on_sphere(objective, n, opt);
  best.direction = r.direction;
  best.value = sign * r.value;
  if (objective(Vec(nodes.col(order[0]))) < r.value) {
    best.direction = nodes.col(order[0]);
    best.value = sign * values[order[0]];
  }
  return best;
}

}  // namespace

Witness::Witness(StarBody body, DirectionMeasure measure, double p, std::string tag)
    : body_(std::move(body)), measure_(std::move(measure)), p_(p), tag_(std::move(tag)) {
  if (!(p >= 1.0)) throw InputError("witness: p must be >= 1");
  if (measure_.dim() != body_.dim()) throw DimensionError("witness: measure and body dimensions differ");
  const int n = body_.dim();
  Rng rng(0x77a1e55, static_cast<std::uint64_t>(n));
  for (int k = 0; k < 256; ++k) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = rng.normal();
    x *= rng.uniform(0.1, 3.0) / x.norm();
    const double direct = body_.gauge(x);
    const double via = measure_.gauge(p_, x);
    consistency_error_ = std::max(consistency_error_, std::abs(direct - via) / std::max(1.0, direct));
  }
  if (consistency_error_ > 1e-6) {
    throw InputError("witness '" + tag_ + "': measure gauge differs from body gauge (relative error " +
                     std::to_string(consistency_error_) + ")");
  }
}

std::optional<Witness> Witness::builtin(const StarBody& body, double p, std::string tag) {
  if (!(p >= 1.0) || body.has_linear_map()) return std::nullopt;
  const int n = body.dim();
  if (tag.empty()) tag = to_string(body.family());
  if (n == 1) {
    const double r = body.radial(axis(1, 0));
    return Witness(body, axis_atoms(1, 0.5 * std::pow(r, -p)), p, tag);
  }
  switch (body.family()) {
    case BodyFamily::lq_ball:
      if (body.q() == 2.0)
        return Witness(body, DirectionMeasure(n, {}, spherical_constant(n, p) * std::pow(body.scale(), -p)), p, tag);
      if (body.q() == p) return Witness(body, axis_atoms(n, 0.5 * std::pow(body.scale(), -p)), p, tag);
      return std::nullopt;
    case BodyFamily::cross_polytope:
      if (p == 1.0) return Witness(body, axis_atoms(n, 0.5 / body.scale()), p, tag);
      return std::nullopt;
    case BodyFamily::ellipsoid: return Witness(body, ellipsoid_measure(body.axes(), p), p, tag);
    default: return std::nullopt;
  }
}

double reference_volume(const StarBody& body, const IntegrationConfig& cfg) {
  if (const auto v = body.exact_volume()) return *v;
  return volume(body, cfg).value;
}

Containment contains_body(const StarBody& inner, const StarBody& outer, const IntegrationConfig& cfg, double tol) {
  if (inner.dim() != outer.dim()) throw DimensionError("contains_body: dimensions differ");
  const auto best = extremize([&](const Vec& t) { return outer.gauge(t) / inner.gauge(t); }, inner.dim(), cfg,
                              true, 0xc0417a1);
  Containment c;
  c.margin = best.value;
  c.worst_direction = best.direction;
  c.contained = c.margin <= 1.0 + tol;
  return c;
}

DistanceReport dovr_upper(const StarBody& body, double p, const std::vector<Witness>& witnesses,
                          const IntegrationConfig& cfg) {
  if (witnesses.empty()) throw InputError("dovr_upper: witness list is empty");
  const int n = body.dim();
  const double vk = reference_volume(body, cfg);
  DistanceReport r;
  r.dovr_upper = std::numeric_limits<double>::infinity();
  for (const auto& w : witnesses) {
    if (w.body().dim() != n) throw DimensionError("dovr_upper: witness dimension differs from the body");
    if (std::abs(w.p() - p) > 1e-12) throw InputError("dovr_upper: witness '" + w.tag() + "' has a different p");
    const double s = contains_body(body, w.body(), cfg).margin;
    if (!std::isfinite(s) || !(s > 0.0)) continue;
    const double bound = s * std::pow(reference_volume(w.body(), cfg) / vk, 1.0 / n);
    r.per_witness.push_back({w.tag(), s, bound});
    if (bound < r.dovr_upper) {
      r.dovr_upper = bound;
      r.best_witness_tag = w.tag();
      r.scaling_used = s;
    }
  }
  if (!std::isfinite(r.dovr_upper)) throw DegenerateError("dovr_upper: every witness is degenerate");
  return r;
}

nlohmann::json DistanceReport::to_json() const {
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : per_witness) ws.push_back({{"tag", w.tag}, {"scaling", w.scaling}, {"bound", w.bound}});
  return {{"dovr_upper", dovr_upper}, {"best_witness_tag", best_witness_tag}, {"scaling_used", scaling_used},
          {"per_witness", ws}};
}

RadialRatioRange radial_ratio_range(const StarBody& m, const StarBody& d, const IntegrationConfig& cfg) {
  if (m.dim() != d.dim()) throw DimensionError("radial_ratio_range: dimensions differ");
  auto ratio = [&](const Vec& t) { return d.gauge(t) / m.gauge(t); };
  RadialRatioRange r;
  r.sup = extremize(ratio, m.dim(), cfg, true, 0xdb0001).value;
  r.inf = extremize(ratio, m.dim(), cfg, false, 0xdb0001).value;
  return r;
}

double dbm_scaling(const StarBody& m, const StarBody& d, const IntegrationConfig& cfg) {
  const auto r = radial_ratio_range(m, d, cfg);
  return std::max(1.0, r.ratio());
}

JensenReport jensen_check(const StarBody& body, double p, const IntegrationConfig& cfg) {
  if (!(p > 0.0)) throw InputError("jensen_check: p must be positive");
  const int n = body.dim();
  const double area = sphere_area(n);
  const auto rule = SphereRule::get(n, cfg.sphere_samples, cfg);
  Eigen::VectorXd inv(rule->size()), pow_gauge(rule->size());
  for (int k = 0; k < rule->size(); ++k) {
    const double g = body.gauge(Vec(rule->nodes().col(k)));
    inv(k) = std::pow(g, -n);
    pow_gauge(k) = std::pow(g, p);
  }
  const auto a = rule->reduce(inv, cfg.rel_tol_target);
  const auto b = rule->reduce(pow_gauge, cfg.rel_tol_target);
  JensenReport r;
  r.lhs = a.value / area;
  r.lhs_error = a.std_error / area;
  const double mean_p = b.value / area;
  r.rhs = std::pow(mean_p, -n / p);
  r.rhs_error = r.rhs * (n / p) * (b.std_error / b.value);
  r.holds = r.lhs >= r.rhs - 2.0 * (r.lhs_error + r.rhs_error) - 1e-12 * r.rhs;
  return r;
}

std::string to_string(CompareStatus status) {
  switch (status) {
    case CompareStatus::ok: return "ok";
    case CompareStatus::hypothesis_violated: return "hypothesis_violated";
    case CompareStatus::conclusion_violated: return "conclusion_violated";
  }
  return "ok";
}

CompareReport bp_compare(const StarBody& k, const StarBody& m, const Density& f, double p, const StarBody& d,
                         const IntegrationConfig& cfg) {
  if (!(p >= 1.0)) throw InputError("bp_compare: p must be >= 1");
  const int n = k.dim();
  if (m.dim() != n || d.dim() != n) throw DimensionError("bp_compare: dimensions differ");
  const PolarMomentKernel kk(k, f, p, cfg), km(m, f, p, cfg);

  std::vector<Vec> directions;
  for (int i = 0; i < n; ++i) directions.push_back(axis(n, i));
  if (n > 1) {
    const auto grid = SphereRule::get(n, cfg.hypothesis_directions, cfg, 0xb9c0);
    const int count = grid->paired() ? grid->size() / 2 : grid->size();
    for (int j = 0; j < count; ++j) directions.push_back(grid->nodes().col(j));
  }
  std::vector<double> margins(directions.size());
  std::vector<char> ok(directions.size());
  parallel_for(directions.size(), [&](std::size_t j) {
    const auto a = kk.moment(directions[j]);
    const auto b = km.moment(directions[j]);
    margins[j] = b.value > 0.0 ? (b.value - a.value) / b.value : (a.value > 0.0 ? -1.0 : 0.0);
    ok[j] = a.value <= b.value + 2.0 * (a.std_error + b.std_error);
  });

  CompareReport r;
  r.directions_checked = static_cast<int>(directions.size());
  const auto worst = std::min_element(margins.begin(), margins.end()) - margins.begin();
  r.worst_hypothesis_margin = margins[worst];
  r.worst_direction = directions[worst];
  r.hypothesis_holds = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
  r.a = dbm_scaling(m, d, cfg);
  r.mass_k = kk.mass();
  r.mass_m = km.mass();
  const double ap = std::pow(r.a, p);
  r.conclusion_margin = ap * r.mass_m.value - r.mass_k.value;
  r.combined_error = ap * r.mass_m.std_error + r.mass_k.std_error;
  if (!r.hypothesis_holds) r.status = CompareStatus::hypothesis_violated;
  else if (r.conclusion_margin < -2.0 * r.combined_error) r.status = CompareStatus::conclusion_violated;
  return r;
}

nlohmann::json CompareReport::to_json() const {
  return {{"worst_hypothesis_margin", worst_hypothesis_margin},
          {"worst_direction", to_std(worst_direction)},
          {"directions_checked", directions_checked},
          {"hypothesis_holds", hypothesis_holds},
          {"a", a},
          {"mass_K", mass_k.to_json()},
          {"mass_M", mass_m.to_json()},
          {"conclusion_margin", conclusion_margin},
          {"combined_error", combined_error},
          {"status", to_string(status)},
          {"restriction", "a is restricted to homothets of D"}};
}

}  // namespace slicelab
