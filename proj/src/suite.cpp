#include "slicelab/suite.hpp"

#include "slicelab/bodies.hpp"
#include "slicelab/densities.hpp"
#include "slicelab/distances.hpp"
#include "slicelab/moments.hpp"
#include "slicelab/rng.hpp"
#include "slicelab/slicing.hpp"
#include "slicelab/special.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slicelab {

using nlohmann::json;

std::string to_string(Budget budget) { return budget == Budget::quick ? "quick" : "full"; }

Budget budget_from_string(const std::string& s) {
  if (s == "quick") return Budget::quick;
  if (s == "full") return Budget::full;
  throw InputError("unknown budget '" + s + "' (expected quick or full)");
}

IntegrationConfig suite_config(std::uint64_t seed, Budget budget) {
  IntegrationConfig cfg;
  cfg.seed = seed;
  if (budget == Budget::quick) {
    cfg.sphere_samples = 16384;
    cfg.radial_nodes = 16;
    cfg.section_samples = 1024;
    cfg.section_grid = 33;
    cfg.golden_iterations = 12;
    cfg.random_starts = 4;
    cfg.search_evals = 80;
    cfg.local_searches = 2;
    cfg.containment_samples = 4096;
    cfg.hypothesis_directions = 256;
  } else {
    cfg.sphere_samples = 65536;
    cfg.section_samples = 4096;
    cfg.local_searches = 4;
  }
  return cfg;
}

json CheckResult::to_json() const {
  return {{"id", id}, {"name", name},           {"passed", passed},  {"executed", executed},
          {"worst", worst}, {"threshold", threshold}, {"details", details}};
}

bool SuiteSummary::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

json SuiteSummary::to_json() const {
  json cs = json::array();
  int failed = 0;
  for (const auto& c : checks) {
    cs.push_back(c.to_json());
    if (!c.passed) ++failed;
  }
  return {{"seed", seed},
          {"budget", to_string(budget)},
          {"checks_executed", static_cast<int>(checks.size())},
          {"checks_failed", failed},
          {"passed", passed()},
          {"checks", cs}};
}

namespace {

struct Named {
  std::string tag;
  StarBody body;
};

struct NamedDensity {
  std::string tag;
  Density f;
};

std::vector<double> ellipsoid_axes(int n) {
  static const double base[] = {1.0, 1.5, 0.75, 2.0, 0.5, 1.25, 1.75, 0.6};
  return std::vector<double>(base, base + n);
}

// Built-in symmetric convex bodies of the suite.
std::vector<Named> convex_bodies(int n) {
  return {{"lq_ball(q=1.5)", StarBody::lq_ball(n, 1.5)},
          {"euclidean_ball", StarBody::euclidean_ball(n)},
          {"lq_ball(q=4)", StarBody::lq_ball(n, 4.0)},
          {"cube", StarBody::cube(n, 1.0)},
          {"cross_polytope", StarBody::cross_polytope(n)},
          {"ellipsoid", StarBody::ellipsoid(ellipsoid_axes(n))}};
}

std::vector<NamedDensity> even_densities() {
  return {{"constant", Density::constant(1.0)},
          {"gaussian(0.7)", Density::gaussian(0.7)},
          {"radial_power(2)", Density::radial_power(2.0)},
          {"exp_l1(0.5)", Density::exp_l1(0.5)},
          {"mixture", Density::mixture({Density::gaussian(0.5), Density::constant(1.0)}, {0.5, 0.5})}};
}

Vec random_direction(Rng& rng, int n) {
  Vec x(n);
  for (int i = 0; i < n; ++i) x(i) = rng.normal();
  return x / x.norm();
}

std::vector<double> to_std(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Named random_body(Rng& rng, int n) {
  const int kind = static_cast<int>(rng.uniform() * 6.0);
  const double scale = rng.uniform(0.5, 2.0);
  switch (kind) {
    case 0: {
      static const double qs[] = {1.0, 1.5, 3.0, 4.0, 6.0};
      const double q = qs[static_cast<int>(rng.uniform() * 5.0)];
      return {"lq_ball", StarBody::lq_ball(n, q, scale)};
    }
    case 1: return {"euclidean_ball", StarBody::euclidean_ball(n, scale)};
    case 2: return {"cube", StarBody::cube(n, scale)};
    case 3: return {"cross_polytope", StarBody::cross_polytope(n, scale)};
    default: {
      std::vector<double> axes(n);
      for (auto& a : axes) a = rng.uniform(0.5, 2.0);
      return {"ellipsoid", StarBody::ellipsoid(axes)};
    }
  }
}

NamedDensity random_density(Rng& rng) {
  const int kind = static_cast<int>(rng.uniform() * 5.0);
  switch (kind) {
    case 0: return {"constant", Density::constant(rng.uniform(0.5, 2.0))};
    case 1: return {"gaussian", Density::gaussian(rng.uniform(0.3, 2.0))};
    case 2: {
      static const double alphas[] = {0.5, 1.0, 2.0};
      return {"radial_power", Density::radial_power(alphas[static_cast<int>(rng.uniform() * 3.0)])};
    }
    case 3: return {"exp_l1", Density::exp_l1(rng.uniform(0.3, 2.0))};
    default: {
      const double w = rng.uniform(0.1, 0.9);
      return {"mixture", Density::mixture({Density::gaussian(rng.uniform(0.3, 1.0)), Density::radial_power(1.0)},
                                          {w, 1.0 - w})};
    }
  }
}

// Witnesses in L_p^n used by the moment and affine slicing ratio checks: the circumscribed
// ball, the unit l_p ball, the cross-polytope when p = 1, and the body itself
// when it belongs to L_p^n.
std::vector<Witness> witness_list(const StarBody& body, double p) {
  const int n = body.dim();
  std::vector<Witness> ws;
  ws.push_back(*Witness::builtin(StarBody::euclidean_ball(n, body.bounding_radius()), p, "circumscribed_ball"));
  if (p != 2.0) ws.push_back(*Witness::builtin(StarBody::lq_ball(n, p), p, "lp_ball"));
  if (p == 1.0) ws.push_back(*Witness::builtin(StarBody::cross_polytope(n), p, "cross_polytope"));
  if (auto self = Witness::builtin(body, p, "self")) ws.push_back(*self);
  return ws;
}

std::vector<int> dims(int lo, int hi) {
  std::vector<int> v;
  for (int n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

CheckResult make(int id, const char* name, double threshold) {
  CheckResult r;
  r.id = id;
  r.name = name;
  r.threshold = threshold;
  return r;
}

// 1. |x|^p = c(n,p) int |(x,theta)|^p dtheta.
CheckResult check_spherical_identity(std::uint64_t seed, Budget) {
  CheckResult r = make(1, "spherical identity", 1e-3);
  IntegrationConfig cfg;
  cfg.seed = seed;
  cfg.sphere_samples = 65536;
  Rng rng(seed, 1);
  json worst_case;
  for (int n : {2, 3, 4}) {
    const auto rule = SphereRule::get(n, cfg.sphere_samples, cfg);
    for (int k = 0; k < 20; ++k) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x(i) = rng.normal();
      for (double p : {1.0, 2.0, 3.5}) {
        const auto v = rule->integrate([&](const Vec& t) { return std::pow(std::abs(t.dot(x)), p); }, 1.0);
        const double exact = std::pow(x.norm(), p);
        const double rel = std::abs(spherical_constant(n, p) * v.value - exact) / exact;
        ++r.executed;
        if (rel >= r.worst) {
          r.worst = rel;
          worst_case = {{"n", n}, {"p", p}, {"x", to_std(x)}, {"relative_error", rel}};
        }
      }
    }
  }
  r.passed = r.worst <= r.threshold;
  r.details = {{"worst_case", worst_case}, {"sphere_samples", cfg.sphere_samples}, {"runtime_limit_s", 10}};
  return r;
}

// 2. Polar-formula volumes of l_q balls against closed forms.
CheckResult check_polar_volume(std::uint64_t seed, Budget) {
  CheckResult r = make(2, "polar volume", 5e-3);
  IntegrationConfig cfg;
  cfg.seed = seed;
  cfg.sphere_samples = 1 << 18;
  json rows = json::array();
  const double inf = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= 6; ++n) {
    for (double q : {1.0, 2.0, 4.0, inf}) {
      const StarBody b = StarBody::lq_ball(n, q);
      const auto v = volume(b, cfg);
      const double exact = *b.exact_volume();
      const double rel = std::abs(v.value - exact) / exact;
      r.worst = std::max(r.worst, rel);
      ++r.executed;
      rows.push_back({{"n", n}, {"q", std::isinf(q) ? json("inf") : json(q)}, {"value", v.value},
                      {"exact", exact}, {"relative_error", rel}});
    }
  }
  r.passed = r.worst <= r.threshold;
  r.details = {{"instances", rows}, {"sphere_samples", cfg.sphere_samples}, {"runtime_limit_s", 60}};
  return r;
}

// 3. Section/moment equality for the unit cube along an axis.
CheckResult check_section_equality(std::uint64_t seed, Budget) {
  CheckResult r = make(3, "section/moment equality case", 1e-3);
  IntegrationConfig cfg;
  cfg.seed = seed;
  cfg.sphere_samples = 1 << 19;
  cfg.section_samples = 1 << 16;
  cfg.section_grid = 65;
  json rows = json::array();
  for (int n : {2, 3, 4}) {
    for (double p : {1.0, 2.0, 5.0}) {
      const auto l = lemma16_check(StarBody::cube(n, 0.5), Density::constant(1.0), p, axis(n, 0), cfg);
      const double dev = std::abs(l.lhs / l.rhs - 1.0);
      r.worst = std::max(r.worst, dev);
      ++r.executed;
      rows.push_back({{"n", n}, {"p", p}, {"lhs", l.lhs}, {"rhs", l.rhs}, {"deviation", dev}});
    }
  }
  r.passed = r.worst <= r.threshold;
  r.details = {{"instances", rows}};
  return r;
}

// 4. Section/moment inequality on randomized instances.
CheckResult check_section_random(std::uint64_t seed, Budget budget) {
  CheckResult r = make(4, "section/moment inequality", 0.0);
  const IntegrationConfig cfg = suite_config(seed, budget);
  Rng rng(seed, 4);
  const int max_n = budget == Budget::quick ? 5 : 6;
  static const double ps[] = {0.5, 1.0, 2.0, 5.0};
  int violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  json worst_case, violation_list = json::array();
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + static_cast<int>(rng.uniform() * max_n);
    const Named b = random_body(rng, n);
    const NamedDensity f = random_density(rng);
    const Vec xi = random_direction(rng, n);
    const double p = ps[k % 4];
    const auto l = lemma16_check(b.body, f.f, p, xi, cfg);
    // Slack beyond the allowed band (two error estimates plus rounding), relative to the right side.
    const double slack = (l.margin + 2.0 * l.combined_error + 1e-12 * std::max(l.lhs, l.rhs)) / l.rhs;
    json row = {{"k", k},          {"n", n},          {"body", b.body.to_json()}, {"density", f.f.to_json()},
                {"xi", to_std(xi)}, {"p", p},          {"lhs", l.lhs},             {"rhs", l.rhs},
                {"margin", l.margin}, {"error", l.combined_error}};
    if (!l.holds) {
      ++violations;
      violation_list.push_back(row);
    }
    if (slack < worst) {
      worst = slack;
      worst_case = row;
    }
    ++r.executed;
  }
  r.worst = worst;
  r.passed = violations == 0;
  r.details = {{"violations", violations}, {"worst_case", worst_case}, {"violation_list", violation_list}};
  return r;
}

// 5. Monotonicity in q of the profile moment functional, and indicator constancy.
CheckResult check_monotone_q(std::uint64_t seed, Budget) {
  CheckResult r = make(5, "moment functional monotone in q", 1e-6);
  IntegrationConfig cfg;
  cfg.seed = seed;
  std::vector<double> qs;
  for (int i = 0; i <= 16; ++i) qs.push_back(0.5 * i);
  double worst_drop = 0.0;
  json worst_case;
  for (int k = 0; k < 200; ++k) {
    const Profile1D g = random_step_profile(seed, 5000 + k);
    double prev = moment_functional(g, qs[0], cfg);
    for (std::size_t i = 1; i < qs.size(); ++i) {
      const double cur = moment_functional(g, qs[i], cfg);
      const double drop = prev - cur;
      if (drop > worst_drop) {
        worst_drop = drop;
        worst_case = {{"function", k}, {"q_from", qs[i - 1]}, {"q_to", qs[i]}, {"drop", drop}};
      }
      prev = cur;
    }
    ++r.executed;
  }
  double worst_indicator = 0.0;
  for (double a : {0.3, 1.0, 1.7, 2.5}) {
    for (double q : {-0.5, 0.0, 0.5, 1.0, 3.5, 8.0}) {
      worst_indicator = std::max(worst_indicator, std::abs(moment_functional(indicator_profile(a), q, cfg) - a));
      ++r.executed;
    }
  }
  r.worst = worst_drop;
  r.passed = worst_drop <= 1e-6 && worst_indicator <= 1e-9;
  r.details = {{"worst_drop", worst_drop},
               {"worst_drop_case", worst_case.is_null() ? json("none") : worst_case},
               {"indicator_max_error", worst_indicator},
               {"indicator_threshold", 1e-9}};
  return r;
}

// 6. Central slicing constant below 2 sqrt(n).
CheckResult check_slicing_bound(std::uint64_t seed, Budget budget) {
  CheckResult r = make(6, "slicing constant bound 2 sqrt(n)", 1.0);
  const IntegrationConfig cfg = suite_config(seed, budget);
  json rows = json::array();
  for (int n : dims(2, 6)) {
    for (const auto& b : convex_bodies(n)) {
      for (const auto& f : even_densities()) {
        const auto s = slicing_constant(b.body, f.f, SliceMode::central, cfg);
        const double ratio = *s.central_constant / (2.0 * std::sqrt(n));
        r.worst = std::max(r.worst, ratio);
        ++r.executed;
        rows.push_back({{"n", n}, {"body", b.tag}, {"density", f.tag}, {"S_hat", *s.central_constant},
                        {"bound", 2.0 * std::sqrt(n)}});
      }
    }
  }
  r.passed = r.worst <= r.threshold;
  r.details = {{"instances", rows}};
  return r;
}

// 7. Least moment against witness volumes.
CheckResult check_moment_ratio(std::uint64_t seed, Budget budget) {
  CheckResult r = make(7, "least moment ratio", 3.0);
  const IntegrationConfig cfg = suite_config(seed, budget);
  json rows = json::array();
  std::vector<NamedDensity> fs = {{"constant", Density::constant(1.0)}, {"gaussian(0.7)", Density::gaussian(0.7)}};
  if (budget == Budget::full) fs.push_back({"exp_l1(0.5)", Density::exp_l1(0.5)});
  for (int n : dims(2, 6)) {
    for (const auto& b : convex_bodies(n)) {
      for (double p : {1.0, 2.0, 4.0, 8.0}) {
        const auto ws = witness_list(b.body, p);
        for (const auto& f : fs) {
          const auto t = thm12_ratio(b.body, f.f, p, ws, cfg);
          r.worst = std::max(r.worst, t.ratio);
          ++r.executed;
          rows.push_back({{"n", n}, {"body", b.tag}, {"density", f.tag}, {"p", p}, {"ratio", t.ratio},
                          {"v_hat", t.v_hat}, {"witness", t.best_witness}});
        }
      }
    }
  }
  r.passed = r.worst <= r.threshold;
  r.details = {{"instances", rows}};
  return r;
}

// 8. Affine slicing ratio (asserted for p > 2, recorded for p <= 2).
CheckResult check_affine_ratio(std::uint64_t seed, Budget budget) {
  CheckResult r = make(8, "affine slicing ratio", 3.0);
  const IntegrationConfig cfg = suite_config(seed, budget);
  json rows = json::array();
  double report_only_max = 0.0;
  for (int n : dims(2, 6)) {
    std::vector<NamedDensity> fs = {{"constant", Density::constant(1.0)}};
    if (n <= 4 || budget == Budget::full) fs.push_back({"gaussian(0.7)", Density::gaussian(0.7)});
    for (const auto& b : convex_bodies(n)) {
      if (budget == Budget::quick && n >= 5 && (b.tag == "lq_ball(q=1.5)" || b.tag == "lq_ball(q=4)")) continue;
      for (const auto& f : fs) {
        const MaxSection section = max_section(b.body, f.f, SliceMode::affine, cfg);
        for (double p : {1.0, 2.0, 3.0, 4.0, 8.0}) {
          const auto d = dovr_upper(b.body, p, witness_list(b.body, p), cfg);
          const auto t = thm17_ratio(b.body, f.f, p, d.dovr_upper, section, cfg);
          const bool asserted = p > 2.0;
          if (asserted) r.worst = std::max(r.worst, t.c_hat);
          else report_only_max = std::max(report_only_max, t.c_hat);
          ++r.executed;
          rows.push_back({{"n", n}, {"body", b.tag}, {"density", f.tag}, {"p", p}, {"c_hat", t.c_hat},
                          {"dovr_upper", d.dovr_upper}, {"asserted", asserted}});
        }
      }
    }
  }
  r.passed = r.worst <= r.threshold;
  r.details = {{"instances", rows}, {"report_only_max_p_le_2", report_only_max}};
  return r;
}

// 9. Moment comparison implies mass comparison, randomized, hypothesis verified.
CheckResult check_mass_comparison(std::uint64_t seed, Budget budget) {
  CheckResult r = make(9, "mass comparison", 0.0);
  const IntegrationConfig cfg = suite_config(seed, budget);
  Rng rng(seed, 9);
  const int max_n = budget == Budget::quick ? 4 : 6;
  int verified = 0, attempts = 0, violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  json worst_case, violation_list = json::array();
  while (verified < 100 && attempts < 400) {
    ++attempts;
    const int n = 2 + static_cast<int>(rng.uniform() * (max_n - 1));
    const double p = 1.0 + static_cast<int>(rng.uniform() * 4.0);
    const Named m = random_body(rng, n);
    const NamedDensity f = random_density(rng);
    // D: a member of L_p^n.
    StarBody d = StarBody::euclidean_ball(n);
    const int dk = static_cast<int>(rng.uniform() * 3.0);
    if (dk == 1) {
      std::vector<double> axes(n);
      for (auto& a : axes) a = rng.uniform(0.5, 2.0);
      d = StarBody::ellipsoid(axes);
    } else if (dk == 2) {
      d = p == 1.0 ? StarBody::cross_polytope(n) : StarBody::lq_ball(n, p);
    }
    // K: mostly a body scaled into M; otherwise a free scaling.
    Named k = random_body(rng, n);
    const double u = rng.uniform(0.6, 1.05);
    const bool nested = rng.uniform() < 0.7;
    const double fit = contains_body(k.body, m.body, cfg).margin;
    k.body = k.body.scaled((nested ? std::min(u, 1.0) : u) / fit);
    const auto c = bp_compare(k.body, m.body, f.f, p, d, cfg);
    if (!c.hypothesis_holds) continue;
    ++verified;
    ++r.executed;
    const double ap_mass = std::pow(c.a, p) * c.mass_m.value;
    const double slack = (c.conclusion_margin + 2.0 * c.combined_error) / ap_mass;
    json row = {{"n", n},
                {"p", p},
                {"K", k.body.to_json()},
                {"M", m.body.to_json()},
                {"D", d.to_json()},
                {"density", f.f.to_json()},
                {"a", c.a},
                {"mass_K", c.mass_k.value},
                {"mass_M", c.mass_m.value},
                {"margin", c.conclusion_margin},
                {"error", c.combined_error}};
    if (c.status == CompareStatus::conclusion_violated) {
      ++violations;
      violation_list.push_back(row);
    }
    if (slack < worst) {
      worst = slack;
      worst_case = row;
    }
  }
  r.worst = worst;
  r.passed = verified == 100 && violations == 0;
  r.details = {{"verified_instances", verified},
               {"attempts", attempts},
               {"violations", violations},
               {"worst_case", worst_case},
               {"violation_list", violation_list}};
  return r;
}

// 10. Outer volume ratio distance sanity.
CheckResult check_dovr(std::uint64_t seed, Budget budget) {
  CheckResult r = make(10, "d_ovr sanity", 1.0);
  const IntegrationConfig cfg = suite_config(seed, budget);
  const int max_n = budget == Budget::quick ? 4 : 6;
  double self_dev = 0.0;
  json self_rows = json::array();
  for (int n : dims(2, max_n)) {
    std::vector<std::pair<StarBody, double>> cases = {
        {StarBody::euclidean_ball(n), 1.0}, {StarBody::euclidean_ball(n), 2.0}, {StarBody::euclidean_ball(n), 4.0},
        {StarBody::ellipsoid(ellipsoid_axes(n)), 2.0}, {StarBody::lq_ball(n, 1.5), 1.5},
        {StarBody::lq_ball(n, 3.0), 3.0}, {StarBody::lq_ball(n, 4.0), 4.0}, {StarBody::cross_polytope(n), 1.0}};
    for (const auto& [body, p] : cases) {
      const auto d = dovr_upper(body, p, {*Witness::builtin(body, p, "self")}, cfg);
      self_dev = std::max(self_dev, std::abs(d.dovr_upper - 1.0));
      ++r.executed;
      self_rows.push_back({{"n", n}, {"body", body.to_json()}, {"p", p}, {"dovr_upper", d.dovr_upper}});
    }
  }
  const auto square =
      dovr_upper(StarBody::cube(2, 1.0), 2.0, {*Witness::builtin(StarBody::euclidean_ball(2), 2.0, "ball")}, cfg);
  const double square_dev = std::abs(square.dovr_upper / std::sqrt(M_PI / 2.0) - 1.0);
  ++r.executed;
  double john = 0.0;
  json john_rows = json::array();
  for (int n : dims(2, 6)) {
    for (const auto& b : convex_bodies(n)) {
      const Witness ball =
          *Witness::builtin(StarBody::euclidean_ball(n, b.body.bounding_radius()), 2.0, "circumscribed_ball");
      const auto d = dovr_upper(b.body, 2.0, {ball}, cfg);
      john = std::max(john, d.dovr_upper / std::sqrt(n));
      ++r.executed;
      john_rows.push_back({{"n", n}, {"body", b.tag}, {"dovr_upper", d.dovr_upper}, {"sqrt_n", std::sqrt(n)}});
    }
  }
  r.worst = std::max({self_dev / 1e-3, square_dev / 1e-2, john});
  r.passed = self_dev <= 1e-3 && square_dev <= 1e-2 && john <= 1.0;
  r.details = {{"self_witness_max_deviation", self_dev},
               {"self_witness", self_rows},
               {"square_in_disk", square.dovr_upper},
               {"square_in_disk_expected", std::sqrt(M_PI / 2.0)},
               {"square_in_disk_relative_error", square_dev},
               {"john_max_ratio_to_sqrt_n", john},
               {"john", john_rows}};
  return r;
}

// 11. Closed-form spot values.
CheckResult check_spot_values(std::uint64_t seed, Budget) {
  CheckResult r = make(11, "closed-form spot values", 1e-3);
  IntegrationConfig cfg;
  cfg.seed = seed;
  cfg.sphere_samples = 1 << 18;
  json rows = json::array();
  auto record = [&](const std::string& what, double value, double exact) {
    const double rel = std::abs(value - exact) / std::abs(exact);
    r.worst = std::max(r.worst, rel);
    ++r.executed;
    rows.push_back({{"quantity", what}, {"value", value}, {"exact", exact}, {"relative_error", rel}});
  };
  const Density one = Density::constant(1.0);
  record("disk moment p=1", moment(StarBody::euclidean_ball(2), one, 1.0, axis(2, 0), cfg).value, 4.0 / 3.0);
  for (int n : {2, 3, 4}) {
    for (double p : {1.0, 2.0, 4.0, 8.0}) {
      record("cube moment n=" + std::to_string(n) + " p=" + std::to_string(static_cast<int>(p)),
             moment(StarBody::cube(n, 0.5), one, p, axis(n, 0), cfg).value, std::pow(2.0, -p) / (p + 1.0));
    }
  }
  record("disk central slicing constant",
         *slicing_constant(StarBody::euclidean_ball(2), one, SliceMode::central, cfg).central_constant,
         std::sqrt(M_PI) / 2.0);
  r.passed = r.worst <= r.threshold;
  r.details = {{"instances", rows}};
  return r;
}

// 12. In-process determinism: a representative pipeline run twice.
CheckResult check_determinism(std::uint64_t seed, Budget budget) {
  CheckResult r = make(12, "determinism", 0.0);
  const IntegrationConfig cfg = suite_config(seed, budget);
  auto pipeline = [&]() {
    const StarBody k = StarBody::lq_ball(3, 3.0, 1.2);
    const Density f = Density::gaussian(0.8);
    const Vec xi = Vec::Constant(3, 1.0 / std::sqrt(3.0));
    json j;
    j["min_moment"] = min_moment(k, f, 2.5, cfg).to_json();
    j["lemma16"] = lemma16_check(k, f, 2.0, xi, cfg).to_json();
    j["slicing"] = slicing_constant(k, f, SliceMode::affine, cfg).to_json();
    j["dovr"] = dovr_upper(k, 3.0, witness_list(k, 3.0), cfg).to_json();
    return j.dump();
  };
  const std::string a = pipeline();
  const std::string b = pipeline();
  r.executed = 2;
  r.passed = a == b;
  r.worst = a == b ? 0.0 : 1.0;
  r.details = {{"identical", a == b}, {"bytes", static_cast<int>(a.size())}};
  return r;
}

}  // namespace

CheckResult run_check(int id, std::uint64_t seed, Budget budget) {
  using Fn = CheckResult (*)(std::uint64_t, Budget);
  static const Fn checks[kCheckCount] = {check_spherical_identity, check_polar_volume, check_section_equality,
                                         check_section_random,     check_monotone_q,      check_slicing_bound,
                                         check_moment_ratio,              check_affine_ratio,        check_mass_comparison,
                                         check_dovr,               check_spot_values,  check_determinism};
  if (id < 1 || id > kCheckCount) throw InputError("run_check: id must be in [1, 12]");
  return checks[id - 1](seed, budget);
}

SuiteSummary verify_suite(std::uint64_t seed, Budget budget) {
  SuiteSummary s;
  s.seed = seed;
  s.budget = budget;
  for (int id = 1; id <= kCheckCount; ++id) s.checks.push_back(run_check(id, seed, budget));
  return s;
}

}  // namespace slicelab
