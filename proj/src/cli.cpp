#include "slicelab/cli.hpp"

#include "slicelab/bodies.hpp"
#include "slicelab/densities.hpp"
#include "slicelab/distances.hpp"
#include "slicelab/moments.hpp"
#include "slicelab/quad.hpp"
#include "slicelab/slicing.hpp"
#include "slicelab/suite.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace slicelab {

using nlohmann::json;

json RunReport::to_json() const {
  return {{"command", command}, {"version", kVersion}, {"seed", seed},
          {"inputs", inputs},   {"results", results}, {"status", status}};
}

namespace {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else if (j.is_number_float()) {
    rows.emplace_back(prefix, format_number(j.get<double>()));
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_null()) {
    rows.emplace_back(prefix, "");
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

}  // namespace

std::string RunReport::to_csv() const {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(to_json(), "", rows);
  std::string s = "key,value\n";
  for (const auto& [k, v] : rows) s += csv_field(k) + "," + csv_field(v) + "\n";
  return s;
}

json load_spec(const std::string& text, const std::string& what) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  const bool inline_spec = first != std::string::npos && (text[first] == '{' || text[first] == '[');
  std::string source = text;
  std::string content = text;
  if (!inline_spec) {
    std::ifstream in(text);
    if (!in) throw InputError(what + ": cannot open file '" + text + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    content = ss.str();
  } else {
    source = "inline";
  }
  try {
    return json::parse(content);
  } catch (const json::parse_error& e) {
    throw InputError(what + " (" + source + "): " + e.what());
  }
}

std::vector<double> parse_direction(const std::string& text, int n) {
  std::vector<double> v;
  if (text.rfind("axis:", 0) == 0) {
    int i = -1;
    try {
      std::size_t used = 0;
      i = std::stoi(text.substr(5), &used);
      if (used != text.size() - 5) i = -1;
    } catch (const std::exception&) {
      i = -1;
    }
    if (i < 0 || i >= n) throw InputError("--xi: axis index out of range in '" + text + "'");
    v.assign(n, 0.0);
    v[i] = 1.0;
    return v;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("--xi: bad component '" + item + "'");
    }
  }
  if (static_cast<int>(v.size()) != n)
    throw DimensionError("--xi: expected " + std::to_string(n) + " components, got " + std::to_string(v.size()));
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InputError("--xi: direction must be nonzero and finite");
  for (double& x : v) x /= norm;
  return v;
}

namespace {

struct Options {
  std::uint64_t seed = 42;
  bool seed_set = false;
  int samples = 0;
  double tol = 0.0;
  std::string format = "json";
  std::string out;
  std::string budget;
  std::string cfg;

  std::string body, density, xi, mode = "central", g, qgrid = "0:8:0.5", x;
  std::string K, M, D;
  std::vector<std::string> witnesses;
  double p = 2.0;
  double s = 0.0;
  bool s_set = false;
};

Vec to_vec(const std::vector<double>& v) {
  Vec x(static_cast<int>(v.size()));
  for (int i = 0; i < x.size(); ++i) x(i) = v[i];
  return x;
}

std::vector<double> to_std(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

StarBody parse_body(const std::string& text, const std::string& flag) {
  if (text.empty()) throw InputError(flag + " is required");
  try {
    return StarBody::from_json(load_spec(text, flag));
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(flag, 0) == 0) throw;
    throw InputError(flag + ": " + msg);
  }
}

Density parse_density(const std::string& text) {
  if (text.empty()) return Density::constant(1.0);
  try {
    return Density::from_json(load_spec(text, "--density"));
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind("--density", 0) == 0) throw;
    throw InputError("--density: " + msg);
  }
}

json vec_json(const std::vector<Atom>& atoms) {
  json a = json::array();
  for (const auto& atom : atoms) a.push_back({{"direction", to_std(atom.direction)}, {"weight", atom.weight}});
  return a;
}

// A witness is either a built-in body spec that belongs to L_p^n, or
// {"tag", "body", "measure": {"atoms": [{"direction", "weight"}], "uniform_weight"}}.
Witness parse_witness(const std::string& text, double p, int index) {
  const json spec = load_spec(text, "--witnesses");
  const std::string where = "--witnesses[" + std::to_string(index) + "]";
  try {
    if (spec.is_object() && spec.contains("measure")) {
      for (const auto& [k, v] : spec.items()) {
        if (k != "tag" && k != "body" && k != "measure") throw InputError("unknown field '" + k + "'");
      }
      if (!spec.contains("body")) throw InputError("missing field 'body'");
      const StarBody body = StarBody::from_json(spec.at("body"));
      const json& m = spec.at("measure");
      if (!m.is_object()) throw InputError("field 'measure' must be an object");
      for (const auto& [k, v] : m.items()) {
        if (k != "atoms" && k != "uniform_weight") throw InputError("measure: unknown field '" + k + "'");
      }
      std::vector<Atom> atoms;
      if (m.contains("atoms")) {
        if (!m.at("atoms").is_array()) throw InputError("measure: 'atoms' must be an array");
        for (const auto& a : m.at("atoms")) {
          if (!a.is_object() || !a.contains("direction") || !a.contains("weight"))
            throw InputError("measure: every atom needs 'direction' and 'weight'");
          Atom atom;
          atom.direction = to_vec(a.at("direction").get<std::vector<double>>());
          atom.weight = a.at("weight").get<double>();
          atoms.push_back(atom);
        }
      }
      const double uniform = m.value("uniform_weight", 0.0);
      const std::string tag = spec.value("tag", "witness" + std::to_string(index));
      return Witness(body, DirectionMeasure(body.dim(), std::move(atoms), uniform), p, tag);
    }
    const StarBody body = StarBody::from_json(spec);
    auto w = Witness::builtin(body, p, body.to_json().value("type", "witness") + std::to_string(index));
    if (!w) throw InputError("body has no built-in L_p representation for p = " + format_number(p) +
                             "; give an explicit measure");
    return *w;
  } catch (const json::exception& e) {
    throw InputError(where + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

json witness_json(const Witness& w) {
  return {{"tag", w.tag()},
          {"body", w.body().to_json()},
          {"measure", {{"atoms", vec_json(w.measure().atoms())}, {"uniform_weight", w.measure().uniform_weight()}}}};
}

IntegrationConfig make_config(const Options& o) {
  IntegrationConfig cfg;
  if (!o.budget.empty()) cfg = suite_config(o.seed, budget_from_string(o.budget));
  if (!o.cfg.empty()) {
    try {
      cfg = IntegrationConfig::from_json(load_spec(o.cfg, "--cfg"));
    } catch (const InputError& e) {
      const std::string msg = e.what();
      if (msg.rfind("--cfg", 0) == 0) throw;
      throw InputError("--cfg: " + msg);
    }
  }
  if (o.seed_set) cfg.seed = o.seed;
  if (o.samples > 0) cfg.sphere_samples = o.samples;
  if (o.tol > 0.0) cfg.rel_tol_target = o.tol;
  cfg.validate();
  return cfg;
}

void require_p(double p, double lo, const char* what) {
  if (!std::isfinite(p) || p < lo)
    throw InputError(std::string("--p: ") + what + " requires p >= " + format_number(lo));
}

bool tolerance_missed(const json& j) {
  if (j.is_object()) {
    auto it = j.find("status");
    if (it != j.end() && it->is_string() && it->get<std::string>() == "tolerance_not_met") return true;
    for (const auto& [k, v] : j.items())
      if (tolerance_missed(v)) return true;
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (tolerance_missed(v)) return true;
  }
  return false;
}

Profile1D parse_profile(const json& spec) {
  if (!spec.is_object() || !spec.contains("type") || !spec.at("type").is_string())
    throw InputError("--g: spec needs a string field 'type'");
  const std::string type = spec.at("type").get<std::string>();
  auto only = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : spec.items()) {
      bool ok = k == "type";
      for (const char* key : keys) ok = ok || k == key;
      if (!ok) throw InputError("--g: " + type + " spec: unknown field '" + k + "'");
    }
  };
  auto num = [&](const char* key) {
    if (!spec.contains(key) || !spec.at(key).is_number())
      throw InputError("--g: " + type + " spec: field '" + key + "' must be a number");
    return spec.at(key).get<double>();
  };
  try {
    if (type == "step") {
      only({"edges", "heights"});
      return step_profile(spec.at("edges").get<std::vector<double>>(), spec.at("heights").get<std::vector<double>>());
    }
    if (type == "indicator") {
      only({"a"});
      return indicator_profile(num("a"));
    }
    if (type == "tent") {
      only({"w"});
      return tent_profile(num("w"));
    }
    if (type == "random_step") {
      only({"seed", "index"});
      return random_step_profile(spec.value("seed", std::uint64_t{7}), spec.value("index", std::uint64_t{0}));
    }
  } catch (const json::exception& e) {
    throw InputError("--g: " + type + " spec: " + e.what());
  }
  throw InputError("--g: unknown type '" + type + "' (expected step, indicator, tent or random_step)");
}

std::vector<double> parse_qgrid(const std::string& text) {
  double a = 0.0, b = 0.0, h = 0.0;
  char c1 = 0, c2 = 0;
  std::stringstream ss(text);
  if (!(ss >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || !ss.eof())
    throw InputError("--qgrid: expected start:stop:step, got '" + text + "'");
  if (!(a > -1.0) || !(h > 0.0) || b < a) throw InputError("--qgrid: need start > -1, step > 0, stop >= start");
  std::vector<double> q;
  const long count = std::lround(std::floor((b - a) / h + 1e-9));
  if (count > 100000) throw InputError("--qgrid: too many points");
  for (long i = 0; i <= count; ++i) q.push_back(a + static_cast<double>(i) * h);
  return q;
}

// Executes one subcommand; returns the report and whether an inequality failed.
bool execute(const std::string& command, const Options& o, RunReport& report) {
  const IntegrationConfig cfg = make_config(o);
  report.command = command;
  report.seed = cfg.seed;
  report.inputs["cfg"] = cfg.to_json();
  json& in = report.inputs;
  json& res = report.results;

  if (command == "verify-suite") {
    const Budget budget = o.budget.empty() ? Budget::quick : budget_from_string(o.budget);
    in = {{"budget", to_string(budget)}};
    const SuiteSummary summary = verify_suite(cfg.seed, budget);
    res = summary.to_json();
    return !summary.passed();
  }
  if (command == "monotonic-q") {
    if (o.g.empty()) throw InputError("--g is required");
    const json spec = load_spec(o.g, "--g");
    const Profile1D g = parse_profile(spec);
    const std::vector<double> qs = parse_qgrid(o.qgrid);
    in["g"] = spec;
    in["qgrid"] = o.qgrid;
    json rows = json::array();
    double worst = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const double f = moment_functional(g, qs[i], cfg);
      if (i > 0) worst = std::min(worst, f - prev);
      prev = f;
      rows.push_back({{"q", qs[i]}, {"F", f}});
    }
    res = {{"values", rows}, {"worst_decrease", worst}, {"slack", 1e-6}, {"non_decreasing", worst >= -1e-6}};
    return worst < -1e-6;
  }
  if (command == "dbm") {
    const StarBody m = parse_body(o.M.empty() ? o.body : o.M, "--M");
    const StarBody d = parse_body(o.D, "--D");
    if (m.dim() != d.dim()) throw DimensionError("--M and --D have different dimensions");
    in["M"] = m.to_json();
    in["D"] = d.to_json();
    const RadialRatioRange r = radial_ratio_range(m, d, cfg);
    res = {{"dbm_scaling", std::max(1.0, r.ratio())},
           {"radial_ratio_inf", r.inf},
           {"radial_ratio_sup", r.sup},
           {"restriction", "a is restricted to homothets of D"}};
    return false;
  }
  if (command == "bp-compare") {
    const StarBody k = parse_body(o.K, "--K");
    const StarBody m = parse_body(o.M, "--M");
    const StarBody d = parse_body(o.D, "--D");
    if (k.dim() != m.dim() || k.dim() != d.dim()) throw DimensionError("--K, --M and --D must share a dimension");
    require_p(o.p, 1.0, "bp-compare");
    const Density f = parse_density(o.density);
    in["K"] = k.to_json();
    in["M"] = m.to_json();
    in["D"] = d.to_json();
    in["density"] = f.to_json();
    in["p"] = o.p;
    const CompareReport r = bp_compare(k, m, f, o.p, d, cfg);
    res = r.to_json();
    return r.status == CompareStatus::conclusion_violated;
  }

  const StarBody body = parse_body(o.body, "--body");
  const int n = body.dim();
  in["body"] = body.to_json();

  if (command == "eval-gauge") {
    if (o.x.empty()) throw InputError("--x is required");
    std::vector<double> xs;
    std::stringstream ss(o.x);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        xs.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw InputError("--x: bad component '" + item + "'");
      }
    }
    const Vec x = to_vec(xs);
    require_dim(x, n, "--x");
    in["x"] = xs;
    const double gauge = body.gauge(x);
    res = {{"gauge", gauge}, {"contains", body.contains(x, 0.0)}};
    if (x.norm() > 0.0) res["radial"] = body.radial(x / x.norm());
    return false;
  }
  if (command == "volume") {
    const ValueWithError v = volume(body, cfg);
    res = {{"volume", v.to_json()}};
    if (body.exact_volume()) {
      res["exact_volume"] = *body.exact_volume();
      res["relative_deviation"] = std::abs(v.value - *body.exact_volume()) / *body.exact_volume();
    }
    return false;
  }
  if (command == "jensen") {
    require_p(o.p, 1.0, "jensen");
    in["p"] = o.p;
    const JensenReport j = jensen_check(body, o.p, cfg);
    res = {{"lhs", j.lhs}, {"rhs", j.rhs}, {"lhs_error", j.lhs_error}, {"rhs_error", j.rhs_error}, {"holds", j.holds}};
    return !j.holds;
  }
  if (command == "dovr") {
    require_p(o.p, 1.0, "dovr");
    in["p"] = o.p;
    std::vector<Witness> ws;
    for (std::size_t i = 0; i < o.witnesses.size(); ++i) ws.push_back(parse_witness(o.witnesses[i], o.p, int(i)));
    if (ws.empty()) {
      ws.push_back(*Witness::builtin(StarBody::euclidean_ball(n, body.bounding_radius()), o.p, "circumscribed_ball"));
      if (auto self = Witness::builtin(body, o.p, "self")) ws.push_back(*self);
    }
    json wj = json::array();
    for (const auto& w : ws) {
      if (w.body().dim() != n) throw DimensionError("witness '" + w.tag() + "' has the wrong dimension");
      wj.push_back(witness_json(w));
    }
    in["witnesses"] = wj;
    const DistanceReport r = dovr_upper(body, o.p, ws, cfg);
    res = r.to_json();
    res["john_bound"] = std::sqrt(static_cast<double>(n));
    return false;
  }

  const Density f = parse_density(o.density);
  in["density"] = f.to_json();

  if (command == "moment" || command == "lemma16" || command == "slice-sup") {
    if (o.xi.empty()) throw InputError("--xi is required");
    const Vec xi = to_vec(parse_direction(o.xi, n));
    in["xi"] = to_std(xi);
    if (command == "moment") {
      require_p(o.p, 0.0, "moment");
      in["p"] = o.p;
      res = {{"moment", moment(body, f, o.p, xi, cfg).to_json()}};
      return false;
    }
    if (command == "lemma16") {
      if (!(o.p > 0.0)) throw InputError("--p: lemma16 requires p > 0");
      in["p"] = o.p;
      const Lemma16Report r = lemma16_check(body, f, o.p, xi, cfg);
      res = r.to_json();
      return !r.holds;
    }
    const SectionProfile profile(body, f, xi, cfg);
    if (o.s_set) {
      in["s"] = o.s;
      res["section"] = profile(o.s).to_json();
    }
    const SectionSup sup = section_sup(profile, cfg);
    res["sup"] = {{"offset", sup.offset}, {"value", sup.value.to_json()}, {"evaluations", sup.evaluations}};
    res["central"] = profile(0.0).to_json();
    res["support"] = {{"minus", profile.support_minus()}, {"plus", profile.support_plus()}};
    return false;
  }
  if (command == "min-moment" || command == "gamma") {
    require_p(o.p, 0.0, command.c_str());
    if (!(o.p > 0.0)) throw InputError("--p: must be positive");
    in["p"] = o.p;
    const MomentResult r = min_moment(body, f, o.p, cfg);
    if (command == "gamma") {
      res = {{"gamma_ratio", r.normalized_gamma}, {"min_moment", r.to_json()}};
    } else {
      res = r.to_json();
    }
    return false;
  }
  if (command == "slicing-constant") {
    const SliceMode mode = slice_mode_from_string(o.mode);
    in["mode"] = to_string(mode);
    const SlicingReport r = slicing_constant(body, f, mode, cfg);
    res = r.to_json();
    const double bound = 2.0 * std::sqrt(static_cast<double>(n));
    res["bound_2sqrt_n"] = bound;
    if (mode == SliceMode::central && r.central_constant) {
      const bool holds = *r.central_constant <= bound;
      res["bound_holds"] = holds;
      return !holds;
    }
    return false;
  }
  throw InputError("unknown subcommand '" + command + "'");
}

std::mutex write_mutex;

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moment, slicing and distance functionals of star bodies", "slicelab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed")->each([&](const std::string&) { o.seed_set = true; });
    sub->add_option("--samples", o.samples, "Sphere quadrature nodes")->check(CLI::PositiveNumber);
    sub->add_option("--tol", o.tol, "Relative tolerance target")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out, "Report path (stdout when omitted)");
    sub->add_option("--budget", o.budget, "Budget profile")->check(CLI::IsMember({"quick", "full"}));
    sub->add_option("--cfg", o.cfg, "Integration config (inline JSON or path)");
  };
  auto body = [&](CLI::App* sub) { sub->add_option("--body", o.body, "Body spec (inline JSON or path)"); };
  auto density = [&](CLI::App* sub) {
    sub->add_option("--density", o.density, "Density spec (default constant 1)");
  };
  auto pflag = [&](CLI::App* sub) { sub->add_option("--p", o.p, "Moment exponent"); };
  auto xi = [&](CLI::App* sub) { sub->add_option("--xi", o.xi, "Direction: axis:i or comma list"); };

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"eval-gauge", "Gauge, radial function and membership of a point"},
                      {"volume", "Volume by the polar formula"},
                      {"moment", "Moment of f in one direction"},
                      {"min-moment", "Least moment over directions"},
                      {"gamma", "Normalized least moment"},
                      {"slice-sup", "Largest parallel section in one direction"},
                      {"slicing-constant", "Slicing constant (central or affine)"},
                      {"lemma16", "Section/moment inequality in one direction"},
                      {"monotonic-q", "Moment functional of a 1-D profile over a q grid"},
                      {"dovr", "Outer volume ratio upper bound"},
                      {"dbm", "Homothety-restricted Banach-Mazur scaling"},
                      {"bp-compare", "Moment comparison implies mass comparison"},
                      {"jensen", "Jensen step of the polar volume bound"},
                      {"verify-suite", "Run all acceptance checks"}};
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    const std::string name = s.name;
    if (name != "verify-suite" && name != "monotonic-q" && name != "bp-compare" && name != "dbm") body(sub);
    if (name == "moment" || name == "min-moment" || name == "gamma" || name == "slice-sup" ||
        name == "slicing-constant" || name == "lemma16" || name == "bp-compare")
      density(sub);
    if (name == "moment" || name == "min-moment" || name == "gamma" || name == "lemma16" || name == "dovr" ||
        name == "bp-compare" || name == "jensen")
      pflag(sub);
    if (name == "moment" || name == "slice-sup" || name == "lemma16") xi(sub);
    if (name == "eval-gauge") sub->add_option("--x", o.x, "Point as a comma list");
    if (name == "slice-sup")
      sub->add_option("--s", o.s, "Also evaluate the section at this offset")->each([&](const std::string&) {
        o.s_set = true;
      });
    if (name == "slicing-constant")
      sub->add_option("--mode", o.mode, "central or affine")->check(CLI::IsMember({"central", "affine"}));
    if (name == "monotonic-q") {
      sub->add_option("--g", o.g, "Profile spec: step, indicator, tent or random_step");
      sub->add_option("--qgrid", o.qgrid, "start:stop:step");
    }
    if (name == "dovr") sub->add_option("--witnesses", o.witnesses, "Witness specs in L_p^n");
    if (name == "bp-compare") {
      sub->add_option("--K", o.K, "Body K");
      sub->add_option("--M", o.M, "Body M");
      sub->add_option("--D", o.D, "Body D in L_p^n");
    }
    if (name == "dbm") {
      sub->add_option("--M", o.M, "Body M");
      sub->add_option("--D", o.D, "Body D");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunReport report;
  bool violated = false;
  try {
    violated = execute(command, o, report);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const DegenerateError& e) {
    err << "error: degenerate input: " << e.what() << "\n";
    return exit_input;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  }

  int code = exit_ok;
  if (violated) {
    code = exit_inequality;
    report.status = "inequality_failed";
  } else if (tolerance_missed(report.results)) {
    code = exit_tolerance;
    report.status = "tolerance_not_met";
  }

  const std::string text = o.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
  std::lock_guard<std::mutex> lock(write_mutex);
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << o.out << "'\n";
      return exit_input;
    }
    file << text;
  }
  return code;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace slicelab
