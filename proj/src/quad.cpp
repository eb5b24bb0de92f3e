#include "slicelab/quad.hpp"

#include "slicelab/parallel.hpp"
#include "slicelab/rng.hpp"
#include "slicelab/sobol.hpp"
#include "slicelab/sphere_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>

namespace slicelab {

std::string to_string(Method method) {
  switch (method) {
    case Method::mc: return "mc";
    case Method::qmc: return "qmc";
    case Method::product_polar: return "product_polar";
    case Method::grid1d: return "grid1d";
  }
  return "qmc";
}

std::string to_string(Status status) { return status == Status::ok ? "ok" : "tolerance_not_met"; }

void IntegrationConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InputError(std::string("integration config: ") + what);
  };
  require(sphere_samples > 0, "sphere_samples must be positive");
  require(radial_nodes > 0 && radial_nodes <= 256, "radial_nodes must be in [1, 256]");
  require(mc_samples > 0, "mc_samples must be positive");
  require(rel_tol_target > 0.0 && rel_tol_target < 1.0, "rel_tol_target must be in (0, 1)");
  require(batch_size > 0, "batch_size must be positive");
  require(replicates >= 2, "replicates must be >= 2");
  require(section_samples > 0, "section_samples must be positive");
  require(section_grid >= 3, "section_grid must be >= 3");
  require(golden_iterations >= 0, "golden_iterations must be >= 0");
  require(random_starts >= 0, "random_starts must be >= 0");
  require(search_evals > 0, "search_evals must be positive");
  require(local_searches >= -1, "local_searches must be >= -1");
  require(containment_samples > 0, "containment_samples must be positive");
  require(hypothesis_directions > 0, "hypothesis_directions must be positive");
}

nlohmann::json IntegrationConfig::to_json() const {
  return {{"method", to_string(method)},
          {"sphere_samples", sphere_samples},
          {"radial_nodes", radial_nodes},
          {"mc_samples", mc_samples},
          {"seed", seed},
          {"rel_tol_target", rel_tol_target},
          {"batch_size", batch_size},
          {"replicates", replicates},
          {"antipodal", antipodal},
          {"section_samples", section_samples},
          {"section_grid", section_grid},
          {"golden_iterations", golden_iterations},
          {"random_starts", random_starts},
          {"search_evals", search_evals},
          {"local_searches", local_searches},
          {"containment_samples", containment_samples},
          {"hypothesis_directions", hypothesis_directions}};
}

IntegrationConfig IntegrationConfig::from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw InputError("integration config must be a JSON object");
  IntegrationConfig cfg;
  static const std::set<std::string> allowed = {
      "method",         "sphere_samples",  "radial_nodes",  "mc_samples",       "seed",
      "rel_tol_target", "batch_size",      "replicates",    "antipodal",        "section_samples",
      "section_grid",   "golden_iterations", "random_starts", "search_evals",   "local_searches",
      "containment_samples", "hypothesis_directions"};
  for (const auto& [key, value] : spec.items()) {
    if (!allowed.count(key)) throw InputError("integration config: unknown field '" + key + "'");
  }
  auto get = [&](const char* key, auto& out) {
    if (!spec.contains(key)) return;
    try {
      out = spec.at(key).get<std::remove_reference_t<decltype(out)>>();
    } catch (const nlohmann::json::exception&) {
      throw InputError(std::string("integration config: field '") + key + "' has the wrong type");
    }
  };
  if (spec.contains("method")) {
    const auto m = spec.at("method");
    if (!m.is_string()) throw InputError("integration config: 'method' must be a string");
    const auto s = m.get<std::string>();
    if (s == "mc") cfg.method = Method::mc;
    else if (s == "qmc") cfg.method = Method::qmc;
    else if (s == "product_polar") cfg.method = Method::product_polar;
    else if (s == "grid1d") cfg.method = Method::grid1d;
    else throw InputError("integration config: unknown method '" + s + "'");
  }
  get("sphere_samples", cfg.sphere_samples);
  get("radial_nodes", cfg.radial_nodes);
  get("mc_samples", cfg.mc_samples);
  get("seed", cfg.seed);
  get("rel_tol_target", cfg.rel_tol_target);
  get("batch_size", cfg.batch_size);
  get("replicates", cfg.replicates);
  get("antipodal", cfg.antipodal);
  get("section_samples", cfg.section_samples);
  get("section_grid", cfg.section_grid);
  get("golden_iterations", cfg.golden_iterations);
  get("random_starts", cfg.random_starts);
  get("search_evals", cfg.search_evals);
  get("local_searches", cfg.local_searches);
  get("containment_samples", cfg.containment_samples);
  get("hypothesis_directions", cfg.hypothesis_directions);
  cfg.validate();
  return cfg;
}

nlohmann::json ValueWithError::to_json() const {
  return {{"value", value}, {"std_error", std_error}, {"samples_used", samples_used}, {"status", to_string(status)}};
}

Status tolerance_status(double value, double error, double rel_tol) {
  if (!std::isfinite(error)) return Status::tolerance_not_met;
  if (error <= rel_tol * std::abs(value)) return Status::ok;
  if (value == 0.0 && error == 0.0) return Status::ok;
  return Status::tolerance_not_met;
}

// ---------------------------------------------------------------------------
// Gauss-Legendre

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  if (order < 1) throw InputError("gauss_legendre: order must be >= 1");
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  std::vector<double> x(order), w(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= order; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[order - 1 - i] = z;
    w[i] = w[order - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return cache.emplace(order, std::make_pair(std::move(x), std::move(w))).first->second;
}

// ---------------------------------------------------------------------------
// Sphere rules

SphereRule::SphereRule(int n, int samples, Method method, std::uint64_t seed, std::uint64_t stream,
                       int replicates, bool antipodal)
    : n_(n) {
  if (n < 1 || n > kMaxDim) throw InputError("sphere rule: bad dimension");
  if (samples < 1) throw InputError("sphere rule: samples must be positive");
  if (n == 1) build_exact_s0();
  else if (n == 2) build_circle(samples);
  else if (method == Method::qmc || method == Method::mc)
    build_random(samples, method, seed, stream, replicates, antipodal);
  else build_product(samples);
}

void SphereRule::build_exact_s0() {
  nodes_.resize(1, 2);
  nodes_(0, 0) = 1.0;
  nodes_(0, 1) = -1.0;
  weights_ = Eigen::VectorXd::Ones(2);
  paired_ = true;
}

void SphereRule::build_circle(int samples) {
  const int m = std::max(8, (samples + 3) / 4 * 4);
  nodes_.resize(2, m);
  weights_ = Eigen::VectorXd::Constant(m, 2.0 * M_PI / m);
  coarse_ = Eigen::VectorXd::Zero(m);
  for (int k = 0; k < m; ++k) {
    const double phi = 2.0 * M_PI * k / m;
    nodes_(0, k) = std::cos(phi);
    nodes_(1, k) = std::sin(phi);
    if (k % 2 == 0) coarse_(k) = 4.0 * M_PI / m;
  }
  // Exact antipodes, so paired node sums cancel odd integrands to the last bit.
  for (int k = 0; k < m / 2; ++k) nodes_.col(k + m / 2) = -nodes_.col(k);
  paired_ = true;
}

void SphereRule::build_random(int samples, Method method, std::uint64_t seed, std::uint64_t stream,
                              int replicates, bool antipodal) {
  int base = antipodal ? (samples + 1) / 2 : samples;
  if (method == Method::qmc) {
    int m = 1;
    while (m < base || m < replicates) m *= 2;
    base = m;
  } else {
    base = std::max(replicates, (base + replicates - 1) / replicates * replicates);
  }
  Eigen::MatrixXd gaussian(n_, base);
  if (method == Method::qmc) {
    const Eigen::MatrixXd u = scrambled_sobol(n_, base, stream_seed(seed, stream));
    for (int k = 0; k < base; ++k)
      for (int i = 0; i < n_; ++i) gaussian(i, k) = inverse_normal_cdf(u(i, k));
  } else {
    Rng rng(seed, stream);
    for (int k = 0; k < base; ++k)
      for (int i = 0; i < n_; ++i) gaussian(i, k) = rng.normal();
  }
  const int total = antipodal ? 2 * base : base;
  nodes_.resize(n_, total);
  batch_.resize(total);
  batches_ = std::min(replicates, base);
  const int per_batch = base / batches_;
  for (int k = 0; k < base; ++k) {
    nodes_.col(k) = gaussian.col(k) / gaussian.col(k).norm();
    batch_[k] = std::min(batches_ - 1, k / per_batch);
    if (antipodal) {
      nodes_.col(k + base) = -nodes_.col(k);
      batch_[k + base] = batch_[k];
    }
  }
  weights_ = Eigen::VectorXd::Constant(total, sphere_area(n_) / total);
  paired_ = antipodal;
}

namespace {

// Hyperspherical product rule with m Gauss-Legendre nodes per polar angle and
// 2m equispaced azimuths.
void product_rule(int n, int m, std::vector<Eigen::VectorXd>& nodes, std::vector<double>& weights) {
  const auto& [gx, gw] = gauss_legendre(m);
  const int polar = n - 2;
  std::vector<int> index(polar, 0);
  const int azimuths = 2 * m;
  while (true) {
    double w = 1.0;
    double sin_prod = 1.0;
    Eigen::VectorXd x(n);
    for (int k = 0; k < polar; ++k) {
      const double phi = 0.5 * M_PI * (gx[index[k]] + 1.0);
      w *= 0.5 * M_PI * gw[index[k]] * std::pow(std::sin(phi), n - 2 - k);
      x(k) = sin_prod * std::cos(phi);
      sin_prod *= std::sin(phi);
    }
    for (int a = 0; a < azimuths; ++a) {
      const double psi = 2.0 * M_PI * (a + 0.5) / azimuths;
      x(n - 2) = sin_prod * std::cos(psi);
      x(n - 1) = sin_prod * std::sin(psi);
      nodes.push_back(x);
      weights.push_back(w * 2.0 * M_PI / azimuths);
    }
    int k = polar - 1;
    while (k >= 0 && ++index[k] == m) index[k--] = 0;
    if (k < 0) break;
  }
}

}  // namespace

void SphereRule::build_product(int samples) {
  int m = static_cast<int>(std::lround(std::pow(0.5 * samples, 1.0 / (n_ - 1))));
  m = std::max(4, m + (m % 2));
  std::vector<Eigen::VectorXd> fine_nodes, coarse_nodes;
  std::vector<double> fine_w, coarse_w;
  product_rule(n_, m, fine_nodes, fine_w);
  product_rule(n_, m / 2, coarse_nodes, coarse_w);
  const int total = static_cast<int>(fine_nodes.size() + coarse_nodes.size());
  nodes_.resize(n_, total);
  weights_ = Eigen::VectorXd::Zero(total);
  coarse_ = Eigen::VectorXd::Zero(total);
  int k = 0;
  for (std::size_t i = 0; i < fine_nodes.size(); ++i, ++k) {
    nodes_.col(k) = fine_nodes[i];
    weights_(k) = fine_w[i];
  }
  for (std::size_t i = 0; i < coarse_nodes.size(); ++i, ++k) {
    nodes_.col(k) = coarse_nodes[i];
    coarse_(k) = coarse_w[i];
  }
}

std::shared_ptr<const SphereRule> SphereRule::get(int n, int samples, const IntegrationConfig& cfg,
                                                  std::uint64_t stream) {
  using Key = std::tuple<int, int, int, std::uint64_t, std::uint64_t, int, bool>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const SphereRule>> cache;
  const Key key{n, samples, static_cast<int>(cfg.method), cfg.seed, stream, cfg.replicates, cfg.antipodal};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const SphereRule>(n, samples, cfg.method, cfg.seed, stream, cfg.replicates,
                                                 cfg.antipodal);
  std::lock_guard<std::mutex> lock(mutex);
  if (cache.size() > 64) cache.clear();
  return cache.emplace(key, rule).first->second;
}

namespace {

ValueWithError reduce_structured(const Eigen::VectorXd& weights, const Eigen::VectorXd& coarse,
                                 const std::vector<int>& batch, int batches, const Eigen::VectorXd& values,
                                 double rel_tol) {
  ValueWithError r;
  r.value = weights.dot(values);
  r.samples_used = static_cast<long>(values.size());
  if (batches > 1) {
    std::vector<double> sums(batches, 0.0);
    for (Eigen::Index k = 0; k < values.size(); ++k) sums[batch[k]] += weights(k) * values(k);
    double ss = 0.0;
    for (double s : sums) {
      const double d = s * batches - r.value;
      ss += d * d;
    }
    r.std_error = std::sqrt(ss / (batches - 1) / batches);
  } else if (coarse.size() > 0) {
    r.std_error = std::abs(r.value - coarse.dot(values));
  }
  r.status = tolerance_status(r.value, r.std_error, rel_tol);
  return r;
}

template <typename F>
Eigen::VectorXd evaluate_nodes(const Eigen::MatrixXd& nodes, int batch_size, F&& fn) {
  const Eigen::Index m = nodes.cols();
  Eigen::VectorXd values(m);
  const std::size_t chunks = static_cast<std::size_t>((m + batch_size - 1) / batch_size);
  parallel_for(chunks, [&](std::size_t c) {
    const Eigen::Index begin = static_cast<Eigen::Index>(c) * batch_size;
    const Eigen::Index end = std::min<Eigen::Index>(m, begin + batch_size);
    Vec theta(nodes.rows());
    for (Eigen::Index k = begin; k < end; ++k) {
      theta = nodes.col(k);
      values(k) = fn(theta, k);
    }
  });
  return values;
}

}  // namespace

ValueWithError SphereRule::reduce(const Eigen::VectorXd& values, double rel_tol) const {
  return reduce_structured(weights_, coarse_, batch_, batches_, values, rel_tol);
}

ValueWithError SphereRule::integrate(const std::function<double(const Vec&)>& g, double rel_tol) const {
  const Eigen::VectorXd values = evaluate_nodes(nodes_, 4096, [&](const Vec& theta, Eigen::Index) { return g(theta); });
  return reduce(values, rel_tol);
}

ValueWithError sphere_integrate(const std::function<double(const Vec&)>& g, int n, const IntegrationConfig& cfg) {
  cfg.validate();
  return SphereRule::get(n, cfg.sphere_samples, cfg)->integrate(g, cfg.rel_tol_target);
}

ValueWithError volume(const StarBody& body, const IntegrationConfig& cfg) {
  cfg.validate();
  const int n = body.dim();
  const auto rule = SphereRule::get(n, cfg.sphere_samples, cfg);
  const Eigen::VectorXd values = evaluate_nodes(rule->nodes(), cfg.batch_size, [&](const Vec& theta, Eigen::Index) {
    return std::pow(body.radial(theta), n) / n;
  });
  return rule->reduce(values, cfg.rel_tol_target);
}

double ray_integral(const Density& f, const Vec& c, const Vec& u, double a, double b, double power, int nodes) {
  if (!(b > a)) return 0.0;
  if (const auto cv = f.constant_value()) {
    return *cv * (std::pow(b, power + 1.0) - std::pow(a, power + 1.0)) / (power + 1.0);
  }
  const auto& [gx, gw] = gauss_legendre(nodes);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double sum = 0.0;
  Vec x(c.size());
  for (int i = 0; i < nodes; ++i) {
    const double t = mid + half * gx[i];
    x = c + t * u;
    sum += gw[i] * std::pow(t, power) * f(x);
  }
  return half * sum;
}

ValueWithError body_integrate(const StarBody& body, const Density& f, const IntegrationConfig& cfg) {
  cfg.validate();
  const int n = body.dim();
  const auto rule = SphereRule::get(n, cfg.sphere_samples, cfg);
  const Vec origin = Vec::Zero(n);
  const Eigen::VectorXd values = evaluate_nodes(rule->nodes(), cfg.batch_size, [&](const Vec& theta, Eigen::Index) {
    return ray_integral(f, origin, theta, 0.0, body.radial(theta), n - 1, cfg.radial_nodes);
  });
  return rule->reduce(values, cfg.rel_tol_target);
}

ValueWithError body_integrate(const StarBody& body, const std::function<double(const Vec&)>& g,
                              const IntegrationConfig& cfg) {
  cfg.validate();
  const int n = body.dim();
  const auto rule = SphereRule::get(n, cfg.sphere_samples, cfg);
  const auto& [gx, gw] = gauss_legendre(cfg.radial_nodes);
  const Eigen::VectorXd values = evaluate_nodes(rule->nodes(), cfg.batch_size, [&](const Vec& theta, Eigen::Index) {
    const double r = body.radial(theta);
    double sum = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double t = 0.5 * r * (gx[i] + 1.0);
      sum += gw[i] * std::pow(t, n - 1) * g(t * theta);
    }
    return 0.5 * r * sum;
  });
  return rule->reduce(values, cfg.rel_tol_target);
}

// ---------------------------------------------------------------------------
// Moment kernel

PolarMomentKernel::PolarMomentKernel(const StarBody& body, const Density& f, double p, const IntegrationConfig& cfg)
    : n_(body.dim()), p_(p), rel_tol_(cfg.rel_tol_target) {
  cfg.validate();
  if (!(p > 0.0) || !std::isfinite(p)) throw InputError("moment: p must be positive and finite");
  const auto rule = SphereRule::get(n_, cfg.sphere_samples, cfg);
  const int m = rule->size();
  const Vec origin = Vec::Zero(n_);
  Eigen::MatrixXd radial(2, m);
  {
    const Eigen::VectorXd rp = evaluate_nodes(rule->nodes(), cfg.batch_size, [&](const Vec& theta, Eigen::Index k) {
      const double r = body.radial(theta);
      radial(1, k) = ray_integral(f, origin, theta, 0.0, r, n_ - 1, cfg.radial_nodes);
      return ray_integral(f, origin, theta, 0.0, r, n_ - 1 + p, cfg.radial_nodes);
    });
    radial.row(0) = rp.transpose();
  }
  const Eigen::VectorXd wp = rule->weights().cwiseProduct(radial.row(0).transpose());
  mass_ = rule->reduce(radial.row(1).transpose(), rel_tol_);

  const bool has_coarse = rule->coarse_weights().size() > 0;
  const Eigen::VectorXd cp =
      has_coarse ? Eigen::VectorXd(rule->coarse_weights().cwiseProduct(radial.row(0).transpose())) : Eigen::VectorXd();
  batches_ = rule->batches();
  if (rule->paired()) {
    const int h = m / 2;
    directions_ = rule->nodes().leftCols(h);
    weights_ = wp.head(h) + wp.tail(h);
    if (has_coarse) coarse_ = cp.head(h) + cp.tail(h);
    if (batches_ > 1) batch_.assign(rule->batch().begin(), rule->batch().begin() + h);
  } else {
    directions_ = rule->nodes();
    weights_ = wp;
    if (has_coarse) coarse_ = cp;
    if (batches_ > 1) batch_ = rule->batch();
  }
}

namespace {

void abs_power_inplace(Eigen::VectorXd& v, double p) {
  if (p == 1.0) {
    v = v.cwiseAbs();
  } else if (p == 2.0) {
    v = v.cwiseAbs2();
  } else if (p == std::floor(p) && p <= 16.0) {
    const int k = static_cast<int>(p);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double a = std::abs(v(i));
      double r = 1.0;
      for (int j = 0; j < k; ++j) r *= a;
      v(i) = r;
    }
  } else {
    v = v.cwiseAbs().array().pow(p).matrix();
  }
}

}  // namespace

double PolarMomentKernel::moment_value(const Vec& xi) const {
  require_dim(xi, n_, "moment direction");
  Eigen::VectorXd dots = directions_.transpose() * Eigen::VectorXd(xi);
  abs_power_inplace(dots, p_);
  return weights_.dot(dots);
}

ValueWithError PolarMomentKernel::moment(const Vec& xi) const {
  require_dim(xi, n_, "moment direction");
  Eigen::VectorXd dots = directions_.transpose() * Eigen::VectorXd(xi);
  abs_power_inplace(dots, p_);
  return reduce(dots);
}

ValueWithError PolarMomentKernel::reduce(const Eigen::VectorXd& terms) const {
  return reduce_structured(weights_, coarse_, batch_, batches_, terms, rel_tol_);
}

// ---------------------------------------------------------------------------
// Sections

SectionProfile::SectionProfile(const StarBody& body, const Density& f, const Vec& xi, const IntegrationConfig& cfg,
                               bool central_only)
    : body_(body), f_(f), cfg_(cfg), n_(body.dim()), central_only_(central_only) {
  cfg.validate();
  require_dim(xi, n_, "section direction");
  const double norm = xi.norm();
  if (std::abs(norm - 1.0) > 1e-6) throw InputError("section direction must be a unit vector");
  xi_ = xi / norm;
  even_ = body.symmetric() && f.even();
  h_plus_ = h_minus_ = body.bounding_radius();
  if (n_ == 1) {
    h_plus_ = body.radial(xi_);
    h_minus_ = body.radial(Vec(-xi_));
    return;
  }
  basis_ = orthogonal_complement(xi_);
  rule_ = SphereRule::get(n_ - 1, cfg.section_samples, cfg, 0x5ec7);
  in_plane_ = Eigen::MatrixXd(basis_) * rule_->nodes();
  if (central_only_) return;

  // Support points: boundary points maximizing (x, +-xi). Any such point scaled
  // by s / h lies in the slice at offset s.
  auto support = [&](const Vec& dir, Vec& point) {
    SphereSearchOptions opt;
    opt.axis_starts = true;
    opt.random_starts = 0;
    opt.extra_starts = {dir};
    opt.local_searches = 2;
    opt.max_evals = 60 * n_;
    opt.step_tol = 1e-9;
    opt.initial_step = 0.2;
    const auto best = maximize_on_sphere([&](const Vec& theta) { return body_.radial(theta) * theta.dot(dir); },
                                         n_, opt);
    point = body_.radial(best.direction) * best.direction;
    return point.dot(dir);
  };
  h_plus_ = support(xi_, p_plus_);
  if (body.symmetric()) {
    p_minus_ = -p_plus_;
    h_minus_ = h_plus_;
  } else {
    h_minus_ = support(Vec(-xi_), p_minus_);
  }
}

ValueWithError SectionProfile::polar_section(const Vec& center) const {
  const Eigen::VectorXd values =
      evaluate_nodes(in_plane_, cfg_.batch_size, [&](const Vec& u, Eigen::Index) {
        const double b = body_.ray_exit(center, u);
        return ray_integral(f_, center, u, 0.0, b, n_ - 2, cfg_.radial_nodes);
      });
  return rule_->reduce(values, cfg_.rel_tol_target);
}

ValueWithError SectionProfile::indicator_section(double s) const {
  const double r = body_.bounding_radius();
  const int dims = n_ - 1;
  const long samples = std::max<long>(cfg_.replicates, cfg_.mc_samples);
  const auto box = scrambled_sobol_cached(dims, static_cast<int>(std::min<long>(samples, 1L << 24)),
                                          stream_seed(cfg_.seed, 0xb0c5));
  const Eigen::Index m = box->cols();
  const Eigen::MatrixXd points = Eigen::MatrixXd(basis_) * ((2.0 * (*box)).array() - 1.0).matrix() * r;
  const Vec center = s * xi_;
  const Eigen::VectorXd values = evaluate_nodes(points, cfg_.batch_size, [&](const Vec& y, Eigen::Index) {
    const Vec x = center + y;
    return body_.gauge(x) <= 1.0 ? f_(x) : 0.0;
  });
  const int batches = std::min<int>(cfg_.replicates, static_cast<int>(m));
  std::vector<int> batch(m);
  for (Eigen::Index k = 0; k < m; ++k) batch[k] = static_cast<int>(std::min<Eigen::Index>(batches - 1, k * batches / m));
  const double cell = std::pow(2.0 * r, dims) / static_cast<double>(m);
  const Eigen::VectorXd weights = Eigen::VectorXd::Constant(m, cell);
  return reduce_structured(weights, Eigen::VectorXd(), batch, batches, values, cfg_.rel_tol_target);
}

ValueWithError SectionProfile::operator()(double s) const {
  if (!std::isfinite(s)) throw InputError("section offset must be finite");
  ValueWithError zero;
  zero.samples_used = 0;
  if (n_ == 1) {
    const Vec x = s * xi_;
    ValueWithError r;
    r.value = body_.gauge(x) <= 1.0 ? f_(x) : 0.0;
    r.samples_used = 1;
    return r;
  }
  if (std::abs(s) > body_.bounding_radius()) return zero;
  if (s == 0.0) return polar_section(Vec::Zero(n_));
  if (central_only_) throw std::logic_error("SectionProfile built for central sections only");
  if (s > h_plus_ || -s > h_minus_) return zero;
  if (!body_.convex()) return indicator_section(s);
  const Vec c = s * xi_;
  if (body_.gauge(c) <= 1.0) return polar_section(c);
  return polar_section(s > 0.0 ? Vec((s / h_plus_) * p_plus_) : Vec((-s / h_minus_) * p_minus_));
}

ValueWithError section_integrate(const StarBody& body, const Density& f, const Vec& xi, double s,
                                 const IntegrationConfig& cfg) {
  return SectionProfile(body, f, xi, cfg, s == 0.0)(s);
}

SectionSup section_sup(const SectionProfile& profile, const IntegrationConfig& cfg) {
  const double hi = profile.support_plus();
  const double lo = profile.even() ? 0.0 : -profile.support_minus();
  const int points = profile.even() ? (cfg.section_grid + 1) / 2 : cfg.section_grid;
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = lo + (hi - lo) * i / (points - 1);
  if (!profile.even()) {
    // Always include the central offset.
    auto it = std::min_element(grid.begin(), grid.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    *it = 0.0;
  }
  std::vector<ValueWithError> values(points);
  parallel_for(points, [&](std::size_t i) { values[i] = profile(grid[i]); });

  SectionSup best;
  best.evaluations = points;
  int arg = 0;
  for (int i = 1; i < points; ++i)
    if (values[i].value > values[arg].value) arg = i;
  best.offset = grid[arg];
  best.value = values[arg];

  double a = grid[std::max(0, arg - 1)];
  double b = grid[std::min(points - 1, arg + 1)];
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - golden * (b - a);
  double x2 = a + golden * (b - a);
  ValueWithError f1 = profile(x1), f2 = profile(x2);
  best.evaluations += 2;
  auto consider = [&](double x, const ValueWithError& v) {
    if (v.value > best.value.value) {
      best.offset = x;
      best.value = v;
    }
  };
  consider(x1, f1);
  consider(x2, f2);
  for (int it = 0; it < cfg.golden_iterations; ++it) {
    if (f1.value >= f2.value) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - golden * (b - a);
      f1 = profile(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + golden * (b - a);
      f2 = profile(x2);
      consider(x2, f2);
    }
    ++best.evaluations;
  }
  return best;
}

ProfileG::ProfileG(const StarBody& body, const Density& f, const Vec& xi, const IntegrationConfig& cfg)
    : profile_(body, f, xi, cfg), sup_(section_sup(profile_, cfg)) {
  if (!(sup_.value.value > 0.0)) throw DegenerateError("profile_g: all sections vanish (zero density mass)");
}

double ProfileG::operator()(double t) const {
  // The supremum is a grid estimate; values above it are clipped.
  return std::clamp(profile_(t).value / sup_.value.value, 0.0, 1.0);
}

}  // namespace slicelab
