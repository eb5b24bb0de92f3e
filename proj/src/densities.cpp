#include "slicelab/densities.hpp"

#include "slicelab/special.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace slicelab {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

void reject_unknown(const nlohmann::json& spec, const std::set<std::string>& allowed, const std::string& what) {
  for (const auto& [key, value] : spec.items()) {
    if (!allowed.count(key)) throw InputError(what + ": unknown field '" + key + "'");
  }
}

double number(const nlohmann::json& spec, const char* key, const std::string& what) {
  if (!spec.contains(key)) throw InputError(what + ": missing field '" + key + "'");
  if (!spec.at(key).is_number()) throw InputError(what + ": field '" + key + "' must be a number");
  return spec.at(key).get<double>();
}

}  // namespace

std::string to_string(DensityFamily family) {
  switch (family) {
    case DensityFamily::constant: return "constant";
    case DensityFamily::gaussian: return "gaussian";
    case DensityFamily::radial_power: return "radial_power";
    case DensityFamily::exp_l1: return "exp_l1";
    case DensityFamily::mixture: return "mixture";
    case DensityFamily::custom: return "custom";
  }
  return "custom";
}

Density Density::constant(double c) {
  require(c >= 0.0 && std::isfinite(c), "constant density: c must be nonnegative");
  Density d;
  d.family_ = DensityFamily::constant;
  d.param_ = c;
  return d;
}

Density Density::gaussian(double sigma) {
  require(sigma > 0.0 && std::isfinite(sigma), "gaussian density: sigma must be positive");
  Density d;
  d.family_ = DensityFamily::gaussian;
  d.param_ = sigma;
  return d;
}

Density Density::radial_power(double alpha) {
  require(alpha >= 0.0 && std::isfinite(alpha), "radial_power density: alpha must be >= 0");
  Density d;
  d.family_ = DensityFamily::radial_power;
  d.param_ = alpha;
  return d;
}

Density Density::exp_l1(double sigma) {
  require(sigma > 0.0 && std::isfinite(sigma), "exp_l1 density: sigma must be positive");
  Density d;
  d.family_ = DensityFamily::exp_l1;
  d.param_ = sigma;
  return d;
}

Density Density::mixture(std::vector<Density> parts, std::vector<double> weights) {
  require(!parts.empty(), "mixture density: needs at least one part");
  require(parts.size() == weights.size(), "mixture density: parts and weights differ in length");
  double total = 0.0;
  for (double w : weights) {
    require(w >= 0.0 && std::isfinite(w), "mixture density: negative weight");
    total += w;
  }
  require(total > 0.0, "mixture density: weights sum to zero");
  Density d;
  d.family_ = DensityFamily::mixture;
  d.even_ = true;
  for (auto& part : parts) {
    d.even_ = d.even_ && part.even();
    if (part.dim() != 0) {
      require(d.dim_ == 0 || d.dim_ == part.dim(), "mixture density: parts have different dimensions");
      d.dim_ = part.dim();
    }
  }
  for (double& w : weights) w /= total;
  d.parts_ = std::move(parts);
  d.weights_ = std::move(weights);
  return d;
}

Density Density::custom(int n, DensityFn fn, bool even, int even_check_pairs) {
  require(static_cast<bool>(fn), "custom density: evaluator is empty");
  require(n >= 1 && n <= kMaxDim, "custom density: bad dimension");
  Density d;
  d.family_ = DensityFamily::custom;
  d.dim_ = n;
  d.even_ = even;
  d.custom_ = std::make_shared<const DensityFn>(std::move(fn));
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < even_check_pairs; ++k) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = normal(rng);
    const double a = d(x);
    require(a >= 0.0, "custom density: negative value at a probe point");
    if (even) {
      const double b = d(-x);
      require(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)), "custom density: claimed even but f(x) != f(-x)");
    }
  }
  return d;
}

double Density::operator()(const Vec& x) const {
  if (dim_ != 0) require_dim(x, dim_, "density");
  switch (family_) {
    case DensityFamily::constant: return param_;
    case DensityFamily::gaussian: return std::exp(-x.squaredNorm() / (2.0 * param_ * param_));
    case DensityFamily::radial_power: {
      if (param_ == 0.0) return 1.0;
      const double r2 = x.squaredNorm();
      if (param_ == 2.0) return r2;
      return std::pow(r2, 0.5 * param_);
    }
    case DensityFamily::exp_l1: return std::exp(-x.lpNorm<1>() / param_);
    case DensityFamily::mixture: {
      double sum = 0.0;
      for (std::size_t i = 0; i < parts_.size(); ++i) sum += weights_[i] * parts_[i](x);
      return sum;
    }
    case DensityFamily::custom: return (*custom_)(x);
  }
  return 0.0;
}

std::optional<double> Density::constant_value() const {
  if (family_ == DensityFamily::constant) return param_;
  if (family_ == DensityFamily::radial_power && param_ == 0.0) return 1.0;
  return std::nullopt;
}

Density Density::dilated(double lambda) const {
  require(lambda > 0.0 && std::isfinite(lambda), "dilated: factor must be positive");
  switch (family_) {
    case DensityFamily::constant: return *this;
    case DensityFamily::gaussian: return gaussian(param_ * lambda);
    case DensityFamily::exp_l1: return exp_l1(param_ * lambda);
    case DensityFamily::mixture: {
      std::vector<Density> parts;
      for (const auto& p : parts_) parts.push_back(p.dilated(lambda));
      return mixture(std::move(parts), weights_);
    }
    default: break;
  }
  Density self = *this;
  Density d;
  d.family_ = DensityFamily::custom;
  d.dim_ = dim_;
  d.even_ = even_;
  d.custom_ = std::make_shared<const DensityFn>([self, lambda](const Vec& x) { return self(x / lambda); });
  return d;
}

nlohmann::json Density::to_json() const {
  switch (family_) {
    case DensityFamily::constant: return {{"type", "constant"}, {"c", param_}};
    case DensityFamily::gaussian: return {{"type", "gaussian"}, {"sigma", param_}};
    case DensityFamily::radial_power: return {{"type", "radial_power"}, {"alpha", param_}};
    case DensityFamily::exp_l1: return {{"type", "exp_l1"}, {"sigma", param_}};
    case DensityFamily::mixture: {
      nlohmann::json parts = nlohmann::json::array();
      for (const auto& p : parts_) parts.push_back(p.to_json());
      return {{"type", "mixture"}, {"parts", parts}, {"weights", weights_}};
    }
    case DensityFamily::custom: break;
  }
  throw InputError("custom densities have no JSON representation");
}

Density Density::from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw InputError("density spec must be a JSON object");
  if (!spec.contains("type") || !spec.at("type").is_string()) throw InputError("density spec: missing 'type'");
  const auto type = spec.at("type").get<std::string>();
  if (type == "constant") {
    reject_unknown(spec, {"type", "c"}, "constant density spec");
    return constant(spec.contains("c") ? number(spec, "c", "constant density spec") : 1.0);
  }
  if (type == "gaussian") {
    reject_unknown(spec, {"type", "sigma"}, "gaussian density spec");
    return gaussian(number(spec, "sigma", "gaussian density spec"));
  }
  if (type == "radial_power") {
    reject_unknown(spec, {"type", "alpha"}, "radial_power density spec");
    return radial_power(number(spec, "alpha", "radial_power density spec"));
  }
  if (type == "exp_l1") {
    reject_unknown(spec, {"type", "sigma"}, "exp_l1 density spec");
    return exp_l1(number(spec, "sigma", "exp_l1 density spec"));
  }
  if (type == "mixture") {
    reject_unknown(spec, {"type", "parts", "weights"}, "mixture density spec");
    if (!spec.contains("parts") || !spec.at("parts").is_array())
      throw InputError("mixture density spec: 'parts' must be an array");
    if (!spec.contains("weights") || !spec.at("weights").is_array())
      throw InputError("mixture density spec: 'weights' must be an array");
    std::vector<Density> parts;
    for (const auto& p : spec.at("parts")) parts.push_back(from_json(p));
    std::vector<double> weights;
    for (const auto& w : spec.at("weights")) {
      if (!w.is_number()) throw InputError("mixture density spec: weights must be numbers");
      weights.push_back(w.get<double>());
    }
    return mixture(std::move(parts), std::move(weights));
  }
  throw InputError("density spec: unknown type '" + type + "'");
}

DirectionMeasure::DirectionMeasure(int n, std::vector<Atom> atoms, double uniform_weight,
                                   std::optional<Mat> linear_map)
    : n_(n), atoms_(std::move(atoms)), uniform_weight_(uniform_weight), linear_map_(std::move(linear_map)) {
  require(n >= 1 && n <= kMaxDim, "direction measure: bad dimension");
  require(uniform_weight >= 0.0 && std::isfinite(uniform_weight), "direction measure: uniform weight must be >= 0");
  for (const auto& a : atoms_) {
    require_dim(a.direction, n, "direction measure atom");
    require(a.weight > 0.0 && std::isfinite(a.weight), "direction measure: atom weights must be positive");
    require(std::abs(a.direction.norm() - 1.0) <= 1e-12, "direction measure: atom directions must be unit vectors");
  }
  if (linear_map_) {
    require(linear_map_->rows() == n && linear_map_->cols() == n, "direction measure: linear map must be n x n");
  }
  require(total_mass() > 0.0, "direction measure: total mass must be positive");
}

double DirectionMeasure::total_mass() const {
  double mass = uniform_weight_ * sphere_area(n_);
  for (const auto& a : atoms_) mass += a.weight;
  return mass;
}

double DirectionMeasure::gauge(double p, const Vec& x) const {
  require(p > 0.0, "gauge_from_measure: p must be positive");
  require_dim(x, n_, "gauge_from_measure");
  const Vec y = linear_map_ ? Vec(*linear_map_ * x) : x;
  double sum = 0.0;
  for (const auto& a : atoms_) sum += a.weight * std::pow(std::abs(y.dot(a.direction)), p);
  if (uniform_weight_ > 0.0) sum += uniform_weight_ * std::pow(y.norm(), p) / spherical_constant(n_, p);
  return std::pow(sum, 1.0 / p);
}

double gauge_from_measure(const DirectionMeasure& measure, double p, const Vec& x) { return measure.gauge(p, x); }

DirectionMeasure lp_ball_measure(int n, double p) {
  require(p >= 1.0, "lp_ball_measure: p must be >= 1");
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) {
    atoms.push_back({axis(n, i), 0.5});
    atoms.push_back({-axis(n, i), 0.5});
  }
  return DirectionMeasure(n, std::move(atoms), 0.0);
}

DirectionMeasure euclidean_ball_measure(int n, double p) {
  require(p >= 1.0, "euclidean_ball_measure: p must be >= 1");
  require(n >= 2, "euclidean_ball_measure: n must be >= 2");
  return DirectionMeasure(n, {}, spherical_constant(n, p));
}

DirectionMeasure ellipsoid_measure(const std::vector<double>& axes, double p) {
  const int n = static_cast<int>(axes.size());
  require(n >= 2, "ellipsoid_measure: n must be >= 2");
  Mat map = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    require(axes[i] > 0.0, "ellipsoid_measure: axes must be positive");
    map(i, i) = 1.0 / axes[i];
  }
  return DirectionMeasure(n, {}, spherical_constant(n, p), map);
}

}  // namespace slicelab
