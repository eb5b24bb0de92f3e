#include "slicelab/bodies.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace slicelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

void require_n(int n) {
  require(n >= 1 && n <= kMaxDim,
          "dimension must be in [1, " + std::to_string(kMaxDim) + "], got " + std::to_string(n));
}

double lq_norm(const Vec& y, double q) {
  if (q == 1.0) return y.lpNorm<1>();
  if (q == 2.0) return y.norm();
  const double m = y.lpNorm<Eigen::Infinity>();
  if (m == 0.0) return 0.0;
  double sum = 0.0;
  for (int i = 0; i < y.size(); ++i) sum += std::pow(std::abs(y(i)) / m, q);
  return m * std::pow(sum, 1.0 / q);
}

// Interval {t : |c + t u| <= 1} for the unit Euclidean ball; solved as a quadratic.
double ball_exit(const Vec& c, const Vec& u) {
  const double a = u.squaredNorm();
  const double b = c.dot(u);
  const double cc = c.squaredNorm() - 1.0;
  if (a == 0.0) return kInf;
  const double disc = std::max(0.0, b * b - a * cc);
  // Larger root of a t^2 + 2 b t + cc = 0, computed without cancellation.
  const double sq = std::sqrt(disc);
  if (b >= 0.0) {
    const double denom = b + sq;
    return denom > 0.0 ? -cc / denom : 0.0;
  }
  return (sq - b) / a;
}

}  // namespace

std::string to_string(BodyFamily family) {
  switch (family) {
    case BodyFamily::lq_ball: return "lq_ball";
    case BodyFamily::cube: return "cube";
    case BodyFamily::cross_polytope: return "cross_polytope";
    case BodyFamily::ellipsoid: return "ellipsoid";
    case BodyFamily::custom: return "custom";
  }
  return "custom";
}

double unit_ball_volume(int n) {
  return std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0));
}

double lq_ball_volume(int n, double q) {
  if (std::isinf(q)) return std::pow(2.0, n);
  return std::exp(n * (std::log(2.0) + std::lgamma(1.0 / q + 1.0)) - std::lgamma(n / q + 1.0));
}

StarBody StarBody::lq_ball(int n, double q, double scale) {
  require_n(n);
  require(q > 0.0, "lq_ball: q must be positive");
  require(scale > 0.0 && std::isfinite(scale), "lq_ball: scale must be positive");
  if (std::isinf(q)) return cube(n, scale);
  StarBody b;
  b.n_ = n;
  b.family_ = BodyFamily::lq_ball;
  b.q_ = q;
  b.scale_ = scale;
  b.convex_ = q >= 1.0;
  b.bounding_radius_ = q >= 2.0 ? scale * std::pow(n, 0.5 - 1.0 / q) : scale;
  b.exact_volume_ = lq_ball_volume(n, q) * std::pow(scale, n);
  return b;
}

StarBody StarBody::euclidean_ball(int n, double radius) { return lq_ball(n, 2.0, radius); }

StarBody StarBody::cube(int n, double half_side) {
  require_n(n);
  require(half_side > 0.0 && std::isfinite(half_side), "cube: half_side must be positive");
  StarBody b;
  b.n_ = n;
  b.family_ = BodyFamily::cube;
  b.q_ = kInf;
  b.scale_ = half_side;
  b.bounding_radius_ = half_side * std::sqrt(static_cast<double>(n));
  b.exact_volume_ = std::pow(2.0 * half_side, n);
  return b;
}

StarBody StarBody::cross_polytope(int n, double scale) {
  require_n(n);
  require(scale > 0.0 && std::isfinite(scale), "cross_polytope: scale must be positive");
  StarBody b;
  b.n_ = n;
  b.family_ = BodyFamily::cross_polytope;
  b.q_ = 1.0;
  b.scale_ = scale;
  b.bounding_radius_ = scale;
  b.exact_volume_ = std::exp(n * std::log(2.0 * scale) - std::lgamma(n + 1.0));
  return b;
}

StarBody StarBody::ellipsoid(std::vector<double> axes) {
  require_n(static_cast<int>(axes.size()));
  for (double a : axes) require(a > 0.0 && std::isfinite(a), "ellipsoid: axis lengths must be positive");
  StarBody b;
  b.n_ = static_cast<int>(axes.size());
  b.family_ = BodyFamily::ellipsoid;
  b.q_ = 2.0;
  b.bounding_radius_ = *std::max_element(axes.begin(), axes.end());
  double vol = unit_ball_volume(b.n_);
  for (double a : axes) vol *= a;
  b.exact_volume_ = vol;
  b.axes_ = std::move(axes);
  return b;
}

StarBody StarBody::custom(int n, GaugeFn gauge, double bounding_radius, CustomBodyOptions options) {
  require_n(n);
  require(static_cast<bool>(gauge), "custom body: gauge evaluator is empty");
  require(bounding_radius > 0.0 && std::isfinite(bounding_radius),
          "custom body: bounding_radius is mandatory and must be positive");
  StarBody b;
  b.n_ = n;
  b.family_ = BodyFamily::custom;
  b.symmetric_ = options.symmetric;
  b.convex_ = options.convex;
  b.bounding_radius_ = bounding_radius;
  b.custom_ = std::make_shared<const GaugeFn>(std::move(gauge));
  b.probe_custom(options);
  return b;
}

void StarBody::probe_custom(const CustomBodyOptions& options) {
  std::mt19937_64 rng(options.check_seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.1, 4.0);
  int homogeneity_failures = 0;
  int symmetry_failures = 0;
  int radius_failures = 0;
  for (int k = 0; k < options.check_samples; ++k) {
    Vec x(n_);
    for (int i = 0; i < n_; ++i) x(i) = normal(rng);
    const double lambda = uniform(rng);
    const double g = gauge(x);
    const double gl = gauge(lambda * x);
    if (!(std::abs(gl - lambda * g) <= 1e-9 * (1.0 + lambda * g))) ++homogeneity_failures;
    if (symmetric_ && !(std::abs(gauge(-x) - g) <= 1e-9 * (1.0 + g))) ++symmetry_failures;
    if (g > 0.0 && std::isfinite(g) && x.norm() / g > bounding_radius_ * (1.0 + 1e-9)) ++radius_failures;
  }
  if (homogeneity_failures > 0)
    warnings_.push_back("gauge failed positive homogeneity on " + std::to_string(homogeneity_failures) +
                        " probes");
  if (symmetry_failures > 0)
    warnings_.push_back("gauge failed symmetry on " + std::to_string(symmetry_failures) + " probes");
  if (radius_failures > 0)
    warnings_.push_back("body exceeds bounding_radius on " + std::to_string(radius_failures) + " probes");
}

double StarBody::family_gauge(const Vec& y) const {
  switch (family_) {
    case BodyFamily::lq_ball: return lq_norm(y, q_) / scale_;
    case BodyFamily::cube: return y.lpNorm<Eigen::Infinity>() / scale_;
    case BodyFamily::cross_polytope: return y.lpNorm<1>() / scale_;
    case BodyFamily::ellipsoid: {
      double sum = 0.0;
      for (int i = 0; i < n_; ++i) {
        const double t = y(i) / axes_[i];
        sum += t * t;
      }
      return std::sqrt(sum);
    }
    case BodyFamily::custom: {
      const double g = (*custom_)(y);
      if (std::isnan(g) || g < 0.0) throw DegenerateError("custom gauge returned a negative or NaN value");
      return g;
    }
  }
  return kInf;
}

double StarBody::gauge(const Vec& x) const {
  require_dim(x, n_, "gauge");
  if (map_) return family_gauge(*inverse_map_ * x);
  return family_gauge(x);
}

double StarBody::radial(const Vec& theta) const {
  require_dim(theta, n_, "radial");
  const double g = gauge(theta);
  if (!(g > 0.0)) throw DegenerateError("zero gauge on a direction: body is unbounded");
  return 1.0 / g;
}

bool StarBody::contains(const Vec& x, double tol) const {
  if (tol < 0.0) throw InputError("contains: tolerance must be nonnegative");
  return gauge(x) <= 1.0 + tol;
}

namespace {

// sup{t >= 0 : |c + t u|_1 <= s}. The l1 norm is piecewise linear along the
// ray, so walking its breakpoints gives the exact crossing.
double l1_exit(const Vec& c, const Vec& u, double s) {
  auto phi = [&](double t) { return (c + t * u).lpNorm<1>() - s; };
  double t0 = 0.0, f0 = phi(0.0);
  if (f0 >= 0.0) return 0.0;
  std::vector<double> breaks;
  for (int i = 0; i < c.size(); ++i) {
    if (u(i) != 0.0) {
      const double t = -c(i) / u(i);
      if (t > 0.0) breaks.push_back(t);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  for (double t1 : breaks) {
    const double f1 = phi(t1);
    if (f1 >= 0.0) return t0 + (t1 - t0) * (-f0) / (f1 - f0);
    t0 = t1;
    f0 = f1;
  }
  const double slope = u.lpNorm<1>();
  return slope > 0.0 ? t0 - f0 / slope : kInf;
}

}  // namespace

double StarBody::family_ray_exit(const Vec& c, const Vec& u) const {
  switch (family_) {
    case BodyFamily::ellipsoid: {
      Vec cs(n_), us(n_);
      for (int i = 0; i < n_; ++i) {
        cs(i) = c(i) / axes_[i];
        us(i) = u(i) / axes_[i];
      }
      return ball_exit(cs, us);
    }
    case BodyFamily::lq_ball:
      if (q_ == 2.0) return ball_exit(c / scale_, u / scale_);
      if (q_ == 1.0) return l1_exit(c, u, scale_);
      break;
    case BodyFamily::cross_polytope: return l1_exit(c, u, scale_);
    case BodyFamily::cube: {
      double t = kInf;
      for (int i = 0; i < n_; ++i) {
        if (u(i) > 0.0) t = std::min(t, (scale_ - c(i)) / u(i));
        else if (u(i) < 0.0) t = std::min(t, (-scale_ - c(i)) / u(i));
      }
      return std::max(0.0, t);
    }
    default: break;
  }
  return numeric_ray_exit(c, u);
}

double StarBody::numeric_ray_exit(const Vec& c, const Vec& u) const {
  // Homogeneous shortcut: from the origin the exit is exactly the radial value.
  if (c.squaredNorm() == 0.0) {
    const double g = family_gauge(u);
    return g > 0.0 ? 1.0 / g : kInf;
  }
  const double unorm = u.norm();
  if (unorm == 0.0) return kInf;
  // Beyond this parameter |c + t u| exceeds the bounding radius.
  double hi = (bounding_radius_ * 1.000001 + c.norm()) / unorm;
  auto phi = [&](double t) { return family_gauge(c + t * u) - 1.0; };
  const double f0 = phi(0.0);
  if (f0 >= 0.0) return 0.0;
  double fhi = phi(hi);
  while (fhi <= 0.0 && hi < 1e12) {
    hi *= 2.0;
    fhi = phi(hi);
  }
  if (fhi <= 0.0) return kInf;
  std::uintmax_t max_iter = 100;
  const auto r = boost::math::tools::toms748_solve(phi, 0.0, hi, f0, fhi,
                                                   boost::math::tools::eps_tolerance<double>(48), max_iter);
  return 0.5 * (r.first + r.second);
}

double StarBody::ray_exit(const Vec& c, const Vec& u) const {
  require_dim(c, n_, "ray_exit");
  require_dim(u, n_, "ray_exit");
  if (map_) return family_ray_exit(*inverse_map_ * c, *inverse_map_ * u);
  return family_ray_exit(c, u);
}

StarBody StarBody::scaled(double lambda) const {
  require(lambda > 0.0 && std::isfinite(lambda), "scaled: factor must be positive");
  if (map_) return linear_image(Mat::Identity(n_, n_) * lambda);
  StarBody b = *this;
  switch (family_) {
    case BodyFamily::lq_ball:
    case BodyFamily::cube:
    case BodyFamily::cross_polytope: b.scale_ *= lambda; break;
    case BodyFamily::ellipsoid:
      for (double& a : b.axes_) a *= lambda;
      break;
    case BodyFamily::custom: {
      auto inner = custom_;
      b.custom_ = std::make_shared<const GaugeFn>([inner, lambda](const Vec& x) { return (*inner)(x) / lambda; });
      break;
    }
  }
  b.bounding_radius_ *= lambda;
  if (b.exact_volume_) *b.exact_volume_ *= std::pow(lambda, n_);
  return b;
}

StarBody StarBody::linear_image(const Mat& map) const {
  require(map.rows() == n_ && map.cols() == n_, "linear_image: map must be n x n");
  const double det = map.determinant();
  require(std::abs(det) > 1e-300 && std::isfinite(det), "linear_image: map must be invertible");
  StarBody b = *this;
  Mat total = map_ ? Mat(map * *map_) : map;
  b.map_ = std::make_shared<const Mat>(total);
  b.inverse_map_ = std::make_shared<const Mat>(total.inverse());
  b.bounding_radius_ = bounding_radius_ * Eigen::JacobiSVD<Mat>(map).singularValues()(0);
  if (b.exact_volume_) *b.exact_volume_ *= std::abs(det);
  // A linear image of a symmetric body stays symmetric; convexity is preserved.
  return b;
}

nlohmann::json StarBody::to_json() const {
  nlohmann::json j;
  switch (family_) {
    case BodyFamily::lq_ball: j = {{"type", "lq_ball"}, {"n", n_}, {"q", q_}, {"scale", scale_}}; break;
    case BodyFamily::cube: j = {{"type", "cube"}, {"n", n_}, {"half_side", scale_}}; break;
    case BodyFamily::cross_polytope: j = {{"type", "cross_polytope"}, {"n", n_}, {"scale", scale_}}; break;
    case BodyFamily::ellipsoid: j = {{"type", "ellipsoid"}, {"axes", axes_}}; break;
    case BodyFamily::custom: throw InputError("custom bodies have no JSON representation");
  }
  if (map_) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < n_; ++i) {
      std::vector<double> row(n_);
      for (int k = 0; k < n_; ++k) row[k] = (*map_)(i, k);
      rows.push_back(row);
    }
    j["linear_map"] = rows;
  }
  return j;
}

namespace {

void reject_unknown(const nlohmann::json& spec, const std::set<std::string>& allowed, const std::string& what) {
  for (const auto& [key, value] : spec.items()) {
    if (!allowed.count(key)) throw InputError(what + ": unknown field '" + key + "'");
  }
}

template <typename T>
T field(const nlohmann::json& spec, const char* key, const std::string& what) {
  if (!spec.contains(key)) throw InputError(what + ": missing field '" + key + "'");
  try {
    return spec.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(what + ": field '" + key + "' has the wrong type");
  }
}

double number_field(const nlohmann::json& spec, const char* key, const std::string& what) {
  if (!spec.contains(key)) throw InputError(what + ": missing field '" + key + "'");
  const auto& v = spec.at(key);
  if (v.is_string() && (v == "inf" || v == "infinity")) return kInf;
  if (!v.is_number()) throw InputError(what + ": field '" + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

StarBody StarBody::from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw InputError("body spec must be a JSON object");
  const auto type = field<std::string>(spec, "type", "body spec");
  StarBody body;
  if (type == "lq_ball") {
    reject_unknown(spec, {"type", "n", "q", "scale", "linear_map"}, "lq_ball spec");
    const double scale = spec.contains("scale") ? number_field(spec, "scale", "lq_ball spec") : 1.0;
    body = lq_ball(field<int>(spec, "n", "lq_ball spec"), number_field(spec, "q", "lq_ball spec"), scale);
  } else if (type == "cube") {
    reject_unknown(spec, {"type", "n", "half_side", "linear_map"}, "cube spec");
    const double h = spec.contains("half_side") ? number_field(spec, "half_side", "cube spec") : 1.0;
    body = cube(field<int>(spec, "n", "cube spec"), h);
  } else if (type == "cross_polytope") {
    reject_unknown(spec, {"type", "n", "scale", "linear_map"}, "cross_polytope spec");
    const double scale = spec.contains("scale") ? number_field(spec, "scale", "cross_polytope spec") : 1.0;
    body = cross_polytope(field<int>(spec, "n", "cross_polytope spec"), scale);
  } else if (type == "ellipsoid") {
    reject_unknown(spec, {"type", "axes", "linear_map"}, "ellipsoid spec");
    body = ellipsoid(field<std::vector<double>>(spec, "axes", "ellipsoid spec"));
  } else {
    throw InputError("body spec: unknown type '" + type + "'");
  }
  if (spec.contains("linear_map")) {
    const auto rows = field<std::vector<std::vector<double>>>(spec, "linear_map", "body spec");
    const int n = body.dim();
    if (static_cast<int>(rows.size()) != n) throw InputError("body spec: linear_map must be n x n");
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) throw InputError("body spec: linear_map must be n x n");
      for (int k = 0; k < n; ++k) m(i, k) = rows[i][k];
    }
    body = body.linear_image(m);
  }
  return body;
}

}  // namespace slicelab
