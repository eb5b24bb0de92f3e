#include "slicelab/sphere_search.hpp"

#include "slicelab/parallel.hpp"
#include "slicelab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace slicelab {

Mat orthogonal_complement(const Vec& xi) {
  const int n = static_cast<int>(xi.size());
  Mat a(n, 1);
  a.col(0) = xi;
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  return q.rightCols(n - 1);
}

bool lexicographically_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

namespace {

struct LocalResult {
  Vec direction;
  double value = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

// One Nelder-Mead run in the tangent chart y -> normalize(x0 + B y).
LocalResult nelder_mead(const std::function<double(const Vec&)>& objective, const Vec& x0, double x0_value,
                        double step, const SphereSearchOptions& options, int budget) {
  const int n = static_cast<int>(x0.size());
  const int d = n - 1;
  const Mat basis = orthogonal_complement(x0);
  int evals = 0;
  auto chart = [&](const Eigen::VectorXd& y) -> Vec {
    Vec x = x0 + basis * y;
    return x / x.norm();
  };
  auto eval = [&](const Eigen::VectorXd& y) {
    ++evals;
    return objective(chart(y));
  };

  std::vector<Eigen::VectorXd> simplex(d + 1, Eigen::VectorXd::Zero(d));
  std::vector<double> values(d + 1);
  values[0] = x0_value;
  for (int i = 1; i <= d; ++i) {
    simplex[i](i - 1) = step;
    values[i] = eval(simplex[i]);
  }
  std::vector<int> order(d + 1);
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
    const int best = order.front();
    const int worst = order.back();
    const int second_worst = order[d - 1 >= 0 ? d - 1 : 0];
    double size = 0.0;
    for (int i = 0; i <= d; ++i) size = std::max(size, (simplex[i] - simplex[best]).norm());
    if (size < options.step_tol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int i = 0; i <= d; ++i)
      if (i != worst) centroid += simplex[i];
    centroid /= d;
    const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
    const double fr = eval(reflected);
    if (fr < values[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (simplex[worst] - centroid));
    const double fc = eval(contracted);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (int i = 0; i <= d; ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
      values[i] = eval(simplex[i]);
    }
  }
  const int best = static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());
  return {chart(simplex[best]), values[best], evals};
}

bool better(double va, const Vec& a, double vb, const Vec& b) {
  const double scale = std::max({1.0, std::abs(va), std::abs(vb)});
  if (std::abs(va - vb) <= 1e-12 * scale) return lexicographically_less(a, b);
  return va < vb;
}

}  // namespace

SphereSearchResult minimize_on_sphere(const std::function<double(const Vec&)>& objective, int n,
                                      const SphereSearchOptions& options) {
  if (n < 1 || n > kMaxDim) throw InputError("sphere search: bad dimension");
  std::vector<Vec> starts;
  if (options.axis_starts || n == 1) {
    for (int i = 0; i < n; ++i) {
      starts.push_back(axis(n, i));
      starts.push_back(-axis(n, i));
    }
  }
  if (n > 1) {
    Rng rng(options.seed, 0x51e7);
    for (int k = 0; k < options.random_starts; ++k) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x(i) = rng.normal();
      starts.push_back(x / x.norm());
    }
  }
  for (const auto& x : options.extra_starts) {
    require_dim(x, n, "sphere search start");
    starts.push_back(x / x.norm());
  }

  std::vector<double> start_values(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) { start_values[i] = objective(starts[i]); });
  int evaluations = static_cast<int>(starts.size());

  std::vector<std::size_t> ranked(starts.size());
  std::iota(ranked.begin(), ranked.end(), 0);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](std::size_t a, std::size_t b) { return better(start_values[a], starts[a], start_values[b], starts[b]); });
  std::size_t polish = ranked.size();
  if (n == 1) polish = 0;
  else if (options.local_searches >= 0) polish = std::min<std::size_t>(polish, options.local_searches);

  std::vector<LocalResult> local(polish);
  parallel_for(polish, [&](std::size_t k) {
    const std::size_t i = ranked[k];
    LocalResult r = nelder_mead(objective, starts[i], start_values[i], options.initial_step, options,
                                options.max_evals / 2);
    // One restart from the converged point with a smaller simplex.
    LocalResult again = nelder_mead(objective, r.direction, r.value, 0.25 * options.initial_step, options,
                                    options.max_evals - r.evaluations);
    again.evaluations += r.evaluations;
    if (r.value < again.value) {
      r.evaluations = again.evaluations;
      local[k] = r;
    } else {
      local[k] = again;
    }
  });

  SphereSearchResult result;
  result.direction = starts[ranked.front()];
  result.value = start_values[ranked.front()];
  for (const auto& r : local) {
    evaluations += r.evaluations;
    result.start_values.push_back(r.value);
    if (better(r.value, r.direction, result.value, result.direction)) {
      result.value = r.value;
      result.direction = r.direction;
    }
  }
  if (result.start_values.empty()) result.start_values = start_values;
  result.direction = (result.direction.array() + 0.0).matrix();  // no negative zeros in reports
  result.evaluations = evaluations;
  const auto [lo, hi] = std::minmax_element(result.start_values.begin(), result.start_values.end());
  result.relative_spread = (*hi - *lo) / (result.value != 0.0 ? std::abs(result.value) : 1.0);
  return result;
}

SphereSearchResult maximize_on_sphere(const std::function<double(const Vec&)>& objective, int n,
                                      const SphereSearchOptions& options) {
  auto negated = [&](const Vec& x) { return -objective(x); };
  SphereSearchResult r = minimize_on_sphere(negated, n, options);
  r.value = -r.value;
  for (double& v : r.start_values) v = -v;
  return r;
}

}  // namespace slicelab
