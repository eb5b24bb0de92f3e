#include "slicelab/sobol.hpp"

#include "slicelab/rng.hpp"
#include "slicelab/types.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/random/sobol.hpp>

#include <array>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace slicelab {

Eigen::MatrixXd scrambled_sobol(int dims, int count, std::uint64_t seed) {
  if (dims < 1 || count < 1) throw InputError("scrambled_sobol: dims and count must be positive");
  Rng rng(seed);
  std::vector<std::array<std::uint32_t, 32>> columns(dims);
  std::vector<std::uint32_t> shift(dims);
  for (int j = 0; j < dims; ++j) {
    for (int k = 0; k < 32; ++k) {
      const std::uint32_t diag = 1u << (31 - k);
      columns[j][k] = diag | (static_cast<std::uint32_t>(rng.bits() >> 32) & (diag - 1u));
    }
    shift[j] = static_cast<std::uint32_t>(rng.bits() >> 32);
  }

  Eigen::MatrixXd points(dims, count);
  boost::random::sobol engine(dims);
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < dims; ++j) {
      // boost starts at index 1; column 0 is the origin.
      const std::uint32_t x = i == 0 ? 0u : static_cast<std::uint32_t>(engine() >> 32);
      std::uint32_t y = shift[j];
      for (int k = 0; k < 32; ++k)
        if (x & (1u << (31 - k))) y ^= columns[j][k];
      points(j, i) = (static_cast<double>(y) + 0.5) * 0x1.0p-32;
    }
  }
  return points;
}

std::shared_ptr<const Eigen::MatrixXd> scrambled_sobol_cached(int dims, int count, std::uint64_t seed) {
  using Key = std::tuple<int, int, std::uint64_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const Eigen::MatrixXd>> cache;
  const Key key{dims, count, seed};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto points = std::make_shared<const Eigen::MatrixXd>(scrambled_sobol(dims, count, seed));
  std::lock_guard<std::mutex> lock(mutex);
  if (cache.size() > 8) cache.clear();
  return cache.emplace(key, points).first->second;
}

double inverse_normal_cdf(double u) { return -M_SQRT2 * boost::math::erfc_inv(2.0 * u); }

}  // namespace slicelab
