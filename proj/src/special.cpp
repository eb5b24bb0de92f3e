#include "slicelab/special.hpp"

#include "slicelab/types.hpp"

#include <cmath>

namespace slicelab {

double sphere_area(int n) {
  if (n < 1) throw InputError("sphere_area: n must be >= 1");
  return 2.0 * std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n));
}

double spherical_constant(int n, double p) {
  if (n < 1) throw InputError("spherical_constant: n must be >= 1");
  if (!(p > 0.0)) throw InputError("spherical_constant: p must be positive");
  const double log_c = std::lgamma(0.5 * (p + n)) - std::log(2.0) - 0.5 * (n - 1) * std::log(M_PI) -
                       std::lgamma(0.5 * (p + 1));
  return std::exp(log_c);
}

}  // namespace slicelab
