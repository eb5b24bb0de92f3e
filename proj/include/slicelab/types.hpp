#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace slicelab {

/// Largest supported ambient dimension. Vectors never touch the heap below it.
inline constexpr int kMaxDim = 16;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// Malformed or out-of-range user input (bad parameters, bad spec files).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Point or direction whose dimension does not match the body/measure.
class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

/// The geometric or measure-theoretic object is degenerate for the
/// requested operation (zero gauge on a direction, zero total mass, ...).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline void require_dim(const Vec& x, int n, const char* what) {
  if (x.size() != n) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(n) +
                         ", got " + std::to_string(x.size()));
  }
}

inline Vec axis(int n, int i) {
  Vec e = Vec::Zero(n);
  e(i) = 1.0;
  return e;
}

}  // namespace slicelab
