#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace berry {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr cplx kI{0.0, 1.0};

/// Raised when a numerical procedure cannot reach its stated accuracy
/// (truncation too coarse, closure not stabilized, ...). Distinct from
/// std::invalid_argument, which signals a bad request.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest absolute entry; 0 for empty matrices.
inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

}  // namespace berry
