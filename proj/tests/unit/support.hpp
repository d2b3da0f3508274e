#pragma once

// Independent reference computations shared by the unit tests. None of these
// call into the library's exponential or closed forms.

#include <cmath>
#include <random>

#include "berry/types.hpp"

namespace testing {

using berry::cplx;
using berry::Matrix;

/// Taylor series with scaling and squaring.
inline Matrix taylor_exp(const Matrix& x) {
  const double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const Matrix y = x * scale;
  Matrix sum = Matrix::Identity(x.rows(), x.cols());
  Matrix term = sum;
  for (int k = 1; k < 30; ++k) {
    term = term * y / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

inline Matrix random_matrix(int rows, int cols, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

/// Haar-ish unitary from the QR factor of a gaussian matrix.
inline Matrix random_unitary(int n, std::mt19937& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(n, n, rng));
  return qr.householderQ() * Matrix::Identity(n, n);
}

inline cplx random_complex(std::mt19937& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

}  // namespace testing
