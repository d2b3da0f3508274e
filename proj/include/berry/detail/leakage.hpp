#pragma once

#include <algorithm>

namespace berry {

template <class GeneratorFn>
int leakage_buffer(GeneratorFn&& make_generator, const TruncatedSpace& space, double tol) {
  const int d = space.dim();
  const TruncatedSpace wide(2 * d);
  const Matrix narrow = exp_antihermitian(make_generator(space)).matrix();
  const Matrix reference = exp_antihermitian(make_generator(wide)).matrix().topLeftCorner(d, d);
  const Eigen::MatrixXd dev = (narrow - reference).cwiseAbs();

  // Grow the leading block until it first exceeds tol.
  int clean = 0;
  double running = 0.0;
  for (int k = 0; k < d; ++k) {
    running = std::max({running, dev.row(k).head(k + 1).maxCoeff(), dev.col(k).head(k + 1).maxCoeff()});
    if (running > tol) break;
    clean = k + 1;
  }
  return d - clean;
}

}  // namespace berry
