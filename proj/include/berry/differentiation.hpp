#pragma once

// Central-difference Wirtinger derivatives of matrix-valued functions of one
// complex variable:  d/dz = (d/dx - i d/dy)/2,  d/dzbar = (d/dx + i d/dy)/2.

#include "berry/types.hpp"

namespace berry {

struct DifferentiationPlan {
  double h = 1e-4;
  bool richardson = false;  // one level: (4 D(h/2) - D(h)) / 3

  void validate() const {
    if (!(h >= 1e-8 && h <= 1e-2)) throw std::invalid_argument("step h must lie in [1e-8, 1e-2]");
  }
};

struct WirtingerPair {
  Matrix d_z;
  Matrix d_zbar;
};

namespace detail {

template <class Fn>
WirtingerPair central_wirtinger(Fn& f, cplx z0, double h) {
  const Matrix dx = (f(z0 + h) - f(z0 - h)) / (2.0 * h);
  const Matrix dy = (f(z0 + kI * h) - f(z0 - kI * h)) / (2.0 * h);
  return {0.5 * (dx - kI * dy), 0.5 * (dx + kI * dy)};
}

}  // namespace detail

/// `f` maps cplx -> Matrix (anything assignable to Matrix).
template <class Fn>
WirtingerPair wirtinger_derivative(Fn&& f, cplx z0, const DifferentiationPlan& plan) {
  plan.validate();
  auto wrapped = [&f](cplx z) -> Matrix { return f(z); };
  WirtingerPair coarse = detail::central_wirtinger(wrapped, z0, plan.h);
  if (!plan.richardson) return coarse;
  WirtingerPair fine = detail::central_wirtinger(wrapped, z0, 0.5 * plan.h);
  return {(4.0 * fine.d_z - coarse.d_z) / 3.0, (4.0 * fine.d_zbar - coarse.d_zbar) / 3.0};
}

/// Scalar convenience overload.
template <class Fn>
std::pair<cplx, cplx> wirtinger_scalar(Fn&& f, cplx z0, const DifferentiationPlan& plan) {
  auto as_matrix = [&f](cplx z) {
    Matrix out(1, 1);
    out(0, 0) = f(z);
    return out;
  };
  const WirtingerPair d = wirtinger_derivative(as_matrix, z0, plan);
  return {d.d_z(0, 0), d.d_zbar(0, 0)};
}

}  // namespace berry
