#pragma once

// Closed-form adiabatic connection of the degenerate vacuum bundle.
//
// With U = D(l) S(m) the Maurer-Cartan pullbacks are
//   U^-1 d_l U = conj(l)/2 + cosh r a^+ + conj(m) sinh r / r a,
//   U^-1 d_m U = gamma (a^+)^2 + alpha (a^+ a + 1/2) + beta a^2,        r = |m|,
// and the connection A = A_l dl + A_m dm - A_l^+ dl* - A_m^+ dm* has
// A_k = <i| U^-1 d_k U |j>, 0 <= i, j < m.

#include <array>
#include <vector>

#include "berry/family.hpp"
#include "berry/loop.hpp"

namespace berry {

/// Smooth functions of r = |mu| appearing in the closed forms. Below
/// kSeriesRadius they are evaluated from their Taylor series.
struct RadialFunctions {
  double cosh_r = 1.0;
  double sinhc = 1.0;       // sinh r / r
  double tanhc = 1.0;       // tanh r / r
  double cs_over_r = 1.0;   // cosh r sinh r / r
  double cs_excess = 2.0 / 3.0;  // (cosh r sinh r / r - 1) / r^2
  double sinhc_sq = 1.0;    // sinh^2 r / r^2
};

inline constexpr double kSeriesRadius = 1e-4;

RadialFunctions radial_functions(double r);

struct ConnectionCoeffs {
  cplx alpha;  // conj(mu) sinh^2 r / (2 r^2)
  cplx beta;   // conj(mu)^2 / (4 r^2) (cosh r sinh r / r - 1)
  cplx gamma;  // (1 + cosh r sinh r / r) / 4
  cplx zeta;   // mu tanh r / r
};

ConnectionCoeffs coefficients(cplx mu);

/// Scalar coefficients of U^-1 d_l U on {1, a^+, a} and of U^-1 d_m U on
/// {(a^+)^2, a^+ a + 1/2, a^2}.
struct MaurerCartan {
  cplx c_id;
  cplx c_adag;
  cplx c_a;
  cplx c_adag2;
  cplx c_k3;
  cplx c_a2;
};

MaurerCartan maurer_cartan(const ParameterPoint& p);

struct ConnectionMatrices {
  Matrix a_lambda;
  Matrix a_mu;
  ParameterPoint point;
  int m = 0;
};

ConnectionMatrices connection_closed(const ParameterPoint& p, int m);

/// A(v) = A_l dl + A_m dm - A_l^+ conj(dl) - A_m^+ conj(dm); anti-hermitian.
Matrix contract_one_form(const ConnectionMatrices& cm, const Tangent& tangent);

/// The three Wirtinger identities used in deriving the Maurer-Cartan forms,
/// each compared with a central-difference derivative.
struct DerivativeIdentityReport {
  cplx z;
  double h = 0.0;
  std::array<cplx, 3> exact{};    // right-hand sides
  std::array<cplx, 3> numeric{};  // finite-difference left-hand sides
  std::array<double, 3> deviation{};
  double max_deviation = 0.0;
};

/// d/dz (z tanh|z|/|z|), d/dz log(1 - tanh^2|z|), d/dz (conj(z) tanh|z|/|z|).
std::array<cplx, 3> derivative_identity_rhs(cplx z);
DerivativeIdentityReport derivative_identity_report(cplx z, double h);

/// Abelian phases Im of the loop integral of the diagonal of A, one per level
/// j < m, by the composite trapezoid rule on each piece's sample grid.
std::vector<double> berry_phase_diagonal(const LoopPath& loop, int m);

}  // namespace berry
