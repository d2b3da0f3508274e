#include "berry/connection.hpp"

#include <cmath>

#include "berry/differentiation.hpp"

namespace berry {

RadialFunctions radial_functions(double r) {
  RadialFunctions f;
  const double r2 = r * r;
  if (r < kSeriesRadius) {
    f.cosh_r = 1.0 + 0.5 * r2;
    f.sinhc = 1.0 + r2 / 6.0;
    f.tanhc = 1.0 - r2 / 3.0;
    f.cs_over_r = 1.0 + 2.0 * r2 / 3.0;
    f.cs_excess = 2.0 / 3.0 + 2.0 * r2 / 15.0;
    f.sinhc_sq = 1.0 + r2 / 3.0;
    return f;
  }
  f.cosh_r = std::cosh(r);
  f.sinhc = std::sinh(r) / r;
  f.tanhc = std::tanh(r) / r;
  f.cs_over_r = f.cosh_r * f.sinhc;
  f.sinhc_sq = f.sinhc * f.sinhc;
  if (r < 0.1) {
    // (sinh(2r)/(2r) - 1)/r^2 = sum_{k>=1} 4^k r^(2k-2) / (2k+1)!  (cancellation-free)
    double term = 4.0 / 6.0;
    double sum = term;
    for (int k = 2; k <= 8; ++k) {
      term *= 4.0 * r2 / ((2.0 * k) * (2.0 * k + 1.0));
      sum += term;
    }
    f.cs_excess = sum;
  } else {
    f.cs_excess = (f.cs_over_r - 1.0) / r2;
  }
  return f;
}

ConnectionCoeffs coefficients(cplx mu) {
  const RadialFunctions f = radial_functions(std::abs(mu));
  const cplx mu_bar = std::conj(mu);
  return {0.5 * mu_bar * f.sinhc_sq, 0.25 * mu_bar * mu_bar * f.cs_excess, 0.25 * (1.0 + f.cs_over_r),
          mu * f.tanhc};
}

MaurerCartan maurer_cartan(const ParameterPoint& p) {
  const RadialFunctions f = radial_functions(std::abs(p.mu));
  const ConnectionCoeffs c = coefficients(p.mu);
  return {0.5 * std::conj(p.lambda), f.cosh_r, std::conj(p.mu) * f.sinhc, c.gamma, c.alpha, c.beta};
}

ConnectionMatrices connection_closed(const ParameterPoint& p, int m) {
  if (m < 1) throw std::invalid_argument("degeneracy m must be >= 1");
  const MaurerCartan mc = maurer_cartan(p);
  Matrix a_lambda = Matrix::Zero(m, m);
  Matrix a_mu = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    a_lambda(i, i) = mc.c_id;
    a_mu(i, i) = (0.5 + i) * mc.c_k3;
    if (i + 1 < m) {
      const double s = std::sqrt(i + 1.0);
      a_lambda(i + 1, i) = s * mc.c_adag;
      a_lambda(i, i + 1) = s * mc.c_a;
    }
    if (i + 2 < m) {
      const double s = std::sqrt((i + 1.0) * (i + 2.0));
      a_mu(i + 2, i) = s * mc.c_adag2;
      a_mu(i, i + 2) = s * mc.c_a2;
    }
  }
  return {a_lambda, a_mu, p, m};
}

Matrix contract_one_form(const ConnectionMatrices& cm, const Tangent& t) {
  return cm.a_lambda * t.d_lambda + cm.a_mu * t.d_mu - cm.a_lambda.adjoint() * std::conj(t.d_lambda) -
         cm.a_mu.adjoint() * std::conj(t.d_mu);
}

std::array<cplx, 3> derivative_identity_rhs(cplx z) {
  const double r = std::abs(z);
  const double t = std::tanh(r);
  const double sech2 = 1.0 - t * t;
  const cplx z_bar = std::conj(z);
  return {0.5 * (sech2 + t / r), -z_bar * t / r, z_bar * z_bar / (2.0 * r * r) * (sech2 - t / r)};
}

DerivativeIdentityReport derivative_identity_report(cplx z, double h) {
  if (!(h >= 1e-7 && h <= 1e-3)) throw std::invalid_argument("step h must lie in [1e-7, 1e-3]");
  if (std::abs(z) < 10.0 * h) throw std::invalid_argument("too close to removable singularity for this step");

  auto tanhc = [](cplx w) { return std::tanh(std::abs(w)) / std::abs(w); };
  DifferentiationPlan plan{h, false};
  DerivativeIdentityReport report;
  report.z = z;
  report.h = h;
  report.exact = derivative_identity_rhs(z);
  report.numeric[0] = wirtinger_scalar([&](cplx w) { return w * tanhc(w); }, z, plan).first;
  report.numeric[1] = wirtinger_scalar(
      [](cplx w) {
        const double t = std::tanh(std::abs(w));
        return cplx{std::log(1.0 - t * t)};
      },
      z, plan).first;
  report.numeric[2] = wirtinger_scalar([&](cplx w) { return std::conj(w) * tanhc(w); }, z, plan).first;
  for (int k = 0; k < 3; ++k) {
    report.deviation[k] = std::abs(report.exact[k] - report.numeric[k]);
    report.max_deviation = std::max(report.max_deviation, report.deviation[k]);
  }
  return report;
}

std::vector<double> berry_phase_diagonal(const LoopPath& loop, int m) {
  if (!loop.closed()) throw std::invalid_argument("berry phase requires a closed loop");
  std::vector<double> phases(static_cast<std::size_t>(m), 0.0);
  for (const auto& piece : loop.pieces()) {
    const int n = piece.samples;
    for (int k = 0; k <= n; ++k) {
      const double s = static_cast<double>(k) / n;
      const double weight = (k == 0 || k == n) ? 0.5 / n : 1.0 / n;
      const Matrix a = contract_one_form(connection_closed(piece.position(s), m), piece.velocity(s));
      for (int j = 0; j < m; ++j) phases[static_cast<std::size_t>(j)] += weight * a(j, j).imag();
    }
  }
  return phases;
}

}  // namespace berry
