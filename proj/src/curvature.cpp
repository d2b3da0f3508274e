#include "berry/curvature.hpp"

#include <cmath>

#include "berry/lie.hpp"

namespace berry {

BasisMatrices basis_matrices(int m) {
  if (m < 2) throw std::invalid_argument("basis matrices need m >= 2");
  BasisMatrices b;
  b.e = Matrix::Zero(m, m);
  for (int i = 0; i + 1 < m; ++i) b.e(i, i + 1) = std::sqrt(i + 1.0);
  b.f = b.e.adjoint();
  b.k = Matrix::Zero(m, m);
  b.k(m - 1, m - 1) = 1.0;
  b.l = b.k;
  b.l(m - 2, m - 2) = 1.0;
  b.ek = b.e * b.k;
  b.kf = b.ek.adjoint();
  return b;
}

CurvatureForm CurvatureForm::zero(const ParameterPoint& p, int m) {
  CurvatureForm f;
  for (auto& c : f.c) c = Matrix::Zero(m, m);
  f.point = p;
  f.m = m;
  return f;
}

Matrix CurvatureForm::evaluate(const Tangent& u, const Tangent& v) const {
  // basis 1-forms (dl, dm, dl*, dm*) on a real tangent
  auto covector = [](const Tangent& t) {
    return std::array<cplx, 4>{t.d_lambda, t.d_mu, std::conj(t.d_lambda), std::conj(t.d_mu)};
  };
  static constexpr std::array<std::pair<int, int>, 6> kPairs = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  const auto a = covector(u);
  const auto b = covector(v);
  Matrix out = Matrix::Zero(m, m);
  for (std::size_t k = 0; k < 6; ++k) {
    const auto [i, j] = kPairs[k];
    out += c[k] * (a[i] * b[j] - a[j] * b[i]);
  }
  return out;
}

double hermiticity_defect(const CurvatureForm& f) {
  using enum TwoForm;
  return std::max({max_abs(f[LambdaLambdaBar] - f[LambdaLambdaBar].adjoint()),
                   max_abs(f[MuMuBar] - f[MuMuBar].adjoint()),
                   max_abs(f[MuLambdaBar] - f[LambdaMuBar].adjoint()),
                   max_abs(f[LambdaBarMuBar] + f[LambdaMu].adjoint())});
}

std::array<std::pair<Tangent, Tangent>, 6> coordinate_planes() {
  const std::array<Tangent, 4> axes = {Tangent{1.0, 0.0}, Tangent{kI, 0.0}, Tangent{0.0, 1.0}, Tangent{0.0, kI}};
  return {{{axes[0], axes[1]},
           {axes[0], axes[2]},
           {axes[0], axes[3]},
           {axes[1], axes[2]},
           {axes[1], axes[3]},
           {axes[2], axes[3]}}};
}

CurvatureForm curvature_closed(const ParameterPoint& p, int m) {
  const BasisMatrices b = basis_matrices(m);
  const RadialFunctions f = radial_functions(std::abs(p.mu));
  const cplx mu = p.mu;
  const cplx mu_bar = std::conj(mu);
  const double md = m;
  const double plus = 1.0 + f.cs_over_r;
  // (-1 + cs/r) carried as r^2 * cs_excess so that the phase factors
  // conj(mu)^2/r^2 and mu sinh r / r stay regular at mu = 0.
  const cplx minus_bar2 = mu_bar * mu_bar * f.cs_excess;  // conj(mu)^2/r^2 (-1 + cs/r)
  const cplx minus2 = mu * mu * f.cs_excess;              // mu^2/r^2 (-1 + cs/r)
  const double minus_r = std::abs(mu) * std::abs(mu) * f.cs_excess;  // (-1 + cs/r)

  using enum TwoForm;
  CurvatureForm out = CurvatureForm::zero(p, m);
  out[LambdaMu] = md * f.cosh_r / 4.0 * minus_bar2 * b.ek - md * mu_bar * f.sinhc / 4.0 * plus * b.kf;
  out[LambdaLambdaBar] = -md * b.k;
  out[LambdaMuBar] = -(md * f.cosh_r / 4.0 * plus * b.ek - md * mu * f.sinhc / 4.0 * minus_r * b.kf);
  out[MuLambdaBar] = -(-md * mu_bar * f.sinhc / 4.0 * minus_r * b.ek + md * f.cosh_r / 4.0 * plus * b.kf);
  out[MuMuBar] = -(md / 2.0 * f.cs_over_r * b.k + md * (md - 1.0) / 4.0 * f.cs_over_r * b.l);
  out[LambdaBarMuBar] = -(-md * mu * f.sinhc / 4.0 * plus * b.ek + md * f.cosh_r / 4.0 * minus2 * b.kf);
  return out;
}

CurvatureForm curvature_from_components(const ConnectionField& field, const ParameterPoint& p,
                                        const DifferentiationPlan& plan) {
  const ConnectionMatrices at = field(p);
  const Matrix& al = at.a_lambda;
  const Matrix& am = at.a_mu;

  const WirtingerPair dl_al =
      wirtinger_derivative([&](cplx z) { return field({z, p.mu}).a_lambda; }, p.lambda, plan);
  const WirtingerPair dl_am = wirtinger_derivative([&](cplx z) { return field({z, p.mu}).a_mu; }, p.lambda, plan);
  const WirtingerPair dm_al = wirtinger_derivative([&](cplx z) { return field({p.lambda, z}).a_lambda; }, p.mu, plan);
  const WirtingerPair dm_am = wirtinger_derivative([&](cplx z) { return field({p.lambda, z}).a_mu; }, p.mu, plan);

  // d_k (X^dagger) = (d_kbar X)^dagger
  auto adj = [](const Matrix& x) -> Matrix { return x.adjoint(); };

  using enum TwoForm;
  CurvatureForm out = CurvatureForm::zero(p, at.m);
  out[LambdaMu] = dl_am.d_z - dm_al.d_z + commutator(al, am);
  out[LambdaLambdaBar] = -(adj(dl_al.d_zbar) + dl_al.d_zbar + commutator(al, adj(al)));
  out[LambdaMuBar] = -(adj(dl_am.d_zbar) + dm_al.d_zbar + commutator(al, adj(am)));
  out[MuLambdaBar] = -(adj(dm_al.d_zbar) + dl_am.d_zbar + commutator(am, adj(al)));
  out[MuMuBar] = -(adj(dm_am.d_zbar) + dm_am.d_zbar + commutator(am, adj(am)));
  out[LambdaBarMuBar] = -(adj(dl_am.d_z) - adj(dm_al.d_z) - commutator(adj(al), adj(am)));
  return out;
}

FourFormValue f_squared(const ParameterPoint& p, int m) {
  const BasisMatrices b = basis_matrices(m);
  const double cs = radial_functions(std::abs(p.mu)).cs_over_r;
  const double md = m;
  return {cs * (md * md * (md - 1.0) / 4.0 * b.l - md * md * (md + 1.0) / 2.0 * b.k)};
}

FourFormValue f_squared_from_wedge(const CurvatureForm& f) {
  const auto& c = f.c;
  return {c[0] * c[5] + c[5] * c[0] - c[1] * c[4] - c[4] * c[1] + c[2] * c[3] + c[3] * c[2]};
}

ChernTraces chern_trace_forms(const CurvatureForm& f, const FourFormValue& f2) {
  if (f2.matrix.rows() != f.m) throw std::invalid_argument("inconsistent m between F and F^2");
  ChernTraces out;
  for (std::size_t k = 0; k < 6; ++k) out.tr_f[k] = f.c[k].trace();
  out.tr_f2 = f2.matrix.trace();
  return out;
}

int curvature_span_dimension(const std::vector<ParameterPoint>& samples, int m, int budget) {
  if (samples.empty()) throw std::invalid_argument("curvature span needs at least one sample");
  std::vector<Matrix> generators;
  const auto planes = coordinate_planes();
  for (const auto& p : samples) {
    const CurvatureForm f = curvature_closed(p, m);
    for (const auto& [u, v] : planes) generators.push_back(f.evaluate(u, v));
  }
  return lie_closure_dimension(generators, 1e-9, budget);
}

}  // namespace berry
