#include "berry/family.hpp"

#include <algorithm>
#include <cmath>

namespace berry {

namespace {

void check_degeneracy(int m, const TruncatedSpace& space) {
  if (m < 1) throw std::invalid_argument("degeneracy m must be >= 1");
  if (m >= space.dim()) throw std::invalid_argument("degeneracy m must be smaller than the dimension");
}

Matrix matrix_power(const Matrix& x, int k) {
  Matrix out = Matrix::Identity(x.rows(), x.cols());
  for (int i = 0; i < k; ++i) out = out * x;
  return out;
}

}  // namespace

TruncatedOperator hamiltonian_h0(int m, const TruncatedSpace& space) {
  check_degeneracy(m, space);
  const int d = space.dim();
  Matrix h = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    double value = 1.0;
    for (int k = 0; k < m; ++k) value *= static_cast<double>(n - k);
    h(n, n) = value;
  }
  return {h, space, "H0"};
}

UnitaryOperator unitary_u(const ParameterPoint& p, const TruncatedSpace& space) {
  return displacement(p.lambda, space) * squeeze(p.mu, space);
}

UnitaryOperator unitary_u_generalized(const GeneralizedPoint& p, const TruncatedSpace& space, FactorOrder order) {
  const auto ops = make_operators(space);
  const int count = static_cast<int>(p.lambdas.size());
  auto factor = [&](int j) {
    const cplx l = p.lambdas[static_cast<std::size_t>(j - 1)];
    if (l == cplx{0.0}) return UnitaryOperator::identity(space.dim());
    const Matrix g = (l * matrix_power(ops.a_dag.matrix, j) - std::conj(l) * matrix_power(ops.a.matrix, j)) /
                     static_cast<double>(j);
    return exp_antihermitian(g);
  };
  UnitaryOperator u = UnitaryOperator::identity(space.dim());
  for (int k = 1; k <= count; ++k) {
    const int j = order == FactorOrder::Ascending ? k : count + 1 - k;
    u = u * factor(j);
  }
  return u;
}

Frame vacuum_frame(const ParameterPoint& p, int m, const TruncatedSpace& space) {
  check_degeneracy(m, space);
  return {unitary_u(p, space).matrix().leftCols(m), m};
}

Frame vacuum_frame_generalized(const GeneralizedPoint& p, int m, const TruncatedSpace& space, FactorOrder order) {
  check_degeneracy(m, space);
  return {unitary_u_generalized(p, space, order).matrix().leftCols(m), m};
}

Projector project(const Frame& frame) { return {frame.matrix * frame.matrix.adjoint(), frame.m}; }

Projector classifying_projector(const ParameterPoint& p, int m, const TruncatedSpace& space) {
  return project(vacuum_frame(p, m, space));
}

ProjectorDefects projector_defects(const Projector& p) {
  const Matrix& x = p.matrix;
  return {max_abs(x * x - x), max_abs(x.adjoint() - x), std::abs(x.trace() - cplx(p.m))};
}

SpectrumReport isospectral_check(const ParameterPoint& p, int m, const TruncatedSpace& space, double kernel_tol) {
  const Matrix h0 = hamiltonian_h0(m, space).matrix;
  const Matrix u = unitary_u(p, space).matrix();
  Matrix h = u * h0 * u.adjoint();
  h = 0.5 * (h + h.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("hermitian eigensolver failed");
  const Eigen::VectorXd& moved = eig.eigenvalues();

  std::vector<double> reference(static_cast<std::size_t>(space.dim()));
  for (int n = 0; n < space.dim(); ++n) reference[static_cast<std::size_t>(n)] = h0(n, n).real();
  std::sort(reference.begin(), reference.end());

  SpectrumReport report;
  report.matched_count = space.dim() / 2;
  for (int n = 0; n < space.dim(); ++n) {
    const double dev = std::abs(moved(n) - reference[static_cast<std::size_t>(n)]);
    double& slot = n < report.matched_count ? report.max_dev : report.boundary_dev;
    slot = std::max(slot, dev);
    if (std::abs(moved(n)) < kernel_tol) ++report.kernel_dim_estimate;
  }
  return report;
}

}  // namespace berry
