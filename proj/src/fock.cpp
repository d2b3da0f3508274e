#include "berry/fock.hpp"

#include <cmath>

namespace berry {

TruncatedSpace::TruncatedSpace(int dim) : dim_(dim) {
  if (dim < 2) throw std::invalid_argument("dimension too small");
}

double UnitaryOperator::unitarity_defect() const {
  return max_abs(matrix_.adjoint() * matrix_ - Matrix::Identity(dim(), dim()));
}

LadderOperators make_operators(const TruncatedSpace& space) {
  const int d = space.dim();
  Matrix a = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Matrix a_dag = a.adjoint();
  Matrix number = a_dag * a;
  Matrix k_plus = 0.5 * a_dag * a_dag;
  Matrix k_minus = 0.5 * a * a;
  Matrix k_3 = 0.5 * (number + 0.5 * space.identity());
  return {
      {a, space, "a"},
      {a_dag, space, "a_dag"},
      {number, space, "N"},
      {k_plus, space, "K_plus"},
      {k_minus, space, "K_minus"},
      {k_3, space, "K_3"},
  };
}

UnitaryOperator exp_antihermitian(const Matrix& generator) {
  if (generator.rows() != generator.cols()) throw std::invalid_argument("generator must be square");
  const double scale = std::max(1.0, max_abs(generator));
  if (max_abs(generator + generator.adjoint()) > 1e-12 * scale)
    throw std::invalid_argument("generator is not anti-hermitian");

  // iG is hermitian: iG = Q diag(w) Q^dagger, so e^G = Q diag(e^{-iw}) Q^dagger.
  const Matrix hermitian = kI * generator;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hermitian);
  if (eig.info() != Eigen::Success) throw NumericalError("hermitian eigensolver failed");
  const Eigen::VectorXd& w = eig.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(-kI * w(k));
  const Matrix& q = eig.eigenvectors();
  return UnitaryOperator(q * phases.asDiagonal() * q.adjoint());
}

Matrix displacement_generator(cplx lambda, const TruncatedSpace& space) {
  const auto ops = make_operators(space);
  return lambda * ops.a_dag.matrix - std::conj(lambda) * ops.a.matrix;
}

Matrix squeeze_generator(cplx mu, const TruncatedSpace& space) {
  const auto ops = make_operators(space);
  return mu * ops.k_plus.matrix - std::conj(mu) * ops.k_minus.matrix;
}

UnitaryOperator displacement(cplx lambda, const TruncatedSpace& space) {
  return exp_antihermitian(displacement_generator(lambda, space));
}

UnitaryOperator squeeze(cplx mu, const TruncatedSpace& space) {
  return exp_antihermitian(squeeze_generator(mu, space));
}

Matrix exp_nilpotent(const Matrix& x) {
  const Eigen::Index d = x.rows();
  Matrix sum = Matrix::Identity(d, d);
  Matrix term = Matrix::Identity(d, d);
  for (Eigen::Index k = 1; k < d; ++k) {
    term = term * x / static_cast<double>(k);
    const double size = max_abs(term);
    if (size == 0.0) break;
    sum += term;
    if (size < 1e-18 * max_abs(sum)) break;
  }
  return sum;
}

int nominal_buffer(cplx lambda, cplx mu) {
  const double spread = 2.0 * std::norm(lambda) + 8.0 * std::abs(mu);
  return std::max(4, static_cast<int>(std::ceil(spread)));
}

namespace {

IdentityReport compare_blocks(std::string name, const Matrix& lhs, const Matrix& rhs, int buffer) {
  const int d = static_cast<int>(lhs.rows());
  buffer = std::min(buffer, d);
  const int inner = d - buffer;
  const Eigen::MatrixXd dev = (lhs - rhs).cwiseAbs();
  IdentityReport report{std::move(name), 0.0, 0.0, d, buffer};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double& slot = (i < inner && j < inner) ? report.interior_dev : report.boundary_dev;
      slot = std::max(slot, dev(i, j));
    }
  }
  return report;
}

}  // namespace

BchReport bch_identity_report(cplx lambda, cplx mu, const TruncatedSpace& space) {
  const auto ops = make_operators(space);
  const int d = space.dim();

  // Displacement: e^{-|l|^2/2} e^{l a^+} e^{-conj(l) a}.
  const Matrix disp_lhs = displacement(lambda, space).matrix();
  const Matrix disp_rhs = std::exp(-0.5 * std::norm(lambda)) * exp_nilpotent(lambda * ops.a_dag.matrix) *
                          exp_nilpotent(-std::conj(lambda) * ops.a.matrix);
  const int disp_buffer = std::max(
      nominal_buffer(lambda, mu),
      leakage_buffer([lambda](const TruncatedSpace& s) { return displacement_generator(lambda, s); }, space));

  // Squeeze: zeta = mu tanh|mu|/|mu|, middle factor exp(log(1-|zeta|^2) K3).
  const double r = std::abs(mu);
  const cplx zeta = r == 0.0 ? cplx{0.0} : mu * (std::tanh(r) / r);
  const double log_factor = std::log1p(-std::norm(zeta));
  Matrix middle = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) middle(n, n) = std::exp(log_factor * ops.k_3.matrix(n, n).real());
  const Matrix sq_lhs = squeeze(mu, space).matrix();
  const Matrix sq_rhs =
      exp_nilpotent(zeta * ops.k_plus.matrix) * middle * exp_nilpotent(-std::conj(zeta) * ops.k_minus.matrix);
  const int sq_buffer = std::max(nominal_buffer(lambda, mu),
                                 leakage_buffer([mu](const TruncatedSpace& s) { return squeeze_generator(mu, s); }, space));

  return {compare_blocks("displacement_bch", disp_lhs, disp_rhs, disp_buffer),
          compare_blocks("squeeze_disentangling", sq_lhs, sq_rhs, sq_buffer)};
}

}  // namespace berry
