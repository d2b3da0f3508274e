#include "doctest.h"

#include "berry/family.hpp"
#include "support.hpp"

using namespace berry;

TEST_CASE("hamiltonian_h0") {
  auto diag = [](std::initializer_list<double> v) {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(v.size()));
    Eigen::Index k = 0;
    for (double x : v) d(k++) = x;
    return Matrix(d.asDiagonal());
  };
  CHECK(max_abs(hamiltonian_h0(1, TruncatedSpace(4)).matrix - diag({0, 1, 2, 3})) == 0.0);
  CHECK(max_abs(hamiltonian_h0(2, TruncatedSpace(5)).matrix - diag({0, 0, 2, 6, 12})) == 0.0);
  CHECK(max_abs(hamiltonian_h0(3, TruncatedSpace(6)).matrix - diag({0, 0, 0, 6, 24, 60})) == 0.0);
  CHECK_THROWS_AS(hamiltonian_h0(4, TruncatedSpace(4)), std::invalid_argument);
  CHECK_THROWS_AS(hamiltonian_h0(0, TruncatedSpace(4)), std::invalid_argument);
}

TEST_CASE("unitary_u") {
  const TruncatedSpace space(64);
  CHECK(max_abs(unitary_u({0.0, 0.0}, space).matrix() - space.identity()) < 1e-15);
  CHECK(max_abs(unitary_u({cplx(0.4, -0.1), 0.0}, space).matrix() -
                displacement(cplx(0.4, -0.1), space).matrix()) < 1e-15);
  const UnitaryOperator u = unitary_u({0.3, cplx(0.0, 0.2)}, space);
  CHECK(u.unitarity_defect() < 1e-12);
  CHECK(std::abs(u.matrix().col(0).norm() - 1.0) < 1e-12);
}

TEST_CASE("unitary_u_generalized") {
  const TruncatedSpace space(64);
  CHECK(max_abs(unitary_u_generalized({{0.0, 0.0, 0.0}}, space).matrix() - space.identity()) < 1e-15);
  CHECK(unitary_u_generalized({{0.1, 0.0, 0.1}}, space).unitarity_defect() < 1e-12);

  const cplx lambda(0.3, 0.1);
  const cplx mu(0.2, -0.15);
  const Matrix two_param = unitary_u({lambda, mu}, space).matrix();
  // The j = 2 generator (l2 a^+^2 - conj(l2) a^2)/2 is l2 K+ - conj(l2) K-, so l2 = mu.
  CHECK(max_abs(unitary_u_generalized({{lambda, mu}}, space).matrix() - two_param) < 1e-12);
  // The literal doubling gives S(2 mu) instead.
  const Matrix doubled = unitary_u_generalized({{lambda, 2.0 * mu}}, space).matrix();
  CHECK(max_abs(doubled - two_param) > 1e-2);
  CHECK(max_abs(doubled - unitary_u({lambda, 2.0 * mu}, space).matrix()) < 1e-12);

  const GeneralizedPoint p{{0.1, 0.05, 0.02}};
  const Matrix asc = unitary_u_generalized(p, space, FactorOrder::Ascending).matrix();
  const Matrix desc = unitary_u_generalized(p, space, FactorOrder::Descending).matrix();
  CHECK(max_abs(asc - desc) > 1e-6);
}

TEST_CASE("vacuum frame and classifying projector") {
  const TruncatedSpace space(64);
  const Frame v0 = vacuum_frame({0.0, 0.0}, 2, space);
  CHECK(max_abs(v0.matrix - space.identity().leftCols(2)) < 1e-15);
  Matrix p0 = Matrix::Zero(64, 64);
  p0(0, 0) = p0(1, 1) = 1.0;
  CHECK(max_abs(classifying_projector({0.0, 0.0}, 2, space).matrix - p0) < 1e-15);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    const ParameterPoint p{testing::random_complex(rng, 0.6), testing::random_complex(rng, 0.6)};
    const int m = 1 + trial;
    const Frame v = vacuum_frame(p, m, space);
    CHECK(max_abs(v.matrix.adjoint() * v.matrix - Matrix::Identity(m, m)) < 1e-10);
    // the frame columns are the leading columns of U
    CHECK(max_abs(v.matrix - unitary_u(p, space).matrix().leftCols(m)) == 0.0);

    // pi is invariant under the right action of U(m)
    const Matrix g = testing::random_unitary(m, rng);
    const Projector moved = project({v.matrix * g, m});
    CHECK(max_abs(moved.matrix - project(v).matrix) < 1e-12);

    const ProjectorDefects d = projector_defects(project(v));
    CHECK(d.idempotency < 1e-12);
    CHECK(d.hermiticity < 1e-14);
  }
  CHECK(projector_defects(classifying_projector({0.5, 0.3}, 3, space)).trace < 1e-10);
  CHECK_THROWS_AS(vacuum_frame({0.0, 0.0}, 64, space), std::invalid_argument);
}

TEST_CASE("isospectral family") {
  const TruncatedSpace small(16);
  const SpectrumReport trivial = isospectral_check({0.0, 0.0}, 2, small);
  CHECK(trivial.max_dev < 1e-12);
  CHECK(trivial.kernel_dim_estimate == 2);

  const TruncatedSpace space(128);
  const SpectrumReport r = isospectral_check({0.4, 0.0}, 2, space);
  CHECK(r.matched_count == 64);
  CHECK(r.max_dev < 1e-8);

  const SpectrumReport k = isospectral_check({0.2, 0.2}, 2, space);
  CHECK(k.kernel_dim_estimate >= 2);

  // H annihilates the frame
  const ParameterPoint p{0.2, 0.2};
  const Matrix u = unitary_u(p, space).matrix();
  const Matrix h = u * hamiltonian_h0(2, space).matrix * u.adjoint();
  CHECK(max_abs(h * vacuum_frame(p, 2, space).matrix) < 1e-9);
}
