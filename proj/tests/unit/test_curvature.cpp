#include "doctest.h"

#include <algorithm>
#include <array>

#include "berry/curvature.hpp"
#include "berry/lie.hpp"
#include "support.hpp"

using namespace berry;

namespace {

// Four-form coefficient on dl^dm^dl*^dm* by summing over all permutations of
// the antisymmetric component array F_ij (indices l, m, l*, m*).
Matrix brute_force_wedge(const CurvatureForm& f) {
  std::array<std::array<Matrix, 4>, 4> comp;
  const int m = f.m;
  for (auto& row : comp)
    for (auto& x : row) x = Matrix::Zero(m, m);
  const std::array<std::pair<int, int>, 6> pairs = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  for (std::size_t k = 0; k < 6; ++k) {
    comp[pairs[k].first][pairs[k].second] = f.c[k];
    comp[pairs[k].second][pairs[k].first] = -f.c[k];
  }
  std::array<int, 4> perm = {0, 1, 2, 3};
  Matrix sum = Matrix::Zero(m, m);
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
    const double sign = inversions % 2 ? -1.0 : 1.0;
    sum += sign * comp[perm[0]][perm[1]] * comp[perm[2]][perm[3]];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return 0.25 * sum;
}

ConnectionField closed_field(int m) {
  return [m](const ParameterPoint& q) { return connection_closed(q, m); };
}

Matrix diag(std::initializer_list<cplx> v) {
  Eigen::VectorXcd d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (cplx x : v) d(k++) = x;
  return d.asDiagonal();
}

}  // namespace

TEST_CASE("basis matrices") {
  const BasisMatrices b2 = basis_matrices(2);
  Matrix e(2, 2);
  e << 0, 1, 0, 0;
  CHECK(max_abs(b2.e - e) == 0.0);
  CHECK(max_abs(b2.k - diag({0, 1})) == 0.0);
  CHECK(max_abs(b2.l - diag({1, 1})) == 0.0);
  CHECK(max_abs(b2.ek - b2.e) == 0.0);
  CHECK(max_abs(b2.kf - b2.f) == 0.0);

  const BasisMatrices b3 = basis_matrices(3);
  Matrix ek = Matrix::Zero(3, 3);
  ek(1, 2) = std::sqrt(2.0);
  CHECK(max_abs(b3.ek - ek) == 0.0);
  for (int m = 2; m < 7; ++m) {
    const BasisMatrices b = basis_matrices(m);
    CHECK(max_abs(b.kf - b.ek.adjoint()) == 0.0);
  }
  CHECK_THROWS_AS(basis_matrices(1), std::invalid_argument);
}

TEST_CASE("closed-form curvature") {
  SUBCASE("dl^dl* is -mK everywhere") {
    for (cplx mu : {cplx(0.0), cplx(0.4, 0.3), cplx(-1.2)}) {
      const CurvatureForm f = curvature_closed({cplx(0.5, 0.1), mu}, 3);
      CHECK(max_abs(f[TwoForm::LambdaLambdaBar] - diag({0, 0, -3})) == 0.0);
    }
  }
  SUBCASE("mu -> 0 limits at m = 2") {
    const CurvatureForm f = curvature_closed({0.3, 0.0}, 2);
    CHECK(max_abs(f[TwoForm::MuMuBar] - diag({-0.5, -1.5})) < 1e-15);
    Matrix expected(2, 2);
    expected << 0, -1, 0, 0;
    CHECK(max_abs(f[TwoForm::LambdaMuBar] - expected) < 1e-15);
    // continuity through the series branch
    const CurvatureForm near = curvature_closed({0.3, cplx(3e-5, 4e-5)}, 2);
    const CurvatureForm far = curvature_closed({0.3, cplx(3e-4, 4e-4)}, 2);
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(max_abs(near.c[k] - f.c[k]) < 1e-4);
      CHECK(max_abs(far.c[k] - f.c[k]) < 1e-3);
    }
  }
  SUBCASE("hermiticity relations") {
    std::mt19937 rng(21);
    for (int k = 0; k < 8; ++k) {
      const CurvatureForm f = curvature_closed({testing::random_complex(rng, 1.0), testing::random_complex(rng, 1.0)}, 2 + k % 3);
      CHECK(hermiticity_defect(f) < 1e-14);
      const auto planes = coordinate_planes();
      for (const auto& [u, v] : planes) {
        const Matrix x = f.evaluate(u, v);
        CHECK(max_abs(x + x.adjoint()) < 1e-13);
        CHECK(max_abs(f.evaluate(v, u) + x) < 1e-15);
      }
    }
  }
  SUBCASE("agrees with dA + A^A of the closed connection") {
    const ParameterPoint p{0.3, 0.4};
    const CurvatureForm exact = curvature_closed(p, 2);
    const CurvatureForm assembled = curvature_from_components(closed_field(2), p, {1e-4, false});
    for (std::size_t k = 0; k < 6; ++k) CHECK(max_abs(exact.c[k] - assembled.c[k]) < 1e-6);

    std::mt19937 rng(8);
    for (int trial = 0; trial < 6; ++trial) {
      const int m = 2 + trial % 4;
      const ParameterPoint q{testing::random_complex(rng, 1.0), testing::random_complex(rng, 1.0)};
      const CurvatureForm a = curvature_closed(q, m);
      const CurvatureForm b = curvature_from_components(closed_field(m), q, {1e-3, true});
      for (std::size_t k = 0; k < 6; ++k) CHECK(max_abs(a.c[k] - b.c[k]) < 1e-8);
    }
  }
}

TEST_CASE("curvature_from_components edge cases") {
  const ConnectionField zero = [](const ParameterPoint& q) {
    return ConnectionMatrices{Matrix::Zero(2, 2), Matrix::Zero(2, 2), q, 2};
  };
  const CurvatureForm f = curvature_from_components(zero, {0.1, 0.2}, {});
  for (const Matrix& c : f.c) CHECK(max_abs(c) == 0.0);

  const CurvatureForm abelian = curvature_from_components(closed_field(1), {cplx(0.4, 0.2), 0.3}, {});
  CHECK(std::abs(abelian[TwoForm::LambdaLambdaBar](0, 0) - cplx(-1.0)) < 1e-9);
}

TEST_CASE("F^2") {
  const double cs1 = std::cosh(1.0) * std::sinh(1.0);
  CHECK(max_abs(f_squared({0.0, 1.0}, 2).matrix - cs1 * diag({1, -5})) < 1e-14);
  CHECK(cs1 == doctest::Approx(1.81343).epsilon(1e-5));
  CHECK(max_abs(f_squared({0.0, 0.0}, 2).matrix - diag({1, -5})) < 1e-15);
  const cplx mu(0.3, -0.6);
  const double r = std::abs(mu);
  const double cs = std::cosh(r) * std::sinh(r) / r;
  // m = 3: 9/2 cs L - 18 cs K
  CHECK(max_abs(f_squared({0.2, mu}, 3).matrix - cs * diag({0, 4.5, 4.5 - 18.0})) < 1e-13);

  SUBCASE("wedge formula matches the permutation sum") {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 6; ++trial) {
      const int m = 2 + trial % 3;
      CurvatureForm random = CurvatureForm::zero({0.0, 0.0}, m);
      for (Matrix& c : random.c) c = testing::random_matrix(m, m, rng);
      CHECK(max_abs(f_squared_from_wedge(random).matrix - brute_force_wedge(random)) < 1e-12);
    }
    CHECK(max_abs(f_squared_from_wedge(CurvatureForm::zero({0.0, 0.0}, 3)).matrix) == 0.0);
  }
  SUBCASE("closed forms are consistent") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 8; ++trial) {
      const int m = 2 + trial % 3;
      const ParameterPoint p{testing::random_complex(rng, 1.0), testing::random_complex(rng, 1.0)};
      CHECK(max_abs(f_squared(p, m).matrix - brute_force_wedge(curvature_closed(p, m))) < 1e-12);
    }
  }
}

TEST_CASE("Chern trace forms") {
  const ChernTraces t = chern_trace_forms(curvature_closed({0.0, 0.0}, 2), f_squared({0.0, 0.0}, 2));
  CHECK(std::abs(t.tr_f2 - cplx(-4.0)) < 1e-15);
  CHECK(std::abs(t.tr_f[static_cast<std::size_t>(TwoForm::LambdaLambdaBar)] - cplx(-2.0)) < 1e-15);
  const ChernTraces z = chern_trace_forms(CurvatureForm::zero({0.0, 0.0}, 3), FourFormValue{Matrix::Zero(3, 3)});
  for (cplx x : z.tr_f) CHECK(std::abs(x) == 0.0);
  CHECK(std::abs(z.tr_f2) == 0.0);
  CHECK_THROWS_AS(chern_trace_forms(CurvatureForm::zero({0.0, 0.0}, 3), FourFormValue{Matrix::Zero(2, 2)}),
                  std::invalid_argument);
}

TEST_CASE("Lie closure") {
  // su(2) from two Pauli generators; u(2) once the identity is added
  Matrix sx(2, 2), sy(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -kI, kI, 0;
  CHECK(lie_closure_dimension({kI * sx, kI * sy}) == 3);
  CHECK(lie_closure_dimension({kI * sx, kI * sy, kI * Matrix::Identity(2, 2)}) == 4);
  CHECK(lie_closure_dimension({kI * sx, 2.0 * kI * sx}) == 1);
  CHECK_THROWS_AS(lie_closure_dimension({}), std::invalid_argument);
  // random anti-hermitian pair generates u(n) or su(n)
  std::mt19937 rng(2);
  const Matrix x = testing::random_matrix(4, 4, rng);
  const Matrix y = testing::random_matrix(4, 4, rng);
  CHECK(lie_closure_dimension({x - x.adjoint(), y - y.adjoint()}) == 16);
  CHECK_THROWS_AS(lie_closure_dimension({x - x.adjoint(), y - y.adjoint()}, 1e-9, 1), ClosureNotStabilized);
}

TEST_CASE("curvature span") {
  const std::vector<ParameterPoint> samples = {{0.3, 0.4}, {0.1, 0.8}};
  CHECK(curvature_span_dimension(samples, 2) == 4);
  CHECK(curvature_span_dimension(samples, 3) == 4);
  CHECK(curvature_span_dimension(samples, 4) == 4);
  CHECK_THROWS_AS(curvature_span_dimension({}, 2), std::invalid_argument);
}
