#pragma once

// Curvature F = dA + A^A of the vacuum connection. Components are stored in
// the ordered 2-form basis
//   dl^dm, dl^dl*, dl^dm*, dm^dl*, dm^dm*, dl*^dm*
// and every sign in this module is relative to that order.

#include <array>
#include <functional>
#include <vector>

#include "berry/connection.hpp"
#include "berry/differentiation.hpp"

namespace berry {

enum class TwoForm : int {
  LambdaMu = 0,
  LambdaLambdaBar = 1,
  LambdaMuBar = 2,
  MuLambdaBar = 3,
  MuMuBar = 4,
  LambdaBarMuBar = 5,
};

inline constexpr std::array<const char*, 6> kTwoFormNames = {
    "dlambda^dmu", "dlambda^dlambdabar", "dlambda^dmubar", "dmu^dlambdabar", "dmu^dmubar", "dlambdabar^dmubar"};

struct BasisMatrices {
  Matrix e, f, k, l, ek, kf;
};

/// E (superdiagonal sqrt(1..m-1)), F = E^dagger, K = diag(0,..,0,1),
/// L = diag(0,..,0,1,1), EK and KF = (EK)^dagger. Requires m >= 2.
BasisMatrices basis_matrices(int m);

struct CurvatureForm {
  std::array<Matrix, 6> c;
  ParameterPoint point;
  int m = 0;

  const Matrix& operator[](TwoForm w) const { return c[static_cast<std::size_t>(w)]; }
  Matrix& operator[](TwoForm w) { return c[static_cast<std::size_t>(w)]; }

  /// F(u, v) for real tangent vectors u, v; anti-hermitian.
  Matrix evaluate(const Tangent& u, const Tangent& v) const;

  static CurvatureForm zero(const ParameterPoint& p, int m);
};

/// Largest violation of the relations implied by F^dagger = -F:
/// C_ll* and C_mm* hermitian, C_ml* = C_lm*^dagger, C_l*m* = -C_lm^dagger.
double hermiticity_defect(const CurvatureForm& f);

/// The six real coordinate 2-planes of (Re l, Im l, Re m, Im m), in the
/// order (Rl,Il) (Rl,Rm) (Rl,Im) (Il,Rm) (Il,Im) (Rm,Im).
std::array<std::pair<Tangent, Tangent>, 6> coordinate_planes();

CurvatureForm curvature_closed(const ParameterPoint& p, int m);

using ConnectionField = std::function<ConnectionMatrices(const ParameterPoint&)>;

/// Assembles all six components from Wirtinger central differences of A_l,
/// A_m and the commutator terms of dA + A^A.
CurvatureForm curvature_from_components(const ConnectionField& field, const ParameterPoint& p,
                                        const DifferentiationPlan& plan);

/// Coefficient of dl^dm^dl*^dm*.
struct FourFormValue {
  Matrix matrix;
};

/// Closed form (cs/r) (m^2(m-1)/4 L - m^2(m+1)/2 K), cs = cosh r sinh r.
FourFormValue f_squared(const ParameterPoint& p, int m);
/// F^F expanded in the fixed basis:
///   C1C6 + C6C1 - C2C5 - C5C2 + C3C4 + C4C3.
FourFormValue f_squared_from_wedge(const CurvatureForm& f);

struct ChernTraces {
  std::array<cplx, 6> tr_f{};
  cplx tr_f2{};
};

ChernTraces chern_trace_forms(const CurvatureForm& f, const FourFormValue& f2);

/// Dimension of the real Lie algebra generated by F(u, v) over the sample
/// points and the six coordinate planes.
int curvature_span_dimension(const std::vector<ParameterPoint>& samples, int m, int budget = 16);

}  // namespace berry
