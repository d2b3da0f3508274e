#pragma once

// The isospectral family H(l, m) = U H0 U^dagger with U = D(l) S(m), its
// degenerate-vacuum frame and the classifying projector, plus the
// multi-parameter generalization built from (l_j (a^+)^j - conj(l_j) a^j)/j.

#include <vector>

#include "berry/fock.hpp"

namespace berry {

struct ParameterPoint {
  cplx lambda{0.0};
  cplx mu{0.0};

  friend bool operator==(const ParameterPoint&, const ParameterPoint&) = default;
};

/// A real tangent vector of C^2, given by its complex components
/// (dlambda, dmu); dlambda-bar and dmu-bar are their conjugates.
struct Tangent {
  cplx d_lambda{0.0};
  cplx d_mu{0.0};
};

inline ParameterPoint operator+(const ParameterPoint& p, const Tangent& t) {
  return {p.lambda + t.d_lambda, p.mu + t.d_mu};
}
inline Tangent operator*(double s, const Tangent& t) { return {s * t.d_lambda, s * t.d_mu}; }
inline Tangent operator-(const ParameterPoint& q, const ParameterPoint& p) {
  return {q.lambda - p.lambda, q.mu - p.mu};
}

struct GeneralizedPoint {
  std::vector<cplx> lambdas;
};

/// Degenerate-vacuum frame V = U V0 (D x m, V^dagger V = 1).
struct Frame {
  Matrix matrix;
  int m = 0;
};

/// Rank-m orthogonal projector P = V V^dagger.
struct Projector {
  Matrix matrix;
  int m = 0;
};

/// Factor order of the generalized product. Ascending applies the j = 1
/// factor leftmost.
enum class FactorOrder { Ascending, Descending };

/// Diagonal n(n-1)...(n-m+1) (units hbar omega = 1). Throws if m < 1 or m >= D.
TruncatedOperator hamiltonian_h0(int m, const TruncatedSpace& space);

UnitaryOperator unitary_u(const ParameterPoint& p, const TruncatedSpace& space);
UnitaryOperator unitary_u_generalized(const GeneralizedPoint& p, const TruncatedSpace& space,
                                      FactorOrder order = FactorOrder::Ascending);

Frame vacuum_frame(const ParameterPoint& p, int m, const TruncatedSpace& space);
Frame vacuum_frame_generalized(const GeneralizedPoint& p, int m, const TruncatedSpace& space,
                               FactorOrder order = FactorOrder::Ascending);

/// pi(V) = V V^dagger
Projector project(const Frame& frame);
Projector classifying_projector(const ParameterPoint& p, int m, const TruncatedSpace& space);

struct ProjectorDefects {
  double idempotency = 0.0;  // max|P^2 - P|
  double hermiticity = 0.0;  // max|P^dagger - P|
  double trace = 0.0;        // |tr P - m|
};
ProjectorDefects projector_defects(const Projector& p);

struct SpectrumReport {
  int matched_count = 0;       // lowest floor(D/2) eigenvalues compared
  double max_dev = 0.0;        // over the matched prefix
  double boundary_dev = 0.0;   // over the remaining (truncation-exposed) levels
  int kernel_dim_estimate = 0; // eigenvalues of H with |e| < kernel_tol
};

SpectrumReport isospectral_check(const ParameterPoint& p, int m, const TruncatedSpace& space,
                                 double kernel_tol = 1e-8);

}  // namespace berry
