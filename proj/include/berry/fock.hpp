#pragma once

// Truncated Fock space: ladder and su(1,1) operators on the first D number
// states, exact-unitary exponentials, and the two disentangling identities
// used to factor the displacement and squeeze operators.

#include <string>

#include "berry/types.hpp"

namespace berry {

/// Fock levels |0>, ..., |D-1>.
class TruncatedSpace {
 public:
  explicit TruncatedSpace(int dim);

  int dim() const { return dim_; }
  Matrix identity() const { return Matrix::Identity(dim_, dim_); }

  friend bool operator==(const TruncatedSpace&, const TruncatedSpace&) = default;

 private:
  int dim_;
};

struct TruncatedOperator {
  Matrix matrix;
  TruncatedSpace space;
  std::string label;
};

/// A matrix known to be unitary to roundoff. Only produced by exponentials of
/// anti-hermitian generators and products thereof.
class UnitaryOperator {
 public:
  const Matrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  UnitaryOperator operator*(const UnitaryOperator& rhs) const {
    return UnitaryOperator(matrix_ * rhs.matrix_);
  }
  UnitaryOperator adjoint() const { return UnitaryOperator(matrix_.adjoint()); }

  /// max |U^dagger U - 1|
  double unitarity_defect() const;

  static UnitaryOperator identity(int dim) { return UnitaryOperator(Matrix::Identity(dim, dim)); }

 private:
  explicit UnitaryOperator(Matrix m) : matrix_(std::move(m)) {}
  Matrix matrix_;

  friend UnitaryOperator exp_antihermitian(const Matrix& generator);
};

struct LadderOperators {
  TruncatedOperator a;
  TruncatedOperator a_dag;
  TruncatedOperator number;
  TruncatedOperator k_plus;   // (a^dag)^2 / 2
  TruncatedOperator k_minus;  // a^2 / 2
  TruncatedOperator k_3;      // (a^dag a + 1/2) / 2
};

LadderOperators make_operators(const TruncatedSpace& space);

/// e^G for anti-hermitian G, through the eigendecomposition of the hermitian
/// matrix iG. Throws std::invalid_argument if G is not anti-hermitian.
UnitaryOperator exp_antihermitian(const Matrix& generator);
inline UnitaryOperator exp_antihermitian(const TruncatedOperator& generator) {
  return exp_antihermitian(generator.matrix);
}

/// Generator lambda a^dag - conj(lambda) a.
Matrix displacement_generator(cplx lambda, const TruncatedSpace& space);
/// Generator mu K+ - conj(mu) K-.
Matrix squeeze_generator(cplx mu, const TruncatedSpace& space);

/// exp(lambda a^dag - conj(lambda) a)
UnitaryOperator displacement(cplx lambda, const TruncatedSpace& space);
/// exp(mu K+ - conj(mu) K-)
UnitaryOperator squeeze(cplx mu, const TruncatedSpace& space);

/// Exponential of a nilpotent (strictly triangular) matrix by its finite
/// power series.
Matrix exp_nilpotent(const Matrix& x);

/// Comparison of a truncated exponential against a factored right-hand
/// side. Entries with row and column index below dim - buffer form the
/// interior; everything else is the boundary.
struct IdentityReport {
  std::string identity;
  double interior_dev = 0.0;
  double boundary_dev = 0.0;
  int dim = 0;
  int buffer = 0;
};

struct BchReport {
  IdentityReport displacement;  // e^{la^+ - l*a} = e^{-|l|^2/2} e^{la^+} e^{-l*a}
  IdentityReport squeeze;       // e^{mK+ - m*K-} = e^{zK+} e^{log(1-|z|^2)K3} e^{-z*K-}
};

/// Buffer width prescribed for a parameter size: max(4, ceil(2|l|^2 + 8|m|)).
int nominal_buffer(cplx lambda, cplx mu);

/// Smallest b such that exp(generator) on D levels agrees with the same
/// generator exponentiated on 2D levels (restricted back to D) to within
/// tol on rows/cols [0, D-b). `make_generator` builds the generator for a
/// given space.
template <class GeneratorFn>
int leakage_buffer(GeneratorFn&& make_generator, const TruncatedSpace& space, double tol = 1e-12);

BchReport bch_identity_report(cplx lambda, cplx mu, const TruncatedSpace& space);

}  // namespace berry

#include "berry/detail/leakage.hpp"
