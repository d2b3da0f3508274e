#pragma once

// Finite-difference oracle on the truncated space: A = V^dagger dV from the
// frame V(l, m) = U(l, m) V0, F from dA + A^A with a numerically
// differentiated A, the global identity P dP^dP = V F V^dagger, and
// truncation convergence sweeps. Shares nothing with the closed forms except
// the 2-form component assembly.

#include <map>
#include <utility>
#include <vector>

#include "berry/curvature.hpp"
#include "berry/differentiation.hpp"
#include "berry/family.hpp"

namespace berry {

/// Auto truncation: max(64, 16m, ceil(16(1+|l|^2+|m|^2)), ceil(32/(-ln tanh|m|)))
/// rounded up to a power of two. Throws NumericalError above 1024.
int default_dimension(const ParameterPoint& p, int m);

/// Memoizes D(l) and S(m) by exact parameter value for the lifetime of one
/// computation; frames at stencil points share factors.
class FrameCache {
 public:
  FrameCache(const TruncatedSpace& space, int m) : space_(space), m_(m) {}

  /// U(p) V0
  Matrix frame(const ParameterPoint& p);
  const TruncatedSpace& space() const { return space_; }
  int m() const { return m_; }

 private:
  using Key = std::pair<double, double>;
  static Key key(cplx z) { return {z.real(), z.imag()}; }

  TruncatedSpace space_;
  int m_;
  std::map<Key, Matrix> displacements_;
  std::map<Key, Matrix> squeeze_columns_;
};

struct OracleConnection {
  ConnectionMatrices matrices;
  int dim = 0;
  double h = 0.0;
  double estimated_error = 0.0;
};

struct OracleCurvature {
  CurvatureForm form;
  int dim = 0;
  double h = 0.0;
  double estimated_error = 0.0;
};

struct GeneralizedOracleConnection {
  std::vector<Matrix> a;  // A_{l_1}, ..., A_{l_k}
  GeneralizedPoint point;
  int m = 0;
  int dim = 0;

  /// Contraction with a real tangent (dl_1, ..., dl_k).
  Matrix contract(const std::vector<cplx>& tangent) const;
};

OracleConnection connection_numeric(const ParameterPoint& p, int m, const TruncatedSpace& space,
                                    const DifferentiationPlan& plan = {});
OracleConnection connection_numeric(const ParameterPoint& p, FrameCache& cache, const DifferentiationPlan& plan);

GeneralizedOracleConnection connection_numeric(const GeneralizedPoint& p, int m, const TruncatedSpace& space,
                                               const DifferentiationPlan& plan = {},
                                               FactorOrder order = FactorOrder::Ascending);

OracleCurvature curvature_numeric(const ParameterPoint& p, int m, const TruncatedSpace& space,
                                  const DifferentiationPlan& plan = {});

struct GlobalFormReport {
  double dev_lambda_lambdabar = 0.0;
  double dev_mu_mubar = 0.0;
  double max_deviation = 0.0;
  int dim = 0;
  int block = 0;  // compared rows/cols [0, block)
};

/// dl^dl* and dm^dm* components of P dP^dP against V F V^dagger, with F from
/// curvature_numeric.
GlobalFormReport global_form_check(const ParameterPoint& p, int m, const TruncatedSpace& space,
                                   const DifferentiationPlan& plan = {});

struct ConvergenceReport {
  std::vector<int> dims;
  std::vector<double> successive_diffs;  // size dims.size() - 1
  bool converged = false;
};

ConvergenceReport convergence_report(const ParameterPoint& p, int m, const DifferentiationPlan& plan,
                                     const std::vector<int>& dims);

}  // namespace berry
