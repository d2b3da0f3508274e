#include "berry/oracle.hpp"

#include <bit>
#include <cmath>

namespace berry {

int default_dimension(const ParameterPoint& p, int m) {
  const double r = std::abs(p.mu);
  double need = std::max({64.0, 16.0 * m, std::ceil(16.0 * (1.0 + std::norm(p.lambda) + r * r))});
  if (r > 0.0) {
    const double decay = -std::log(std::tanh(r));
    need = std::max(need, decay > 0.0 ? std::ceil(32.0 / decay) : HUGE_VAL);
  }
  if (!(need <= 1024.0)) throw NumericalError("parameters too large for the truncated space (needs D > 1024)");
  return static_cast<int>(std::bit_ceil(static_cast<unsigned>(need)));
}

Matrix FrameCache::frame(const ParameterPoint& p) {
  auto d = displacements_.find(key(p.lambda));
  if (d == displacements_.end())
    d = displacements_.emplace(key(p.lambda), displacement(p.lambda, space_).matrix()).first;
  auto s = squeeze_columns_.find(key(p.mu));
  if (s == squeeze_columns_.end())
    s = squeeze_columns_.emplace(key(p.mu), squeeze(p.mu, space_).matrix().leftCols(m_)).first;
  return d->second * s->second;
}

namespace {

// Largest frame amplitude on the top levels: how much of the frame reaches
// the truncation edge.
double edge_weight(const Matrix& frame) {
  const Eigen::Index rows = std::min<Eigen::Index>(4, frame.rows());
  return max_abs(frame.bottomRows(rows));
}

}  // namespace

OracleConnection connection_numeric(const ParameterPoint& p, FrameCache& cache, const DifferentiationPlan& plan) {
  const Matrix v = cache.frame(p);
  const WirtingerPair dl = wirtinger_derivative([&](cplx z) { return cache.frame({z, p.mu}); }, p.lambda, plan);
  const WirtingerPair dm = wirtinger_derivative([&](cplx z) { return cache.frame({p.lambda, z}); }, p.mu, plan);
  OracleConnection out;
  out.matrices = {v.adjoint() * dl.d_z, v.adjoint() * dm.d_z, p, cache.m()};
  out.dim = cache.space().dim();
  out.h = plan.h;
  out.estimated_error = std::max(plan.h * plan.h, edge_weight(v));
  return out;
}

OracleConnection connection_numeric(const ParameterPoint& p, int m, const TruncatedSpace& space,
                                    const DifferentiationPlan& plan) {
  if (m < 1 || m >= space.dim()) throw std::invalid_argument("degeneracy m out of range for the dimension");
  FrameCache cache(space, m);
  return connection_numeric(p, cache, plan);
}

Matrix GeneralizedOracleConnection::contract(const std::vector<cplx>& tangent) const {
  if (tangent.size() != a.size()) throw std::invalid_argument("tangent length does not match parameter count");
  Matrix out = Matrix::Zero(m, m);
  for (std::size_t j = 0; j < a.size(); ++j)
    out += a[j] * tangent[j] - a[j].adjoint() * std::conj(tangent[j]);
  return out;
}

GeneralizedOracleConnection connection_numeric(const GeneralizedPoint& p, int m, const TruncatedSpace& space,
                                               const DifferentiationPlan& plan, FactorOrder order) {
  if (static_cast<int>(p.lambdas.size()) != m)
    throw std::invalid_argument("generalized point must have m parameters");
  const Matrix v = vacuum_frame_generalized(p, m, space, order).matrix;
  GeneralizedOracleConnection out{{}, p, m, space.dim()};
  for (std::size_t j = 0; j < p.lambdas.size(); ++j) {
    auto frame_at = [&](cplx z) {
      GeneralizedPoint q = p;
      q.lambdas[j] = z;
      return vacuum_frame_generalized(q, m, space, order).matrix;
    };
    out.a.push_back(v.adjoint() * wirtinger_derivative(frame_at, p.lambdas[j], plan).d_z);
  }
  return out;
}

OracleCurvature curvature_numeric(const ParameterPoint& p, int m, const TruncatedSpace& space,
                                  const DifferentiationPlan& plan) {
  if (m < 1 || m >= space.dim()) throw std::invalid_argument("degeneracy m out of range for the dimension");
  FrameCache cache(space, m);
  double edge = 0.0;
  const ConnectionField field = [&](const ParameterPoint& q) {
    OracleConnection c = connection_numeric(q, cache, plan);
    edge = std::max(edge, c.estimated_error);
    return c.matrices;
  };
  OracleCurvature out;
  out.form = curvature_from_components(field, p, plan);
  out.dim = space.dim();
  out.h = plan.h;
  out.estimated_error = edge;
  return out;
}

GlobalFormReport global_form_check(const ParameterPoint& p, int m, const TruncatedSpace& space,
                                   const DifferentiationPlan& plan) {
  FrameCache cache(space, m);
  auto projector = [&](const ParameterPoint& q) -> Matrix {
    const Matrix v = cache.frame(q);
    return v * v.adjoint();
  };
  const Matrix v = cache.frame(p);
  const Matrix pr = projector(p);
  const WirtingerPair dl = wirtinger_derivative([&](cplx z) { return projector({z, p.mu}); }, p.lambda, plan);
  const WirtingerPair dm = wirtinger_derivative([&](cplx z) { return projector({p.lambda, z}); }, p.mu, plan);
  const Matrix lhs_ll = pr * (dl.d_z * dl.d_zbar - dl.d_zbar * dl.d_z);
  const Matrix lhs_mm = pr * (dm.d_z * dm.d_zbar - dm.d_zbar * dm.d_z);

  const CurvatureForm f = curvature_numeric(p, m, space, plan).form;
  const Matrix rhs_ll = v * f[TwoForm::LambdaLambdaBar] * v.adjoint();
  const Matrix rhs_mm = v * f[TwoForm::MuMuBar] * v.adjoint();

  GlobalFormReport report;
  report.dim = space.dim();
  report.block = space.dim() / 2;
  const int b = report.block;
  report.dev_lambda_lambdabar = max_abs((lhs_ll - rhs_ll).topLeftCorner(b, b));
  report.dev_mu_mubar = max_abs((lhs_mm - rhs_mm).topLeftCorner(b, b));
  report.max_deviation = std::max(report.dev_lambda_lambdabar, report.dev_mu_mubar);
  return report;
}

ConvergenceReport convergence_report(const ParameterPoint& p, int m, const DifferentiationPlan& plan,
                                     const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("empty dimension list");
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] < 4 * m) throw std::invalid_argument("each dimension must be at least 4m");
    if (k > 0 && dims[k] <= dims[k - 1]) throw std::invalid_argument("dimension list must be ascending");
  }
  ConvergenceReport report;
  report.dims = dims;
  ConnectionMatrices previous;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const ConnectionMatrices current = connection_numeric(p, m, TruncatedSpace(dims[k]), plan).matrices;
    if (k > 0)
      report.successive_diffs.push_back(std::max(max_abs(current.a_lambda - previous.a_lambda),
                                                 max_abs(current.a_mu - previous.a_mu)));
    previous = current;
  }
  report.converged = !report.successive_diffs.empty() && report.successive_diffs.back() < 1e-8;
  return report;
}

}  // namespace berry
