#include "berry/holonomy.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "berry/curvature.hpp"
#include "berry/lie.hpp"
#include "berry/oracle.hpp"

namespace berry {

namespace {

Matrix one_form_at(const ParameterPoint& p, const Tangent& v, int m, const TransportOptions& options) {
  if (options.source == ConnectionSource::Closed) return contract_one_form(connection_closed(p, m), v);
  const int dim = options.dim > 0 ? options.dim : default_dimension(p, m);
  return contract_one_form(connection_numeric(p, m, TruncatedSpace(dim), options.plan).matrices, v);
}

}  // namespace

Matrix transport(const LoopPath& path, int m, const TransportOptions& options) {
  if (m < 1) throw std::invalid_argument("degeneracy m must be >= 1");
  Matrix w = Matrix::Identity(m, m);
  for (const auto& piece : path.pieces()) {
    const int n = piece.samples;
    const double h = 1.0 / n;
    auto rhs = [&](double s, const Matrix& x) -> Matrix {
      return -one_form_at(piece.position(s), piece.velocity(s), m, options) * x;
    };
    for (int k = 0; k < n; ++k) {
      const double s = k * h;
      const Matrix k1 = rhs(s, w);
      const Matrix k2 = rhs(s + 0.5 * h, w + 0.5 * h * k1);
      const Matrix k3 = rhs(s + 0.5 * h, w + 0.5 * h * k2);
      const Matrix k4 = rhs(s + h, w + h * k3);
      w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return w;
}

Matrix polar_unitary(const Matrix& w) {
  Eigen::JacobiSVD<Matrix> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Matrix log_unitary(const Matrix& w) { return w.log(); }

HolonomyResult parallel_transport(const LoopPath& loop, int m, const TransportOptions& options) {
  if (!loop.closed()) throw std::invalid_argument("holonomy requires a closed loop");
  const double length = loop.length();
  if (loop.samples() < 64.0 * length) throw std::invalid_argument("loop needs at least 64 samples per unit length");
  return {polar_unitary(transport(loop, m, options)), length, std::nullopt};
}

LoopPath coordinate_square(const ParameterPoint& corner, int plane, double eps, int samples_per_edge) {
  if (plane < 0 || plane > 5) throw std::invalid_argument("plane index must be in [0, 5]");
  const auto [u, v] = coordinate_planes()[static_cast<std::size_t>(plane)];
  const ParameterPoint b = corner + eps * u;
  const ParameterPoint c = b + eps * v;
  const ParameterPoint d = corner + eps * v;
  return LoopPath::polygon({corner, b, c, d}, samples_per_edge);
}

namespace {

Matrix plane_curvature(const ParameterPoint& p, int plane, int m) {
  const auto [u, v] = coordinate_planes()[static_cast<std::size_t>(plane)];
  if (m >= 2) return curvature_closed(p, m).evaluate(u, v);
  const ConnectionField field = [m](const ParameterPoint& q) { return connection_closed(q, m); };
  return curvature_from_components(field, p, DifferentiationPlan{1e-4, true}).evaluate(u, v);
}

}  // namespace

SmallLoopReport small_loop_check(const ParameterPoint& corner, int plane, double eps, int m) {
  if (!(eps >= 1e-4 && eps <= 1e-2)) throw std::invalid_argument("eps must lie in [1e-4, 1e-2]");
  SmallLoopReport report;
  report.plane = plane;
  report.eps = eps;
  report.curvature = plane_curvature(corner, plane, m);
  auto residual = [&](double e, Matrix* log_out) {
    const Matrix w = parallel_transport(coordinate_square(corner, plane, e), m).w;
    const Matrix log_w = log_unitary(w);
    if (log_out) *log_out = log_w / (e * e);
    return (log_w + report.curvature * (e * e)).norm();
  };
  report.residual = residual(eps, &report.log_w_over_area);
  report.residual_half = residual(0.5 * eps, nullptr);
  report.ratio = report.residual / report.residual_half;
  return report;
}

int holonomy_algebra_dimension(const std::vector<ParameterPoint>& centers, int m, int budget, double eps) {
  if (centers.size() < 2) throw std::invalid_argument("holonomy algebra needs at least two centers");
  const ParameterPoint base = centers.front();
  std::vector<Matrix> generators;
  for (const auto& center : centers) {
    Matrix to_center = Matrix::Identity(m, m);
    if (distance(base, center) > 0.0) {
      const int samples = std::max(64, static_cast<int>(std::ceil(256.0 * distance(base, center))));
      to_center = polar_unitary(transport(LoopPath::segment(base, center, samples), m));
    }
    for (int plane = 0; plane < 6; ++plane) {
      const Matrix log_w = log_unitary(parallel_transport(coordinate_square(center, plane, eps), m).w);
      generators.push_back(to_center.adjoint() * log_w * to_center);
    }
  }
  return lie_closure_dimension(generators, 1e-9, budget);
}

}  // namespace berry
