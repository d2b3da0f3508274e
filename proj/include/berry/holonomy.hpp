#pragma once

// Parallel transport of the vacuum frame: W' = -A(gamma(t); gamma'(t)) W,
// W(0) = 1, integrated by classical RK4 on each path piece. The holonomy of a
// closed loop is W(1), projected back onto U(m) by polar decomposition.

#include <optional>
#include <vector>

#include "berry/connection.hpp"
#include "berry/differentiation.hpp"
#include "berry/loop.hpp"

namespace berry {

enum class ConnectionSource { Closed, Numeric };

struct TransportOptions {
  ConnectionSource source = ConnectionSource::Closed;
  int dim = 0;  // numeric source only; 0 selects default_dimension at each point
  DifferentiationPlan plan{};
};

struct HolonomyResult {
  Matrix w;
  double path_length = 0.0;
  std::optional<int> algebra_dim;
};

/// Transport along any path (open or closed); no re-unitarization.
Matrix transport(const LoopPath& path, int m, const TransportOptions& options = {});

/// Holonomy of a closed loop. Requires at least 64 samples per unit length.
HolonomyResult parallel_transport(const LoopPath& loop, int m, const TransportOptions& options = {});

/// Nearest unitary (polar factor).
Matrix polar_unitary(const Matrix& w);
/// Principal logarithm of a matrix near the identity.
Matrix log_unitary(const Matrix& w);

/// Square of side eps based at `corner` in coordinate plane `plane` (see
/// coordinate_planes()), counter-clockwise in that plane's orientation.
LoopPath coordinate_square(const ParameterPoint& corner, int plane, double eps, int samples_per_edge = 32);

struct SmallLoopReport {
  int plane = 0;
  double eps = 0.0;
  double residual = 0.0;       // ||log W + F(u,v) eps^2||_F
  double residual_half = 0.0;  // same at eps / 2
  double ratio = 0.0;          // residual / residual_half, ~8 for cubic order
  Matrix log_w_over_area;      // log W / eps^2 at eps
  Matrix curvature;            // F(u, v) at the corner
};

/// Non-abelian Stokes at leading order: log W = -F(u,v) eps^2 + O(eps^3).
/// For m = 1 the curvature comes from differentiating the closed connection.
SmallLoopReport small_loop_check(const ParameterPoint& corner, int plane, double eps, int m);

/// Ambrose-Singer sampling: logs of small-loop holonomies in all six planes at
/// each center, conjugated to centers[0] by transport along straight
/// segments, closed under commutators.
int holonomy_algebra_dimension(const std::vector<ParameterPoint>& centers, int m, int budget = 16,
                               double eps = 1e-2);

}  // namespace berry
