#pragma once

#include <functional>
#include <vector>

#include "berry/family.hpp"

namespace berry {

/// One smooth piece of a path, parameterized by s in [0, 1].
struct PathPiece {
  std::function<ParameterPoint(double)> position;
  std::function<Tangent(double)> velocity;  // d position / ds
  int samples = 64;                          // integration steps on this piece
};

/// Piecewise-smooth path in (lambda, mu) space. Pieces are traversed in order;
/// integrators step each piece separately so that velocity jumps fall on grid
/// nodes.
class LoopPath {
 public:
  LoopPath() = default;
  explicit LoopPath(std::vector<PathPiece> pieces);

  const std::vector<PathPiece>& pieces() const { return pieces_; }
  ParameterPoint start() const;
  ParameterPoint end() const;
  int samples() const;

  /// Endpoint matches start within 1e-12.
  bool closed() const;
  /// Euclidean length in R^4 = C^2.
  double length() const;

  LoopPath reversed() const;
  /// This path followed by `next`.
  LoopPath then(const LoopPath& next) const;

  static LoopPath segment(const ParameterPoint& from, const ParameterPoint& to, int samples);
  /// Closed polygon through the vertices (the last edge returns to the first).
  static LoopPath polygon(const std::vector<ParameterPoint>& vertices, int samples_per_edge);
  /// Counter-clockwise circle in the lambda plane around `center`, mu fixed.
  static LoopPath lambda_circle(const ParameterPoint& center, double radius, int samples);
  /// Counter-clockwise circle in the mu plane around `center`, lambda fixed.
  static LoopPath mu_circle(const ParameterPoint& center, double radius, int samples);

 private:
  std::vector<PathPiece> pieces_;
};

double distance(const ParameterPoint& p, const ParameterPoint& q);

}  // namespace berry
