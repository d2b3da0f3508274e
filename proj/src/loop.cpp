#include "berry/loop.hpp"

#include <cmath>
#include <numbers>

namespace berry {

double distance(const ParameterPoint& p, const ParameterPoint& q) {
  return std::sqrt(std::norm(p.lambda - q.lambda) + std::norm(p.mu - q.mu));
}

LoopPath::LoopPath(std::vector<PathPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw std::invalid_argument("path needs at least one piece");
  for (const auto& piece : pieces_)
    if (piece.samples < 1) throw std::invalid_argument("path piece needs at least one sample");
}

ParameterPoint LoopPath::start() const { return pieces_.front().position(0.0); }
ParameterPoint LoopPath::end() const { return pieces_.back().position(1.0); }

int LoopPath::samples() const {
  int total = 0;
  for (const auto& piece : pieces_) total += piece.samples;
  return total;
}

bool LoopPath::closed() const { return distance(start(), end()) <= 1e-12; }

double LoopPath::length() const {
  // Composite Simpson per piece.
  double total = 0.0;
  for (const auto& piece : pieces_) {
    const int n = 2 * std::max(piece.samples, 8);
    auto speed = [&](double s) {
      const Tangent v = piece.velocity(s);
      return std::sqrt(std::norm(v.d_lambda) + std::norm(v.d_mu));
    };
    double acc = speed(0.0) + speed(1.0);
    for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * speed(static_cast<double>(k) / n);
    total += acc / (3.0 * n);
  }
  return total;
}

LoopPath LoopPath::reversed() const {
  std::vector<PathPiece> out;
  out.reserve(pieces_.size());
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
    auto position = it->position;
    auto velocity = it->velocity;
    out.push_back({[position](double s) { return position(1.0 - s); },
                   [velocity](double s) { return -1.0 * velocity(1.0 - s); }, it->samples});
  }
  return LoopPath(std::move(out));
}

LoopPath LoopPath::then(const LoopPath& next) const {
  std::vector<PathPiece> out = pieces_;
  out.insert(out.end(), next.pieces_.begin(), next.pieces_.end());
  return LoopPath(std::move(out));
}

LoopPath LoopPath::segment(const ParameterPoint& from, const ParameterPoint& to, int samples) {
  const Tangent delta = to - from;
  return LoopPath({{[from, delta](double s) { return from + s * delta; }, [delta](double) { return delta; },
                    samples}});
}

LoopPath LoopPath::polygon(const std::vector<ParameterPoint>& vertices, int samples_per_edge) {
  if (vertices.size() < 2) throw std::invalid_argument("polygon needs at least two vertices");
  std::vector<PathPiece> pieces;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const ParameterPoint& a = vertices[k];
    const ParameterPoint& b = vertices[(k + 1) % vertices.size()];
    const Tangent delta = b - a;
    pieces.push_back(
        {[a, delta](double s) { return a + s * delta; }, [delta](double) { return delta; }, samples_per_edge});
  }
  return LoopPath(std::move(pieces));
}

constexpr double two_pi = 2.0 * std::numbers::pi;

LoopPath LoopPath::lambda_circle(const ParameterPoint& center, double radius, int samples) {
  return LoopPath(std::vector<PathPiece>{{[center, radius](double s) {
                      return ParameterPoint{center.lambda + radius * std::exp(kI * two_pi * s), center.mu};
                    },
                    [radius](double s) { return Tangent{kI * two_pi * radius * std::exp(kI * two_pi * s), 0.0}; },
                    samples}});
}

LoopPath LoopPath::mu_circle(const ParameterPoint& center, double radius, int samples) {
  return LoopPath(std::vector<PathPiece>{{[center, radius](double s) {
                      return ParameterPoint{center.lambda, center.mu + radius * std::exp(kI * two_pi * s)};
                    },
                    [radius](double s) { return Tangent{0.0, kI * two_pi * radius * std::exp(kI * two_pi * s)}; },
                    samples}});
}

}  // namespace berry
