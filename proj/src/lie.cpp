#include "berry/lie.hpp"

#include <string>

namespace berry {

ClosureNotStabilized::ClosureNotStabilized(int partial_dimension, int rounds)
    : NumericalError("Lie closure not stabilized after " + std::to_string(rounds) +
                     " rounds (partial dimension " + std::to_string(partial_dimension) + ")"),
      partial_(partial_dimension) {}

namespace {

class RealSpan {
 public:
  explicit RealSpan(double rel_tol) : rel_tol_(rel_tol) {}

  const std::vector<Matrix>& members() const { return members_; }
  int dimension() const { return static_cast<int>(members_.size()); }

  bool add(const Matrix& x) {
    const double norm = x.norm();
    if (norm == 0.0) return false;
    const Eigen::VectorXd v = flatten(x / norm);
    Eigen::MatrixXd stacked(v.size(), vectors_.cols() + 1);
    stacked << vectors_, v;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= rel_tol_ * sv(0)) return false;
    vectors_ = stacked;
    members_.push_back(x / norm);
    return true;
  }

  void reset_shape(Eigen::Index rows) { vectors_.resize(rows, 0); }

 private:
  static Eigen::VectorXd flatten(const Matrix& x) {
    Eigen::VectorXd v(2 * x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      v(2 * k) = x.data()[k].real();
      v(2 * k + 1) = x.data()[k].imag();
    }
    return v;
  }

  double rel_tol_;
  Eigen::MatrixXd vectors_;
  std::vector<Matrix> members_;
};

}  // namespace

int lie_closure_dimension(const std::vector<Matrix>& generators, double rel_tol, int budget) {
  if (generators.empty()) throw std::invalid_argument("no generators");
  RealSpan span(rel_tol);
  span.reset_shape(2 * generators.front().size());

  // Generators with norm below this are treated as zero.
  double scale = 0.0;
  for (const auto& g : generators) scale = std::max(scale, g.norm());
  for (const auto& g : generators)
    if (g.norm() > rel_tol * scale) span.add(g);

  for (int round = 0; round < budget; ++round) {
    bool grew = false;
    const std::vector<Matrix> current = span.members();
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        const Matrix c = commutator(current[i], current[j]);
        // members are unit norm; tiny brackets are roundoff of commuting pairs
        if (c.norm() <= rel_tol) continue;
        grew = span.add(c) || grew;
      }
    }
    if (!grew) return span.dimension();
  }
  throw ClosureNotStabilized(span.dimension(), budget);
}

}  // namespace berry
