// Acceptance criteria: one PASS/FAIL line each, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "berry/cli.hpp"
#include "berry/connection.hpp"
#include "berry/curvature.hpp"
#include "berry/holonomy.hpp"
#include "berry/oracle.hpp"
#include "berry/verify.hpp"

using namespace berry;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& text) {
  std::printf("[%s] %d: %s\n", ok ? "PASS" : "FAIL", id, text.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// |lambda|, |mu| in {0, .25, .5, .75, 1}, each with phase 0 or pi/4.
std::vector<ParameterPoint> acceptance_grid() {
  const cplx tilt = std::polar(1.0, std::numbers::pi / 4.0);
  std::vector<ParameterPoint> grid;
  for (double rl : {0.0, 0.25, 0.5, 0.75, 1.0})
    for (double rm : {0.0, 0.25, 0.5, 0.75, 1.0})
      for (cplx pl : {cplx(1.0), tilt})
        for (cplx pm : {cplx(1.0), tilt}) grid.push_back({rl * pl, rm * pm});
  return grid;
}

ConnectionMatrices slice(const ConnectionMatrices& c, int m) {
  return {c.a_lambda.topLeftCorner(m, m), c.a_mu.topLeftCorner(m, m), c.point, m};
}

// Criteria 1 and 2. The m = 4 oracle connection contains the m = 2, 3 ones
// as leading blocks, so each grid point is differentiated once.
void grid_criteria() {
  const auto grid = acceptance_grid();
  const TruncatedSpace space(128);
  const DifferentiationPlan plan{1e-4, false};
  const std::vector<int> ms = {2, 3, 4};

  const auto t0 = std::chrono::steady_clock::now();
  double conn_dev = 0.0;
  for (const auto& p : grid) {
    FrameCache cache(space, 4);
    const ConnectionMatrices numeric = connection_numeric(p, cache, plan).matrices;
    for (int m : ms) {
      const ConnectionMatrices exact = connection_closed(p, m);
      const ConnectionMatrices n = slice(numeric, m);
      conn_dev = std::max({conn_dev, max_abs(exact.a_lambda - n.a_lambda), max_abs(exact.a_mu - n.a_mu)});
    }
  }
  const double conn_time = seconds_since(t0);
  report(1, conn_dev < 1e-6 && conn_time < 60.0,
         fmt("closed vs oracle connection, %zu points x m in {2,3,4}, D=128, h=1e-4: max dev %.3e (< 1e-6), %.1f s (< 60 s)",
             grid.size(), conn_dev, conn_time));

  double curv_dev = 0.0;
  double ll_closed = 0.0;
  double ll_numeric = 0.0;
  for (const auto& p : grid) {
    FrameCache cache(space, 4);
    for (int m : ms) {
      const ConnectionField field = [&](const ParameterPoint& q) {
        return slice(connection_numeric(q, cache, plan).matrices, m);
      };
      const CurvatureForm numeric = curvature_from_components(field, p, plan);
      const CurvatureForm exact = curvature_closed(p, m);
      for (std::size_t k = 0; k < 6; ++k) curv_dev = std::max(curv_dev, max_abs(exact.c[k] - numeric.c[k]));
      const Matrix minus_mk = -static_cast<double>(m) * basis_matrices(m).k;
      ll_closed = std::max(ll_closed, max_abs(exact[TwoForm::LambdaLambdaBar] - minus_mk));
      ll_numeric = std::max(ll_numeric, max_abs(numeric[TwoForm::LambdaLambdaBar] - minus_mk));
    }
  }
  report(2, curv_dev < 1e-5 && ll_closed == 0.0 && ll_numeric < 1e-5,
         fmt("closed vs oracle curvature, all six components: max dev %.3e (< 1e-5); dl^dl* = -mK: closed dev %.1e "
             "(exact), oracle dev %.3e (< 1e-5)",
             curv_dev, ll_closed, ll_numeric));
}

void criterion_3() {
  const std::vector<ParameterPoint> points = {
      {0.0, 0.5}, {0.3, 0.0}, {cplx(0.2, 0.4), cplx(0.5, -0.3)}, {cplx(-0.6, 0.1), cplx(0.0, 0.9)}, {1.0, 1.0}};
  double pair = 0.0;
  double closed = 0.0;
  std::string discrepancies;
  for (int m : {2, 3}) {
    for (const auto& p : points) {
      const TruncatedSpace space(default_dimension(p, m));
      const Matrix f2 = f_squared(p, m).matrix;
      const Matrix w_closed = f_squared_from_wedge(curvature_closed(p, m)).matrix;
      const Matrix w_oracle = f_squared_from_wedge(curvature_numeric(p, m, space).form).matrix;
      pair = std::max(pair, max_abs(w_closed - w_oracle));
      const double d = std::max(max_abs(f2 - w_closed), max_abs(f2 - w_oracle));
      closed = std::max(closed, d);
      if (d >= 1e-5) discrepancies += " f_squared@m=" + std::to_string(m);
    }
  }
  report(3, pair < 1e-5,
         fmt("F^2 three-way, 5 points x m in {2,3}: wedge(closed F) vs wedge(oracle F) %.3e (< 1e-5); closed F^2 vs "
             "wedges %.3e; discrepancy report: %s",
             pair, closed, discrepancies.empty() ? "none" : discrepancies.c_str()));
}

void criterion_4() {
  const std::vector<ParameterPoint> centers = {{0.3, 0.4}, {cplx(0.1, 0.2), cplx(0.0, 0.8)}, {0.5, -0.3}};
  const int hol2 = holonomy_algebra_dimension(centers, 2);
  const int span2 = curvature_span_dimension(centers, 2);
  const int hol3 = holonomy_algebra_dimension(centers, 3);
  const int span3 = curvature_span_dimension(centers, 3);
  const bool ok = hol2 == 4 && span2 == 4 && hol3 < 9 && span3 < 9 && hol3 == span3;
  report(4, ok,
         fmt("holonomy algebra / curvature span: m=2 -> %d / %d (want 4 / 4); m=3 -> %d / %d (want < 9 and equal)", hol2,
             span2, hol3, span3));
}

void criterion_5() {
  const TruncatedSpace space(64);
  const cplx tilt = std::polar(1.0, std::numbers::pi / 4.0);
  double worst = 0.0;
  int widest = 0;
  int count = 0;
  for (double rl : {0.0, 0.25, 0.5})
    for (double rm : {0.0, 0.25, 0.5})
      for (cplx pl : {cplx(1.0), tilt})
        for (cplx pm : {cplx(1.0), tilt}) {
          const BchReport r = bch_identity_report(rl * pl, rm * pm, space);
          worst = std::max({worst, r.displacement.interior_dev, r.squeeze.interior_dev});
          widest = std::max({widest, r.displacement.buffer, r.squeeze.buffer});
          ++count;
        }
  report(5, worst < 1e-8 && widest <= 48,
         fmt("BCH and disentangling identities, %d points with |lambda|,|mu| <= 0.5, D=64: interior dev %.3e (< 1e-8), "
             "widest buffer %d (interior block >= 16 levels)",
             count, worst, widest));
}

void criterion_6() {
  const int d = 64;
  const LadderOperators ops = make_operators(TruncatedSpace(d));
  const int b = d - 2;
  auto dev = [&](const Matrix& x) { return max_abs(x.topLeftCorner(b, b)); };
  const Matrix one = Matrix::Identity(d, d);
  const double aa = max_abs((commutator(ops.a.matrix, ops.a_dag.matrix) - one).topLeftCorner(d - 1, d - 1));
  const double pm = dev(commutator(ops.k_plus.matrix, ops.k_minus.matrix) + 2.0 * ops.k_3.matrix);
  const double p3 = dev(commutator(ops.k_3.matrix, ops.k_plus.matrix) - ops.k_plus.matrix);
  const double m3 = dev(commutator(ops.k_3.matrix, ops.k_minus.matrix) + ops.k_minus.matrix);
  const double worst = std::max({aa, pm, p3, m3});
  report(6, worst <= 1e-12,
         fmt("[a,a^+]=1, [K+,K-]=-2K3, [K3,K+-]=+-K+- on interior blocks at D=64: max dev %.3e (<= 1e-12)", worst));
}

void criterion_7() {
  double worst = 0.0;
  for (const ParameterPoint& center : {ParameterPoint{0.0, 0.0}, ParameterPoint{cplx(0.2, 0.1), cplx(0.3, -0.2)}})
    for (double r : {0.5, 1.0})
      for (int m = 1; m <= 4; ++m) {
        const auto phases = berry_phase_diagonal(LoopPath::lambda_circle(center, r, 4096), m);
        for (double phi : phases) worst = std::max(worst, std::abs(phi - 2.0 * std::numbers::pi * r * r));
      }
  report(7, worst < 1e-6,
         fmt("lambda-circle diagonal phases 2 pi r^2, r in {0.5,1}, m <= 4, 4096 samples: max dev %.3e (< 1e-6)", worst));
}

void criterion_8() {
  double lo = 1e300;
  double hi = 0.0;
  for (const ParameterPoint& center : {ParameterPoint{cplx(0.3, -0.1), cplx(0.2, 0.35)}, ParameterPoint{-0.4, cplx(0.0, 0.7)}})
    for (int plane = 0; plane < 6; ++plane) {
      const SmallLoopReport r = small_loop_check(center, plane, 4e-3, 2);
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, r.ratio);
    }
  report(8, lo >= 6.0 && hi <= 10.0,
         fmt("small-loop residual ratio under eps halving (4e-3 -> 2e-3), six planes x two centers, m=2: [%.3f, %.3f] "
             "(within [6, 10])",
             lo, hi));
}

void criterion_9() {
  const TruncatedSpace space(128);
  const ParameterPoint p{cplx(0.25, -0.1), cplx(0.2, 0.3)};
  double reduce = 0.0;
  double literal = 0.0;
  for (int m : {2, 3}) {
    const OracleConnection two = connection_numeric(p, m, space);
    std::vector<cplx> lambdas(static_cast<std::size_t>(m), 0.0);
    lambdas[0] = p.lambda;
    lambdas[1] = p.mu;
    const GeneralizedOracleConnection g = connection_numeric(GeneralizedPoint{lambdas}, m, space);
    reduce = std::max({reduce, max_abs(g.a[0] - two.matrices.a_lambda), max_abs(g.a[1] - two.matrices.a_mu)});
    lambdas[1] = 2.0 * p.mu;
    const GeneralizedOracleConnection d = connection_numeric(GeneralizedPoint{lambdas}, m, space);
    literal = std::max({literal, max_abs(d.a[0] - two.matrices.a_lambda), max_abs(d.a[1] - two.matrices.a_mu)});
  }
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  // A(v) = V^+ dV(v) is anti-hermitian iff V^+ d_lbar V = -(V^+ d_l V)^+ for each parameter.
  // One Richardson level: the cubic generator makes the plain O(h^2) error ~1e-6.
  double anti = 0.0;
  for (int k = 0; k < 4; ++k) {
    const GeneralizedPoint q{{cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))}};
    const Matrix v = vacuum_frame_generalized(q, 3, space).matrix;
    for (std::size_t j = 0; j < 3; ++j) {
      const WirtingerPair d = wirtinger_derivative(
          [&](cplx z) {
            GeneralizedPoint r = q;
            r.lambdas[j] = z;
            return vacuum_frame_generalized(r, 3, space).matrix;
          },
          q.lambdas[j], DifferentiationPlan{1e-4, true});
      anti = std::max(anti, max_abs(v.adjoint() * d.d_zbar + (v.adjoint() * d.d_z).adjoint()));
    }
  }
  report(9, reduce < 1e-7 && anti < 1e-7,
         fmt("generalized family reduces to (lambda, mu) at lambda_2 = mu: dev %.3e (< 1e-7) [literal lambda_2 = 2 mu "
             "gives %.3e]; m=3 anti-hermitian assembly dev %.3e (< 1e-7, Richardson)",
             reduce, literal, anti));
}

void criterion_10() {
  auto run = [] {
    std::ostringstream out, err;
    const int code = run_cli({"verify", "--m", "2", "--grid", "default", "--comparison-mode"}, out, err);
    return std::make_pair(code, out.str());
  };
  const auto a = run();
  const auto b = run();
  report(10, a.first == kExitOk && b.first == kExitOk && a.second == b.second && !a.second.empty(),
         fmt("verify --m 2 --grid default twice: exit codes %d/%d, %zu bytes each, byte-identical: %s", a.first, b.first,
             a.second.size(), a.second == b.second ? "yes" : "no"));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  grid_criteria();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria failed (%.1f s)\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
