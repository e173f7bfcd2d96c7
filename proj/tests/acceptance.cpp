// End-to-end acceptance checks for the engine.  Each criterion prints one
// PASS/FAIL line with its pinned tolerance; the process exits nonzero if any
// criterion fails.

#include "replidyn/dynamics.hpp"
#include "replidyn/equilibria.hpp"
#include "replidyn/model.hpp"
#include "replidyn/regimes.hpp"
#include "replidyn/sampling.hpp"

#include "fixtures.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace replidyn;
using namespace replidyn::fixtures;

namespace {

int failures = 0;

// Aggregated over every trajectory integrated by criteria 2 through 6; the
// conservation criterion asserts on this.
StepDiagnostics flow_diagnostics;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int id, const char* name, bool pass, const std::string& detail,
            double seconds) {
  std::printf("%s  criterion %2d  %-34s %s  [%.1fs]\n", pass ? "PASS" : "FAIL", id,
              name, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

// Criterion 1: closed-form stability classes agree with finite-difference
// Jacobian spectra at every stationary state, over 200 parameter draws with
// all classification margins at least 1e-3.
void criterion_1() {
  Stopwatch timer;
  std::mt19937_64 rng(101);
  long states = 0, mismatches = 0;
  double max_gap = 0.0;
  for (int k = 0; k < 200; ++k) {
    const ModelParams p = random_params_generic(rng, 1e-3);
    for (const StationaryState& s : enumerate_states(p)) {
      ++states;
      bool agree = !s.degenerate;
      for (int i = 0; i < 2; ++i) {
        if (s.analytic_eigenvalues[i] * s.numeric_eigenvalues[i] <= 0.0)
          agree = false;
        max_gap = std::max(max_gap, std::abs(s.analytic_eigenvalues[i] -
                                             s.numeric_eigenvalues[i]));
      }
      if (!agree) ++mismatches;
    }
  }
  report(1, "analytic/numeric stability", mismatches == 0,
         fmt("200 draws, %ld states, %ld mismatches, max eigenvalue gap %.2e",
             states, mismatches, max_gap),
         timer.seconds());
}

// Criterion 2: the withdrawal vertex is a sink for every valid draw, and
// trajectories started within radius 0.01 of it return to it.
void criterion_2() {
  Stopwatch timer;
  std::mt19937_64 rng(102);
  const IntegratorConfig cfg;
  long not_sink = 0, escaped = 0, bad_start = 0;
  for (int k = 0; k < 500; ++k) {
    const ModelParams p = random_params(rng);
    if (vertex_stability(p)[2].analytic_class != StabilityClass::Sink) ++not_sink;
    const double s = 0.001 + 0.0059 * uniform01(rng);
    const double w = 0.01 + 0.98 * uniform01(rng);
    const Simplex x0(s * w, s * (1 - w), 1 - s);
    if ((x0 - Simplex(0, 0, 1)).norm() > 0.01) ++bad_start;
    const TerminalResult r = run_to_attractor(normalized_matrix(p), x0, cfg);
    flow_diagnostics.merge(r.diagnostics);
    if (!(r.outcome.converged && r.outcome.state == StatKind::E3)) ++escaped;
  }
  report(2, "withdrawal vertex universality",
         not_sink == 0 && escaped == 0 && bad_start == 0,
         fmt("500 draws, %ld non-sink, %ld escaped, %ld starts off-radius",
             not_sink, escaped, bad_start),
         timer.seconds());
}

// Criterion 3: simplex trajectories mapped through the planar chart match
// independent planar integrations within 1e-5 sup-norm on [0, 50] at
// h = 0.001, 50 interior starts under each fixture economy.
void criterion_3() {
  Stopwatch timer;
  std::mt19937_64 rng(103);
  IntegratorConfig cfg;
  cfg.h = 0.001;
  cfg.t_max = 50.0;
  cfg.stop_at_convergence = false;
  double sup = 0.0;
  long compared = 0;
  bool grids_aligned = true;
  for (const ModelParams& p : {baseline_params(), high_alpha_params()}) {
    const NormalizedMatrix b = normalized_matrix(p);
    for (int k = 0; k < 50; ++k) {
      const Simplex x0 = random_simplex_point(rng, 0.01);
      const Trajectory st = integrate(p, x0, cfg);
      flow_diagnostics.merge(st.diagnostics);
      const LVTrajectory lt = integrate_lv(b, to_lv(x0), cfg);
      const std::size_t common = std::min(st.points.size(), lt.points.size());
      for (std::size_t i = 0; i < common; ++i) {
        if (st.points[i].x(0) < 1e-9) break;
        if (std::abs(st.points[i].t - lt.points[i].t) > 1e-12) grids_aligned = false;
        sup = std::max(sup, (to_lv(st.points[i].x) - lt.points[i].p)
                                .cwiseAbs()
                                .maxCoeff());
        ++compared;
      }
    }
  }
  report(3, "planar chart equivalence", sup <= 1e-5 && grids_aligned,
         fmt("100 starts, %ld compared points, sup gap %.2e (tolerance 1e-5)",
             compared, sup),
         timer.seconds());
}

// Criterion 4: the bistable economy's interior state sits at its closed-form
// location, is stationary to 1e-12, and both numeric eigenvalues are
// positive.
void criterion_4() {
  Stopwatch timer;
  const ModelParams p = baseline_params();
  const std::optional<StationaryState> mix = interior_equilibrium(p);
  bool pass = mix.has_value();
  double loc_err = -1.0, rhs_norm = -1.0;
  if (pass) {
    loc_err = (mix->location - Simplex(0.1875, 0.4375, 0.375)).cwiseAbs().maxCoeff();
    rhs_norm = replicator_rhs(normalized_matrix(p), mix->location)
                   .cwiseAbs()
                   .maxCoeff();
    pass = loc_err <= 1e-10 && rhs_norm < 1e-12 && mix->numeric_eigenvalues[0] > 0 &&
           mix->numeric_eigenvalues[1] > 0;
  }
  report(4, "interior state reproduction", pass,
         fmt("location error %.2e (tolerance 1e-10), residual %.2e, numeric "
             "eigenvalues %s",
             loc_err, rhs_norm,
             pass ? "both positive" : "not verified"),
         timer.seconds());
}

// Criterion 5: from 1000 seeded starts on the side of the payoff-indifference
// line where face-to-face play pays more, no trajectory reaches the online
// vertex and the payoff-difference sign never flips.
void criterion_5() {
  Stopwatch timer;
  const IntegratorConfig cfg;
  const PredictionReport rep =
      prediction_check(baseline_params(), 1000, cfg, 505, PayoffSide::NsBetter);
  flow_diagnostics.merge(rep.diagnostics);
  const bool pass =
      rep.total == 1000 && rep.to_e1 == 0 && rep.sign_violations == 0;
  report(5, "indifference-line invariance", pass,
         fmt("1000 starts: %ld online, %ld face-to-face, %ld withdrawal, %ld "
             "unresolved, %ld sign flips",
             rep.to_e1, rep.to_e2, rep.to_e3, rep.unresolved, rep.sign_violations),
         timer.seconds());
}

// Criterion 6: in the withdrawal-only economy, every resolved lattice point
// at resolution 50 belongs to the withdrawal basin, with unresolved points
// under 1% of the grid.
void criterion_6() {
  Stopwatch timer;
  const BasinMap map = estimate_basins(high_alpha_params(), 50, {});
  flow_diagnostics.merge(map.diagnostics);
  const bool pass = map.resolved() > 0 && map.fraction(BasinLabel::E3) == 1.0 &&
                    map.unresolved * 100 < map.total;
  report(6, "global convergence to withdrawal", pass,
         fmt("%ld lattice points, withdrawal fraction %.6f, %ld unresolved",
             map.total, map.fraction(BasinLabel::E3), map.unresolved),
         timer.seconds());
}

// Criterion 7: dominance of each participation vertex over withdrawal
// coincides exactly with that vertex's stability condition.
void criterion_7() {
  Stopwatch timer;
  std::mt19937_64 rng(107);
  long mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    const ModelParams p = random_params(rng);
    const NormalizedMatrix b = normalized_matrix(p);
    const ParetoReport r = pareto_report(p);
    if (r.dominates_e1_over_e3 != (b.d < 0.0)) ++mismatches;
    if (r.dominates_e2_over_e3 != (b.e - b.b < 0.0)) ++mismatches;
  }
  report(7, "dominance/stability identity", mismatches == 0,
         fmt("1000 draws, 2000 boolean pairs, %ld mismatches", mismatches),
         timer.seconds());
}

// Criterion 8: adding a constant to each payoff-matrix column leaves the
// velocity field unchanged to 1e-12.
void criterion_8() {
  Stopwatch timer;
  std::mt19937_64 rng(108);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = random_params(rng);
    const Eigen::Matrix3d a = build_payoff_matrix(p);
    Eigen::Matrix3d shifted = a;
    for (int c = 0; c < 3; ++c) shifted.col(c).array() += uniform(rng, -5.0, 5.0);
    for (int j = 0; j < 100; ++j) {
      const Simplex x = random_simplex_point(rng);
      worst = std::max(worst, (replicator_rhs(a, x) - replicator_rhs(shifted, x))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  }
  report(8, "column-shift invariance", worst <= 1e-12,
         fmt("100 draws x 100 points, max velocity change %.2e (tolerance 1e-12)",
             worst),
         timer.seconds());
}

// Criterion 9: as the cross-strategy benefit rates rise, the combined basin
// of the two participation vertices grows (ordering only).
void criterion_9() {
  Stopwatch timer;
  IntegratorConfig cfg;
  cfg.t_max = 1000.0;
  const double settings[3][2] = {{-4.0, -4.0}, {0.0, 0.0}, {2.0, -1.0}};
  double fractions[3];
  for (int i = 0; i < 3; ++i) {
    const ModelParams p(0.5, 6.0, 6.0, settings[i][0], settings[i][1], 2.5, 0.5,
                        0.5);
    const BasinMap map = estimate_basins(p, 100, cfg);
    fractions[i] = map.fraction(BasinLabel::E1) + map.fraction(BasinLabel::E2);
  }
  const bool pass = fractions[0] < fractions[1] && fractions[1] < fractions[2];
  report(9, "participation basin monotonicity", pass,
         fmt("combined fractions %.4f < %.4f < %.4f across rising cross-benefits",
             fractions[0], fractions[1], fractions[2]),
         timer.seconds());
}

// Criterion 10: every trajectory integrated by criteria 2 through 6 stayed
// on the simplex: |x1+x2+x3 - 1| <= 1e-9 at recorded points and no component
// below -1e-12 before projection.
void criterion_10() {
  Stopwatch timer;
  const bool pass = flow_diagnostics.max_sum_deviation <= 1e-9 &&
                    flow_diagnostics.min_component >= -1e-12;
  report(10, "simplex conservation", pass,
         fmt("max |sum-1| = %.2e (tolerance 1e-9), min component = %.2e "
             "(tolerance -1e-12)",
             flow_diagnostics.max_sum_deviation, flow_diagnostics.min_component),
         timer.seconds());
}

}  // namespace

int main() {
  const Stopwatch total;
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria passed  [%.1fs total]\n", 10 - failures,
              total.seconds());
  return failures == 0 ? 0 : 1;
}
