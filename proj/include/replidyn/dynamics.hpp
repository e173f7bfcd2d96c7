#ifndef REPLIDYN_DYNAMICS_HPP
#define REPLIDYN_DYNAMICS_HPP

#include "replidyn/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <span>
#include <vector>

namespace replidyn {

/// Replicator velocity at x under a normalized payoff matrix:
///   dx_i/dt = x_i * ((B x)_i - x . B x)
/// The first row of B is zero, so the SN growth term is -x.Bx.
/// Components sum to zero on the simplex up to rounding, and a coordinate
/// that is exactly zero stays exactly zero.
inline Simplex replicator_rhs(const NormalizedMatrix& b, const Simplex& x) {
  const double g2 = b.a * x(0) + b.b * x(1) + b.c * x(2);
  const double g3 = b.d * x(0) + b.e * x(1) + b.f * x(2);
  const double mean = x(1) * g2 + x(2) * g3;
  return {-x(0) * mean, x(1) * (g2 - mean), x(2) * (g3 - mean)};
}

/// Same field from an arbitrary (un-normalized) payoff matrix.  Adding a
/// constant to each column of A leaves this velocity unchanged.
inline Simplex replicator_rhs(const Eigen::Matrix3d& a, const Simplex& x) {
  const Eigen::Vector3d ax = a * x;
  const double mean = x.dot(ax);
  return x.cwiseProduct(ax - Eigen::Vector3d::Constant(mean));
}

struct IntegratorConfig {
  double h = 0.01;            // fixed RK4 step
  double t_max = 10000.0;     // give up beyond this time
  double eps_conv = 1e-6;     // convergence radius around a stationary state
  int record_stride = 10;     // record (and test convergence) every this many steps
  bool stop_at_convergence = true;
  double lv_divergence_radius = 1e5;  // LV chart abandoned beyond this coordinate size

  void validate() const {
    if (!(h > 0)) throw std::invalid_argument("integrator step h must be > 0");
    if (!(t_max > 0)) throw std::invalid_argument("integrator t_max must be > 0");
    if (!(eps_conv > 0)) throw std::invalid_argument("integrator eps_conv must be > 0");
    if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
    if (!(lv_divergence_radius > 0))
      throw std::invalid_argument("lv_divergence_radius must be > 0");
  }
};

/// Identity of a stationary state of the replicator field.
enum class StatKind { E1, E2, E3, EdgeE1E2, EdgeE1E3, EdgeE2E3, Interior };

const char* to_string(StatKind k);

/// A stationary state reduced to what trajectory classification needs.
struct StatePoint {
  StatKind kind;
  Simplex location;
  bool attracting;
};

struct Outcome {
  bool converged = false;
  StatKind state = StatKind::E3;
  Simplex location = Simplex::Zero();
  bool attracting = false;
  double t = 0.0;  // convergence time, or the time integration stopped
};

struct TrajectoryPoint {
  double t;
  Simplex x;
};

/// Numerical hygiene counters accumulated while stepping.
struct StepDiagnostics {
  double max_sum_deviation = 0.0;  // |x1+x2+x3 - 1| at recorded points
  double min_component = 0.0;      // most negative component seen before projection

  void merge(const StepDiagnostics& o) {
    max_sum_deviation = std::max(max_sum_deviation, o.max_sum_deviation);
    min_component = std::min(min_component, o.min_component);
  }
};

struct Trajectory {
  ModelParams params;
  std::vector<TrajectoryPoint> points;
  Outcome outcome;
  StepDiagnostics diagnostics;
};

/// Integrates the replicator field from x0 with classical fixed-step RK4.
/// After each step, components in [-1e-12, 0) are clamped to zero and the
/// state renormalized to unit sum.  Stops once the state has stayed within
/// eps_conv of one vertex for a full record stride, or at t_max (outcome
/// Unresolved).  Throws on a non-finite state.
Trajectory integrate(const ModelParams& params, const Simplex& x0,
                     const IntegratorConfig& cfg);

/// Trajectory-free variant used for basin scans: same stepping and
/// convergence rules, nothing recorded.
struct TerminalResult {
  Outcome outcome;
  StepDiagnostics diagnostics;
};
TerminalResult run_to_attractor(const NormalizedMatrix& b, const Simplex& x0,
                                const IntegratorConfig& cfg);

/// Nearest stationary state within eps_conv of the trajectory's final point,
/// or Unresolved.
Outcome classify_terminal(const Trajectory& traj, std::span<const StatePoint> states,
                          double eps_conv);

// --- Lotka-Volterra chart -------------------------------------------------
//
// On the region x1 > 0 the replicator flow is orbit-equivalent to the planar
// Lotka-Volterra system
//     X' = X (a + b X)
//     Y' = Y (d + e X + f Y)
// via X = x2/x1, Y = x3/x1, up to a change of velocity: pushing the
// replicator field through the chart yields the LV field multiplied by
// x1 = 1/(1+X+Y).  lv_rhs is the unscaled LV field (its zeroes and
// nullclines are what the stability analysis uses); integrate_lv advances
// the rescaled field so its trajectories share the replicator clock and can
// be compared against simplex trajectories at equal times.  The chart does
// not cover the x1 = 0 face, and LV coordinates blow up as trajectories
// approach it; the LV integrator is the verification oracle for simplex
// trajectories, not a user-facing path.

using LVPoint = Eigen::Vector2d;

inline constexpr double kLvChartMinX1 = 1e-12;

LVPoint to_lv(const Simplex& x);
Simplex from_lv(const LVPoint& p);

inline LVPoint lv_rhs(const NormalizedMatrix& b, const LVPoint& p) {
  return {p(0) * (b.a + b.b * p(0)),
          p(1) * (b.d + b.e * p(0) + b.f * p(1))};
}

struct LVTrajectoryPoint {
  double t;
  LVPoint p;
};

struct LVTrajectory {
  std::vector<LVTrajectoryPoint> points;
  bool diverged = false;   // left the chart's useful region (|X| or |Y| too large)
  bool converged = false;  // settled at the origin, i.e. the e1 vertex
  double t_end = 0.0;
};

LVTrajectory integrate_lv(const NormalizedMatrix& b, const LVPoint& p0,
                          const IntegratorConfig& cfg);

}  // namespace replidyn

#endif  // REPLIDYN_DYNAMICS_HPP
