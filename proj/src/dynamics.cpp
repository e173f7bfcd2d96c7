#include "replidyn/dynamics.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace replidyn {

namespace {

Simplex project_to_simplex(Simplex x) {
  for (int i = 0; i < 3; ++i)
    if (x(i) < 0.0) x(i) = 0.0;
  return x / x.sum();
}

Simplex rk4_step(const NormalizedMatrix& b, const Simplex& x, double h) {
  const Simplex k1 = replicator_rhs(b, x);
  const Simplex k2 = replicator_rhs(b, Simplex(x + 0.5 * h * k1));
  const Simplex k3 = replicator_rhs(b, Simplex(x + 0.5 * h * k2));
  const Simplex k4 = replicator_rhs(b, Simplex(x + h * k3));
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

const Simplex kVertices[3] = {Simplex(1, 0, 0), Simplex(0, 1, 0),
                              Simplex(0, 0, 1)};
const StatKind kVertexKinds[3] = {StatKind::E1, StatKind::E2, StatKind::E3};

int nearest_vertex_within(const Simplex& x, double eps) {
  for (int v = 0; v < 3; ++v)
    if ((x - kVertices[v]).norm() < eps) return v;
  return -1;
}

bool vertex_attracting(const NormalizedMatrix& b, int v) {
  switch (v) {
    case 0: return b.d < 0.0;
    case 1: return b.e - b.b < 0.0;
    default: return true;
  }
}

// Shared stepping loop.  record(t, x) is called for the initial state, for
// every record_stride-th step, and for the final step.
template <class Recorder>
TerminalResult drive(const NormalizedMatrix& b, const Simplex& x0,
                     const IntegratorConfig& cfg, Recorder&& record) {
  cfg.validate();
  require_simplex(x0);

  TerminalResult result;
  Simplex x = project_to_simplex(x0);
  record(0.0, x);

  int near_prev = nearest_vertex_within(x, cfg.eps_conv);
  const auto n_steps =
      static_cast<long long>(std::floor(cfg.t_max / cfg.h + 1e-9));
  double t = 0.0;
  bool recorded_last = true;

  for (long long step = 1; step <= n_steps; ++step) {
    t = static_cast<double>(step) * cfg.h;
    Simplex y = rk4_step(b, x, cfg.h);
    if (!y.allFinite())
      throw std::runtime_error("integration produced a non-finite state at t=" +
                               std::to_string(t));
    result.diagnostics.min_component =
        std::min(result.diagnostics.min_component, y.minCoeff());
    result.diagnostics.max_sum_deviation =
        std::max(result.diagnostics.max_sum_deviation, std::abs(y.sum() - 1.0));
    x = project_to_simplex(y);

    recorded_last = (step % cfg.record_stride == 0);
    if (!recorded_last) continue;
    record(t, x);

    const int near = nearest_vertex_within(x, cfg.eps_conv);
    if (near >= 0 && near == near_prev && !result.outcome.converged) {
      result.outcome.converged = true;
      result.outcome.state = kVertexKinds[near];
      result.outcome.location = kVertices[near];
      result.outcome.attracting = vertex_attracting(b, near);
      result.outcome.t = t;
      if (cfg.stop_at_convergence) return result;
    }
    near_prev = near;
  }

  if (!recorded_last) record(t, x);
  if (!result.outcome.converged) {
    result.outcome.location = x;
    result.outcome.t = t;
  }
  return result;
}

}  // namespace

const char* to_string(StatKind k) {
  switch (k) {
    case StatKind::E1: return "e1";
    case StatKind::E2: return "e2";
    case StatKind::E3: return "e3";
    case StatKind::EdgeE1E2: return "edge_e1e2";
    case StatKind::EdgeE1E3: return "edge_e1e3";
    case StatKind::EdgeE2E3: return "edge_e2e3";
    case StatKind::Interior: return "interior";
  }
  return "?";
}

Trajectory integrate(const ModelParams& params, const Simplex& x0,
                     const IntegratorConfig& cfg) {
  Trajectory traj{params, {}, {}, {}};
  const std::size_t expect =
      static_cast<std::size_t>(cfg.t_max / (cfg.h * cfg.record_stride)) + 2;
  traj.points.reserve(std::min<std::size_t>(expect, 1u << 20));
  const NormalizedMatrix b = normalized_matrix(params);
  TerminalResult r = drive(b, x0, cfg, [&traj](double t, const Simplex& x) {
    traj.points.push_back({t, x});
  });
  traj.outcome = r.outcome;
  traj.diagnostics = r.diagnostics;
  return traj;
}

TerminalResult run_to_attractor(const NormalizedMatrix& b, const Simplex& x0,
                                const IntegratorConfig& cfg) {
  return drive(b, x0, cfg, [](double, const Simplex&) {});
}

Outcome classify_terminal(const Trajectory& traj,
                          std::span<const StatePoint> states, double eps_conv) {
  if (traj.points.empty())
    throw std::invalid_argument("cannot classify an empty trajectory");
  const TrajectoryPoint& last = traj.points.back();

  Outcome out;
  out.t = last.t;
  out.location = last.x;
  double best = eps_conv;
  for (const StatePoint& s : states) {
    const double dist = (last.x - s.location).norm();
    if (dist < best) {
      best = dist;
      out.converged = true;
      out.state = s.kind;
      out.location = s.location;
      out.attracting = s.attracting;
    }
  }
  return out;
}

LVPoint to_lv(const Simplex& x) {
  if (!(x(0) >= kLvChartMinX1))
    throw std::domain_error(
        "chart undefined: x1 = " + std::to_string(x(0)) +
        " is below " + std::to_string(kLvChartMinX1));
  return {x(1) / x(0), x(2) / x(0)};
}

Simplex from_lv(const LVPoint& p) {
  if (!(p(0) >= 0.0) || !(p(1) >= 0.0))
    throw std::domain_error("chart coordinates must be nonnegative");
  const double x1 = 1.0 / (1.0 + p(0) + p(1));
  return {x1, p(0) * x1, p(1) * x1};
}

namespace {

// LV field on the replicator clock (see the chart notes in the header).
LVPoint lv_rhs_timed(const NormalizedMatrix& b, const LVPoint& p) {
  return lv_rhs(b, p) / (1.0 + p(0) + p(1));
}

LVPoint lv_rk4_step(const NormalizedMatrix& b, const LVPoint& p, double h) {
  const LVPoint k1 = lv_rhs_timed(b, p);
  const LVPoint k2 = lv_rhs_timed(b, LVPoint(p + 0.5 * h * k1));
  const LVPoint k3 = lv_rhs_timed(b, LVPoint(p + 0.5 * h * k2));
  const LVPoint k4 = lv_rhs_timed(b, LVPoint(p + h * k3));
  return p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

LVTrajectory integrate_lv(const NormalizedMatrix& b, const LVPoint& p0,
                          const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(p0(0) >= 0.0) || !(p0(1) >= 0.0))
    throw std::domain_error("chart coordinates must be nonnegative");

  LVTrajectory traj;
  LVPoint p = p0;
  traj.points.push_back({0.0, p});
  traj.t_end = 0.0;

  bool near_prev = p.norm() < cfg.eps_conv;
  const auto n_steps =
      static_cast<long long>(std::floor(cfg.t_max / cfg.h + 1e-9));
  bool recorded_last = true;

  for (long long step = 1; step <= n_steps; ++step) {
    const double t = static_cast<double>(step) * cfg.h;
    LVPoint q = lv_rk4_step(b, p, cfg.h);
    if (!q.allFinite() || q.cwiseAbs().maxCoeff() > cfg.lv_divergence_radius) {
      traj.diverged = true;
      break;
    }
    for (int i = 0; i < 2; ++i)
      if (q(i) < 0.0) q(i) = 0.0;
    p = q;
    traj.t_end = t;

    recorded_last = (step % cfg.record_stride == 0);
    if (!recorded_last) continue;
    traj.points.push_back({t, p});

    const bool near = p.norm() < cfg.eps_conv;
    if (near && near_prev) {
      traj.converged = true;
      if (cfg.stop_at_convergence) return traj;
    }
    near_prev = near;
  }

  if (!recorded_last && !traj.diverged) traj.points.push_back({traj.t_end, p});
  return traj;
}

}  // namespace replidyn
