#include "replidyn/regimes.hpp"

#include "replidyn/parallel.hpp"
#include "replidyn/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace replidyn {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::R1: return "R1";
    case Regime::R2: return "R2";
    case Regime::R3: return "R3";
    case Regime::R4: return "R4";
  }
  return "?";
}

const char* to_string(BomzePortrait p) {
  switch (p) {
    case BomzePortrait::PP7: return "PP7";
    case BomzePortrait::PP9: return "PP9";
    case BomzePortrait::PP35: return "PP35";
    case BomzePortrait::PP37: return "PP37";
    case BomzePortrait::PP42: return "PP42";
  }
  return "?";
}

const char* to_string(BasinLabel l) {
  switch (l) {
    case BasinLabel::E1: return "e1";
    case BasinLabel::E2: return "e2";
    case BasinLabel::E3: return "e3";
    case BasinLabel::Unresolved: return "unresolved";
  }
  return "?";
}

RegimeLabel classify_regime(const ModelParams& p) {
  const AssumptionReport rep = check_assumptions(p);
  if (rep.degenerate())
    throw DegenerateParameters(
        "assumption margin within 1e-12 of zero (margin_I=" +
        std::to_string(rep.margin_I) +
        ", margin_II=" + std::to_string(rep.margin_II) + ")");
  if (!rep.both_hold())
    throw AssumptionsViolated(
        "the regime taxonomy is defined only under both segregation "
        "assumptions (margin_I=" +
        std::to_string(rep.margin_I) +
        ", margin_II=" + std::to_string(rep.margin_II) + ")");

  const NormalizedMatrix b = normalized_matrix(p);
  const double cond_e1 = b.d;                      // e1 sink iff < 0
  const double cond_e2 = b.e - b.b;                // e2 sink iff < 0
  const double cond_int = b.a * b.e - b.b * b.d;   // interior iff > 0
  if (std::abs(cond_e1) < kEpsDegenerate || std::abs(cond_e2) < kEpsDegenerate ||
      std::abs(cond_int) < kEpsDegenerate)
    throw DegenerateParameters(
        "a classification margin is within 1e-12 of zero (d=" +
        std::to_string(cond_e1) + ", e-b=" + std::to_string(cond_e2) +
        ", ae-bd=" + std::to_string(cond_int) + ")");

  const bool e1_sink = cond_e1 < 0;
  const bool e2_sink = cond_e2 < 0;
  RegimeLabel label;
  label.regime = e1_sink ? (e2_sink ? Regime::R1 : Regime::R2)
                         : (e2_sink ? Regime::R3 : Regime::R4);
  label.interior_exists = cond_int > 0;
  switch (label.regime) {
    case Regime::R1:
      label.portrait =
          label.interior_exists ? BomzePortrait::PP7 : BomzePortrait::PP35;
      break;
    case Regime::R2:
    case Regime::R3:
      label.portrait =
          label.interior_exists ? BomzePortrait::PP9 : BomzePortrait::PP37;
      break;
    case Regime::R4:
      label.portrait = BomzePortrait::PP42;
      break;
  }
  return label;
}

bool check_r4_consistency(const ModelParams& p) {
  if (classify_regime(p).regime != Regime::R4)
    throw std::invalid_argument("check_r4_consistency requires a regime-4 point");
  const NormalizedMatrix b = normalized_matrix(p);
  return b.a * b.e - b.b * b.d <= 0;
}

double BasinMap::fraction(BasinLabel which) const {
  if (which == BasinLabel::Unresolved)
    return total > 0 ? static_cast<double>(unresolved) / static_cast<double>(total)
                     : 0.0;
  const long r = resolved();
  if (r <= 0) return 0.0;
  return static_cast<double>(counts[static_cast<int>(which)]) /
         static_cast<double>(r);
}

BasinMap estimate_basins(const ModelParams& p, int resolution,
                         const IntegratorConfig& cfg, unsigned threads) {
  if (resolution < 3)
    throw std::invalid_argument("basin resolution must be at least 3");
  cfg.validate();
  const NormalizedMatrix b = normalized_matrix(p);

  BasinMap map;
  map.resolution = resolution;
  const double r = resolution;
  for (int i = 1; i <= resolution - 2; ++i)
    for (int j = 1; j <= resolution - 1 - i; ++j)
      map.points.emplace_back(i / r, j / r, (resolution - i - j) / r);
  map.total = static_cast<long>(map.points.size());
  map.labels.assign(map.points.size(), BasinLabel::Unresolved);

  std::vector<StepDiagnostics> diagnostics(map.points.size());
  parallel_for(
      map.points.size(),
      [&](std::size_t idx) {
        const TerminalResult res = run_to_attractor(b, map.points[idx], cfg);
        diagnostics[idx] = res.diagnostics;
        if (!res.outcome.converged || !res.outcome.attracting) return;
        switch (res.outcome.state) {
          case StatKind::E1: map.labels[idx] = BasinLabel::E1; break;
          case StatKind::E2: map.labels[idx] = BasinLabel::E2; break;
          case StatKind::E3: map.labels[idx] = BasinLabel::E3; break;
          default: break;
        }
      },
      threads);

  for (std::size_t idx = 0; idx < map.points.size(); ++idx) {
    map.diagnostics.merge(diagnostics[idx]);
    if (map.labels[idx] == BasinLabel::Unresolved)
      ++map.unresolved;
    else
      ++map.counts[static_cast<int>(map.labels[idx])];
  }
  return map;
}

long PredictionReport::forbidden() const {
  return side == PayoffSide::NsBetter ? to_e1 : to_e2;
}

PredictionReport prediction_check(const ModelParams& p, long sample_count,
                                  const IntegratorConfig& cfg, std::uint64_t seed,
                                  PayoffSide side, unsigned threads) {
  if (sample_count < 1)
    throw std::invalid_argument("sample_count must be positive");
  cfg.validate();
  const AssumptionReport rep = check_assumptions(p);
  if (!rep.both_hold())
    throw AssumptionsViolated(
        "the payoff-side prediction is stated under both segregation "
        "assumptions");
  const NormalizedMatrix b = normalized_matrix(p);

  // Starts are drawn sequentially so the set is independent of the thread
  // count; only the integrations fan out.
  const double orientation = side == PayoffSide::NsBetter ? 1.0 : -1.0;
  std::mt19937_64 rng(seed);
  std::vector<Simplex> starts;
  starts.reserve(static_cast<std::size_t>(sample_count));
  while (static_cast<long>(starts.size()) < sample_count) {
    const Simplex x = random_simplex_point(rng);
    if (orientation * (b.a * x(0) + b.b * x(1)) > 1e-6) starts.push_back(x);
  }

  struct Slot {
    Outcome outcome;
    bool sign_ok = true;
    StepDiagnostics diag;
  };
  std::vector<Slot> slots(starts.size());
  parallel_for(
      starts.size(),
      [&](std::size_t i) {
        const Trajectory traj = integrate(p, starts[i], cfg);
        const double s0 = b.a * starts[i](0) + b.b * starts[i](1);
        bool ok = true;
        for (const TrajectoryPoint& pt : traj.points) {
          const double s = b.a * pt.x(0) + b.b * pt.x(1);
          if (!(s * s0 > 0)) {
            ok = false;
            break;
          }
        }
        slots[i] = {traj.outcome, ok, traj.diagnostics};
      },
      threads);

  PredictionReport report;
  report.side = side;
  report.total = static_cast<long>(starts.size());
  for (const Slot& s : slots) {
    if (!s.sign_ok) ++report.sign_violations;
    report.diagnostics.merge(s.diag);
    if (!s.outcome.converged) {
      ++report.unresolved;
      continue;
    }
    switch (s.outcome.state) {
      case StatKind::E1: ++report.to_e1; break;
      case StatKind::E2: ++report.to_e2; break;
      case StatKind::E3: ++report.to_e3; break;
      default: ++report.unresolved; break;
    }
  }
  return report;
}

}  // namespace replidyn
