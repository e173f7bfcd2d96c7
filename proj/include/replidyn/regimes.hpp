#ifndef REPLIDYN_REGIMES_HPP
#define REPLIDYN_REGIMES_HPP

#include "replidyn/dynamics.hpp"
#include "replidyn/equilibria.hpp"
#include "replidyn/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace replidyn {

/// Thrown when the analytic classification is refused because a strict
/// inequality sits within 1e-12 of equality.
struct DegenerateParameters : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when regime classification is requested outside the assumption
/// region it is defined on.
struct AssumptionsViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Regime { R1, R2, R3, R4 };
enum class BomzePortrait { PP7, PP9, PP35, PP37, PP42 };

const char* to_string(Regime r);
const char* to_string(BomzePortrait p);

/// Dynamic regime of a parameter point:
///   R1: e1 and e2 both sinks      -> PP7 with interior state, PP35 without
///   R2: only e1 a sink            -> PP9 with interior state, PP37 without
///   R3: only e2 a sink            -> PP9 / PP37 (e1 and e2 swap roles)
///   R4: neither a sink            -> PP42, interior state never exists
struct RegimeLabel {
  Regime regime;
  bool interior_exists;
  BomzePortrait portrait;
};

/// Classifies p into a regime.  Refuses (AssumptionsViolated) when the
/// segregation assumptions fail, since the taxonomy is defined only under
/// them, and refuses (DegenerateParameters) when any governing margin is
/// within 1e-12 of zero.
RegimeLabel classify_regime(const ModelParams& p);

/// In regime 4 the interior-existence quantity ae - bd is claimed
/// non-positive for every parameter point; returns that check.
/// Precondition: classify_regime(p) is R4.
bool check_r4_consistency(const ModelParams& p);

enum class BasinLabel { E1, E2, E3, Unresolved };

const char* to_string(BasinLabel l);

/// Basin-of-attraction estimate on the barycentric lattice
/// { (i,j,k)/R : i+j+k = R, i,j,k >= 1 } (strict interior; the boundary
/// faces are invariant and never reach an interior attractor).  Each start
/// is integrated to an attractor; grid points whose trajectories exhaust
/// t_max, or end at a non-attracting state, stay Unresolved.  Fractions are
/// over resolved points.  Deterministic for any thread count.
struct BasinMap {
  int resolution = 0;
  std::vector<Simplex> points;
  std::vector<BasinLabel> labels;
  long counts[3] = {0, 0, 0};  // e1, e2, e3
  long unresolved = 0;
  long total = 0;
  StepDiagnostics diagnostics;

  double fraction(BasinLabel which) const;
  long resolved() const { return total - unresolved; }
};

BasinMap estimate_basins(const ModelParams& p, int resolution,
                         const IntegratorConfig& cfg, unsigned threads = 0);

/// Which side of the invariant payoff-indifference line a*x1 + b*x2 = 0 the
/// sampled starts are drawn from.
enum class PayoffSide {
  NsBetter,  // a*x1 + b*x2 > 0: face-to-face play pays more; e1 unreachable
  SnBetter,  // a*x1 + b*x2 < 0: online play pays more; e2 unreachable
};

/// Integrates sample_count seeded interior starts drawn from one side of
/// the indifference line (margin > 1e-6) and reports where they end up and
/// whether the sign of a*x1 + b*x2 stayed constant along every recorded
/// trajectory.  Under the segregation assumptions, no trajectory from the
/// NsBetter side may reach e1 (nor e2 from the SnBetter side).
struct PredictionReport {
  long total = 0;
  long to_e1 = 0;
  long to_e2 = 0;
  long to_e3 = 0;
  long unresolved = 0;
  long sign_violations = 0;
  long forbidden() const;
  PayoffSide side = PayoffSide::NsBetter;
  StepDiagnostics diagnostics;
};

PredictionReport prediction_check(const ModelParams& p, long sample_count,
                                  const IntegratorConfig& cfg, std::uint64_t seed,
                                  PayoffSide side = PayoffSide::NsBetter,
                                  unsigned threads = 0);

}  // namespace replidyn

#endif  // REPLIDYN_REGIMES_HPP
