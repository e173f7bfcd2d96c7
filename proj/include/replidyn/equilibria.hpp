#ifndef REPLIDYN_EQUILIBRIA_HPP
#define REPLIDYN_EQUILIBRIA_HPP

#include "replidyn/dynamics.hpp"
#include "replidyn/model.hpp"

#include <array>
#include <optional>
#include <vector>

namespace replidyn {

enum class StabilityClass { Sink, Source, Saddle, Degenerate };

const char* to_string(StabilityClass c);

/// A located stationary state of the replicator field together with its
/// analytic classification (closed-form eigenvalues of the flow restricted
/// to the simplex) and an independent finite-difference check.
struct StationaryState {
  StatKind kind;
  Simplex location;
  StabilityClass analytic_class;
  std::array<double, 2> analytic_eigenvalues;  // ascending
  std::array<double, 2> numeric_eigenvalues;   // ascending; real parts if complex
  bool degenerate = false;

  StatePoint as_point() const {
    return {kind, location, analytic_class == StabilityClass::Sink};
  }
};

/// The three vertex states.  e1 is a sink iff d < 0, e2 iff e - b < 0,
/// e3 unconditionally (its eigenvalues are -f, -f with f > 0).
std::array<StationaryState, 3> vertex_stability(const ModelParams& p);

/// Interior stationary state, present iff the assumptions hold and
/// a*e - b*d > 0; always a source.  Located through the LV chart at
/// (-a/b, (ae - bd)/(bf)).
std::optional<StationaryState> interior_equilibrium(const ModelParams& p);

/// Stationary state on the e1-e2 edge at (b/(b-a), -a/(b-a), 0).  Exists in
/// the edge's interior whenever the assumptions hold; a saddle if the
/// interior state exists, a source otherwise.  Throws std::domain_error if
/// the assumptions fail.
StationaryState edge_e1e2_equilibrium(const ModelParams& p);

/// Stationary state on the e1-e3 edge, present iff d < 0 (the same
/// condition that makes e1 a sink); a saddle with its unstable manifold in
/// the edge.
std::optional<StationaryState> edge_e1e3_equilibrium(const ModelParams& p);

/// Stationary state on the e2-e3 edge at x2 = alpha/(eta*l), present iff
/// e - b < 0; always a saddle.  Located by solving EP_NS = EP_NP on the
/// x1 = 0 face, which the LV chart does not cover.
std::optional<StationaryState> edge_e2e3_equilibrium(const ModelParams& p);

/// Every stationary state that exists under p, vertices first.  The e1-e2
/// edge state and the interior state are included only when the assumptions
/// hold (their formulas leave the simplex otherwise); enumerate_skipped
/// lists what was omitted and why.
std::vector<StationaryState> enumerate_states(const ModelParams& p);

struct SkippedState {
  StatKind kind;
  std::string reason;
};
std::vector<SkippedState> enumerate_skipped(const ModelParams& p);

/// Pareto dominance among the three monomorphic states, with the welfare
/// levels backing the comparison.  e1-over-e3 coincides with e1's stability
/// condition, and e2-over-e3 with e2's.
struct ParetoReport {
  bool dominates_e1_over_e2;
  bool dominates_e2_over_e1;
  bool dominates_e1_over_e3;
  bool dominates_e2_over_e3;
  double welfare_e1;  // EP_SN(1,0)
  double welfare_e2;  // EP_NS(0,1)
  double welfare_e3;  // alpha
};

ParetoReport pareto_report(const ModelParams& p);

/// Eigenvalues of the 2x2 Jacobian of the flow in the chart
/// (x1, x2) -> (x1, x2, 1 - x1 - x2), by central finite differences with
/// step 1e-6.  Input must be stationary (|rhs| <= 1e-8 componentwise).
/// The field has real spectra at all of this model's equilibria; a complex
/// pair (possible numerically near degeneracy) is reported by real parts
/// with the flag set.
struct NumericEigenvalues {
  std::array<double, 2> values;  // ascending
  bool complex_pair = false;
};

NumericEigenvalues numeric_jacobian_eigenvalues(const NormalizedMatrix& b,
                                                const Simplex& x);

/// The finite-difference 2x2 Jacobian itself, in the same chart; exposed for
/// eigen-direction rendering.  Same stationarity precondition.
Eigen::Matrix2d chart_jacobian(const NormalizedMatrix& b, const Simplex& x);

}  // namespace replidyn

#endif  // REPLIDYN_EQUILIBRIA_HPP
