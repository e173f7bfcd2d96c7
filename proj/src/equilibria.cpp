#include "replidyn/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace replidyn {

namespace {

StabilityClass classify_eigenvalues(const std::array<double, 2>& eig) {
  if (std::abs(eig[0]) < kEpsDegenerate || std::abs(eig[1]) < kEpsDegenerate)
    return StabilityClass::Degenerate;
  if (eig[0] < 0 && eig[1] < 0) return StabilityClass::Sink;
  if (eig[0] > 0 && eig[1] > 0) return StabilityClass::Source;
  return StabilityClass::Saddle;
}

// Assembles a state record from its location and its closed-form spectrum.
// Analytic eigenvalues are given on the replicator clock: spectra derived in
// the planar chart must be pre-multiplied by x1 at the state, since the
// coordinate change to the planar system also rescales time by x1.
StationaryState make_state(const NormalizedMatrix& b, StatKind kind,
                           const Simplex& location, double eig0, double eig1) {
  StationaryState s;
  s.kind = kind;
  s.location = location;
  s.analytic_eigenvalues = {std::min(eig0, eig1), std::max(eig0, eig1)};
  s.analytic_class = classify_eigenvalues(s.analytic_eigenvalues);
  const NumericEigenvalues num = numeric_jacobian_eigenvalues(b, location);
  s.numeric_eigenvalues = num.values;
  s.degenerate =
      s.analytic_class == StabilityClass::Degenerate || num.complex_pair;
  return s;
}

}  // namespace

const char* to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::Sink: return "sink";
    case StabilityClass::Source: return "source";
    case StabilityClass::Saddle: return "saddle";
    case StabilityClass::Degenerate: return "degenerate";
  }
  return "?";
}

std::array<StationaryState, 3> vertex_stability(const ModelParams& p) {
  const NormalizedMatrix b = normalized_matrix(p);
  return {make_state(b, StatKind::E1, Simplex(1, 0, 0), b.a, b.d),
          make_state(b, StatKind::E2, Simplex(0, 1, 0), -b.b, b.e - b.b),
          make_state(b, StatKind::E3, Simplex(0, 0, 1), -b.f, -b.f)};
}

std::optional<StationaryState> interior_equilibrium(const ModelParams& p) {
  if (!check_assumptions(p).both_hold()) return std::nullopt;
  const NormalizedMatrix b = normalized_matrix(p);
  const double q = b.a * b.e - b.b * b.d;
  if (!(q > 0)) return std::nullopt;
  const double xbar = -b.a / b.b;
  const double ybar = q / (b.b * b.f);
  const Simplex x = from_lv({xbar, ybar});
  return make_state(b, StatKind::Interior, x, x(0) * b.b * xbar,
                    x(0) * b.f * ybar);
}

StationaryState edge_e1e2_equilibrium(const ModelParams& p) {
  const AssumptionReport rep = check_assumptions(p);
  if (!rep.both_hold())
    throw std::domain_error(
        "the e1-e2 edge state requires both segregation assumptions; margins "
        "are " +
        std::to_string(rep.margin_I) + " and " + std::to_string(rep.margin_II));
  const NormalizedMatrix b = normalized_matrix(p);
  const double x1 = b.b / (b.b - b.a);
  const Simplex x(x1, -b.a / (b.b - b.a), 0.0);
  return make_state(b, StatKind::EdgeE1E2, x, x1 * -b.a,
                    x1 * -(b.a * b.e - b.b * b.d) / b.b);
}

std::optional<StationaryState> edge_e1e3_equilibrium(const ModelParams& p) {
  const NormalizedMatrix b = normalized_matrix(p);
  if (!(b.d < 0)) return std::nullopt;
  const double x1 = b.f / (b.f - b.d);
  const Simplex x(x1, 0.0, -b.d / (b.f - b.d));
  return make_state(b, StatKind::EdgeE1E3, x, x1 * b.a, x1 * -b.d);
}

std::optional<StationaryState> edge_e2e3_equilibrium(const ModelParams& p) {
  const NormalizedMatrix b = normalized_matrix(p);
  if (!(b.e - b.b < 0)) return std::nullopt;
  const double x2 = p.alpha / (p.eta * p.l);
  const Simplex x(0.0, x2, 1.0 - x2);
  // In-edge eigenvalue from the two-strategy dynamics on the x1 = 0 face;
  // the transversal one is the growth rate of x1 there, -x.Bx = -b*x2.
  const double eta_l2 = p.eta * p.l * p.l;
  return make_state(b, StatKind::EdgeE2E3, x, x2 * (1.0 - x2) * eta_l2,
                    -b.b * x2);
}

std::vector<StationaryState> enumerate_states(const ModelParams& p) {
  std::vector<StationaryState> states;
  states.reserve(7);
  for (const StationaryState& s : vertex_stability(p)) states.push_back(s);
  if (check_assumptions(p).both_hold())
    states.push_back(edge_e1e2_equilibrium(p));
  if (auto s = edge_e1e3_equilibrium(p)) states.push_back(*s);
  if (auto s = edge_e2e3_equilibrium(p)) states.push_back(*s);
  if (auto s = interior_equilibrium(p)) states.push_back(*s);
  return states;
}

std::vector<SkippedState> enumerate_skipped(const ModelParams& p) {
  std::vector<SkippedState> skipped;
  const NormalizedMatrix b = normalized_matrix(p);
  const bool assumptions = check_assumptions(p).both_hold();
  if (!assumptions)
    skipped.push_back({StatKind::EdgeE1E2,
                       "requires both segregation assumptions; the formula "
                       "leaves the edge interior without them"});
  if (!(b.d < 0))
    skipped.push_back({StatKind::EdgeE1E3, "requires d < 0, got d = " +
                                               std::to_string(b.d)});
  if (!(b.e - b.b < 0))
    skipped.push_back({StatKind::EdgeE2E3, "requires e - b < 0, got e - b = " +
                                               std::to_string(b.e - b.b)});
  if (!assumptions) {
    skipped.push_back(
        {StatKind::Interior, "requires both segregation assumptions"});
  } else if (!(b.a * b.e - b.b * b.d > 0)) {
    skipped.push_back({StatKind::Interior,
                       "requires a*e - b*d > 0, got " +
                           std::to_string(b.a * b.e - b.b * b.d)});
  }
  return skipped;
}

ParetoReport pareto_report(const ModelParams& p) {
  const double social_rate = p.beta * p.n * p.n + p.gamma * (1 - p.n) * (1 - p.n);
  ParetoReport r;
  r.dominates_e1_over_e2 = p.eta < social_rate;
  r.dominates_e2_over_e1 = p.eta > social_rate;
  r.dominates_e1_over_e3 = p.alpha < p.l * social_rate;
  r.dominates_e2_over_e3 = p.alpha < p.eta * p.l;
  r.welfare_e1 = ep_sn(p, Simplex(1, 0, 0));
  r.welfare_e2 = ep_ns(p, Simplex(0, 1, 0));
  r.welfare_e3 = ep_np(p);
  return r;
}

Eigen::Matrix2d chart_jacobian(const NormalizedMatrix& b, const Simplex& x) {
  const Simplex rhs = replicator_rhs(b, x);
  if (rhs.cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument(
        "point is not stationary: |rhs| = " +
        std::to_string(rhs.cwiseAbs().maxCoeff()));

  const auto field = [&b](double u0, double u1) {
    const Simplex z(u0, u1, 1.0 - u0 - u1);
    const Simplex v = replicator_rhs(b, z);
    return Eigen::Vector2d(v(0), v(1));
  };

  constexpr double tau = 1e-6;
  Eigen::Matrix2d j;
  j.col(0) = (field(x(0) + tau, x(1)) - field(x(0) - tau, x(1))) / (2 * tau);
  j.col(1) = (field(x(0), x(1) + tau) - field(x(0), x(1) - tau)) / (2 * tau);
  return j;
}

NumericEigenvalues numeric_jacobian_eigenvalues(const NormalizedMatrix& b,
                                                const Simplex& x) {
  const Eigen::Matrix2d j = chart_jacobian(b, x);

  // Eigenvalues of the 2x2 matrix from trace and determinant.  The
  // discriminant is formed as (j00-j11)^2 + 4*j01*j10 so that a repeated
  // root perturbed by finite-difference noise is not mistaken for a complex
  // pair; an imaginary part below noise scale is treated as zero.
  const double tr = j(0, 0) + j(1, 1);
  const double disc = (j(0, 0) - j(1, 1)) * (j(0, 0) - j(1, 1)) +
                      4.0 * j(0, 1) * j(1, 0);
  NumericEigenvalues out;
  if (disc >= 0) {
    const double root = std::sqrt(disc);
    out.values = {(tr - root) / 2, (tr + root) / 2};
  } else {
    const double imag = std::sqrt(-disc) / 2;
    out.complex_pair = imag > 1e-5 * std::max(1.0, std::abs(tr));
    out.values = {tr / 2, tr / 2};
  }
  return out;
}

}  // namespace replidyn
