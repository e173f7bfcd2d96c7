#ifndef REPLIDYN_MODEL_HPP
#define REPLIDYN_MODEL_HPP

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace replidyn {

/// Exogenous parameters of one economy.
///
/// Three strategies compete: SN (social participation online and
/// face-to-face, share x1), NS (face-to-face only, share x2) and NP
/// (withdrawal from participation, share x3).  alpha is the payoff of
/// time spent working or in private activity; beta, gamma, delta,
/// epsilon, eta are the benefit rates of the five kinds of pairwise
/// social interaction; l is the probability of being in leisure time,
/// n the probability that a leisure-time SN player is online.
struct ModelParams {
  double alpha;
  double beta;
  double gamma;
  double delta;
  double epsilon;
  double eta;
  double l;
  double n;

  ModelParams(double alpha_, double beta_, double gamma_, double delta_,
              double epsilon_, double eta_, double l_, double n_)
      : alpha(alpha_), beta(beta_), gamma(gamma_), delta(delta_),
        epsilon(epsilon_), eta(eta_), l(l_), n(n_) {
    if (!(std::isfinite(alpha) && alpha > 0.0))
      throw std::invalid_argument("alpha must be strictly positive, got " +
                                  std::to_string(alpha));
    if (!(std::isfinite(l) && l > 0.0 && l < 1.0))
      throw std::invalid_argument("l must lie in the open interval (0,1), got " +
                                  std::to_string(l));
    if (!(std::isfinite(n) && n > 0.0 && n < 1.0))
      throw std::invalid_argument("n must lie in the open interval (0,1), got " +
                                  std::to_string(n));
    for (double v : {beta, gamma, delta, epsilon, eta})
      if (!std::isfinite(v))
        throw std::invalid_argument("interaction benefit rates must be finite");
  }
};

using Simplex = Eigen::Vector3d;

inline constexpr double kSimplexSumTol = 1e-9;
inline constexpr double kSimplexNegTol = 1e-12;

inline bool on_simplex(const Simplex& x, double sum_tol = kSimplexSumTol,
                       double neg_tol = kSimplexNegTol) {
  if (!x.allFinite()) return false;
  if (std::abs(x.sum() - 1.0) > sum_tol) return false;
  return x.minCoeff() >= -neg_tol;
}

inline void require_simplex(const Simplex& x) {
  if (!on_simplex(x))
    throw std::invalid_argument("point is not on the unit simplex: (" +
                                std::to_string(x(0)) + ", " + std::to_string(x(1)) +
                                ", " + std::to_string(x(2)) + ")");
}

/// Normalized payoff matrix: the full matrix with its first row subtracted
/// from every row, leaving
///
///     ( 0  0  0 )
///     ( a  b  c )
///     ( d  e  f )
///
/// c = 0 structurally and f = l*alpha > 0.  All stability and existence
/// conditions of the model are sign conditions on these six entries.
struct NormalizedMatrix {
  double a, b, c, d, e, f;

  Eigen::Matrix3d as_matrix() const {
    Eigen::Matrix3d m;
    m << 0, 0, 0, a, b, c, d, e, f;
    return m;
  }
};

/// Closed-form entries of the normalized matrix, computed directly from the
/// parameters rather than by row subtraction, to avoid cancellation.
inline NormalizedMatrix normalized_matrix(const ModelParams& p) {
  const double l2 = p.l * p.l;
  const double online = p.beta * l2 * p.n * p.n;          // SN meets SN via SNS
  const double offline = p.gamma * l2 * (1 - p.n) * (1 - p.n);  // SN meets SN in person
  const double cross_sn = p.delta * l2 * (1 - p.n);        // SN meets NS
  const double cross_ns = p.epsilon * l2 * (1 - p.n);      // NS meets SN
  NormalizedMatrix b;
  b.a = cross_ns - online - offline;
  b.b = p.eta * l2 - cross_sn;
  b.c = 0.0;
  b.d = p.alpha * p.l - online - offline;
  b.e = p.alpha * p.l - cross_sn;
  b.f = p.l * p.alpha;
  return b;
}

/// Expected payoff of the SN strategy at population state x.
inline double ep_sn(const ModelParams& p, const Simplex& x) {
  require_simplex(x);
  const double l2 = p.l * p.l;
  return (1 - p.l) * p.alpha + p.beta * l2 * p.n * p.n * x(0) +
         p.gamma * l2 * (1 - p.n) * (1 - p.n) * x(0) +
         p.delta * l2 * (1 - p.n) * x(1);
}

/// Expected payoff of the NS strategy at population state x.
inline double ep_ns(const ModelParams& p, const Simplex& x) {
  require_simplex(x);
  const double l2 = p.l * p.l;
  return (1 - p.l) * p.alpha + p.epsilon * l2 * (1 - p.n) * x(0) +
         p.eta * l2 * x(1);
}

/// Expected payoff of the NP strategy; constant in the population state.
inline double ep_np(const ModelParams& p) { return p.alpha; }

inline double mean_payoff(const ModelParams& p, const Simplex& x) {
  require_simplex(x);
  return x(0) * ep_sn(p, x) + x(1) * ep_ns(p, x) + x(2) * ep_np(p);
}

/// Full payoff matrix A; row i holds the payoff of strategy i against an
/// opponent population concentrated on strategy j.  The NP row is the
/// constant alpha.
inline Eigen::Matrix3d build_payoff_matrix(const ModelParams& p) {
  const double base = (1 - p.l) * p.alpha;
  const double l2 = p.l * p.l;
  Eigen::Matrix3d a;
  a << base + p.beta * l2 * p.n * p.n + p.gamma * l2 * (1 - p.n) * (1 - p.n),
      base + p.delta * l2 * (1 - p.n), base,
      base + p.epsilon * l2 * (1 - p.n), base + p.eta * l2, base,
      p.alpha, p.alpha, p.alpha;
  return a;
}

/// Row-subtraction route to the normalized matrix.  Agrees with
/// normalized_matrix() to rounding; kept as the cross-check of the closed
/// forms.
inline NormalizedMatrix normalize(const Eigen::Matrix3d& a) {
  Eigen::Matrix3d b = a;
  b.rowwise() -= a.row(0);
  return NormalizedMatrix{b(1, 0), b(1, 1), b(1, 2), b(2, 0), b(2, 1), b(2, 2)};
}

/// Signed slack of the two segregation assumptions.
///
/// Assumption I:  beta*n^2 + gamma*(1-n)^2 > epsilon*(1-n)   (iff a < 0)
/// Assumption II: eta > delta*(1-n)                          (iff b > 0)
///
/// Strict inequalities; a margin within eps_degenerate of zero is reported
/// as failing with the degenerate flag set.
struct AssumptionReport {
  bool assumption_I_holds;
  bool assumption_II_holds;
  double margin_I;
  double margin_II;
  bool degenerate_I;
  bool degenerate_II;

  bool both_hold() const { return assumption_I_holds && assumption_II_holds; }
  bool degenerate() const { return degenerate_I || degenerate_II; }
};

inline constexpr double kEpsDegenerate = 1e-12;

inline AssumptionReport check_assumptions(const ModelParams& p) {
  AssumptionReport r;
  r.margin_I = p.beta * p.n * p.n + p.gamma * (1 - p.n) * (1 - p.n) -
               p.epsilon * (1 - p.n);
  r.margin_II = p.eta - p.delta * (1 - p.n);
  r.degenerate_I = std::abs(r.margin_I) < kEpsDegenerate;
  r.degenerate_II = std::abs(r.margin_II) < kEpsDegenerate;
  r.assumption_I_holds = r.margin_I > 0 && !r.degenerate_I;
  r.assumption_II_holds = r.margin_II > 0 && !r.degenerate_II;
  return r;
}

}  // namespace replidyn

#endif  // REPLIDYN_MODEL_HPP
