#include "replidyn/verify.hpp"

#include "replidyn/dynamics.hpp"
#include "replidyn/equilibria.hpp"
#include "replidyn/parallel.hpp"
#include "replidyn/sampling.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

namespace replidyn {

namespace {

using nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ordered_json params_json(const ModelParams& p) {
  return ordered_json{{"alpha", p.alpha}, {"beta", p.beta},
                      {"gamma", p.gamma}, {"delta", p.delta},
                      {"epsilon", p.epsilon}, {"eta", p.eta},
                      {"l", p.l}, {"n", p.n}};
}

std::string failure_case(const std::string& property, const ModelParams& p,
                         const Simplex* x0, const std::string& note) {
  ordered_json j{{"property", property}, {"params", params_json(p)}};
  if (x0) j["x0"] = {(*x0)(0), (*x0)(1), (*x0)(2)};
  j["note"] = note;
  return j.dump();
}

struct Case {
  ModelParams params;
  Simplex x0 = Simplex::Zero();
};

ModelParams pick_params(const VerifyOptions& opts, std::mt19937_64& rng,
                        bool need_assumptions) {
  if (opts.params) {
    if (!need_assumptions || check_assumptions(*opts.params).both_hold())
      return *opts.params;
  }
  return need_assumptions ? random_params_with_assumptions(rng)
                          : random_params(rng);
}

PropertyResult check_conservation(const VerifyOptions& opts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Case> cases;
  for (long i = 0; i < opts.random_draws; ++i)
    cases.push_back({pick_params(opts, rng, false), random_simplex_point(rng)});

  IntegratorConfig cfg;
  cfg.t_max = 50;
  struct Slot {
    bool ok = true;
    double worst_sum = 0, worst_min = 0;
  };
  std::vector<Slot> slots(cases.size());
  parallel_for(
      cases.size(),
      [&](std::size_t i) {
        const Trajectory traj = integrate(cases[i].params, cases[i].x0, cfg);
        Slot& s = slots[i];
        s.worst_sum = traj.diagnostics.max_sum_deviation;
        s.worst_min = traj.diagnostics.min_component;
        for (const TrajectoryPoint& pt : traj.points)
          s.worst_sum = std::max(s.worst_sum, std::abs(pt.x.sum() - 1.0));
        s.ok = s.worst_sum <= 1e-9 && s.worst_min >= -1e-12;
      },
      opts.threads);

  PropertyResult r{"conservation", true, static_cast<long>(cases.size()), "", ""};
  double worst_sum = 0, worst_min = 0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    worst_sum = std::max(worst_sum, slots[i].worst_sum);
    worst_min = std::min(worst_min, slots[i].worst_min);
    if (!slots[i].ok && r.pass) {
      r.pass = false;
      r.failure_json = failure_case(
          r.name, cases[i].params, &cases[i].x0,
          "max |sum-1| = " + fmt(slots[i].worst_sum) +
              ", min component = " + fmt(slots[i].worst_min));
    }
  }
  r.detail = "max |sum-1| = " + fmt(worst_sum) +
             ", min pre-projection component = " + fmt(worst_min);
  return r;
}

PropertyResult check_chart_equivalence(const VerifyOptions& opts,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const long count = std::min<long>(opts.random_draws, 50);
  std::vector<Case> cases;
  for (long i = 0; i < count; ++i)
    cases.push_back(
        {pick_params(opts, rng, false), random_simplex_point(rng, 0.01)});

  IntegratorConfig cfg;
  cfg.h = 1e-3;
  cfg.t_max = 20;
  cfg.stop_at_convergence = false;
  struct Slot {
    double sup = 0;
    long compared = 0;
  };
  std::vector<Slot> slots(cases.size());
  parallel_for(
      cases.size(),
      [&](std::size_t i) {
        const NormalizedMatrix b = normalized_matrix(cases[i].params);
        const Trajectory traj = integrate(cases[i].params, cases[i].x0, cfg);
        const LVTrajectory lv = integrate_lv(b, to_lv(cases[i].x0), cfg);
        const std::size_t common = std::min(traj.points.size(), lv.points.size());
        for (std::size_t k = 0; k < common; ++k) {
          if (traj.points[k].t != lv.points[k].t) break;
          if (traj.points[k].x(0) < kLvChartMinX1) break;
          const LVPoint mapped = to_lv(traj.points[k].x);
          slots[i].sup = std::max(
              slots[i].sup, (mapped - lv.points[k].p).cwiseAbs().maxCoeff());
          ++slots[i].compared;
        }
      },
      opts.threads);

  PropertyResult r{"chart_equivalence", true, count, "", ""};
  double worst = 0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    worst = std::max(worst, slots[i].sup);
    if (slots[i].sup > 1e-5 && r.pass) {
      r.pass = false;
      r.failure_json = failure_case(r.name, cases[i].params, &cases[i].x0,
                                    "sup |chart - planar| = " + fmt(slots[i].sup));
    }
  }
  r.detail = "sup-norm gap over common domain = " + fmt(worst);
  return r;
}

PropertyResult check_pushforward(const VerifyOptions& opts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PropertyResult r{"pushforward", true, 0, "", ""};
  double worst = 0;
  constexpr double tau = 1e-5;
  for (long i = 0; i < opts.random_draws * 5; ++i) {
    const ModelParams p = pick_params(opts, rng, false);
    const Simplex x = random_simplex_point(rng, 0.05);
    const NormalizedMatrix b = normalized_matrix(p);
    const Simplex v = replicator_rhs(b, x);
    const LVPoint lhs =
        (to_lv(Simplex(x + tau * v)) - to_lv(Simplex(x - tau * v))) / (2 * tau);
    const LVPoint rhs = lv_rhs(b, to_lv(x)) * x(0);
    const double err = (lhs - rhs).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    ++r.cases;
    if (err > 1e-6 && r.pass) {
      r.pass = false;
      r.failure_json =
          failure_case(r.name, p, &x, "pushforward gap = " + fmt(err));
    }
  }
  r.detail = "max |D(chart).field - scaled planar field| = " + fmt(worst);
  return r;
}

PropertyResult check_sign_invariance(const VerifyOptions& opts,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Case> cases;
  for (long i = 0; i < opts.random_draws; ++i) {
    const ModelParams p = pick_params(opts, rng, true);
    const NormalizedMatrix b = normalized_matrix(p);
    for (;;) {
      const Simplex x = random_simplex_point(rng);
      if (std::abs(b.a * x(0) + b.b * x(1)) > 1e-6) {
        cases.push_back({p, x});
        break;
      }
    }
  }

  IntegratorConfig cfg;
  cfg.t_max = 50;
  std::vector<signed char> ok(cases.size(), 1);
  parallel_for(
      cases.size(),
      [&](std::size_t i) {
        const NormalizedMatrix b = normalized_matrix(cases[i].params);
        const double s0 = b.a * cases[i].x0(0) + b.b * cases[i].x0(1);
        const Trajectory traj = integrate(cases[i].params, cases[i].x0, cfg);
        for (const TrajectoryPoint& pt : traj.points)
          if (!((b.a * pt.x(0) + b.b * pt.x(1)) * s0 > 0)) {
            ok[i] = 0;
            return;
          }
      },
      opts.threads);

  PropertyResult r{"sign_invariance", true, static_cast<long>(cases.size()), "",
                   ""};
  long violations = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (ok[i]) continue;
    ++violations;
    if (r.pass) {
      r.pass = false;
      r.failure_json = failure_case(r.name, cases[i].params, &cases[i].x0,
                                    "payoff-difference sign flipped");
    }
  }
  r.detail = std::to_string(violations) + " sign flips";
  return r;
}

PropertyResult check_stability_agreement(const VerifyOptions& opts,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ModelParams> draws;
  if (opts.params && check_assumptions(*opts.params).both_hold())
    draws.push_back(*opts.params);
  for (long i = 0; i < opts.random_draws; ++i)
    draws.push_back(random_params_generic(rng, 1e-3));

  PropertyResult r{"stability_agreement", true, 0, "", ""};
  double worst_gap = 0;
  long mismatches = 0;
  for (const ModelParams& p : draws) {
    for (const StationaryState& s : enumerate_states(p)) {
      ++r.cases;
      bool agree = !s.degenerate;
      for (int k = 0; k < 2 && agree; ++k)
        agree = s.analytic_eigenvalues[k] * s.numeric_eigenvalues[k] > 0;
      worst_gap = std::max(
          worst_gap,
          std::max(
              std::abs(s.analytic_eigenvalues[0] - s.numeric_eigenvalues[0]),
              std::abs(s.analytic_eigenvalues[1] - s.numeric_eigenvalues[1])));
      if (!agree) {
        ++mismatches;
        if (r.pass) {
          r.pass = false;
          r.failure_json = failure_case(
              r.name, p, nullptr,
              std::string("class/spectrum mismatch at ") + to_string(s.kind));
        }
      }
    }
  }
  r.detail = std::to_string(mismatches) +
             " mismatches, max eigenvalue gap = " + fmt(worst_gap);
  return r;
}

PropertyResult check_pareto_stability(const VerifyOptions& opts,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PropertyResult r{"pareto_stability", true, 0, "", ""};
  long mismatches = 0;
  for (long i = 0; i < opts.random_draws * 5; ++i) {
    const ModelParams p = random_params(rng);
    const NormalizedMatrix b = normalized_matrix(p);
    const ParetoReport rep = pareto_report(p);
    ++r.cases;
    const bool agree = rep.dominates_e1_over_e3 == (b.d < 0) &&
                       rep.dominates_e2_over_e3 == (b.e - b.b < 0);
    if (!agree) {
      ++mismatches;
      if (r.pass) {
        r.pass = false;
        r.failure_json = failure_case(
            r.name, p, nullptr, "welfare dominance != vertex sink condition");
      }
    }
  }
  r.detail = std::to_string(mismatches) + " boolean mismatches";
  return r;
}

PropertyResult check_column_shift(const VerifyOptions& opts,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PropertyResult r{"column_shift", true, 0, "", ""};
  double worst = 0;
  for (long i = 0; i < opts.random_draws; ++i) {
    const ModelParams p = opts.params ? *opts.params : random_params(rng);
    const Eigen::Matrix3d a = build_payoff_matrix(p);
    Eigen::Matrix3d shifted = a;
    for (int c = 0; c < 3; ++c)
      shifted.col(c).array() += uniform(rng, -5.0, 5.0);
    for (int k = 0; k < 10; ++k) {
      const Simplex x = random_simplex_point(rng);
      const double err =
          (replicator_rhs(a, x) - replicator_rhs(shifted, x)).cwiseAbs().maxCoeff();
      worst = std::max(worst, err);
      ++r.cases;
      if (err > 1e-12 && r.pass) {
        r.pass = false;
        r.failure_json = failure_case(
            r.name, p, &x, "velocity changed by " + fmt(err) + " under shift");
      }
    }
  }
  r.detail = "max velocity change = " + fmt(worst);
  return r;
}

}  // namespace

std::vector<PropertyResult> run_property_suite(const VerifyOptions& opts) {
  if (opts.random_draws < 1)
    throw std::invalid_argument("random_draws must be positive");
  std::vector<PropertyResult> results;
  results.push_back(check_conservation(opts, opts.seed + 1));
  results.push_back(check_chart_equivalence(opts, opts.seed + 2));
  results.push_back(check_pushforward(opts, opts.seed + 3));
  results.push_back(check_sign_invariance(opts, opts.seed + 4));
  results.push_back(check_stability_agreement(opts, opts.seed + 5));
  results.push_back(check_pareto_stability(opts, opts.seed + 6));
  results.push_back(check_column_shift(opts, opts.seed + 7));
  return results;
}

bool all_pass(const std::vector<PropertyResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.pass; });
}

}  // namespace replidyn
