#ifndef REPLIDYN_VERIFY_HPP
#define REPLIDYN_VERIFY_HPP

#include "replidyn/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace replidyn {

/// Result of one executable property of the model.
struct PropertyResult {
  std::string name;
  bool pass = false;
  long cases = 0;
  std::string detail;        // short human summary (worst error seen, counts)
  std::string failure_json;  // replay data for the first failing case, if any
};

struct VerifyOptions {
  std::optional<ModelParams> params;  // run trajectory properties here if given
  long random_draws = 200;
  std::uint64_t seed = 42;
  unsigned threads = 0;
};

/// Runs the full executable-property suite:
///   conservation            simplex sum preserved along trajectories
///   chart_equivalence       replicator flow matches the Lotka-Volterra flow
///   pushforward             d/dt of the chart map matches the LV field
///   sign_invariance         sign of a*x1 + b*x2 constant along trajectories
///   stability_agreement     analytic classes match finite-difference spectra
///   pareto_stability        Pareto conditions (vs e3) equal stability conditions
///   column_shift            velocity unchanged by column-constant payoff shifts
std::vector<PropertyResult> run_property_suite(const VerifyOptions& opts);

bool all_pass(const std::vector<PropertyResult>& results);

}  // namespace replidyn

#endif  // REPLIDYN_VERIFY_HPP
