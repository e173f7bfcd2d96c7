#ifndef REPLIDYN_CONFIG_HPP
#define REPLIDYN_CONFIG_HPP

#include "replidyn/dynamics.hpp"
#include "replidyn/model.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace replidyn {

/// Malformed configuration input; the message names the offending field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A run configuration as read from JSON.  Top-level schema: the eight
/// parameter keys {alpha, beta, gamma, delta, epsilon, eta, l, n} are
/// required; {integrator, resolution, seed} are optional; anything else is
/// rejected.  The integrator object accepts {h, t_max, eps_conv,
/// record_stride}.
struct RunConfig {
  ModelParams params;
  IntegratorConfig integrator;
  int resolution = 100;
  std::uint64_t seed = 42;
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

}  // namespace replidyn

#endif  // REPLIDYN_CONFIG_HPP
