#ifndef REPLIDYN_SAMPLING_HPP
#define REPLIDYN_SAMPLING_HPP

#include "replidyn/model.hpp"

#include <cstdint>
#include <random>

namespace replidyn {

/// Deterministic uniform double in [0,1) from the raw generator output;
/// avoids std::uniform_real_distribution, whose stream is not pinned by the
/// standard, so seeded results are stable across toolchains.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniform (Dirichlet(1,1,1)) point of the simplex interior; optionally
/// rejects points with any share below min_component.
Simplex random_simplex_point(std::mt19937_64& rng, double min_component = 0.0);

/// One parameter draw from the engine's test box:
/// alpha in [0.1, 3], benefit rates in [-5, 5], l and n in [0.05, 0.95].
ModelParams random_params(std::mt19937_64& rng);

/// Rejection-samples random_params until both segregation assumptions hold
/// with at least the given margin.
ModelParams random_params_with_assumptions(std::mt19937_64& rng,
                                           double min_margin = 1e-3);

/// Rejection-samples until the assumptions hold with the given margin and
/// every classification quantity (d, e-b, ae-bd) is at least margin away
/// from zero, so the analytic classification is unambiguous.
ModelParams random_params_generic(std::mt19937_64& rng, double min_margin = 1e-3);

}  // namespace replidyn

#endif  // REPLIDYN_SAMPLING_HPP
