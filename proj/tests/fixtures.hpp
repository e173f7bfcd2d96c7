#ifndef REPLIDYN_TESTS_FIXTURES_HPP
#define REPLIDYN_TESTS_FIXTURES_HPP

#include "replidyn/model.hpp"

namespace replidyn::fixtures {

// Bistable economy with an interior source: e1, e2 and e3 all attract.
inline ModelParams baseline_params() {
  return ModelParams(0.5, 6.0, 6.0, 2.0, -1.0, 2.5, 0.5, 0.5);
}

// Same interaction benefits with private activity paying enough that only
// withdrawal attracts.
inline ModelParams high_alpha_params() {
  return ModelParams(2.0, 6.0, 6.0, 2.0, -1.0, 2.5, 0.5, 0.5);
}

// Bistable economy whose cross-strategy benefits are negative enough that
// no interior stationary state exists.
inline ModelParams hostile_cross_params() {
  return ModelParams(0.5, 6.0, 6.0, -4.0, -4.0, 2.5, 0.5, 0.5);
}

// Only the fully connected strategy attracts besides withdrawal; the
// interior state exists.
inline ModelParams weak_eta_params() {
  return ModelParams(0.5, 6.0, 6.0, 0.0, 4.0, 0.9, 0.5, 0.5);
}

// Only the face-to-face strategy attracts besides withdrawal; no interior
// state.
inline ModelParams strong_eta_params() {
  return ModelParams(1.6, 6.0, 6.0, 2.0, -1.0, 4.0, 0.5, 0.5);
}

}  // namespace replidyn::fixtures

#endif  // REPLIDYN_TESTS_FIXTURES_HPP
