#include "replidyn/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace replidyn {

Simplex random_simplex_point(std::mt19937_64& rng, double min_component) {
  if (min_component * 3 >= 1.0)
    throw std::invalid_argument("min_component leaves no room on the simplex");
  for (;;) {
    double u = uniform01(rng);
    double v = uniform01(rng);
    if (u > v) std::swap(u, v);
    const Simplex x(u, v - u, 1.0 - v);
    if (x.minCoeff() >= min_component) return x;
  }
}

ModelParams random_params(std::mt19937_64& rng) {
  const double alpha = uniform(rng, 0.1, 3.0);
  const double beta = uniform(rng, -5.0, 5.0);
  const double gamma = uniform(rng, -5.0, 5.0);
  const double delta = uniform(rng, -5.0, 5.0);
  const double epsilon = uniform(rng, -5.0, 5.0);
  const double eta = uniform(rng, -5.0, 5.0);
  const double l = uniform(rng, 0.05, 0.95);
  const double n = uniform(rng, 0.05, 0.95);
  return ModelParams(alpha, beta, gamma, delta, epsilon, eta, l, n);
}

ModelParams random_params_with_assumptions(std::mt19937_64& rng,
                                           double min_margin) {
  for (;;) {
    ModelParams p = random_params(rng);
    const AssumptionReport rep = check_assumptions(p);
    if (rep.margin_I >= min_margin && rep.margin_II >= min_margin) return p;
  }
}

ModelParams random_params_generic(std::mt19937_64& rng, double min_margin) {
  for (;;) {
    ModelParams p = random_params_with_assumptions(rng, min_margin);
    const NormalizedMatrix b = normalized_matrix(p);
    if (std::abs(b.d) < min_margin) continue;
    if (std::abs(b.e - b.b) < min_margin) continue;
    if (std::abs(b.a * b.e - b.b * b.d) < min_margin) continue;
    return p;
  }
}

}  // namespace replidyn
