#ifndef REPLIDYN_PORTRAIT_HPP
#define REPLIDYN_PORTRAIT_HPP

#include "replidyn/dynamics.hpp"
#include "replidyn/model.hpp"

#include <cstdint>
#include <string>

namespace replidyn {

/// Rendering options for the ternary phase portrait.
struct PortraitSpec {
  int size_px = 840;
  int basin_resolution = 80;
  int trajectory_count = 12;
  std::uint64_t seed = 42;
  bool draw_basins = true;
  bool draw_trajectories = true;
  unsigned threads = 0;
  IntegratorConfig integrator;
};

/// Renders a self-contained SVG phase portrait: basin shading, every
/// stationary state with its stability glyph, and a fan of sample
/// trajectories.  The simplex is drawn as an equilateral triangle with
/// vertices e1 bottom-left, e2 bottom-right, e3 top.
std::string render_portrait(const ModelParams& p, const PortraitSpec& spec);

}  // namespace replidyn

#endif  // REPLIDYN_PORTRAIT_HPP
