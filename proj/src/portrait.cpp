#include "replidyn/portrait.hpp"

#include "replidyn/equilibria.hpp"
#include "replidyn/parallel.hpp"
#include "replidyn/regimes.hpp"
#include "replidyn/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace replidyn {

namespace {

constexpr double kHalfSqrt3 = 0.8660254037844386;

const char* kBasinFill[4] = {"#ffee8c", "#8cc6ff", "#ffc9de", "#d9d9d9"};
const char* kInk = "#1f1f1f";

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Canvas {
  double margin;
  double scale;
  double width;
  double height;

  explicit Canvas(int size_px)
      : margin(0.07 * size_px),
        scale(size_px - 2 * margin),
        width(size_px),
        height(2 * margin + scale * kHalfSqrt3 + 0.05 * size_px) {}

  // Barycentric point to pixel coordinates; e1 bottom-left, e2 bottom-right,
  // e3 top.
  Eigen::Vector2d map(const Simplex& x) const {
    const double u = x(1) + 0.5 * x(2);
    const double v = kHalfSqrt3 * x(2);
    return {margin + u * scale, height - margin - v * scale};
  }

  // Pixel direction of a tangent (dx1, dx2, dx3) with zero sum.
  Eigen::Vector2d map_dir(const Eigen::Vector3d& d) const {
    const double du = d(1) + 0.5 * d(2);
    const double dv = kHalfSqrt3 * d(2);
    return {du * scale, -dv * scale};
  }
};

int basin_index(BasinLabel l) { return static_cast<int>(l); }

void append_basin_underlay(std::ostringstream& svg, const ModelParams& p,
                           const PortraitSpec& spec, const Canvas& canvas) {
  const int res = spec.basin_resolution;
  if (res < 3) throw std::invalid_argument("basin resolution must be at least 3");
  const NormalizedMatrix b = normalized_matrix(p);

  struct Cell {
    Simplex corners[3];
    Simplex center;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(res) * res);
  const double r = res;
  const auto lattice = [&r](int q2, int q3) {
    return Simplex((r - q2 - q3) / r, q2 / r, q3 / r);
  };
  for (int q2 = 0; q2 <= res - 1; ++q2)
    for (int q3 = 0; q3 <= res - 1 - q2; ++q3) {
      Cell up{{lattice(q2, q3), lattice(q2 + 1, q3), lattice(q2, q3 + 1)},
              Simplex::Zero()};
      up.center = (up.corners[0] + up.corners[1] + up.corners[2]) / 3.0;
      cells.push_back(up);
      if (q2 + q3 <= res - 2) {
        Cell down{{lattice(q2 + 1, q3), lattice(q2, q3 + 1),
                   lattice(q2 + 1, q3 + 1)},
                  Simplex::Zero()};
        down.center = (down.corners[0] + down.corners[1] + down.corners[2]) / 3.0;
        cells.push_back(down);
      }
    }

  std::vector<BasinLabel> labels(cells.size(), BasinLabel::Unresolved);
  parallel_for(
      cells.size(),
      [&](std::size_t i) {
        const TerminalResult res_i =
            run_to_attractor(b, cells[i].center, spec.integrator);
        if (!res_i.outcome.converged || !res_i.outcome.attracting) return;
        switch (res_i.outcome.state) {
          case StatKind::E1: labels[i] = BasinLabel::E1; break;
          case StatKind::E2: labels[i] = BasinLabel::E2; break;
          case StatKind::E3: labels[i] = BasinLabel::E3; break;
          default: break;
        }
      },
      spec.threads);

  for (int which = 0; which < 4; ++which) {
    std::ostringstream d;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (basin_index(labels[i]) != which) continue;
      const auto a = canvas.map(cells[i].corners[0]);
      const auto bb = canvas.map(cells[i].corners[1]);
      const auto c = canvas.map(cells[i].corners[2]);
      d << "M" << px(a(0)) << " " << px(a(1)) << "L" << px(bb(0)) << " "
        << px(bb(1)) << "L" << px(c(0)) << " " << px(c(1)) << "Z";
    }
    const std::string path = d.str();
    if (path.empty()) continue;
    svg << "  <path d=\"" << path << "\" fill=\"" << kBasinFill[which]
        << "\" stroke=\"" << kBasinFill[which] << "\" stroke-width=\"0.6\"/>\n";
  }
}

void append_arrowhead(std::ostringstream& svg, const Eigen::Vector2d& tip,
                      Eigen::Vector2d dir, const char* fill) {
  const double norm = dir.norm();
  if (norm < 1e-12) return;
  dir /= norm;
  const Eigen::Vector2d n(-dir(1), dir(0));
  const Eigen::Vector2d base = tip - 7.0 * dir;
  const Eigen::Vector2d left = base + 3.2 * n;
  const Eigen::Vector2d right = base - 3.2 * n;
  svg << "  <path d=\"M" << px(tip(0)) << " " << px(tip(1)) << "L"
      << px(left(0)) << " " << px(left(1)) << "L" << px(right(0)) << " "
      << px(right(1)) << "Z\" fill=\"" << fill << "\"/>\n";
}

void append_trajectories(std::ostringstream& svg, const ModelParams& p,
                         const PortraitSpec& spec, const Canvas& canvas) {
  std::mt19937_64 rng(spec.seed);
  for (int k = 0; k < spec.trajectory_count; ++k) {
    const Simplex x0 = random_simplex_point(rng, 0.02);
    const Trajectory traj = integrate(p, x0, spec.integrator);
    if (traj.points.size() < 2) continue;
    const std::size_t stride =
        std::max<std::size_t>(1, traj.points.size() / 400);
    std::ostringstream pts;
    std::vector<Eigen::Vector2d> kept;
    for (std::size_t i = 0; i < traj.points.size(); i += stride)
      kept.push_back(canvas.map(traj.points[i].x));
    kept.push_back(canvas.map(traj.points.back().x));
    for (const auto& q : kept) pts << px(q(0)) << "," << px(q(1)) << " ";
    svg << "  <polyline points=\"" << pts.str()
        << "\" fill=\"none\" stroke=\"#3a3a3a\" stroke-width=\"1.1\" "
           "opacity=\"0.85\"/>\n";
    const std::size_t mid = kept.size() / 2;
    if (mid > 0)
      append_arrowhead(svg, kept[mid], kept[mid] - kept[mid - 1], "#3a3a3a");
  }
}

// Unit eigendirection of a 2x2 matrix for eigenvalue lambda, as a simplex
// tangent (dx1, dx2, -dx1-dx2).
Eigen::Vector3d eigen_direction(const Eigen::Matrix2d& j, double lambda) {
  const Eigen::Vector2d row_choice_a(j(0, 1), lambda - j(0, 0));
  const Eigen::Vector2d row_choice_b(lambda - j(1, 1), j(1, 0));
  const Eigen::Vector2d v =
      row_choice_a.norm() >= row_choice_b.norm() ? row_choice_a : row_choice_b;
  Eigen::Vector3d d(v(0), v(1), -v(0) - v(1));
  const double norm = d.norm();
  return norm > 1e-14 ? Eigen::Vector3d(d / norm) : Eigen::Vector3d(0, 0, 0);
}

bool stays_on_simplex(const Simplex& x, const Eigen::Vector3d& d, double step) {
  const Simplex probe = x + step * d;
  return probe.minCoeff() >= -1e-9;
}

void append_state_markers(std::ostringstream& svg, const ModelParams& p,
                          const Canvas& canvas) {
  const NormalizedMatrix b = normalized_matrix(p);
  for (const StationaryState& s : enumerate_states(p)) {
    const Eigen::Vector2d c = canvas.map(s.location);
    if (s.analytic_class == StabilityClass::Saddle) {
      const Eigen::Matrix2d j = chart_jacobian(b, s.location);
      for (int k = 0; k < 2; ++k) {
        const double lambda = s.numeric_eigenvalues[k];
        const Eigen::Vector3d dir = eigen_direction(j, lambda);
        const Eigen::Vector2d pix_dir = canvas.map_dir(dir);
        const double pix_norm = pix_dir.norm();
        if (pix_norm < 1e-9) continue;
        // Tangent-space step that renders as a 22 px branch.
        const double bary_step = 22.0 / pix_norm;
        for (double side : {1.0, -1.0}) {
          if (!stays_on_simplex(s.location, side * dir, bary_step)) continue;
          const Eigen::Vector2d tail = c + side * pix_dir * (8.0 / pix_norm);
          const Eigen::Vector2d head = c + side * pix_dir * (22.0 / pix_norm);
          svg << "  <path d=\"M" << px(tail(0)) << " " << px(tail(1)) << "L"
              << px(head(0)) << " " << px(head(1)) << "\" stroke=\"" << kInk
              << "\" stroke-width=\"1.4\" fill=\"none\"/>\n";
          if (lambda < 0)
            append_arrowhead(svg, tail, tail - head, kInk);
          else
            append_arrowhead(svg, head, head - tail, kInk);
        }
      }
      svg << "  <circle cx=\"" << px(c(0)) << "\" cy=\"" << px(c(1))
          << "\" r=\"3.6\" fill=\"" << kInk << "\"/>\n";
    } else if (s.analytic_class == StabilityClass::Sink) {
      svg << "  <circle cx=\"" << px(c(0)) << "\" cy=\"" << px(c(1))
          << "\" r=\"5.2\" fill=\"" << kInk << "\"/>\n";
    } else if (s.analytic_class == StabilityClass::Source) {
      svg << "  <circle cx=\"" << px(c(0)) << "\" cy=\"" << px(c(1))
          << "\" r=\"5.2\" fill=\"#ffffff\" stroke=\"" << kInk
          << "\" stroke-width=\"1.6\"/>\n";
    } else {
      svg << "  <circle cx=\"" << px(c(0)) << "\" cy=\"" << px(c(1))
          << "\" r=\"5.2\" fill=\"#888888\"/>\n";
    }
  }
}

std::string regime_caption(const ModelParams& p) {
  try {
    const RegimeLabel label = classify_regime(p);
    std::string caption = std::string("regime ") + to_string(label.regime) +
                          ", portrait " + to_string(label.portrait);
    caption += label.interior_exists ? ", interior state present"
                                     : ", no interior state";
    return caption;
  } catch (const DegenerateParameters&) {
    return "degenerate parameters: regime classification withheld";
  } catch (const AssumptionsViolated&) {
    return "outside the regime taxonomy (a segregation assumption fails)";
  }
}

}  // namespace

std::string render_portrait(const ModelParams& p, const PortraitSpec& spec) {
  if (spec.size_px < 200)
    throw std::invalid_argument("portrait size must be at least 200 px");
  spec.integrator.validate();
  const Canvas canvas(spec.size_px);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << px(canvas.width) << "\" height=\"" << px(canvas.height)
      << "\" viewBox=\"0 0 " << px(canvas.width) << " " << px(canvas.height)
      << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  if (spec.draw_basins) append_basin_underlay(svg, p, spec, canvas);

  const Eigen::Vector2d v1 = canvas.map(Simplex(1, 0, 0));
  const Eigen::Vector2d v2 = canvas.map(Simplex(0, 1, 0));
  const Eigen::Vector2d v3 = canvas.map(Simplex(0, 0, 1));
  svg << "  <path d=\"M" << px(v1(0)) << " " << px(v1(1)) << "L" << px(v2(0))
      << " " << px(v2(1)) << "L" << px(v3(0)) << " " << px(v3(1))
      << "Z\" fill=\"none\" stroke=\"" << kInk << "\" stroke-width=\"1.6\"/>\n";

  if (spec.draw_trajectories) append_trajectories(svg, p, spec, canvas);
  append_state_markers(svg, p, canvas);

  svg << "  <g font-family=\"Helvetica, Arial, sans-serif\" font-size=\"15\" "
         "fill=\""
      << kInk << "\">\n";
  svg << "    <text x=\"" << px(v1(0) - 8) << "\" y=\"" << px(v1(1) + 20)
      << "\">e1</text>\n";
  svg << "    <text x=\"" << px(v2(0) - 8) << "\" y=\"" << px(v2(1) + 20)
      << "\">e2</text>\n";
  svg << "    <text x=\"" << px(v3(0) - 8) << "\" y=\"" << px(v3(1) - 10)
      << "\">e3</text>\n";
  svg << "    <text x=\"12\" y=\"22\">" << regime_caption(p) << "</text>\n";
  svg << "  </g>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace replidyn
