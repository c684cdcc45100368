#pragma once

#include <functional>
#include <limits>

#include "lcs/elliptic/eta.hpp"

namespace lcs {

enum class LineStop : std::uint8_t { closed, max_arclength, inadmissible, singularity, strayed, callback };

const char* to_string(LineStop s);

struct LambdaLineOptions {
  double step = 0.0;          // 0: min(dx, dy)/4
  double max_arclength = 0.0;  // 0: lx + ly
  double closure_tol = 0.0;    // 0: max(1e-3, min(dx, dy)/2)
  double closure_angle_deg = 10.0;
  bool detect_closure = true;
  // Stop once farther than stray_radius from stray_center (unwrapped).
  double stray_radius = std::numeric_limits<double>::infinity();
  Vec2 stray_center{};
  // Preferred sense of the first tangent; zero picks the raw eta sign.
  Vec2 initial_direction{};
};

struct LambdaLine {
  Polyline points;  // unwrapped; closed lines end with the first vertex
  LineStop stop = LineStop::max_arclength;
  double length = 0.0;
  Vec2 initial_tangent{};
  Vec2 final_tangent{};
};

double default_line_step(const Grid2D& g);
double default_closure_tol(const Grid2D& g);

// Called after each accepted step with the segment just added and the
// current tangent; returning true stops the line with LineStop::callback.
using LineObserver = std::function<bool(Vec2 from, Vec2 to, Vec2 tangent)>;

// Fixed-step RK4 in arclength on the line field, with every stage's sign
// aligned to the previous tangent. Throws SingularityError or
// AdmissibilityError only when x0 itself is unusable.
LambdaLine integrate_lambda_line(const EtaField& eta, Vec2 x0, const LambdaLineOptions& opt = {},
                                 const LineObserver& observer = {});

}  // namespace lcs
