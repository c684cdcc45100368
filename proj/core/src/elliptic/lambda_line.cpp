#include "lcs/elliptic/lambda_line.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lcs/error.hpp"

namespace lcs {

const char* to_string(LineStop s) {
  switch (s) {
    case LineStop::closed: return "closed";
    case LineStop::max_arclength: return "max_arclength";
    case LineStop::inadmissible: return "inadmissible";
    case LineStop::singularity: return "singularity";
    case LineStop::strayed: return "strayed";
    case LineStop::callback: return "callback";
  }
  return "unknown";
}

double default_line_step(const Grid2D& g) { return 0.25 * std::min(g.dx(), g.dy()); }
double default_closure_tol(const Grid2D& g) { return std::max(1e-3, 0.5 * std::min(g.dx(), g.dy())); }

LambdaLine integrate_lambda_line(const EtaField& eta, Vec2 x0, const LambdaLineOptions& opt,
                                 const LineObserver& observer) {
  const Grid2D& g = eta.cg().grid();
  const double h = opt.step > 0.0 ? opt.step : default_line_step(g);
  const double max_len = opt.max_arclength > 0.0 ? opt.max_arclength : g.lx() + g.ly();
  const double tol = opt.closure_tol > 0.0 ? opt.closure_tol : default_closure_tol(g);
  const double cos_max = std::cos(opt.closure_angle_deg * std::numbers::pi / 180.0);

  LambdaLine line;
  Vec2 t0 = eta(x0);
  if (dot(t0, opt.initial_direction) < 0.0) t0 = -t0;
  line.initial_tangent = t0;
  line.points.push_back(x0);

  auto aligned = [&](Vec2 x, Vec2 ref) {
    const Vec2 v = eta(x);
    return dot(v, ref) < 0.0 ? -v : v;
  };

  Vec2 x = x0, tangent = t0;
  while (line.length < max_len) {
    Vec2 xn;
    try {
      const Vec2 k1 = aligned(x, tangent);
      const Vec2 k2 = aligned(x + k1 * (0.5 * h), k1);
      const Vec2 k3 = aligned(x + k2 * (0.5 * h), k1);
      const Vec2 k4 = aligned(x + k3 * h, k1);
      xn = x + (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (h / 6.0);
    } catch (const AdmissibilityError&) {
      line.stop = LineStop::inadmissible;
      break;
    } catch (const SingularityError&) {
      line.stop = LineStop::singularity;
      break;
    }
    const Vec2 step = xn - x;
    const double len = norm(step);
    if (!(len > 0.0) || !std::isfinite(len)) {
      line.stop = LineStop::singularity;
      break;
    }
    tangent = step / len;

    if (opt.detect_closure && line.length > 4.0 * h + 2.0 * tol && dot(tangent, t0) >= cos_max) {
      const double d = point_segment_distance(x0, x, xn);
      if (d <= tol) {
        const double u = std::clamp(dot(x0 - x, step) / (len * len), 0.0, 1.0);
        const Vec2 foot = x + step * u;
        line.length += norm(foot - x);
        if (!(foot == x)) line.points.push_back(foot);
        line.length += norm(x0 - foot);
        line.points.push_back(x0);
        line.stop = LineStop::closed;
        line.final_tangent = tangent;
        return line;
      }
    }
    line.points.push_back(xn);
    line.length += len;
    if (observer && observer(x, xn, tangent)) {
      line.stop = LineStop::callback;
      line.final_tangent = tangent;
      return line;
    }
    if (norm(xn - opt.stray_center) > opt.stray_radius) {
      line.stop = LineStop::strayed;
      break;
    }
    x = xn;
  }
  line.final_tangent = tangent;
  return line;
}

}  // namespace lcs
