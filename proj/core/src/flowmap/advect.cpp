#include "lcs/flowmap/advect.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lcs/error.hpp"

namespace lcs {

VelocitySource VelocitySource::from_series(std::shared_ptr<const VelocityInterpolator> interp) {
  if (!interp) throw ConfigError("VelocitySource: null interpolator");
  VelocitySource src;
  src.t_begin = interp->t_begin();
  src.t_end = interp->t_end();
  src.t_origin = interp->t_begin();
  src.breakpoint_dt = interp->series().size() > 1 ? interp->frame_dt() : 0.0;
  src.domain = interp->grid();
  src.u = [ip = std::move(interp)](Vec2 x, double t) { return (*ip)(x, t); };
  return src;
}

VelocitySource VelocitySource::analytic(std::function<Vec2(Vec2, double)> u, double t_begin, double t_end) {
  VelocitySource src;
  src.u = std::move(u);
  src.t_begin = t_begin;
  src.t_end = t_end;
  src.t_origin = t_begin;
  return src;
}

namespace {

struct Integrator {
  const VelocitySource& src;
  const AdvectOptions& opt;
  double h;

  Vec2 rk4(Vec2 x, double t, double dt, Vec2 k1) const {
    const Vec2 k2 = src.u(x + k1 * (0.5 * dt), t + 0.5 * dt);
    const Vec2 k3 = src.u(x + k2 * (0.5 * dt), t + 0.5 * dt);
    const Vec2 k4 = src.u(x + k3 * dt, t + dt);
    return x + (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (dt / 6.0);
  }

  // Integrates from ts to te (either direction) without crossing breakpoints.
  Vec2 segment(Vec2 x, double ts, double te) {
    const double dir = te > ts ? 1.0 : -1.0;
    double t = ts;
    while (t != te) {
      const double remaining = std::abs(te - t);
      if (remaining <= 1e-12 * std::max(1.0, std::abs(te))) break;
      bool clamped = remaining <= std::max(h * (1.0 + 1e-6), h + 100.0 * opt.dt_min);
      double step = clamped ? remaining : h;
      int rejections = 0;
      for (;;) {
        if (step < opt.dt_min)
          throw StiffnessError("advect_particle: step size underflow at t=" + std::to_string(t));
        const double dt = dir * step;
        const Vec2 k1 = src.u(x, t);
        const Vec2 full = rk4(x, t, dt, k1);
        const Vec2 mid = rk4(x, t, 0.5 * dt, k1);
        const Vec2 half = rk4(mid, t + 0.5 * dt, 0.5 * dt, src.u(mid, t + 0.5 * dt));
        const Vec2 d = half - full;
        double err = std::max(std::abs(d.x), std::abs(d.y)) / 15.0;
        if (!std::isfinite(err)) err = INFINITY;
        if (err <= opt.tol) {
          x = half + d / 15.0;
          t = clamped ? te : t + dt;
          if (!clamped || rejections > 0) h = err < opt.tol / 32.0 ? 2.0 * step : step;
          break;
        }
        step *= 0.5;
        clamped = false;
        ++rejections;
      }
    }
    return x;
  }
};

double next_breakpoint(const VelocitySource& src, double t, double t1) {
  if (src.breakpoint_dt <= 0.0) return t1;
  const double pos = (t - src.t_origin) / src.breakpoint_dt;
  double tb;
  if (t1 > t) {
    tb = src.t_origin + (std::floor(pos + 1e-9) + 1.0) * src.breakpoint_dt;
    return std::min(tb, t1);
  }
  tb = src.t_origin + (std::ceil(pos - 1e-9) - 1.0) * src.breakpoint_dt;
  return std::max(tb, t1);
}

void check_span(const VelocitySource& src, double t) {
  const double slack = 1e-12 * std::max(1.0, std::abs(src.t_end));
  if (t < src.t_begin - slack || t > src.t_end + slack)
    throw OutOfRangeError("advect_particle: time " + std::to_string(t) + " outside [" + std::to_string(src.t_begin) +
                          ", " + std::to_string(src.t_end) + "]");
}

}  // namespace

Vec2 advect_unwrapped(const VelocitySource& src, Vec2 x0, double t0, double t1, const AdvectOptions& opt) {
  check_span(src, t0);
  check_span(src, t1);
  if (!(opt.tol > 0.0)) throw ConfigError("advect_particle: tol must be > 0");
  if (t0 == t1) return x0;
  double h = opt.dt_initial;
  if (!(h > 0.0)) h = 0.25 * (src.breakpoint_dt > 0.0 ? src.breakpoint_dt : std::abs(t1 - t0));
  Integrator integ{src, opt, h};
  Vec2 x = x0;
  double t = t0;
  while (t != t1) {
    const double tb = next_breakpoint(src, t, t1);
    x = integ.segment(x, t, tb);
    t = tb;
  }
  return x;
}

Vec2 advect_particle(const VelocitySource& src, Vec2 x0, double t0, double t1, const AdvectOptions& opt) {
  const Vec2 x = advect_unwrapped(src, x0, t0, t1, opt);
  return src.domain ? src.domain->wrap(x) : x;
}

std::vector<Vec2> advect_trajectory(const VelocitySource& src, Vec2 x0, double t0, const std::vector<double>& times,
                                    const AdvectOptions& opt) {
  std::vector<Vec2> out;
  out.reserve(times.size());
  Vec2 x = x0;
  double t = t0;
  for (double tk : times) {
    x = advect_unwrapped(src, x, t, tk, opt);
    t = tk;
    out.push_back(x);
  }
  return out;
}

}  // namespace lcs
