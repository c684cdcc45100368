#include "lcs/material/material_curve.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "lcs/error.hpp"

namespace lcs {

MaterialCurve make_material_curve(const Polyline& curve, double t0, double threshold) {
  MaterialCurve mc;
  mc.vertices = open_ring(curve);
  if (mc.vertices.size() < 3) throw ConfigError("material curve needs at least 3 distinct vertices");
  mc.labels = mc.vertices;
  mc.time = t0;
  mc.t_initial = t0;
  mc.threshold = threshold > 0.0 ? threshold : 2.0 * ring_length(mc.vertices) / static_cast<double>(mc.vertices.size());
  if (!(mc.threshold > 0.0)) throw ConfigError("material curve has zero length");
  return mc;
}

namespace {

// Advects points[k] from t_from to t_to in place.
void advect_all(std::vector<Vec2>& points, const VelocitySource& src, double t_from, double t_to,
                const AdvectOptions& opt, std::size_t label_offset) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  std::exception_ptr failure;
  std::string message;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      points[static_cast<std::size_t>(k)] = advect_unwrapped(src, points[static_cast<std::size_t>(k)], t_from, t_to, opt);
    } catch (const std::exception& e) {
#pragma omp critical(lcs_curve_failure)
      if (!failure) {
        failure = std::current_exception();
        message = "advect_curve: vertex " + std::to_string(label_offset + static_cast<std::size_t>(k)) + ": " + e.what();
      }
    }
  }
  if (failure) throw NumericError(message);
}

void refine(MaterialCurve& c, const VelocitySource& src, const CurveAdvectOptions& opt) {
  for (int pass = 0; pass < opt.max_refine_passes; ++pass) {
    const std::size_t n = c.vertices.size();
    std::vector<std::size_t> split;
    for (std::size_t k = 0; k < n; ++k)
      if (norm(c.vertices[(k + 1) % n] - c.vertices[k]) > c.threshold) split.push_back(k);
    if (split.empty()) return;
    if (n + split.size() > opt.max_vertices) {
      c.refinement_capped = true;
      return;
    }
    std::vector<Vec2> labels(split.size()), moved(split.size());
    for (std::size_t m = 0; m < split.size(); ++m) {
      const std::size_t k = split[m];
      labels[m] = (c.labels[k] + c.labels[(k + 1) % n]) * 0.5;
    }
    moved = labels;
    advect_all(moved, src, c.t_initial, c.time, opt.advect, n);
    Polyline verts, labs;
    verts.reserve(n + split.size());
    labs.reserve(n + split.size());
    std::size_t m = 0;
    for (std::size_t k = 0; k < n; ++k) {
      verts.push_back(c.vertices[k]);
      labs.push_back(c.labels[k]);
      if (m < split.size() && split[m] == k) {
        verts.push_back(moved[m]);
        labs.push_back(labels[m]);
        ++m;
      }
    }
    c.vertices = std::move(verts);
    c.labels = std::move(labs);
  }
  c.refinement_capped = true;
}

}  // namespace

std::vector<MaterialCurve> advect_curve(const MaterialCurve& curve, const VelocitySource& src, double t0, double t1,
                                        double store_every, const CurveAdvectOptions& opt) {
  const double slack = 1e-12 * std::max(1.0, std::abs(src.t_end));
  for (double t : {t0, t1, curve.time})
    if (t < src.t_begin - slack || t > src.t_end + slack)
      throw OutOfRangeError("advect_curve: time " + std::to_string(t) + " outside the velocity span");
  std::vector<double> times{t0};
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  if (store_every > 0.0) {
    for (std::size_t k = 1;; ++k) {
      const double t = t0 + dir * static_cast<double>(k) * store_every;
      if (dir * (t1 - t) <= 1e-12 * std::max(1.0, std::abs(t1))) break;
      times.push_back(t);
    }
  }
  if (t1 != t0) times.push_back(t1);

  MaterialCurve cur = curve;
  if (cur.time != t0) {
    advect_all(cur.vertices, src, cur.time, t0, opt.advect, 0);
    cur.time = t0;
    refine(cur, src, opt);
  }
  std::vector<MaterialCurve> out{cur};
  for (std::size_t k = 1; k < times.size(); ++k) {
    advect_all(cur.vertices, src, cur.time, times[k], opt.advect, 0);
    cur.time = times[k];
    refine(cur, src, opt);
    out.push_back(cur);
  }
  return out;
}

StretchHistory relative_stretching(const std::vector<MaterialCurve>& history) {
  if (history.size() < 2) throw ConfigError("relative_stretching: need at least two stored curves");
  StretchHistory h;
  const double l0 = history.front().length();
  if (!(l0 > 0.0)) throw ConfigError("relative_stretching: initial curve has zero length");
  for (const auto& c : history) {
    const double l = c.length();
    h.times.push_back(c.time);
    h.lengths.push_back(l);
    h.delta.push_back((l - l0) / l0);
  }
  return h;
}

Polyline normal_perturbation(const Polyline& curve, double eps) {
  if (eps == 0.0) return curve;
  const bool closed_input = curve.size() > 1 && curve.front() == curve.back();
  const Polyline ring = open_ring(curve);
  const std::size_t n = ring.size();
  if (n < 3) throw ConfigError("normal_perturbation: curve needs at least 3 vertices");
  const double orient = signed_area(ring) >= 0.0 ? 1.0 : -1.0;
  auto outward = [&](Vec2 e) {
    const double len = norm(e);
    return len > 0.0 ? Vec2{e.y, -e.x} * (orient / len) : Vec2{};
  };
  Polyline out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 nrm = outward(ring[k] - ring[(k + n - 1) % n]) + outward(ring[(k + 1) % n] - ring[k]);
    const double len = norm(nrm);
    if (!(len > 0.0)) throw NumericError("normal_perturbation: undefined normal at vertex " + std::to_string(k));
    out[k] = ring[k] + nrm * (eps / len);
  }
  if (!ring_is_simple(out))
    throw NumericError("normal_perturbation: eps=" + std::to_string(eps) + " makes the curve self-intersect");
  return closed_input ? close_ring(std::move(out)) : out;
}

namespace {

void row_crossings(const Polyline& ring, double y, std::vector<double>& xs) {
  xs.clear();
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = ring[i];
    const Vec2& b = ring[j];
    if ((a.y > y) != (b.y > y)) xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
  }
  std::sort(xs.begin(), xs.end());
}

}  // namespace

double symmetric_difference_area(const Polyline& a, const Polyline& b, std::size_t resolution) {
  const Polyline ra = open_ring(a), rb = open_ring(b);
  if (ra.size() < 3 || rb.size() < 3) throw ConfigError("symmetric_difference_area: degenerate curve");
  double ylo = ra[0].y, yhi = ra[0].y;
  for (const auto* r : {&ra, &rb})
    for (const auto& p : *r) {
      ylo = std::min(ylo, p.y);
      yhi = std::max(yhi, p.y);
    }
  const double dy = (yhi - ylo) / static_cast<double>(resolution);
  if (!(dy > 0.0)) return 0.0;
  std::vector<double> xa, xb;
  double area = 0.0;
  for (std::size_t r = 0; r < resolution; ++r) {
    const double y = ylo + (static_cast<double>(r) + 0.5) * dy;
    row_crossings(ra, y, xa);
    row_crossings(rb, y, xb);
    // sweep the merged crossings; parity of each polygon toggles at its own
    std::size_t i = 0, j = 0;
    bool in_a = false, in_b = false;
    double last = 0.0, len = 0.0;
    while (i < xa.size() || j < xb.size()) {
      const bool take_a = j >= xb.size() || (i < xa.size() && xa[i] <= xb[j]);
      const double x = take_a ? xa[i++] : xb[j++];
      if (in_a != in_b) len += x - last;
      if (take_a)
        in_a = !in_a;
      else
        in_b = !in_b;
      last = x;
    }
    area += len * dy;
  }
  return area;
}

}  // namespace lcs
