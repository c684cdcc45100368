#include "lcs/diagnostics/eddies.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lcs/field/bilinear_roots.hpp"
#include "lcs/field/spectral.hpp"
#include "lcs/field/spline.hpp"

namespace lcs {

const char* to_string(CriticalKind k) {
  switch (k) {
    case CriticalKind::maximum: return "maximum";
    case CriticalKind::minimum: return "minimum";
    case CriticalKind::saddle: return "saddle";
    case CriticalKind::degenerate: return "degenerate";
  }
  return "unknown";
}

namespace {

bool brackets_zero(const CellValues& f) {
  double lo = f[0][0], hi = f[0][0];
  for (const auto& row : f)
    for (double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  return lo <= 0.0 && hi >= 0.0;
}

CellValues corners(const std::vector<double>& a, const Grid2D& g, std::size_t i, std::size_t j) {
  const std::size_t i1 = (i + 1) % g.nx(), j1 = (j + 1) % g.ny();
  return {{{a[g.index(i, j)], a[g.index(i, j1)]}, {a[g.index(i1, j)], a[g.index(i1, j1)]}}};
}

}  // namespace

std::vector<CriticalPoint> find_critical_points(const ScalarField2D& f) {
  const Grid2D& g = f.grid;
  const VectorField2D grad = spectral_gradient(f);
  const VectorField2D hx = spectral_gradient(ScalarField2D(g, grad.u, f.time));
  const ScalarField2D fyy = spectral_derivative_y(ScalarField2D(g, grad.v, f.time));
  const PeriodicSpline2D spline(f);
  double hscale = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k)
    hscale = std::max({hscale, std::abs(hx.u[k]), std::abs(hx.v[k]), std::abs(fyy.values[k])});

  std::vector<CriticalPoint> out;
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) {
      const CellValues F = corners(grad.u, g, i, j);
      const CellValues G = corners(grad.v, g, i, j);
      if (!brackets_zero(F) || !brackets_zero(G)) continue;
      for (const Vec2& r : bilinear_common_roots(F, G)) {
        const Vec2 p = g.wrap(g.node(i, j) + Vec2{r.x * g.dx(), r.y * g.dy()});
        bool dup = false;
        for (const auto& c : out)
          if (norm(g.periodic_delta(c.position, p)) < 1e-6 * g.dx()) dup = true;
        if (dup) continue;
        const double fxx = bilinear(corners(hx.u, g, i, j), r.x, r.y);
        const double fxy = bilinear(corners(hx.v, g, i, j), r.x, r.y);
        const double fy2 = bilinear(corners(fyy.values, g, i, j), r.x, r.y);
        const double det = fxx * fy2 - fxy * fxy;
        CriticalPoint cp;
        cp.position = p;
        cp.value = spline(p);
        if (std::abs(det) <= 1e-12 * hscale * hscale)
          cp.kind = CriticalKind::degenerate;
        else if (det < 0.0)
          cp.kind = CriticalKind::saddle;
        else
          cp.kind = fxx + fy2 < 0.0 ? CriticalKind::maximum : CriticalKind::minimum;
        out.push_back(cp);
      }
    }
  return out;
}

std::vector<EddyPatch> level_set_eddies(const ScalarField2D& f, const EddyOptions& opt) {
  const Grid2D& g = f.grid;
  const auto cps = find_critical_points(f);
  std::vector<const CriticalPoint*> extrema, saddles;
  for (const auto& c : cps) {
    if (c.kind == CriticalKind::saddle) saddles.push_back(&c);
    if (c.kind == CriticalKind::maximum || c.kind == CriticalKind::minimum) extrema.push_back(&c);
  }
  ScalarField2D neg = f;
  for (auto& v : neg.values) v = -v;

  std::vector<EddyPatch> out;
  for (const CriticalPoint* e : extrema) {
    const bool is_max = e->kind == CriticalKind::maximum;
    const ScalarField2D& h = is_max ? f : neg;

    auto admissible = [&](double c) -> std::optional<Polyline> {
      std::optional<Polyline> best;
      double best_area = 0.0;
      for (const auto& ct : extract_contours(h, c)) {
        if (!ct.closed) continue;
        if (!point_in_ring_periodic(ct.points, e->position, g)) continue;
        const double area = std::abs(signed_area(ct.points));
        if (!best || area < best_area) {
          best = ct.points;
          best_area = area;
        }
      }
      if (!best) return std::nullopt;
      for (const CriticalPoint* s : saddles)
        if (point_in_ring_periodic(*best, s->position, g)) return std::nullopt;
      for (const CriticalPoint* o : extrema)
        if (o != e && point_in_ring_periodic(*best, o->position, g)) return std::nullopt;
      return best;
    };

    const double ux = (g.wrap(e->position).x - g.x0()) / g.dx(), uy = (g.wrap(e->position).y - g.y0()) / g.dy();
    const auto i = static_cast<std::size_t>(std::floor(ux)) % g.nx(), j = static_cast<std::size_t>(std::floor(uy)) % g.ny();
    const CellValues cell = corners(h.values, g, i, j);
    double hi = std::min({cell[0][0], cell[0][1], cell[1][0], cell[1][1]});
    double lo = *std::min_element(h.values.begin(), h.values.end());
    if (!(hi > lo)) continue;
    hi -= 1e-12 * (std::abs(hi) + 1.0);
    auto ring = admissible(hi);
    if (!ring) continue;
    for (int step = 0; step < opt.bisection_steps; ++step) {
      const double mid = 0.5 * (lo + hi);
      if (auto r = admissible(mid)) {
        hi = mid;
        ring = std::move(r);
      } else {
        lo = mid;
      }
    }
    EddyPatch patch;
    Polyline pts = open_ring(*ring);
    if (signed_area(pts) < 0.0) std::reverse(pts.begin(), pts.end());
    patch.area = signed_area(pts);
    patch.boundary = close_ring(std::move(pts));
    patch.center = e->position;
    patch.stream_value = is_max ? hi : -hi;
    patch.kind = e->kind;
    out.push_back(std::move(patch));
  }
  return out;
}

std::vector<EddyPatch> streamline_eddies(const ScalarField2D& omega, const EddyOptions& opt) {
  return level_set_eddies(invert_laplacian_neg(omega), opt);
}

}  // namespace lcs
