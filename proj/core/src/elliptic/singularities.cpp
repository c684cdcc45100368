#include "lcs/elliptic/singularities.hpp"

#include <cmath>
#include <numbers>

#include "lcs/field/bilinear_roots.hpp"

namespace lcs {

SingularitySet find_singularities(const CauchyGreenField& cg) {
  SingularitySet out;
  const Grid2D& g = cg.grid;
  const std::size_t nx = g.nx(), ny = g.ny();
  std::size_t degenerate = 0;
  std::vector<double> f(g.size()), h(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const SymTensor& c = cg.tensor[k];
    f[k] = c.c11 - c.c22;
    h[k] = c.c12;
    const CGEigen e = eigen_symmetric(c);
    if (e.degenerate) ++degenerate;
  }
  if (2 * degenerate > g.size()) {
    out.degenerate_field = true;
    return out;
  }
  const CGInterpolator interp(cg);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      const std::size_t i1 = (i + 1) % nx, j1 = (j + 1) % ny;
      const CellValues F{{{f[g.index(i, j)], f[g.index(i, j1)]}, {f[g.index(i1, j)], f[g.index(i1, j1)]}}};
      const CellValues H{{{h[g.index(i, j)], h[g.index(i, j1)]}, {h[g.index(i1, j)], h[g.index(i1, j1)]}}};
      if (!changes_sign(F) || !changes_sign(H)) continue;
      for (const Vec2& r : bilinear_common_roots(F, H)) {
        const Vec2 p = g.wrap(g.node(i, j) + Vec2{r.x * g.dx(), r.y * g.dy()});
        bool dup = false;
        for (const auto& s : out.points)
          if (norm(g.periodic_delta(s.position, p)) < 1e-9 * g.dx()) dup = true;
        if (dup) continue;
        const CGEigen e = interp.eigen(p);
        out.points.push_back({p, i, j, e.lambda2 > 0.0 ? (e.lambda2 - e.lambda1) / e.lambda2 : 0.0});
      }
    }
  return out;
}

int tensor_winding(std::span<const Vec2> curve, const CGInterpolator& cg) {
  const Polyline ring = open_ring(Polyline(curve.begin(), curve.end()));
  if (ring.size() < 3) return 0;
  const double hmax = 0.25 * std::min(cg.grid().dx(), cg.grid().dy());
  auto angle = [&](Vec2 x) {
    const SymTensor c = cg.tensor(x);
    return std::atan2(2.0 * c.c12, c.c11 - c.c22);
  };
  double total = 0.0;
  double prev = angle(ring.front());
  for (std::size_t k = 0; k < ring.size(); ++k) {
    const Vec2 a = ring[k], b = ring[(k + 1) % ring.size()];
    const auto pieces = static_cast<std::size_t>(std::ceil(norm(b - a) / hmax));
    for (std::size_t m = 1; m <= std::max<std::size_t>(pieces, 1); ++m) {
      const double cur = angle(a + (b - a) * (static_cast<double>(m) / static_cast<double>(std::max<std::size_t>(pieces, 1))));
      double d = cur - prev;
      d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
      total += d;
      prev = cur;
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

EnclosedSingularities enclosed_singularities(std::span<const Vec2> curve, const SingularitySet& sing,
                                             const CGInterpolator& cg) {
  EnclosedSingularities out;
  const Polyline ring = open_ring(Polyline(curve.begin(), curve.end()));
  if (ring.size() < 3) return out;
  const Grid2D& g = cg.grid();
  const Vec2 c = ring_centroid(ring);
  for (const auto& p : sing.points) {
    const Vec2 img = c + g.periodic_delta(c, p.position);
    if (point_in_ring(ring, img)) out.points.push_back(img);
  }
  const double h = std::min(g.dx(), g.dy());
  const std::size_t n = out.points.size();
  std::vector<std::size_t> label(n);
  for (std::size_t k = 0; k < n; ++k) label[k] = k;
  auto root = [&](std::size_t k) {
    while (label[k] != k) k = label[k] = label[label[k]];
    return k;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (norm(out.points[a] - out.points[b]) < 1.5 * h) label[root(a)] = root(b);
  for (std::size_t r = 0; r < n; ++r) {
    if (root(r) != r) continue;
    Vec2 centre{};
    double spread = 0.0;
    int members = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (root(k) == r) {
        centre += out.points[k];
        ++members;
      }
    centre = centre / members;
    for (std::size_t k = 0; k < n; ++k)
      if (root(k) == r) spread = std::max(spread, norm(out.points[k] - centre));
    const double radius = spread + 1.5 * h;
    Polyline loop;
    for (int m = 0; m < 64; ++m) {
      const double th = 2.0 * std::numbers::pi * m / 64.0;
      loop.push_back(centre + Vec2{std::cos(th), std::sin(th)} * radius);
    }
    out.count += std::max(members, std::abs(tensor_winding(loop, cg)));
  }
  return out;
}

}  // namespace lcs
