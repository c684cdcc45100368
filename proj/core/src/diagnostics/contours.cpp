#include "lcs/diagnostics/contours.hpp"

#include <array>
#include <cmath>
#include <cstdint>

namespace lcs {

namespace {

constexpr std::int64_t kNone = -1;

struct EdgeGraph {
  std::vector<std::array<std::int64_t, 2>> nbr;
  std::vector<std::uint8_t> degree;
  std::vector<Vec2> pos;

  explicit EdgeGraph(std::size_t n) : nbr(n, {kNone, kNone}), degree(n, 0), pos(n) {}

  void link(std::int64_t a, std::int64_t b) {
    auto add = [&](std::int64_t p, std::int64_t q) {
      auto& d = degree[static_cast<std::size_t>(p)];
      if (d < 2) nbr[static_cast<std::size_t>(p)][d++] = q;
    };
    add(a, b);
    add(b, a);
  }
};

}  // namespace

std::vector<Contour> extract_contours(const ScalarField2D& f, double level, bool periodic) {
  const Grid2D& g = f.grid;
  const std::size_t nx = g.nx(), ny = g.ny();
  auto val = [&](std::size_t i, std::size_t j) { return f.values[g.index(i % nx, j % ny)]; };
  auto inside = [&](double v) { return v >= level; };
  auto hid = [&](std::size_t i, std::size_t j) { return static_cast<std::int64_t>(2 * ((i % nx) * ny + j % ny)); };
  auto vid = [&](std::size_t i, std::size_t j) { return static_cast<std::int64_t>(2 * ((i % nx) * ny + j % ny) + 1); };

  EdgeGraph graph(2 * g.size());
  auto crossing = [&](std::int64_t id, Vec2 pa, Vec2 pb, double fa, double fb) {
    const double t = (level - fa) / (fb - fa);
    graph.pos[static_cast<std::size_t>(id)] = pa + (pb - pa) * t;
  };

  const std::size_t ci = periodic ? nx : nx - 1, cj = periodic ? ny : ny - 1;
  for (std::size_t i = 0; i < ci; ++i)
    for (std::size_t j = 0; j < cj; ++j) {
      const double fa = val(i, j), fb = val(i + 1, j), fc = val(i + 1, j + 1), fd = val(i, j + 1);
      const bool a = inside(fa), b = inside(fb), c = inside(fc), d = inside(fd);
      const Vec2 pa = g.node(i, j), pb = g.node(i + 1, j), pc = g.node(i + 1, j + 1), pd = g.node(i, j + 1);
      const std::int64_t bottom = hid(i, j), right = vid(i + 1, j), top = hid(i, j + 1), left = vid(i, j);
      std::vector<std::int64_t> cut;
      if (a != b) {
        crossing(bottom, pa, pb, fa, fb);
        cut.push_back(bottom);
      }
      if (b != c) {
        crossing(right, pb, pc, fb, fc);
        cut.push_back(right);
      }
      if (c != d) {
        crossing(top, pd, pc, fd, fc);
        cut.push_back(top);
      }
      if (d != a) {
        crossing(left, pa, pd, fa, fd);
        cut.push_back(left);
      }
      if (cut.size() == 2) {
        graph.link(cut[0], cut[1]);
      } else if (cut.size() == 4) {
        const bool centre = inside(0.25 * (fa + fb + fc + fd));
        // a and c share a state here iff the cell is the a/c diagonal case
        const bool ac_inside = a;
        if (centre == ac_inside) {
          graph.link(bottom, right);
          graph.link(top, left);
        } else {
          graph.link(bottom, left);
          graph.link(right, top);
        }
      }
    }

  std::vector<Contour> out;
  std::vector<std::uint8_t> used(graph.degree.size(), 0);
  auto walk = [&](std::int64_t start) {
    Contour c;
    std::int64_t prev = kNone, cur = start;
    Vec2 p = graph.pos[static_cast<std::size_t>(start)];
    c.points.push_back(p);
    used[static_cast<std::size_t>(start)] = 1;
    for (;;) {
      const auto& nb = graph.nbr[static_cast<std::size_t>(cur)];
      const auto deg = graph.degree[static_cast<std::size_t>(cur)];
      std::int64_t next = kNone;
      for (std::uint8_t k = 0; k < deg; ++k)
        if (nb[k] != prev && (!used[static_cast<std::size_t>(nb[k])] || (nb[k] == start && c.points.size() > 2))) {
          next = nb[k];
          break;
        }
      if (next == kNone) break;
      const Vec2 q = graph.pos[static_cast<std::size_t>(next)];
      p = periodic ? p + g.periodic_delta(p, q) : q;
      c.points.push_back(p);
      if (next == start) {
        c.closed = norm(p - c.points.front()) < 1e-9 * (g.lx() + g.ly());
        if (c.closed) c.points.back() = c.points.front();
        break;
      }
      used[static_cast<std::size_t>(next)] = 1;
      prev = cur;
      cur = next;
    }
    out.push_back(std::move(c));
  };
  for (std::size_t k = 0; k < graph.degree.size(); ++k)
    if (graph.degree[k] == 1 && !used[k]) walk(static_cast<std::int64_t>(k));
  for (std::size_t k = 0; k < graph.degree.size(); ++k)
    if (graph.degree[k] == 2 && !used[k]) walk(static_cast<std::int64_t>(k));
  return out;
}

bool point_in_ring_periodic(std::span<const Vec2> ring, Vec2 p, const Grid2D& g) {
  if (ring.empty()) return false;
  const Vec2 c = ring_centroid(ring);
  const Vec2 base = c + g.periodic_delta(c, p);
  for (int mx = -1; mx <= 1; ++mx)
    for (int my = -1; my <= 1; ++my)
      if (point_in_ring(ring, base + Vec2{mx * g.lx(), my * g.ly()})) return true;
  return false;
}

}  // namespace lcs
