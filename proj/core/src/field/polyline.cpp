#include "lcs/field/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lcs {

double ring_length(std::span<const Vec2> ring) {
  if (ring.size() < 2) return 0.0;
  double len = norm(ring.front() - ring.back());
  for (std::size_t k = 1; k < ring.size(); ++k) len += norm(ring[k] - ring[k - 1]);
  return len;
}

double polyline_length(std::span<const Vec2> line) {
  double len = 0.0;
  for (std::size_t k = 1; k < line.size(); ++k) len += norm(line[k] - line[k - 1]);
  return len;
}

double signed_area(std::span<const Vec2> ring) {
  if (ring.size() < 3) return 0.0;
  // Shifted to the first vertex to limit cancellation far from the origin.
  const Vec2 o = ring.front();
  double twice = 0.0;
  for (std::size_t k = 1; k + 1 < ring.size(); ++k) twice += cross(ring[k] - o, ring[k + 1] - o);
  return 0.5 * twice;
}

Vec2 ring_centroid(std::span<const Vec2> ring) {
  const double area = signed_area(ring);
  if (ring.empty()) return {};
  const Vec2 o = ring.front();
  if (std::abs(area) < 1e-300) {
    Vec2 sum{};
    for (const auto& p : ring) sum += p;
    return sum / static_cast<double>(ring.size());
  }
  Vec2 acc{};
  for (std::size_t k = 0; k < ring.size(); ++k) {
    const Vec2 a = ring[k] - o, b = ring[(k + 1) % ring.size()] - o;
    const double w = cross(a, b);
    acc += (a + b) * w;
  }
  return o + acc / (6.0 * area);
}

bool point_in_ring(std::span<const Vec2> ring, Vec2 p) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = ring[i];
    const Vec2& b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xcross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xcross) inside = !inside;
    }
  }
  return inside;
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool ring_is_simple(std::span<const Vec2> in) {
  Polyline ring(in.begin(), in.end());
  if (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
  const std::size_t n = ring.size();
  if (n < 3) return false;
  struct Seg {
    double xmin, xmax;
    std::size_t k;
  };
  std::vector<Seg> segs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 &a = ring[k], &b = ring[(k + 1) % n];
    segs[k] = {std::min(a.x, b.x), std::max(a.x, b.x), k};
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& l, const Seg& r) { return l.xmin < r.xmin; });
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t i = segs[p].k;
    const Vec2 a = ring[i], b = ring[(i + 1) % n];
    for (std::size_t q = p + 1; q < n && segs[q].xmin <= segs[p].xmax; ++q) {
      const std::size_t j = segs[q].k;
      // adjacent edges share a vertex by construction
      if (j == (i + 1) % n || i == (j + 1) % n) continue;
      const Vec2 c = ring[j], d = ring[(j + 1) % n];
      if (std::max(c.y, d.y) < std::min(a.y, b.y) || std::max(a.y, b.y) < std::min(c.y, d.y)) continue;
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

double ring_diameter(std::span<const Vec2> ring) {
  double best = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i)
    for (std::size_t j = i + 1; j < ring.size(); ++j) best = std::max(best, norm(ring[i] - ring[j]));
  return best;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  const double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return norm(p - (a + ab * t));
}

Polyline open_ring(Polyline closed) {
  if (closed.size() > 1 && closed.front() == closed.back()) closed.pop_back();
  return closed;
}

Polyline close_ring(Polyline ring) {
  if (!ring.empty() && !(ring.front() == ring.back())) ring.push_back(ring.front());
  return ring;
}

std::vector<double> arclength(std::span<const Vec2> line) {
  std::vector<double> s(line.size(), 0.0);
  for (std::size_t k = 1; k < line.size(); ++k) s[k] = s[k - 1] + norm(line[k] - line[k - 1]);
  return s;
}

}  // namespace lcs
