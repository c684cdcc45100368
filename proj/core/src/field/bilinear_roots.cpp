#include "lcs/field/bilinear_roots.hpp"

#include <algorithm>
#include <cmath>

namespace lcs {

bool changes_sign(const CellValues& f) {
  double lo = f[0][0], hi = f[0][0];
  for (const auto& row : f)
    for (double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  return lo < 0.0 && hi > 0.0;
}

std::vector<Vec2> bilinear_common_roots(const CellValues& f, const CellValues& g) {
  // f = a0 + a1 s + a2 t + a3 s t, likewise g with b.
  const double a0 = f[0][0], a1 = f[1][0] - f[0][0], a2 = f[0][1] - f[0][0],
               a3 = f[1][1] - f[1][0] - f[0][1] + f[0][0];
  const double b0 = g[0][0], b1 = g[1][0] - g[0][0], b2 = g[0][1] - g[0][0],
               b3 = g[1][1] - g[1][0] - g[0][1] + g[0][0];
  // Eliminating t gives A s^2 + B s + C = 0.
  const double A = a1 * b3 - b1 * a3;
  const double B = a0 * b3 + a1 * b2 - b0 * a3 - b1 * a2;
  const double C = a0 * b2 - b0 * a2;

  const double scale = std::max({std::abs(A), std::abs(B), std::abs(C)});
  std::vector<double> candidates;
  if (scale == 0.0) return {};
  if (std::abs(A) <= 1e-14 * scale) {
    if (std::abs(B) > 1e-14 * scale) candidates.push_back(-C / B);
  } else {
    const double disc = B * B - 4.0 * A * C;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (B + std::copysign(sq, B));
      candidates.push_back(q / A);
      if (q != 0.0) candidates.push_back(C / q);
    }
  }

  constexpr double eps = 1e-10;
  const double fscale = std::max({std::abs(a0), std::abs(a1), std::abs(a2), std::abs(a3)});
  const double gscale = std::max({std::abs(b0), std::abs(b1), std::abs(b2), std::abs(b3)});
  std::vector<Vec2> roots;
  for (double s : candidates) {
    if (!(s >= -eps && s <= 1.0 + eps)) continue;
    s = std::clamp(s, 0.0, 1.0);
    const double da = a2 + a3 * s, db = b2 + b3 * s;
    double t;
    if (std::abs(da) >= std::abs(db)) {
      if (da == 0.0) continue;
      t = -(a0 + a1 * s) / da;
    } else {
      t = -(b0 + b1 * s) / db;
    }
    if (!(t >= -eps && t <= 1.0 + eps)) continue;
    t = std::clamp(t, 0.0, 1.0);
    if (std::abs(bilinear(f, s, t)) > 1e-8 * fscale || std::abs(bilinear(g, s, t)) > 1e-8 * gscale) continue;
    const Vec2 r{s, t};
    if (std::none_of(roots.begin(), roots.end(), [&](const Vec2& o) { return norm(o - r) < 1e-9; }))
      roots.push_back(r);
  }
  return roots;
}

}  // namespace lcs
