#pragma once

#include <span>
#include <vector>

#include "lcs/field/vec2.hpp"

namespace lcs {

using Polyline = std::vector<Vec2>;

// Ring helpers treat the vertex list as implicitly closed (last -> first).
// A trailing vertex equal to the first is tolerated: it contributes a
// zero-length segment.
double ring_length(std::span<const Vec2> ring);
double polyline_length(std::span<const Vec2> line);
// Shoelace formula; positive for counter-clockwise rings.
double signed_area(std::span<const Vec2> ring);
Vec2 ring_centroid(std::span<const Vec2> ring);
// Even-odd rule.
bool point_in_ring(std::span<const Vec2> ring, Vec2 p);
// True when no two non-adjacent edges intersect.
bool ring_is_simple(std::span<const Vec2> ring);
// Largest vertex-to-vertex distance.
double ring_diameter(std::span<const Vec2> ring);
// Closed segment intersection test, touching counts.
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d);
// Distance from p to the segment [a, b].
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
// Drops a duplicated closing vertex, if present.
Polyline open_ring(Polyline closed);
// Appends the first vertex at the end, if not already there.
Polyline close_ring(Polyline ring);
// Cumulative arclength, starting at 0, one entry per vertex.
std::vector<double> arclength(std::span<const Vec2> line);

}  // namespace lcs
