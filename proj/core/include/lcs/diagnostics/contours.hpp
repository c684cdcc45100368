#pragma once

#include <vector>

#include "lcs/field/grid.hpp"
#include "lcs/field/polyline.hpp"

namespace lcs {

// Closed contours repeat their first vertex at the end. Coordinates are
// unwrapped along the contour; a contour that wraps around the torus is
// reported open.
struct Contour {
  Polyline points;
  bool closed = false;
};

// Marching squares with linear edge interpolation; values >= level count as
// inside. Saddle cells are resolved with the cell-centre average. With
// `periodic` the seam cells are included and pieces stitched across it.
std::vector<Contour> extract_contours(const ScalarField2D& f, double level, bool periodic = true);

// Point-in-polygon on the torus: tests the nine nearest images of p.
bool point_in_ring_periodic(std::span<const Vec2> ring, Vec2 p, const Grid2D& g);

}  // namespace lcs
