#pragma once

#include <vector>

#include "lcs/field/polyline.hpp"
#include "lcs/flowmap/advect.hpp"

namespace lcs {

// Closed material line. Vertices are stored without a repeated closing
// vertex, in unwrapped coordinates; `labels` keeps every vertex's position at
// t_initial so refinement can re-advect inserted points from there.
struct MaterialCurve {
  Polyline vertices;
  Polyline labels;
  double time = 0.0;
  double t_initial = 0.0;
  double threshold = 0.0;  // maximum neighbour gap after refinement
  bool refinement_capped = false;

  double length() const { return ring_length(vertices); }
  double area() const { return signed_area(vertices); }
  Polyline closed() const { return close_ring(vertices); }
};

// threshold <= 0 picks twice the mean initial vertex gap.
MaterialCurve make_material_curve(const Polyline& curve, double t0, double threshold = 0.0);

struct CurveAdvectOptions {
  AdvectOptions advect;
  std::size_t max_vertices = 200000;
  int max_refine_passes = 40;
};

// Curves at t0, t0 + store_every, ..., t1 (t1 always included; t1 < t0
// runs backward). After each stored step, gaps above the threshold get
// midpoint labels advected from t_initial.
std::vector<MaterialCurve> advect_curve(const MaterialCurve& curve, const VelocitySource& src, double t0, double t1,
                                        double store_every, const CurveAdvectOptions& opt = {});

struct StretchHistory {
  std::vector<double> times;
  std::vector<double> lengths;
  std::vector<double> delta;  // (l(t) - l(a)) / l(a)

  double final_delta() const { return delta.back(); }
};

StretchHistory relative_stretching(const std::vector<MaterialCurve>& history);

// Moves each vertex by eps along the outward normal (average of the
// adjacent edge normals). Throws NumericError when the result
// self-intersects.
Polyline normal_perturbation(const Polyline& curve, double eps);

// Area of the symmetric difference of two closed curves, rasterised with the
// even-odd rule on a `resolution`^2 grid over their joint bounding box.
double symmetric_difference_area(const Polyline& a, const Polyline& b, std::size_t resolution = 512);

}  // namespace lcs
