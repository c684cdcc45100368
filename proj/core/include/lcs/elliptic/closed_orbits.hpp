#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcs/elliptic/lambda_line.hpp"
#include "lcs/elliptic/singularities.hpp"

namespace lcs {

struct ClosedMaterialCurve {
  Polyline vertices;  // counter-clockwise, first == last, unwrapped
  double lambda = 1.0;
  Branch branch = Branch::plus;
  double a = 0.0, b = 0.0;
  std::vector<Vec2> enclosed_singularities;  // detected points inside
  int singularity_count = 0;                 // see enclosed_singularities()
  double q_value = 0.0;
  double area = 0.0;
  double closure_gap = 0.0;
  std::size_t seed_index = 0;
  Vec2 seed{};
  double section_s = 0.0;
  int nest = -1;
  int depth = 0;  // 0 for the outermost member
  bool primary = false;
};

// Radial section from `center` along `direction`.
struct PoincareOptions {
  double section_fraction = 0.2;  // of the domain width
  std::size_t samples = 200;
  double fixed_point_tol_fraction = 1e-6;  // of the domain width
  double neutral_tol_fraction = 2e-4;      // |P(s) - s| accepted without a sign change
  double max_arclength_factor = 1.5;       // times 2 pi L
  double stray_factor = 1.5;               // times L
  LambdaLineOptions line;
  std::size_t min_singularities = 2;
};

struct ReturnSample {
  double s = 0.0;
  std::optional<double> p;  // P(s), absent when the line never returned
};

struct PoincareResult {
  std::vector<ReturnSample> samples;
  std::vector<double> fixed_points;
  std::vector<ClosedMaterialCurve> curves;
  std::size_t rejected_closure = 0, rejected_simple = 0, rejected_singularities = 0;
};

struct ReturnShot {
  std::optional<double> p;  // section coordinate of the first return
  Vec2 initial_tangent{}, final_tangent{};
  Polyline path;  // launch point to return point, filled on request
};

// One shot of the return map. Launches counter-clockwise about `center`; a
// return is a crossing of the ray from the clockwise side.
ReturnShot return_map(const EtaField& eta, Vec2 center, Vec2 direction, double s, double length,
                      const PoincareOptions& opt, bool keep_path = false);

// Fixed points are bisection roots of P(s) - s, plus samples that already
// return within neutral_tol_fraction (neutral families, P(s) ~ s).
PoincareResult poincare_closed_orbits(const EtaField& eta, Vec2 center, Vec2 direction,
                                      const SingularitySet& singularities, const PoincareOptions& opt = {});

struct VortexNest {
  std::vector<std::size_t> members;  // indices into curves, outermost first
  std::optional<std::size_t> primary;
  std::size_t outermost() const { return members.front(); }
};

struct VortexBoundarySet {
  Grid2D domain;
  std::vector<ClosedMaterialCurve> curves;
  std::vector<VortexNest> nests;
  std::vector<Vec2> seeds;
  SingularitySet singularities;
  std::size_t dropped_overlaps = 0;

  std::vector<const ClosedMaterialCurve*> boundaries() const;
};

std::vector<double> lambda_sweep(double lo, double hi, double step);

struct DetectOptions {
  std::vector<double> lambdas = lambda_sweep(0.90, 1.10, 0.01);
  std::vector<Branch> branches{Branch::plus, Branch::minus};
  std::vector<Vec2> seeds;  // empty: automatic
  std::size_t max_seeds = 64;
  double min_seed_separation_cells = 4.0;
  double pair_distance_fraction = 0.05;  // of the domain width
  CGInterpolation interpolation = CGInterpolation::spline;
  PoincareOptions poincare;
  // Keep only the outermost curve per (seed, lambda, branch).
  bool outermost_only = false;
};

// Candidate vortex centres: local minima of lambda2 and midpoints of close
// singularity pairs, separated by at least min_seed_separation_cells.
std::vector<Vec2> auto_seeds(const CauchyGreenField& cg, const SingularitySet& sing, const DetectOptions& opt);

// Groups curves into nests by containment; partial overlaps with an
// existing nest's outermost curve are dropped.
void build_nests(VortexBoundarySet& set);

// Empty when most of the field is isotropic (an identity flow map).
VortexBoundarySet detect_vortices(const CauchyGreenField& cg, const DetectOptions& opt = {});

}  // namespace lcs
