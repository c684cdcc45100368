#pragma once

#include <cstdint>
#include <vector>

#include "lcs/field/grid.hpp"
#include "lcs/flowmap/flowmap.hpp"

namespace lcs {

// Symmetric 2x2 tensor [[c11, c12], [c12, c22]].
struct SymTensor {
  double c11 = 1.0, c12 = 0.0, c22 = 1.0;

  double det() const { return c11 * c22 - c12 * c12; }
  Vec2 operator*(Vec2 v) const { return {c11 * v.x + c12 * v.y, c12 * v.x + c22 * v.y}; }
};

SymTensor right_cauchy_green(const Mat2& df);

// lambda1 <= lambda2 with unit eigenvectors. xi2 has a non-negative first
// component (second, on ties) and xi1 = perp(xi2). A degenerate tensor
// (lambda2 - lambda1 < 1e-10 lambda2) gets the canonical basis.
struct CGEigen {
  double lambda1 = 1.0, lambda2 = 1.0;
  Vec2 xi1{1.0, 0.0}, xi2{0.0, 1.0};
  bool degenerate = false;
};

inline constexpr double kDegenerateRatio = 1e-10;

// Computes lambda1 as det / lambda2 to avoid cancellation.
CGEigen eigen_symmetric(const SymTensor& c);
// Throws SingularMatrixError for a singular or non-finite DF.
CGEigen cauchy_green(const Mat2& df);

struct CauchyGreenField {
  Grid2D grid;
  double a = 0.0, b = 0.0;
  std::vector<double> lambda1, lambda2;
  std::vector<Vec2> xi1, xi2;
  std::vector<SymTensor> tensor;
  std::vector<std::uint8_t> degenerate;

  SymTensor at(std::size_t i, std::size_t j) const { return tensor[grid.index(i, j)]; }
};

CauchyGreenField cauchy_green_field(const FlowMapGrid& fm);

// log(lambda2) / (2 |b - a|).
ScalarField2D ftle(const CauchyGreenField& cg);

// Median over nodes of |lambda1 lambda2 - 1|.
double incompressibility_defect(const CauchyGreenField& cg);

enum class MesoClass : std::uint8_t { elliptic = 0, hyperbolic = 1 };

// Eigenvalues of DF lie on the unit circle iff |tr| < 2 when det = 1. The
// trace is normalised by sqrt(det) first; within 1e-9 of 2 the point is on
// the boundary and counted as elliptic. det <= 0 is hyperbolic.
struct MesoPoint {
  MesoClass cls = MesoClass::elliptic;
  double trace = 0.0;
  double normalized_trace = 0.0;
  bool boundary = false;
  bool det_flag = false;  // |det - 1| > 5%
};

inline constexpr double kMesoBoundaryBand = 1e-9;

MesoPoint mesoclassify(const Mat2& df);

struct MesoClassField {
  Grid2D grid;
  std::vector<MesoClass> cls;
  std::vector<double> trace;
  std::vector<std::uint8_t> boundary;
  std::size_t det_flagged = 0;

  double elliptic_fraction() const;
};

MesoClassField mesoclassify(const FlowMapGrid& fm);

}  // namespace lcs
