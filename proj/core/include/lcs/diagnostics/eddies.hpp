#pragma once

#include <cstdint>
#include <vector>

#include "lcs/diagnostics/contours.hpp"

namespace lcs {

enum class CriticalKind : std::uint8_t { maximum, minimum, saddle, degenerate };

const char* to_string(CriticalKind k);

struct CriticalPoint {
  Vec2 position;
  CriticalKind kind = CriticalKind::degenerate;
  double value = 0.0;
};

// Zeros of grad f from bilinear sub-cell roots of the spectral gradient,
// classified by the sign of the Hessian determinant.
std::vector<CriticalPoint> find_critical_points(const ScalarField2D& f);

struct EddyPatch {
  Polyline boundary;  // closed, counter-clockwise
  double area = 0.0;
  Vec2 center;
  double stream_value = 0.0;
  CriticalKind kind = CriticalKind::maximum;
};

struct EddyOptions {
  int bisection_steps = 40;
};

// For every extremum of f, the largest closed level curve around it that
// encloses no other extremum and no saddle.
std::vector<EddyPatch> level_set_eddies(const ScalarField2D& f, const EddyOptions& opt = {});

// level_set_eddies of psi = -Laplacian^{-1} omega.
std::vector<EddyPatch> streamline_eddies(const ScalarField2D& omega, const EddyOptions& opt = {});

}  // namespace lcs
