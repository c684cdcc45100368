#include "lcs/flowmap/cauchy_green.hpp"

#include <algorithm>
#include <cmath>

#include "lcs/error.hpp"

namespace lcs {

SymTensor right_cauchy_green(const Mat2& df) {
  return {df.a * df.a + df.c * df.c, df.a * df.b + df.c * df.d, df.b * df.b + df.d * df.d};
}

namespace {

CGEigen decompose(const SymTensor& c, double det) {
  CGEigen e;
  const double mean = 0.5 * (c.c11 + c.c22);
  const double half_diff = 0.5 * (c.c11 - c.c22);
  const double radius = std::sqrt(half_diff * half_diff + c.c12 * c.c12);
  e.lambda2 = mean + radius;
  e.lambda1 = e.lambda2 > 0.0 ? det / e.lambda2 : mean - radius;
  if (e.lambda2 - e.lambda1 < kDegenerateRatio * e.lambda2) {
    e.degenerate = true;
    e.xi1 = {1.0, 0.0};
    e.xi2 = {0.0, 1.0};
    return e;
  }
  Vec2 v = c.c11 >= c.c22 ? Vec2{e.lambda2 - c.c22, c.c12} : Vec2{c.c12, e.lambda2 - c.c11};
  v = normalized(v);
  if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) v = -v;
  e.xi2 = v;
  e.xi1 = perp(v);
  return e;
}

}  // namespace

CGEigen eigen_symmetric(const SymTensor& c) { return decompose(c, c.det()); }

CGEigen cauchy_green(const Mat2& df) {
  const double det = df.det();
  if (!std::isfinite(df.a) || !std::isfinite(df.b) || !std::isfinite(df.c) || !std::isfinite(df.d) ||
      !std::isfinite(det))
    throw SingularMatrixError("cauchy_green: non-finite deformation gradient");
  if (det == 0.0) throw SingularMatrixError("cauchy_green: singular deformation gradient");
  return decompose(right_cauchy_green(df), det * det);
}

CauchyGreenField cauchy_green_field(const FlowMapGrid& fm) {
  if (fm.jacobian.size() != fm.grid.size()) throw ConfigError("cauchy_green_field: flow map has no Jacobian");
  CauchyGreenField cg;
  cg.grid = fm.grid;
  cg.a = fm.a;
  cg.b = fm.b;
  const std::size_t n = fm.grid.size();
  cg.lambda1.resize(n);
  cg.lambda2.resize(n);
  cg.xi1.resize(n);
  cg.xi2.resize(n);
  cg.tensor.resize(n);
  cg.degenerate.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const CGEigen e = cauchy_green(fm.jacobian[k]);
    cg.lambda1[k] = e.lambda1;
    cg.lambda2[k] = e.lambda2;
    cg.xi1[k] = e.xi1;
    cg.xi2[k] = e.xi2;
    cg.tensor[k] = right_cauchy_green(fm.jacobian[k]);
    cg.degenerate[k] = e.degenerate ? 1 : 0;
  }
  return cg;
}

ScalarField2D ftle(const CauchyGreenField& cg) {
  const double span = std::abs(cg.b - cg.a);
  if (!(span > 0.0)) throw ConfigError("ftle: empty time window");
  ScalarField2D out(cg.grid, cg.a);
  for (std::size_t k = 0; k < cg.lambda2.size(); ++k) out.values[k] = std::log(cg.lambda2[k]) / (2.0 * span);
  return out;
}

double incompressibility_defect(const CauchyGreenField& cg) {
  std::vector<double> d(cg.lambda1.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = std::abs(cg.lambda1[k] * cg.lambda2[k] - 1.0);
  if (d.empty()) return 0.0;
  const auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  return *mid;
}

MesoPoint mesoclassify(const Mat2& df) {
  MesoPoint p;
  const double det = df.det();
  p.trace = df.trace();
  p.det_flag = std::abs(det - 1.0) > 0.05;
  if (!(det > 0.0)) {
    p.cls = MesoClass::hyperbolic;
    p.normalized_trace = INFINITY;
    return p;
  }
  p.normalized_trace = p.trace / std::sqrt(det);
  const double gap = std::abs(p.normalized_trace) - 2.0;
  if (std::abs(gap) <= kMesoBoundaryBand) {
    p.boundary = true;
    p.cls = MesoClass::elliptic;
  } else {
    p.cls = gap < 0.0 ? MesoClass::elliptic : MesoClass::hyperbolic;
  }
  return p;
}

double MesoClassField::elliptic_fraction() const {
  if (cls.empty()) return 0.0;
  const auto n = std::count(cls.begin(), cls.end(), MesoClass::elliptic);
  return static_cast<double>(n) / static_cast<double>(cls.size());
}

MesoClassField mesoclassify(const FlowMapGrid& fm) {
  if (fm.jacobian.size() != fm.grid.size()) throw ConfigError("mesoclassify: flow map has no Jacobian");
  MesoClassField out;
  out.grid = fm.grid;
  const std::size_t n = fm.grid.size();
  out.cls.resize(n);
  out.trace.resize(n);
  out.boundary.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const MesoPoint p = mesoclassify(fm.jacobian[k]);
    out.cls[k] = p.cls;
    out.trace[k] = p.trace;
    out.boundary[k] = p.boundary ? 1 : 0;
    if (p.det_flag) ++out.det_flagged;
  }
  return out;
}

}  // namespace lcs
