#include "lcs/material/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "lcs/diagnostics/contours.hpp"
#include "lcs/error.hpp"
#include "lcs/field/io.hpp"

namespace lcs {

namespace {

// Best closed contour around `inside` among a candidate list.
void consider(ContourMatch& best, double& best_err, const Contour& c, double level, Vec2 inside, double target,
              MatchBy by, const Grid2D& g) {
  if (!c.closed || c.points.size() < 4) return;
  if (!point_in_ring_periodic(c.points, inside, g)) return;
  const double len = ring_length(open_ring(c.points));
  const double area = std::abs(signed_area(open_ring(c.points)));
  const double err = std::abs((by == MatchBy::length ? len : area) - target);
  if (err < best_err) {
    best_err = err;
    best.found = true;
    best.level = level;
    best.length = len;
    best.area = area;
    best.curve = c.points;
  }
}

}  // namespace

ContourMatch nearest_contour(const ScalarField2D& f, Vec2 inside, double target, MatchBy by, std::size_t levels) {
  if (levels == 0) throw ConfigError("nearest_contour: levels must be > 0");
  const auto [lo, hi] = std::minmax_element(f.values.begin(), f.values.end());
  ContourMatch best;
  double best_err = std::numeric_limits<double>::infinity();
  if (!(*hi > *lo)) return best;
  for (std::size_t k = 0; k < levels; ++k) {
    const double level = *lo + (static_cast<double>(k) + 0.5) * (*hi - *lo) / static_cast<double>(levels);
    for (const auto& c : extract_contours(f, level)) consider(best, best_err, c, level, inside, target, by, f.grid);
  }
  return best;
}

namespace {

double advected_delta(const Polyline& curve, const VelocitySource& src, double a, double b, const ReportOptions& opt) {
  const auto hist = advect_curve(make_material_curve(curve, a), src, a, b, 0.0, opt.advect);
  return relative_stretching(hist).final_delta();
}

}  // namespace

CoherenceReport coherence_report(const VortexBoundarySet& set, const VelocitySource& src, double a, double b,
                                 const DiagnosticsBundle& diag, const ReportOptions& opt) {
  CoherenceReport rep;
  rep.a = a;
  rep.b = b;
  const double wtol = 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  for (std::size_t n = 0; n < set.nests.size(); ++n) {
    const ClosedMaterialCurve& c = set.curves[set.nests[n].outermost()];
    if (std::abs(c.a - a) > wtol || std::abs(c.b - b) > wtol)
      throw ConfigError("coherence_report: boundary window [" + format_double(c.a) + ", " + format_double(c.b) +
                        "] differs from [" + format_double(a) + ", " + format_double(b) + "]");
    VortexRecord r;
    r.nest = n;
    r.lambda = c.lambda;
    r.primary = set.nests[n].primary.has_value();
    r.boundary = c.vertices;
    const Polyline ring = open_ring(c.vertices);
    const auto hist = advect_curve(make_material_curve(ring, a), src, a, b, opt.store_every, opt.advect);
    r.history = relative_stretching(hist);
    r.final_delta = r.history.final_delta();
    r.area_initial = std::abs(hist.front().area());
    r.area_final = std::abs(hist.back().area());
    r.diameter = ring_diameter(ring);
    const Vec2 center = ring_centroid(ring);
    const double length = r.history.lengths.front();

    if (diag.vorticity) {
      r.vorticity = nearest_contour(*diag.vorticity, center, length, MatchBy::length);
      if (r.vorticity.found && opt.advect_vorticity_contour)
        r.vorticity.final_delta = advected_delta(r.vorticity.curve, src, a, b, opt);
    }
    if (diag.ow) {
      const ThresholdContours tc = ow_threshold_contours(*diag.ow, diag.ow_alpha);
      double err = std::numeric_limits<double>::infinity();
      for (const auto& cc : tc.contours) consider(r.ow, err, cc, tc.level, center, length, MatchBy::length, diag.ow->q.grid);
    }
    if (diag.ftle) r.ftle = nearest_contour(*diag.ftle, center, length, MatchBy::length);
    if (diag.meso) {
      const Grid2D& g = diag.meso->grid;
      std::size_t inside = 0, elliptic = 0;
      for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j) {
          if (!point_in_ring_periodic(c.vertices, g.node(i, j), g)) continue;
          ++inside;
          if (diag.meso->cls[g.index(i, j)] == MesoClass::elliptic) ++elliptic;
        }
      r.meso_nodes = inside;
      r.meso_elliptic_fraction = inside ? static_cast<double>(elliptic) / static_cast<double>(inside) : 0.0;
    }
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

void write_report_tsv(const CoherenceReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "nest\tlambda\tprimary\tdiameter\tlength_a\tdelta_l_b\tarea_a\tarea_b\tvort_level\tvort_length\t"
         "vort_delta_l_b\tow_found\tow_length\tftle_level\tftle_length\tmeso_elliptic_fraction\tmeso_nodes\n";
  for (const auto& r : report.rows) {
    auto opt_val = [](const ContourMatch& m, double v) { return m.found ? format_double(v) : std::string("nan"); };
    out << r.nest << '\t' << format_double(r.lambda) << '\t' << (r.primary ? 1 : 0) << '\t' << format_double(r.diameter)
        << '\t' << format_double(r.history.lengths.front()) << '\t' << format_double(r.final_delta) << '\t'
        << format_double(r.area_initial) << '\t' << format_double(r.area_final) << '\t'
        << opt_val(r.vorticity, r.vorticity.level) << '\t' << opt_val(r.vorticity, r.vorticity.length) << '\t'
        << opt_val(r.vorticity, r.vorticity.final_delta) << '\t' << (r.ow.found ? 1 : 0) << '\t'
        << opt_val(r.ow, r.ow.length) << '\t' << opt_val(r.ftle, r.ftle.level) << '\t' << opt_val(r.ftle, r.ftle.length)
        << '\t' << format_double(r.meso_elliptic_fraction) << '\t' << r.meso_nodes << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace lcs
