#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "lcs/diagnostics/okubo_weiss.hpp"
#include "lcs/elliptic/closed_orbits.hpp"
#include "lcs/flowmap/cauchy_green.hpp"
#include "lcs/material/material_curve.hpp"

namespace lcs {

// Eulerian and Lagrangian fields at the start of the window.
struct DiagnosticsBundle {
  std::optional<ScalarField2D> vorticity;
  std::optional<OWField> ow;
  std::optional<ScalarField2D> ftle;
  std::optional<MesoClassField> meso;
  double ow_alpha = 0.2;
};

// The closed contour of a field that encloses a point and is closest in
// length (or area) to a target.
struct ContourMatch {
  bool found = false;
  double level = 0.0;
  double length = 0.0;
  double area = 0.0;
  double final_delta = 0.0;  // filled when the contour was advected
  Polyline curve;
};

enum class MatchBy { length, area };

ContourMatch nearest_contour(const ScalarField2D& f, Vec2 inside, double target, MatchBy by,
                             std::size_t levels = 64);

struct VortexRecord {
  std::size_t nest = 0;
  double lambda = 1.0;
  bool primary = false;
  Polyline boundary;
  StretchHistory history;
  double final_delta = 0.0;
  double area_initial = 0.0, area_final = 0.0;
  double diameter = 0.0;
  ContourMatch vorticity, ow, ftle;
  double meso_elliptic_fraction = 0.0;
  std::size_t meso_nodes = 0;
};

struct CoherenceReport {
  double a = 0.0, b = 0.0;
  std::vector<VortexRecord> rows;
};

struct ReportOptions {
  CurveAdvectOptions advect;
  double store_every = 0.0;  // 0: only the end points
  bool advect_vorticity_contour = true;
};

// One row per nest boundary, in nest order. Throws ConfigError when the
// curves' windows differ from [a, b].
CoherenceReport coherence_report(const VortexBoundarySet& set, const VelocitySource& src, double a, double b,
                                 const DiagnosticsBundle& diag, const ReportOptions& opt = {});

void write_report_tsv(const CoherenceReport& report, const std::filesystem::path& path);

}  // namespace lcs
