#include "lcs/pipeline/stages.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "lcs/diagnostics/contours.hpp"
#include "lcs/diagnostics/eddies.hpp"
#include "lcs/diagnostics/hua_klein.hpp"
#include "lcs/diagnostics/okubo_weiss.hpp"
#include "lcs/elliptic/curve_io.hpp"
#include "lcs/error.hpp"
#include "lcs/field/io.hpp"
#include "lcs/field/spectral.hpp"
#include "lcs/flowmap/flowmap_io.hpp"
#include "lcs/material/experiment.hpp"
#include "lcs/material/report.hpp"
#include "lcs/ns2d/simulate.hpp"

namespace lcs {

namespace fs = std::filesystem;

const char* to_string(Stage s) {
  switch (s) {
    case Stage::simulate: return "simulate";
    case Stage::flowmap: return "flowmap";
    case Stage::cauchy_green: return "cauchy_green";
    case Stage::lcs: return "lcs";
    case Stage::diagnose: return "diagnose";
    case Stage::compare: return "compare";
  }
  return "?";
}

std::string stage_hash(const RunConfig& c, Stage s) {
  std::string text;
  switch (s) {
    case Stage::simulate:
      text = "seed = " + std::to_string(c.run.seed) + "\n" + c.section_text("solver");
      break;
    case Stage::flowmap:
      text = stage_hash(c, Stage::simulate) + c.section_text("flowmap");
      break;
    case Stage::cauchy_green:
      text = stage_hash(c, Stage::flowmap) + "cauchy_green";
      break;
    case Stage::lcs:
      text = stage_hash(c, Stage::cauchy_green) + c.section_text("lcs");
      break;
    case Stage::diagnose:
      text = stage_hash(c, Stage::simulate) + c.section_text("diagnostics");
      break;
    case Stage::compare:
      text = stage_hash(c, Stage::lcs) + c.section_text("diagnostics") + c.section_text("experiment");
      break;
  }
  return hex64(fnv1a(text));
}

fs::path stage_dir(const fs::path& root, Stage s) { return root / to_string(s); }

ComparisonOptions comparison_options(const RunConfig& c) {
  ComparisonOptions o;
  o.tolerance = c.flowmap.tolerance;
  o.store_every = c.experiment.store_every;
  o.ow_alpha = c.diagnostics.ow_alpha;
  o.eps = c.experiment.eps;
  o.reference_diameter = c.experiment.reference_diameter;
  o.optimality = c.experiment.optimality;
  return o;
}

namespace {

void note(const LogFn& log, int level, const std::string& msg) {
  if (log) log(level, msg);
}

std::string numbered(const char* prefix, std::size_t k, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%04zu%s", prefix, k, ext);
  return buf;
}

void write_json(const nlohmann::ordered_json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

VelocitySource source_of(const VelocitySeries& series) {
  return VelocitySource::from_series(std::make_shared<const VelocityInterpolator>(series));
}

}  // namespace

void write_simulation(const SolverConfig& sc, const fs::path& dir, const LogFn& log) {
  fs::create_directories(dir);
  std::vector<ManifestEntry> entries;
  const auto summary = simulate(sc, [&](std::size_t k, const SpectralState&, const VectorField2D& u) {
    const std::string name = numbered("u", k, ".lcs");
    write_field(u, dir / name);
    entries.push_back({name, u.time});
  });
  write_manifest(entries, dir / "manifest.txt");
  write_run_log(summary.log, dir / "run_log.tsv");
  note(log, 2, "simulate: " + std::to_string(summary.frames) + " frames, " + std::to_string(summary.accepted_steps) +
             " accepted steps, " + std::to_string(summary.rejected_steps) + " rejected");
}

FlowMapGrid write_flow_map_products(const VelocitySeries& series, std::size_t n, double a, double b,
                                    const FlowMapOptions& opt, const fs::path& dir, const LogFn& log) {
  fs::create_directories(dir);
  const Grid2D& sg = series.grid();
  const Grid2D grid(n, n, sg.x0(), sg.x1(), sg.y0(), sg.y1());
  FlowMapGrid fm = compute_flow_map(source_of(series), grid, a, b, opt);
  write_flow_map(fm, dir / "flowmap.lcs");
  note(log, 2, "flowmap: " + std::to_string(n) + "^2 nodes over [" + format_double(fm.a) + ", " + format_double(fm.b) + "]");
  return fm;
}

void write_cauchy_green_products(const FlowMapGrid& fm, const fs::path& dir, const LogFn& log) {
  fs::create_directories(dir);
  const CauchyGreenField cg = cauchy_green_field(fm);
  write_cauchy_green(cg, dir / "cauchy_green.lcs");
  if (fm.b != fm.a) write_field(ftle(cg), dir / "ftle.lcs");
  const MesoClassField meso = mesoclassify(fm);
  ScalarField2D cls(fm.grid, fm.a);
  for (std::size_t k = 0; k < cls.values.size(); ++k) cls.values[k] = static_cast<double>(meso.cls[k]);
  write_field(cls, dir / "meso.lcs");
  std::size_t degenerate = 0;
  for (auto d : cg.degenerate) degenerate += d ? 1 : 0;
  nlohmann::ordered_json j;
  j["a"] = cg.a;
  j["b"] = cg.b;
  j["incompressibility_defect"] = incompressibility_defect(cg);
  j["degenerate_nodes"] = degenerate;
  j["meso_elliptic_fraction"] = meso.elliptic_fraction();
  j["meso_det_flagged"] = meso.det_flagged;
  write_json(j, dir / "summary.json");
  note(log, 2, "cauchy_green: median |l1 l2 - 1| = " + format_double(j["incompressibility_defect"].get<double>()));
}

void write_lcs(const CauchyGreenField& cg, const DetectOptions& opt, const fs::path& dir, const LogFn& log) {
  fs::create_directories(dir);
  const VortexBoundarySet set = detect_vortices(cg, opt);
  write_boundary_set(set, dir);
  note(log, 1, "lcs: " + std::to_string(set.curves.size()) + " closed lambda-lines in " + std::to_string(set.nests.size()) +
             " nests from " + std::to_string(set.seeds.size()) + " seeds");
}

namespace {

void write_contour_set(const std::vector<Polyline>& curves, const std::vector<std::string>& meta, const std::string& header,
                       const fs::path& dir) {
  fs::create_directories(dir);
  std::ofstream out(dir / "manifest.tsv");
  if (!out) throw IoError("cannot write " + (dir / "manifest.tsv").string());
  out << "file\t" << header << '\n';
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const std::string name = numbered("curve", k, ".csv");
    write_polyline_csv(curves[k], dir / name);
    out << name << '\t' << meta[k] << '\n';
  }
  if (!out) throw IoError("failed writing " + (dir / "manifest.tsv").string());
}

}  // namespace

void write_diagnostics(const VelocitySeries& series, double t, const std::vector<std::string>& list, double ow_alpha,
                       const fs::path& dir, const LogFn& log) {
  fs::create_directories(dir);
  const VectorField2D u = interpolate_frame(series, t);
  const ScalarField2D omega = spectral_curl(u);
  for (const auto& what : list) {
    if (what == "vort") {
      write_field(omega, dir / "vorticity.lcs");
    } else if (what == "ow") {
      const OWField ow = okubo_weiss(u);
      write_field(ow.q, dir / "ow_q.lcs");
      const ThresholdContours tc = ow_threshold_contours(ow, ow_alpha);
      std::vector<Polyline> curves;
      std::vector<std::string> meta;
      for (const auto& ct : tc.contours) {
        curves.push_back(ct.points);
        meta.push_back(format_double(tc.level) + '\t' + format_double(ring_length(open_ring(ct.points))));
      }
      write_contour_set(curves, meta, "level\tlength", dir / "ow_contours");
      if (tc.degenerate_sigma) note(log, 1, "diagnose: Okubo-Weiss field has zero spread; no threshold contours");
    } else if (what == "hk") {
      const double dt = series.dt();
      if (series.size() < 3 || !series.contains(t - dt) || !series.contains(t + dt)) {
        note(log, 1, "diagnose: Hua-Klein needs a frame on either side of t=" + format_double(t) + "; skipped");
        continue;
      }
      const HKField hk = hua_klein(series, t);
      write_field(hk.lambda_plus, dir / "hk_lambda_plus.lcs");
      write_field(hk.lambda_minus, dir / "hk_lambda_minus.lcs");
      note(log, 2, "diagnose: Hua-Klein clamped " + std::to_string(hk.clamped) + " nodes");
    } else if (what == "eddies") {
      const auto eddies = streamline_eddies(omega);
      std::vector<Polyline> curves;
      std::vector<std::string> meta;
      for (const auto& e : eddies) {
        curves.push_back(e.boundary);
        meta.push_back(std::string(to_string(e.kind)) + '\t' + format_double(e.center.x) + '\t' +
                       format_double(e.center.y) + '\t' + format_double(e.area) + '\t' + format_double(e.stream_value));
      }
      write_contour_set(curves, meta, "kind\tcx\tcy\tarea\tpsi", dir / "eddies");
      note(log, 2, "diagnose: " + std::to_string(eddies.size()) + " streamline eddies");
    } else {
      throw ConfigError("diagnose: unknown item '" + what + "'");
    }
  }
}

void write_comparison(const VortexBoundarySet& set, const VelocitySeries& series, double a, double b,
                      const std::optional<FlowMapGrid>& fm, const ComparisonOptions& c, const fs::path& dir,
                      const LogFn& log) {
  fs::create_directories(dir);
  const VelocitySource src = source_of(series);
  DiagnosticsBundle diag;
  const VectorField2D u = interpolate_frame(series, a);
  diag.vorticity = spectral_curl(u);
  diag.ow = okubo_weiss(u);
  diag.ow_alpha = c.ow_alpha;
  if (fm) {
    if (fm->a != a || fm->b != b) throw ConfigError("compare: flow map window differs from [a, b]");
    if (a != b) diag.ftle = ftle(cauchy_green_field(*fm));
    diag.meso = mesoclassify(*fm);
  }
  ReportOptions ropt;
  ropt.advect.advect.tol = c.tolerance;
  ropt.store_every = c.store_every;
  const CoherenceReport report = coherence_report(set, src, a, b, diag, ropt);
  write_report_tsv(report, dir / "report.tsv");
  for (const auto& r : report.rows) write_stretch_tsv(r.history, dir / numbered("stretch_nest", r.nest, ".tsv"));
  note(log, 1, "compare: " + std::to_string(report.rows.size()) + " report rows");

  if (!c.optimality || report.rows.empty()) return;
  // closest to lambda = 1 first, then outer before inner
  std::vector<std::size_t> order(set.curves.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const double dx = std::round(std::abs(set.curves[x].lambda - 1.0) * 1e9);
    const double dy = std::round(std::abs(set.curves[y].lambda - 1.0) * 1e9);
    if (dx != dy) return dx < dy;
    if (set.curves[x].depth != set.curves[y].depth) return set.curves[x].depth < set.curves[y].depth;
    return set.curves[x].nest < set.curves[y].nest;
  });
  for (std::size_t k : order) {
    const ClosedMaterialCurve& curve = set.curves[k];
    const Polyline ring = open_ring(curve.vertices);
    const auto eps = scale_perturbations(c.eps, ring_diameter(ring), c.reference_diameter);
    const std::string name = "nest " + std::to_string(curve.nest) + " depth " + std::to_string(curve.depth);
    try {
      for (double e : eps) normal_perturbation(ring, e);
    } catch (const NumericError& e) {
      note(log, 2, "compare: " + name + " cannot take the perturbations: " + e.what());
      continue;
    }
    const auto rows = optimality_experiment(ring, src, a, b, eps, ropt.advect);
    write_optimality_tsv(rows, dir / "optimality.tsv");
    note(log, 1, "compare: optimality experiment on " + name + " (lambda " + format_double(curve.lambda) + ")");
    return;
  }
  note(log, 1, "compare: optimality experiment skipped: no closed lambda-line takes the perturbations");
}

void run_stage(Stage s, const RunConfig& config, const fs::path& root, const LogFn& log) {
  const fs::path dir = stage_dir(root, s);
  fs::create_directories(dir);
  write_config(config, dir / "config.ini");
  const auto series_path = stage_dir(root, Stage::simulate) / "manifest.txt";
  const auto flowmap_path = stage_dir(root, Stage::flowmap) / "flowmap.lcs";
  switch (s) {
    case Stage::simulate: {
      SolverConfig sc = config.solver;
      sc.seed = config.run.seed;
      write_simulation(sc, dir, log);
      break;
    }
    case Stage::flowmap: {
      FlowMapOptions opt;
      opt.advect.tol = config.flowmap.tolerance;
      opt.delta = config.flowmap.delta;
      write_flow_map_products(read_series(series_path), config.flowmap_resolution(), config.window_a(),
                              config.window_b(), opt, dir, log);
      break;
    }
    case Stage::cauchy_green: write_cauchy_green_products(read_flow_map(flowmap_path), dir, log); break;
    case Stage::lcs:
      write_lcs(read_cauchy_green(stage_dir(root, Stage::cauchy_green) / "cauchy_green.lcs"), config.detect_options(),
                dir, log);
      break;
    case Stage::diagnose:
      write_diagnostics(read_series(series_path), config.diagnose_time(), config.diagnostics_list(),
                        config.diagnostics.ow_alpha, dir, log);
      break;
    case Stage::compare:
      write_comparison(read_boundary_set(stage_dir(root, Stage::lcs)), read_series(series_path), config.window_a(),
                       config.window_b(), read_flow_map(flowmap_path), comparison_options(config), dir, log);
      break;
  }
}

}  // namespace lcs
