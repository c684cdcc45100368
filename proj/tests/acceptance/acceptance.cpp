// Acceptance suite: one PASS/FAIL line per criterion. Arguments select
// criteria by number; none runs all of them.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lcs/diagnostics/eddies.hpp"
#include "lcs/diagnostics/hua_klein.hpp"
#include "lcs/elliptic/closed_orbits.hpp"
#include "lcs/elliptic/curve_io.hpp"
#include "lcs/error.hpp"
#include "lcs/flowmap/cauchy_green.hpp"
#include "lcs/flowmap/flowmap_io.hpp"
#include "lcs/material/material_curve.hpp"
#include "lcs/ns2d/simulate.hpp"
#include "lcs/pipeline/pipeline.hpp"

using namespace lcs;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x, int digits = 3) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

fs::path work_root() { return fs::path(LCS_ACCEPTANCE_WORK_DIR); }

RunConfig desk_config() { return load_config(fs::path(LCS_SOURCE_DIR) / "configs" / "desk.ini"); }

// Tab-separated table with a header row.
std::vector<std::map<std::string, std::string>> read_tsv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    std::string cell;
    while (std::getline(h, cell, '\t')) header.push_back(cell);
  }
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream r(line);
    std::string cell;
    std::map<std::string, std::string> row;
    for (std::size_t k = 0; std::getline(r, cell, '\t') && k < header.size(); ++k) row[header[k]] = cell;
    rows.push_back(std::move(row));
  }
  return rows;
}

double num(const std::map<std::string, std::string>& row, const std::string& key) {
  return std::stod(row.at(key));
}

// ---------------------------------------------------------------------------

Outcome solver_exactness() {
  const Stopwatch sw;
  SolverConfig c;
  c.n = 64;
  c.nu = 1e-2;
  c.forcing = false;
  const Grid2D g(64, 64);
  const auto tg = [](Vec2 x) { return 2.0 * std::cos(x.x) * std::cos(x.y); };
  Solver solver(c, SpectralState::from_vorticity(sample_scalar(g, tg)));
  ForcingRealization none;
  solver.advance_to(1.0, none);
  const auto w = solver.state().vorticity();
  const double decay = std::exp(-2.0 * c.nu);
  double err = 0.0;
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) err = std::max(err, std::abs(w(i, j) - decay * tg(g.node(i, j))));
  const double t = sw.seconds();
  return {err <= 1e-6 && t < 10.0, "max error " + fmt(err) + ", " + fmt(t) + " s"};
}

Outcome conservation() {
  const Stopwatch sw;
  const Grid2D g(64, 64);
  SolverConfig c;
  c.n = 64;
  c.seed = 7;
  c.spinup_time = 0.0;
  c.initial_rms_vorticity = 1.0;
  SpectralState s = initial_condition(c);
  const double e0 = kinetic_energy(s), z0 = enstrophy(s);
  double dt = 1e-2;
  for (int k = 0; k < 100; ++k) {
    const auto r = step_rk4(s, dt, ForcingRealization{}, 0.0, 1e-10);
    s = r.state;
    dt = r.dt_next;
  }
  const double de = std::abs(kinetic_energy(s) - e0) / e0, dz = std::abs(enstrophy(s) - z0) / z0;
  const double t = sw.seconds();
  return {de <= 1e-8 && dz <= 1e-8 && t < 30.0,
          "energy " + fmt(de) + ", enstrophy " + fmt(dz) + " over t=" + fmt(s.time) + ", " + fmt(t) + " s"};
}

// Desk turbulence flow map on the solver grid, shared by criteria 3 and 8.
struct DeskFlowMap {
  FlowMapGrid fm;
  double seconds = 0.0;
};

const DeskFlowMap& desk_flow_map() {
  static const DeskFlowMap cached = [] {
    const Stopwatch sw;
    const RunConfig cfg = desk_config();
    SolverConfig sc = cfg.solver;
    sc.seed = cfg.run.seed;
    sc.t_end = cfg.window_b();
    const auto sim = simulate(sc);
    const auto interp = std::make_shared<const VelocityInterpolator>(sim.series);
    FlowMapOptions opt;
    opt.advect.tol = cfg.flowmap.tolerance;
    opt.delta = cfg.flowmap.delta;
    DeskFlowMap d;
    d.fm = compute_flow_map(VelocitySource::from_series(interp), Grid2D(sc.n, sc.n), cfg.window_a(), cfg.window_b(),
                            opt);
    d.seconds = sw.seconds();
    return d;
  }();
  return cached;
}

Outcome incompressibility() {
  const auto& d = desk_flow_map();
  const double defect = incompressibility_defect(cauchy_green_field(d.fm));
  return {defect <= 1e-2 && d.seconds < 300.0,
          "median |l1 l2 - 1| = " + fmt(defect) + " on " + std::to_string(d.fm.grid.nx()) + "^2 over [" +
              fmt(d.fm.a) + ", " + fmt(d.fm.b) + "], " + fmt(d.seconds) + " s"};
}

// Steady axisymmetric vortex about (pi, pi) with a weak radial component:
// circles of radius r map to circles, stretched by R(T; r)/r.
VelocitySource synthetic_vortex(double T) {
  const Grid2D domain(128, 128);
  const double beta = 0.1, omega0 = 1.0;
  auto u = [domain, beta, omega0](Vec2 x, double) {
    const Vec2 d = domain.periodic_delta({pi, pi}, x);
    const double r2 = d.x * d.x + d.y * d.y, e = std::exp(-r2);
    const double radial = beta * (1.0 - 2.0 * r2) * e;
    return Vec2{radial * d.x - omega0 * e * d.y, radial * d.y + omega0 * e * d.x};
  };
  VelocitySource src = VelocitySource::analytic(u, 0.0, T);
  src.domain = domain;
  return src;
}

Outcome stretch_law() {
  const Stopwatch sw;
  const double T = 3.0;
  const VelocitySource src = synthetic_vortex(T);
  const auto fm = compute_flow_map(src, *src.domain, 0.0, T);
  const auto cg = cauchy_green_field(fm);
  std::string detail;
  bool pass = true;
  for (double lambda : {0.95, 1.0, 1.05}) {
    DetectOptions opt;
    opt.lambdas = {lambda};
    opt.seeds = {{pi, pi}};
    const auto set = detect_vortices(cg, opt);
    double worst = 0.0;
    for (const auto& c : set.curves) {
      const auto hist = advect_curve(make_material_curve(open_ring(c.vertices), 0.0), src, 0.0, T, 0.0);
      worst = std::max(worst, std::abs(hist.back().length() / hist.front().length() - lambda));
    }
    pass = pass && !set.curves.empty() && worst <= 0.02;
    detail += "lambda " + fmt(lambda) + ": " + std::to_string(set.curves.size()) + " lines, max |lb/la - lambda| " +
              fmt(worst) + "; ";
  }
  const double t = sw.seconds();
  pass = pass && t < 120.0;
  return {pass, detail + fmt(t) + " s"};
}

// Full desk pipeline, shared by criteria 5, 6 and 10. Stages already on disk
// with a matching configuration hash are reused.
const PipelineResult& desk_pipeline() {
  static const PipelineResult result = [] {
    RunConfig cfg = desk_config();
    cfg.run.output_dir = work_root() / "desk";
    cfg.run.verbosity = 0;
    return run_pipeline(cfg);
  }();
  return result;
}

Outcome primary_coherence() {
  const fs::path root = desk_pipeline().root;
  const auto rows = read_tsv(stage_dir(root, Stage::compare) / "report.tsv");
  if (rows.empty()) return {false, "no closed lambda-lines detected"};
  std::vector<const std::map<std::string, std::string>*> unit;
  for (const auto& r : rows)
    if (std::abs(num(r, "lambda") - 1.0) < 1e-9) unit.push_back(&r);
  bool pass = true;
  std::string detail;
  if (!unit.empty()) {
    for (const auto* r : unit) {
      const double d = num(*r, "delta_l_b"), v = num(*r, "vort_delta_l_b");
      const bool ok = std::abs(d) <= 0.05 && std::isfinite(v) && v >= 5.0 * std::abs(d);
      pass = pass && ok;
      detail += "nest " + r->at("nest") + ": delta_l " + fmt(d) + ", vorticity contour " + fmt(v) + "; ";
    }
  } else {
    const auto* best = &rows.front();
    for (const auto& r : rows)
      if (std::abs(num(r, "lambda") - 1.0) < std::abs(num(*best, "lambda") - 1.0)) best = &r;
    const double lambda = num(*best, "lambda"), d = num(*best, "delta_l_b"), v = num(*best, "vort_delta_l_b");
    pass = std::abs(1.0 + d - lambda) <= 0.05 && std::isfinite(v) && v >= 5.0 * std::abs(d);
    detail = "no lambda=1 boundary; nearest lambda " + fmt(lambda) + ": delta_l " + fmt(d) + ", vorticity contour " +
             fmt(v) + "; ";
  }
  return {pass, detail + std::to_string(rows.size()) + " report rows"};
}

Outcome optimality() {
  const fs::path path = stage_dir(desk_pipeline().root, Stage::compare) / "optimality.tsv";
  if (!fs::exists(path)) return {false, "optimality experiment did not run"};
  const auto rows = read_tsv(path);
  if (rows.size() < 2) return {false, "fewer than two perturbation rows"};
  bool pass = true;
  std::string detail = "delta_l by eps:";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    detail += " " + fmt(num(rows[k], "eps")) + " -> " + fmt(num(rows[k], "delta_l_b"), 4);
    if (k > 0 && num(rows[k], "delta_l_b") < num(rows[k - 1], "delta_l_b")) pass = false;
  }
  return {pass, detail};
}

Outcome diagnostic_formulas() {
  bool pass = true;
  std::string detail;
  // hand partials of the linear flows
  const VelocityGradient rotation{0.0, -1.0, 1.0, 0.0}, strain{1.0, 0.0, 0.0, -1.0};
  const double qr = okubo_weiss_q(rotation), qs = okubo_weiss_q(strain);
  pass = pass && std::abs(qr + 4.0) <= 1e-12 && std::abs(qs - 4.0) <= 1e-12;
  // the same values from spectral gradients at the stagnation points of
  // Taylor-Green, where the flow is locally a rotation or a strain
  const Grid2D g(32, 32);
  const auto tg = [](Vec2 x) { return Vec2{-std::cos(x.x) * std::sin(x.y), std::sin(x.x) * std::cos(x.y)}; };
  const auto ow = okubo_weiss(sample_vector(g, tg));
  const double q_center = ow.q(16, 16), q_corner = ow.q(8, 8);
  pass = pass && std::abs(q_center + 4.0) <= 1e-12 && std::abs(q_corner - 4.0) <= 1e-12;
  detail += "OW " + fmt(qr) + "/" + fmt(qs) + " (field " + fmt(q_center, 15) + "/" + fmt(q_corner, 15) + "); ";

  const HKPoint hs = hua_klein_point(strain, {}), hr = hua_klein_point(rotation, {});
  std::vector<VectorField2D> frames;
  for (int k = 0; k < 3; ++k) frames.push_back(sample_vector(g, tg, 0.2 * k));
  const auto hk = hua_klein(VelocitySeries(frames), 0.2);
  const bool hk_ok = std::abs(hs.lambda_plus - 1.0) < 1e-12 && std::abs(hs.lambda_minus - 1.0) < 1e-12 &&
                     std::abs(hr.lambda_plus + 1.0) < 1e-12 && std::abs(hr.lambda_minus + 1.0) < 1e-12 &&
                     std::abs(hk.lambda_plus(8, 8) - 1.0) < 1e-12 && std::abs(hk.lambda_minus(16, 16) + 1.0) < 1e-12;
  pass = pass && hk_ok;
  detail += "HK strain " + fmt(hs.lambda_plus) + "/" + fmt(hs.lambda_minus) + ", rotation " + fmt(hr.lambda_plus) +
            "/" + fmt(hr.lambda_minus) + "; ";

  const auto saddle =
      VelocitySource::analytic([](Vec2 x, double) { return Vec2{x.x - pi, -(x.y - pi)}; }, 0.0, 10.0);
  double worst = 0.0;
  for (double T : {0.25, 1.0, 3.0, 7.0}) {
    const auto f = ftle(cauchy_green_field(compute_flow_map(saddle, Grid2D(16, 16), 0.0, T)));
    for (double v : f.values) worst = std::max(worst, std::abs(v - 1.0));
  }
  pass = pass && worst <= 1e-6;
  detail += "saddle FTLE max |L - 1| " + fmt(worst);
  return {pass, detail};
}

// Eigenvalues of DF / sqrt(det) from the characteristic polynomial.
bool roots_on_unit_circle(const Mat2& df) {
  const double det = df.det();
  if (det <= 0.0) return false;
  const double tr = df.trace() / std::sqrt(det);
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0, 0.0));
  const auto r1 = 0.5 * (tr + disc), r2 = 0.5 * (tr - disc);
  return std::abs(std::abs(r1) - 1.0) < 1e-12 && std::abs(std::abs(r2) - 1.0) < 1e-12;
}

Outcome meso_equivalence() {
  const auto& fm = desk_flow_map().fm;
  const auto meso = mesoclassify(fm);
  std::size_t compared = 0, band = 0, mismatch = 0;
  for (std::size_t k = 0; k < fm.grid.size(); ++k) {
    if (meso.boundary[k]) {
      ++band;
      continue;
    }
    ++compared;
    if ((meso.cls[k] == MesoClass::elliptic) != roots_on_unit_circle(fm.jacobian[k])) ++mismatch;
  }
  return {mismatch == 0 && compared > 0, std::to_string(compared) + " nodes compared, " + std::to_string(mismatch) +
                                              " mismatches, " + std::to_string(band) + " in the boundary band"};
}

Outcome taylor_green_eddies() {
  const Grid2D g(64, 64);
  const auto eddies =
      streamline_eddies(sample_scalar(g, [](Vec2 x) { return 2.0 * std::cos(x.x) * std::cos(x.y); }));
  const std::vector<Vec2> extrema{{0.0, 0.0}, {pi, pi}, {pi, 0.0}, {0.0, pi}};
  const std::vector<Vec2> saddles{{pi / 2, pi / 2}, {3 * pi / 2, pi / 2}, {pi / 2, 3 * pi / 2}, {3 * pi / 2, 3 * pi / 2}};
  bool pass = eddies.size() == 4;
  for (const auto& e : eddies) {
    int ex = 0, sa = 0;
    for (const Vec2& p : extrema) ex += point_in_ring_periodic(e.boundary, p, g);
    for (const Vec2& p : saddles) sa += point_in_ring_periodic(e.boundary, p, g);
    pass = pass && ex == 1 && sa == 0;
  }
  return {pass, std::to_string(eddies.size()) + " patches"};
}

Outcome encirclement() {
  const fs::path root = desk_pipeline().root;
  const RunConfig cfg = desk_config();
  const auto set = read_boundary_set(stage_dir(root, Stage::lcs));
  const auto cg = read_cauchy_green(stage_dir(root, Stage::cauchy_green) / "cauchy_green.lcs");
  const auto sing = find_singularities(cg);
  const CGInterpolator interp(cg, cfg.detect_options().interpolation);
  std::size_t ok = 0;
  for (const auto& c : set.curves)
    if (enclosed_singularities(c.vertices, sing, interp).count >= 2) ++ok;
  const bool pass = !set.curves.empty() && ok == set.curves.size();
  return {pass, std::to_string(ok) + " of " + std::to_string(set.curves.size()) +
                    " closed lambda-lines enclose at least two singularities (" + std::to_string(sing.points.size()) +
                    " detected)"};
}

RunConfig determinism_config(const fs::path& out) {
  RunConfig c = desk_config();
  c.run.output_dir = out;
  c.run.verbosity = 0;
  c.solver.n = 64;
  c.solver.t_end = 6.0;
  c.flowmap.a = 2.0;
  c.flowmap.b = 5.0;
  c.flowmap.resolution = 96;
  c.lcs.max_seeds = 12;
  return c;
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    files[fs::relative(e.path(), root).generic_string()] =
        std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return files;
}

Outcome determinism() {
  const fs::path out = work_root() / "determinism";
  const RunConfig cfg = determinism_config(out);
  fs::remove_all(out);
  run_pipeline(cfg);
  const auto first = snapshot(out);
  fs::remove_all(out);
  run_pipeline(cfg);
  const auto second = snapshot(out);
  std::size_t differ = 0;
  std::string names;
  for (const auto& [name, bytes] : first) {
    const auto it = second.find(name);
    if (it == second.end() || it->second != bytes) {
      ++differ;
      names += " " + name;
    }
  }
  const std::size_t curves = read_boundary_set(stage_dir(out, Stage::lcs)).curves.size();
  const bool pass = differ == 0 && first.size() == second.size() && !first.empty();
  return {pass, std::to_string(first.size()) + " artifacts, " + std::to_string(differ) + " differ" + names + " (" +
                    std::to_string(curves) + " closed lambda-lines)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"solver exactness (Taylor-Green, 64^2)", solver_exactness},
      {"inviscid conservation (100 steps)", conservation},
      {"incompressibility of deformation (desk turbulence)", incompressibility},
      {"lambda-line stretch law (synthetic vortex)", stretch_law},
      {"primary boundary coherence (desk turbulence)", primary_coherence},
      {"optimality monotonicity", optimality},
      {"diagnostic formulas (OW, Hua-Klein, FTLE)", diagnostic_formulas},
      {"mesoclassification equivalence", meso_equivalence},
      {"streamline eddies on Taylor-Green", taylor_green_eddies},
      {"singularity encirclement", encirclement},
      {"determinism of the pipeline", determinism},
  };
  std::set<std::size_t> selected;
  for (int k = 1; k < argc; ++k) selected.insert(std::stoul(argv[k]));
  fs::create_directories(work_root());

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (!selected.empty() && !selected.count(k + 1)) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << (k + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[k].first << "  ["
              << o.detail << "]" << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
