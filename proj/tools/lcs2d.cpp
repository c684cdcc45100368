#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "lcs/elliptic/curve_io.hpp"
#include "lcs/error.hpp"
#include "lcs/field/io.hpp"
#include "lcs/flowmap/flowmap_io.hpp"
#include "lcs/material/experiment.hpp"
#include "lcs/pipeline/pipeline.hpp"

namespace fs = std::filesystem;
using namespace lcs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

constexpr const char* kThreadsEnv = "LCS2D_THREADS";

struct Common {
  std::string config_path;
  int threads = 0;
  std::optional<int> verbosity;
};

RunConfig base_config(const Common& c) {
  RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_config(c.config_path);
  if (c.verbosity) cfg.run.verbosity = *c.verbosity;
  return cfg;
}

LogFn stderr_log(int verbosity) {
  return [verbosity](int level, const std::string& msg) {
    if (level <= verbosity) std::cerr << msg << '\n';
  };
}

void set_threads(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv(kThreadsEnv)) {
      try {
        threads = std::stoi(env);
      } catch (const std::exception&) {
        throw ConfigError(std::string(kThreadsEnv) + " is not an integer");
      }
    }
  }
  if (threads < 0) throw ConfigError("thread count must be positive");
  if (threads > 0) omp_set_num_threads(threads);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "INI run configuration supplying defaults")->check(CLI::ExistingFile);
  sub->add_option("--threads", c.threads, "Worker thread cap (default: $LCS2D_THREADS or all cores)");
  sub->add_option("-v,--verbosity", c.verbosity, "0 quiet, 1 progress, 2 detail");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent Lagrangian vortex toolkit for 2D periodic turbulence"};
  app.require_subcommand(1);
  Common common;

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run the forced pseudo-spectral solver and write a velocity series");
  add_common(sim, common);
  std::string sim_out = "series";
  std::optional<std::size_t> sim_n;
  std::optional<double> sim_t_end, sim_nu, sim_output_dt;
  std::optional<std::uint64_t> sim_seed;
  sim->add_option("--out", sim_out, "Output directory")->capture_default_str();
  sim->add_option("--n", sim_n, "Grid size");
  sim->add_option("--t-end", sim_t_end, "Final time");
  sim->add_option("--nu", sim_nu, "Viscosity");
  sim->add_option("--output-dt", sim_output_dt, "Frame interval");
  sim->add_option("--seed", sim_seed, "Random seed");

  // flowmap
  auto* fmc = app.add_subcommand("flowmap", "Flow map, Cauchy-Green tensor, FTLE and mesoclassification");
  add_common(fmc, common);
  std::string fm_series, fm_out = "flowmap";
  std::optional<double> fm_a, fm_b, fm_delta;
  std::optional<std::size_t> fm_res;
  fmc->add_option("--series", fm_series, "Series manifest")->required()->check(CLI::ExistingFile);
  fmc->add_option("--a", fm_a, "Window start");
  fmc->add_option("--b", fm_b, "Window end");
  fmc->add_option("--delta", fm_delta, "Auxiliary grid spacing");
  fmc->add_option("--resolution", fm_res, "Flow-map grid size (default: series grid)");
  fmc->add_option("--out", fm_out, "Output directory")->capture_default_str();

  // lcs
  auto* lcsc = app.add_subcommand("lcs", "Detect closed lambda-lines (elliptic LCS)");
  add_common(lcsc, common);
  std::string lcs_cg, lcs_out = "lcs";
  std::optional<double> lmin, lmax, lstep;
  std::optional<std::string> lbranches, linterp;
  std::optional<std::size_t> lseeds;
  lcsc->add_option("--cg", lcs_cg, "Cauchy-Green field file")->required()->check(CLI::ExistingFile);
  lcsc->add_option("--lambda-min", lmin, "Smallest lambda");
  lcsc->add_option("--lambda-max", lmax, "Largest lambda");
  lcsc->add_option("--lambda-step", lstep, "Lambda step");
  lcsc->add_option("--branches", lbranches, "plus, minus or both");
  lcsc->add_option("--interpolation", linterp, "bilinear or spline");
  lcsc->add_option("--max-seeds", lseeds, "Seed cap");
  lcsc->add_option("--out", lcs_out, "Output directory")->capture_default_str();

  // diagnose
  auto* diag = app.add_subcommand("diagnose", "Eulerian diagnostics at one time");
  add_common(diag, common);
  std::string dg_series, dg_out = "diagnose";
  std::optional<double> dg_t, dg_alpha;
  std::optional<std::string> dg_what;
  diag->add_option("--series", dg_series, "Series manifest")->required()->check(CLI::ExistingFile);
  diag->add_option("--t", dg_t, "Time");
  diag->add_option("--what", dg_what, "Comma list of ow, hk, eddies, vort");
  diag->add_option("--alpha", dg_alpha, "Okubo-Weiss threshold factor");
  diag->add_option("--out", dg_out, "Output directory")->capture_default_str();

  // advect
  auto* adv = app.add_subcommand("advect", "Advect a closed material curve and report its stretching");
  add_common(adv, common);
  std::string ad_series, ad_curve, ad_out = "advect";
  double ad_a = 0.0, ad_b = 0.0;
  std::optional<double> ad_store;
  adv->add_option("--series", ad_series, "Series manifest")->required()->check(CLI::ExistingFile);
  adv->add_option("--curve", ad_curve, "Curve CSV (s,x,y)")->required()->check(CLI::ExistingFile);
  adv->add_option("--a", ad_a, "Start time")->required();
  adv->add_option("--b", ad_b, "End time")->required();
  adv->add_option("--store-every", ad_store, "Interval between stored curves");
  adv->add_option("--out", ad_out, "Output directory")->capture_default_str();

  // compare
  auto* cmp = app.add_subcommand("compare", "Coherence report of detected boundaries against Eulerian contours");
  add_common(cmp, common);
  std::string cp_bound, cp_series, cp_out = "report.tsv", cp_flowmap;
  cmp->add_option("--boundaries", cp_bound, "Directory written by lcs")->required()->check(CLI::ExistingDirectory);
  cmp->add_option("--series", cp_series, "Series manifest")->required()->check(CLI::ExistingFile);
  cmp->add_option("--flowmap", cp_flowmap, "Flow-map file for FTLE and mesoellipticity columns")
      ->check(CLI::ExistingFile);
  cmp->add_option("--out", cp_out, "Report path; companion tables go next to it")->capture_default_str();

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "Run every stage with caching");
  add_common(pipe, common);
  std::optional<std::string> pp_out;
  pipe->add_option("--out", pp_out, "Output directory (overrides run.output_dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    set_threads(common.threads);
    RunConfig cfg = base_config(common);
    const LogFn log = stderr_log(cfg.run.verbosity);

    if (*sim) {
      if (sim_n) cfg.solver.n = *sim_n;
      if (sim_t_end) cfg.solver.t_end = *sim_t_end;
      if (sim_nu) cfg.solver.nu = *sim_nu;
      if (sim_output_dt) cfg.solver.output_dt = *sim_output_dt;
      if (sim_seed) cfg.run.seed = *sim_seed;
      SolverConfig sc = cfg.solver;
      sc.seed = cfg.run.seed;
      sc.validate();
      write_simulation(sc, sim_out, log);
      write_config(cfg, fs::path(sim_out) / "config.ini");
    } else if (*fmc) {
      const VelocitySeries series = read_series(fm_series);
      if (fm_a) cfg.flowmap.a = *fm_a;
      if (fm_b) cfg.flowmap.b = *fm_b;
      if (fm_delta) cfg.flowmap.delta = *fm_delta;
      FlowMapOptions opt;
      opt.advect.tol = cfg.flowmap.tolerance;
      opt.delta = cfg.flowmap.delta;
      const double a = cfg.flowmap.a;
      const double b = cfg.flowmap.b.value_or(std::min(a + 10.0, series.t_end()));
      const std::size_t n = fm_res ? *fm_res : (cfg.flowmap.resolution ? cfg.flowmap.resolution : series.grid().nx());
      const FlowMapGrid fm = write_flow_map_products(series, n, a, b, opt, fm_out, log);
      write_cauchy_green_products(fm, fm_out, log);
      write_config(cfg, fs::path(fm_out) / "config.ini");
    } else if (*lcsc) {
      if (lmin) cfg.lcs.lambda_min = *lmin;
      if (lmax) cfg.lcs.lambda_max = *lmax;
      if (lstep) cfg.lcs.lambda_step = *lstep;
      if (lbranches) cfg.lcs.branches = *lbranches;
      if (linterp) cfg.lcs.interpolation = *linterp;
      if (lseeds) cfg.lcs.max_seeds = *lseeds;
      cfg.validate();
      write_lcs(read_cauchy_green(lcs_cg), cfg.detect_options(), lcs_out, log);
      write_config(cfg, fs::path(lcs_out) / "config.ini");
    } else if (*diag) {
      const VelocitySeries series = read_series(dg_series);
      if (dg_what) cfg.diagnostics.what = *dg_what;
      if (dg_alpha) cfg.diagnostics.ow_alpha = *dg_alpha;
      const double t = dg_t ? *dg_t : series.t_begin();
      write_diagnostics(series, t, cfg.diagnostics_list(), cfg.diagnostics.ow_alpha, dg_out, log);
      write_config(cfg, fs::path(dg_out) / "config.ini");
    } else if (*adv) {
      const VelocitySeries series = read_series(ad_series);
      const VelocitySource src =
          VelocitySource::from_series(std::make_shared<const VelocityInterpolator>(series));
      CurveAdvectOptions opt;
      opt.advect.tol = cfg.flowmap.tolerance;
      const double store = ad_store.value_or(cfg.experiment.store_every);
      const auto hist = advect_curve(make_material_curve(read_polyline_csv(ad_curve), ad_a), src, ad_a, ad_b, store, opt);
      fs::create_directories(ad_out);
      write_polyline_csv(hist.back().closed(), fs::path(ad_out) / "curve_b.csv");
      const StretchHistory sh = relative_stretching(hist);
      write_stretch_tsv(sh, fs::path(ad_out) / "stretch.tsv");
      write_config(cfg, fs::path(ad_out) / "config.ini");
      std::cout << "delta_l(b) = " << format_double(sh.final_delta()) << '\n';
    } else if (*cmp) {
      const VortexBoundarySet set = read_boundary_set(cp_bound);
      const VelocitySeries series = read_series(cp_series);
      std::optional<FlowMapGrid> fm;
      if (!cp_flowmap.empty()) fm = read_flow_map(cp_flowmap);
      double a = cfg.window_a(), b = cfg.window_b();
      if (!set.curves.empty()) {
        a = set.curves.front().a;
        b = set.curves.front().b;
      }
      const fs::path out(cp_out);
      const fs::path dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
      write_comparison(set, series, a, b, fm, comparison_options(cfg), dir, log);
      if (out.filename() != "report.tsv") fs::rename(dir / "report.tsv", out);
    } else if (*pipe) {
      if (pp_out) cfg.run.output_dir = *pp_out;
      const PipelineResult r = run_pipeline(cfg, log);
      std::size_t cached = 0;
      for (const auto& s : r.stages) cached += s.cached ? 1 : 0;
      if (cfg.run.verbosity > 0)
        std::cerr << "pipeline: " << r.stages.size() << " stages (" << cached << " cached) in " << r.root.string()
                  << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}
