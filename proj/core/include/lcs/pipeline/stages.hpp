#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lcs/field/grid.hpp"
#include "lcs/flowmap/flowmap.hpp"
#include "lcs/pipeline/config.hpp"

namespace lcs {

enum class Stage : std::uint8_t { simulate, flowmap, cauchy_green, lcs, diagnose, compare };

inline constexpr std::array<Stage, 6> kAllStages{Stage::simulate, Stage::flowmap, Stage::cauchy_green,
                                                 Stage::lcs,      Stage::diagnose, Stage::compare};

const char* to_string(Stage s);

// Hash of every config section the stage and its inputs depend on.
std::string stage_hash(const RunConfig& config, Stage s);

using LogFn = std::function<void(int level, const std::string& message)>;

// Stage outputs live in <root>/<stage name>.
std::filesystem::path stage_dir(const std::filesystem::path& root, Stage s);

// Frames u_NNNN.lcs, manifest.txt and run_log.tsv.
void write_simulation(const SolverConfig& config, const std::filesystem::path& dir, const LogFn& log);

// flowmap.lcs on an n x n grid over the series domain.
FlowMapGrid write_flow_map_products(const VelocitySeries& series, std::size_t n, double a, double b,
                                    const FlowMapOptions& opt, const std::filesystem::path& dir, const LogFn& log);

// cauchy_green.lcs, ftle.lcs (nonempty windows), meso.lcs and summary.json.
void write_cauchy_green_products(const FlowMapGrid& fm, const std::filesystem::path& dir, const LogFn& log);

// Closed lambda-lines as CSV polylines plus manifest.json.
void write_lcs(const CauchyGreenField& cg, const DetectOptions& opt, const std::filesystem::path& dir, const LogFn& log);

// Items of `list`: vort, ow, hk, eddies.
void write_diagnostics(const VelocitySeries& series, double t, const std::vector<std::string>& list, double ow_alpha,
                       const std::filesystem::path& dir, const LogFn& log);

struct ComparisonOptions {
  double tolerance = 1e-8;
  double store_every = 0.5;
  double ow_alpha = 0.2;
  std::vector<double> eps{0.0, 0.02, 0.04, 0.06};
  double reference_diameter = 0.6;
  bool optimality = true;
};
ComparisonOptions comparison_options(const RunConfig& config);

// report.tsv and stretch_nest_NNNN.tsv per nest. optimality.tsv is run on
// the curve with lambda closest to 1 (outer members first) that takes every
// perturbation without self-intersecting. The flow map adds FTLE and
// mesoellipticity columns.
void write_comparison(const VortexBoundarySet& set, const VelocitySeries& series, double a, double b,
                      const std::optional<FlowMapGrid>& fm, const ComparisonOptions& opt,
                      const std::filesystem::path& dir, const LogFn& log);

// Runs one stage, reading the outputs of earlier stages from `root`.
void run_stage(Stage s, const RunConfig& config, const std::filesystem::path& root, const LogFn& log);

}  // namespace lcs
