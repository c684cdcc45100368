#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcs/elliptic/closed_orbits.hpp"
#include "lcs/ns2d/solver.hpp"

namespace lcs {

struct RunSection {
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "lcs_out";
  int verbosity = 1;  // 0 quiet, 1 stage progress, 2 detail
};

struct FlowMapSection {
  double a = 0.0;
  std::optional<double> b;  // unset: min(a + 10, solver t_end)
  double delta = 1e-3;
  double tolerance = 1e-8;
  std::size_t resolution = 0;  // 0: solver grid
};

struct LcsSection {
  double lambda_min = 0.90;
  double lambda_max = 1.10;
  double lambda_step = 0.01;
  std::string branches = "both";  // plus, minus, both
  std::size_t max_seeds = 64;
  std::string interpolation = "spline";  // spline, bilinear
  bool outermost_only = true;
  double section_fraction = 0.2;
  std::size_t samples = 200;
};

struct DiagnosticsSection {
  std::optional<double> t;  // unset: flowmap a
  std::string what = "ow,hk,eddies,vort";
  double ow_alpha = 0.2;
};

struct ExperimentSection {
  std::vector<double> eps{0.0, 0.02, 0.04, 0.06};
  double reference_diameter = 0.6;
  double store_every = 0.5;
  bool optimality = true;
};

// Whole-pipeline configuration, read from an INI file with the sections
// [run], [solver], [flowmap], [lcs], [diagnostics] and [experiment].
struct RunConfig {
  RunSection run;
  SolverConfig solver;
  FlowMapSection flowmap;
  LcsSection lcs;
  DiagnosticsSection diagnostics;
  ExperimentSection experiment;

  RunConfig();

  double window_a() const { return flowmap.a; }
  double window_b() const;
  double diagnose_time() const { return diagnostics.t.value_or(flowmap.a); }
  std::size_t flowmap_resolution() const { return flowmap.resolution ? flowmap.resolution : solver.n; }
  DetectOptions detect_options() const;
  std::vector<std::string> diagnostics_list() const;

  // Throws ConfigError.
  void validate() const;

  // Canonical INI text with every key resolved; reading it back yields an
  // equal configuration.
  std::string serialize() const;
  // Canonical text of one section.
  std::string section_text(std::string_view section) const;
};

std::uint64_t fnv1a(std::string_view text);
std::string hex64(std::uint64_t h);

// Unknown sections or keys and unparsable values raise ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
void write_config(const RunConfig& config, const std::filesystem::path& path);

}  // namespace lcs
