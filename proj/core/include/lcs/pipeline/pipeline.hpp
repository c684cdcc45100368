#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lcs/pipeline/stages.hpp"

namespace lcs {

struct StageRecord {
  Stage stage = Stage::simulate;
  std::string hash;
  bool cached = false;
  std::vector<std::string> files;  // relative to the output root
};

struct PipelineResult {
  std::filesystem::path root;
  std::vector<StageRecord> stages;
};

// Runs simulate -> flowmap -> cauchy_green -> lcs -> diagnose -> compare
// into config.run.output_dir. A stage whose marker file records the same
// hash and whose files all exist is skipped. Writes config.ini and
// provenance.json at the root. A failing stage rethrows with its name
// prefixed; outputs written so far stay on disk.
PipelineResult run_pipeline(const RunConfig& config, const LogFn& log = {});

}  // namespace lcs
