#include "lcs/pipeline/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "lcs/error.hpp"

namespace lcs {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMarker = "stage.json";

std::vector<std::string> list_files(const fs::path& root, const fs::path& dir) {
  std::vector<std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().filename() != kMarker)
      out.push_back(fs::relative(e.path(), root).generic_string());
  std::sort(out.begin(), out.end());
  return out;
}

bool cache_hit(const fs::path& root, const fs::path& dir, const std::string& hash, std::vector<std::string>& files) {
  std::ifstream in(dir / kMarker);
  if (!in) return false;
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("hash").get<std::string>() != hash) return false;
    files = j.at("files").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception&) {
    return false;
  }
  return std::all_of(files.begin(), files.end(), [&](const std::string& f) { return fs::exists(root / f); });
}

void write_json(const nlohmann::ordered_json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

template <class E>
[[noreturn]] void rethrow_as(const E& e, Stage s) {
  throw E(std::string("stage ") + to_string(s) + ": " + e.what());
}

void run_guarded(Stage s, const RunConfig& c, const fs::path& root, const LogFn& log) {
  try {
    run_stage(s, c, root, log);
  } catch (const ConfigError& e) {
    rethrow_as(e, s);
  } catch (const FormatError& e) {
    rethrow_as(e, s);
  } catch (const IoError& e) {
    rethrow_as(e, s);
  } catch (const OutOfRangeError& e) {
    rethrow_as(e, s);
  } catch (const StiffnessError& e) {
    rethrow_as(e, s);
  } catch (const NumericError& e) {
    rethrow_as(e, s);
  } catch (const fs::filesystem_error& e) {
    throw IoError(std::string("stage ") + to_string(s) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    throw NumericError(std::string("stage ") + to_string(s) + ": out of memory");
  }
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config, const LogFn& log_in) {
  config.validate();
  const LogFn log = [&](int level, const std::string& msg) {
    if (log_in && level <= config.run.verbosity) log_in(level, msg);
  };
  PipelineResult result;
  result.root = config.run.output_dir;
  const fs::path& root = result.root;
  try {
    fs::create_directories(root);
  } catch (const fs::filesystem_error& e) {
    throw IoError(std::string("cannot create output directory: ") + e.what());
  }
  write_config(config, root / "config.ini");

  nlohmann::ordered_json prov;
  prov["config_hash"] = hex64(fnv1a(config.serialize()));
  prov["stages"] = nlohmann::ordered_json::array();
  for (Stage s : kAllStages) {
    StageRecord rec;
    rec.stage = s;
    rec.hash = stage_hash(config, s);
    const fs::path dir = stage_dir(root, s);
    if (cache_hit(root, dir, rec.hash, rec.files)) {
      rec.cached = true;
      log(1, std::string(to_string(s)) + ": cached (" + rec.hash + ")");
    } else {
      log(1, std::string(to_string(s)) + ": running");
      std::error_code ec;
      fs::remove_all(dir, ec);
      run_guarded(s, config, root, log);
      rec.files = list_files(root, dir);
      nlohmann::ordered_json marker;
      marker["stage"] = to_string(s);
      marker["hash"] = rec.hash;
      marker["files"] = rec.files;
      write_json(marker, dir / kMarker);
    }
    nlohmann::ordered_json js;
    js["stage"] = to_string(s);
    js["hash"] = rec.hash;
    js["files"] = rec.files;
    prov["stages"].push_back(js);
    result.stages.push_back(std::move(rec));
  }
  write_json(prov, root / "provenance.json");
  return result;
}

}  // namespace lcs
