#include "lcs/pipeline/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "lcs/error.hpp"
#include "lcs/field/io.hpp"

namespace lcs {

namespace {

const char* const kSections[] = {"run", "solver", "flowmap", "lcs", "diagnostics", "experiment"};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ConfigError("config: " + key + ": expected a number, got '" + text + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ConfigError("config: " + key + ": expected a non-negative integer, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("config: " + key + ": expected a boolean, got '" + text + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError("config: " + key + ": empty list");
  return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

struct Key {
  const char* section;
  const char* name;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string& key, const std::string& value)> set;
};

#define LCS_DOUBLE(sec, member, field)                                                   \
  Key{sec, #field, [](const RunConfig& c) { return format_double(c.member.field); },     \
      [](RunConfig& c, const std::string& k, const std::string& v) { c.member.field = parse_double(k, v); }}
#define LCS_UINT(sec, member, field)                                                      \
  Key{sec, #field, [](const RunConfig& c) { return std::to_string(c.member.field); },     \
      [](RunConfig& c, const std::string& k, const std::string& v) {                      \
        c.member.field = static_cast<decltype(c.member.field)>(parse_uint(k, v));         \
      }}
#define LCS_BOOL(sec, member, field)                                                      \
  Key{sec, #field, [](const RunConfig& c) { return bool_text(c.member.field); },          \
      [](RunConfig& c, const std::string& k, const std::string& v) { c.member.field = parse_bool(k, v); }}
#define LCS_STRING(sec, member, field)                                                    \
  Key{sec, #field, [](const RunConfig& c) { return std::string(c.member.field); },        \
      [](RunConfig& c, const std::string&, const std::string& v) { c.member.field = trim(v); }}

const std::vector<Key>& keys() {
  static const std::vector<Key> table{
      LCS_UINT("run", run, seed),
      LCS_STRING("run", run, output_dir),
      Key{"run", "verbosity", [](const RunConfig& c) { return std::to_string(c.run.verbosity); },
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.run.verbosity = static_cast<int>(parse_uint(k, v));
          }},
      LCS_UINT("solver", solver, n),
      LCS_DOUBLE("solver", solver, nu),
      LCS_DOUBLE("solver", solver, t_end),
      LCS_DOUBLE("solver", solver, output_dt),
      LCS_DOUBLE("solver", solver, k_lo),
      LCS_DOUBLE("solver", solver, k_hi),
      LCS_DOUBLE("solver", solver, tolerance),
      LCS_DOUBLE("solver", solver, dt_initial),
      LCS_DOUBLE("solver", solver, dt_min),
      LCS_DOUBLE("solver", solver, spinup_time),
      LCS_DOUBLE("solver", solver, initial_rms_vorticity),
      LCS_DOUBLE("solver", solver, initial_peak_k),
      LCS_BOOL("solver", solver, forcing),
      LCS_DOUBLE("flowmap", flowmap, a),
      Key{"flowmap", "b", [](const RunConfig& c) { return format_double(c.window_b()); },
          [](RunConfig& c, const std::string& k, const std::string& v) { c.flowmap.b = parse_double(k, v); }},
      LCS_DOUBLE("flowmap", flowmap, delta),
      LCS_DOUBLE("flowmap", flowmap, tolerance),
      LCS_UINT("flowmap", flowmap, resolution),
      LCS_DOUBLE("lcs", lcs, lambda_min),
      LCS_DOUBLE("lcs", lcs, lambda_max),
      LCS_DOUBLE("lcs", lcs, lambda_step),
      LCS_STRING("lcs", lcs, branches),
      LCS_UINT("lcs", lcs, max_seeds),
      LCS_STRING("lcs", lcs, interpolation),
      LCS_BOOL("lcs", lcs, outermost_only),
      LCS_DOUBLE("lcs", lcs, section_fraction),
      LCS_UINT("lcs", lcs, samples),
      Key{"diagnostics", "t", [](const RunConfig& c) { return format_double(c.diagnose_time()); },
          [](RunConfig& c, const std::string& k, const std::string& v) { c.diagnostics.t = parse_double(k, v); }},
      LCS_STRING("diagnostics", diagnostics, what),
      LCS_DOUBLE("diagnostics", diagnostics, ow_alpha),
      Key{"experiment", "eps",
          [](const RunConfig& c) {
            std::string s;
            for (double e : c.experiment.eps) s += (s.empty() ? "" : ",") + format_double(e);
            return s;
          },
          [](RunConfig& c, const std::string& k, const std::string& v) { c.experiment.eps = parse_list(k, v); }},
      LCS_DOUBLE("experiment", experiment, reference_diameter),
      LCS_DOUBLE("experiment", experiment, store_every),
      LCS_BOOL("experiment", experiment, optimality),
  };
  return table;
}

#undef LCS_DOUBLE
#undef LCS_UINT
#undef LCS_BOOL
#undef LCS_STRING

}  // namespace

RunConfig::RunConfig() {
  solver.n = 128;
  solver.nu = 5e-4;
  solver.t_end = 20.0;
  solver.initial_rms_vorticity = 0.5;
  flowmap.a = 2.0;
  flowmap.resolution = 256;
}

double RunConfig::window_b() const { return flowmap.b.value_or(std::min(flowmap.a + 10.0, solver.t_end)); }

DetectOptions RunConfig::detect_options() const {
  DetectOptions o;
  o.lambdas = lambda_sweep(lcs.lambda_min, lcs.lambda_max, lcs.lambda_step);
  if (lcs.branches == "plus")
    o.branches = {Branch::plus};
  else if (lcs.branches == "minus")
    o.branches = {Branch::minus};
  o.max_seeds = lcs.max_seeds;
  o.interpolation = lcs.interpolation == "spline" ? CGInterpolation::spline : CGInterpolation::bilinear;
  o.outermost_only = lcs.outermost_only;
  o.poincare.section_fraction = lcs.section_fraction;
  o.poincare.samples = lcs.samples;
  return o;
}

std::vector<std::string> RunConfig::diagnostics_list() const {
  std::vector<std::string> out;
  std::stringstream ss(diagnostics.what);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void RunConfig::validate() const {
  solver.validate();
  if (run.verbosity < 0 || run.verbosity > 2) throw ConfigError("config: run.verbosity must be 0, 1 or 2");
  if (run.output_dir.empty()) throw ConfigError("config: run.output_dir is empty");
  const double a = window_a(), b = window_b();
  if (a < 0.0 || a > solver.t_end || b < 0.0 || b > solver.t_end)
    throw ConfigError("config: flowmap window [" + format_double(a) + ", " + format_double(b) +
                      "] outside the simulated span [0, " + format_double(solver.t_end) + "]");
  if (!(flowmap.delta > 0.0)) throw ConfigError("config: flowmap.delta must be > 0");
  if (!(flowmap.tolerance > 0.0)) throw ConfigError("config: flowmap.tolerance must be > 0");
  if (flowmap.resolution != 0 && flowmap.resolution < 8) throw ConfigError("config: flowmap.resolution must be >= 8");
  if (!(lcs.lambda_step > 0.0) || lcs.lambda_min > lcs.lambda_max || !(lcs.lambda_min > 0.0))
    throw ConfigError("config: invalid lambda sweep");
  if (lcs.branches != "plus" && lcs.branches != "minus" && lcs.branches != "both")
    throw ConfigError("config: lcs.branches must be plus, minus or both");
  if (lcs.interpolation != "bilinear" && lcs.interpolation != "spline")
    throw ConfigError("config: lcs.interpolation must be bilinear or spline");
  if (!(lcs.section_fraction > 0.0 && lcs.section_fraction < 0.5))
    throw ConfigError("config: lcs.section_fraction must lie in (0, 0.5)");
  if (lcs.samples < 2) throw ConfigError("config: lcs.samples must be >= 2");
  const double t = diagnose_time();
  if (t < 0.0 || t > solver.t_end) throw ConfigError("config: diagnostics.t outside the simulated span");
  for (const auto& w : diagnostics_list())
    if (w != "ow" && w != "hk" && w != "eddies" && w != "vort")
      throw ConfigError("config: diagnostics.what: unknown item '" + w + "'");
  if (!(diagnostics.ow_alpha >= 0.0)) throw ConfigError("config: diagnostics.ow_alpha must be >= 0");
  for (double e : experiment.eps)
    if (!(e >= 0.0)) throw ConfigError("config: experiment.eps entries must be >= 0");
  if (!(experiment.reference_diameter > 0.0)) throw ConfigError("config: experiment.reference_diameter must be > 0");
  if (!(experiment.store_every >= 0.0)) throw ConfigError("config: experiment.store_every must be >= 0");
}

std::string RunConfig::section_text(std::string_view section) const {
  std::string out = "[" + std::string(section) + "]\n";
  for (const auto& k : keys())
    if (section == k.section) out += std::string(k.name) + " = " + k.get(*this) + "\n";
  return out;
}

std::string RunConfig::serialize() const {
  std::string out;
  for (const char* s : kSections) out += (out.empty() ? "" : "\n") + section_text(s);
  return out;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig parse_config(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  RunConfig c;
  for (const auto& [section, node] : tree) {
    if (node.empty())
      throw ConfigError("config: key '" + section + "' outside a section");
    bool known_section = false;
    for (const char* s : kSections) known_section |= section == s;
    if (!known_section) throw ConfigError("config: unknown section [" + section + "]");
    for (const auto& [name, leaf] : node) {
      const Key* key = nullptr;
      for (const auto& k : keys())
        if (section == k.section && name == k.name) key = &k;
      if (!key) throw ConfigError("config: unknown key '" + section + "." + name + "'");
      key->set(c, section + "." + name, leaf.data());
    }
  }
  c.solver.seed = c.run.seed;
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void write_config(const RunConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << config.serialize();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace lcs
