#include "lcs/elliptic/curve_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lcs/error.hpp"
#include "lcs/field/io.hpp"

namespace lcs {

namespace fs = std::filesystem;
using nlohmann::json;

void write_polyline_csv(std::span<const Vec2> line, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "s,x,y\n";
  const auto s = arclength(line);
  for (std::size_t k = 0; k < line.size(); ++k)
    out << format_double(s[k]) << ',' << format_double(line[k].x) << ',' << format_double(line[k].y) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

Polyline read_polyline_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("s,x,y", 0) != 0) throw FormatError(path.string() + ": missing s,x,y header");
  Polyline out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    double v[3];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int c = 0; c < 3; ++c) {
      auto [next, ec] = std::from_chars(p, end, v[c]);
      if (ec != std::errc()) throw FormatError(path.string() + ":" + std::to_string(lineno) + ": bad number");
      p = next;
      if (c < 2) {
        if (p == end || *p != ',') throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected ','");
        ++p;
      }
    }
    out.push_back({v[1], v[2]});
  }
  return out;
}

namespace {

json point(Vec2 p) { return json::array({p.x, p.y}); }
Vec2 to_point(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

void write_boundary_set(const VortexBoundarySet& set, const fs::path& dir) {
  fs::create_directories(dir);
  json m;
  m["domain"] = {{"nx", set.domain.nx()}, {"ny", set.domain.ny()}, {"x0", set.domain.x0()},
                 {"x1", set.domain.x1()}, {"y0", set.domain.y0()}, {"y1", set.domain.y1()}};
  m["dropped_overlaps"] = set.dropped_overlaps;
  m["seeds"] = json::array();
  for (const auto& s : set.seeds) m["seeds"].push_back(point(s));
  m["singularities"] = json::array();
  for (const auto& s : set.singularities.points)
    m["singularities"].push_back({{"x", s.position.x}, {"y", s.position.y}, {"quality", s.quality}});
  m["degenerate_field"] = set.singularities.degenerate_field;
  m["curves"] = json::array();
  for (std::size_t k = 0; k < set.curves.size(); ++k) {
    const auto& c = set.curves[k];
    char name[32];
    std::snprintf(name, sizeof name, "curve_%04zu.csv", k);
    write_polyline_csv(c.vertices, dir / name);
    json enc = json::array();
    for (const auto& p : c.enclosed_singularities) enc.push_back(point(p));
    m["curves"].push_back({{"file", name},
                           {"lambda", c.lambda},
                           {"branch", to_string(c.branch)},
                           {"window", {c.a, c.b}},
                           {"singularity_count", c.singularity_count},
                           {"enclosed_singularities", enc},
                           {"q", c.q_value},
                           {"area", c.area},
                           {"closure_gap", c.closure_gap},
                           {"seed_index", c.seed_index},
                           {"seed", point(c.seed)},
                           {"section_s", c.section_s},
                           {"nest", c.nest},
                           {"depth", c.depth},
                           {"primary", c.primary}});
  }
  m["nests"] = json::array();
  for (const auto& n : set.nests) {
    json j{{"members", n.members}};
    j["primary"] = n.primary ? json(*n.primary) : json(nullptr);
    m["nests"].push_back(j);
  }
  std::ofstream out(dir / "manifest.json");
  if (!out) throw IoError("cannot write " + (dir / "manifest.json").string());
  out << m.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + (dir / "manifest.json").string());
}

VortexBoundarySet read_boundary_set(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw IoError("cannot read " + (dir / "manifest.json").string());
  VortexBoundarySet set;
  try {
    const json m = json::parse(in);
    const auto& d = m.at("domain");
    set.domain = Grid2D(d.at("nx").get<std::size_t>(), d.at("ny").get<std::size_t>(), d.at("x0").get<double>(),
                        d.at("x1").get<double>(), d.at("y0").get<double>(), d.at("y1").get<double>());
    set.dropped_overlaps = m.value("dropped_overlaps", std::size_t{0});
    for (const auto& s : m.at("seeds")) set.seeds.push_back(to_point(s));
    for (const auto& s : m.at("singularities"))
      set.singularities.points.push_back({{s.at("x").get<double>(), s.at("y").get<double>()}, 0, 0, s.at("quality").get<double>()});
    set.singularities.degenerate_field = m.value("degenerate_field", false);
    for (const auto& j : m.at("curves")) {
      ClosedMaterialCurve c;
      c.vertices = read_polyline_csv(dir / j.at("file").get<std::string>());
      c.lambda = j.at("lambda").get<double>();
      c.branch = j.at("branch").get<std::string>() == "+" ? Branch::plus : Branch::minus;
      c.a = j.at("window").at(0).get<double>();
      c.b = j.at("window").at(1).get<double>();
      c.singularity_count = j.at("singularity_count").get<int>();
      for (const auto& p : j.at("enclosed_singularities")) c.enclosed_singularities.push_back(to_point(p));
      c.q_value = j.at("q").get<double>();
      c.area = j.at("area").get<double>();
      c.closure_gap = j.at("closure_gap").get<double>();
      c.seed_index = j.at("seed_index").get<std::size_t>();
      c.seed = to_point(j.at("seed"));
      c.section_s = j.at("section_s").get<double>();
      c.nest = j.at("nest").get<int>();
      c.depth = j.at("depth").get<int>();
      c.primary = j.at("primary").get<bool>();
      set.curves.push_back(std::move(c));
    }
    for (const auto& j : m.at("nests")) {
      VortexNest n;
      n.members = j.at("members").get<std::vector<std::size_t>>();
      if (!j.at("primary").is_null()) n.primary = j.at("primary").get<std::size_t>();
      set.nests.push_back(std::move(n));
    }
  } catch (const json::exception& e) {
    throw FormatError((dir / "manifest.json").string() + ": " + e.what());
  }
  return set;
}

}  // namespace lcs
