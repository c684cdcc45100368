#include "lcs/field/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lcs/error.hpp"

namespace lcs {

namespace fs = std::filesystem;

namespace {

constexpr std::array<char, 4> kMagic{'L', 'C', 'S', '2'};

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int b = 0; b < 4; ++b) buf_.push_back(static_cast<char>((v >> (8 * b)) & 0xffu));
  }
  void f64(double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) buf_.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
  }
  void bytes(const char* p, std::size_t n) { buf_.insert(buf_.end(), p, p + n); }
  void f64s(const std::vector<double>& v) {
    for (double x : v) f64(x);
  }
  void save(const fs::path& path) const {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    if (!out) throw IoError("write failed: " + path.string());
  }

 private:
  std::vector<char> buf_;
};

class Reader {
 public:
  explicit Reader(const fs::path& path) : path_(path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    buf_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  void need(std::size_t n) const {
    if (pos_ + n > buf_.size()) throw FormatError(path_.string() + ": truncated payload");
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(buf_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf_[pos_++])) << (8 * b);
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_++])) << (8 * b);
    return std::bit_cast<double>(v);
  }
  std::string str(std::size_t n) {
    need(n);
    std::string s(buf_.data() + pos_, n);
    pos_ += n;
    return s;
  }
  std::vector<double> f64s(std::size_t n) {
    need(8 * n);
    std::vector<double> v(n);
    for (auto& x : v) x = f64();
    return v;
  }
  void expect_end() const {
    if (pos_ != buf_.size()) throw FormatError(path_.string() + ": payload length does not match header");
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  std::vector<char> buf_;
  std::size_t pos_ = 0;
};

void write_header(Writer& w, FieldKind kind, const Grid2D& g, double time) {
  w.bytes(kMagic.data(), kMagic.size());
  w.u32(kFieldFormatVersion);
  w.u8(static_cast<std::uint8_t>(kind));
  w.u32(static_cast<std::uint32_t>(g.nx()));
  w.u32(static_cast<std::uint32_t>(g.ny()));
  w.f64(g.x0());
  w.f64(g.x1());
  w.f64(g.y0());
  w.f64(g.y1());
  w.f64(time);
}

struct Header {
  FieldKind kind;
  Grid2D grid;
  double time;
};

Header read_header(Reader& r) {
  const std::string magic = r.str(4);
  if (std::memcmp(magic.data(), kMagic.data(), 4) != 0) throw FormatError(r.path().string() + ": bad magic");
  const auto version = r.u32();
  if (version != kFieldFormatVersion)
    throw FormatError(r.path().string() + ": unsupported version " + std::to_string(version));
  const auto kind = r.u8();
  if (kind > 3) throw FormatError(r.path().string() + ": unknown kind " + std::to_string(kind));
  const auto nx = r.u32(), ny = r.u32();
  const double x0 = r.f64(), x1 = r.f64(), y0 = r.f64(), y1 = r.f64(), time = r.f64();
  try {
    return {static_cast<FieldKind>(kind), Grid2D(nx, ny, x0, x1, y0, y1), time};
  } catch (const ConfigError& e) {
    throw FormatError(r.path().string() + ": invalid grid (" + e.what() + ")");
  }
}

}  // namespace

const std::vector<double>& ChannelField::channel(const std::string& name) const {
  for (std::size_t c = 0; c < names.size(); ++c)
    if (names[c] == name) return channels[c];
  throw FormatError("missing channel '" + name + "'");
}

void write_field(const ScalarField2D& f, const fs::path& path) {
  Writer w;
  write_header(w, FieldKind::scalar, f.grid, f.time);
  w.f64s(f.values);
  w.save(path);
}

void write_field(const VectorField2D& f, const fs::path& path) {
  Writer w;
  write_header(w, FieldKind::vector, f.grid, f.time);
  w.f64s(f.u);
  w.f64s(f.v);
  w.save(path);
}

void write_channels(const ChannelField& f, const fs::path& path) {
  if (f.kind != FieldKind::flow_map && f.kind != FieldKind::cauchy_green)
    throw ConfigError("write_channels: kind must be flow_map or cauchy_green");
  if (f.names.size() != f.channels.size()) throw ConfigError("write_channels: channel/name mismatch");
  Writer w;
  write_header(w, f.kind, f.grid, f.time);
  w.u32(static_cast<std::uint32_t>(f.names.size()));
  for (const auto& n : f.names) {
    w.u32(static_cast<std::uint32_t>(n.size()));
    w.bytes(n.data(), n.size());
  }
  w.f64(f.window_a);
  w.f64(f.window_b);
  for (const auto& c : f.channels) {
    if (c.size() != f.grid.size()) throw ConfigError("write_channels: channel size does not match grid");
    w.f64s(c);
  }
  w.save(path);
}

std::variant<ScalarField2D, VectorField2D> read_field(const fs::path& path) {
  Reader r(path);
  const Header h = read_header(r);
  const std::size_t n = h.grid.size();
  if (h.kind == FieldKind::scalar) {
    auto values = r.f64s(n);
    r.expect_end();
    return ScalarField2D(h.grid, std::move(values), h.time);
  }
  if (h.kind == FieldKind::vector) {
    auto u = r.f64s(n);
    auto v = r.f64s(n);
    r.expect_end();
    return VectorField2D(h.grid, std::move(u), std::move(v), h.time);
  }
  throw FormatError(path.string() + ": multi-channel file; use read_channels");
}

ScalarField2D read_scalar_field(const fs::path& path) {
  auto f = read_field(path);
  if (auto* s = std::get_if<ScalarField2D>(&f)) return std::move(*s);
  throw FormatError(path.string() + ": expected a scalar field");
}

VectorField2D read_vector_field(const fs::path& path) {
  auto f = read_field(path);
  if (auto* v = std::get_if<VectorField2D>(&f)) return std::move(*v);
  throw FormatError(path.string() + ": expected a vector field");
}

ChannelField read_channels(const fs::path& path) {
  Reader r(path);
  const Header h = read_header(r);
  if (h.kind != FieldKind::flow_map && h.kind != FieldKind::cauchy_green)
    throw FormatError(path.string() + ": not a multi-channel field");
  ChannelField f;
  f.kind = h.kind;
  f.grid = h.grid;
  f.time = h.time;
  const auto count = r.u32();
  if (count > 64) throw FormatError(path.string() + ": implausible channel count");
  for (std::uint32_t c = 0; c < count; ++c) {
    const auto len = r.u32();
    f.names.push_back(r.str(len));
  }
  f.window_a = r.f64();
  f.window_b = r.f64();
  for (std::uint32_t c = 0; c < count; ++c) f.channels.push_back(r.f64s(h.grid.size()));
  r.expect_end();
  return f;
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

void write_manifest(const std::vector<ManifestEntry>& entries, const fs::path& manifest) {
  if (manifest.has_parent_path()) fs::create_directories(manifest.parent_path());
  std::ofstream out(manifest, std::ios::trunc);
  if (!out) throw IoError("cannot open " + manifest.string() + " for writing");
  for (const auto& e : entries) out << e.path.generic_string() << ' ' << format_double(e.time) << '\n';
  if (!out) throw IoError("write failed: " + manifest.string());
}

std::vector<ManifestEntry> read_manifest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open manifest " + manifest.string());
  std::vector<ManifestEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string p, t;
    if (!(ls >> p >> t)) throw FormatError(manifest.string() + ":" + std::to_string(lineno) + ": expected '<path> <time>'");
    double time = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), time);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
      throw FormatError(manifest.string() + ":" + std::to_string(lineno) + ": bad time '" + t + "'");
    out.push_back({p, time});
  }
  return out;
}

void write_series(const VelocitySeries& series, const fs::path& dir, const std::string& manifest_name,
                  const std::string& prefix) {
  fs::create_directories(dir);
  std::vector<ManifestEntry> entries;
  for (std::size_t k = 0; k < series.size(); ++k) {
    char name[64];
    std::snprintf(name, sizeof name, "%s_%05zu.lcs2", prefix.c_str(), k);
    write_field(series[k], dir / name);
    entries.push_back({name, series[k].time});
  }
  write_manifest(entries, dir / manifest_name);
}

VelocitySeries read_series(const fs::path& manifest) {
  const auto entries = read_manifest(manifest);
  if (entries.empty()) throw FormatError(manifest.string() + ": empty manifest");
  const fs::path base = manifest.parent_path();
  std::vector<VectorField2D> frames;
  frames.reserve(entries.size());
  for (const auto& e : entries) {
    auto f = read_vector_field(e.path.is_absolute() ? e.path : base / e.path);
    f.time = e.time;
    frames.push_back(std::move(f));
  }
  try {
    return VelocitySeries(std::move(frames));
  } catch (const ConfigError& err) {
    throw FormatError(manifest.string() + ": " + err.what());
  }
}

}  // namespace lcs
