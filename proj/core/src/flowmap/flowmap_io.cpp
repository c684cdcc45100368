#include "lcs/flowmap/flowmap_io.hpp"

#include "lcs/error.hpp"
#include "lcs/field/io.hpp"

namespace lcs {

void write_flow_map(const FlowMapGrid& fm, const std::filesystem::path& path) {
  ChannelField f;
  f.kind = FieldKind::flow_map;
  f.grid = fm.grid;
  f.time = fm.a;
  f.window_a = fm.a;
  f.window_b = fm.b;
  const std::size_t n = fm.grid.size();
  f.names = {"x", "y"};
  f.channels.assign(2, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    f.channels[0][k] = fm.position[k].x;
    f.channels[1][k] = fm.position[k].y;
  }
  if (!fm.jacobian.empty()) {
    f.names.insert(f.names.end(), {"j11", "j12", "j21", "j22", "delta"});
    for (int c = 0; c < 5; ++c) f.channels.emplace_back(n);
    for (std::size_t k = 0; k < n; ++k) {
      const Mat2& m = fm.jacobian[k];
      f.channels[2][k] = m.a;
      f.channels[3][k] = m.b;
      f.channels[4][k] = m.c;
      f.channels[5][k] = m.d;
      f.channels[6][k] = fm.delta;
    }
  }
  write_channels(f, path);
}

FlowMapGrid read_flow_map(const std::filesystem::path& path) {
  const ChannelField f = read_channels(path);
  if (f.kind != FieldKind::flow_map) throw FormatError(path.string() + ": not a flow map file");
  FlowMapGrid fm;
  fm.grid = f.grid;
  fm.a = f.window_a;
  fm.b = f.window_b;
  const auto& x = f.channel("x");
  const auto& y = f.channel("y");
  const std::size_t n = f.grid.size();
  fm.position.resize(n);
  for (std::size_t k = 0; k < n; ++k) fm.position[k] = {x[k], y[k]};
  if (f.names.size() > 2) {
    const auto& j11 = f.channel("j11");
    const auto& j12 = f.channel("j12");
    const auto& j21 = f.channel("j21");
    const auto& j22 = f.channel("j22");
    fm.delta = f.channel("delta").empty() ? 0.0 : f.channel("delta")[0];
    fm.jacobian.resize(n);
    for (std::size_t k = 0; k < n; ++k) fm.jacobian[k] = {j11[k], j12[k], j21[k], j22[k]};
  }
  return fm;
}

void write_cauchy_green(const CauchyGreenField& cg, const std::filesystem::path& path) {
  ChannelField f;
  f.kind = FieldKind::cauchy_green;
  f.grid = cg.grid;
  f.time = cg.a;
  f.window_a = cg.a;
  f.window_b = cg.b;
  f.names = {"lambda1", "lambda2", "xi1x", "xi1y", "xi2x", "xi2y", "c11", "c12", "c22", "degenerate"};
  const std::size_t n = cg.grid.size();
  f.channels.assign(f.names.size(), std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    f.channels[0][k] = cg.lambda1[k];
    f.channels[1][k] = cg.lambda2[k];
    f.channels[2][k] = cg.xi1[k].x;
    f.channels[3][k] = cg.xi1[k].y;
    f.channels[4][k] = cg.xi2[k].x;
    f.channels[5][k] = cg.xi2[k].y;
    f.channels[6][k] = cg.tensor[k].c11;
    f.channels[7][k] = cg.tensor[k].c12;
    f.channels[8][k] = cg.tensor[k].c22;
    f.channels[9][k] = cg.degenerate[k];
  }
  write_channels(f, path);
}

CauchyGreenField read_cauchy_green(const std::filesystem::path& path) {
  const ChannelField f = read_channels(path);
  if (f.kind != FieldKind::cauchy_green) throw FormatError(path.string() + ": not a Cauchy-Green file");
  CauchyGreenField cg;
  cg.grid = f.grid;
  cg.a = f.window_a;
  cg.b = f.window_b;
  const std::size_t n = f.grid.size();
  const auto& l1 = f.channel("lambda1");
  const auto& l2 = f.channel("lambda2");
  const auto& x1x = f.channel("xi1x");
  const auto& x1y = f.channel("xi1y");
  const auto& x2x = f.channel("xi2x");
  const auto& x2y = f.channel("xi2y");
  const auto& c11 = f.channel("c11");
  const auto& c12 = f.channel("c12");
  const auto& c22 = f.channel("c22");
  const auto& deg = f.channel("degenerate");
  cg.lambda1 = l1;
  cg.lambda2 = l2;
  cg.xi1.resize(n);
  cg.xi2.resize(n);
  cg.tensor.resize(n);
  cg.degenerate.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    cg.xi1[k] = {x1x[k], x1y[k]};
    cg.xi2[k] = {x2x[k], x2y[k]};
    cg.tensor[k] = {c11[k], c12[k], c22[k]};
    cg.degenerate[k] = deg[k] != 0.0 ? 1 : 0;
  }
  return cg;
}

}  // namespace lcs
