#include "lcs/elliptic/closed_orbits.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "lcs/error.hpp"

namespace lcs {

ReturnShot return_map(const EtaField& eta, Vec2 center, Vec2 direction, double s, double length,
                      const PoincareOptions& opt, bool keep_path) {
  ReturnShot shot;
  const Vec2 d = normalized(direction);
  const Vec2 n = perp(d);
  const Vec2 x0 = center + d * s;
  LambdaLineOptions lo = opt.line;
  lo.detect_closure = false;
  lo.max_arclength = opt.max_arclength_factor * 2.0 * std::numbers::pi * length;
  lo.stray_radius = opt.stray_factor * length;
  lo.stray_center = center;
  lo.initial_direction = n;

  Vec2 crossing{};
  auto observer = [&](Vec2 from, Vec2 to, Vec2 tangent) {
    const double pf = dot(n, from - center), pt = dot(n, to - center);
    if (!(pf < 0.0 && pt >= 0.0)) return false;
    const double tau = pf / (pf - pt);
    const Vec2 xc = from + (to - from) * tau;
    const double sigma = dot(d, xc - center);
    if (sigma <= 0.0) return false;
    crossing = xc;
    shot.p = sigma;
    shot.final_tangent = tangent;
    return true;
  };

  LambdaLine line;
  try {
    line = integrate_lambda_line(eta, x0, lo, observer);
  } catch (const NumericError&) {
    return shot;
  }
  shot.initial_tangent = line.initial_tangent;
  if (dot(shot.initial_tangent, n) <= 0.0) {
    shot.p.reset();
    return shot;
  }
  if (shot.p && keep_path) {
    shot.path = std::move(line.points);
    shot.path.back() = crossing;
  }
  return shot;
}

namespace {

// Shifts the path so its end meets its start, spreading the gap along the
// arclength; returns the open ring.
Polyline spread_closure_gap(Polyline path) {
  if (path.size() < 2) return path;
  const Vec2 gap = path.front() - path.back();
  const auto s = arclength(path);
  if (s.back() > 0.0)
    for (std::size_t k = 1; k < path.size(); ++k) path[k] += gap * (s[k] / s.back());
  path.back() = path.front();
  return open_ring(std::move(path));
}

}  // namespace

PoincareResult poincare_closed_orbits(const EtaField& eta, Vec2 center, Vec2 direction,
                                      const SingularitySet& singularities, const PoincareOptions& opt) {
  const Grid2D& g = eta.cg().grid();
  if (opt.samples < 2) throw ConfigError("poincare_closed_orbits: need at least 2 samples");
  const double L = opt.section_fraction * g.lx();
  const double ftol = opt.fixed_point_tol_fraction * g.lx();
  const double ntol = std::max(ftol, opt.neutral_tol_fraction * g.lx());
  const double closure_tol = opt.line.closure_tol > 0.0 ? opt.line.closure_tol : default_closure_tol(g);
  const double cos_max = std::cos(opt.line.closure_angle_deg * std::numbers::pi / 180.0);

  PoincareResult res;
  auto residual = [&](double s) -> std::optional<double> {
    const auto shot = return_map(eta, center, direction, s, L, opt);
    if (!shot.p) return std::nullopt;
    return *shot.p - s;
  };

  res.samples.resize(opt.samples);
  std::vector<std::optional<double>> D(opt.samples);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const double s = L * static_cast<double>(i + 1) / static_cast<double>(opt.samples);
    D[i] = residual(s);
    res.samples[i] = {s, D[i] ? std::optional<double>(*D[i] + s) : std::nullopt};
  }

  struct Candidate {
    double s, r;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    if (D[i] && std::abs(*D[i]) <= ntol) cands.push_back({res.samples[i].s, std::abs(*D[i])});
    if (i + 1 == opt.samples || !D[i] || !D[i + 1]) continue;
    double lo = res.samples[i].s, hi = res.samples[i + 1].s;
    double dlo = *D[i], dhi = *D[i + 1];
    if (std::abs(dlo) <= ftol || std::abs(dhi) <= ftol || (dlo < 0.0) == (dhi < 0.0)) continue;
    bool ok = true;
    double best = 0.0;
    while (hi - lo > ftol) {
      const double mid = 0.5 * (lo + hi);
      const auto dm = residual(mid);
      if (!dm) {
        ok = false;
        break;
      }
      best = std::abs(*dm);
      if ((*dm < 0.0) == (dlo < 0.0)) {
        lo = mid;
        dlo = *dm;
      } else {
        hi = mid;
        dhi = *dm;
      }
    }
    if (ok) cands.push_back({0.5 * (lo + hi), best});
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.s < b.s; });
  for (const auto& c : cands) {
    if (!res.fixed_points.empty() && c.s - res.fixed_points.back() <= ftol) continue;
    res.fixed_points.push_back(c.s);
  }

  for (double s : res.fixed_points) {
    const auto shot = return_map(eta, center, direction, s, L, opt, true);
    if (!shot.p) {
      ++res.rejected_closure;
      continue;
    }
    const double gap = std::abs(*shot.p - s);
    if (gap > closure_tol || dot(shot.final_tangent, shot.initial_tangent) < cos_max) {
      ++res.rejected_closure;
      continue;
    }
    Polyline ring = spread_closure_gap(shot.path);
    if (ring.size() < 3 || !ring_is_simple(ring)) {
      ++res.rejected_simple;
      continue;
    }
    if (signed_area(ring) < 0.0) std::reverse(ring.begin(), ring.end());
    ClosedMaterialCurve curve;
    curve.lambda = eta.lambda();
    curve.branch = eta.branch();
    curve.a = eta.cg().a();
    curve.b = eta.cg().b();
    auto enclosed = enclosed_singularities(ring, singularities, eta.cg());
    curve.enclosed_singularities = std::move(enclosed.points);
    curve.singularity_count = enclosed.count;
    if (curve.singularity_count < static_cast<int>(opt.min_singularities)) {
      ++res.rejected_singularities;
      continue;
    }
    curve.q_value = average_tangential_strain(ring, eta.cg());
    curve.area = signed_area(ring);
    curve.closure_gap = gap;
    curve.seed = center;
    curve.section_s = s;
    curve.vertices = close_ring(std::move(ring));
    res.curves.push_back(std::move(curve));
  }
  return res;
}

std::vector<const ClosedMaterialCurve*> VortexBoundarySet::boundaries() const {
  std::vector<const ClosedMaterialCurve*> out;
  for (const auto& n : nests) out.push_back(&curves[n.outermost()]);
  return out;
}

std::vector<double> lambda_sweep(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw ConfigError("lambda_sweep: need step > 0 and hi >= lo");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t k = 0; k <= n; ++k) out.push_back(std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12);
  return out;
}

std::vector<Vec2> auto_seeds(const CauchyGreenField& cg, const SingularitySet& sing, const DetectOptions& opt) {
  const Grid2D& g = cg.grid;
  const auto nx = static_cast<std::ptrdiff_t>(g.nx()), ny = static_cast<std::ptrdiff_t>(g.ny());
  struct Cand {
    Vec2 p;
    double key;
  };
  std::vector<Cand> minima;
  for (std::ptrdiff_t i = 0; i < nx; ++i)
    for (std::ptrdiff_t j = 0; j < ny; ++j) {
      const double v = cg.lambda2[g.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j))];
      bool is_min = true;
      for (std::ptrdiff_t di = -2; di <= 2 && is_min; ++di)
        for (std::ptrdiff_t dj = -2; dj <= 2; ++dj) {
          if (di == 0 && dj == 0) continue;
          const auto ii = static_cast<std::size_t>((i + di + nx) % nx), jj = static_cast<std::size_t>((j + dj + ny) % ny);
          const double w = cg.lambda2[g.index(ii, jj)];
          // ties go to the lexicographically first node
          const bool earlier = (i + di < i) || (i + di == i && j + dj < j);
          if (w < v || (w == v && earlier)) {
            is_min = false;
            break;
          }
        }
      if (is_min) minima.push_back({g.node(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), v});
    }
  std::stable_sort(minima.begin(), minima.end(), [](const Cand& a, const Cand& b) { return a.key < b.key; });

  std::vector<Cand> pairs;
  const double pair_max = opt.pair_distance_fraction * g.lx();
  for (std::size_t a = 0; a < sing.points.size(); ++a)
    for (std::size_t b = a + 1; b < sing.points.size(); ++b) {
      const Vec2 d = g.periodic_delta(sing.points[a].position, sing.points[b].position);
      const double dist = norm(d);
      if (dist <= pair_max) pairs.push_back({g.wrap(sing.points[a].position + d * 0.5), dist});
    }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Cand& a, const Cand& b) { return a.key < b.key; });

  std::vector<Vec2> seeds;
  const double sep = opt.min_seed_separation_cells * std::min(g.dx(), g.dy());
  auto take = [&](const std::vector<Cand>& list) {
    for (const auto& c : list) {
      if (seeds.size() >= opt.max_seeds) return;
      bool far = true;
      for (const auto& s : seeds)
        if (norm(g.periodic_delta(s, c.p)) < sep) far = false;
      if (far) seeds.push_back(c.p);
    }
  };
  // interleave so neither source starves the other
  std::vector<Cand> merged;
  for (std::size_t k = 0; k < std::max(minima.size(), pairs.size()); ++k) {
    if (k < minima.size()) merged.push_back(minima[k]);
    if (k < pairs.size()) merged.push_back(pairs[k]);
  }
  take(merged);
  return seeds;
}

namespace {

// Fraction of `inner` vertices inside `outer`, after shifting inner to the
// periodic image nearest outer.
double containment(const Polyline& outer, Polyline& inner, const Grid2D& g) {
  const Vec2 co = ring_centroid(outer), ci = ring_centroid(inner);
  const Vec2 shift = (co + g.periodic_delta(co, ci)) - ci;
  for (auto& p : inner) p += shift;
  const std::size_t stride = std::max<std::size_t>(1, inner.size() / 64);
  std::size_t in = 0, total = 0;
  for (std::size_t k = 0; k < inner.size(); k += stride, ++total)
    if (point_in_ring(outer, inner[k])) ++in;
  return total ? static_cast<double>(in) / static_cast<double>(total) : 0.0;
}

}  // namespace

void build_nests(VortexBoundarySet& set) {
  std::vector<std::size_t> order(set.curves.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(set.curves[a].area) > std::abs(set.curves[b].area); });
  std::vector<std::vector<std::size_t>> groups;
  std::size_t dropped = 0;
  for (std::size_t idx : order) {
    auto& c = set.curves[idx];
    bool placed = false, overlap = false;
    for (auto& grp : groups) {
      const auto& outer = set.curves[grp.front()];
      Polyline moved = c.vertices;
      const double frac = containment(outer.vertices, moved, set.domain);
      if (frac == 1.0) {
        c.vertices = std::move(moved);
        grp.push_back(idx);
        placed = true;
        break;
      }
      if (frac > 0.0) {
        overlap = true;
        break;
      }
      Polyline outer_copy = outer.vertices;
      Polyline ring = c.vertices;
      if (containment(ring, outer_copy, set.domain) > 0.0) {
        overlap = true;
        break;
      }
    }
    if (placed) continue;
    if (overlap) {
      ++dropped;
      continue;
    }
    groups.push_back({idx});
  }
  std::vector<ClosedMaterialCurve> curves;
  std::vector<VortexNest> nests;
  for (std::size_t n = 0; n < groups.size(); ++n) {
    VortexNest nest;
    for (std::size_t d = 0; d < groups[n].size(); ++d) {
      ClosedMaterialCurve c = std::move(set.curves[groups[n][d]]);
      c.nest = static_cast<int>(n);
      c.depth = static_cast<int>(d);
      c.primary = false;
      nest.members.push_back(curves.size());
      if (!nest.primary && std::abs(c.lambda - 1.0) < 1e-9) {
        c.primary = true;
        nest.primary = curves.size();
      }
      curves.push_back(std::move(c));
    }
    nests.push_back(std::move(nest));
  }
  set.curves = std::move(curves);
  set.nests = std::move(nests);
  set.dropped_overlaps += dropped;
}

VortexBoundarySet detect_vortices(const CauchyGreenField& cg, const DetectOptions& opt) {
  VortexBoundarySet set;
  set.domain = cg.grid;
  set.singularities = find_singularities(cg);
  if (set.singularities.degenerate_field) return set;
  set.seeds = opt.seeds.empty() ? auto_seeds(cg, set.singularities, opt) : opt.seeds;
  const auto interp = std::make_shared<const CGInterpolator>(cg, opt.interpolation);

  struct Task {
    std::size_t seed;
    double lambda;
    Branch branch;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < set.seeds.size(); ++s)
    for (double lam : opt.lambdas)
      for (Branch b : opt.branches) tasks.push_back({s, lam, b});

  std::vector<std::vector<ClosedMaterialCurve>> results(tasks.size());
  std::exception_ptr failure;
  const auto ntasks = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t t = 0; t < ntasks; ++t) {
    try {
      const Task& task = tasks[static_cast<std::size_t>(t)];
      const EtaField eta(interp, task.lambda, task.branch);
      auto r = poincare_closed_orbits(eta, set.seeds[task.seed], {1.0, 0.0}, set.singularities, opt.poincare);
      for (auto& c : r.curves) c.seed_index = task.seed;
      if (opt.outermost_only && r.curves.size() > 1) {
        auto best = std::max_element(r.curves.begin(), r.curves.end(),
                                     [](const auto& a, const auto& b) { return a.area < b.area; });
        ClosedMaterialCurve keep = std::move(*best);
        r.curves.clear();
        r.curves.push_back(std::move(keep));
      }
      results[static_cast<std::size_t>(t)] = std::move(r.curves);
    } catch (...) {
#pragma omp critical(lcs_detect_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (auto& r : results)
    for (auto& c : r) set.curves.push_back(std::move(c));
  build_nests(set);
  return set;
}

}  // namespace lcs
