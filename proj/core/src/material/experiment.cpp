#include "lcs/material/experiment.hpp"

#include <fstream>

#include "lcs/error.hpp"
#include "lcs/field/io.hpp"

namespace lcs {

std::vector<double> scale_perturbations(const std::vector<double>& reference, double diameter,
                                        double reference_diameter) {
  if (!(reference_diameter > 0.0)) throw ConfigError("scale_perturbations: reference diameter must be > 0");
  std::vector<double> out;
  for (double e : reference) out.push_back(e * diameter / reference_diameter);
  return out;
}

std::vector<OptimalityRow> optimality_experiment(const Polyline& boundary, const VelocitySource& src, double a, double b,
                                                 const std::vector<double>& eps_list, const CurveAdvectOptions& opt) {
  const MaterialCurve base = make_material_curve(boundary, a);
  const MaterialCurve base_final = advect_curve(base, src, a, b, 0.0, opt).back();
  const Polyline reference = base_final.closed();
  std::vector<OptimalityRow> rows;
  for (double eps : eps_list) {
    const MaterialCurve mc = eps == 0.0 ? base : make_material_curve(normal_perturbation(boundary, eps), a, base.threshold);
    const auto hist = advect_curve(mc, src, a, b, 0.0, opt);
    const StretchHistory sh = relative_stretching(hist);
    OptimalityRow row;
    row.eps = eps;
    row.length_initial = sh.lengths.front();
    row.final_delta = sh.final_delta();
    row.area_initial = hist.front().area();
    row.area_final = hist.back().area();
    row.symmetric_difference = symmetric_difference_area(hist.back().closed(), reference);
    rows.push_back(row);
  }
  return rows;
}

void write_optimality_tsv(const std::vector<OptimalityRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "eps\tlength_a\tdelta_l_b\tsymmetric_difference\tarea_a\tarea_b\n";
  for (const auto& r : rows)
    out << format_double(r.eps) << '\t' << format_double(r.length_initial) << '\t' << format_double(r.final_delta) << '\t'
        << format_double(r.symmetric_difference) << '\t' << format_double(r.area_initial) << '\t'
        << format_double(r.area_final) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

void write_stretch_tsv(const StretchHistory& h, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "time\tlength\tdelta_l\n";
  for (std::size_t k = 0; k < h.times.size(); ++k)
    out << format_double(h.times[k]) << '\t' << format_double(h.lengths[k]) << '\t' << format_double(h.delta[k]) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace lcs
