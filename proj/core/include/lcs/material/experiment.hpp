#pragma once

#include <filesystem>
#include <vector>

#include "lcs/material/material_curve.hpp"

namespace lcs {

struct OptimalityRow {
  double eps = 0.0;
  double length_initial = 0.0;
  double final_delta = 0.0;
  double symmetric_difference = 0.0;  // against the advected unperturbed curve
  double area_initial = 0.0;
  double area_final = 0.0;
};

// Maps reference perturbation sizes (0.01 to 0.06 for a vortex of diameter
// 0.6) onto a boundary of the given diameter.
std::vector<double> scale_perturbations(const std::vector<double>& reference, double diameter,
                                        double reference_diameter = 0.6);

std::vector<OptimalityRow> optimality_experiment(const Polyline& boundary, const VelocitySource& src, double a, double b,
                                                 const std::vector<double>& eps_list,
                                                 const CurveAdvectOptions& opt = {});

void write_optimality_tsv(const std::vector<OptimalityRow>& rows, const std::filesystem::path& path);
void write_stretch_tsv(const StretchHistory& h, const std::filesystem::path& path);

}  // namespace lcs
