#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nlsmooth/analysis.hpp"
#include "nlsmooth/smoothing.hpp"
#include "nlsmooth/solver.hpp"

namespace nlsmooth {

// 17 significant digits, round-trip exact.
std::string csv_number(double v);

std::string level_label(int level);

// x,u[,u_exact,error]
void write_solution_csv(std::ostream& os, const DiscreteSolution& u,
                        const std::optional<PiecewiseSmoothFunction>& exact = std::nullopt);

// example,level,backend,n,error,order
void write_study_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports);

// Panels of two levels side by side: N | error | order | error | order.
void write_study_markdown(std::ostream& os, const std::vector<ConvergenceReport>& reports,
                          const std::string& title);

// Log-log error against N, one polyline per level.
void write_study_svg(std::ostream& os, const std::vector<ConvergenceReport>& reports, const std::string& title);

// Rows j (location) by columns k (order).
void write_coefficient_table(std::ostream& os, const SmoothingRecord& rec);

}  // namespace nlsmooth
