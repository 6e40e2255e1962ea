#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include <json.hpp>

#include "choicetree/rayleigh.hpp"
#include "choicetree/stats.hpp"
#include "choicetree/trees.hpp"

namespace ctree {

nlohmann::json to_json(const TestReport& r);
/// {n, k, algorithm, variant, edges, first_entry, sigma}
nlohmann::json to_json(const LabeledTree& t);
/// {beta, gamma, y, z}
nlohmann::json sticks_json(double beta, double gamma, const std::vector<double>& y,
                           const std::vector<double>& z);

void write_report_line(std::ostream& os, const TestReport& r);
/// name,statistic,threshold,n_samples,pass
void write_summary_csv(std::ostream& os, std::span<const TestReport> reports);
void write_histogram_csv(std::ostream& os, const Histogram& h);
void write_le_csv(std::ostream& os, std::span<const std::int32_t> z);
void write_trajectory_csv(std::ostream& os, std::span<const Vertex> path);
/// Path values on the grid 0, step, 2 step, ... up to t_max.
void write_rayleigh_csv(std::ostream& os, const RayleighPath& path, double step);
void write_jumps_csv(std::ostream& os, const RayleighPath& path);

}  // namespace ctree
