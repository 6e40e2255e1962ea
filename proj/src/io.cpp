#include "choicetree/io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ctree {

namespace {

// %.17g round-trips every double
std::ostream& real(std::ostream& os, double x) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  return os.write(buf, len);
}

}  // namespace

nlohmann::json to_json(const TestReport& r) {
  nlohmann::json details = nlohmann::json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  return {{"name", r.name},           {"statistic", r.statistic}, {"threshold", r.threshold},
          {"n_samples", r.n_samples}, {"pass", r.pass},           {"details", details}};
}

nlohmann::json to_json(const LabeledTree& t) {
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t v = 0; v < t.n; ++v) {
    if (static_cast<Vertex>(v) == t.root || t.parent[v] < 0) continue;
    edges.push_back({t.parent[v], static_cast<Vertex>(v)});
  }
  return {{"n", t.n},
          {"k", t.k},
          {"algorithm", to_string(t.algorithm)},
          {"variant", to_string(t.variant)},
          {"edges", edges},
          {"first_entry", t.first_entry},
          {"sigma", t.sigma}};
}

nlohmann::json sticks_json(double beta, double gamma, const std::vector<double>& y,
                           const std::vector<double>& z) {
  return {{"beta", beta}, {"gamma", gamma}, {"y", y}, {"z", z}};
}

void write_report_line(std::ostream& os, const TestReport& r) { os << to_json(r).dump() << '\n'; }

void write_summary_csv(std::ostream& os, std::span<const TestReport> reports) {
  os << "name,statistic,threshold,n_samples,pass\n";
  for (const auto& r : reports) {
    os << '"' << r.name << "\",";
    real(os, r.statistic) << ',';
    real(os, r.threshold) << ',' << r.n_samples << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
  os << "code,count\n";
  for (const auto& [code, count] : h) os << code << ',' << count << '\n';
}

void write_le_csv(std::ostream& os, std::span<const std::int32_t> z) {
  os << "m,Z\n";
  for (std::size_t m = 0; m < z.size(); ++m) os << m << ',' << z[m] << '\n';
}

void write_trajectory_csv(std::ostream& os, std::span<const Vertex> path) {
  os << "m,vertex\n";
  for (std::size_t m = 0; m < path.size(); ++m) os << m << ',' << path[m] << '\n';
}

void write_rayleigh_csv(std::ostream& os, const RayleighPath& path, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
  os << "t,value\n";
  const auto count = static_cast<std::int64_t>(std::floor(path.t_max / step + 1e-9));
  for (std::int64_t i = 0; i <= count; ++i) {
    const double t = static_cast<double>(i) * step;
    real(os, t) << ',';
    real(os, rayleigh_eval(path, t)) << '\n';
  }
}

void write_jumps_csv(std::ostream& os, const RayleighPath& path) {
  os << "s,x\n";
  for (const auto& j : path.jumps) {
    real(os, j.s) << ',';
    real(os, j.x) << '\n';
  }
}

}  // namespace ctree
