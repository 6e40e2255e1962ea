#include "choicetree/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace ctree {

namespace {

struct Cell {
  double a;
  double b;
};

// Pools cells whose smaller expected count is below 5 into one bucket; if the
// bucket is itself too small it is merged into the weakest surviving cell.
std::vector<Cell> pool_cells(const std::vector<Cell>& cells, double share_a) {
  const auto expected_min = [&](const Cell& c) {
    const double total = c.a + c.b;
    return std::min(total * share_a, total * (1.0 - share_a));
  };
  std::vector<Cell> kept;
  Cell other{0.0, 0.0};
  bool have_other = false;
  for (const auto& c : cells) {
    if (expected_min(c) < 5.0) {
      other.a += c.a;
      other.b += c.b;
      have_other = true;
    } else {
      kept.push_back(c);
    }
  }
  if (have_other && other.a + other.b > 0.0) {
    if (expected_min(other) >= 5.0 || kept.empty()) {
      kept.push_back(other);
    } else {
      auto weakest = std::min_element(kept.begin(), kept.end(), [&](const Cell& x, const Cell& y) {
        return expected_min(x) < expected_min(y);
      });
      weakest->a += other.a;
      weakest->b += other.b;
    }
  }
  return kept;
}

// pooling for goodness of fit: cells hold (observed, expected)
std::vector<Cell> pool_expected(const std::vector<Cell>& cells) {
  std::vector<Cell> kept;
  Cell other{0.0, 0.0};
  bool have_other = false;
  for (const auto& c : cells) {
    if (c.b < 5.0) {
      other.a += c.a;
      other.b += c.b;
      have_other = true;
    } else {
      kept.push_back(c);
    }
  }
  if (have_other && other.b > 0.0) {
    if (other.b >= 5.0 || kept.empty()) {
      kept.push_back(other);
    } else {
      auto weakest = std::min_element(kept.begin(), kept.end(),
                                      [](const Cell& x, const Cell& y) { return x.b < y.b; });
      weakest->a += other.a;
      weakest->b += other.b;
    }
  }
  return kept;
}

void finish_chi_square(TestReport& r, double stat, double dof, double level) {
  r.statistic = stat;
  r.threshold = boost::math::quantile(
      boost::math::complement(boost::math::chi_squared_distribution<double>(dof), level));
  const double p = chi_square_tail(stat, dof);
  r.pass = p >= level;
  r.add("dof", dof);
  r.add("p_value", p);
  r.add("level", level);
}

}  // namespace

double ks_critical_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;  // the alternating series converges slowly here; the tail is 1 to 1e-12
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

TestReport ks_one_sample(const std::vector<double>& samples,
                         const std::function<double(double)>& cdf, double threshold) {
  TestReport r;
  r.name = "ks_one_sample";
  r.statistic = ks_statistic(samples, cdf);
  r.n_samples = static_cast<std::int64_t>(samples.size());
  const double n = static_cast<double>(samples.size());
  r.threshold = threshold > 0.0 ? threshold : ks_critical_constant(0.01) / std::sqrt(n);
  r.pass = r.statistic < r.threshold;
  r.add("p_value", kolmogorov_tail(std::sqrt(n) * r.statistic));
  return r;
}

TestReport ks_two_sample(const std::vector<double>& a, const std::vector<double>& b,
                         double threshold) {
  TestReport r;
  r.name = "ks_two_sample";
  r.statistic = ks_statistic(a, b);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  r.n_samples = static_cast<std::int64_t>(a.size() + b.size());
  const double scale = std::sqrt((na + nb) / (na * nb));
  r.threshold = threshold > 0.0 ? threshold : ks_critical_constant(0.01) * scale;
  r.pass = r.statistic < r.threshold;
  r.add("p_value", kolmogorov_tail(r.statistic / scale));
  return r;
}

double chi_square_tail(double statistic, double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("chi-square needs dof > 0");
  if (statistic <= 0.0) return 1.0;
  return boost::math::cdf(
      boost::math::complement(boost::math::chi_squared_distribution<double>(dof), statistic));
}

TestReport chi_square_two_sample(const Histogram& a, const Histogram& b, double level) {
  std::map<std::string, Cell> merged;
  double na = 0.0, nb = 0.0;
  for (const auto& [code, c] : a) {
    if (c < 0) throw std::invalid_argument("chi-square: negative count");
    merged[code].a += static_cast<double>(c);
    na += static_cast<double>(c);
  }
  for (const auto& [code, c] : b) {
    if (c < 0) throw std::invalid_argument("chi-square: negative count");
    merged[code].b += static_cast<double>(c);
    nb += static_cast<double>(c);
  }
  if (na <= 0.0 || nb <= 0.0) throw std::invalid_argument("chi-square: empty histogram");
  std::vector<Cell> cells;
  for (const auto& [code, c] : merged) cells.push_back(c);
  const double share_a = na / (na + nb);
  cells = pool_cells(cells, share_a);
  if (cells.size() < 2) throw std::invalid_argument("chi-square: fewer than two usable categories");

  double stat = 0.0;
  for (const auto& c : cells) {
    const double total = c.a + c.b;
    const double ea = total * share_a, eb = total * (1.0 - share_a);
    stat += (c.a - ea) * (c.a - ea) / ea + (c.b - eb) * (c.b - eb) / eb;
  }
  TestReport r;
  r.name = "chi_square_two_sample";
  r.n_samples = static_cast<std::int64_t>(na + nb);
  finish_chi_square(r, stat, static_cast<double>(cells.size() - 1), level);
  r.add("categories", static_cast<double>(merged.size()));
  r.add("pooled_categories", static_cast<double>(cells.size()));
  return r;
}

TestReport chi_square_goodness_of_fit(const Histogram& counts,
                                      const std::map<std::string, double>& probs, double level) {
  double total = 0.0;
  for (const auto& [code, c] : counts) {
    if (!probs.contains(code)) throw std::invalid_argument("chi-square: category " + code + " has no probability");
    total += static_cast<double>(c);
  }
  if (total <= 0.0) throw std::invalid_argument("chi-square: empty histogram");
  double psum = 0.0;
  std::vector<Cell> cells;
  for (const auto& [code, p] : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("chi-square: negative probability");
    psum += p;
    const auto it = counts.find(code);
    cells.push_back({it == counts.end() ? 0.0 : static_cast<double>(it->second), p * total});
  }
  if (std::abs(psum - 1.0) > 1e-9) throw std::invalid_argument("chi-square: probabilities must sum to 1");
  cells = pool_expected(cells);
  if (cells.size() < 2) throw std::invalid_argument("chi-square: fewer than two usable categories");
  double stat = 0.0;
  for (const auto& c : cells) stat += (c.a - c.b) * (c.a - c.b) / c.b;
  TestReport r;
  r.name = "chi_square_goodness_of_fit";
  r.n_samples = static_cast<std::int64_t>(total);
  finish_chi_square(r, stat, static_cast<double>(cells.size() - 1), level);
  return r;
}

double loglog_slope(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 3) throw std::invalid_argument("loglog_slope: need at least 3 points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [n, v] : pairs) {
    if (!(n > 0.0) || !(v > 0.0)) throw std::invalid_argument("loglog_slope: entries must be positive");
    sx += std::log(n);
    sy += std::log(v);
  }
  const double m = static_cast<double>(pairs.size());
  const double mx = sx / m, my = sy / m;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [n, v] : pairs) {
    const double dx = std::log(n) - mx;
    sxy += dx * (std::log(v) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw std::invalid_argument("loglog_slope: all n equal");
  return sxy / sxx;
}

TestReport marginal_vector_compare(const std::vector<std::vector<double>>& a,
                                   const std::vector<std::vector<double>>& b, double tol) {
  if (a.empty() || b.empty()) throw std::invalid_argument("marginal compare: empty input");
  const std::size_t dim = a.front().size();
  for (const auto& v : a) {
    if (v.size() != dim) throw std::invalid_argument("marginal compare: dimension mismatch");
  }
  for (const auto& v : b) {
    if (v.size() != dim) throw std::invalid_argument("marginal compare: dimension mismatch");
  }
  TestReport r;
  r.name = "marginal_vector_compare";
  r.threshold = tol;
  r.n_samples = static_cast<std::int64_t>(a.size() + b.size());
  std::vector<double> xa(a.size()), xb(b.size());
  for (std::size_t d = 0; d < dim; ++d) {
    for (std::size_t i = 0; i < a.size(); ++i) xa[i] = a[i][d];
    for (std::size_t i = 0; i < b.size(); ++i) xb[i] = b[i][d];
    const double D = ks_statistic(xa, xb);
    r.add("D" + std::to_string(d), D);
    r.statistic = std::max(r.statistic, D);
  }
  r.pass = r.statistic < tol;
  return r;
}

}  // namespace ctree
