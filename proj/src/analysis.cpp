#include "cldecohere/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace cldecohere {

double total_variation(const std::vector<double>& v) {
  double tv = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) tv += std::abs(v[i] - v[i - 1]);
  return tv;
}

double oscillation_excess(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double peak = *std::max_element(v.begin(), v.end());
  return total_variation(v) - (2.0 * peak - v.front() - v.back());
}

std::vector<double> sorted_gaps(std::vector<double> positions) {
  positions.erase(std::remove_if(positions.begin(), positions.end(),
                                 [](double x) { return !std::isfinite(x); }),
                  positions.end());
  std::sort(positions.begin(), positions.end());
  std::vector<double> gaps;
  for (std::size_t i = 1; i < positions.size(); ++i) gaps.push_back(positions[i] - positions[i - 1]);
  return gaps;
}

namespace {

double contrast_at(const std::vector<double>& gaps, std::size_t i) {
  const double neighbours = 0.5 * (gaps[i - 1] + gaps[i + 1]);
  if (neighbours <= 0.0) return gaps[i] > 0.0 ? INFINITY : 1.0;
  return gaps[i] / neighbours;
}

}  // namespace

double gap_contrast(const std::vector<double>& positions) {
  const std::vector<double> gaps = sorted_gaps(positions);
  double best = 0.0;
  for (std::size_t i = 1; i + 1 < gaps.size(); ++i) best = std::max(best, contrast_at(gaps, i));
  return best;
}

std::size_t count_contrast_clusters(const std::vector<double>& positions, double kappa) {
  const std::vector<double> gaps = sorted_gaps(positions);
  if (gaps.empty()) return positions.empty() ? 0 : 1;
  std::size_t clusters = 1;
  for (std::size_t i = 1; i + 1 < gaps.size(); ++i)
    if (contrast_at(gaps, i) > kappa) ++clusters;
  return clusters;
}

}  // namespace cldecohere
