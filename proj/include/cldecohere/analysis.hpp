#pragma once

#include <cstddef>
#include <vector>

namespace cldecohere {

/// sum |v[i+1] - v[i]|.
double total_variation(const std::vector<double>& v);

/// Total variation in excess of a single-humped profile, TV - 2 max + first + last.
/// Zero for a unimodal sample; grows with every extra wiggle.
double oscillation_excess(const std::vector<double>& v);

/// Sorted gaps between neighbouring positions; NaNs are dropped.
std::vector<double> sorted_gaps(std::vector<double> positions);

/// Largest ratio gap_i / mean(gap_{i-1}, gap_{i+1}) over interior gaps.
/// About 1 for smoothly spread points, well above 1 when points bunch.
double gap_contrast(const std::vector<double>& positions);

/// Groups separated by gaps whose contrast to their neighbours exceeds kappa.
std::size_t count_contrast_clusters(const std::vector<double>& positions, double kappa);

}  // namespace cldecohere
