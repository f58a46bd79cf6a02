#pragma once

#include <vector>

#include "dsfo/vec.hpp"

namespace dsfo::analysis {

/// sum_i ||x_i - mean||^2; the mean minimizes the sum of squared distances.
double consensus_error(const std::vector<Vec>& states);

/// sum_i ||x_i - ref||^2
double sq_dist_to(const std::vector<Vec>& states, const Vec& ref);

}  // namespace dsfo::analysis
