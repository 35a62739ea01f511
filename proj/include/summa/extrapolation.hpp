#pragma once

#include "summa/error.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace summa {

struct ExtrapolationResult {
  double value = 0;
  double error_estimate = 0;
  std::vector<double> last_row;  // final entry of each elimination column
};

/// Richardson elimination of h, h^2, ..., h^order from samples taken at
/// h_k = h_0 / ratio^k. The error estimate is the difference between the two
/// most refined entries of the highest column.
inline ExtrapolationResult richardson(const std::vector<double>& samples, int order, double ratio = 2) {
  if (order < 0) throw domain_error("richardson: order must be >= 0");
  if (samples.size() < static_cast<std::size_t>(order) + 2) {
    throw domain_error("richardson: need at least order + 2 samples");
  }
  std::vector<double> column = samples;
  ExtrapolationResult out;
  out.last_row.push_back(column.back());
  double factor = 1;
  for (int p = 1; p <= order; ++p) {
    factor *= ratio;
    std::vector<double> next;
    next.reserve(column.size() - 1);
    for (std::size_t i = 1; i < column.size(); ++i) {
      next.push_back((factor * column[i] - column[i - 1]) / (factor - 1));
    }
    column = std::move(next);
    out.last_row.push_back(column.back());
  }
  out.value = column.back();
  out.error_estimate = std::fabs(column[column.size() - 1] - column[column.size() - 2]);
  return out;
}

}  // namespace summa
