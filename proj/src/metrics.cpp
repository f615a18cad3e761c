#include "missingnet/metrics.hpp"

#include <cmath>

#include "missingnet/error.hpp"

namespace missingnet {

bool within_tolerance(double prediction, double truth, double rel_tol, double abs_floor) {
  const double scale = std::abs(truth);
  const double bound = scale < abs_floor ? abs_floor : rel_tol * scale;
  return std::abs(prediction - truth) <= bound;
}

double tolerance_accuracy(std::span<const double> predictions, std::span<const double> truths,
                          double rel_tol, double abs_floor) {
  require(predictions.size() == truths.size(), "predictions and truths differ in length");
  require(!truths.empty(), "tolerance accuracy of no predictions");
  require(rel_tol >= 0.0 && abs_floor >= 0.0, "tolerances must be non-negative");
  std::size_t within = 0;
  for (std::size_t k = 0; k < truths.size(); ++k)
    if (within_tolerance(predictions[k], truths[k], rel_tol, abs_floor)) ++within;
  return 100.0 * static_cast<double>(within) / static_cast<double>(truths.size());
}

}  // namespace missingnet
