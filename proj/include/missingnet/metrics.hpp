#pragma once

#include <span>

namespace missingnet {

/// |pred - truth| <= rel_tol * |truth|, or <= abs_floor when |truth| < abs_floor.
bool within_tolerance(double prediction, double truth, double rel_tol, double abs_floor);

/// Percentage of predictions with |pred - truth| <= rel_tol * |truth|; when
/// |truth| < abs_floor the bound is abs_floor instead. Lengths must match and be non-zero.
double tolerance_accuracy(std::span<const double> predictions, std::span<const double> truths,
                          double rel_tol = 0.2, double abs_floor = 1e-6);

}  // namespace missingnet
