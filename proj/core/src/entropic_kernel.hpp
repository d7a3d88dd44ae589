#pragma once

#include <span>

namespace mmc::detail {

// out = softmax(base - inv_beta * penalty), entries floored at DBL_MIN.
// Returns |out - prev|_1. All inputs must be finite. Built with relaxed
// floating-point rules so the loops vectorize, including exp.
double entropic_update(std::span<const double> base, std::span<const double> penalty,
                       double inv_beta, std::span<const double> prev, std::span<double> out);

}  // namespace mmc::detail
