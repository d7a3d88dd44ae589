#include "entropic_kernel.hpp"

#include <cfloat>
#include <cmath>

namespace mmc::detail {

double entropic_update(std::span<const double> base, std::span<const double> penalty,
                       double inv_beta, std::span<const double> prev, std::span<double> out) {
  const std::size_t m = out.size();
  if (m == 0) return 0.0;
  const double* b = base.data();
  const double* q = penalty.data();
  const double* x = prev.data();
  double* o = out.data();

  double top = b[0] - q[0] * inv_beta;
  for (std::size_t e = 0; e < m; ++e) {
    o[e] = b[e] - q[e] * inv_beta;
    top = o[e] > top ? o[e] : top;
  }
  double sum = 0.0;
  for (std::size_t e = 0; e < m; ++e) {
    o[e] = std::exp(o[e] - top);
    sum += o[e];
  }
  const double inv_sum = 1.0 / sum;
  double move = 0.0;
  for (std::size_t e = 0; e < m; ++e) {
    const double v = o[e] * inv_sum;
    o[e] = v > DBL_MIN ? v : DBL_MIN;
    move += std::fabs(o[e] - x[e]);
  }
  return move;
}

}  // namespace mmc::detail
