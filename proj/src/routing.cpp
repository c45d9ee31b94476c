#include "rampsim/routing.hpp"

#include <cmath>
#include <stdexcept>

namespace rampsim {

void RoutingMatrix::validate() const {
  const int m = size();
  if (m == 0) throw std::invalid_argument("routing matrix is empty");
  for (const auto& row : R) {
    if (static_cast<int>(row.size()) != m)
      throw std::invalid_argument("routing matrix must be square");
    double s = 0.0;
    for (double x : row) {
      if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("routing fractions must lie in [0, 1]");
      s += x;
    }
    if (std::abs(s - 1.0) > 1e-9)
      throw std::invalid_argument("routing rows must sum to 1");
  }
}

CumulativeRouting cumulative_routing(const RoutingMatrix& R) {
  R.validate();
  const int m = R.size();
  CumulativeRouting out;
  out.Rt.assign(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      // link j lies on the trip i -> d exactly when d is at least as far
      // around the ring (starting from i) as j is
      int need = (j - i + m) % m;
      double s = 0.0;
      for (int d = 0; d < m; ++d) {
        if ((d - i + m) % m >= need) s += R.R[i][d];
      }
      out.Rt[i][j] = s;
    }
  }
  return out;
}

std::vector<double> link_loads(const std::vector<double>& lambda,
                               const CumulativeRouting& Rt) {
  const int m = Rt.size();
  if (static_cast<int>(lambda.size()) != m)
    throw std::invalid_argument("lambda dimension mismatch");
  std::vector<double> rho(m, 0.0);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) rho[j] += lambda[i] * Rt.Rt[i][j];
  return rho;
}

}  // namespace rampsim
