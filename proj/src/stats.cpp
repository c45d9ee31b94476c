#include "rampsim/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rampsim {
namespace {

// Regularized incomplete beta by Lentz's continued fraction.
double betacf(double a, double b, double x) {
  const double eps = 1e-14, fpmin = 1e-300;
  double qab = a + b, qap = a + 1, qam = a - 1;
  double c = 1, d = 1 - qab * x / qap;
  if (std::abs(d) < fpmin) d = fpmin;
  d = 1 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

double ibeta(double a, double b, double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  double ln = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
              a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln);
  if (x < (a + 1) / (a + b + 2)) return front * betacf(a, b, x) / a;
  return 1 - front * betacf(b, a, 1 - x) / b;
}

double t_cdf(double t, int df) {
  double x = df / (df + t * t);
  double p = 0.5 * ibeta(0.5 * df, 0.5, x);
  return t > 0 ? 1 - p : p;
}

}  // namespace

double t_quantile(double prob, int df) {
  if (df < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
  if (prob <= 0 || prob >= 1) throw std::invalid_argument("probability in (0,1) required");
  if (prob == 0.5) return 0.0;
  double lo = -1000, hi = 1000;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (t_cdf(mid, df) < prob ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

BatchMeansResult batch_means(std::span<const double> series, long warmup,
                             long batch_len, double confidence) {
  BatchMeansResult r;
  r.warmup = warmup;
  r.batch_len = batch_len;
  if (batch_len <= 0 || warmup < 0) throw std::invalid_argument("bad batching");
  long usable = static_cast<long>(series.size()) - warmup;
  int nb = usable > 0 ? static_cast<int>(usable / batch_len) : 0;
  r.batches = nb;
  if (nb < 2) return r;  // not enough to estimate variability

  std::vector<double> means(nb, 0.0);
  for (int b = 0; b < nb; ++b) {
    double s = 0;
    for (long i = 0; i < batch_len; ++i) s += series[warmup + b * batch_len + i];
    means[b] = s / batch_len;
  }
  double m = 0;
  for (double x : means) m += x;
  m /= nb;
  double ss = 0;
  for (double x : means) ss += (x - m) * (x - m);
  double sd = std::sqrt(ss / (nb - 1));
  double t = t_quantile(0.5 + 0.5 * confidence, nb - 1);
  r.ok = true;
  r.mean = m;
  r.half_width = t * sd / std::sqrt(static_cast<double>(nb));
  r.rel_margin = std::abs(m) > 0 ? r.half_width / std::abs(m)
                                 : std::numeric_limits<double>::infinity();
  return r;
}

SlopeFit regression_slope(std::span<const double> y, double confidence) {
  SlopeFit f;
  long n = static_cast<long>(y.size());
  if (n < 3) return f;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (long i = 0; i < n; ++i) {
    sx += i;
    sy += y[i];
    sxx += static_cast<double>(i) * i;
    sxy += i * y[i];
  }
  double vx = sxx - sx * sx / n;
  f.slope = (sxy - sx * sy / n) / vx;
  f.intercept = (sy - f.slope * sx) / n;
  double sse = 0;
  for (long i = 0; i < n; ++i) {
    double e = y[i] - (f.intercept + f.slope * i);
    sse += e * e;
  }
  double se = std::sqrt(sse / (n - 2) / vx);
  double t = t_quantile(0.5 + 0.5 * confidence, static_cast<int>(n - 2));
  f.half_width = t * se;
  f.excludes_zero = std::abs(f.slope) > f.half_width;
  return f;
}

bool saturated_by_slope(std::span<const double> queue_series, double min_slope,
                        double confidence) {
  long n = static_cast<long>(queue_series.size());
  if (n < 8) return false;
  auto tail = queue_series.subspan(n / 2);
  SlopeFit f = regression_slope(tail, confidence);
  return f.excludes_zero && f.slope > min_slope;
}

}  // namespace rampsim
