#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace logbbm {

// Mergeable mean/variance accumulator (Welford; Chan et al. for merge).
// Merging in a fixed order gives bit-stable results, which the deterministic
// replicate reductions rely on.
struct RunningStat {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void merge(const RunningStat& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double nd = static_cast<double>(n), od = static_cast<double>(o.n);
    const double d = o.mean - mean;
    const double tot = nd + od;
    mean += d * od / tot;
    m2 += o.m2 + d * d * nd * od / tot;
    n += o.n;
  }

  double variance() const {  // unbiased sample variance
    if (n < 2) return 0.0;
    return m2 / static_cast<double>(n - 1);
  }
  double sd() const { return std::sqrt(variance()); }
  double se_mean() const {
    if (n == 0) return 0.0;
    return sd() / std::sqrt(static_cast<double>(n));
  }
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::size_t n = 0;
};

inline LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_line: need two same-length samples of size >= 2");
  const std::size_t n = xs.size();
  double xb = 0, yb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    xb += xs[i];
    yb += ys[i];
  }
  xb /= static_cast<double>(n);
  yb /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - xb) * (xs[i] - xb);
    sxy += (xs[i] - xb) * (ys[i] - yb);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = yb - f.slope * xb;
  f.n = n;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (f.intercept + f.slope * xs[i]);
    ss += r * r;
  }
  f.residual_rms = std::sqrt(ss / static_cast<double>(n));
  return f;
}

inline std::size_t first_tied_index(const std::vector<double>& sorted, std::size_t i) {
  std::size_t j = i;
  while (j > 0 && sorted[j - 1] == sorted[i]) --j;
  return j;
}

// One-sample Kolmogorov-Smirnov statistic against a reference CDF, given as a
// right-continuous callable.  `sample` need not be sorted.  The lower-side
// comparison evaluates the reference one representable double below the
// sample point, which is its left limit; a reference with atoms is therefore
// matched on both sides of each jump instead of being charged its own atom
// mass.  For discrete laws the continuous critical value is conservative.
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    // handle ties: only the last index of a tied block carries the upper step
    if (i + 1 < sample.size() && sample[i + 1] == sample[i]) continue;
    const double f = cdf(sample[i]);
    const double f_left =
        cdf(std::nextafter(sample[i], -std::numeric_limits<double>::infinity()));
    const double lo = static_cast<double>(first_tied_index(sample, i)) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(std::abs(hi - f), std::abs(f_left - lo)));
  }
  return d;
}

// Two-sample KS statistic; handles ties (discrete data) exactly.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

// 5% critical values for the KS statistics above.
inline double ks_critical_one_sample(std::size_t n) {
  return 1.3581 / std::sqrt(static_cast<double>(n));
}
inline double ks_critical_two_sample(std::size_t n, std::size_t m) {
  const double nd = static_cast<double>(n), md = static_cast<double>(m);
  return 1.3581 * std::sqrt((nd + md) / (nd * md));
}

// Total variation distance between two pmfs given on the same index set.
inline double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace logbbm
