#include "thinord/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thinord/numeric.hpp"
#include "thinord/orderings.hpp"

namespace thinord {

double seq_norm(std::span<const double> seq, double p) {
  if (!(p >= 1.0)) fail(Errc::invalid_parameter, "norm exponent must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : seq) m = std::max(m, std::abs(x));
    return m;
  }
  KahanSum acc;
  if (p == 1.0) {
    for (double x : seq) acc.add(std::abs(x));
    return acc.value();
  }
  for (double x : seq) acc.add(std::pow(std::abs(x), p));
  return std::pow(acc.value(), 1.0 / p);
}

MetricValue d_np(const Pmf& a, const Pmf& b, MetricSpec spec) {
  if (!(spec.p >= 1.0)) fail(Errc::invalid_parameter, "norm exponent must be >= 1");
  const long long hi = std::max(a.max_value(), b.max_value());
  std::vector<double> diff(static_cast<size_t>(hi) + 1, 0.0);
  for (long long j = 0; j <= hi; ++j) diff[static_cast<size_t>(j)] = a.prob(j) - b.prob(j);

  std::vector<double> seq;
  if (spec.n >= 1) {
    // Delta F(j) = P(X = j), so Delta^n (F - G) is the (n-1)-fold forward
    // difference of the pmf gap. Values spill left of the support but never
    // below j = 0, which is where the window starts.
    seq = forward_diff(diff, spec.n - 1);
  } else {
    // H(j) = F(j) - G(j) with F(j) = P(X < j). One slot past the window
    // carries the represented-mass defect; beyond it H is treated as zero,
    // which matches completing both laws at hi + 1 and keeps every iterated
    // tail sum finitely supported.
    std::vector<double> h(static_cast<size_t>(hi) + 2, 0.0);
    KahanSum run;
    for (size_t j = 1; j < h.size(); ++j) {
      run.add(diff[j - 1]);
      h[j] = run.value();
    }
    seq = tail_sum(h, -spec.n);
    // h(0) = 0 makes slot 0 of every iterated tail sum a copy of slot 1;
    // the norm indexes each level once, starting at slot 1.
    if (spec.n < 0) seq.erase(seq.begin());
  }

  MetricValue out;
  out.value = seq_norm(seq, spec.p);

  const double tails = a.tail_mass() + b.tail_mass();
  if (tails > 0.0) {
    // Truncated mass is assumed to sit within one window width past the
    // cut; the binomial weight of the deepest level bounds its pointwise
    // effect, and finite p picks up the window span once more.
    const double width = static_cast<double>(hi) + 2.0;
    if (spec.n >= 1) {
      out.uncertainty = tails * std::pow(2.0, static_cast<double>(spec.n));
    } else {
      const int s = -spec.n;
      double pt = 2.0 * tails;
      for (int i = 1; i <= s; ++i) pt *= (2.0 * width + s) / static_cast<double>(i);
      out.uncertainty = std::isinf(spec.p) ? pt : pt * std::pow(width, 1.0 / spec.p);
    }
  }
  return out;
}

MetricValue total_variation(const Pmf& a, const Pmf& b) {
  auto v = d_np(a, b, {1, 1.0});
  v.value *= 0.5;
  v.uncertainty *= 0.5;
  return v;
}

MetricValue kolmogorov(const Pmf& a, const Pmf& b) {
  return d_np(a, b, {0, std::numeric_limits<double>::infinity()});
}

MetricValue wasserstein(const Pmf& a, const Pmf& b) { return d_np(a, b, {0, 1.0}); }

MetricValue stop_loss(const Pmf& a, const Pmf& b) {
  return d_np(a, b, {-1, std::numeric_limits<double>::infinity()});
}

MetricValue local_limit(const Pmf& a, const Pmf& b) {
  return d_np(a, b, {1, std::numeric_limits<double>::infinity()});
}

}  // namespace thinord
