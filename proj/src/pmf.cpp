#include "thinord/pmf.hpp"

#include <algorithm>
#include <cmath>

#include "thinord/numeric.hpp"

namespace thinord {

void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

namespace {

constexpr double kWeightClip = 1e-15;   // most negative weight tolerated before clipping
constexpr double kEdgeTrim = 1e-300;    // leading/trailing weights below this are dropped
constexpr double kMassSlack = 1e-9;     // |sum + tail - 1| allowed at construction
constexpr double kShapeTol = 1e-12;     // multiplicative slack in shape inequalities
constexpr double kShapeFloor = 1e-13;   // relative floor below which entries are dust

void clip_negatives(std::vector<double>& w) {
  for (double& x : w) {
    if (x < 0.0) {
      if (x < -kWeightClip) fail(Errc::negative_weight, "weight below -1e-15");
      x = 0.0;
    }
  }
}

}  // namespace

Pmf Pmf::validated(long long offset, std::vector<double> weights) {
  if (offset < 0) fail(Errc::negative_support, "offset must be >= 0");
  if (weights.empty()) fail(Errc::invalid_parameter, "empty weight vector");
  clip_negatives(weights);
  const double total = kahan_total(weights);
  if (std::abs(total - 1.0) > kMassSlack) fail(Errc::not_normalized, "weights sum to " + std::to_string(total));
  return raw(offset, std::move(weights), 0.0);
}

Pmf Pmf::raw(long long offset, std::vector<double> weights, double tail_mass) {
  if (offset < 0) fail(Errc::negative_support, "offset must be >= 0");
  if (weights.empty()) fail(Errc::invalid_parameter, "empty weight vector");
  clip_negatives(weights);
  size_t lo = 0, hi = weights.size();
  while (hi - lo > 1 && weights[hi - 1] < kEdgeTrim) --hi;
  while (hi - lo > 1 && weights[lo] < kEdgeTrim) ++lo;
  if (lo > 0 || hi < weights.size())
    weights = std::vector<double>(weights.begin() + lo, weights.begin() + hi);
  tail_mass = std::clamp(tail_mass, 0.0, 1.0);
  return Pmf(offset + static_cast<long long>(lo), std::move(weights), tail_mass);
}

double Pmf::mass() const { return kahan_total(weights_); }

double Pmf::survival(long long j) const {
  KahanSum acc;
  for (long long v = std::max(j, offset_); v <= max_value(); ++v)
    acc.add(weights_[static_cast<size_t>(v - offset_)]);
  return acc.value();
}

double Pmf::mean() const {
  KahanSum acc;
  for (long long i = 0; i < size(); ++i)
    acc.add(static_cast<double>(offset_ + i) * weights_[static_cast<size_t>(i)]);
  return acc.value();
}

double Pmf::variance() const {
  const double m = mean();
  KahanSum acc;
  for (long long i = 0; i < size(); ++i) {
    const double d = static_cast<double>(offset_ + i) - m;
    acc.add(d * d * weights_[static_cast<size_t>(i)]);
  }
  return std::max(acc.value(), 0.0);
}

MomentSummary Pmf::moments() const { return {mean(), variance(), size()}; }

double Pmf::factorial_moment(long long k) const {
  if (k < 0) fail(Errc::invalid_parameter, "factorial moment order must be >= 0");
  KahanSum acc;
  for (long long i = 0; i < size(); ++i)
    acc.add(binom_coeff(offset_ + i, k) * weights_[static_cast<size_t>(i)]);
  return acc.value();
}

Pmf point_mass(long long j) {
  if (j < 0) fail(Errc::negative_support, "point mass below 0");
  return Pmf::raw(j, {1.0}, 0.0);
}

Pmf poisson_pmf(double lambda, double tail_eps) {
  if (lambda < 0.0 || !std::isfinite(lambda)) fail(Errc::invalid_parameter, "lambda must be >= 0");
  if (tail_eps <= 0.0) fail(Errc::invalid_parameter, "tail_eps must be > 0");
  if (lambda == 0.0) return point_mass(0);
  std::vector<double> w{std::exp(-lambda)};
  double tail_bound = 1.0;
  for (long long k = 0;; ++k) {
    const double next = w.back() * lambda / static_cast<double>(k + 1);
    // Geometric tail bound past k: ratio lambda/(k+2) must be < 1.
    const double ratio = lambda / static_cast<double>(k + 2);
    if (ratio < 1.0) {
      tail_bound = next / (1.0 - ratio);
      if (tail_bound <= tail_eps && static_cast<double>(k) >= lambda) break;
    }
    w.push_back(next);
    if (w.size() > 100000) fail(Errc::too_large, "poisson support overflow");
  }
  return Pmf::raw(0, std::move(w), std::min(tail_bound, 1.0));
}

Pmf binomial_pmf(long long n, double r) {
  if (n < 0) fail(Errc::invalid_parameter, "n must be >= 0");
  if (r < 0.0 || r > 1.0) fail(Errc::invalid_parameter, "r must lie in [0,1]");
  if (n == 0 || r == 0.0) return point_mass(0);
  if (r == 1.0) return point_mass(n);
  std::vector<double> w(static_cast<size_t>(n) + 1);
  // Build multiplicatively from the heavier end so the anchor term is healthy.
  if (r <= 0.5) {
    w[0] = std::pow(1.0 - r, static_cast<double>(n));
    for (long long k = 0; k < n; ++k)
      w[static_cast<size_t>(k + 1)] =
          w[static_cast<size_t>(k)] * (static_cast<double>(n - k) / static_cast<double>(k + 1)) * (r / (1.0 - r));
  } else {
    w[static_cast<size_t>(n)] = std::pow(r, static_cast<double>(n));
    for (long long k = n; k > 0; --k)
      w[static_cast<size_t>(k - 1)] =
          w[static_cast<size_t>(k)] * (static_cast<double>(k) / static_cast<double>(n - k + 1)) * ((1.0 - r) / r);
  }
  return Pmf::raw(0, std::move(w), 0.0);
}

Pmf bernoulli_pmf(double p) { return binomial_pmf(1, p); }

Pmf negative_binomial_pmf(double beta, double q, double tail_eps) {
  if (beta <= 0.0) fail(Errc::invalid_parameter, "shape must be > 0");
  if (q <= 0.0 || q >= 1.0) fail(Errc::invalid_parameter, "q must lie in (0,1)");
  if (tail_eps <= 0.0) fail(Errc::invalid_parameter, "tail_eps must be > 0");
  std::vector<double> w{std::pow(1.0 - q, beta)};
  double tail_bound = 1.0;
  for (long long k = 0;; ++k) {
    const double next = w.back() * q * (beta + static_cast<double>(k)) / static_cast<double>(k + 1);
    // Past k the term ratio is at most max(q, current ratio).
    const double rho = std::max(q, q * (beta + static_cast<double>(k + 1)) / static_cast<double>(k + 2));
    if (rho < 1.0) {
      tail_bound = next / (1.0 - rho);
      if (tail_bound <= tail_eps) break;
    }
    w.push_back(next);
    if (w.size() > 200000) fail(Errc::too_large, "negative binomial support overflow");
  }
  return Pmf::raw(0, std::move(w), std::min(tail_bound, 1.0));
}

Pmf beta_binomial_pmf(long long m, double a, double b) {
  if (m < 0) fail(Errc::invalid_parameter, "m must be >= 0");
  if (a <= 0.0 || b <= 0.0) fail(Errc::invalid_parameter, "shape parameters must be > 0");
  if (m == 0) return point_mass(0);
  std::vector<double> w(static_cast<size_t>(m) + 1);
  // p0 = B(a, b+m)/B(a, b) = prod (b+i)/(a+b+i)
  double p0 = 1.0;
  for (long long i = 0; i < m; ++i) p0 *= (b + static_cast<double>(i)) / (a + b + static_cast<double>(i));
  w[0] = p0;
  for (long long k = 0; k < m; ++k)
    w[static_cast<size_t>(k + 1)] = w[static_cast<size_t>(k)] *
                                    (static_cast<double>(m - k) * (a + static_cast<double>(k))) /
                                    (static_cast<double>(k + 1) * (b + static_cast<double>(m - k - 1)));
  return Pmf::raw(0, std::move(w), 0.0);
}

Pmf hypergeometric_pmf(long long N, long long n, long long m) {
  if (N < 0 || n < 0 || m < 0 || n > N || m > N) fail(Errc::invalid_parameter, "need 0 <= n, m <= N");
  const long long lo = std::max(0LL, n + m - N);
  const long long hi = std::min(n, m);
  std::vector<double> w(static_cast<size_t>(hi - lo) + 1);
  w[0] = std::exp(log_choose(m, lo) + log_choose(N - m, n - lo) - log_choose(N, n));
  for (long long k = lo; k < hi; ++k) {
    const double num = static_cast<double>(m - k) * static_cast<double>(n - k);
    const double den = static_cast<double>(k + 1) * static_cast<double>(N - m - n + k + 1);
    w[static_cast<size_t>(k - lo + 1)] = w[static_cast<size_t>(k - lo)] * num / den;
  }
  return Pmf::raw(lo, std::move(w), 0.0);
}

Pmf clubbed_binomial_pmf(long long n, Parity parity) {
  if (n < 1) fail(Errc::invalid_parameter, "n must be >= 1");
  const Pmf x = binomial_pmf(n - 1, 0.5);
  const long long want = parity == Parity::even ? 0 : 1;
  std::vector<double> w(static_cast<size_t>(n) + 1, 0.0);
  for (long long j = 0; j <= n; ++j)
    if (((j % 2) + 2) % 2 == want) w[static_cast<size_t>(j)] = x.prob(j - 1) + x.prob(j);
  return Pmf::raw(0, std::move(w), 0.0);
}

Pmf convolve(const Pmf& a, const Pmf& b) {
  std::vector<double> w(static_cast<size_t>(a.size() + b.size()) - 1, 0.0);
  const auto& wa = a.weights();
  const auto& wb = b.weights();
  for (size_t i = 0; i < wa.size(); ++i) {
    if (wa[i] == 0.0) continue;
    for (size_t j = 0; j < wb.size(); ++j) w[i + j] += wa[i] * wb[j];
  }
  return Pmf::raw(a.offset() + b.offset(), std::move(w), std::min(a.tail_mass() + b.tail_mass(), 1.0));
}

Pmf mixture(const std::vector<std::pair<double, Pmf>>& components) {
  if (components.empty()) fail(Errc::invalid_parameter, "empty mixture");
  KahanSum wsum;
  for (const auto& [w, p] : components) {
    if (w < 0.0) fail(Errc::negative_weight, "mixture weight below 0");
    wsum.add(w);
  }
  if (std::abs(wsum.value() - 1.0) > kMassSlack)
    fail(Errc::not_normalized, "mixture weights sum to " + std::to_string(wsum.value()));
  long long lo = components.front().second.min_value();
  long long hi = components.front().second.max_value();
  for (const auto& [w, p] : components) {
    lo = std::min(lo, p.min_value());
    hi = std::max(hi, p.max_value());
  }
  std::vector<double> w(static_cast<size_t>(hi - lo) + 1, 0.0);
  double tail = 0.0;
  for (const auto& [wt, p] : components) {
    for (long long i = 0; i < p.size(); ++i)
      w[static_cast<size_t>(p.offset() + i - lo)] += wt * p.weights()[static_cast<size_t>(i)];
    tail += wt * p.tail_mass();
  }
  return Pmf::raw(lo, std::move(w), tail);
}

Pmf shift(const Pmf& p, long long c) {
  if (p.offset() + c < 0) fail(Errc::negative_support, "shift would move support below 0");
  return Pmf::raw(p.offset() + c, p.weights(), p.tail_mass());
}

namespace {

// Indices [lo, hi] of the block above the dust floor; requires the block to
// be contiguous (no interior zeros) to count as interval support.
bool healthy_block(const Pmf& p, size_t& lo, size_t& hi) {
  const auto& w = p.weights();
  const double peak = *std::max_element(w.begin(), w.end());
  const double floor = peak * kShapeFloor;
  lo = 0;
  hi = w.size() - 1;
  while (lo < hi && w[lo] < floor) ++lo;
  while (hi > lo && w[hi] < floor) --hi;
  for (size_t i = lo; i <= hi; ++i)
    if (w[i] < floor) return false;
  return true;
}

bool quad_holds(double lhs, double rhs) { return lhs >= rhs - kShapeTol * std::max(lhs, rhs); }

}  // namespace

bool is_log_concave(const Pmf& p) {
  size_t lo, hi;
  if (!healthy_block(p, lo, hi)) return false;
  const auto& w = p.weights();
  for (size_t i = lo + 1; i < hi; ++i)
    if (!quad_holds(w[i] * w[i], w[i - 1] * w[i + 1])) return false;
  return true;
}

bool is_ulc(const Pmf& p, long long degree) {
  if (degree < 0) fail(Errc::invalid_parameter, "degree must be >= 0");
  if (p.min_value() < 0 || p.max_value() > degree)
    fail(Errc::support_exceeds_degree, "support outside {0..n}");
  // p(i)/binom(n, i) must be log-concave across the full window {0..n}.
  std::vector<double> q(static_cast<size_t>(degree) + 1, 0.0);
  for (long long i = 0; i <= degree; ++i)
    q[static_cast<size_t>(i)] = p.prob(i) / binom_coeff(degree, i);
  for (long long i = 0; i + 2 <= degree; ++i) {
    const double lhs = q[static_cast<size_t>(i + 1)] * q[static_cast<size_t>(i + 1)];
    const double rhs = q[static_cast<size_t>(i)] * q[static_cast<size_t>(i + 2)];
    const double peak = *std::max_element(q.begin(), q.end());
    if (std::max(lhs, rhs) < (peak * kShapeFloor) * (peak * kShapeFloor)) continue;
    if (!quad_holds(lhs, rhs)) return false;
  }
  return true;
}

bool is_ulc_inf(const Pmf& p) {
  if (p.min_value() < 0) fail(Errc::negative_support, "support below 0");
  size_t lo, hi;
  if (!healthy_block(p, lo, hi)) return false;
  const auto& w = p.weights();
  const long long off = p.offset();
  // (j+1) p(j+1)^2 >= (j+2) p(j) p(j+2), i.e. (j+1)! p(j+1) log-concave.
  for (size_t i = lo + 1; i < hi; ++i) {
    const long long j = off + static_cast<long long>(i) - 1;
    const double lhs = static_cast<double>(j + 1) * w[i] * w[i];
    const double rhs = static_cast<double>(j + 2) * w[i - 1] * w[i + 1];
    if (!quad_holds(lhs, rhs)) return false;
  }
  return true;
}

Pmf compound(const Pmf& p, const Pmf& x, double tail_eps) {
  if (tail_eps <= 0.0) fail(Errc::invalid_parameter, "tail_eps must be > 0");
  const long long width = p.max_value() * x.max_value() + 1;
  if (width > 2000000) fail(Errc::too_large, "compound support overflow");
  std::vector<double> acc(static_cast<size_t>(width), 0.0);
  // Running x-fold convolution power, dense from 0.
  std::vector<double> cur{1.0};
  std::vector<double> xd(static_cast<size_t>(x.max_value()) + 1, 0.0);
  for (long long i = 0; i < x.size(); ++i)
    xd[static_cast<size_t>(x.offset() + i)] = x.weights()[static_cast<size_t>(i)];
  for (long long w = 0; w <= p.max_value(); ++w) {
    const double pw = p.prob(w);
    if (pw > 0.0)
      for (size_t i = 0; i < cur.size(); ++i) acc[i] += pw * cur[i];
    if (w == p.max_value()) break;
    std::vector<double> nxt(cur.size() + xd.size() - 1, 0.0);
    for (size_t i = 0; i < cur.size(); ++i) {
      if (cur[i] == 0.0) continue;
      for (size_t j = 0; j < xd.size(); ++j) nxt[i + j] += cur[i] * xd[j];
    }
    cur = std::move(nxt);
  }
  // Fold trailing mass up to tail_eps into the tail bound, plus what the
  // truncated inputs could have contributed (each summand used at most
  // E[W]-many times in expectation).
  double cut = 0.0;
  size_t end = acc.size();
  while (end > 1 && cut + acc[end - 1] <= tail_eps) cut += acc[--end];
  acc.resize(end);
  const double tail = cut + p.tail_mass() + p.mean() * x.tail_mass();
  return Pmf::raw(0, std::move(acc), std::min(tail, 1.0));
}

}  // namespace thinord
