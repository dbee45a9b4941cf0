#include "thinord/orderings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "thinord/numeric.hpp"

namespace thinord {

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::st: return "st";
    case Relation::icx: return "icx";
    case Relation::cx: return "cx";
    case Relation::s_cx: return "s_cx";
    case Relation::tnd: return "tnd";
    case Relation::nr: return "nr";
  }
  return "?";
}

std::vector<double> forward_diff(std::span<const double> seq, int n) {
  if (n < 0) fail(Errc::invalid_parameter, "difference order must be >= 0");
  std::vector<double> cur(seq.begin(), seq.end());
  for (int it = 0; it < n; ++it) {
    for (size_t j = 0; j + 1 < cur.size(); ++j) cur[j] = cur[j + 1] - cur[j];
    if (!cur.empty()) cur.back() = -cur.back();  // zero extension past the window
  }
  return cur;
}

std::vector<double> tail_sum(std::span<const double> seq, int n) {
  if (n < 0) fail(Errc::invalid_parameter, "order must be >= 0");
  std::vector<double> cur(seq.begin(), seq.end());
  for (int it = 0; it < n; ++it) {
    double run = 0.0;
    for (size_t j = cur.size(); j-- > 0;) {
      run += cur[j];
      cur[j] = -run;
    }
  }
  return cur;
}

double h_func(const Pmf& p, long long k, long long j) {
  if (k < 0) fail(Errc::invalid_parameter, "order must be >= 0");
  if (k == 0) return p.prob(j);
  KahanSum acc;
  for (long long i = 0; i < p.size(); ++i) {
    const long long x = p.offset() + i;
    acc.add(binom_coeff(x - j + k - 1, k - 1) * p.weights()[static_cast<size_t>(i)]);
  }
  return acc.value();
}

std::vector<double> h_values(const Pmf& p, long long k, long long j_max) {
  if (k < 0 || j_max < 0) fail(Errc::invalid_parameter, "negative order or range");
  std::vector<double> cur(static_cast<size_t>(j_max) + 1, 0.0);
  for (long long j = 0; j <= j_max; ++j) cur[static_cast<size_t>(j)] = p.prob(j);
  for (long long it = 0; it < k; ++it) {
    // Suffix sums need the mass of the previous level beyond the window.
    double run = h_func(p, it + 1, j_max + 1);
    for (size_t j = cur.size(); j-- > 0;) {
      run += cur[j];
      cur[j] = run;
    }
  }
  return cur;
}

namespace {

double default_tol(const Pmf& p, const Pmf& q) { return 1e-10 + p.tail_mass() + q.tail_mass(); }

double mean_slack(const Pmf& p) {
  return p.tail_mass() * static_cast<double>(p.max_value() + 1);
}

}  // namespace

OrderingReport check_order(const Pmf& p, const Pmf& q, Relation rel, int s,
                           std::optional<double> tolerance) {
  int order;
  switch (rel) {
    case Relation::st: order = 1; break;
    case Relation::icx:
    case Relation::cx: order = 2; break;
    case Relation::s_cx:
      if (s < 1) fail(Errc::invalid_parameter, "s must be >= 1");
      order = s;
      break;
    default: fail(Errc::invalid_parameter, "relation not a cone ordering");
  }
  const double tol = tolerance.value_or(default_tol(p, q));
  if (rel == Relation::cx) {
    const double gap = std::abs(p.mean() - q.mean());
    if (gap > 1e-9 + mean_slack(p) + mean_slack(q))
      fail(Errc::mean_mismatch, "cx comparison needs equal means, gap " + std::to_string(gap));
  }

  double worst = -std::numeric_limits<double>::infinity();
  std::optional<long long> witness;
  for (int k = 1; k <= order - 1; ++k) {
    const double v = p.factorial_moment(k) - q.factorial_moment(k);
    if (v > worst) {
      worst = v;
      witness = k;
    }
  }
  const long long j_max = std::max(p.max_value(), q.max_value()) + 1;
  const auto hp = h_values(p, order, j_max);
  const auto hq = h_values(q, order, j_max);
  for (long long j = order; j <= j_max; ++j) {
    const double v = hp[static_cast<size_t>(j)] - hq[static_cast<size_t>(j)];
    if (v > worst) {
      worst = v;
      witness = j;
    }
  }

  OrderingReport rep;
  rep.relation = rel;
  rep.s = order;
  rep.tolerance = tol;
  rep.holds = worst <= tol;
  rep.max_violation = std::max(worst, 0.0);
  if (worst > 0.0) rep.witness = witness;
  return rep;
}

OrderingReport fs_random_oracle(const Pmf& p, const Pmf& q, int s, int trials, uint64_t seed) {
  if (s < 1) fail(Errc::invalid_parameter, "s must be >= 1");
  if (trials < 1) fail(Errc::invalid_parameter, "need at least one trial");
  const long long j_max = std::max(p.max_value(), q.max_value()) + 1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    // f with nonnegative forward differences up to order s: nonnegative noise
    // at level s, cumulated down with a nonnegative seed at each level.
    std::vector<double> f(static_cast<size_t>(j_max) + 1);
    for (auto& v : f) v = unif(rng);
    for (int level = s; level >= 1; --level) {
      double run = unif(rng);
      for (auto& v : f) {
        const double d = v;
        v = run;
        run += d;
      }
    }
    const double peak = *std::max_element(f.begin(), f.end());
    KahanSum acc;
    for (long long j = 0; j <= j_max; ++j)
      acc.add((p.prob(j) - q.prob(j)) * f[static_cast<size_t>(j)] / peak);
    worst = std::max(worst, acc.value());
  }

  OrderingReport rep;
  rep.relation = Relation::s_cx;
  rep.s = s;
  rep.tolerance = default_tol(p, q);
  rep.holds = worst <= rep.tolerance;
  rep.max_violation = std::max(worst, 0.0);
  return rep;
}

}  // namespace thinord
