#include "thinord/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>

#include "thinord/numeric.hpp"

namespace thinord {

namespace {

constexpr double kStateLimit = 1e7;

double factorial_ld(long long n) {
  long double f = 1.0L;
  for (long long i = 2; i <= n; ++i) f *= static_cast<long double>(i);
  return static_cast<double>(f);
}

}  // namespace

JointIndicatorTable joint_table(long long n, std::vector<double> probs) {
  if (n < 1 || n > 20) {
    fail(Errc::too_large, "joint_table: need 1 <= n <= 20");
  }
  const std::size_t want = static_cast<std::size_t>(1) << n;
  if (probs.size() != want) {
    fail(Errc::invalid_parameter, "joint_table: need one probability per outcome");
  }
  KahanSum total;
  for (double p : probs) {
    if (p < 0.0) fail(Errc::negative_weight, "joint_table: negative probability");
    total.add(p);
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    fail(Errc::not_normalized, "joint_table: probabilities must sum to 1");
  }
  return JointIndicatorTable{n, std::move(probs)};
}

Pmf occupancy_model(long long m, long long n, long long c) {
  if (m < 0 || n < 1 || c < 0) {
    fail(Errc::invalid_parameter, "occupancy_model: need m >= 0, n >= 1, c >= 0");
  }
  if (static_cast<double>(m) * std::log(static_cast<double>(n)) >
      std::log(kStateLimit)) {
    fail(Errc::too_large, "occupancy_model: n^m exceeds the enumeration limit");
  }
  std::vector<double> counts(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<long long> urn(static_cast<std::size_t>(n), 0);
  long long hits = (c == 0) ? n : 0;
  // Depth-first walk over placements, keeping the threshold count
  // incrementally so each leaf is O(1).
  auto place = [&](auto&& self, long long ball) -> void {
    if (ball == m) {
      counts[static_cast<std::size_t>(hits)] += 1.0;
      return;
    }
    for (long long u = 0; u < n; ++u) {
      if (++urn[static_cast<std::size_t>(u)] == c) ++hits;
      self(self, ball + 1);
      if (urn[static_cast<std::size_t>(u)]-- == c) --hits;
    }
  };
  place(place, 0);
  const double total = std::pow(static_cast<double>(n), static_cast<double>(m));
  for (double& w : counts) w /= total;
  return Pmf::validated(0, std::move(counts));
}

Pmf polya_unseen(long long n_colours, long long m) {
  if (n_colours < 1 || m < 0) {
    fail(Errc::invalid_parameter, "polya_unseen: need n_colours >= 1, m >= 0");
  }
  if (static_cast<double>(n_colours + 1) * static_cast<double>(m + 1) > kStateLimit) {
    fail(Errc::too_large, "polya_unseen: state count exceeds the enumeration limit");
  }
  const std::size_t nn = static_cast<std::size_t>(n_colours);
  std::vector<double> unseen(nn + 1, 0.0);
  unseen[nn] = 1.0;
  for (long long t = 0; t < m; ++t) {
    std::vector<double> next(nn + 1, 0.0);
    const double balls = static_cast<double>(n_colours + t);
    for (std::size_t u = 0; u <= nn; ++u) {
      const double p = unseen[u];
      if (p == 0.0) continue;
      const double hit = static_cast<double>(u) / balls;
      if (u > 0) next[u - 1] += p * hit;
      next[u] += p * (1.0 - hit);
    }
    unseen = std::move(next);
  }
  return Pmf::validated(0, std::move(unseen));
}

Pmf matrix_occupancy(long long rows, long long n, std::span<const long long> s,
                     long long m_threshold) {
  if (rows < 0 || n < 1 || m_threshold < 0) {
    fail(Errc::invalid_parameter,
         "matrix_occupancy: need rows >= 0, n >= 1, m_threshold >= 0");
  }
  if (static_cast<long long>(s.size()) != rows) {
    fail(Errc::invalid_parameter, "matrix_occupancy: need one fill count per row");
  }
  for (long long sk : s) {
    if (sk < 0 || sk > n) {
      fail(Errc::invalid_parameter, "matrix_occupancy: row fill count outside [0, n]");
    }
  }
  {
    // Reachable histogram states are compositions of n into rows + 1 parts.
    double states = 1.0;
    for (long long i = 1; i <= rows; ++i) {
      states *= static_cast<double>(n + i) / static_cast<double>(i);
      if (states > kStateLimit) {
        fail(Errc::too_large, "matrix_occupancy: state count exceeds the limit");
      }
    }
  }

  // State: histogram h[v] = number of columns currently holding v ones.
  using State = std::vector<long long>;
  std::map<State, double> states;
  State init(static_cast<std::size_t>(rows) + 1, 0);
  init[0] = n;
  states.emplace(std::move(init), 1.0);

  for (long long k = 0; k < rows; ++k) {
    const long long sk = s[static_cast<std::size_t>(k)];
    const double denom = binom_coeff(n, sk);
    std::map<State, double> next;
    for (const auto& [h, pr] : states) {
      // Spread the row's sk ones over the count classes: a multivariate
      // hypergeometric choice of how many marked columns sit in each class.
      State pick(h.size(), 0);
      auto spread = [&](auto&& self, std::size_t v, long long left,
                        double ways) -> void {
        if (v + 1 == h.size()) {
          if (left > h[v]) return;
          pick[v] = left;
          double total_ways = ways * binom_coeff(h[v], left);
          State out(h);
          for (std::size_t u = 0; u < h.size(); ++u) {
            if (pick[u] == 0) continue;
            out[u] -= pick[u];
            out[u + 1] += pick[u];
          }
          next[out] += pr * total_ways / denom;
          return;
        }
        const long long cap = std::min(left, h[v]);
        for (long long take = 0; take <= cap; ++take) {
          pick[v] = take;
          self(self, v + 1, left - take, ways * binom_coeff(h[v], take));
        }
        pick[v] = 0;
      };
      // Classes above k are empty before row k + 1 is placed, and marked
      // columns move up one class, so recursing over h.size() - 1 slots is
      // exhaustive.
      spread(spread, 0, sk, 1.0);
    }
    states = std::move(next);
  }

  std::vector<double> law(static_cast<std::size_t>(n) + 1, 0.0);
  for (const auto& [h, pr] : states) {
    long long w = 0;
    for (long long v = 0; v <= std::min(rows, m_threshold); ++v) {
      w += h[static_cast<std::size_t>(v)];
    }
    law[static_cast<std::size_t>(w)] += pr;
  }
  return Pmf::validated(0, std::move(law));
}

Pmf permutation_threshold(std::span<const long long> a) {
  const long long n = static_cast<long long>(a.size());
  if (n < 1) fail(Errc::invalid_parameter, "permutation_threshold: empty threshold list");
  if (n > 20) fail(Errc::too_large, "permutation_threshold: need n <= 20");
  for (long long ai : a) {
    if (ai < 0 || ai > n) {
      fail(Errc::invalid_threshold, "permutation_threshold: threshold outside [0, n]");
    }
  }
  std::vector<long long> sorted(a.begin(), a.end());
  std::sort(sorted.begin(), sorted.end());

  // r[k] counts placements of k non-attacking rooks on the staircase board
  // {(i, j) : j <= a_i}; processing rows by ascending width makes the count
  // of free columns explicit.
  std::vector<__int128> r(static_cast<std::size_t>(n) + 1, 0);
  r[0] = 1;
  for (long long i = 1; i <= n; ++i) {
    const long long width = sorted[static_cast<std::size_t>(i - 1)];
    for (long long k = std::min(i, width); k >= 1; --k) {
      const long long free_cols = width - (k - 1);
      if (free_cols <= 0) continue;
      r[static_cast<std::size_t>(k)] +=
          r[static_cast<std::size_t>(k - 1)] * static_cast<__int128>(free_cols);
    }
  }

  std::vector<__int128> fact(static_cast<std::size_t>(n) + 1, 1);
  for (long long i = 1; i <= n; ++i) {
    fact[static_cast<std::size_t>(i)] =
        fact[static_cast<std::size_t>(i - 1)] * static_cast<__int128>(i);
  }
  std::vector<__int128> choose(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
  auto C = [&](long long p, long long q) -> __int128& {
    return choose[static_cast<std::size_t>(p * (n + 1) + q)];
  };
  for (long long p = 0; p <= n; ++p) {
    C(p, 0) = 1;
    for (long long q = 1; q <= p; ++q) C(p, q) = C(p - 1, q - 1) + C(p - 1, q);
  }

  const double total = factorial_ld(n);
  std::vector<double> law(static_cast<std::size_t>(n) + 1, 0.0);
  for (long long w = 0; w <= n; ++w) {
    __int128 count = 0;
    for (long long k = w; k <= n; ++k) {
      const __int128 term =
          C(k, w) * r[static_cast<std::size_t>(k)] * fact[static_cast<std::size_t>(n - k)];
      if ((k - w) % 2 == 0) count += term;
      else count -= term;
    }
    law[static_cast<std::size_t>(w)] =
        static_cast<double>(static_cast<long double>(count)) / total;
  }
  return Pmf::validated(0, std::move(law));
}

Pmf lightbulb(long long n) {
  if (n < 1) fail(Errc::invalid_parameter, "lightbulb: need n >= 1");
  if (n > 200) fail(Errc::too_large, "lightbulb: need n <= 200");
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<double> on(nn + 1, 0.0);
  on[0] = 1.0;
  for (long long r = 1; r <= n; ++r) {
    std::vector<double> next(nn + 1, 0.0);
    const double log_denom = log_choose(n, r);
    for (long long k = 0; k <= n; ++k) {
      const double p = on[static_cast<std::size_t>(k)];
      if (p == 0.0) continue;
      const long long j_lo = std::max<long long>(0, r - (n - k));
      const long long j_hi = std::min(k, r);
      for (long long j = j_lo; j <= j_hi; ++j) {
        const double w =
            std::exp(log_choose(k, j) + log_choose(n - k, r - j) - log_denom);
        next[static_cast<std::size_t>(k - j + (r - j))] += p * w;
      }
    }
    on = std::move(next);
  }
  return Pmf::validated(0, std::move(on));
}

Pmf indicator_sum(const JointIndicatorTable& t) {
  std::vector<double> law(static_cast<std::size_t>(t.n) + 1, 0.0);
  for (std::size_t mask = 0; mask < t.probs.size(); ++mask) {
    law[static_cast<std::size_t>(std::popcount(mask))] += t.probs[mask];
  }
  return Pmf::validated(0, std::move(law));
}

OrderingReport tnd_check(const JointIndicatorTable& t, double tolerance) {
  OrderingReport rep;
  rep.relation = Relation::tnd;
  rep.s = 1;
  rep.tolerance = tolerance;
  const long long n = t.n;
  double worst = -std::numeric_limits<double>::infinity();
  std::optional<long long> witness;
  for (long long i = 0; i < n; ++i) {
    const std::size_t bit = static_cast<std::size_t>(1) << i;
    std::vector<double> rest(static_cast<std::size_t>(n), 0.0);
    std::vector<double> rest_and_xi(static_cast<std::size_t>(n), 0.0);
    double p1 = 0.0;
    for (std::size_t mask = 0; mask < t.probs.size(); ++mask) {
      const double pr = t.probs[mask];
      if (pr == 0.0) continue;
      const int others = std::popcount(mask & ~bit);
      rest[static_cast<std::size_t>(others)] += pr;
      if (mask & bit) {
        rest_and_xi[static_cast<std::size_t>(others)] += pr;
        p1 += pr;
      }
    }
    double surv = 0.0;
    double surv1 = 0.0;
    for (long long v = n - 1; v >= 1; --v) {
      surv += rest[static_cast<std::size_t>(v)];
      surv1 += rest_and_xi[static_cast<std::size_t>(v)];
      const double cov = surv1 - p1 * surv;
      if (cov > worst) {
        worst = cov;
        witness = i * (n + 1) + v;
      }
    }
  }
  rep.holds = worst <= tolerance;
  rep.max_violation = std::max(0.0, worst);
  rep.witness = witness;
  return rep;
}

namespace {

// All monotone indicator functions of d binary variables, each encoded as a
// bitmask over the 2^d assignments. Feasible for d <= 4 (168 survivors of
// 65536 candidates).
std::vector<std::uint32_t> monotone_functions(long long d) {
  const std::uint32_t points = static_cast<std::uint32_t>(1) << d;
  std::vector<std::uint32_t> out;
  const std::uint64_t limit = static_cast<std::uint64_t>(1) << points;
  for (std::uint64_t f = 0; f < limit; ++f) {
    bool ok = true;
    for (std::uint32_t x = 0; x < points && ok; ++x) {
      if (!(f >> x & 1)) continue;
      for (long long b = 0; b < d && ok; ++b) {
        const std::uint32_t y = x | (static_cast<std::uint32_t>(1) << b);
        if (!(f >> y & 1)) ok = false;
      }
    }
    if (ok) out.push_back(static_cast<std::uint32_t>(f));
  }
  return out;
}

// Drops coordinate i from a full outcome mask.
std::uint32_t squeeze(std::size_t mask, long long i) {
  const std::size_t low = mask & ((static_cast<std::size_t>(1) << i) - 1);
  const std::size_t high = mask >> (i + 1);
  return static_cast<std::uint32_t>(low | (high << i));
}

struct NrScan {
  double worst = -std::numeric_limits<double>::infinity();
  std::optional<long long> witness;
};

// Violation of the negative-relation inequality for coordinate i against the
// indicator of the upward-closed set enc: E[phi | X_i = 1] - E[phi].
template <typename Phi>
double nr_violation(std::span<const double> rest, std::span<const double> rest1,
                    double p1, Phi&& phi) {
  double e = 0.0;
  double e1 = 0.0;
  for (std::size_t sub = 0; sub < rest.size(); ++sub) {
    if (!phi(static_cast<std::uint32_t>(sub))) continue;
    e += rest[sub];
    e1 += rest1[sub];
  }
  return e1 / p1 - e;
}

}  // namespace

OrderingReport nr_check_exact(const JointIndicatorTable& t, double tolerance) {
  if (t.n > 5) {
    fail(Errc::too_large, "nr_check_exact: enumeration needs n <= 5");
  }
  OrderingReport rep;
  rep.relation = Relation::nr;
  rep.s = 1;
  rep.tolerance = tolerance;
  const long long n = t.n;
  const std::vector<std::uint32_t> funcs = monotone_functions(n - 1);
  NrScan scan;
  for (long long i = 0; i < n; ++i) {
    const std::size_t bit = static_cast<std::size_t>(1) << i;
    const std::size_t points = static_cast<std::size_t>(1) << (n - 1);
    std::vector<double> rest(points, 0.0);
    std::vector<double> rest1(points, 0.0);
    double p1 = 0.0;
    for (std::size_t mask = 0; mask < t.probs.size(); ++mask) {
      const double pr = t.probs[mask];
      const std::uint32_t sub = squeeze(mask, i);
      rest[sub] += pr;
      if (mask & bit) {
        rest1[sub] += pr;
        p1 += pr;
      }
    }
    if (p1 <= 0.0) continue;
    for (std::uint32_t f : funcs) {
      const double v = nr_violation(rest, rest1, p1,
                                    [f](std::uint32_t sub) { return f >> sub & 1; });
      if (v > scan.worst) {
        scan.worst = v;
        scan.witness = i;
      }
    }
  }
  rep.holds = scan.worst <= tolerance;
  rep.max_violation = std::max(0.0, scan.worst);
  rep.witness = scan.witness;
  return rep;
}

OrderingReport nr_check_randomized(const JointIndicatorTable& t, long long trials,
                                   unsigned long long seed, double tolerance) {
  if (trials < 1) fail(Errc::invalid_parameter, "nr_check_randomized: need trials >= 1");
  OrderingReport rep;
  rep.relation = Relation::nr;
  rep.s = 1;
  rep.tolerance = tolerance;
  const long long n = t.n;
  const std::size_t points = static_cast<std::size_t>(1) << (n - 1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<std::vector<double>> rest(static_cast<std::size_t>(n));
  std::vector<std::vector<double>> rest1(static_cast<std::size_t>(n));
  std::vector<double> p1(static_cast<std::size_t>(n), 0.0);
  for (long long i = 0; i < n; ++i) {
    rest[static_cast<std::size_t>(i)].assign(points, 0.0);
    rest1[static_cast<std::size_t>(i)].assign(points, 0.0);
    const std::size_t bit = static_cast<std::size_t>(1) << i;
    for (std::size_t mask = 0; mask < t.probs.size(); ++mask) {
      const double pr = t.probs[mask];
      const std::uint32_t sub = squeeze(mask, i);
      rest[static_cast<std::size_t>(i)][sub] += pr;
      if (mask & bit) {
        rest1[static_cast<std::size_t>(i)][sub] += pr;
        p1[static_cast<std::size_t>(i)] += pr;
      }
    }
  }

  NrScan scan;
  std::vector<char> in_set(points);
  for (long long trial = 0; trial < trials; ++trial) {
    const double density = unif(rng);
    for (std::size_t x = 0; x < points; ++x) in_set[x] = unif(rng) < density;
    // Upward closure: a point is in the set if any subset seed is.
    for (long long b = 0; b < n - 1; ++b) {
      const std::size_t bit = static_cast<std::size_t>(1) << b;
      for (std::size_t x = 0; x < points; ++x) {
        if ((x & bit) && in_set[x ^ bit]) in_set[x] = 1;
      }
    }
    for (long long i = 0; i < n; ++i) {
      if (p1[static_cast<std::size_t>(i)] <= 0.0) continue;
      const double v =
          nr_violation(rest[static_cast<std::size_t>(i)],
                       rest1[static_cast<std::size_t>(i)], p1[static_cast<std::size_t>(i)],
                       [&](std::uint32_t sub) { return in_set[sub] != 0; });
      if (v > scan.worst) {
        scan.worst = v;
        scan.witness = i;
      }
    }
  }
  rep.holds = scan.worst <= tolerance;
  rep.max_violation = std::max(0.0, scan.worst);
  rep.witness = scan.witness;
  return rep;
}

JointIndicatorTable without_replacement_indicators() {
  return joint_table(2, {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0});
}

}  // namespace thinord
