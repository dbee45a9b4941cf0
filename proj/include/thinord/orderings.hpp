#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "thinord/pmf.hpp"
#include "thinord/reports.hpp"

namespace thinord {

// Forward difference iterated n times, zero-extended on the right: the input
// is read as a compactly supported function on {0, 1, ...}.
std::vector<double> forward_diff(std::span<const double> seq, int n);

// Inverse: (tail_sum f)(j) = -sum_{i >= j} f(i), iterated n times. Exact
// inverse of forward_diff for compactly supported sequences.
std::vector<double> tail_sum(std::span<const double> seq, int n);

// Iterated tail functional h_k: h_0(P, j) = P(j), h_k(P, j) = sum_{i>=j}
// h_{k-1}(P, i) = E binom(W - j + k - 1, k - 1). h_1 is the survival function.
// Computed over retained mass only.
double h_func(const Pmf& p, long long k, long long j);

// Dense h_k values for j = 0..j_max via iterated suffix sums.
std::vector<double> h_values(const Pmf& p, long long k, long long j_max);

// Ordering check against the cone of functions with nonnegative forward
// differences up to order s (s = 1 plain stochastic order, s = 2 increasing
// convex). Criterion: factorial moments E binom(X, k) for k = 1..s-1, plus
// h_s(P, j) <= h_s(Q, j) for all j >= s. cx additionally requires equal means
// and reduces to the s = 2 cone. Default tolerance: 1e-10 plus both tails.
OrderingReport check_order(const Pmf& p, const Pmf& q, Relation rel, int s = 1,
                           std::optional<double> tolerance = {});

// Size-biased law against the unit shift: the self-comparison driving the
// thinning monotonicity and Poisson comparison results.
OrderingReport check_eq_order1(const Pmf& p, int s, std::optional<double> tolerance = {});

// Randomized falsifier: draws random cone functions (s-fold cumulative sums
// of nonnegative noise, sup-normalized) and compares expectations. Evidence
// only; deterministic for a fixed seed.
OrderingReport fs_random_oracle(const Pmf& p, const Pmf& q, int s, int trials, uint64_t seed);

}  // namespace thinord
