#pragma once

#include <span>
#include <vector>

#include "thinord/pmf.hpp"
#include "thinord/reports.hpp"

namespace thinord {

// Joint law of n Bernoulli indicators, n <= 20. probs is indexed by outcome
// bitmask (bit i is the value of X_{i+1}) and must sum to 1 within 1e-12.
struct JointIndicatorTable {
  long long n = 0;
  std::vector<double> probs;
};

JointIndicatorTable joint_table(long long n, std::vector<double> probs);

// m balls dropped uniformly into n urns; counts urns holding at least c
// balls. Exact enumeration of all n^m placements, so n^m <= 1e7 is enforced.
Pmf occupancy_model(long long m, long long n, long long c);

// Polya sampling from an urn starting with one ball of each of n colours:
// each of m draws returns the ball plus one more of its colour. Counts the
// colours never seen. Exact via the unseen-count chain: an unseen colour
// still has exactly one ball, so u drops to u - 1 with chance u / (n + t).
Pmf polya_unseen(long long n_colours, long long m);

// Row k of a rows x n matrix gets s[k] ones placed uniformly without
// replacement. Counts columns with at most m_threshold ones. Exact dynamic
// program over the histogram of column totals (columns are exchangeable).
Pmf matrix_occupancy(long long rows, long long n, std::span<const long long> s,
                     long long m_threshold);

// sigma uniform over permutations of {1..n}; counts indices with
// sigma_i <= a_i. Exact via rook-polynomial counting on the sorted staircase
// board plus inclusion-exclusion, n <= 20.
Pmf permutation_threshold(std::span<const long long> a);

// n bulbs start off; on day r, r uniformly chosen bulbs toggle. Law of the
// number on after day n, by dynamic programming on the on-count. For
// n = 0 or 3 mod 4 the support is even, otherwise odd.
Pmf lightbulb(long long n);

// Law of W = X_1 + ... + X_n under the table.
Pmf indicator_sum(const JointIndicatorTable& t);

// Total negative dependence: Cov(X_i, 1{W - X_i >= t}) <= tolerance for every
// coordinate i and threshold t. Sufficient for the full increasing-function
// form because increasing f on {0,1} is affine and increasing g is a
// nonnegative combination of threshold indicators.
OrderingReport tnd_check(const JointIndicatorTable& t, double tolerance = 1e-12);

// Negative relation: E[phi(rest) | X_i = 1] <= E[phi(rest)] for every i and
// every increasing phi. Exact mode enumerates all monotone indicator
// functions of the remaining coordinates (n <= 5); the randomized mode
// samples random upward-closed indicator sets instead.
OrderingReport nr_check_exact(const JointIndicatorTable& t, double tolerance = 1e-12);
OrderingReport nr_check_randomized(const JointIndicatorTable& t, long long trials,
                                   unsigned long long seed,
                                   double tolerance = 1e-12);

// Two draws without replacement from an urn with two red and two black balls;
// X_i indicates draw i is red. The smallest nontrivial negatively related
// pair; its sum is Hypergeometric(4, 2, 2).
JointIndicatorTable without_replacement_indicators();

}  // namespace thinord
