#pragma once

#include <utility>
#include <vector>

#include "thinord/metrics.hpp"
#include "thinord/pmf.hpp"
#include "thinord/reports.hpp"
#include "thinord/transforms.hpp"

namespace thinord {

// Every evaluator returns the closed-form bound next to the exact quantity it
// dominates, so slack is measurable. Bounds are computed even when their
// hypotheses fail; holds is then withheld and hypothesis_holds reports why.

// d_{-k,inf}(W, Po(lambda)) <= 2^{(s-k-1)_+} E[binom(Z+s+1, s+1) -
// binom(W+s+1, s+1)] for k in {-1, ..., s+1}, valid under the order-s
// size-bias comparison (plus factorial-moment domination for s >= 3). At
// s = 1 the gap collapses to (lambda - Var W) / 2.
BoundReport cor_order_bound(const Pmf& p, int s, int k, double tail_eps = 1e-12);

// Poisson approximation in d_{-s,1} and d_{-s,inf}. Thinning routes price the
// distance through d(W, W* - 1); under the order-s comparison the same
// distances are bounded by the factorial-moment gap
// E[lambda binom(W+s, s) - W binom(W+s-1, s)]. There is no sup-norm route at
// s = 0, so that cell is simply absent from the result.
//
// The thinning contraction needs the low-order slots of the difference
// sequence to vanish, so deep routes carry a moment hypothesis: l1 at s >= 2
// (and the gap-l1 route built on it) requires the Poisson factorial-moment
// recursion to order s-1, sup at s >= 3 to order s-2, and the sup-k route at
// k >= 3 to order k-2. For s = 2 the l1 requirement reduces to Var W = E W.
// The l1 route at s <= 1, the sup route at s <= 2, and sup-k at k <= 2 are
// unconditional.
std::vector<BoundReport> thm_pois_bounds(const Pmf& p, int s, double tail_eps = 1e-12);

// Wasserstein distance to Poisson(mean) against (1 ^ 1.15/sqrt(lambda)) *
// (lambda - Var W).
BoundReport dw_var_bound(const Pmf& p, double tail_eps = 1e-12);

enum class TailSide { upper, lower };

// Tail bounds for laws whose size-bias version is dominated: upper tail
// P(W >= lambda + t), lower tail P(W <= lambda - t) (the latter needs
// t < lambda). When a law is supplied its exact tail probability and the
// order hypothesis are evaluated against it.
BoundReport concentration_poisson(double lambda, double t, TailSide side,
                                  const Pmf* exact_law = nullptr);
// Binomial analogue with lambda = n r. The displayed formula's domain ends at
// t = n - lambda: there the optimized bound degenerates to r^n, and beyond it
// the tail is exactly zero.
BoundReport concentration_binomial(long long n, double r, double t, TailSide side,
                                   const Pmf* exact_law = nullptr);

// Mixed Poisson vs Poisson(E xi) in d_{n,1}: |2/(n-2)| E|xi^{(2-n)/2} -
// lambda^{(2-n)/2}|, or E|log(xi/lambda)| at n = 2. Requires strictly
// positive mixing when n >= 1, and the relevant fractional moment must be
// finite (checked analytically for parametric mixings).
BoundReport mp_bound(const MixingDistribution& mix, int n, double tail_eps = 1e-12);

// Total variation version: (E|xi - lambda|)^{1/2 + eps} / lambda^eps for
// eps in [0, 1/2].
BoundReport mp_tv_bound(const MixingDistribution& mix, double eps,
                        double tail_eps = 1e-12);

// E|xi - lambda| for Gamma(beta, q/(1-q)) mixing in closed form:
// 2 q beta^beta e^{-beta} / ((1-q) Gamma(beta)).
double negbin_mean_abs_dev(double beta, double q);
// E|xi - mean| for a general mixing law.
double mixing_mean_abs_dev(const MixingDistribution& mix);

// Negative binomial vs Poisson in total variation: the O(sqrt(q)) bound and
// the O(q) bound, in that order.
std::pair<BoundReport, BoundReport> nb_bounds(double beta, double q,
                                              double tail_eps = 1e-12);

// Polya urn occupancy (r of N balls initially red, c added per draw, m
// draws): Wasserstein distance from the red-draw count to Poisson(m r / N).
// First the size-bias coupling route, then the mixed-Poisson route.
std::pair<BoundReport, BoundReport> polya_bounds(long long N, long long r,
                                                 long long c, long long m);

// d_{-k,inf}(W, Bin(n, r)) <= 2^{(-k)_+ - 1} (n r (1-r) - Var W) for ULC(n)
// laws with mean n r, k in {-1, 0, 1, 2}.
BoundReport binomial_approx_bound(const Pmf& p, long long n, double r, int k);

// Distance from W to its t-step binomial-exchange chain, telescoped through
// the one-step comparison of X_u^+ with X_u^*.
BoundReport binomial_chain_bound(const Pmf& p, long long n, double r, long long t,
                                 MetricSpec spec);

// Entropy of the lightbulb count against H(Po((n-1)/2)) - beta log(2beta/(n+2))
// with beta = 5.47 sqrt(n) exp(-(n+1)/3); needs n >= 10 so that beta <= 1/2.
BoundReport lightbulb_entropy_bound(long long n);

// |H(X) - H(Y)| <= -beta log(beta / k) for laws on k + 1 points differing by
// at most beta <= 1/2 in total variation.
double entropy_diff_bound(double beta, long long k);

// H(Po(lambda)) <= log(2 pi e (lambda + 1/12)) / 2.
double poisson_entropy_upper(double lambda);

}  // namespace thinord
