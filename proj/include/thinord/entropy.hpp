#pragma once

#include <span>

#include "thinord/pmf.hpp"
#include "thinord/reports.hpp"

namespace thinord {

// Shannon entropy in nats, with 0 log 0 = 0.
double entropy(const Pmf& p);

// Relative entropy D(p || q) over the retained supports. p putting mass where
// q has none is a support mismatch, not infinity.
double rel_entropy(const Pmf& p, const Pmf& q);

// -E_p[log Po(lambda)], with the Poisson log-pmf evaluated in closed form, so
// no truncation of the reference law is involved. Satisfies
//   entropy(p) = lambda_functional(p, mean(p)) - rel_entropy(p, Po(mean(p))).
double lambda_functional(const Pmf& p, double lambda);

// H(Po(lambda)) by series summation (truncation far below double precision).
double poisson_entropy(double lambda);

// Entropy along alpha -> U_alpha(base): the base itself at alpha = 1,
// Poisson(mean) at alpha = 0. Grid must be strictly increasing within [0, 1].
// Monotonicity and concavity flags compare divided differences against 1e-8.
FlowReport entropy_flow_alpha(const Pmf& base, std::span<const double> alphas,
                              double tail_eps = 1e-12);

// Entropy at the given step counts of the degree-n chain. Exploratory: only
// the endpoint comparison carries a theorem, so no flag here is a claim.
FlowReport entropy_flow_chain(const Pmf& base, long long n, double r,
                              std::span<const long long> steps);

// H(p) <= H(Po(mean)): the maximum-entropy comparison under the size-bias
// ordering hypothesis. The hypothesis is verified and reported; holds is
// withheld when it fails.
BoundReport max_entropy_check_poisson(const Pmf& p);

// H(p) <= H(Bin(n, r)) for ULC(n) laws with mean n r (enforced).
BoundReport max_entropy_check_binomial(const Pmf& p, long long n, double r);

// Compound comparisons H(sum_{i<=W} X_i) <= H(sum_{i<=Z} X_i), valid when the
// compound target is log-concave. Log-concavity is verified directly on the
// computed window, with the analytic shortcut lambda P(X=1)^2 >= 2 P(X=2)
// (for log-concave X) accepted for the Poisson target; holds is withheld when
// neither route verifies it.
BoundReport compound_entropy_check_poisson(const Pmf& p, const Pmf& x);
BoundReport compound_entropy_check_binomial(const Pmf& p, const Pmf& x, long long n,
                                            double r);

}  // namespace thinord
