#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace thinord {

enum class Errc {
  negative_weight,
  not_normalized,
  invalid_parameter,
  negative_support,
  support_exceeds_degree,
  zero_mean,
  alpha_out_of_range,
  mean_mismatch,
  mixing_support_out_of_range,
  support_mismatch,
  hypothesis_failed,
  too_large,
  invalid_threshold,
  invalid_t,
  nonpositive_mixing,
  integrability_failure,
  invalid_n,
  invalid_beta,
  divergent_tail_sum,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& msg);

struct MomentSummary {
  double mean;
  double variance;
  long long n_trunc;  // retained support size
};

// Distribution of a non-negative integer random variable on a contiguous
// support window [offset, offset + size). tail_mass is an upper bound on
// probability truncated away above the window; exact laws carry 0. Weights
// are never renormalized: mass they lose to truncation stays visible in
// tail_mass so downstream tolerances can account for it.
class Pmf {
 public:
  Pmf() : offset_(0), weights_{1.0} {}  // point mass at 0

  // User-facing constructor: validates weight signs and total mass.
  static Pmf validated(long long offset, std::vector<double> weights);
  // Operator outputs: clips sub-epsilon negatives, trims denormal edges,
  // records the given tail bound. Total mass is not re-checked.
  static Pmf raw(long long offset, std::vector<double> weights, double tail_mass);

  long long offset() const { return offset_; }
  long long size() const { return static_cast<long long>(weights_.size()); }
  long long min_value() const { return offset_; }
  long long max_value() const { return offset_ + size() - 1; }
  const std::vector<double>& weights() const { return weights_; }
  double tail_mass() const { return tail_mass_; }

  double prob(long long j) const {
    if (j < offset_ || j > max_value()) return 0.0;
    return weights_[static_cast<size_t>(j - offset_)];
  }
  double mass() const;               // sum of retained weights
  double survival(long long j) const;  // retained mass at values >= j

  double mean() const;
  double variance() const;
  MomentSummary moments() const;
  double factorial_moment(long long k) const;  // E binom(W, k) over retained mass

 private:
  Pmf(long long offset, std::vector<double> weights, double tail_mass)
      : offset_(offset), weights_(std::move(weights)), tail_mass_(tail_mass) {}

  long long offset_ = 0;
  std::vector<double> weights_;
  double tail_mass_ = 0.0;
};

Pmf point_mass(long long j);

// Families. tail_eps bounds the truncated upper-tail mass of the countably
// supported ones; the recorded tail_mass is the analytic bound actually used.
Pmf poisson_pmf(double lambda, double tail_eps = 1e-12);
Pmf binomial_pmf(long long n, double r);
Pmf bernoulli_pmf(double p);
Pmf negative_binomial_pmf(double beta, double q, double tail_eps = 1e-12);
Pmf beta_binomial_pmf(long long m, double a, double b);
// W = overlap of a uniform n-subset with a fixed m-subset of an N-set.
Pmf hypergeometric_pmf(long long N, long long n, long long m);

enum class Parity { even, odd };
// Mass of Bin(n-1, 1/2) at {j-1, j} merged onto the lattice of the given
// parity; support is a single parity class.
Pmf clubbed_binomial_pmf(long long n, Parity parity);

Pmf convolve(const Pmf& a, const Pmf& b);
Pmf mixture(const std::vector<std::pair<double, Pmf>>& components);
Pmf shift(const Pmf& p, long long c);

// Shape predicates. Quadratic inequalities are tested with multiplicative
// tolerance 1e-12; entries below 1e-13 of the peak are treated as truncation
// dust and excluded (additively built pmfs carry no relative accuracy there).
bool is_log_concave(const Pmf& p);
bool is_ulc(const Pmf& p, long long degree);  // support must fit {0..degree}
bool is_ulc_inf(const Pmf& p);

// Law of X_1 + ... + X_W for W ~ p, X_i ~ x iid, all independent. Trailing
// mass up to tail_eps is folded into tail_mass.
Pmf compound(const Pmf& p, const Pmf& x, double tail_eps = 1e-12);

}  // namespace thinord
