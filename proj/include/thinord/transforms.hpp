#pragma once

#include <span>
#include <utility>
#include <vector>

#include "thinord/numeric.hpp"
#include "thinord/pmf.hpp"

namespace thinord {

enum class MixKind { atoms, gamma, beta };

// Law of a nonnegative mixing variable: a finite list of atoms, or a Gamma or
// Beta density discretized on demand into quadrature nodes with the density
// folded into the weights.
class MixingDistribution {
 public:
  static MixingDistribution atoms(std::vector<std::pair<double, double>> value_weight);
  static MixingDistribution gamma(double shape, double scale, int quadrature_order = 200);
  static MixingDistribution beta(double a, double b, int quadrature_order = 200);

  MixKind kind() const { return kind_; }
  int quadrature_order() const { return order_; }

  double mean() const;
  bool within_unit_interval() const;

  double gamma_shape() const;
  double gamma_scale() const;
  double beta_a() const;
  double beta_b() const;
  const std::vector<std::pair<double, double>>& atom_list() const;

  // Discrete (value, weight) view. For parametric kinds the upper tail is cut
  // below tail_eps and `kinks` forces panel edges at integrand breakpoints,
  // e.g. at lambda when integrating |xi - lambda|.
  std::vector<QuadNode> nodes(double tail_eps = 1e-12,
                              std::span<const double> kinks = {}) const;

 private:
  MixingDistribution() = default;

  MixKind kind_ = MixKind::atoms;
  std::vector<std::pair<double, double>> atoms_;
  double a_ = 0.0;
  double b_ = 0.0;
  int order_ = 0;
};

// A base law W together with its mean and a thinning level: the input to the
// interpolation W_alpha between W (alpha = 1) and Poisson(mean) (alpha = 0).
struct AlphaPath {
  Pmf base;
  double lambda = 0.0;
  double alpha = 1.0;
  double tail_eps = 1e-12;
};

// Convenience: fills lambda from the base mean.
AlphaPath alpha_path(Pmf base, double alpha, double tail_eps = 1e-12);

// W*(j) = j P(j) / mean. Support starts at 1; a truncated input's unknown
// biased tail is bounded as if it sat within one window width past the cut.
Pmf size_bias(const Pmf& p);

// T_alpha: each of W unit counts survives independently with probability
// alpha. Result is the binomial mixture row-by-row; mean scales to
// alpha * mean.
Pmf thin(const Pmf& p, double alpha);

// U_alpha W = T_alpha W + Po((1 - alpha) lambda), independent. Endpoints are
// returned exactly: the base itself at alpha = 1, Poisson(lambda) at 0.
Pmf u_alpha(const AlphaPath& path);

// V W = W* - 1. Commutes with thinning.
Pmf v_op(const Pmf& p);

// Hypergeometric thinning at degree n: keep a uniformly chosen n-1 of n
// exchangeable slots. result(i) = ((n-i) P(i) + (i+1) P(i+1)) / n on
// {0..n-1}; requires support within {0..n}.
Pmf hyper_thin(const Pmf& p, long long n);

// W+ for a law on {0..n} with mean exactly n r: result(j) =
// (n+1-j) P(j-1) / (n (1-r)) on {1..n}. The mean constraint is what makes
// the weights sum to 1, so it is enforced, not renormalized away.
Pmf plus_transform(const Pmf& p, long long n, double r);

// One step of the birth-death chain on {0..n} with stationary law Bin(n, r):
// p'(i) = [(n+1-i)(s p(i) + r p(i-1)) + (i+1)(s p(i+1) + r p(i))] / (n+1),
// s = 1 - r. Preserves total mass; the mean contracts toward n r.
Pmf markov_step(const Pmf& p, long long n, double r);

// t-fold iteration of markov_step.
Pmf markov_chain(const Pmf& p, long long n, double r, long long t);

// Po(xi) mixed over the mixing law; each Poisson component is truncated at
// tail_eps and the quadrature normalization defect is folded into tail_mass.
Pmf mixed_poisson(const MixingDistribution& mix, double tail_eps = 1e-12);

// Bin(m, xi) mixed over a mixing law supported in [0, 1].
Pmf mixed_binomial(long long m, const MixingDistribution& mix);

// Max over j of the defect in the derivative identity
//   d/dalpha P(W_alpha = j) = (lambda/alpha) Delta[P(W_alpha + 1 = j) - P(W_alpha* = j)],
// with the left side replaced by a central difference of step h. The
// discretization error is O(h^2), so tolerances should sit well above that.
double lemma1_residual(const AlphaPath& path, double h = 1e-4);

// Max over j in {0..n} of the defect in the one-step chain identity
//   P(X=j) - P(step(X)=j) = (n r (1-r)/(n+1)) Delta[P(X+ = j) - P(X* = j)],
// which holds exactly, so the residual is pure rounding.
double bin_lemma_residual(const Pmf& p, long long n, double r);

}  // namespace thinord
