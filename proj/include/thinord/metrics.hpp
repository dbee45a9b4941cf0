#pragma once

#include <span>

#include "thinord/pmf.hpp"

namespace thinord {

struct MetricSpec {
  int n = 0;     // difference order applied to the distribution functions
  double p = 1;  // ell_p exponent, may be infinity
};

struct MetricValue {
  double value = 0.0;
  double uncertainty = 0.0;  // coarse bound on the truncated-tail contribution
};

// ell_p norm of a finite sequence; p may be infinity.
double seq_norm(std::span<const double> seq, double p);

// Distance ||Delta^n F - Delta^n G||_p between distribution functions, taken
// over {0, 1, ...}. Negative n iterates tail sums instead of differences; the
// whole family is evaluated on the explicit pmf difference sequence, so the
// n <= 0 members coincide with differences of the iterated tail functionals
// h_{1-n}. Inputs with truncated tails yield a nonzero uncertainty.
MetricValue d_np(const Pmf& a, const Pmf& b, MetricSpec spec);

MetricValue total_variation(const Pmf& a, const Pmf& b);  // = d_{1,1} / 2
MetricValue kolmogorov(const Pmf& a, const Pmf& b);       // = d_{0,inf}
MetricValue wasserstein(const Pmf& a, const Pmf& b);      // = d_{0,1}
MetricValue stop_loss(const Pmf& a, const Pmf& b);        // = d_{-1,inf}
MetricValue local_limit(const Pmf& a, const Pmf& b);      // = d_{1,inf}

}  // namespace thinord
