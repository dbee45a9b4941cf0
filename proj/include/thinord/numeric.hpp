#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace thinord {

// Compensated accumulator for long sums with cancellation.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

double kahan_total(std::span<const double> xs);

// binom(a, b) with the convention that it vanishes whenever b < 0 or b > a.
// In particular binom(a, 0) = 0 for a < 0; this is what makes the iterated
// tail functionals reduce to survival functions at the lowest order.
double binom_coeff(long long a, long long b);

double log_choose(long long n, long long k);  // requires 0 <= k <= n
double log_poisson_pmf(long long j, double lambda);

struct QuadNode {
  double x;
  double w;
};

// Gauss-Legendre rule on [-1, 1].
std::vector<QuadNode> gauss_legendre(int order);

// Nodes and weights for integrating against a Gamma(shape, scale) density;
// the density is folded into the weights. The positive axis is cut at a point
// with tail mass below tail_eps, then split into panels graded geometrically
// toward 0 (a power substitution absorbs the t^{shape-1} endpoint factor) and
// capped at a few scale lengths near the cut. `order` is a node budget hint;
// `breakpoints` forces panel edges at integrand kinks.
std::vector<QuadNode> gamma_quadrature(double shape, double scale, int order,
                                       double tail_eps,
                                       std::span<const double> breakpoints = {});

// Same for a Beta(a, b) density on (0, 1), graded toward both endpoints.
std::vector<QuadNode> beta_quadrature(double a, double b, int order,
                                      std::span<const double> breakpoints = {});

}  // namespace thinord
