#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "thinord/metrics.hpp"
#include "thinord/pmf.hpp"

using namespace thinord;

namespace {

double direct_tv(const Pmf& a, const Pmf& b) {
  const long long hi = std::max(a.max_value(), b.max_value());
  double s = 0.0;
  for (long long j = 0; j <= hi; ++j) s += std::abs(a.prob(j) - b.prob(j));
  return 0.5 * s;
}

double cdf(const Pmf& p, long long j) {
  double s = 0.0;
  for (long long i = p.min_value(); i <= j; ++i) s += p.prob(i);
  return s;
}

double direct_kolmogorov(const Pmf& a, const Pmf& b) {
  const long long hi = std::max(a.max_value(), b.max_value());
  double worst = 0.0;
  for (long long j = 0; j <= hi; ++j) worst = std::max(worst, std::abs(cdf(a, j) - cdf(b, j)));
  return worst;
}

double direct_wasserstein(const Pmf& a, const Pmf& b) {
  const long long hi = std::max(a.max_value(), b.max_value());
  double s = 0.0;
  for (long long j = 0; j <= hi; ++j) s += std::abs(cdf(a, j) - cdf(b, j));
  return s;
}

double stop_loss_transform(const Pmf& p, long long j) {
  double s = 0.0;
  for (long long i = p.min_value(); i <= p.max_value(); ++i)
    s += std::max(0.0, static_cast<double>(i - j)) * p.prob(i);
  return s;
}

double direct_stop_loss(const Pmf& a, const Pmf& b) {
  const long long hi = std::max(a.max_value(), b.max_value());
  double worst = 0.0;
  for (long long j = 0; j <= hi + 1; ++j)
    worst = std::max(worst, std::abs(stop_loss_transform(a, j) - stop_loss_transform(b, j)));
  return worst;
}

const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("named metrics match direct evaluation") {
  const Pmf pairs[][2] = {
      {binomial_pmf(5, 0.3), poisson_pmf(1.5, 1e-13)},
      {hypergeometric_pmf(6, 3, 4), binomial_pmf(3, 0.5)},
      {point_mass(2), binomial_pmf(4, 0.5)},
  };
  for (const auto& pr : pairs) {
    const Pmf& a = pr[0];
    const Pmf& b = pr[1];
    CHECK(total_variation(a, b).value == doctest::Approx(direct_tv(a, b)).epsilon(1e-12));
    CHECK(kolmogorov(a, b).value == doctest::Approx(direct_kolmogorov(a, b)).epsilon(1e-12));
    CHECK(wasserstein(a, b).value == doctest::Approx(direct_wasserstein(a, b)).epsilon(1e-12));
    CHECK(stop_loss(a, b).value == doctest::Approx(direct_stop_loss(a, b)).epsilon(1e-10));
    const long long hi = std::max(a.max_value(), b.max_value());
    double ll = 0.0;
    for (long long j = 0; j <= hi; ++j) ll = std::max(ll, std::abs(a.prob(j) - b.prob(j)));
    CHECK(local_limit(a, b).value == doctest::Approx(ll).epsilon(1e-12));
  }
}

TEST_CASE("metric identities between named and indexed forms") {
  const Pmf a = binomial_pmf(6, 0.4);
  const Pmf b = poisson_pmf(2.4, 1e-13);
  CHECK(total_variation(a, b).value ==
        doctest::Approx(0.5 * d_np(a, b, {1, 1.0}).value).epsilon(1e-13));
  CHECK(kolmogorov(a, b).value == doctest::Approx(d_np(a, b, {0, kInf}).value).epsilon(1e-13));
  CHECK(wasserstein(a, b).value == doctest::Approx(d_np(a, b, {0, 1.0}).value).epsilon(1e-13));
  CHECK(stop_loss(a, b).value == doctest::Approx(d_np(a, b, {-1, kInf}).value).epsilon(1e-13));
  CHECK(local_limit(a, b).value == doctest::Approx(d_np(a, b, {1, kInf}).value).epsilon(1e-13));
}

TEST_CASE("metrics vanish on identical inputs and are symmetric") {
  const Pmf a = binomial_pmf(5, 0.3);
  const Pmf b = hypergeometric_pmf(10, 3, 4);
  const MetricSpec specs[] = {{1, 1.0}, {0, kInf}, {0, 1.0}, {-1, kInf}, {2, 2.0}, {-2, 1.0}};
  for (const MetricSpec& spec : specs) {
    CHECK(d_np(a, a, spec).value == doctest::Approx(0.0));
    CHECK(d_np(a, b, spec).value == doctest::Approx(d_np(b, a, spec).value).epsilon(1e-13));
  }
}

TEST_CASE("triangle inequality on small supports") {
  const Pmf a = binomial_pmf(4, 0.2);
  const Pmf b = binomial_pmf(4, 0.5);
  const Pmf c = binomial_pmf(4, 0.8);
  const MetricSpec specs[] = {{1, 1.0}, {0, kInf}, {0, 1.0}, {2, kInf}, {-1, 1.0}};
  for (const MetricSpec& spec : specs) {
    const double ab = d_np(a, b, spec).value;
    const double bc = d_np(b, c, spec).value;
    const double ac = d_np(a, c, spec).value;
    CHECK(ac <= ab + bc + 1e-12);
  }
}

TEST_CASE("shift invariance for difference orders zero and one") {
  const Pmf a = binomial_pmf(5, 0.3);
  const Pmf b = hypergeometric_pmf(8, 3, 4);
  for (int n = 0; n <= 1; ++n) {
    for (double p : {1.0, 2.0, kInf}) {
      const double base = d_np(a, b, {n, p}).value;
      const double moved = d_np(shift(a, 3), shift(b, 3), {n, p}).value;
      CHECK(moved == doctest::Approx(base).epsilon(1e-12));
    }
  }
}

TEST_CASE("second differences pick up a boundary term under shifts") {
  // Sequences are anchored at the origin, so shifting both laws drags the
  // point-mass gap at the old origin into the second-difference window. The
  // new norm is exactly the old norm joined with that one extra term.
  const Pmf a = binomial_pmf(5, 0.3);
  const Pmf b = hypergeometric_pmf(8, 3, 4);
  const double edge = std::abs(a.prob(0) - b.prob(0));
  const double base1 = d_np(a, b, {2, 1.0}).value;
  const double moved1 = d_np(shift(a, 3), shift(b, 3), {2, 1.0}).value;
  CHECK(moved1 == doctest::Approx(base1 + edge).epsilon(1e-12));
  const double base2 = d_np(a, b, {2, 2.0}).value;
  const double moved2 = d_np(shift(a, 3), shift(b, 3), {2, 2.0}).value;
  CHECK(moved2 * moved2 == doctest::Approx(base2 * base2 + edge * edge).epsilon(1e-12));
  const double base_sup = d_np(a, b, {2, kInf}).value;
  const double moved_sup = d_np(shift(a, 3), shift(b, 3), {2, kInf}).value;
  CHECK(moved_sup == doctest::Approx(std::max(base_sup, edge)).epsilon(1e-12));
}

TEST_CASE("sup norm never exceeds the l1 norm") {
  const Pmf a = binomial_pmf(6, 0.35);
  const Pmf b = poisson_pmf(2.1, 1e-13);
  for (int n : {-2, -1, 0, 1, 2}) {
    CHECK(d_np(a, b, {n, kInf}).value <= d_np(a, b, {n, 1.0}).value + 1e-13);
  }
}

TEST_CASE("uncertainty tracks truncated tails") {
  const Pmf a = poisson_pmf(1.0, 1e-6);
  const Pmf b = poisson_pmf(1.2, 1e-6);
  const MetricValue v = total_variation(a, b);
  CHECK(v.uncertainty > 0.0);
  CHECK(v.uncertainty < 1e-4);
  const MetricValue exact = total_variation(binomial_pmf(3, 0.5), binomial_pmf(3, 0.5));
  CHECK(exact.uncertainty == doctest::Approx(0.0));
}

TEST_CASE("stop loss distance of mean shifted laws") {
  // E(X - j)_+ differences for X = delta_2 vs delta_3 peak at 1
  const MetricValue v = stop_loss(point_mass(2), point_mass(3));
  CHECK(v.value == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("iterated tail sums count each level once") {
  // delta_2 vs delta_0. Stop-loss gaps E(X - j)_+ are {2, 1, 0, ...}; summing
  // once more gives {3, 1, 0, ...}. Each value enters the norm exactly once.
  const Pmf a = point_mass(2);
  const Pmf b = point_mass(0);
  CHECK(d_np(a, b, {-1, 1.0}).value == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(d_np(a, b, {-1, kInf}).value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(d_np(a, b, {-2, 1.0}).value == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(d_np(a, b, {-2, kInf}).value == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("invalid specs are rejected") {
  const Pmf a = binomial_pmf(2, 0.5);
  CHECK_THROWS_AS(d_np(a, a, {0, 0.5}), Error);
  CHECK_THROWS_AS(d_np(a, a, {1, -1.0}), Error);
  // deeply negative orders are legal, just increasingly conservative
  CHECK(d_np(a, a, {-5, 1.0}).value == doctest::Approx(0.0));
}
