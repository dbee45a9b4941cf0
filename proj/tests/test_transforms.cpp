#include <doctest.h>

#include <cmath>
#include <vector>

#include "thinord/metrics.hpp"
#include "thinord/pmf.hpp"
#include "thinord/transforms.hpp"

using namespace thinord;

namespace {

double tv_between(const Pmf& a, const Pmf& b) { return total_variation(a, b).value; }

}  // namespace

TEST_CASE("size bias reweights by j over the mean") {
  const Pmf p = binomial_pmf(3, 0.5);
  const Pmf sb = size_bias(p);
  CHECK(sb.min_value() == 1);
  for (long long j = 1; j <= 3; ++j) {
    CHECK(sb.prob(j) == doctest::Approx(j * p.prob(j) / p.mean()).epsilon(1e-14));
  }
  CHECK_THROWS_AS(size_bias(point_mass(0)), Error);
}

TEST_CASE("size bias of binomial drops the degree") {
  // Bin(n,r)* = 1 + Bin(n-1,r)
  const Pmf sb = size_bias(binomial_pmf(6, 0.3));
  const Pmf want = shift(binomial_pmf(5, 0.3), 1);
  for (long long j = want.min_value(); j <= want.max_value(); ++j) {
    CHECK(sb.prob(j) == doctest::Approx(want.prob(j)).epsilon(1e-12));
  }
}

TEST_CASE("thinning scales the mean") {
  const Pmf models[] = {binomial_pmf(7, 0.4), hypergeometric_pmf(6, 3, 4),
                        poisson_pmf(2.0, 1e-13)};
  for (const Pmf& p : models) {
    for (int i = 0; i <= 10; ++i) {
      const double a = i / 10.0;
      const Pmf t = thin(p, a);
      CHECK(t.mean() == doctest::Approx(a * p.mean()).epsilon(1e-12));
    }
  }
}

TEST_CASE("thinning endpoints are exact") {
  const Pmf p = hypergeometric_pmf(5, 2, 3);
  CHECK(tv_between(thin(p, 1.0), p) == doctest::Approx(0.0));
  const Pmf zero = thin(p, 0.0);
  CHECK(zero.prob(0) == doctest::Approx(1.0));
}

TEST_CASE("thinning a poisson stays poisson") {
  const Pmf t = thin(poisson_pmf(2.0, 1e-14), 0.3);
  const Pmf want = poisson_pmf(0.6, 1e-14);
  CHECK(tv_between(t, want) <= 1e-10);
}

TEST_CASE("u_alpha interpolates between the law and its poisson target") {
  const Pmf p = hypergeometric_pmf(4, 2, 2);
  const Pmf at1 = u_alpha(alpha_path(p, 1.0));
  CHECK(tv_between(at1, p) <= 1e-12);
  const Pmf at0 = u_alpha(alpha_path(p, 0.0));
  CHECK(tv_between(at0, poisson_pmf(1.0, 1e-12)) <= 1e-10);
  const Pmf mid = u_alpha(alpha_path(p, 0.4));
  CHECK(mid.mean() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("v operator is the size bias shifted down one") {
  const Pmf p = binomial_pmf(4, 0.3);
  const Pmf v = v_op(p);
  CHECK(v.mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v.min_value() == 0);
  const double lambda = p.mean();
  for (long long j = 0; j <= v.max_value(); ++j) {
    CHECK(v.prob(j) ==
          doctest::Approx((j + 1) * p.prob(j + 1) / lambda).epsilon(1e-12));
  }
  // for a poisson input V is the input itself
  const Pmf z = poisson_pmf(1.3, 1e-14);
  CHECK(tv_between(v_op(z), z) <= 1e-10);
}

TEST_CASE("thinning commutes with the v operator") {
  const Pmf p = hypergeometric_pmf(6, 3, 2);
  for (double a : {0.25, 0.5, 0.75}) {
    const Pmf left = thin(v_op(p), a);
    const Pmf right = v_op(thin(p, a));
    CHECK(tv_between(left, right) <= 1e-12);
  }
}

TEST_CASE("hypergeometric thinning reduces degree") {
  const Pmf p = binomial_pmf(6, 0.4);
  const Pmf h = hyper_thin(p, 6);
  CHECK(h.max_value() <= 5);
  // H_n on Bin(n,r) gives Bin(n-1,r)
  const Pmf want = binomial_pmf(5, 0.4);
  CHECK(tv_between(h, want) <= 1e-12);
  CHECK_THROWS_AS(hyper_thin(binomial_pmf(6, 0.4), 5), Error);
}

TEST_CASE("plus transform and markov step fix the binomial") {
  const Pmf b = binomial_pmf(8, 0.35);
  CHECK(tv_between(markov_step(b, 8, 0.35), b) <= 1e-13);
  const Pmf plus = plus_transform(b, 8, 0.35);
  // Bin(n,r)+ = Bin(n-1,r) + Bern(r) reweighted; fixed point under the full step
  CHECK(plus.max_value() <= 8);
}

TEST_CASE("markov chain converges to the binomial") {
  const Pmf start = point_mass(2);
  const Pmf limit = binomial_pmf(5, 0.4);
  const Pmf x50 = markov_chain(start, 5, 0.4, 50);
  CHECK(tv_between(x50, limit) <= 1e-6);
  const Pmf x500 = markov_chain(start, 5, 0.4, 500);
  CHECK(tv_between(x500, limit) <= 1e-12);
}

TEST_CASE("mixed poisson with a gamma mixing is negative binomial") {
  for (double beta : {0.5, 1.0, 3.0}) {
    for (double q : {0.05, 0.1, 0.3}) {
      const Pmf mp =
          mixed_poisson(MixingDistribution::gamma(beta, q / (1 - q)), 1e-12);
      const Pmf nb = negative_binomial_pmf(beta, q, 1e-14);
      CHECK(tv_between(mp, nb) <= 1e-8);
    }
  }
}

TEST_CASE("mixed poisson with atom mixing is a poisson mixture") {
  const Pmf mp = mixed_poisson(
      MixingDistribution::atoms({{0.5, 0.5}, {1.5, 0.5}}), 1e-14);
  const Pmf want = mixture({{0.5, poisson_pmf(0.5, 1e-14)},
                            {0.5, poisson_pmf(1.5, 1e-14)}});
  CHECK(tv_between(mp, want) <= 1e-12);
}

TEST_CASE("poisson mixtures are preserved along the alpha path") {
  const MixingDistribution mix =
      MixingDistribution::atoms({{0.4, 0.3}, {1.0, 0.4}, {2.0, 0.3}});
  const double lambda = mix.mean();
  const Pmf w = mixed_poisson(mix, 1e-14);
  for (double a : {0.25, 0.5, 0.75}) {
    const Pmf along = u_alpha(alpha_path(w, a, 1e-14));
    std::vector<std::pair<double, double>> moved;
    for (const auto& [v, wt] : mix.atom_list()) {
      moved.emplace_back(a * v + (1 - a) * lambda, wt);
    }
    const Pmf want = mixed_poisson(MixingDistribution::atoms(moved), 1e-14);
    CHECK(tv_between(along, want) <= 1e-10);
  }
}

TEST_CASE("mixed binomial mixtures are not preserved by the chain") {
  // Bin(2, xi) with xi uniform on {0, 1/2}: one markov step with r = 3/4 yields
  // a law whose would-be mixing distribution has negative variance.
  const Pmf w = mixed_binomial(2, MixingDistribution::atoms({{0.0, 0.5}, {0.5, 0.5}}));
  CHECK(w.prob(0) == doctest::Approx(0.625));
  CHECK(w.prob(1) == doctest::Approx(0.25));
  CHECK(w.prob(2) == doctest::Approx(0.125));
  const Pmf stepped = markov_step(w, 2, 0.75);
  CHECK(stepped.prob(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(stepped.prob(1) == doctest::Approx(1.0 / 2.0).epsilon(1e-12));
  CHECK(stepped.prob(2) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  // if stepped were Bin(2, eta): E eta = 5/12 and E eta^2 = 1/6, giving
  // Var(eta) = 1/6 - 25/144 = -1/144 < 0, so no mixing distribution exists.
  const double m1 = stepped.mean() / 2.0;
  const double m2 = stepped.prob(2);
  CHECK(m2 - m1 * m1 == doctest::Approx(-1.0 / 144.0).epsilon(1e-10));
}

TEST_CASE("mixing distribution moments") {
  const MixingDistribution g = MixingDistribution::gamma(2.0, 0.5);
  CHECK(g.mean() == doctest::Approx(1.0).epsilon(1e-12));
  const MixingDistribution b = MixingDistribution::beta(2.0, 3.0);
  CHECK(b.mean() == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(b.within_unit_interval());
  CHECK_FALSE(g.within_unit_interval());
  CHECK_THROWS_AS(MixingDistribution::gamma(-1.0, 1.0), Error);
  CHECK_THROWS_AS(MixingDistribution::atoms({{-0.5, 1.0}}), Error);
}

TEST_CASE("mixed binomial requires mixing within the unit interval") {
  CHECK_THROWS_AS(mixed_binomial(3, MixingDistribution::gamma(1.0, 1.0)), Error);
  const Pmf mb = mixed_binomial(3, MixingDistribution::beta(2.0, 2.0));
  CHECK(mb.mean() == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("lemma residual vanishes for poisson") {
  const double res = lemma1_residual(alpha_path(poisson_pmf(1.0, 1e-14), 0.5, 1e-14));
  CHECK(res <= 1e-10);
}

TEST_CASE("lemma residual small for finite laws") {
  const double res =
      lemma1_residual(alpha_path(hypergeometric_pmf(4, 2, 2), 0.5, 1e-14));
  CHECK(res <= 1e-5);
}

TEST_CASE("binomial lemma residual vanishes on ULC inputs") {
  CHECK(bin_lemma_residual(binomial_pmf(6, 0.3), 6, 0.3) <= 1e-12);
  CHECK(bin_lemma_residual(hypergeometric_pmf(4, 2, 2), 2, 0.5) <= 1e-12);
}
