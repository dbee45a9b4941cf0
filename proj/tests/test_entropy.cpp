#include <doctest.h>

#include <cmath>
#include <vector>

#include "thinord/entropy.hpp"
#include "thinord/pmf.hpp"
#include "thinord/transforms.hpp"

using namespace thinord;

TEST_CASE("entropy of simple laws") {
  CHECK(entropy(point_mass(3)) == doctest::Approx(0.0));
  CHECK(entropy(Pmf::validated(0, {0.5, 0.5})) == doctest::Approx(std::log(2.0)));
  CHECK(entropy(Pmf::validated(0, {0.25, 0.25, 0.25, 0.25})) ==
        doctest::Approx(std::log(4.0)));
  // frozen reference: H(Po(1)) computed by high precision summation
  CHECK(entropy(poisson_pmf(1.0, 1e-18)) == doctest::Approx(1.30484224226).epsilon(1e-9));
  CHECK(poisson_entropy(1.0) == doctest::Approx(1.30484224226).epsilon(1e-9));
  CHECK(poisson_entropy(0.0) == doctest::Approx(0.0));
}

TEST_CASE("relative entropy is nonnegative and vanishes only at equality") {
  const Pmf p = binomial_pmf(5, 0.3);
  const Pmf q = binomial_pmf(5, 0.45);
  CHECK(rel_entropy(p, p) == doctest::Approx(0.0));
  CHECK(rel_entropy(p, q) > 0.0);
  CHECK(rel_entropy(q, p) > 0.0);
  CHECK_THROWS_AS(rel_entropy(binomial_pmf(5, 0.3), binomial_pmf(3, 0.3)), Error);
}

TEST_CASE("entropy decomposes against the poisson reference") {
  // H(P) = Lambda(P) - D(P || Po(lambda)) with the same mean
  const Pmf models[] = {binomial_pmf(6, 0.4), hypergeometric_pmf(8, 3, 4)};
  for (const Pmf& p : models) {
    const double lambda = p.mean();
    const Pmf z = poisson_pmf(lambda, 1e-16);
    const double lhs = entropy(p);
    const double rhs = lambda_functional(p, lambda) - rel_entropy(p, z);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("maximum entropy against the poisson") {
  const BoundReport rep = max_entropy_check_poisson(hypergeometric_pmf(4, 2, 2));
  REQUIRE(rep.exact.has_value());
  CHECK(rep.exact < rep.bound + rep.uncertainty);
  REQUIRE(rep.hypothesis_holds.has_value());
  CHECK(*rep.hypothesis_holds);
  REQUIRE(rep.holds.has_value());
  CHECK(*rep.holds);
  // mixed laws break the hypothesis: verdict is withheld, not asserted
  const BoundReport bad = max_entropy_check_poisson(negative_binomial_pmf(1.0, 0.4, 1e-12));
  REQUIRE(bad.hypothesis_holds.has_value());
  CHECK_FALSE(*bad.hypothesis_holds);
  CHECK_FALSE(bad.holds.has_value());
}

TEST_CASE("maximum entropy against the binomial") {
  const BoundReport rep = max_entropy_check_binomial(hypergeometric_pmf(4, 2, 2), 2, 0.5);
  REQUIRE(rep.holds.has_value());
  CHECK(*rep.holds);
  CHECK_THROWS_AS(max_entropy_check_binomial(binomial_pmf(5, 0.3), 4, 0.3), Error);
  CHECK_THROWS_AS(max_entropy_check_binomial(binomial_pmf(5, 0.3), 5, 0.4), Error);
}

TEST_CASE("compound maximum entropy checks") {
  const Pmf x = Pmf::validated(1, {0.7, 0.3});
  const Pmf w = hypergeometric_pmf(4, 2, 2);
  const Pmf cw = compound(w, x, 1e-14);
  const Pmf cz = compound(poisson_pmf(1.0, 1e-15), x, 1e-15);
  const BoundReport rep = compound_entropy_check_poisson(w, x);
  CHECK(rep.bound == doctest::Approx(entropy(cz)).epsilon(1e-8));
  REQUIRE(rep.exact.has_value());
  CHECK(*rep.exact == doctest::Approx(entropy(cw)).epsilon(1e-10));
  if (rep.holds.has_value()) CHECK(*rep.holds);

  const BoundReport bin = compound_entropy_check_binomial(w, x, 2, 0.5);
  REQUIRE(bin.exact.has_value());
  if (bin.holds.has_value()) CHECK(*bin.holds);
}

TEST_CASE("entropy flow along the alpha path") {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  const FlowReport rep = entropy_flow_alpha(hypergeometric_pmf(4, 2, 2), grid, 1e-14);
  REQUIRE(rep.grid.size() == 11);
  REQUIRE(rep.values.size() == 11);
  // alpha = 0 is the poisson end, alpha = 1 the model itself
  CHECK(rep.values.front() == doctest::Approx(poisson_entropy(1.0)).epsilon(1e-8));
  CHECK(rep.values.back() ==
        doctest::Approx(entropy(hypergeometric_pmf(4, 2, 2))).epsilon(1e-10));
  CHECK(rep.monotone_decreasing);
  CHECK(rep.concave);
}

TEST_CASE("entropy flow rejects bad grids") {
  const Pmf p = binomial_pmf(3, 0.5);
  CHECK_THROWS_AS(entropy_flow_alpha(p, std::vector<double>{0.2, 0.2}, 1e-12), Error);
  CHECK_THROWS_AS(entropy_flow_alpha(p, std::vector<double>{-0.1, 0.5}, 1e-12), Error);
  CHECK_THROWS_AS(entropy_flow_alpha(p, std::vector<double>{}, 1e-12), Error);
}

TEST_CASE("entropy flow along the binomial chain") {
  const std::vector<long long> steps = {0, 1, 2, 3, 4, 30};
  const FlowReport rep = entropy_flow_chain(hypergeometric_pmf(4, 2, 2), 2, 0.5, steps);
  REQUIRE(rep.values.size() == steps.size());
  // chain limit: Bin(2, 1/2); entropy grows toward the maximum entropy law
  CHECK(rep.values.back() == doctest::Approx(entropy(binomial_pmf(2, 0.5))).epsilon(1e-4));
  for (size_t i = 0; i + 1 < rep.values.size(); ++i) {
    CHECK(rep.values[i] <= rep.values[i + 1] + 1e-12);
  }
  CHECK_THROWS_AS(
      entropy_flow_chain(hypergeometric_pmf(4, 2, 2), 2, 0.5, std::vector<long long>{-1, 2}),
      Error);
}
