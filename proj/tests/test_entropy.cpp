#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "qentropy/entropy.hpp"

using namespace qentropy;

namespace {
const std::vector<double> kQs{0.0, 0.25, 0.5, 0.9, 0.999, 1.0, 1.001, 1.5, 2.0, 3.0, 4.0};
}

TEST_CASE("tsallis hand values") {
  CHECK(tsallis_entropy(make_dist({0.25, 0.75}), 2.0) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(tsallis_entropy(uniform<double>(2), 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tsallis_entropy(make_dist({1.0}), 2.5) == 0.0);
  for (double q : kQs) {
    for (Eigen::Index n : {2, 3, 7, 16}) {
      CHECK(oracle::rel_err(tsallis_entropy(uniform<double>(n), q), oracle::lnq(double(n), q)) <
            1e-12);
    }
  }
}

TEST_CASE("shannon hand values") {
  CHECK(shannon_entropy(uniform<double>(2)) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(shannon_entropy(make_dist({1.0})) == 0.0);
  CHECK(shannon_entropy(make_dist({0.25, 0.75})) == doctest::Approx(0.5623351446188083).epsilon(1e-14));
}

TEST_CASE("renyi hand values") {
  CHECK(renyi_entropy(make_dist({0.25, 0.75}), 2.0) ==
        doctest::Approx(-std::log(0.625)).epsilon(1e-14));
  CHECK(renyi_entropy(make_dist({1.0}), 0.5) == 0.0);
  for (double q : kQs) {
    CHECK(renyi_entropy(uniform<double>(5), q) == doctest::Approx(std::log(5.0)).epsilon(1e-13));
  }
  CHECK(renyi_entropy(make_dist({0.25, 0.75}), 1.0) ==
        doctest::Approx(shannon_entropy(make_dist({0.25, 0.75}))).epsilon(1e-15));
}

TEST_CASE("bridge hand values") {
  const auto b = renyi_tsallis_bridge(make_dist({0.25, 0.75}), 2.0);
  CHECK(b.lhs == doctest::Approx(1.6).epsilon(1e-14));
  CHECK(b.rhs == doctest::Approx(1.6).epsilon(1e-14));
  const auto u = renyi_tsallis_bridge(uniform<double>(6), 0.5);
  CHECK(u.lhs == doctest::Approx(6.0).epsilon(1e-13));
  CHECK(u.rhs == doctest::Approx(6.0).epsilon(1e-13));
  const auto one = renyi_tsallis_bridge(make_dist({1.0}), 3.0);
  CHECK(one.lhs == 1.0);
  CHECK(one.rhs == 1.0);
}

TEST_CASE("random inputs against oracle, range and bridge") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 16;
    const auto w = oracle::dirichlet(n, rng);
    const auto p = make_dist(w);
    for (double q : kQs) {
      const double h = tsallis_entropy(p, q);
      CHECK(oracle::rel_err(h, oracle::tsallis(w, q)) < 1e-10);
      CHECK(oracle::rel_err(renyi_entropy(p, q), oracle::renyi(w, q)) < 1e-10);
      CHECK(h >= -1e-15);
      CHECK(h <= oracle::lnq(double(n), q) + 1e-12);
      CHECK(renyi_tsallis_bridge(p, q).relative_residual() <= 1e-10);
    }
  }
}

TEST_CASE("q -> 1 continuity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = make_dist(oracle::dirichlet(2 + rng() % 15, rng));
    for (double q : {1.0 - 1e-6, 1.0 + 1e-6}) {
      CHECK(std::abs(tsallis_entropy(p, q) - shannon_entropy(p)) <= 1e-5);
      CHECK(std::abs(renyi_entropy(p, q) - shannon_entropy(p)) <= 1e-5);
    }
  }
}

TEST_CASE_TEMPLATE("entropy in other scalar types", T, long double) {
  const auto p = make_dist<T>({T(0.25), T(0.75)});
  CHECK(std::abs(static_cast<double>(tsallis_entropy<T>(p, T(2)) - T(0.375))) < 1e-17);
}
