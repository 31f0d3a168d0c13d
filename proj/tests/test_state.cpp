#include "weakinfo/state.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "weakinfo/oracle.hpp"

using namespace weakinfo;

TEST_CASE("make_prior normalizes weights") {
  auto p = make_prior({1.0, 1.0, 1.0});
  CHECK(p.dim() == 3);
  for (int n = 0; n < 3; ++n)
    CHECK(p[n] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // The fig1c preset prior is already normalized and passes through unchanged.
  auto q = make_prior({0.5, 0.3, 0.2});
  CHECK(q[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q[1] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(q[2] == doctest::Approx(0.2).epsilon(1e-15));

  auto r = make_prior({2.0, 0.0, 0.0, 0.0});
  CHECK(r[0] == 1.0);
  CHECK(r[3] == 0.0);
}

TEST_CASE("make_prior rejects bad input") {
  CHECK_THROWS_AS(make_prior({}), Error);
  CHECK_THROWS_AS(make_prior({1.0}), Error);
  CHECK_THROWS_AS(make_prior({0.5, -0.1}), Error);
  CHECK_THROWS_AS(make_prior({0.0, 0.0}), Error);
  CHECK_THROWS_AS(make_prior({1.0, std::nan("")}), Error);

  try {
    make_prior({0.0, 0.0, 0.0});
    FAIL("expected AllZero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::all_zero);
  }
}

TEST_CASE("prior_from_amplitudes squares magnitudes") {
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto p = prior_from_amplitudes(AmplitudeVector({inv_sqrt2, inv_sqrt2}));
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-15));

  auto ground = prior_from_amplitudes(AmplitudeVector({1.0, 0.0}));
  CHECK(ground[0] == 1.0);
  CHECK(ground[1] == 0.0);

  // The fig1b preset prior via its amplitudes.
  auto b = prior_from_amplitudes(
      AmplitudeVector({std::sqrt(0.2), std::sqrt(0.4), std::sqrt(0.4)}));
  CHECK(b[0] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(b[1] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(b[2] == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("amplitude vector validates norm and sign") {
  CHECK_THROWS_AS(AmplitudeVector({0.5, 0.5}), Error);
  CHECK_THROWS_AS(AmplitudeVector({-1.0, 0.0}), Error);
  CHECK_NOTHROW(AmplitudeVector({0.0, 1.0}));
}

TEST_CASE("support lists levels with positive mass") {
  CHECK(support(make_prior({1, 1, 1})) == std::vector<int>{0, 1, 2});
  CHECK(support(make_prior({1, 0})) == std::vector<int>{0});
  CHECK(support(make_prior({0.5, 0.0, 0.5})) == std::vector<int>{0, 2});
}

TEST_CASE("make_prior is idempotent on random weights") {
  oracle::SplitMix64 rng(2024);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t dim = 2 + rng.next() % 7;
    std::vector<double> w(dim);
    for (auto& x : w) x = rng.next_double() * 10.0;
    w[rng.next() % dim] += 1e-6;  // keep the sum positive
    auto once = make_prior(w);
    auto twice = make_prior(once.probs());
    for (std::size_t n = 0; n < dim; ++n)
      CHECK(std::abs(once[n] - twice[n]) <= 1e-12);
  }
}

TEST_CASE("square root of a prior reproduces it through amplitudes") {
  oracle::SplitMix64 rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    std::size_t dim = 2 + rng.next() % 5;
    std::vector<double> w(dim);
    for (auto& x : w) x = rng.next_double() + 1e-3;
    auto prior = make_prior(w);
    std::vector<double> mags(dim);
    for (std::size_t n = 0; n < dim; ++n) mags[n] = std::sqrt(prior[n]);
    auto round_trip = prior_from_amplitudes(AmplitudeVector(mags));
    for (std::size_t n = 0; n < dim; ++n)
      CHECK(round_trip[n] == doctest::Approx(prior[n]).epsilon(1e-14));
  }
}
