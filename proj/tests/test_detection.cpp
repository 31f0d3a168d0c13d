#include "weakinfo/detection.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "weakinfo/oracle.hpp"
#include "weakinfo/state.hpp"

using namespace weakinfo;

namespace {

// Direct-domain reference: Pascal-triangle binomial times plain powers.
// Deliberately avoids the library's log-domain path.
double direct_binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * double(n - i) / double(i + 1);
  return c;
}

double direct_likelihood(int n, int k, double tau) {
  if (k > n) return 0.0;
  double q = 1.0 - std::exp(-tau);
  return direct_binom(n, k) * std::pow(q, k) * std::exp(-tau * double(n - k));
}

double direct_outcome_prob(const PriorState& prior, int k, double tau) {
  double p = 0.0;
  for (std::size_t n = 0; n < prior.dim(); ++n)
    p += prior[n] * direct_likelihood(static_cast<int>(n), k, tau);
  return p;
}

}  // namespace

TEST_CASE("detection context and survival probability") {
  auto ctx0 = DetectionContext::from_tau(0.0);
  CHECK(ctx0.survival_prob() == 1.0);
  CHECK(ctx0.log_survival() == 0.0);

  auto half = DetectionContext::from_tau(std::log(2.0));
  CHECK(half.survival_prob() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(survival_prob(half) == half.survival_prob());

  auto deep = DetectionContext::from_tau(50.0);
  CHECK(deep.survival_prob() > 0.0);
  CHECK(deep.survival_prob() == doctest::Approx(std::exp(-50.0)).epsilon(1e-14));
  CHECK(deep.log_survival() == -50.0);

  auto rt = DetectionContext::from_rate_time(2.5, 3.0);
  CHECK(rt.tau() == 15.0);
  CHECK(rt.gamma() == 2.5);

  CHECK_THROWS_AS(DetectionContext::from_tau(-1.0), Error);
  CHECK_THROWS_AS(DetectionContext::from_rate_time(0.0, 1.0), Error);
  CHECK_THROWS_AS(DetectionContext::from_rate_time(1.0, -2.0), Error);
}

TEST_CASE("outcome likelihood closed form") {
  auto half = DetectionContext::from_tau(std::log(2.0));

  CHECK(outcome_likelihood(0, 0, half) == 1.0);
  CHECK(outcome_likelihood(0, 0, DetectionContext::from_tau(17.0)) == 1.0);
  CHECK(outcome_likelihood(2, 1, half) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(outcome_likelihood(1, 2, half) == 0.0);
  CHECK(outcome_likelihood(1, 2, DetectionContext::from_tau(0.3)) == 0.0);
}

TEST_CASE("likelihood equals direct-domain binomial law") {
  for (double tau : {1e-9, 1e-4, 0.1, std::log(2.0), 0.7, 2.0, 10.0, 30.0}) {
    auto ctx = DetectionContext::from_tau(tau);
    for (int n = 0; n <= 8; ++n) {
      double row_sum = 0.0;
      for (int k = 0; k <= n; ++k) {
        double lib = outcome_likelihood(n, k, ctx);
        double ref = direct_likelihood(n, k, tau);
        row_sum += lib;
        if (ref > 1e-300)
          CHECK(lib == doctest::Approx(ref).epsilon(1e-12));
      }
      CHECK(std::abs(row_sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("outcome probability") {
  auto uniform3 = make_prior({1, 1, 1});
  auto half = DetectionContext::from_tau(std::log(2.0));

  CHECK(outcome_prob(uniform3, 0, DetectionContext::from_tau(0.0)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  // p(y_0) = (1/3)(1 + 1/2 + 1/4) = 7/12 at e^{-tau} = 1/2
  CHECK(outcome_prob(uniform3, 0, half) ==
        doctest::Approx(7.0 / 12.0).epsilon(1e-13));
  // p(y_1) = 0.3/2 + 0.2*2*(1/2)(1/2) = 0.25
  auto fig1c = make_prior({0.5, 0.3, 0.2});
  CHECK(outcome_prob(fig1c, 1, half) == doctest::Approx(0.25).epsilon(1e-13));
  // k beyond the top level is impossible, not an error
  CHECK(outcome_prob(uniform3, 3, half) == 0.0);
  CHECK(outcome_prob(uniform3, 1, DetectionContext::from_tau(0.0)) == 0.0);
}

TEST_CASE("outcome probabilities sum to one over k (POVM completeness)") {
  oracle::SplitMix64 rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    std::size_t dim = 2 + rng.next() % 7;
    std::vector<double> w(dim);
    for (auto& x : w) x = rng.next_double() + 1e-4;
    auto prior = make_prior(w);
    for (double tau : {0.0, 0.05, 0.5, 2.0, 10.0, 50.0}) {
      auto ctx = DetectionContext::from_tau(tau);
      double total = 0.0;
      for (int k = 0; k <= prior.top_level(); ++k)
        total += outcome_prob(prior, k, ctx);
      CHECK(std::abs(total - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("null outcome probability is nonincreasing in tau") {
  auto prior = make_prior({0.2, 0.4, 0.4});
  double prev = 1.0;
  for (int i = 0; i <= 300; ++i) {
    double tau = 0.1 * i;
    double p = outcome_prob(prior, 0, DetectionContext::from_tau(tau));
    CHECK(p <= prev + 1e-15);
    prev = p;
  }
}

TEST_CASE("log and direct paths agree below tau = 30") {
  oracle::SplitMix64 rng(4242);
  for (int rep = 0; rep < 40; ++rep) {
    std::size_t dim = 2 + rng.next() % 5;
    std::vector<double> w(dim);
    for (auto& x : w) x = rng.next_double() + 1e-3;
    auto prior = make_prior(w);
    double tau = rng.next_double() * 30.0;
    auto ctx = DetectionContext::from_tau(tau);
    for (int k = 0; k <= prior.top_level(); ++k) {
      double lib = outcome_prob(prior, k, ctx);
      double ref = direct_outcome_prob(prior, k, tau);
      if (ref > 0.0)
        CHECK(lib == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("posterior follows Bayes' rule") {
  auto uniform3 = make_prior({1, 1, 1});
  auto half = DetectionContext::from_tau(std::log(2.0));

  SUBCASE("tau = 0 leaves the prior unchanged") {
    auto post = posterior(uniform3, 0, DetectionContext::from_tau(0.0));
    for (std::size_t n = 0; n < 3; ++n)
      CHECK(post[n] == doctest::Approx(uniform3[n]).epsilon(1e-14));
  }

  SUBCASE("null result tilts toward the ground state") {
    auto post = posterior(uniform3, 0, half);
    CHECK(post[0] == doctest::Approx(4.0 / 7.0).epsilon(1e-13));
    CHECK(post[1] == doctest::Approx(2.0 / 7.0).epsilon(1e-13));
    CHECK(post[2] == doctest::Approx(1.0 / 7.0).epsilon(1e-13));
  }

  SUBCASE("maximal click count pins the top level") {
    auto uniform4 = make_prior({1, 1, 1, 1});
    auto post = posterior(uniform4, 3, DetectionContext::from_tau(0.8));
    CHECK(post[0] == 0.0);
    CHECK(post[1] == 0.0);
    CHECK(post[2] == 0.0);
    CHECK(post[3] == 1.0);
  }

  SUBCASE("impossible outcomes raise") {
    CHECK_THROWS_AS(posterior(uniform3, 5, half), Error);
    try {
      posterior(uniform3, 1, DetectionContext::from_tau(0.0));
      FAIL("expected ImpossibleOutcome");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::impossible_outcome);
    }
  }

  SUBCASE("elementwise Bayes consistency on random inputs") {
    oracle::SplitMix64 rng(11);
    for (int rep = 0; rep < 60; ++rep) {
      std::size_t dim = 2 + rng.next() % 6;
      std::vector<double> w(dim);
      for (auto& x : w) x = rng.next_double() + 1e-3;
      auto prior = make_prior(w);
      double tau = 0.01 + rng.next_double() * 5.0;
      auto ctx = DetectionContext::from_tau(tau);
      int k = int(rng.next() % dim);
      double evidence = outcome_prob(prior, k, ctx);
      if (evidence == 0.0) continue;
      auto post = posterior(prior, k, ctx);
      double sum = 0.0;
      for (std::size_t n = 0; n < dim; ++n) {
        double expected =
            prior[n] * outcome_likelihood(int(n), k, ctx) / evidence;
        CHECK(std::abs(post[n] - expected) <= 1e-12);
        sum += post[n];
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("post-measurement amplitudes square to the posterior") {
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto half = DetectionContext::from_tau(std::log(2.0));

  SUBCASE("ground state is a fixed point of the null-result operator") {
    auto a = post_measurement_amplitudes(AmplitudeVector({1.0, 0.0}), 0,
                                         DetectionContext::from_tau(3.7));
    CHECK(a[0] == 1.0);
    CHECK(a[1] == 0.0);
  }

  SUBCASE("equal qubit superposition contracts toward |0>") {
    auto a = post_measurement_amplitudes(AmplitudeVector({inv_sqrt2, inv_sqrt2}),
                                         0, half);
    CHECK(a[0] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-13));
    CHECK(a[1] == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-13));
  }

  SUBCASE("two clicks annihilate levels below 2") {
    double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    auto a = post_measurement_amplitudes(
        AmplitudeVector({inv_sqrt3, inv_sqrt3, inv_sqrt3}), 2,
        DetectionContext::from_tau(1.2));
    CHECK(a[0] == 0.0);
    CHECK(a[1] == 0.0);
    CHECK(a[2] == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("zero-norm update raises ImpossibleOutcome") {
    CHECK_THROWS_AS(post_measurement_amplitudes(AmplitudeVector({1.0, 0.0}), 1,
                                                half),
                    Error);
  }

  SUBCASE("consistency with the posterior on random states") {
    oracle::SplitMix64 rng(31);
    for (int rep = 0; rep < 50; ++rep) {
      std::size_t dim = 2 + rng.next() % 5;
      std::vector<double> w(dim);
      for (auto& x : w) x = rng.next_double() + 1e-3;
      auto prior = make_prior(w);
      std::vector<double> mags(dim);
      for (std::size_t n = 0; n < dim; ++n) mags[n] = std::sqrt(prior[n]);
      AmplitudeVector amp(mags);
      double tau = 0.05 + rng.next_double() * 4.0;
      auto ctx = DetectionContext::from_tau(tau);
      int k = int(rng.next() % dim);
      if (outcome_prob(prior, k, ctx) == 0.0) continue;
      auto updated = post_measurement_amplitudes(amp, k, ctx);
      auto post = posterior(prior, k, ctx);
      for (std::size_t n = 0; n < dim; ++n)
        CHECK(std::abs(updated[n] * updated[n] - post[n]) <= 1e-12);
    }
  }
}
