#include "weakinfo/oracle.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "weakinfo/detection.hpp"
#include "weakinfo/state.hpp"

using namespace weakinfo;
using oracle::SplitMix64;

namespace {

// Direct binomial pmf, independent of both the library and the sampler.
double binom_pmf(int n, int k, double q) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * double(n - i) / double(i + 1);
  return c * std::pow(q, k) * std::pow(1.0 - q, n - k);
}

// Upper 1e-4 chi-square quantiles for df = 1..6.
constexpr double kChi2Crit[] = {15.136705, 18.420681, 21.107513,
                                23.512742, 25.744832, 27.856341};

}  // namespace

TEST_CASE("splitmix64 streams are reproducible and splittable") {
  SplitMix64 a(1234), b(1234);
  for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());

  SplitMix64 base(99);
  auto w0 = base.split(0);
  auto w1 = base.split(1);
  CHECK(w0.seed() != w1.seed());
  CHECK(base.split(0).seed() == w0.seed());

  SplitMix64 u(555);
  for (int i = 0; i < 1000; ++i) {
    double x = u.next_double();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("click sampling endpoints") {
  auto ctx = DetectionContext::from_tau(1.0);
  SplitMix64 rng(7);
  for (int i = 0; i < 100; ++i)
    CHECK(oracle::sample_click_count(0, ctx, rng) == 0);

  auto late = DetectionContext::from_tau(800.0);  // escape probability 1
  for (int i = 0; i < 100; ++i)
    CHECK(oracle::sample_click_count(3, late, rng) == 3);

  auto never = DetectionContext::from_tau(0.0);
  for (int i = 0; i < 100; ++i)
    CHECK(oracle::sample_click_count(5, never, rng) == 0);
}

TEST_CASE("click counts follow the binomial law (chi-square, alpha = 1e-4)") {
  const long long trials = 200000;
  for (double tau : {0.1, std::log(2.0), 2.0}) {
    auto ctx = DetectionContext::from_tau(tau);
    double q = -std::expm1(-tau);
    for (int n = 1; n <= 6; ++n) {
      SplitMix64 rng(40 + n);
      std::vector<long long> counts(n + 1, 0);
      for (long long t = 0; t < trials; ++t)
        ++counts[oracle::sample_click_count(n, ctx, rng)];

      // Merge adjacent bins until every expected count is at least 5.
      std::vector<double> expected;
      std::vector<double> observed;
      double e_acc = 0.0, o_acc = 0.0;
      for (int k = 0; k <= n; ++k) {
        e_acc += trials * binom_pmf(n, k, q);
        o_acc += double(counts[k]);
        if (e_acc >= 5.0) {
          expected.push_back(e_acc);
          observed.push_back(o_acc);
          e_acc = o_acc = 0.0;
        }
      }
      if (e_acc > 0.0 && !expected.empty()) {
        expected.back() += e_acc;
        observed.back() += o_acc;
      }
      REQUIRE(expected.size() >= 2);
      double chi2 = 0.0;
      for (std::size_t i = 0; i < expected.size(); ++i) {
        double d = observed[i] - expected[i];
        chi2 += d * d / expected[i];
      }
      std::size_t df = expected.size() - 1;
      REQUIRE(df <= 6);
      CHECK(chi2 < kChi2Crit[df - 1]);
    }
  }
}

TEST_CASE("likelihood estimates agree with the closed form") {
  auto half = DetectionContext::from_tau(std::log(2.0));

  auto trivially_one = oracle::estimate_likelihood(0, 0, half, 10000, 1);
  CHECK(trivially_one.value == 1.0);
  CHECK(trivially_one.std_error == 0.0);

  auto est = oracle::estimate_likelihood(2, 1, half, 1000000, 42);
  CHECK(std::abs(est.value - 0.5) <= 4.0 * est.std_error);
  CHECK(est.std_error == doctest::Approx(5e-4).epsilon(0.05));

  auto ctx = DetectionContext::from_tau(0.7);
  auto deep = oracle::estimate_likelihood(3, 2, ctx, 1000000, 42);
  double closed = outcome_likelihood(3, 2, ctx);
  CHECK(std::abs(deep.value - closed) <= 4.0 * deep.std_error);

  CHECK_THROWS_AS(oracle::estimate_likelihood(2, 1, half, 10, 42), Error);
}

TEST_CASE("likelihood estimates over k partition the trials") {
  auto ctx = DetectionContext::from_tau(0.9);
  double total = 0.0;
  for (int k = 0; k <= 4; ++k)
    total += oracle::estimate_likelihood(4, k, ctx, 20000, 2718).value;
  CHECK(total == 1.0);  // same seed -> same stream -> exact partition
}

TEST_CASE("outcome probability estimates") {
  auto half = DetectionContext::from_tau(std::log(2.0));

  auto ground = oracle::estimate_outcome_prob(make_prior({1.0, 0.0}), 0, half,
                                              10000, 3);
  CHECK(ground.value == 1.0);

  auto uniform3 = make_prior({1, 1, 1});
  auto null_est = oracle::estimate_outcome_prob(uniform3, 0, half, 1000000, 42);
  CHECK(std::abs(null_est.value - 7.0 / 12.0) <= 4.0 * null_est.std_error);

  auto fig1c = make_prior({0.5, 0.3, 0.2});
  auto one_click = oracle::estimate_outcome_prob(fig1c, 1, half, 1000000, 42);
  CHECK(std::abs(one_click.value - 0.25) <= 4.0 * one_click.std_error);
}

TEST_CASE("posterior estimates") {
  auto half = DetectionContext::from_tau(std::log(2.0));
  auto uniform3 = make_prior({1, 1, 1});

  auto est = oracle::estimate_posterior(uniform3, 0, half, 1000000, 42);
  const double expected[] = {4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0};
  double sum = 0.0;
  for (std::size_t n = 0; n < 3; ++n) {
    CHECK(std::abs(est.probs[n] - expected[n]) <= 4.0 * est.std_errors[n]);
    sum += est.probs[n];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  // at tau = 0 the null outcome is certain and the prior is recovered
  auto fig1c = make_prior({0.5, 0.3, 0.2});
  auto at_zero = oracle::estimate_posterior(fig1c, 0,
                                            DetectionContext::from_tau(0.0),
                                            200000, 11);
  CHECK(at_zero.matched == at_zero.trials);
  for (std::size_t n = 0; n < 3; ++n)
    CHECK(std::abs(at_zero.probs[n] - fig1c[n]) <=
          std::max(4.0 * at_zero.std_errors[n], 1e-3));

  // three clicks from a uniform four-level prior pin the top level
  auto uniform4 = make_prior({1, 1, 1, 1});
  auto pinned = oracle::estimate_posterior(uniform4, 3,
                                           DetectionContext::from_tau(1.0),
                                           1000000, 42);
  CHECK(pinned.probs[0] == 0.0);
  CHECK(pinned.probs[1] == 0.0);
  CHECK(pinned.probs[2] == 0.0);
  CHECK(pinned.probs[3] == 1.0);

  // a 4-click outcome needs level 4; a qutrit never produces 100 of them
  try {
    oracle::estimate_posterior(uniform3, 3, half, 10000, 42);
    FAIL("expected OutcomeTooRare");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::outcome_too_rare);
  }
}

TEST_CASE("estimates are bit-reproducible for a fixed seed") {
  auto ctx = DetectionContext::from_tau(1.7);
  auto prior = make_prior({0.2, 0.4, 0.4});
  auto a = oracle::estimate_outcome_prob(prior, 1, ctx, 50000, 987);
  auto b = oracle::estimate_outcome_prob(prior, 1, ctx, 50000, 987);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);

  auto pa = oracle::estimate_posterior(prior, 0, ctx, 50000, 987);
  auto pb = oracle::estimate_posterior(prior, 0, ctx, 50000, 987);
  CHECK(pa.probs == pb.probs);
  CHECK(pa.matched == pb.matched);
}
