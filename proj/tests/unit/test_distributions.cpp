#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "blockfade/distributions.hpp"
#include "blockfade/rng.hpp"

using namespace blockfade;

namespace {

DistributionFit make(Family f, double p1, double p2) {
  DistributionFit d;
  d.family = f;
  d.p1 = p1;
  d.p2 = p2;
  return d;
}

}  // namespace

TEST_CASE("log-normal refit recovers table parameters") {
  DistributionFit truth = make(Family::log_normal, 5.61, 0.42);
  std::vector<double> s = sample_distribution(truth, 100000, 11);
  DistributionFit fit = fit_distribution(s, Family::log_normal, 0.0);
  CHECK(std::fabs(fit.p1 - 5.61) < 0.02);
  CHECK(std::fabs(fit.p2 - 0.42) < 0.02);
  CHECK(fit.gof >= 0.99);
  CHECK(fit.n_samples == 100000);
  CHECK(fit.trim_fraction == 0.0);
}

TEST_CASE("uniform refit recovers the table bounds") {
  DistributionFit truth = make(Family::uniform, 5.11, 19.02);
  std::vector<double> s = sample_distribution(truth, 100000, 12);
  DistributionFit fit = fit_distribution(s, Family::uniform, 0.0);
  CHECK(fit.p1 == doctest::Approx(5.11).epsilon(0.01));
  CHECK(fit.p2 == doctest::Approx(19.02).epsilon(0.01));
}

TEST_CASE("weibull refit recovers scale and shape") {
  DistributionFit truth = make(Family::weibull, 282.12, 2.84);
  std::vector<double> s = sample_distribution(truth, 100000, 13);
  DistributionFit fit = fit_distribution(s, Family::weibull, 0.0);
  CHECK(fit.p1 == doctest::Approx(282.12).epsilon(0.02));
  CHECK(fit.p2 == doctest::Approx(2.84).epsilon(0.02));
  CHECK(fit.gof >= 0.99);
}

TEST_CASE("fit_distribution rejects bad input") {
  std::vector<double> constant(100, 4.0);
  CHECK_THROWS_WITH_AS(fit_distribution(constant, Family::normal, 0.0),
                       "degenerate sample", std::runtime_error);
  std::vector<double> few{1, 2, 3, 4, 5, 6, 7};
  CHECK_THROWS_WITH_AS(fit_distribution(few, Family::normal, 0.0),
                       "insufficient samples", std::runtime_error);
  std::vector<double> neg{1, 2, 3, -4, 5, 6, 7, 8, 9};
  CHECK_THROWS_AS(fit_distribution(neg, Family::log_normal, 0.0),
                  std::invalid_argument);
  std::vector<double> ok{1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK_THROWS_AS(fit_distribution(ok, Family::normal, 1.5),
                  std::invalid_argument);
}

TEST_CASE("trim removes the upper tail and is recorded") {
  DistributionFit truth = make(Family::uniform, 0.0, 100.0);
  std::vector<double> s = sample_distribution(truth, 50000, 14);
  DistributionFit fit = fit_distribution(s, Family::uniform, 0.02);
  CHECK(fit.trim_fraction == 0.02);
  CHECK(fit.p2 < 99.0);  // top 2% gone
  CHECK(fit.p2 > 96.0);
}

TEST_CASE("nmse_gof anchors at 1 and 0") {
  std::vector<double> e{0.1, 0.3, 0.5, 0.7, 0.9};
  CHECK(nmse_gof(e, e) == 1.0);
  std::vector<double> mean_only(e.size(), 0.5);
  CHECK(nmse_gof(e, mean_only) == 0.0);
  CHECK(nmse_gof(e, {0.1, 0.3, 0.5, 0.7, 0.8}) < 1.0);
  CHECK_THROWS_WITH_AS(nmse_gof({0.5, 0.5}, {0.4, 0.6}),
                       "zero variance reference", std::runtime_error);
  CHECK_THROWS_AS(nmse_gof({0.5}, {0.4}), std::invalid_argument);
  CHECK_THROWS_AS(nmse_gof(e, {0.1}), std::invalid_argument);
}

TEST_CASE("sampling is deterministic with the documented moments") {
  DistributionFit uni = make(Family::uniform, 5.11, 19.02);
  std::vector<double> a = sample_distribution(uni, 100000, 15);
  std::vector<double> b = sample_distribution(uni, 100000, 15);
  CHECK(a == b);
  double mean = 0;
  for (double x : a) mean += x;
  mean /= a.size();
  CHECK(std::fabs(mean - 12.065) < 0.1);

  DistributionFit ln = make(Family::log_normal, 5.87, 0.35);
  std::vector<double> s = sample_distribution(ln, 100000, 16);
  double lmean = 0;
  for (double x : s) {
    CHECK(x > 0);
    lmean += x;
  }
  lmean /= s.size();
  const double analytic = std::exp(5.87 + 0.35 * 0.35 / 2.0);
  CHECK(std::fabs(lmean - analytic) / analytic < 0.02);

  CHECK(sample_distribution(ln, 0, 17).empty());
}

TEST_CASE("cdf and quantile are inverse") {
  for (const DistributionFit& f :
       {make(Family::log_normal, 5.61, 0.42), make(Family::weibull, 282.12, 2.84),
        make(Family::normal, 236.22, 100.50), make(Family::uniform, 5.11, 19.02)}) {
    for (double u : {0.01, 0.2, 0.5, 0.8, 0.99}) {
      CHECK(cdf_of(f, quantile_of(f, u)) == doctest::Approx(u).epsilon(1e-9));
    }
    CHECK(fit_variance(f) > 0);
  }
  CHECK(fit_mean(make(Family::log_normal, 5.61, 0.42)) ==
        doctest::Approx(std::exp(5.61 + 0.42 * 0.42 / 2)).epsilon(1e-12));
  CHECK(fit_mean(make(Family::uniform, 5.11, 19.02)) ==
        doctest::Approx(12.065).epsilon(1e-12));
}

TEST_CASE("fit_all_families prefers the generating family") {
  std::vector<double> s =
      sample_distribution(make(Family::log_normal, 2.71, 0.31), 50000, 18);
  std::vector<DistributionFit> fits = fit_all_families(s, 0.0);
  REQUIRE(fits.size() == 4);
  const DistributionFit* best = &fits[0];
  for (const DistributionFit& f : fits)
    if (f.gof > best->gof) best = &f;
  CHECK(best->family == Family::log_normal);
}

TEST_CASE("log families are skipped when samples are non-positive") {
  std::vector<double> s(100);
  Rng rng(19);
  for (double& x : s) x = rng.normal();  // straddles zero
  std::vector<DistributionFit> fits = fit_all_families(s, 0.0);
  for (const DistributionFit& f : fits) {
    CHECK(f.family != Family::log_normal);
    CHECK(f.family != Family::weibull);
  }
  CHECK(fits.size() == 2);
}

TEST_CASE("mean attenuation model follows the beamwidth law") {
  AttenuationModel m{9.8};
  CHECK(predict_mean_attenuation(m, 7.0) == doctest::Approx(15.50).epsilon(1e-3));
  CHECK(predict_mean_attenuation(m, 15.0) == doctest::Approx(13.39).epsilon(1e-3));
  CHECK(predict_mean_attenuation(m, 60.0) == doctest::Approx(11.07).epsilon(1e-3));
  CHECK(predict_mean_attenuation(m, 1e9) ==
        doctest::Approx(10.0 * std::log10(9.8)).epsilon(1e-6));
  // strictly decreasing in beamwidth, increasing in b
  CHECK(predict_mean_attenuation(m, 7.0) > predict_mean_attenuation(m, 7.1));
  CHECK(predict_mean_attenuation(AttenuationModel{10.0}, 7.0) >
        predict_mean_attenuation(m, 7.0));
  CHECK_THROWS_AS(predict_mean_attenuation(m, 0.0), std::invalid_argument);
}

TEST_CASE("attenuation model fit matches the scan optimum") {
  // brute-force scan over b puts the least-squares optimum at 9.715 for
  // the three empirical beamwidth points
  AttenuationModel fit = fit_mean_attenuation_model(
      {{7.0, 15.8}, {15.0, 12.4}, {60.0, 11.5}});
  CHECK(std::fabs(fit.b - 9.715) < 0.01);
  CHECK(fit.b >= 9.0);
  CHECK(fit.b <= 11.0);

  AttenuationModel exact = fit_mean_attenuation_model(
      {{7.0, predict_mean_attenuation(AttenuationModel{9.8}, 7.0)},
       {60.0, predict_mean_attenuation(AttenuationModel{9.8}, 60.0)}});
  CHECK(std::fabs(exact.b - 9.8) < 1e-4);

  AttenuationModel unit = fit_mean_attenuation_model(
      {{7.0, predict_mean_attenuation(AttenuationModel{1.0}, 7.0)},
       {15.0, predict_mean_attenuation(AttenuationModel{1.0}, 15.0)},
       {60.0, predict_mean_attenuation(AttenuationModel{1.0}, 60.0)}});
  CHECK(std::fabs(unit.b - 1.0) < 1e-4);

  CHECK_THROWS_AS(fit_mean_attenuation_model({{7.0, 15.8}}), std::runtime_error);
  CHECK_THROWS_AS(fit_mean_attenuation_model({{7.0, 15.8}, {7.0, 12.4}}),
                  std::invalid_argument);
}
