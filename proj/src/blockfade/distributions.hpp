#pragma once
// Fitting, sampling, and scoring of the four CDF families used for event
// quantities, plus the beamwidth/attenuation model.

#include <vector>

#include "blockfade/rng.hpp"
#include "blockfade/types.hpp"

namespace blockfade {

// Maximum-likelihood fit of one family, after removing the top
// trim_fraction of the sorted samples (limited-data tail guard).
DistributionFit fit_distribution(std::vector<double> samples, Family family,
                                 double trim_fraction = 0.02);

// Fits all applicable families (log families skipped when any sample <= 0)
// and returns them; callers pick by gof.
std::vector<DistributionFit> fit_all_families(const std::vector<double>& samples,
                                              double trim_fraction = 0.02);

// NMSE goodness of fit: 1 - sum((e-m)^2)/sum((e-mean(e))^2); 1 is perfect.
double nmse_gof(const std::vector<double>& empirical_cdf_values,
                const std::vector<double>& model_cdf_values);

// CDF / inverse CDF of a fit.
double cdf_of(const DistributionFit& fit, double x);
double quantile_of(const DistributionFit& fit, double u);
// Quantile evaluated through a standard-normal latent (rank coupling).
double quantile_from_z(const DistributionFit& fit, double z);

// Analytic mean / variance of a fit.
double fit_mean(const DistributionFit& fit);
double fit_variance(const DistributionFit& fit);

// NMSE of a fit against the order statistics of a (not necessarily sorted)
// sample vector: empirical ordinates i/n vs the fit CDF.
double nmse_against_samples(const DistributionFit& fit, std::vector<double> samples);

// Inverse-CDF sampling; deterministic per seed.
std::vector<double> sample_distribution(const DistributionFit& fit, std::size_t n,
                                        std::uint64_t seed);
double sample_one(const DistributionFit& fit, Rng& rng);

// Mean attenuation model: 10*log10(b + 180/hpbw_deg).
double predict_mean_attenuation(const AttenuationModel& model, double hpbw_deg);

// Least-squares fit of b over (hpbw, mean attenuation) points by
// golden-section search on [0.01, 1000].
AttenuationModel fit_mean_attenuation_model(
    const std::vector<std::pair<double, double>>& points);

}  // namespace blockfade
