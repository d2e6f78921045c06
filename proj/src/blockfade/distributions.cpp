#include "blockfade/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blockfade/util.hpp"

namespace blockfade {

namespace {

// Weibull shape MLE: root of
//   g(beta) = sum(x^b ln x)/sum(x^b) - 1/b - mean(ln x) = 0
// solved by Newton iteration; samples are pre-scaled by their maximum so
// x^b stays bounded for any beta the iteration visits.
double weibull_shape_mle(const std::vector<double>& x) {
  const std::size_t n = x.size();
  const double xmax = *std::max_element(x.begin(), x.end());
  std::vector<double> t(n), lt(n);
  double mean_ln = 0;
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = x[i] / xmax;
    lt[i] = std::log(t[i]);
    mean_ln += lt[i];
  }
  mean_ln /= static_cast<double>(n);

  double sd_ln = 0;
  for (double v : lt) sd_ln += (v - mean_ln) * (v - mean_ln);
  sd_ln = std::sqrt(sd_ln / static_cast<double>(n));
  if (sd_ln <= 0) throw std::runtime_error("degenerate sample");

  // Method-of-moments start: sd(ln x) = pi/(beta*sqrt(6)).
  double beta = 1.2825498301618641 / sd_ln;
  for (int iter = 0; iter < 200; ++iter) {
    double s0 = 0, s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = std::pow(t[i], beta);
      s0 += w;
      s1 += w * lt[i];
      s2 += w * lt[i] * lt[i];
    }
    const double r = s1 / s0;
    const double g = r - 1.0 / beta - mean_ln;
    const double dg = (s2 / s0 - r * r) + 1.0 / (beta * beta);
    const double step = g / dg;
    beta -= step;
    if (!(beta > 0) || !std::isfinite(beta))
      throw std::runtime_error("weibull fit failed");
    if (std::fabs(step) < 1e-9) return beta;
  }
  throw std::runtime_error("weibull fit failed");
}

void check_valid(const DistributionFit& fit) {
  switch (fit.family) {
    case Family::log_normal:
    case Family::normal:
      if (!(fit.p2 > 0)) throw std::invalid_argument("sigma must be > 0");
      break;
    case Family::weibull:
      if (!(fit.p1 > 0) || !(fit.p2 > 0))
        throw std::invalid_argument("weibull scale and shape must be > 0");
      break;
    case Family::uniform:
      if (!(fit.p2 > fit.p1)) throw std::invalid_argument("uniform needs B > A");
      break;
  }
}

}  // namespace

DistributionFit fit_distribution(std::vector<double> samples, Family family,
                                 double trim_fraction) {
  if (trim_fraction < 0 || trim_fraction >= 1)
    throw std::invalid_argument("trim_fraction must be in [0, 1)");
  std::sort(samples.begin(), samples.end());
  const std::size_t drop =
      static_cast<std::size_t>(trim_fraction * static_cast<double>(samples.size()));
  if (drop > 0) samples.resize(samples.size() - drop);
  if (samples.size() < 8) throw std::runtime_error("insufficient samples");

  const bool log_family = family == Family::log_normal || family == Family::weibull;
  if (log_family && samples.front() <= 0)
    throw std::invalid_argument("non-positive sample for log-domain family");

  DistributionFit fit;
  fit.family = family;
  fit.n_samples = samples.size();
  fit.trim_fraction = trim_fraction;

  switch (family) {
    case Family::log_normal: {
      std::vector<double> logs(samples.size());
      std::transform(samples.begin(), samples.end(), logs.begin(),
                     [](double v) { return std::log(v); });
      fit.p1 = mean_of(logs);
      fit.p2 = stddev_of(logs);
      if (fit.p2 <= 0) throw std::runtime_error("degenerate sample");
      break;
    }
    case Family::normal: {
      fit.p1 = mean_of(samples);
      fit.p2 = stddev_of(samples);
      if (fit.p2 <= 0) throw std::runtime_error("degenerate sample");
      break;
    }
    case Family::uniform: {
      fit.p1 = samples.front();
      fit.p2 = samples.back();
      if (fit.p2 <= fit.p1) throw std::runtime_error("degenerate sample");
      break;
    }
    case Family::weibull: {
      const double beta = weibull_shape_mle(samples);
      // Closed-form scale given shape, computed against the same scaling.
      const double xmax = samples.back();
      double s = 0;
      for (double v : samples) s += std::pow(v / xmax, beta);
      fit.p1 = xmax * std::pow(s / static_cast<double>(samples.size()), 1.0 / beta);
      fit.p2 = beta;
      break;
    }
  }

  // GOF against the trimmed empirical CDF at the order statistics.
  const std::size_t n = samples.size();
  std::vector<double> e(n), m(n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    m[i] = cdf_of(fit, samples[i]);
  }
  fit.gof = nmse_gof(e, m);
  return fit;
}

std::vector<DistributionFit> fit_all_families(const std::vector<double>& samples,
                                              double trim_fraction) {
  const bool positive =
      std::all_of(samples.begin(), samples.end(), [](double v) { return v > 0; });
  std::vector<DistributionFit> fits;
  for (Family f : {Family::log_normal, Family::weibull, Family::normal,
                   Family::uniform}) {
    if (!positive && (f == Family::log_normal || f == Family::weibull)) continue;
    try {
      fits.push_back(fit_distribution(samples, f, trim_fraction));
    } catch (const std::runtime_error&) {
      // A family that fails to converge is simply not a candidate.
    }
  }
  if (fits.empty()) throw std::runtime_error("no family could be fitted");
  return fits;
}

double nmse_gof(const std::vector<double>& empirical_cdf_values,
                const std::vector<double>& model_cdf_values) {
  if (empirical_cdf_values.size() != model_cdf_values.size())
    throw std::invalid_argument("nmse_gof: length mismatch");
  if (empirical_cdf_values.size() < 2)
    throw std::invalid_argument("nmse_gof: need at least 2 points");
  const double em = mean_of(empirical_cdf_values);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < empirical_cdf_values.size(); ++i) {
    const double d = empirical_cdf_values[i] - model_cdf_values[i];
    num += d * d;
    const double r = empirical_cdf_values[i] - em;
    den += r * r;
  }
  if (den == 0) throw std::runtime_error("zero variance reference");
  return 1.0 - num / den;
}

double cdf_of(const DistributionFit& fit, double x) {
  check_valid(fit);
  switch (fit.family) {
    case Family::log_normal:
      if (x <= 0) return 0.0;
      return normal_cdf((std::log(x) - fit.p1) / fit.p2);
    case Family::normal:
      return normal_cdf((x - fit.p1) / fit.p2);
    case Family::weibull:
      if (x <= 0) return 0.0;
      return -std::expm1(-std::pow(x / fit.p1, fit.p2));
    case Family::uniform:
      if (x <= fit.p1) return 0.0;
      if (x >= fit.p2) return 1.0;
      return (x - fit.p1) / (fit.p2 - fit.p1);
  }
  throw std::logic_error("unreachable family");
}

double quantile_of(const DistributionFit& fit, double u) {
  check_valid(fit);
  if (!(u >= 0.0 && u <= 1.0))
    throw std::invalid_argument("quantile_of: u outside [0,1]");
  switch (fit.family) {
    case Family::log_normal:
      return std::exp(fit.p1 + fit.p2 * normal_quantile(u));
    case Family::normal:
      return fit.p1 + fit.p2 * normal_quantile(u);
    case Family::weibull:
      return fit.p1 * std::pow(-std::log1p(-u), 1.0 / fit.p2);
    case Family::uniform:
      return fit.p1 + (fit.p2 - fit.p1) * u;
  }
  throw std::logic_error("unreachable family");
}

double quantile_from_z(const DistributionFit& fit, double z) {
  check_valid(fit);
  switch (fit.family) {
    case Family::log_normal:
      return std::exp(fit.p1 + fit.p2 * z);
    case Family::normal:
      return fit.p1 + fit.p2 * z;
    case Family::weibull:
    case Family::uniform:
      return quantile_of(fit, normal_cdf(z));
  }
  throw std::logic_error("unreachable family");
}

double fit_mean(const DistributionFit& fit) {
  check_valid(fit);
  switch (fit.family) {
    case Family::log_normal:
      return std::exp(fit.p1 + 0.5 * fit.p2 * fit.p2);
    case Family::normal:
      return fit.p1;
    case Family::weibull:
      return fit.p1 * std::tgamma(1.0 + 1.0 / fit.p2);
    case Family::uniform:
      return 0.5 * (fit.p1 + fit.p2);
  }
  throw std::logic_error("unreachable family");
}

double fit_variance(const DistributionFit& fit) {
  check_valid(fit);
  switch (fit.family) {
    case Family::log_normal: {
      const double s2 = fit.p2 * fit.p2;
      return (std::exp(s2) - 1.0) * std::exp(2.0 * fit.p1 + s2);
    }
    case Family::normal:
      return fit.p2 * fit.p2;
    case Family::weibull: {
      const double g1 = std::tgamma(1.0 + 1.0 / fit.p2);
      const double g2 = std::tgamma(1.0 + 2.0 / fit.p2);
      return fit.p1 * fit.p1 * (g2 - g1 * g1);
    }
    case Family::uniform: {
      const double w = fit.p2 - fit.p1;
      return w * w / 12.0;
    }
  }
  throw std::logic_error("unreachable family");
}

double nmse_against_samples(const DistributionFit& fit,
                            std::vector<double> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("nmse_against_samples: need at least 2 samples");
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  std::vector<double> e(n), m(n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    m[i] = cdf_of(fit, samples[i]);
  }
  return nmse_gof(e, m);
}

std::vector<double> sample_distribution(const DistributionFit& fit, std::size_t n,
                                        std::uint64_t seed) {
  check_valid(fit);
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_one(fit, rng));
  return out;
}

double sample_one(const DistributionFit& fit, Rng& rng) {
  return quantile_of(fit, rng.uniform_open());
}

double predict_mean_attenuation(const AttenuationModel& model, double hpbw_deg) {
  if (!(hpbw_deg > 0)) throw std::invalid_argument("hpbw_deg must be > 0");
  if (!(model.b > 0)) throw std::invalid_argument("attenuation model b must be > 0");
  return 10.0 * std::log10(model.b + 180.0 / hpbw_deg);
}

AttenuationModel fit_mean_attenuation_model(
    const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::runtime_error("need at least 2 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].first > 0))
      throw std::invalid_argument("hpbw_deg must be > 0");
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw std::invalid_argument("points must have distinct HPBWs");
  }
  const auto sse = [&points](double b) {
    double s = 0;
    for (const auto& [hpbw, atten] : points) {
      const double d = atten - 10.0 * std::log10(b + 180.0 / hpbw);
      s += d * d;
    }
    return s;
  };
  // Golden-section search; SSE(b) is unimodal in b on this model.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.01, hi = 1000.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = sse(c), fd = sse(d);
  while (hi - lo > 1e-6) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = sse(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = sse(d);
    }
  }
  return AttenuationModel{0.5 * (lo + hi)};
}

}  // namespace blockfade
