#include "blockfade/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "blockfade/distributions.hpp"

namespace blockfade {

namespace {

void check_envelope_params(double r_decay, double r_rise, double se_mean,
                           double t_d) {
  if (!(r_decay > 0) || !(r_rise > 0) || !(se_mean > 0) || !(t_d > 0))
    throw std::invalid_argument("envelope parameters must be positive");
  double ramps = se_mean / r_decay + se_mean / r_rise;
  if (ramps > t_d * (1.0 + 1e-9))
    throw std::invalid_argument("rates inconsistent with duration");
}

// Spread of the fit on a log scale: sigma for log_normal, otherwise the
// log-normal sigma matching the fit's coefficient of variation.
double effective_log_sigma(const DistributionFit& fit) {
  if (fit.family == Family::log_normal) return fit.p2;
  double m = fit_mean(fit);
  double v = fit_variance(fit);
  if (!(m > 0) || !(v > 0)) return 0.5;
  return std::sqrt(std::log1p(v / (m * m)));
}

// Latent normal for a rate: share w (the standardized log depth/duration
// contrast) up to the marginal's own spread, independent noise beyond it.
double rate_latent(double s_q, double v, double w, Rng& rng) {
  double g = rng.normal();
  if (!(s_q > 0)) return w;
  double gam2 = std::clamp((s_q * s_q - v) / (s_q * s_q), 0.0, 1.0);
  return std::sqrt(1.0 - gam2) * w + std::sqrt(gam2) * g;
}

}  // namespace

double envelope(double r_decay, double r_rise, double se_mean, double t_d,
                double t_ms) {
  check_envelope_params(r_decay, r_rise, se_mean, t_d);
  if (t_ms <= 0 || t_ms >= t_d) return 0.0;
  double t1 = se_mean / r_decay;
  double t2 = t_d - se_mean / r_rise;
  if (t_ms < t1) return r_decay * t_ms;
  if (t_ms <= t2) return se_mean;
  return r_rise * (t_d - t_ms);
}

double envelope_middle_third_mean(double r_decay, double r_rise, double se_mean,
                                  double t_d) {
  check_envelope_params(r_decay, r_rise, se_mean, t_d);
  double a = t_d / 3.0;
  double b = 2.0 * t_d / 3.0;
  double t1 = std::min(se_mean / r_decay, t_d);
  double t2 = std::max(t_d - se_mean / r_rise, t1);
  double s = 0.0;
  {
    double u1 = std::clamp(a, 0.0, t1);
    double u2 = std::clamp(b, 0.0, t1);
    s += r_decay * (u2 * u2 - u1 * u1) / 2.0;
  }
  {
    double u1 = std::clamp(a, t1, t2);
    double u2 = std::clamp(b, t1, t2);
    s += se_mean * (u2 - u1);
  }
  {
    double u1 = std::clamp(a, t2, t_d);
    double u2 = std::clamp(b, t2, t_d);
    s += r_rise * ((t_d * u2 - u2 * u2 / 2.0) - (t_d * u1 - u1 * u1 / 2.0));
  }
  return s / (b - a);
}

EventDraw draw_event(const BlockageModel& model, std::uint64_t seed) {
  Rng rng(seed);
  return draw_event(model, rng);
}

EventDraw draw_event(const BlockageModel& model, Rng& rng) {
  if (model.kind != ModelKind::four_state)
    throw std::invalid_argument("draw_event requires a four-state model");

  const DistributionFit& f_td = model.dist_t_d;
  const DistributionFit& f_se = model.dist_se_mean;
  const DistributionFit& f_rd = model.dist_r_decay;
  const DistributionFit& f_rr = model.dist_r_rise;

  const double s_td = effective_log_sigma(f_td);
  const double s_se = effective_log_sigma(f_se);
  const double s_rd = effective_log_sigma(f_rd);
  const double s_rr = effective_log_sigma(f_rr);

  // Couple depth and duration so that the standardized contrast
  // w = (s_se*z_se - s_td*z_td)/sqrt(v) -- which on a log scale tracks
  // se/t_d, the tightness of the ramp constraint -- has the spread the
  // narrower rate marginal can absorb.
  double rho = 0.0;
  if (s_td > 0 && s_se > 0) {
    double s_min = std::min(s_rd, s_rr);
    rho = (s_se * s_se + s_td * s_td - s_min * s_min) / (2.0 * s_se * s_td);
  }
  rho = std::clamp(rho, 0.0, 0.95);
  const double v = s_se * s_se + s_td * s_td - 2.0 * rho * s_se * s_td;

  EventDraw out;
  std::size_t total_attempts = 0;
  for (;;) {
    if (total_attempts >= 1000)
      throw std::runtime_error(
          "model internally inconsistent: cannot draw a valid event");
    double g1 = rng.normal();
    double g2 = rng.normal();
    double z_td = g1;
    double z_se = rho * g1 + std::sqrt(1.0 - rho * rho) * g2;
    double t_d = quantile_from_z(f_td, z_td);
    double se = quantile_from_z(f_se, z_se);
    if (!(t_d > 0) || !(se > 0)) {
      ++out.n_rejected;
      ++total_attempts;
      continue;
    }
    double w = 0.0;
    if (v > 1e-12) w = (s_se * z_se - s_td * z_td) / std::sqrt(v);
    for (int k = 0; k < 100 && total_attempts < 1000; ++k) {
      ++total_attempts;
      double r_d = quantile_from_z(f_rd, rate_latent(s_rd, v, w, rng));
      double r_r = quantile_from_z(f_rr, rate_latent(s_rr, v, w, rng));
      if (r_d > 0 && r_r > 0 && se / r_d + se / r_r <= t_d) {
        out.t_d_ms = t_d;
        out.se_mean_db = se;
        out.r_decay_db_per_ms = r_d;
        out.r_rise_db_per_ms = r_r;
        return out;
      }
      ++out.n_rejected;
    }
  }
}

SynthesisReport generate_trace(const BlockageModel& model, double duration_s,
                               double sample_interval, std::uint64_t seed,
                               double noise_sigma_db) {
  if (!(duration_s > 0) || !(sample_interval > 0))
    throw std::invalid_argument("duration and sample interval must be positive");
  if (noise_sigma_db < 0)
    throw std::invalid_argument("noise sigma must be non-negative");
  const std::size_t n =
      static_cast<std::size_t>(duration_s / sample_interval);
  if (n < 2) throw std::invalid_argument("duration too short for sample interval");

  const double T = sample_interval;
  const double trace_end = static_cast<double>(n) * T;

  const auto on_key = model.kind == ModelKind::four_state
                          ? std::make_pair(State::unshadowed, State::decaying)
                          : std::make_pair(State::unshadowed, State::shadowed);
  auto it = model.rate_table.rates.find(on_key);
  if (it == model.rate_table.rates.end() || it->second < 0)
    throw std::runtime_error("model missing unshadowed exit rate");
  const double lambda_on = it->second;  // 0 = no events, noise-only trace

  Rng rng(seed);
  std::vector<double> clean(n, 0.0);
  SynthesisReport report;

  double t_prev_end = 0.0;
  for (; lambda_on > 0;) {
    // Memoryless wait from the previous event's end; gaps shorter than two
    // samples would fuse adjacent events, so redraw them.
    double gap = rng.exponential(lambda_on);
    int gap_tries = 0;
    while (gap < 2.0 * T) {
      if (++gap_tries > 1000)
        throw std::runtime_error("sample interval too coarse for event rate");
      gap = rng.exponential(lambda_on);
    }
    double onset = t_prev_end + gap;
    if (onset >= trace_end) break;

    BlockageEvent ev;
    double td_ms = 0.0;
    if (model.kind == ModelKind::four_state) {
      EventDraw d = draw_event(model, rng);
      report.n_rejected_draws += d.n_rejected;
      td_ms = d.t_d_ms;
      double end = onset + td_ms / 1000.0;
      if (end > trace_end) {
        ++report.n_dropped_events;
        break;
      }
      std::size_t k0 = static_cast<std::size_t>(std::ceil(onset / T));
      std::size_t k1 = std::min(
          n - 1, static_cast<std::size_t>(std::floor(end / T)));
      // Ground-truth SE is what an ideal analyzer recovers from this grid:
      // the mean of the clean envelope samples in the open middle third
      // (nearest-to-midpoint sample when the window is empty).
      double m_sum = 0.0, m_near = 0.0;
      std::size_t m_cnt = 0;
      double m_gap = std::numeric_limits<double>::infinity();
      for (std::size_t k = k0; k <= k1 && k < n; ++k) {
        double t_ms = (static_cast<double>(k) * T - onset) * 1000.0;
        double v = envelope(d.r_decay_db_per_ms, d.r_rise_db_per_ms,
                            d.se_mean_db, td_ms, t_ms);
        clean[k] = std::max(clean[k], v);
        if (t_ms > td_ms / 3.0 && t_ms < 2.0 * td_ms / 3.0) {
          m_sum += v;
          ++m_cnt;
        }
        if (std::abs(t_ms - td_ms / 2.0) < m_gap) {
          m_gap = std::abs(t_ms - td_ms / 2.0);
          m_near = v;
        }
      }
      double m = m_cnt > 0 ? m_sum / static_cast<double>(m_cnt)
               : m_gap < std::numeric_limits<double>::infinity()
                   ? m_near
                   : envelope_middle_third_mean(d.r_decay_db_per_ms,
                                                d.r_rise_db_per_ms,
                                                d.se_mean_db, td_ms);
      ev.se_mean_db = m;
      ev.r_decay_db_per_ms = d.r_decay_db_per_ms;
      ev.r_rise_db_per_ms = d.r_rise_db_per_ms;
      ev.t_decay_ms = m / d.r_decay_db_per_ms;
      ev.t_rise_ms = m / d.r_rise_db_per_ms;
      ev.t_start_s = onset;
      ev.t_end_s = end;
      ev.t_d_ms = td_ms;
    } else {
      double se = 0.0;
      for (int tries = 0;; ++tries) {
        if (tries >= 1000)
          throw std::runtime_error(
              "model internally inconsistent: cannot draw a valid event");
        td_ms = sample_one(model.dist_t_d, rng);
        if (td_ms > 0) break;
        ++report.n_rejected_draws;
      }
      for (int tries = 0;; ++tries) {
        if (tries >= 1000)
          throw std::runtime_error(
              "model internally inconsistent: cannot draw a valid event");
        se = sample_one(model.dist_se_mean, rng);
        if (se > 0) break;
        ++report.n_rejected_draws;
      }
      double end = onset + td_ms / 1000.0;
      if (end > trace_end) {
        ++report.n_dropped_events;
        break;
      }
      std::size_t k0 = static_cast<std::size_t>(std::ceil(onset / T));
      std::size_t k1 = static_cast<std::size_t>(std::ceil(end / T));
      if (k1 > 0) --k1;  // last sample strictly inside [onset, end)
      for (std::size_t k = k0; k <= k1 && k < n; ++k)
        clean[k] = std::max(clean[k], se);
      ev.se_mean_db = se;
      // Rectangle semantics: the edge transit takes one sample.
      ev.t_decay_ms = T * 1000.0;
      ev.t_rise_ms = T * 1000.0;
      ev.r_decay_db_per_ms = se / (T * 1000.0);
      ev.r_rise_db_per_ms = se / (T * 1000.0);
      ev.t_start_s = onset;
      ev.t_end_s = end;
      ev.t_d_ms = td_ms;
    }
    report.ground_truth_events.push_back(ev);
    t_prev_end = ev.t_end_s;
  }

  if (noise_sigma_db > 0) {
    for (std::size_t k = 0; k < n; ++k)
      clean[k] += noise_sigma_db * rng.normal();
  }

  report.trace.sample_interval = sample_interval;
  report.trace.samples_db = std::move(clean);
  report.trace.origin = TraceOrigin::synthetic;
  report.trace.hpbw_deg = model.hpbw_deg;
  return report;
}

}  // namespace blockfade
