#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "blockfade/model_io.hpp"
#include "blockfade/rng.hpp"
#include "blockfade/synthesis.hpp"

using namespace blockfade;

namespace {

std::string data_dir() {
  const char* env = std::getenv("BLOCKFADE_DATA_DIR");
  return env ? env : "../data";
}

constexpr double kT = 3.3e-3;

}  // namespace

TEST_CASE("envelope matches the piecewise-linear form") {
  // plateau start: se/r_decay = 100 ms exactly
  CHECK(envelope(0.12, 0.15, 12.0, 330.0, 100.0) == 12.0);
  CHECK(envelope(0.12, 0.15, 12.0, 330.0, 165.0) == 12.0);  // plateau midpoint
  CHECK(envelope(0.12, 0.15, 12.0, 330.0, 0.0) == 0.0);
  CHECK(envelope(0.12, 0.15, 12.0, 330.0, 330.0) == 0.0);
  CHECK(envelope(0.12, 0.15, 12.0, 330.0, -5.0) == 0.0);
  CHECK(envelope(0.12, 0.15, 12.0, 330.0, 400.0) == 0.0);
  CHECK(envelope(0.12, 0.15, 12.0, 330.0, 50.0) == doctest::Approx(6.0));
  // the rise ramp is anchored at t_d so it reaches zero exactly
  CHECK(envelope(0.12, 0.15, 12.0, 330.0, 329.0) ==
        doctest::Approx(0.15).epsilon(1e-12));

  // ramps that cannot fit inside the duration are rejected
  CHECK_THROWS_AS(envelope(0.12, 0.15, 12.0, 100.0, 50.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(envelope(-0.12, 0.15, 12.0, 330.0, 50.0),
                  std::invalid_argument);
}

TEST_CASE("envelope is continuous, peaks at se_mean, and vanishes at ends") {
  Rng rng(55);
  for (int trial = 0; trial < 1000; ++trial) {
    const double se = 3.0 + 20.0 * rng.uniform01();
    const double rd = 0.05 + 0.4 * rng.uniform01();
    const double rr = 0.05 + 0.4 * rng.uniform01();
    const double ramps = se / rd + se / rr;
    const double td = ramps * (1.05 + rng.uniform01());
    const double r_max = std::max(rd, rr);
    double peak = 0;
    double prev = envelope(rd, rr, se, td, -0.05);
    for (double t = 0.05; t < td + 0.1; t += 0.1) {
      double v = envelope(rd, rr, se, td, t);
      REQUIRE(v >= 0.0);
      REQUIRE(std::fabs(v - prev) <= r_max * 0.1 + 1e-9);
      peak = std::max(peak, v);
      prev = v;
    }
    REQUIRE(peak == se);  // plateau value is hit exactly
    REQUIRE(envelope(rd, rr, se, td, 0.0) == 0.0);
    REQUIRE(envelope(rd, rr, se, td, td) == 0.0);
  }
}

TEST_CASE("envelope middle-third mean agrees with numeric integration") {
  Rng rng(56);
  for (int trial = 0; trial < 50; ++trial) {
    const double se = 3.0 + 20.0 * rng.uniform01();
    const double rd = 0.05 + 0.4 * rng.uniform01();
    const double rr = 0.05 + 0.4 * rng.uniform01();
    const double td = (se / rd + se / rr) * (1.02 + rng.uniform01());
    const double lo = td / 3.0, hi = 2.0 * td / 3.0;
    const int n = 200000;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      double t = lo + (hi - lo) * (i + 0.5) / n;
      sum += envelope(rd, rr, se, td, t);
    }
    double numeric = sum / n;
    CHECK(envelope_middle_third_mean(rd, rr, se, td) ==
          doctest::Approx(numeric).epsilon(1e-5));
  }
}

TEST_CASE("draw_event reproduces the fitted marginal means") {
  BlockageModel m = read_model(data_dir() + "/four_state_7deg.json").first;
  Rng rng(12345);
  double td = 0, se = 0;
  std::size_t rejected = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    EventDraw d = draw_event(m, rng);
    CHECK(d.t_d_ms > 0);
    CHECK(d.se_mean_db > 0);
    // every draw satisfies the envelope domain constraint
    REQUIRE(d.se_mean_db / d.r_decay_db_per_ms +
                d.se_mean_db / d.r_rise_db_per_ms <=
            d.t_d_ms * (1.0 + 1e-9));
    td += d.t_d_ms;
    se += d.se_mean_db;
    rejected += d.n_rejected;
  }
  td /= n;
  se /= n;
  const double mean_td = std::exp(5.87 + 0.35 * 0.35 / 2);  // about 378 ms
  const double mean_se = std::exp(2.71 + 0.31 * 0.31 / 2);  // about 15.8 dB
  CHECK(std::fabs(td - mean_td) / mean_td < 0.05);
  CHECK(std::fabs(se - mean_se) / mean_se < 0.05);
  // rejection stays rare
  CHECK(double(rejected) / (n + rejected) < 0.20);

  CHECK(draw_event(m, 9).t_d_ms == draw_event(m, 9).t_d_ms);
  BlockageModel two = read_model(data_dir() + "/two_state_7deg.json").first;
  CHECK_THROWS_AS(draw_event(two, 1), std::invalid_argument);
}

TEST_CASE("generate_trace is deterministic and obeys its contract") {
  BlockageModel m = read_model(data_dir() + "/four_state_7deg.json").first;
  SynthesisReport a = generate_trace(m, 135.0, kT, 31, 0.3);
  SynthesisReport b = generate_trace(m, 135.0, kT, 31, 0.3);
  CHECK(a.trace.samples_db == b.trace.samples_db);
  CHECK(a.trace.origin == TraceOrigin::synthetic);
  CHECK(a.trace.hpbw_deg == 7.0);
  CHECK(a.trace.sample_interval == kT);
  CHECK(a.trace.samples_db.size() == static_cast<std::size_t>(135.0 / kT));

  // expected count near rate * duration = 28, generously banded
  const double expect = 0.21 * 135.0;
  CHECK(a.ground_truth_events.size() > expect - 17);
  CHECK(a.ground_truth_events.size() < expect + 17);

  // ground truth is ordered, non-overlapping, with gaps of at least 2 samples
  for (std::size_t i = 0; i < a.ground_truth_events.size(); ++i) {
    const BlockageEvent& ev = a.ground_truth_events[i];
    CHECK(ev.t_d_ms > 0);
    CHECK(ev.se_mean_db > 0);
    CHECK(ev.t_decay_ms + ev.t_rise_ms <= ev.t_d_ms * (1 + 1e-9));
    if (i > 0)
      CHECK(ev.t_start_s - a.ground_truth_events[i - 1].t_end_s >= 2 * kT);
  }

  SynthesisReport c = generate_trace(m, 135.0, kT, 32, 0.3);
  CHECK(a.trace.samples_db != c.trace.samples_db);

  CHECK_THROWS_AS(generate_trace(m, 0.0, kT, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_trace(m, 10.0, kT, 1, -0.1), std::invalid_argument);
}

TEST_CASE("zero arrival rate yields a noise-only trace") {
  BlockageModel m = read_model(data_dir() + "/four_state_7deg.json").first;
  m.rate_table.rates[{State::unshadowed, State::decaying}] = 0.0;
  SynthesisReport rep = generate_trace(m, 30.0, kT, 3, 0.3);
  CHECK(rep.ground_truth_events.empty());
  double worst = 0;
  for (double a : rep.trace.samples_db) worst = std::max(worst, std::fabs(a));
  CHECK(worst < 2.0);  // pure N(0, 0.3) jitter

  m.rate_table.rates.erase({State::unshadowed, State::decaying});
  CHECK_THROWS_WITH_AS(generate_trace(m, 30.0, kT, 3),
                       "model missing unshadowed exit rate",
                       std::runtime_error);
}

TEST_CASE("event gaps follow the memoryless arrival law") {
  // high-rate two-state model gives >= 1e4 gaps in one synthetic trace
  BlockageModel m = read_model(data_dir() + "/two_state_7deg.json").first;
  m.rate_table.rates[{State::unshadowed, State::shadowed}] = 2.0;
  m.rate_table.rates[{State::shadowed, State::unshadowed}] = 50.0;
  m.dist_t_d = DistributionFit{Family::log_normal, 3.0, 0.3, 1.0, 0, 0};
  m.dist_se_mean = DistributionFit{Family::normal, 10.0, 1.0, 1.0, 0, 0};
  SynthesisReport rep = generate_trace(m, 6000.0, kT, 4018, 0.0);
  std::vector<double> u;
  double prev_end = 0.0;
  for (const BlockageEvent& ev : rep.ground_truth_events) {
    double gap = ev.t_start_s - prev_end;
    prev_end = ev.t_end_s;
    REQUIRE(gap >= 2 * kT);
    u.push_back(1.0 - std::exp(-2.0 * (gap - 2 * kT)));
  }
  REQUIRE(u.size() >= 10000);
  std::sort(u.begin(), u.end());
  double d = 0;
  const double n = static_cast<double>(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max(d, std::fabs(u[i] - (i + 1) / n));
    d = std::max(d, std::fabs(u[i] - i / n));
  }
  CHECK(d < 1.6276 / std::sqrt(n));  // KS critical value at p = 0.01
}
