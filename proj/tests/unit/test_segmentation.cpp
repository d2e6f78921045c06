#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "blockfade/model_io.hpp"
#include "blockfade/rng.hpp"
#include "blockfade/segmentation.hpp"
#include "blockfade/synthesis.hpp"
#include "blockfade/trace.hpp"

using namespace blockfade;

namespace {

std::string data_dir() {
  const char* env = std::getenv("BLOCKFADE_DATA_DIR");
  return env ? env : "../data";
}

constexpr double kT = 3.3e-3;

PowerTrace trace_of(std::vector<double> samples) {
  PowerTrace t;
  t.sample_interval = kT;
  t.samples_db = std::move(samples);
  return t;
}

// 0 -> 12 dB over 100 ms, hold 150 ms, 12 -> 0 over 80 ms, padded flat.
PowerTrace trapezoid_trace() {
  std::vector<double> s(3000, 0.0);
  const double onset = 2.0;  // seconds; deliberately not sample-aligned
  for (std::size_t k = 0; k < s.size(); ++k) {
    double t_ms = (static_cast<double>(k) * kT - onset) * 1000.0;
    if (t_ms <= 0 || t_ms >= 330.0) continue;
    s[k] = envelope(0.12, 0.15, 12.0, 330.0, t_ms);
  }
  return trace_of(std::move(s));
}

}  // namespace

TEST_CASE("lloyd_max_2level on two exact levels") {
  std::vector<double> s;
  for (int i = 0; i < 50; ++i) {
    s.push_back(0.0);
    s.push_back(20.0);
  }
  LloydResult r = lloyd_max_2level(s);
  CHECK(r.level_lo == 0.0);
  CHECK(r.level_hi == 20.0);
  CHECK(r.threshold == 10.0);
  // fixed point: labels reproduce the returned levels exactly
  double lo = 0, hi = 0;
  std::size_t nlo = 0, nhi = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (r.shadowed[i]) {
      hi += s[i];
      ++nhi;
    } else {
      lo += s[i];
      ++nlo;
    }
  }
  CHECK(lo / nlo == r.level_lo);
  CHECK(hi / nhi == r.level_hi);

  CHECK_THROWS_WITH_AS(lloyd_max_2level(std::vector<double>(50, 3.0)),
                       "degenerate input", std::runtime_error);
  CHECK_THROWS_AS(lloyd_max_2level({1.0}), std::runtime_error);
}

TEST_CASE("lloyd_max_2level separates a noisy mixture at 99%") {
  Rng rng(99);
  std::vector<double> s;
  std::vector<bool> truth;
  for (int i = 0; i < 10000; ++i) {
    bool shadowed = (i % 10) == 0;  // 10% at 15 dB
    s.push_back((shadowed ? 15.0 : 0.0) + 0.5 * rng.normal());
    truth.push_back(shadowed);
  }
  LloydResult r = lloyd_max_2level(s);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (r.shadowed[i] == truth[i]) ++agree;
  CHECK(double(agree) / s.size() >= 0.99);
}

TEST_CASE("se_mean_of_event averages the open middle third") {
  // trapezoid: plateau 12 dB covers the whole middle third
  std::vector<TimedSample> trap;
  for (double t = 0.5; t < 330.0; t += 1.0)
    trap.push_back({t, envelope(0.12, 0.15, 12.0, 330.0, t)});
  CHECK(se_mean_of_event(trap, 330.0) == 12.0);

  // triangle peaking at 12 at t_d/2: closed-form average over the middle
  // third is 10
  std::vector<TimedSample> tri;
  const double td = 300.0;
  for (double t = 0.05; t < td; t += 0.1) {
    double v = t <= td / 2 ? 24.0 * t / td : 24.0 * (td - t) / td;
    tri.push_back({t, v});
  }
  CHECK(se_mean_of_event(tri, td) == doctest::Approx(10.0).epsilon(1e-3));

  // empty middle third: nearest sample to t_d/2 wins
  std::vector<TimedSample> sparse{{10.0, 3.0}, {140.0, 7.0}, {290.0, 4.0}};
  CHECK(se_mean_of_event(sparse, 300.0) == 7.0);

  CHECK_THROWS_AS(se_mean_of_event({}, 100.0), std::invalid_argument);
  CHECK_THROWS_AS(se_mean_of_event(sparse, 0.0), std::invalid_argument);
}

TEST_CASE("two-state extraction on a clean rectangle") {
  PowerTrace flat = trace_of(std::vector<double>(3030, 0.0));
  ExtractionResult none = extract_events_two_state(flat, 3.0);
  CHECK(none.events.empty());
  CHECK(none.labels.model == ModelKind::two_state);

  // one 15 dB fade lasting 300 ms inside a 10 s trace
  std::vector<double> s(3030, 0.0);
  const std::size_t k0 = 1000;
  const std::size_t n_fade = static_cast<std::size_t>(0.3 / kT);  // 90 samples
  for (std::size_t k = k0; k < k0 + n_fade; ++k) s[k] = 15.0;
  ExtractionResult one = extract_events_two_state(trace_of(std::move(s)), 3.0);
  REQUIRE(one.events.size() == 1);
  const BlockageEvent& ev = one.events[0];
  CHECK(std::fabs(ev.t_d_ms - 300.0) <= kT * 1000.0);
  CHECK(ev.se_mean_db == 15.0);
  CHECK(ev.t_decay_ms == kT * 1000.0);  // rectangle edges take one sample
  CHECK(ev.r_decay_db_per_ms == doctest::Approx(15.0 / 3.3));
  CHECK(ev.t_start_s == doctest::Approx(k0 * kT));

  PowerTrace shifted = trace_of(std::vector<double>(300, 5.0));
  CHECK_THROWS_WITH_AS(extract_events_two_state(shifted, 3.0),
                       "normalize first", std::runtime_error);
}

TEST_CASE("two-state synthesis round trip recovers the mean fade duration") {
  BlockageModel m = read_model(data_dir() + "/two_state_7deg.json").first;
  SynthesisReport rep = generate_trace(m, 1200.0, kT, 501, 0.3);
  ExtractionResult ex = extract_events_two_state(rep.trace, 3.0);
  REQUIRE(ex.events.size() > 100);
  double mean_td = 0;
  for (const BlockageEvent& ev : ex.events) mean_td += ev.t_d_ms;
  mean_td /= ex.events.size();
  const double expect = std::exp(5.61 + 0.42 * 0.42 / 2);  // about 299 ms
  CHECK(std::fabs(mean_td - expect) / expect < 0.10);
}

TEST_CASE("four-state extraction measures the ideal trapezoid") {
  ExtractionResult ex = extract_events_four_state(trapezoid_trace());
  REQUIRE(ex.events.size() == 1);
  const BlockageEvent& ev = ex.events[0];
  CHECK(std::fabs(ev.se_mean_db - 12.0) <= 0.1);
  CHECK(std::fabs(ev.r_decay_db_per_ms - 0.12) <= 0.005);
  CHECK(std::fabs(ev.r_rise_db_per_ms - 0.15) <= 0.007);
  CHECK(std::fabs(ev.t_d_ms - 330.0) <= kT * 1000.0);
  CHECK(ev.t_decay_ms + ev.t_rise_ms <= ev.t_d_ms);
  CHECK(ev.r_decay_db_per_ms == ev.se_mean_db / ev.t_decay_ms);
  CHECK(ev.r_rise_db_per_ms == ev.se_mean_db / ev.t_rise_ms);

  // raising the guard level never lengthens the event
  ExtractionResult higher = extract_events_four_state(trapezoid_trace(), 1.0);
  REQUIRE(higher.events.size() == 1);
  CHECK(higher.events[0].t_d_ms <= ev.t_d_ms + 1e-9);

  CHECK_THROWS_AS(extract_events_four_state(trapezoid_trace(), 0.0),
                  std::invalid_argument);
}

TEST_CASE("four-state labels follow the legal state cycle") {
  BlockageModel m = read_model(data_dir() + "/four_state_15deg.json").first;
  SynthesisReport rep = generate_trace(m, 300.0, kT, 321, 0.3);
  ExtractionResult ex = extract_events_four_state(rep.trace);
  REQUIRE(ex.events.size() > 20);
  CHECK(ex.labels.model == ModelKind::four_state);
  REQUIRE(ex.labels.labels.size() == rep.trace.samples_db.size());
  auto ok = [](State a, State b) {
    if (a == b) return true;
    switch (a) {
      case State::unshadowed: return b == State::decaying;
      case State::decaying: return b == State::shadowed;
      case State::shadowed: return b == State::rising;
      case State::rising: return b == State::unshadowed;
    }
    return false;
  };
  for (std::size_t i = 0; i + 1 < ex.labels.labels.size(); ++i)
    REQUIRE(ok(ex.labels.labels[i], ex.labels.labels[i + 1]));
  // every event carries all three fade phases
  for (const BlockageEvent& ev : ex.events) {
    CHECK(ev.t_decay_ms > 0);
    CHECK(ev.t_rise_ms > 0);
    CHECK(ev.t_decay_ms + ev.t_rise_ms <= ev.t_d_ms);
  }
}

TEST_CASE("noise-free synthesis re-segments to the exact ground truth") {
  BlockageModel m = read_model(data_dir() + "/four_state_60deg.json").first;
  SynthesisReport rep = generate_trace(m, 300.0, kT, 777, 0.0);
  ExtractionResult ex = extract_events_four_state(rep.trace);
  CHECK(ex.n_discarded == 0);
  REQUIRE(ex.events.size() == rep.ground_truth_events.size());
  for (std::size_t i = 0; i < ex.events.size(); ++i) {
    const BlockageEvent& gt = rep.ground_truth_events[i];
    const BlockageEvent& got = ex.events[i];
    CHECK(std::fabs(got.t_d_ms - gt.t_d_ms) <= kT * 1000.0);
    CHECK(std::fabs(got.se_mean_db - gt.se_mean_db) <= 0.1);
  }
}

TEST_CASE("event and label csv round trips") {
  BlockageModel m = read_model(data_dir() + "/four_state_7deg.json").first;
  SynthesisReport rep = generate_trace(m, 120.0, kT, 2121, 0.3);
  ExtractionResult ex = extract_events_four_state(rep.trace);
  REQUIRE(!ex.events.empty());

  write_events(ex.events, "tmp_test_events.csv");
  std::vector<BlockageEvent> back = read_events("tmp_test_events.csv");
  REQUIRE(back.size() == ex.events.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].t_d_ms == ex.events[i].t_d_ms);
    CHECK(back[i].se_mean_db == ex.events[i].se_mean_db);
    CHECK(back[i].r_decay_db_per_ms == ex.events[i].r_decay_db_per_ms);
  }

  write_labels(ex.labels, "tmp_test_labels.csv");
  StateSequence seq = read_labels("tmp_test_labels.csv");
  CHECK(seq.model == ModelKind::four_state);
  REQUIRE(seq.labels.size() == ex.labels.labels.size());
  CHECK(seq.labels == ex.labels.labels);
  CHECK(seq.sample_interval == doctest::Approx(kT).epsilon(1e-6));

  std::remove("tmp_test_events.csv");
  std::remove("tmp_test_labels.csv");
}
