#pragma once
// Core domain types for the blockfade toolkit: power traces, blockage
// events, Markov rate tables, distribution fits, and generative models.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace blockfade {

inline constexpr const char* kToolVersion = "blockfade 1.0.0";

// Default sampling interval between channel snapshots (seconds).
inline constexpr double kDefaultSampleInterval = 3.3e-3;

enum class ModelKind { two_state, four_state };

enum class State { unshadowed, decaying, shadowed, rising };

enum class TraceOrigin { measured, synthetic };

const char* to_string(ModelKind kind);
const char* to_string(State s);
ModelKind model_kind_from_string(const std::string& s);
State state_from_string(const std::string& s);

// One channel snapshot: received power per delay bin on a uniform grid.
struct PowerDelayProfile {
  std::vector<double> delays_ns;
  std::vector<double> powers_mw;
};

// Attenuation time series. Positive dB = deeper fade; 0 dB = unshadowed
// reference level.
struct PowerTrace {
  double sample_interval = kDefaultSampleInterval;  // seconds
  std::vector<double> samples_db;
  TraceOrigin origin = TraceOrigin::synthetic;
  std::optional<double> hpbw_deg;
};

struct TraceMetadata {
  std::optional<double> carrier_ghz;
  std::optional<double> bandwidth_ghz;
  std::optional<double> tr_separation_m;
  std::string label;
};

// Per-sample state labels aligned with a source trace.
struct StateSequence {
  ModelKind model = ModelKind::two_state;
  std::vector<State> labels;
  double sample_interval = kDefaultSampleInterval;  // seconds
};

// One extracted (or ground-truth) blockage event. Times in the units the
// formulas use: boundaries in seconds, durations in ms, rates in dB/ms.
struct BlockageEvent {
  double t_start_s = 0;
  double t_end_s = 0;
  double t_d_ms = 0;
  double t_decay_ms = 0;
  double t_rise_ms = 0;
  double se_mean_db = 0;
  double r_decay_db_per_ms = 0;
  double r_rise_db_per_ms = 0;
};

enum class Family { log_normal, weibull, normal, uniform };

const char* to_string(Family f);
Family family_from_string(const std::string& s);

// A fitted CDF. Parameter slots by family:
//   log_normal: (mu, sigma) of the underlying normal
//   weibull:    (scale alpha, shape beta)
//   normal:     (mu, sigma)
//   uniform:    (lower A, upper B)
struct DistributionFit {
  Family family = Family::log_normal;
  double p1 = 0;
  double p2 = 1;
  double gof = 1.0;  // NMSE goodness of fit, <= 1
  std::size_t n_samples = 0;
  double trim_fraction = 0.0;
};

// Mean attenuation vs beamwidth model: 10*log10(b + 180/HPBW).
struct AttenuationModel {
  double b = 9.8;
};

// Transition rates (per second) for the legal transitions of a model.
struct RateTable {
  ModelKind model = ModelKind::two_state;
  std::map<std::pair<State, State>, double> rates;
  double sample_interval_used = kDefaultSampleInterval;  // seconds
};

// Legal transitions per model kind, in canonical order.
const std::vector<std::pair<State, State>>& legal_transitions(ModelKind kind);

// Complete generative parameter set for one antenna configuration.
struct BlockageModel {
  double hpbw_deg = 0;
  ModelKind kind = ModelKind::four_state;
  RateTable rate_table;
  DistributionFit dist_t_d;       // fade duration, ms
  DistributionFit dist_se_mean;   // mean event attenuation, dB
  DistributionFit dist_r_decay;   // decay rate, dB/ms
  DistributionFit dist_r_rise;    // rise rate, dB/ms
  std::optional<AttenuationModel> attenuation_model;
};

struct Provenance {
  std::string source_trace_hash = "0000000000000000";
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
};

// Output of the trace generator. Ground truth is recorded noise-free.
struct SynthesisReport {
  PowerTrace trace;
  std::vector<BlockageEvent> ground_truth_events;
  std::size_t n_rejected_draws = 0;
  std::size_t n_dropped_events = 0;
};

}  // namespace blockfade
