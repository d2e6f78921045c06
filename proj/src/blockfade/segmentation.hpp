#pragma once
// Sample labeling (Lloyd-Max two-level quantizer) and per-event quantity
// extraction for the two-state and four-state blockage models.

#include <string>
#include <vector>

#include "blockfade/types.hpp"

namespace blockfade {

struct LloydResult {
  double level_lo = 0;
  double level_hi = 0;
  double threshold = 0;
  std::vector<bool> shadowed;  // true = assigned to the higher level
};

// Two-level scalar quantizer via Lloyd iteration, initialized at the
// 10th/90th percentiles; higher-attenuation side is "shadowed".
LloydResult lloyd_max_2level(const std::vector<double>& samples);

// One attenuation sample with its time relative to the event start (ms).
struct TimedSample {
  double t_ms = 0;
  double atten_db = 0;
};

// Mean attenuation over the open middle third (t_D/3, 2*t_D/3) of the
// event; falls back to the sample nearest t_D/2 when that window is empty.
double se_mean_of_event(const std::vector<TimedSample>& event_samples,
                        double t_d_ms);

struct ExtractionResult {
  StateSequence labels;
  std::vector<BlockageEvent> events;
  std::size_t n_discarded = 0;  // boundary-truncated / too-short / malformed
};

// Two-state extraction: fade duration = contiguous time at or above
// threshold_db around each candidate peak.
ExtractionResult extract_events_two_state(const PowerTrace& trace,
                                          double threshold_db = 3.0);

// Four-state extraction: event boundaries at the zero crossings (guard
// level zero_cross_db, refined by linear extrapolation of the edge line to
// 0 dB; reach is capped and bounded by half the gap to the neighboring
// event, so refined events never overlap); decay/rise segments split where
// the trace first/last reaches the event's SE_mean.
ExtractionResult extract_events_four_state(const PowerTrace& trace,
                                           double zero_cross_db = 0.5);

// Event CSV: header
// t_start_s,t_end_s,t_d_ms,t_decay_ms,t_rise_ms,se_mean_db,r_decay_db_per_ms,r_rise_db_per_ms
void write_events(const std::vector<BlockageEvent>& events,
                  const std::string& path);
std::vector<BlockageEvent> read_events(const std::string& path);

// Labels CSV: header time_s,state
void write_labels(const StateSequence& seq, const std::string& path);
StateSequence read_labels(const std::string& path);

}  // namespace blockfade
