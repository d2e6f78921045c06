#include "blockfade/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "blockfade/util.hpp"

namespace blockfade {

namespace {

// Lloyd levels closer than this are noise structure, not fades.
constexpr double kMinLevelSeparationDb = 1.0;
// Shortest event worth keeping, in samples.
constexpr std::size_t kMinEventSamples = 3;
// Zero-crossing extrapolation may reach at most this many samples beyond
// the boundary sample; bounds the damage of a noise-flattened edge slope.
constexpr double kMaxExtrapSamples = 16.0;
// Slack when comparing samples against the event's own mean; plateau-only
// means can round one ulp above every plateau sample.
constexpr double kShadowLevelSlack = 1e-9;

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void require_normalized(const PowerTrace& trace) {
  if (trace.samples_db.empty()) throw std::runtime_error("no samples");
  if (std::fabs(median_of(trace.samples_db)) > 1.0)
    throw std::runtime_error("normalize first");
}

struct Run {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
};

// Lloyd-Max sample proposals; all-false when the trace has no usable
// two-level structure (near-constant, or levels closer than the floor).
std::vector<bool> lloyd_proposals(const std::vector<double>& a) {
  try {
    const LloydResult lloyd = lloyd_max_2level(a);
    if (lloyd.level_hi - lloyd.level_lo >= kMinLevelSeparationDb)
      return lloyd.shadowed;
  } catch (const std::runtime_error&) {
    // Degenerate (near-constant) traces simply propose nothing.
  }
  return std::vector<bool>(a.size(), false);
}

// Maximal runs of samples above `level` (at/above when inclusive).
std::vector<Run> threshold_runs(const std::vector<double>& a, double level,
                                bool inclusive) {
  const auto over = [&](std::size_t i) {
    return inclusive ? a[i] >= level : a[i] > level;
  };
  std::vector<Run> runs;
  std::size_t i = 0;
  while (i < a.size()) {
    if (!over(i)) {
      ++i;
      continue;
    }
    Run run{i, i};
    while (run.last + 1 < a.size() && over(run.last + 1)) ++run.last;
    runs.push_back(run);
    i = run.last + 1;
  }
  return runs;
}

bool run_has(const std::vector<bool>& mask, const Run& run) {
  for (std::size_t k = run.first; k <= run.last; ++k)
    if (mask[k]) return true;
  return false;
}

double run_peak(const std::vector<double>& a, const Run& run) {
  double peak = a[run.first];
  for (std::size_t k = run.first + 1; k <= run.last; ++k)
    peak = std::max(peak, a[k]);
  return peak;
}

}  // namespace

LloydResult lloyd_max_2level(const std::vector<double>& samples) {
  if (samples.size() < 2) throw std::runtime_error("degenerate input");
  std::vector<double> sorted(samples);
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) throw std::runtime_error("degenerate input");

  double lo = sorted_quantile(sorted, 0.10);
  double hi = sorted_quantile(sorted, 0.90);
  if (lo == hi) {
    lo = sorted.front();
    hi = sorted.back();
  }
  double threshold = 0.5 * (lo + hi);
  for (int iter = 0; iter < 100; ++iter) {
    threshold = 0.5 * (lo + hi);
    double sum_lo = 0, sum_hi = 0;
    std::size_t n_lo = 0, n_hi = 0;
    for (double x : samples) {
      if (x < threshold) {
        sum_lo += x;
        ++n_lo;
      } else {
        sum_hi += x;
        ++n_hi;
      }
    }
    const double new_lo = n_lo ? sum_lo / static_cast<double>(n_lo) : lo;
    const double new_hi = n_hi ? sum_hi / static_cast<double>(n_hi) : hi;
    const bool done =
        std::fabs(new_lo - lo) < 1e-6 && std::fabs(new_hi - hi) < 1e-6;
    lo = new_lo;
    hi = new_hi;
    if (done) break;
  }
  threshold = 0.5 * (lo + hi);

  LloydResult out;
  out.level_lo = lo;
  out.level_hi = hi;
  out.threshold = threshold;
  out.shadowed.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    out.shadowed[i] = samples[i] >= threshold;
  return out;
}

double se_mean_of_event(const std::vector<TimedSample>& event_samples,
                        double t_d_ms) {
  if (event_samples.empty())
    throw std::invalid_argument("se_mean_of_event: no samples");
  if (!(t_d_ms > 0)) throw std::invalid_argument("se_mean_of_event: t_d must be > 0");
  const double lo = t_d_ms / 3.0;
  const double hi = 2.0 * t_d_ms / 3.0;
  double sum = 0;
  std::size_t count = 0;
  for (const TimedSample& s : event_samples) {
    if (s.t_ms > lo && s.t_ms < hi) {
      sum += s.atten_db;
      ++count;
    }
  }
  if (count > 0) return sum / static_cast<double>(count);
  // Degenerately short event: use the sample nearest the midpoint.
  const double mid = 0.5 * t_d_ms;
  const TimedSample* best = &event_samples.front();
  for (const TimedSample& s : event_samples)
    if (std::fabs(s.t_ms - mid) < std::fabs(best->t_ms - mid)) best = &s;
  return best->atten_db;
}

ExtractionResult extract_events_two_state(const PowerTrace& trace,
                                          double threshold_db) {
  require_normalized(trace);
  const std::vector<double>& a = trace.samples_db;
  const double T = trace.sample_interval;
  const std::size_t n = a.size();

  ExtractionResult out;
  out.labels.model = ModelKind::two_state;
  out.labels.sample_interval = T;
  out.labels.labels.assign(n, State::unshadowed);

  // Lloyd proposes the fade regions; an event is the contiguous region at
  // or above threshold_db around a proposed peak. Proposed regions that
  // never clear the threshold are dropped.
  const std::vector<bool> proposed = lloyd_proposals(a);
  for (const Run& run : threshold_runs(a, threshold_db, /*inclusive=*/true)) {
    if (!run_has(proposed, run)) continue;
    const std::size_t s = run.first;
    const std::size_t e = run.last;
    if (e - s + 1 < kMinEventSamples) {
      ++out.n_discarded;
      continue;
    }
    if (s == 0 || e == n - 1) {
      ++out.n_discarded;
      continue;
    }
    const double t_d_ms = static_cast<double>(e - s + 1) * T * 1000.0;
    std::vector<TimedSample> ev;
    ev.reserve(e - s + 1);
    for (std::size_t i = s; i <= e; ++i)
      ev.push_back({static_cast<double>(i - s) * T * 1000.0, a[i]});
    const double se = se_mean_of_event(ev, t_d_ms);
    if (!(se > 0)) {
      ++out.n_discarded;
      continue;
    }
    BlockageEvent event;
    event.t_start_s = static_cast<double>(s) * T;
    event.t_end_s = event.t_start_s + t_d_ms / 1000.0;
    event.t_d_ms = t_d_ms;
    // Rectangle semantics: edges are instantaneous at the sampling grid.
    event.t_decay_ms = T * 1000.0;
    event.t_rise_ms = T * 1000.0;
    event.se_mean_db = se;
    event.r_decay_db_per_ms = se / event.t_decay_ms;
    event.r_rise_db_per_ms = se / event.t_rise_ms;
    out.events.push_back(event);
    for (std::size_t i = s; i <= e; ++i) out.labels.labels[i] = State::shadowed;
  }
  return out;
}

ExtractionResult extract_events_four_state(const PowerTrace& trace,
                                           double zero_cross_db) {
  require_normalized(trace);
  if (!(zero_cross_db > 0))
    throw std::invalid_argument("zero_cross_db must be > 0");
  const std::vector<double>& a = trace.samples_db;
  const double T = trace.sample_interval;
  const std::size_t n = a.size();

  ExtractionResult out;
  out.labels.model = ModelKind::four_state;
  out.labels.sample_interval = T;
  out.labels.labels.assign(n, State::unshadowed);

  // Lloyd proposes fade regions; each is widened to its surrounding
  // above-guard run. Runs with a clear fade peak (>= 3 dB, the standard
  // two-state threshold) count even without a proposal, so shallow-plateau
  // events in a deep-fade trace are not missed by the global quantizer.
  const std::vector<bool> proposed = lloyd_proposals(a);
  const std::vector<Run> runs = threshold_runs(a, zero_cross_db, /*inclusive=*/false);
  for (std::size_t ri = 0; ri < runs.size(); ++ri) {
    const Run& run = runs[ri];
    if (!run_has(proposed, run) && run_peak(a, run) < 3.0) continue;
    const std::size_t s = run.first;
    const std::size_t e = run.last;
    if (e - s + 1 < kMinEventSamples) {
      ++out.n_discarded;
      continue;
    }
    if (s == 0 || e == n - 1) {
      ++out.n_discarded;  // boundary-truncated: no zero crossing visible
      continue;
    }
    const std::size_t i0 = s - 1;  // last sample at/below the guard
    const std::size_t j1 = e + 1;  // first sample at/below the guard

    // Boundary refinement: extrapolate the edge line to 0 dB. Reach beyond
    // the boundary sample is capped, and also limited to half the below-guard
    // gap toward the neighboring run so refined events can never overlap.
    // A boundary sample already at/below zero means the crossing sits between
    // it and the run; extrapolate inward from the first in-run sample pair.
    const double gap_before =
        static_cast<double>(s - (ri > 0 ? runs[ri - 1].last + 1 : 0));
    const double gap_after = static_cast<double>(
        (ri + 1 < runs.size() ? runs[ri + 1].first : n) - 1 - e);
    const double reach_before =
        std::min(kMaxExtrapSamples, 0.5 * std::max(0.0, gap_before - 1.0)) * T;
    const double reach_after =
        std::min(kMaxExtrapSamples, 0.5 * std::max(0.0, gap_after - 1.0)) * T;

    double t_start = static_cast<double>(i0) * T;
    const double outer_up = (a[s] - a[i0]) / T;  // dB/s
    if (a[i0] > 0 && outer_up > 0) {
      t_start = std::max(t_start - a[i0] / outer_up, t_start - reach_before);
    } else if (e > s) {
      const double inner_up = (a[s + 1] - a[s]) / T;
      if (inner_up > 0)
        t_start = std::clamp(static_cast<double>(s) * T - a[s] / inner_up,
                             t_start, static_cast<double>(s) * T);
    }
    double t_end = static_cast<double>(j1) * T;
    const double outer_dn = (a[j1] - a[e]) / T;  // dB/s
    if (a[j1] > 0 && outer_dn < 0) {
      t_end = std::min(t_end - a[j1] / outer_dn, t_end + reach_after);
    } else if (e > s) {
      const double inner_dn = (a[e] - a[e - 1]) / T;
      if (inner_dn < 0)
        t_end = std::clamp(static_cast<double>(e) * T - a[e] / inner_dn,
                           static_cast<double>(e) * T, t_end);
    }
    const double t_d_ms = (t_end - t_start) * 1000.0;
    if (!(t_d_ms > 0)) {
      ++out.n_discarded;
      continue;
    }

    std::vector<TimedSample> ev;
    ev.reserve(e - s + 1);
    for (std::size_t i = s; i <= e; ++i)
      ev.push_back({(static_cast<double>(i) * T - t_start) * 1000.0, a[i]});
    const double se = se_mean_of_event(ev, t_d_ms);
    if (!(se > 0)) {
      ++out.n_discarded;
      continue;
    }

    // Shadowed region: trace at or above the event's mean attenuation.
    const double shadow_level = se - kShadowLevelSlack;
    std::size_t first_ge = n, last_ge = n;
    for (std::size_t i = s; i <= e; ++i) {
      if (a[i] >= shadow_level) {
        if (first_ge == n) first_ge = i;
        last_ge = i;
      }
    }
    if (first_ge == n) {
      ++out.n_discarded;  // never reaches its own mean; malformed
      continue;
    }
    const double t_decay_ms = (static_cast<double>(first_ge) * T - t_start) * 1000.0;
    const double t_rise_ms = (t_end - static_cast<double>(last_ge) * T) * 1000.0;
    if (!(t_decay_ms > 0) || !(t_rise_ms > 0)) {
      ++out.n_discarded;
      continue;
    }

    BlockageEvent event;
    event.t_start_s = t_start;
    event.t_end_s = t_end;
    event.t_d_ms = t_d_ms;
    event.t_decay_ms = t_decay_ms;
    event.t_rise_ms = t_rise_ms;
    event.se_mean_db = se;
    event.r_decay_db_per_ms = se / t_decay_ms;
    event.r_rise_db_per_ms = se / t_rise_ms;
    out.events.push_back(event);

    // Labels: one maximal run each of decaying, shadowed, rising.
    const std::size_t d_end =
        std::clamp(first_ge > 0 ? first_ge - 1 : s, s, e - 2);
    const std::size_t s_end = std::clamp(last_ge, d_end + 1, e - 1);
    for (std::size_t i = s; i <= d_end; ++i) out.labels.labels[i] = State::decaying;
    for (std::size_t i = d_end + 1; i <= s_end; ++i)
      out.labels.labels[i] = State::shadowed;
    for (std::size_t i = s_end + 1; i <= e; ++i)
      out.labels.labels[i] = State::rising;
  }
  return out;
}

void write_events(const std::vector<BlockageEvent>& events,
                  const std::string& path) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw std::runtime_error("cannot open file: " + path);
  outf << "t_start_s,t_end_s,t_d_ms,t_decay_ms,t_rise_ms,se_mean_db,"
          "r_decay_db_per_ms,r_rise_db_per_ms\n";
  for (const BlockageEvent& ev : events) {
    outf << format_double(ev.t_start_s) << ',' << format_double(ev.t_end_s) << ','
         << format_double(ev.t_d_ms) << ',' << format_double(ev.t_decay_ms) << ','
         << format_double(ev.t_rise_ms) << ',' << format_double(ev.se_mean_db)
         << ',' << format_double(ev.r_decay_db_per_ms) << ','
         << format_double(ev.r_rise_db_per_ms) << '\n';
  }
  if (!outf) throw std::runtime_error("write failed: " + path);
}

std::vector<BlockageEvent> read_events(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("no such file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty events file");
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
    line.pop_back();
  if (line !=
      "t_start_s,t_end_s,t_d_ms,t_decay_ms,t_rise_ms,se_mean_db,"
      "r_decay_db_per_ms,r_rise_db_per_ms")
    throw std::runtime_error(path + ": unexpected events header");
  std::vector<BlockageEvent> events;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
      line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    double v[8];
    for (int k = 0; k < 8; ++k) {
      if (!std::getline(ss, cell, ','))
        throw std::runtime_error(path + ": malformed row " + std::to_string(lineno));
      try {
        std::size_t pos = 0;
        v[k] = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::runtime_error(path + ": malformed row " + std::to_string(lineno));
      }
    }
    if (std::getline(ss, cell, ','))
      throw std::runtime_error(path + ": malformed row " + std::to_string(lineno));
    BlockageEvent ev;
    ev.t_start_s = v[0];
    ev.t_end_s = v[1];
    ev.t_d_ms = v[2];
    ev.t_decay_ms = v[3];
    ev.t_rise_ms = v[4];
    ev.se_mean_db = v[5];
    ev.r_decay_db_per_ms = v[6];
    ev.r_rise_db_per_ms = v[7];
    events.push_back(ev);
  }
  return events;
}

void write_labels(const StateSequence& seq, const std::string& path) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw std::runtime_error("cannot open file: " + path);
  outf << "time_s,state\n";
  for (std::size_t i = 0; i < seq.labels.size(); ++i) {
    outf << format_double(static_cast<double>(i) * seq.sample_interval) << ','
         << to_string(seq.labels[i]) << '\n';
  }
  if (!outf) throw std::runtime_error("write failed: " + path);
}

StateSequence read_labels(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("no such file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty labels file");
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
    line.pop_back();
  if (line != "time_s,state")
    throw std::runtime_error(path + ": expected header time_s,state");
  StateSequence seq;
  std::vector<double> times;
  std::size_t lineno = 1;
  bool has_four_state_label = false;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
      line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error(path + ": malformed row " + std::to_string(lineno));
    try {
      std::size_t pos = 0;
      times.push_back(std::stod(line.substr(0, comma), &pos));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ": malformed row " + std::to_string(lineno));
    }
    const State st = state_from_string(line.substr(comma + 1));
    if (st == State::decaying || st == State::rising) has_four_state_label = true;
    seq.labels.push_back(st);
  }
  if (seq.labels.empty()) throw std::runtime_error("no samples");
  seq.model = has_four_state_label ? ModelKind::four_state : ModelKind::two_state;
  if (times.size() >= 2)
    seq.sample_interval =
        round9((times.back() - times.front()) / static_cast<double>(times.size() - 1));
  return seq;
}

}  // namespace blockfade
