#include "blockfade/markov.hpp"

#include <array>
#include <stdexcept>

#include "blockfade/rng.hpp"

namespace blockfade {

namespace {

// The single legal successor of a state under each model.
State successor(ModelKind kind, State s) {
  if (kind == ModelKind::two_state) {
    if (s == State::unshadowed) return State::shadowed;
    if (s == State::shadowed) return State::unshadowed;
    throw std::invalid_argument("state not part of the two-state model");
  }
  switch (s) {
    case State::unshadowed: return State::decaying;
    case State::decaying: return State::shadowed;
    case State::shadowed: return State::rising;
    case State::rising: return State::unshadowed;
  }
  throw std::logic_error("unreachable state");
}

}  // namespace

RateTable estimate_rates(const StateSequence& seq) {
  if (seq.labels.empty()) throw std::runtime_error("no samples");
  if (!(seq.sample_interval > 0))
    throw std::invalid_argument("sample_interval must be > 0");

  // Exclude the final partial sojourn: find where the last run begins.
  std::size_t final_run_start = seq.labels.size() - 1;
  while (final_run_start > 0 &&
         seq.labels[final_run_start - 1] == seq.labels.back())
    --final_run_start;

  std::array<std::size_t, 4> dwell{};
  std::array<std::size_t, 4> exits{};
  for (std::size_t i = 0; i < final_run_start; ++i) {
    const State cur = seq.labels[i];
    const State nxt = seq.labels[i + 1];
    dwell[static_cast<std::size_t>(cur)] += 1;
    if (nxt != cur) {
      if (nxt != successor(seq.model, cur))
        throw std::runtime_error("illegal transition in sequence");
      exits[static_cast<std::size_t>(cur)] += 1;
    }
  }

  RateTable table;
  table.model = seq.model;
  table.sample_interval_used = seq.sample_interval;
  for (const auto& [from, to] : legal_transitions(seq.model)) {
    const std::size_t d = dwell[static_cast<std::size_t>(from)];
    if (d == 0) continue;  // state never visited: rate absent, not zero
    const double p = static_cast<double>(exits[static_cast<std::size_t>(from)]) /
                     static_cast<double>(d);
    table.rates[{from, to}] = p / seq.sample_interval;
  }
  return table;
}

StateSequence simulate_chain(const RateTable& rates, double sample_interval,
                             std::size_t n_samples, std::uint64_t seed,
                             std::size_t burn_in) {
  if (!(sample_interval > 0))
    throw std::invalid_argument("sample_interval must be > 0");
  // Per-step exit probabilities, validated up front.
  std::array<double, 4> p_exit{};
  for (const auto& [key, lambda] : rates.rates) {
    if (lambda < 0) throw std::invalid_argument("negative rate");
    const double p = lambda * sample_interval;
    if (p >= 1.0) throw std::runtime_error("sample interval too coarse for rates");
    p_exit[static_cast<std::size_t>(key.first)] = p;
  }

  StateSequence seq;
  seq.model = rates.model;
  seq.sample_interval = sample_interval;
  seq.labels.reserve(n_samples);
  Rng rng(seed);
  State cur = State::unshadowed;
  for (std::size_t i = 0; i < burn_in + n_samples; ++i) {
    if (i >= burn_in) seq.labels.push_back(cur);
    if (rng.uniform01() < p_exit[static_cast<std::size_t>(cur)])
      cur = successor(rates.model, cur);
  }
  return seq;
}

double mean_sojourn(const RateTable& rates, State state) {
  const State next = successor(rates.model, state);
  const auto it = rates.rates.find({state, next});
  if (it == rates.rates.end() || it->second == 0)
    throw std::runtime_error("infinite sojourn");
  return 1.0 / it->second;
}

}  // namespace blockfade
