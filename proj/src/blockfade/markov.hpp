#pragma once
// Transition rate estimation from labeled sequences and discrete-time
// chain simulation. Rates are per-second: lambda = p / sample_interval
// where p is the per-sample transition probability.

#include <cstdint>

#include "blockfade/types.hpp"

namespace blockfade {

// Counts transitions over the legal transition set of seq.model. The final
// (truncated) sojourn is excluded: it has not been observed to exit. States
// never visited are absent from the result, not zero.
RateTable estimate_rates(const StateSequence& seq);

// Discrete-time simulation: at each step, leave state s with probability
// lambda_out * sample_interval. Starts unshadowed; deterministic per seed.
StateSequence simulate_chain(const RateTable& rates, double sample_interval,
                             std::size_t n_samples, std::uint64_t seed,
                             std::size_t burn_in = 0);

// Mean dwell time of a state, 1/lambda_out, in seconds.
double mean_sojourn(const RateTable& rates, State state);

}  // namespace blockfade
