#pragma once
// PDP integration, trace normalization, and CSV I/O for traces and PDPs.

#include <string>

#include "blockfade/types.hpp"

namespace blockfade {

// Integrates the area under a PDP: sums bin powers within |threshold_db|
// of the peak bin; lower bins are treated as noise and excluded.
double integrate_pdp(const PowerDelayProfile& pdp, double threshold_db);

// Converts received power in dB (any absolute reference) into a 0 dB
// referenced attenuation trace. Reference = median of the input, which is
// robust because shadowed samples are a minority.
PowerTrace normalize_trace(const std::vector<double>& raw_powers_db,
                           double sample_interval);

// Trace CSV: header "time_s,atten_db", one row per sample, LF endings.
// Timestamps must be uniform within 1% jitter; the interval is inferred
// from the mean spacing (snapped to 9 significant digits).
PowerTrace read_trace(const std::string& path);
void write_trace(const PowerTrace& trace, const std::string& path);

// PDP CSV: header "delay_ns,power_mw".
PowerDelayProfile read_pdp(const std::string& path);

}  // namespace blockfade
