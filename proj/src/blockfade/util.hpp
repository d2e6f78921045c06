#pragma once
// Small shared helpers: canonical float formatting, FNV-1a hashing,
// whole-file reads.

#include <cstdint>
#include <string>
#include <vector>

namespace blockfade {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

// Nearest double to x rounded to 9 significant decimal digits.
double round9(double x);

// FNV-1a 64-bit hash of a byte string, as fixed-width lowercase hex.
std::string fnv1a64_hex(const std::string& bytes);

// Reads a whole file; throws std::runtime_error on failure.
std::string read_file_bytes(const std::string& path);

// Sample mean / population standard deviation (MLE denominators).
double mean_of(const std::vector<double>& v);
double stddev_of(const std::vector<double>& v);

// Linear-interpolation quantile of a sorted vector, q in [0, 1].
double sorted_quantile(const std::vector<double>& sorted, double q);

}  // namespace blockfade
