#include "blockfade/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "blockfade/util.hpp"

namespace blockfade {

namespace {

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Parses one "a,b" CSV row of two doubles; throws with row context.
std::pair<double, double> parse_row2(const std::string& line, std::size_t lineno,
                                     const std::string& path) {
  const auto comma = line.find(',');
  if (comma == std::string::npos)
    throw std::runtime_error(path + ": malformed row " + std::to_string(lineno));
  const char* s1 = line.c_str();
  char* end1 = nullptr;
  const double a = std::strtod(s1, &end1);
  if (end1 != s1 + comma)
    throw std::runtime_error(path + ": malformed row " + std::to_string(lineno));
  const char* s2 = line.c_str() + comma + 1;
  char* end2 = nullptr;
  const double b = std::strtod(s2, &end2);
  if (end2 == s2 || *end2 != '\0')
    throw std::runtime_error(path + ": malformed row " + std::to_string(lineno));
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::runtime_error(path + ": non-finite value at row " +
                             std::to_string(lineno));
  return {a, b};
}

std::string strip_eol(std::string line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
    line.pop_back();
  return line;
}

}  // namespace

double integrate_pdp(const PowerDelayProfile& pdp, double threshold_db) {
  if (pdp.powers_mw.empty()) throw std::runtime_error("empty profile");
  if (threshold_db > 0)
    throw std::invalid_argument("integrate_pdp: threshold must be <= 0 dB");
  const double peak = *std::max_element(pdp.powers_mw.begin(), pdp.powers_mw.end());
  if (peak <= 0) throw std::runtime_error("no signal");
  const double cutoff = peak * std::pow(10.0, threshold_db / 10.0);
  double total = 0;
  for (double p : pdp.powers_mw)
    if (p >= cutoff) total += p;
  return total;
}

PowerTrace normalize_trace(const std::vector<double>& raw_powers_db,
                           double sample_interval) {
  if (raw_powers_db.size() < 100)
    throw std::runtime_error("trace too short to establish reference");
  if (sample_interval <= 0)
    throw std::invalid_argument("normalize_trace: sample_interval must be > 0");
  const double ref = median_of(raw_powers_db);
  PowerTrace out;
  out.sample_interval = sample_interval;
  out.origin = TraceOrigin::measured;
  out.samples_db.reserve(raw_powers_db.size());
  for (double p : raw_powers_db) out.samples_db.push_back(ref - p);
  return out;
}

PowerTrace read_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("no such file: " + path);
  std::string line;
  if (!std::getline(in, line) || strip_eol(line) != "time_s,atten_db")
    throw std::runtime_error(path + ": expected header time_s,atten_db");
  std::vector<double> times, values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_eol(line);
    if (line.empty()) continue;
    auto [t, a] = parse_row2(line, lineno, path);
    times.push_back(t);
    values.push_back(a);
  }
  if (values.empty()) throw std::runtime_error("no samples");
  PowerTrace out;
  out.origin = TraceOrigin::measured;
  out.samples_db = std::move(values);
  if (times.size() >= 2) {
    for (std::size_t i = 1; i < times.size(); ++i)
      if (times[i] <= times[i - 1])
        throw std::runtime_error(path + ": non-monotonic time at row " +
                                 std::to_string(i + 2));
    const double interval =
        round9((times.back() - times.front()) / static_cast<double>(times.size() - 1));
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double dt = times[i] - times[i - 1];
      if (std::fabs(dt - interval) > 0.01 * interval)
        throw std::runtime_error(path + ": inconsistent sample interval at row " +
                                 std::to_string(i + 2));
    }
    out.sample_interval = interval;
  }
  return out;
}

void write_trace(const PowerTrace& trace, const std::string& path) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw std::runtime_error("cannot open file: " + path);
  outf << "time_s,atten_db\n";
  for (std::size_t i = 0; i < trace.samples_db.size(); ++i) {
    outf << format_double(static_cast<double>(i) * trace.sample_interval) << ','
         << format_double(trace.samples_db[i]) << '\n';
  }
  if (!outf) throw std::runtime_error("write failed: " + path);
}

PowerDelayProfile read_pdp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("no such file: " + path);
  std::string line;
  if (!std::getline(in, line) || strip_eol(line) != "delay_ns,power_mw")
    throw std::runtime_error(path + ": expected header delay_ns,power_mw");
  PowerDelayProfile pdp;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_eol(line);
    if (line.empty()) continue;
    auto [d, p] = parse_row2(line, lineno, path);
    if (p < 0)
      throw std::runtime_error(path + ": negative power at row " +
                               std::to_string(lineno));
    pdp.delays_ns.push_back(d);
    pdp.powers_mw.push_back(p);
  }
  if (pdp.powers_mw.empty()) throw std::runtime_error("no samples");
  if (pdp.delays_ns.size() >= 3) {
    const double spacing = pdp.delays_ns[1] - pdp.delays_ns[0];
    for (std::size_t i = 1; i < pdp.delays_ns.size(); ++i) {
      const double dt = pdp.delays_ns[i] - pdp.delays_ns[i - 1];
      if (std::fabs(dt - spacing) > 0.01 * std::fabs(spacing))
        throw std::runtime_error(path + ": non-uniform delay grid at row " +
                                 std::to_string(i + 2));
    }
  }
  return pdp;
}

}  // namespace blockfade
