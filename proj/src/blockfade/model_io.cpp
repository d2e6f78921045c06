#include "blockfade/model_io.hpp"

#include <fstream>
#include <initializer_list>
#include <stdexcept>

#include "blockfade/util.hpp"

namespace blockfade {

namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("model json: " + msg);
}

void check_keys(const ojson& j, const char* where,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(std::string(where) + " must be an object");
  for (const char* k : required)
    if (!j.contains(k))
      fail(std::string("missing field '") + k + "' in " + where);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : required)
      if (it.key() == k) known = true;
    for (const char* k : optional)
      if (it.key() == k) known = true;
    if (!known) fail("unknown field '" + it.key() + "' in " + where);
  }
}

double get_num(const ojson& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  return j.get<double>();
}

std::string get_str(const ojson& j, const std::string& where) {
  if (!j.is_string()) fail(where + " must be a string");
  return j.get<std::string>();
}

std::string transition_key(const std::pair<State, State>& tr) {
  return std::string(to_string(tr.first)) + "->" + to_string(tr.second);
}

ojson fit_to_json(const DistributionFit& f) {
  ojson j;
  j["family"] = to_string(f.family);
  j["params"] = ojson::array({round9(f.p1), round9(f.p2)});
  j["gof"] = round9(f.gof);
  j["n_samples"] = f.n_samples;
  j["trim_fraction"] = round9(f.trim_fraction);
  return j;
}

DistributionFit fit_from_json(const ojson& j, const std::string& where) {
  check_keys(j, where.c_str(),
             {"family", "params", "gof", "n_samples", "trim_fraction"});
  DistributionFit f;
  try {
    f.family = family_from_string(get_str(j["family"], where + ".family"));
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
  const ojson& p = j["params"];
  if (!p.is_array() || p.size() != 2)
    fail(where + ".params must be an array of two numbers");
  f.p1 = get_num(p[0], where + ".params[0]");
  f.p2 = get_num(p[1], where + ".params[1]");
  f.gof = get_num(j["gof"], where + ".gof");
  if (f.gof > 1.0 + 1e-9) fail(where + ".gof must be <= 1");
  const ojson& ns = j["n_samples"];
  if (!ns.is_number_integer() && !ns.is_number_unsigned())
    fail(where + ".n_samples must be a non-negative integer");
  if (ns.is_number_integer() && ns.get<long long>() < 0)
    fail(where + ".n_samples must be a non-negative integer");
  f.n_samples = ns.get<std::size_t>();
  f.trim_fraction = get_num(j["trim_fraction"], where + ".trim_fraction");
  if (f.trim_fraction < 0 || f.trim_fraction >= 0.5)
    fail(where + ".trim_fraction must be in [0, 0.5)");
  switch (f.family) {
    case Family::log_normal:
    case Family::normal:
      if (!(f.p2 > 0)) fail(where + ": sigma must be positive");
      break;
    case Family::weibull:
      if (!(f.p1 > 0) || !(f.p2 > 0))
        fail(where + ": weibull scale and shape must be positive");
      break;
    case Family::uniform:
      if (!(f.p1 < f.p2)) fail(where + ": uniform bounds out of order");
      break;
  }
  return f;
}

}  // namespace

nlohmann::ordered_json model_to_json(const BlockageModel& model,
                                     const Provenance& prov) {
  ojson j;
  j["schema"] = kModelSchema;
  j["hpbw_deg"] = round9(model.hpbw_deg);
  j["kind"] = to_string(model.kind);

  ojson rt;
  rt["model"] = to_string(model.rate_table.model);
  rt["sample_interval_s"] = round9(model.rate_table.sample_interval_used);
  ojson rates = ojson::object();
  for (const auto& tr : legal_transitions(model.rate_table.model)) {
    auto it = model.rate_table.rates.find(tr);
    if (it != model.rate_table.rates.end())
      rates[transition_key(tr)] = round9(it->second);
  }
  rt["rates"] = rates;
  j["rate_table"] = rt;

  ojson fits;
  fits["t_d_ms"] = fit_to_json(model.dist_t_d);
  fits["se_mean_db"] = fit_to_json(model.dist_se_mean);
  fits["r_decay_db_per_ms"] = fit_to_json(model.dist_r_decay);
  fits["r_rise_db_per_ms"] = fit_to_json(model.dist_r_rise);
  j["fits"] = fits;

  if (model.attenuation_model) {
    ojson am;
    am["b"] = round9(model.attenuation_model->b);
    j["attenuation_model"] = am;
  }

  ojson pv;
  pv["source_trace_hash"] = prov.source_trace_hash;
  pv["tool_version"] = prov.tool_version;
  pv["seed"] = prov.seed;
  j["provenance"] = pv;
  return j;
}

BlockageModel model_from_json(const nlohmann::ordered_json& j,
                              Provenance* prov) {
  check_keys(j, "model",
             {"schema", "hpbw_deg", "kind", "rate_table", "fits", "provenance"},
             {"attenuation_model"});
  if (get_str(j["schema"], "schema") != kModelSchema)
    fail("unsupported schema '" + j["schema"].get<std::string>() + "'");

  BlockageModel m;
  m.hpbw_deg = get_num(j["hpbw_deg"], "hpbw_deg");
  if (!(m.hpbw_deg > 0)) fail("hpbw_deg must be positive");
  try {
    m.kind = model_kind_from_string(get_str(j["kind"], "kind"));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }

  const ojson& rt = j["rate_table"];
  check_keys(rt, "rate_table", {"model", "sample_interval_s", "rates"});
  try {
    m.rate_table.model =
        model_kind_from_string(get_str(rt["model"], "rate_table.model"));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (m.rate_table.model != m.kind)
    fail("rate table model does not match kind");
  m.rate_table.sample_interval_used =
      get_num(rt["sample_interval_s"], "rate_table.sample_interval_s");
  if (!(m.rate_table.sample_interval_used > 0))
    fail("rate_table.sample_interval_s must be positive");
  const ojson& rates = rt["rates"];
  if (!rates.is_object()) fail("rate_table.rates must be an object");
  const auto& legal = legal_transitions(m.rate_table.model);
  for (auto it = rates.begin(); it != rates.end(); ++it) {
    bool found = false;
    for (const auto& tr : legal) {
      if (transition_key(tr) == it.key()) {
        double lambda = get_num(it.value(), "rate '" + it.key() + "'");
        if (lambda < 0) fail("rate '" + it.key() + "' must be non-negative");
        m.rate_table.rates[tr] = lambda;
        found = true;
        break;
      }
    }
    if (!found) fail("illegal transition key '" + it.key() + "'");
  }

  const ojson& fits = j["fits"];
  check_keys(fits, "fits",
             {"t_d_ms", "se_mean_db", "r_decay_db_per_ms", "r_rise_db_per_ms"});
  m.dist_t_d = fit_from_json(fits["t_d_ms"], "fits.t_d_ms");
  m.dist_se_mean = fit_from_json(fits["se_mean_db"], "fits.se_mean_db");
  m.dist_r_decay =
      fit_from_json(fits["r_decay_db_per_ms"], "fits.r_decay_db_per_ms");
  m.dist_r_rise =
      fit_from_json(fits["r_rise_db_per_ms"], "fits.r_rise_db_per_ms");

  if (j.contains("attenuation_model")) {
    const ojson& am = j["attenuation_model"];
    check_keys(am, "attenuation_model", {"b"});
    AttenuationModel a;
    a.b = get_num(am["b"], "attenuation_model.b");
    if (!(a.b > 0)) fail("attenuation_model.b must be positive");
    m.attenuation_model = a;
  }

  const ojson& pv = j["provenance"];
  check_keys(pv, "provenance", {"source_trace_hash", "tool_version", "seed"});
  Provenance p;
  p.source_trace_hash = get_str(pv["source_trace_hash"], "provenance.source_trace_hash");
  p.tool_version = get_str(pv["tool_version"], "provenance.tool_version");
  const ojson& seed = pv["seed"];
  if (!seed.is_number_unsigned() &&
      !(seed.is_number_integer() && seed.get<long long>() >= 0))
    fail("provenance.seed must be a non-negative integer");
  p.seed = seed.get<std::uint64_t>();
  if (prov) *prov = p;
  return m;
}

std::string serialize_model(const BlockageModel& model, const Provenance& prov) {
  return model_to_json(model, prov).dump(2) + "\n";
}

std::pair<BlockageModel, Provenance> parse_model(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("parse error: ") + e.what());
  }
  Provenance prov;
  BlockageModel m = model_from_json(j, &prov);
  return {m, prov};
}

void write_model(const std::string& path, const BlockageModel& model,
                 const Provenance& prov) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << serialize_model(model, prov);
  if (!out) throw std::runtime_error("cannot write file: " + path);
}

std::pair<BlockageModel, Provenance> read_model(const std::string& path) {
  return parse_model(read_file_bytes(path));
}

}  // namespace blockfade
