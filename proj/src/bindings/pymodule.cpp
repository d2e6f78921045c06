// Python bindings for the blockfade core: enums, plain data structs, and
// the library operations, bound 1:1 with the C++ API.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blockfade/distributions.hpp"
#include "blockfade/markov.hpp"
#include "blockfade/model_io.hpp"
#include "blockfade/segmentation.hpp"
#include "blockfade/synthesis.hpp"
#include "blockfade/trace.hpp"
#include "blockfade/types.hpp"
#include "blockfade/util.hpp"

namespace py = pybind11;
using namespace blockfade;

PYBIND11_MODULE(_blockfade, m) {
  m.doc() = "pedestrian blockage fading toolkit core";
  m.attr("__version__") = "1.0.0";
  m.attr("DEFAULT_SAMPLE_INTERVAL") = kDefaultSampleInterval;

  py::enum_<ModelKind>(m, "ModelKind")
      .value("two_state", ModelKind::two_state)
      .value("four_state", ModelKind::four_state);
  py::enum_<State>(m, "State")
      .value("unshadowed", State::unshadowed)
      .value("decaying", State::decaying)
      .value("shadowed", State::shadowed)
      .value("rising", State::rising);
  py::enum_<TraceOrigin>(m, "TraceOrigin")
      .value("measured", TraceOrigin::measured)
      .value("synthetic", TraceOrigin::synthetic);
  py::enum_<Family>(m, "Family")
      .value("log_normal", Family::log_normal)
      .value("weibull", Family::weibull)
      .value("normal", Family::normal)
      .value("uniform", Family::uniform);

  py::class_<PowerDelayProfile>(m, "PowerDelayProfile")
      .def(py::init<>())
      .def_readwrite("delays_ns", &PowerDelayProfile::delays_ns)
      .def_readwrite("powers_mw", &PowerDelayProfile::powers_mw);

  py::class_<PowerTrace>(m, "PowerTrace")
      .def(py::init<>())
      .def_readwrite("sample_interval", &PowerTrace::sample_interval)
      .def_readwrite("samples_db", &PowerTrace::samples_db)
      .def_readwrite("origin", &PowerTrace::origin)
      .def_readwrite("hpbw_deg", &PowerTrace::hpbw_deg);

  py::class_<StateSequence>(m, "StateSequence")
      .def(py::init<>())
      .def_readwrite("model", &StateSequence::model)
      .def_readwrite("labels", &StateSequence::labels)
      .def_readwrite("sample_interval", &StateSequence::sample_interval);

  py::class_<BlockageEvent>(m, "BlockageEvent")
      .def(py::init<>())
      .def_readwrite("t_start_s", &BlockageEvent::t_start_s)
      .def_readwrite("t_end_s", &BlockageEvent::t_end_s)
      .def_readwrite("t_d_ms", &BlockageEvent::t_d_ms)
      .def_readwrite("t_decay_ms", &BlockageEvent::t_decay_ms)
      .def_readwrite("t_rise_ms", &BlockageEvent::t_rise_ms)
      .def_readwrite("se_mean_db", &BlockageEvent::se_mean_db)
      .def_readwrite("r_decay_db_per_ms", &BlockageEvent::r_decay_db_per_ms)
      .def_readwrite("r_rise_db_per_ms", &BlockageEvent::r_rise_db_per_ms);

  py::class_<DistributionFit>(m, "DistributionFit")
      .def(py::init<>())
      .def_readwrite("family", &DistributionFit::family)
      .def_readwrite("p1", &DistributionFit::p1)
      .def_readwrite("p2", &DistributionFit::p2)
      .def_readwrite("gof", &DistributionFit::gof)
      .def_readwrite("n_samples", &DistributionFit::n_samples)
      .def_readwrite("trim_fraction", &DistributionFit::trim_fraction);

  py::class_<AttenuationModel>(m, "AttenuationModel")
      .def(py::init<>())
      .def_readwrite("b", &AttenuationModel::b);

  py::class_<RateTable>(m, "RateTable")
      .def(py::init<>())
      .def_readwrite("model", &RateTable::model)
      .def_readwrite("rates", &RateTable::rates)
      .def_readwrite("sample_interval_used", &RateTable::sample_interval_used);

  py::class_<BlockageModel>(m, "BlockageModel")
      .def(py::init<>())
      .def_readwrite("hpbw_deg", &BlockageModel::hpbw_deg)
      .def_readwrite("kind", &BlockageModel::kind)
      .def_readwrite("rate_table", &BlockageModel::rate_table)
      .def_readwrite("dist_t_d", &BlockageModel::dist_t_d)
      .def_readwrite("dist_se_mean", &BlockageModel::dist_se_mean)
      .def_readwrite("dist_r_decay", &BlockageModel::dist_r_decay)
      .def_readwrite("dist_r_rise", &BlockageModel::dist_r_rise)
      .def_readwrite("attenuation_model", &BlockageModel::attenuation_model);

  py::class_<Provenance>(m, "Provenance")
      .def(py::init<>())
      .def_readwrite("source_trace_hash", &Provenance::source_trace_hash)
      .def_readwrite("tool_version", &Provenance::tool_version)
      .def_readwrite("seed", &Provenance::seed);

  py::class_<LloydResult>(m, "LloydResult")
      .def(py::init<>())
      .def_readwrite("level_lo", &LloydResult::level_lo)
      .def_readwrite("level_hi", &LloydResult::level_hi)
      .def_readwrite("threshold", &LloydResult::threshold)
      .def_readwrite("shadowed", &LloydResult::shadowed);

  py::class_<ExtractionResult>(m, "ExtractionResult")
      .def(py::init<>())
      .def_readwrite("labels", &ExtractionResult::labels)
      .def_readwrite("events", &ExtractionResult::events)
      .def_readwrite("n_discarded", &ExtractionResult::n_discarded);

  py::class_<EventDraw>(m, "EventDraw")
      .def(py::init<>())
      .def_readwrite("t_d_ms", &EventDraw::t_d_ms)
      .def_readwrite("se_mean_db", &EventDraw::se_mean_db)
      .def_readwrite("r_decay_db_per_ms", &EventDraw::r_decay_db_per_ms)
      .def_readwrite("r_rise_db_per_ms", &EventDraw::r_rise_db_per_ms)
      .def_readwrite("n_rejected", &EventDraw::n_rejected);

  py::class_<SynthesisReport>(m, "SynthesisReport")
      .def(py::init<>())
      .def_readwrite("trace", &SynthesisReport::trace)
      .def_readwrite("ground_truth_events", &SynthesisReport::ground_truth_events)
      .def_readwrite("n_rejected_draws", &SynthesisReport::n_rejected_draws)
      .def_readwrite("n_dropped_events", &SynthesisReport::n_dropped_events);

  // trace
  m.def("integrate_pdp", &integrate_pdp, py::arg("pdp"), py::arg("threshold_db"));
  m.def("normalize_trace", &normalize_trace, py::arg("raw_powers_db"),
        py::arg("sample_interval") = kDefaultSampleInterval);
  m.def("read_trace", &read_trace, py::arg("path"));
  m.def("write_trace", &write_trace, py::arg("trace"), py::arg("path"));
  m.def("read_pdp", &read_pdp, py::arg("path"));

  // segmentation
  m.def("lloyd_max_2level", &lloyd_max_2level, py::arg("samples"));
  m.def("extract_events_two_state", &extract_events_two_state, py::arg("trace"),
        py::arg("threshold_db") = 3.0);
  m.def("extract_events_four_state", &extract_events_four_state,
        py::arg("trace"), py::arg("zero_cross_db") = 0.5);
  m.def("write_events", &write_events, py::arg("events"), py::arg("path"));
  m.def("read_events", &read_events, py::arg("path"));
  m.def("write_labels", &write_labels, py::arg("labels"), py::arg("path"));
  m.def("read_labels", &read_labels, py::arg("path"));

  // markov
  m.def("estimate_rates", &estimate_rates, py::arg("labels"));
  m.def("simulate_chain", &simulate_chain, py::arg("rates"),
        py::arg("sample_interval"), py::arg("n_samples"), py::arg("seed"),
        py::arg("burn_in") = 0);
  m.def("mean_sojourn", &mean_sojourn, py::arg("rates"), py::arg("state"));

  // distributions
  m.def("fit_distribution", &fit_distribution, py::arg("samples"),
        py::arg("family"), py::arg("trim_fraction") = 0.02);
  m.def("fit_all_families", &fit_all_families, py::arg("samples"),
        py::arg("trim_fraction") = 0.02);
  m.def("nmse_gof", &nmse_gof, py::arg("empirical_cdf_values"),
        py::arg("model_cdf_values"));
  m.def("cdf_of", &cdf_of, py::arg("fit"), py::arg("x"));
  m.def("quantile_of", &quantile_of, py::arg("fit"), py::arg("u"));
  m.def("fit_mean", &fit_mean, py::arg("fit"));
  m.def("fit_variance", &fit_variance, py::arg("fit"));
  m.def("nmse_against_samples", &nmse_against_samples, py::arg("fit"),
        py::arg("samples"));
  m.def("sample_distribution", &sample_distribution, py::arg("fit"),
        py::arg("n"), py::arg("seed"));
  m.def("predict_mean_attenuation", &predict_mean_attenuation, py::arg("model"),
        py::arg("hpbw_deg"));
  m.def("fit_mean_attenuation_model", &fit_mean_attenuation_model,
        py::arg("points"));

  // synthesis
  m.def("envelope", &envelope, py::arg("r_decay"), py::arg("r_rise"),
        py::arg("se_mean"), py::arg("t_d"), py::arg("t_ms"));
  m.def("envelope_middle_third_mean", &envelope_middle_third_mean,
        py::arg("r_decay"), py::arg("r_rise"), py::arg("se_mean"),
        py::arg("t_d"));
  m.def("draw_event",
        py::overload_cast<const BlockageModel&, std::uint64_t>(&draw_event),
        py::arg("model"), py::arg("seed"));
  m.def("generate_trace", &generate_trace, py::arg("model"),
        py::arg("duration_s"), py::arg("sample_interval") = kDefaultSampleInterval,
        py::arg("seed") = 0, py::arg("noise_sigma_db") = 0.3);

  // model io
  m.def("serialize_model", &serialize_model, py::arg("model"), py::arg("provenance"));
  m.def("parse_model", &parse_model, py::arg("text"));
  m.def("write_model", &write_model, py::arg("path"), py::arg("model"),
        py::arg("provenance"));
  m.def("read_model", &read_model, py::arg("path"));

  // util
  m.def("fnv1a64_hex", &fnv1a64_hex, py::arg("data"));
  m.def("format_double", &format_double, py::arg("x"));
  m.def("round9", &round9, py::arg("x"));
}
