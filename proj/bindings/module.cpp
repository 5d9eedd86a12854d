#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rcpolar/channel.hpp"
#include "rcpolar/construction.hpp"
#include "rcpolar/crc.hpp"
#include "rcpolar/decode.hpp"
#include "rcpolar/modulation.hpp"
#include "rcpolar/polar.hpp"
#include "rcpolar/puncturing.hpp"
#include "rcpolar/rate_match.hpp"
#include "rcpolar/sim.hpp"
#include "rcpolar/version.hpp"

namespace py = pybind11;
using namespace rcpolar;

namespace {

PpaCriterion make_criterion(const std::string& kind, double design_snr_db, double eps) {
  PpaCriterion c;
  if (kind == "GA") {
    c.kind = PpaCriterion::Kind::GA;
  } else if (kind == "BEC") {
    c.kind = PpaCriterion::Kind::BEC;
  } else {
    throw ConfigError("criterion kind must be GA or BEC");
  }
  c.design_snr_db = design_snr_db;
  c.eps = eps;
  return c;
}

}  // namespace

PYBIND11_MODULE(rcpolar, m) {
  m.doc() = "rate-compatible polar codes: construction, puncturing, rate matching, decoding";
  m.attr("__version__") = kVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<CodeSpec>(m, "CodeSpec")
      .def(py::init<>())
      .def_readwrite("n", &CodeSpec::n)
      .def_readwrite("info_set", &CodeSpec::info_set)
      .def_readwrite("crc_len", &CodeSpec::crc_len)
      .def_readwrite("crc_poly", &CodeSpec::crc_poly)
      .def_property_readonly("N", &CodeSpec::N)
      .def_property_readonly("k", &CodeSpec::k)
      .def_property_readonly("payload_len", &CodeSpec::payload_len)
      .def("validate", &CodeSpec::validate);

  py::class_<Reliabilities> rel(m, "Reliabilities");
  py::enum_<Reliabilities::Kind>(rel, "Kind")
      .value("Z", Reliabilities::Kind::Z)
      .value("LlrMean", Reliabilities::Kind::LlrMean)
      .value("ErrorProb", Reliabilities::Kind::ErrorProb);
  rel.def(py::init<>())
      .def_readwrite("kind", &Reliabilities::kind)
      .def_readwrite("v", &Reliabilities::v);

  py::class_<PunctureOrder>(m, "PunctureOrder")
      .def(py::init<>())
      .def_readwrite("base_n", &PunctureOrder::base_n)
      .def_readwrite("order", &PunctureOrder::order)
      .def_readwrite("criterion", &PunctureOrder::criterion)
      .def_readwrite("design_snr_db", &PunctureOrder::design_snr_db)
      .def_readwrite("eps", &PunctureOrder::eps)
      .def_readwrite("info_set", &PunctureOrder::info_set)
      .def_readonly("step_bound", &PunctureOrder::step_bound)
      .def("validate", &PunctureOrder::validate);

  py::class_<RateMatchConfig>(m, "RateMatchConfig")
      .def(py::init<>())
      .def_readwrite("p", &RateMatchConfig::p)
      .def_readwrite("q", &RateMatchConfig::q)
      .def_readwrite("L", &RateMatchConfig::L)
      .def_readwrite("start_column", &RateMatchConfig::start_column)
      .def_readwrite("order", &RateMatchConfig::order)
      .def("validate", &RateMatchConfig::validate);

  py::class_<DecodeResult>(m, "DecodeResult")
      .def_readonly("u", &DecodeResult::u)
      .def_readonly("info", &DecodeResult::info)
      .def_readonly("payload", &DecodeResult::payload)
      .def_readonly("crc_pass", &DecodeResult::crc_pass)
      .def_readonly("path_metric", &DecodeResult::path_metric);

  // encoding
  m.def("encode", &encode, py::arg("u"), py::arg("n"));
  m.def("place_info", &place_info, py::arg("spec"), py::arg("info"));
  m.def("extract_info", &extract_info, py::arg("spec"), py::arg("u"));
  m.def("encode_payload", &encode_payload, py::arg("spec"), py::arg("payload"));
  m.def("systematic_encode", &systematic_encode, py::arg("info"), py::arg("spec"));

  // construction
  m.def(
      "bec_bit_channels",
      [](int n, double eps, const IndexSet& punct) {
        BecChannels ch = bec_bit_channels(n, eps, punct);
        return py::make_tuple(ch.z, ch.cap);
      },
      py::arg("n"), py::arg("eps"), py::arg("punct") = IndexSet{},
      "returns (bhattacharyya, capacity) per input index");
  m.def("ga_construct", &ga_construct, py::arg("n"), py::arg("design_snr_db"),
        py::arg("punct") = IndexSet{});
  m.def("ga_construct_llr", &ga_construct_llr, py::arg("n"), py::arg("llr_mean"),
        py::arg("punct") = IndexSet{});
  m.def("design_snr_to_llr_mean", &design_snr_to_llr_mean, py::arg("design_snr_db"));
  m.def("select_info_set", &select_info_set, py::arg("rel"), py::arg("k"));
  m.def("error_probs", &error_probs, py::arg("rel"));
  m.def("union_bound", &union_bound, py::arg("info_set"), py::arg("probs"));
  m.def(
      "good_set_fraction",
      [](const Reliabilities& r, int n, double beta) {
        GoodSetParams p;
        p.beta = beta;
        return good_set_fraction(r, n, p);
      },
      py::arg("rel"), py::arg("n"), py::arg("beta") = 0.3);

  // puncturing
  m.def(
      "ppa",
      [](int base_n, const IndexSet& info_set, const std::string& kind, double design_snr_db,
         double eps) { return ppa(base_n, info_set, make_criterion(kind, design_snr_db, eps)); },
      py::arg("base_n"), py::arg("info_set"), py::arg("criterion") = "GA",
      py::arg("design_snr_db") = 3.5, py::arg("eps") = 0.5);
  m.def(
      "exhaustive_search",
      [](int base_n, const IndexSet& info_set, const std::string& kind, double design_snr_db,
         double eps, int mm, uint64_t cap) {
        ExhaustiveResult r =
            exhaustive_search(base_n, info_set, make_criterion(kind, design_snr_db, eps), mm, cap);
        return py::make_tuple(r.pattern, r.bound, r.evaluated);
      },
      py::arg("base_n"), py::arg("info_set"), py::arg("criterion"), py::arg("design_snr_db"),
      py::arg("eps"), py::arg("m"), py::arg("cap") = 2000000,
      "returns (pattern, bound, evaluated)");
  m.def(
      "criterion_bound",
      [](int base_n, const IndexSet& info_set, const std::string& kind, double design_snr_db,
         double eps, const IndexSet& punct) {
        return criterion_bound(base_n, info_set, make_criterion(kind, design_snr_db, eps), punct);
      },
      py::arg("base_n"), py::arg("info_set"), py::arg("criterion"), py::arg("design_snr_db"),
      py::arg("eps"), py::arg("punct"));
  m.def("expand_regular", &expand_regular, py::arg("order"), py::arg("m"), py::arg("n"));

  // rate matching
  m.def("select_bits", py::overload_cast<const BitVec&, const RateMatchConfig&>(&select_bits),
        py::arg("x"), py::arg("rm"));
  m.def("derate_match", &derate_match, py::arg("llrs"), py::arg("rm"));
  m.def("rm_index", &rm_index, py::arg("rm"), py::arg("start_column"), py::arg("t"));

  // modulation
  m.def(
      "modulate",
      [](const BitVec& bits, int order) { return modulate(bits, modulation_from_order(order)); },
      py::arg("bits"), py::arg("order"));
  m.def(
      "demap_llr",
      [](const std::vector<cplx>& r, const std::vector<cplx>& h, double sigma2, int order,
         bool max_log) { return demap_llr(r, h, sigma2, modulation_from_order(order), max_log); },
      py::arg("r"), py::arg("h"), py::arg("sigma2"), py::arg("order"),
      py::arg("max_log") = false);
  m.def(
      "snr_db_to_sigma2",
      [](double snr_db, int order) { return snr_db_to_sigma2(snr_db, modulation_from_order(order)); },
      py::arg("snr_db"), py::arg("order"));

  // decoding
  m.def(
      "sc_decode",
      [](const SoftBuffer& soft, const CodeSpec& spec, bool min_sum) {
        ScOptions opt;
        opt.min_sum = min_sum;
        return sc_decode(soft, spec, opt);
      },
      py::arg("soft"), py::arg("spec"), py::arg("min_sum") = false);
  m.def(
      "scl_decode",
      [](const SoftBuffer& soft, const CodeSpec& spec, int list_size, bool use_crc,
         bool min_sum) {
        ScOptions opt;
        opt.min_sum = min_sum;
        return scl_decode(soft, spec, list_size, use_crc, opt);
      },
      py::arg("soft"), py::arg("spec"), py::arg("list_size") = 1, py::arg("use_crc") = false,
      py::arg("min_sum") = false);

  // crc
  py::class_<Crc>(m, "Crc")
      .def(py::init([](int len, uint32_t poly) { return Crc{len, poly}; }), py::arg("len"),
           py::arg("poly"))
      .def_readonly("len", &Crc::len)
      .def_readonly("poly", &Crc::poly)
      .def("compute", &Crc::compute, py::arg("bits"))
      .def("attach", &Crc::attach, py::arg("payload"))
      .def("check", &Crc::check, py::arg("word"));
  m.def("crc24a", &crc24a);

  // simulator
  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("n", &SimConfig::n)
      .def_readwrite("p", &SimConfig::p)
      .def_readwrite("q", &SimConfig::q)
      .def_readwrite("k", &SimConfig::k)
      .def_readwrite("crc_len", &SimConfig::crc_len)
      .def_readwrite("design_snr_db", &SimConfig::design_snr_db)
      .def_readwrite("info_set_file", &SimConfig::info_set_file)
      .def_readwrite("puncture_order_file", &SimConfig::puncture_order_file)
      .def_readwrite("channel", &SimConfig::channel)
      .def_readwrite("modulation", &SimConfig::modulation)
      .def_readwrite("snr_db", &SimConfig::snr_db)
      .def_readwrite("noiseless", &SimConfig::noiseless)
      .def_readwrite("max_log", &SimConfig::max_log)
      .def_readwrite("L", &SimConfig::L)
      .def_readwrite("start_column", &SimConfig::start_column)
      .def_readwrite("alternating", &SimConfig::alternating)
      .def_readwrite("decoder", &SimConfig::decoder)
      .def_readwrite("list_size", &SimConfig::list_size)
      .def_readwrite("use_crc", &SimConfig::use_crc)
      .def_readwrite("min_sum", &SimConfig::min_sum)
      .def_readwrite("harq_scheme", &SimConfig::harq_scheme)
      .def_readwrite("harq_t", &SimConfig::harq_t)
      .def_readwrite("harq_sessions", &SimConfig::harq_sessions)
      .def_readwrite("min_frame_errors", &SimConfig::min_frame_errors)
      .def_readwrite("max_frames", &SimConfig::max_frames)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("threads", &SimConfig::threads)
      .def_readwrite("batch", &SimConfig::batch)
      .def("validate", &SimConfig::validate);

  py::class_<PointResult>(m, "PointResult")
      .def_readonly("snr_db", &PointResult::snr_db)
      .def_readonly("frames", &PointResult::frames)
      .def_readonly("payload_bits", &PointResult::payload_bits)
      .def_readonly("bit_errors", &PointResult::bit_errors)
      .def_readonly("frame_errors", &PointResult::frame_errors)
      .def_readonly("ber", &PointResult::ber)
      .def_readonly("fer", &PointResult::fer)
      .def_readonly("ber_se", &PointResult::ber_se)
      .def_readonly("fer_se", &PointResult::fer_se);
  py::class_<SweepResult>(m, "SweepResult").def_readonly("points", &SweepResult::points);

  py::class_<HarqPointResult>(m, "HarqPointResult")
      .def_readonly("snr_db", &HarqPointResult::snr_db)
      .def_readonly("sessions", &HarqPointResult::sessions)
      .def_readonly("throughput", &HarqPointResult::throughput)
      .def_readonly("avg_tx", &HarqPointResult::avg_tx)
      .def_readonly("residual_bler", &HarqPointResult::residual_bler);
  py::class_<HarqSweepResult>(m, "HarqSweepResult")
      .def_readonly("points", &HarqSweepResult::points)
      .def_readonly("rate", &HarqSweepResult::rate);

  m.def("parse_config_text", &parse_config_text, py::arg("text"), py::arg("name") = "<config>");
  m.def("parse_config_file", &parse_config_file, py::arg("path"));
  m.def("apply_override", &apply_override, py::arg("cfg"), py::arg("assignment"));
  m.def("resolve_info_set",
        [](const SimConfig& cfg) { return resolve_code(cfg).spec.info_set; });
  m.def("run_sweep", &run_sweep, py::arg("cfg"), py::call_guard<py::gil_scoped_release>());
  m.def("run_harq_sweep", &run_harq_sweep, py::arg("cfg"),
        py::call_guard<py::gil_scoped_release>());
  m.def("sweep_csv", &sweep_csv, py::arg("cfg"), py::arg("result"));
  m.def("harq_csv", &harq_csv, py::arg("cfg"), py::arg("result"));
  m.def("canonical_config", &canonical_config, py::arg("cfg"));
  m.def("config_hash", &config_hash, py::arg("cfg"));
  m.def("read_index_file", &read_index_file, py::arg("path"));
}
