#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>

#include "trustnet/error.hpp"
#include "trustnet/harness.hpp"
#include "trustnet/scenario.hpp"
#include "trustnet/trust_engine.hpp"

namespace py = pybind11;
using trustnet::json;

namespace {

json toJson(const py::handle& obj) {
  auto dumps = py::module_::import("json").attr("dumps");
  return json::parse(dumps(obj).cast<std::string>());
}

py::object fromJson(const json& j) {
  auto loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

std::vector<trustnet::RoundTally> toHistory(const std::vector<std::pair<int, int>>& rounds) {
  std::vector<trustnet::RoundTally> out;
  for (auto [g, b] : rounds) out.push_back({g, b});
  return out;
}

py::object runScenarioDict(const py::dict& config, const std::optional<std::string>& auditLog) {
  auto scenario = trustnet::scenarioFromJson(toJson(config));
  std::ofstream audit;
  trustnet::RunOptions options;
  if (auditLog) {
    audit.open(*auditLog, std::ios::trunc);
    if (!audit) throw trustnet::Error(trustnet::ErrorCode::IoError, "cannot write " + *auditLog);
    options.auditLog = &audit;
  }
  trustnet::RunReport report;
  {
    py::gil_scoped_release release;
    report = trustnet::runScenario(scenario, options);
  }
  return fromJson(trustnet::reportToJson(report, true));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Trust and reputation rounds for distributed SDN controllers";

  py::register_exception<trustnet::Error>(m, "TrustnetError", PyExc_RuntimeError);

  py::enum_<trustnet::ComparisonOutcome>(m, "ComparisonOutcome")
      .value("Match", trustnet::ComparisonOutcome::Match)
      .value("Mismatch", trustnet::ComparisonOutcome::Mismatch);

  py::class_<trustnet::TrustParams>(m, "TrustParams")
      .def(py::init<>())
      .def_readwrite("s1", &trustnet::TrustParams::s1)
      .def_readwrite("s2", &trustnet::TrustParams::s2)
      .def_readwrite("w_er", &trustnet::TrustParams::wEr)
      .def_readwrite("w_ir", &trustnet::TrustParams::wIr)
      .def_readwrite("w_re", &trustnet::TrustParams::wRe)
      .def_readwrite("w_ri", &trustnet::TrustParams::wRi)
      .def_readwrite("risk_window", &trustnet::TrustParams::riskWindow)
      .def_readwrite("tau", &trustnet::TrustParams::tau)
      .def("validate", &trustnet::TrustParams::validate);

  const trustnet::TrustParams defaults;
  m.def("rate", &trustnet::rate, py::arg("outcome"), py::arg("params") = defaults);
  m.def("opinion_score", &trustnet::opinionScore, py::arg("good"), py::arg("bad"),
        py::arg("params") = defaults);
  m.def(
      "compute_ir",
      [](const std::vector<std::pair<int, int>>& history, const trustnet::TrustParams& p) {
        return trustnet::computeIr(toHistory(history), p);
      },
      py::arg("history"), py::arg("params") = defaults);
  m.def(
      "compute_er", [](const std::vector<double>& opinions) { return trustnet::computeEr(opinions); },
      py::arg("peer_opinions"));
  m.def("compute_re", &trustnet::computeRe, py::arg("er"), py::arg("ir"), py::arg("params") = defaults);
  m.def(
      "compute_ri",
      [](const std::vector<std::pair<int, int>>& history, const trustnet::TrustParams& p) {
        return trustnet::computeRi(toHistory(history), p);
      },
      py::arg("history"), py::arg("params") = defaults);
  m.def("compute_t", &trustnet::computeT, py::arg("re"), py::arg("ri"), py::arg("params") = defaults);

  m.def(
      "compare_policy",
      [](const py::dict& expected, const py::list& flowTable) {
        const auto policy = toJson(expected).get<trustnet::Policy>();
        std::vector<trustnet::FlowEntry> entries;
        for (const auto& p : toJson(flowTable)) entries.push_back({p.get<trustnet::Policy>(), {}});
        return trustnet::comparePolicy(policy, entries) == trustnet::ComparisonOutcome::Match;
      },
      py::arg("expected"), py::arg("flow_table"),
      "True iff some policy in flow_table equals expected (match map and action).");

  m.def("builtin_names", &trustnet::builtinNames);
  m.def(
      "builtin_scenario",
      [](const std::string& name, std::uint64_t seed) {
        return fromJson(trustnet::scenarioToJson(trustnet::builtinScenario(name, seed)));
      },
      py::arg("name"), py::arg("seed") = 1);
  m.def(
      "load_scenario",
      [](const std::string& path) { return fromJson(trustnet::scenarioToJson(trustnet::loadScenario(path))); },
      py::arg("path"));
  m.def("run_scenario", &runScenarioDict, py::arg("config"), py::arg("audit_log") = py::none(),
        "Run a scenario given as a dict; returns the report (with timing) as a dict.");
  m.def(
      "render_csv",
      [](const py::list& reports) {
        std::vector<trustnet::RunReport> parsed;
        for (const auto& r : reports) parsed.push_back(trustnet::reportFromJson(toJson(r)));
        return trustnet::renderCsv(parsed);
      },
      py::arg("reports"));
}
