#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qif/io.hpp"
#include "qif/leakage.hpp"
#include "qif/partition.hpp"
#include "qif/planner.hpp"
#include "qif/scoring.hpp"
#include "qif/simulator.hpp"
#include "qif/table.hpp"

namespace py = pybind11;

namespace {

using qif::Json;

// Mechanisms and strategies cross the boundary as JSON text; the Python
// wrapper handles encoding.
struct Loaded {
  qif::Mechanism mech;
  qif::Belief prior;
};

Loaded load(const std::string& mechanism, const std::optional<std::vector<double>>& prior) {
  auto file = qif::mechanism_from_json(Json::parse(mechanism));
  const auto report = qif::validate(file.mechanism);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw qif::Error(qif::ErrorCode::InvalidMechanism, "action '" + v.action + "', secret '" + v.secret + "': " + v.reason);
  }
  auto belief = prior ? qif::Belief(*prior) : file.prior_or_uniform();
  return {std::move(file.mechanism), std::move(belief)};
}

qif::Strategy strategy(const std::string& text) { return qif::strategy_from_json(Json::parse(text)); }

qif::UncertaintyMeasure measure(const std::string& name, const qif::Mechanism& mech) {
  return qif::UncertaintyMeasure::from_name(name, mech.secret_values());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Leakage analysis of action-based randomization mechanisms.";

  static py::exception<qif::Error> error(m, "QifError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const qif::Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(error.ptr(), (std::string("ParseError: ") + e.what()).c_str());
    }
  });

  m.def("validate", [](const std::string& mechanism) {
    const auto file = qif::mechanism_from_json(Json::parse(mechanism));
    std::vector<std::string> lines;
    for (const auto& v : qif::validate(file.mechanism).violations) {
      lines.push_back(v.action + "/" + v.secret + ": " + v.reason);
    }
    return lines;
  });

  m.def(
      "leakage",
      [](const std::string& mechanism, const std::string& strat, const std::string& name,
         const std::optional<std::vector<double>>& prior) {
        const auto in = load(mechanism, prior);
        const auto report = qif::leakage(in.mech, in.prior, strategy(strat), measure(name, in.mech));
        return qif::report_to_json(report, false).dump();
      },
      py::arg("mechanism"), py::arg("strategy"), py::arg("measure") = "shannon", py::arg("prior") = py::none());

  m.def(
      "max_leakage",
      [](const std::string& mechanism, const std::string& name, const std::optional<std::vector<double>>& prior) {
        const auto in = load(mechanism, prior);
        return qif::max_leakage(in.mech, in.prior, measure(name, in.mech));
      },
      py::arg("mechanism"), py::arg("measure") = "shannon", py::arg("prior") = py::none());

  m.def(
      "capacity",
      [](const std::string& mechanism, const std::string& name) {
        const auto in = load(mechanism, std::nullopt);
        return qif::capacity(in.mech, measure(name, in.mech).kind());
      },
      py::arg("mechanism"), py::arg("measure") = "shannon");

  m.def(
      "capacity_search",
      [](const std::string& mechanism, const std::string& name, std::size_t restarts, std::uint64_t seed) {
        const auto in = load(mechanism, std::nullopt);
        auto found = qif::capacity_search(in.mech, measure(name, in.mech), restarts, seed);
        return std::make_pair(found.prior.vector(), found.value);
      },
      py::arg("mechanism"), py::arg("measure") = "shannon", py::arg("restarts") = 32, py::arg("seed") = 0);

  m.def("classes", [](const std::string& mechanism) {
    const auto in = load(mechanism, std::nullopt);
    std::vector<std::vector<std::string>> out;
    const auto partition = qif::indistinguishability_classes(in.mech);
    for (const auto& c : partition.classes()) {
      auto& names = out.emplace_back();
      for (auto x : c) names.push_back(in.mech.secrets()[x]);
    }
    return out;
  });

  m.def(
      "optimal_strategy",
      [](const std::string& mechanism, std::size_t horizon, const std::string& name,
         const std::optional<std::vector<double>>& prior) {
        const auto in = load(mechanism, prior);
        return qif::plan_to_json(qif::optimal_strategy(in.mech, in.prior, measure(name, in.mech), horizon)).dump();
      },
      py::arg("mechanism"), py::arg("horizon"), py::arg("measure") = "shannon", py::arg("prior") = py::none());

  m.def("expand_nonadaptive", [](const std::string& strat) {
    return qif::strategy_to_json(qif::expand_nonadaptive(strategy(strat))).dump();
  });

  m.def(
      "estimate_leakage",
      [](const std::string& mechanism, const std::string& strat, const std::string& name, std::size_t trials,
         std::uint64_t seed, const std::optional<std::vector<double>>& prior) {
        const auto in = load(mechanism, prior);
        qif::SimConfig config;
        config.trials = trials;
        config.seed = seed;
        py::gil_scoped_release release;
        const auto e = qif::estimate_leakage(in.mech, in.prior, strategy(strat), measure(name, in.mech), config);
        return qif::simulation_to_json(e).dump();
      },
      py::arg("mechanism"), py::arg("strategy"), py::arg("measure") = "shannon", py::arg("trials") = 100000,
      py::arg("seed") = 0, py::arg("prior") = py::none());

  m.def(
      "convergence_probe",
      [](const std::string& mechanism, std::size_t rounds, const std::string& name,
         const std::optional<std::vector<double>>& prior) {
        const auto in = load(mechanism, prior);
        std::vector<std::tuple<std::size_t, double, double>> out;
        for (const auto& r : qif::convergence_probe(in.mech, in.prior, measure(name, in.mech), rounds)) {
          out.emplace_back(r.round, r.leakage, r.gap);
        }
        return out;
      },
      py::arg("mechanism"), py::arg("rounds"), py::arg("measure") = "shannon", py::arg("prior") = py::none());

  m.def(
      "uncertainty",
      [](const std::string& name, const std::vector<double>& belief,
         const std::optional<std::vector<double>>& secret_values) {
        return qif::uncertainty_eval(qif::UncertaintyMeasure::from_name(name, secret_values), qif::Belief(belief));
      },
      py::arg("measure"), py::arg("belief"), py::arg("secret_values") = py::none());

  m.def(
      "psr_scores",
      [](const std::string& name, const std::vector<double>& forecast,
         const std::optional<std::vector<double>>& secret_values) {
        const auto rule = qif::psr_from_measure(qif::UncertaintyMeasure::from_name(name, secret_values));
        return rule.scores(qif::Belief(forecast));
      },
      py::arg("measure"), py::arg("forecast"), py::arg("secret_values") = py::none());

  m.def(
      "ingest",
      [](const std::string& csv_path, const std::string& secret_col, const std::vector<std::string>& attrs,
         const std::map<std::string, int>& noise) {
        return qif::mechanism_to_json(qif::table_ingest(qif::read_csv_file(csv_path), secret_col, attrs, noise)).dump();
      },
      py::arg("csv_path"), py::arg("secret_col"), py::arg("attrs"), py::arg("noise") = std::map<std::string, int>{});
}
