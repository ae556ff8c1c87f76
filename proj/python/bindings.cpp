#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>

#include "parplan/deorder.hpp"
#include "parplan/pddl.hpp"
#include "parplan/pipeline.hpp"
#include "parplan/plan.hpp"
#include "parplan/validator.hpp"

namespace py = pybind11;
using namespace parplan;

namespace {

std::vector<std::vector<std::string>> step_names(const PlanningTask &task, const ParallelPlan &plan) {
  std::vector<std::vector<std::string>> out;
  for (const auto &step : plan.steps) {
    std::vector<std::string> names;
    for (ActionId a : step) names.push_back(task.actions[a].name);
    std::sort(names.begin(), names.end());
    out.push_back(std::move(names));
  }
  return out;
}

SearchConfig config_from(const std::map<std::string, std::string> &options) {
  SearchConfig c = default_config();
  for (const auto &[name, value] : options) apply_option(c, name, value);
  return c;
}

std::shared_ptr<PlanningTask> load(const std::string &domain_text, const std::string &problem_text) {
  const Domain d = parse_domain(domain_text);
  return std::make_shared<PlanningTask>(ground(d, parse_problem(problem_text, d)));
}

struct PySolution {
  std::string outcome;
  std::optional<int> makespan;
  std::optional<int> actions;
  long expansions = 0;
  double wall_time = 0.0;
  std::vector<std::vector<std::string>> steps;
  std::string plan_text;
  std::string config;
};

PySolution to_py(const Solution &s) {
  PySolution p;
  p.outcome = s.record.outcome;
  p.makespan = s.record.makespan;
  p.actions = s.record.actions;
  p.expansions = s.record.expansions;
  p.wall_time = s.record.wall_time;
  p.config = s.record.config;
  if (s.search.outcome == SearchOutcome::Solved && s.record.outcome == "solved") {
    p.steps = step_names(s.task, s.search.plan);
    p.plan_text = format_plan(s.task, s.search.plan);
  }
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Parallel STRIPS planning by regression search";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);
  py::register_exception<PlanFormatError>(m, "PlanFormatError", PyExc_ValueError);

  py::class_<PlanningTask, std::shared_ptr<PlanningTask>>(m, "Task")
      .def_static("from_text", &load, py::arg("domain"), py::arg("problem"))
      .def_static(
          "from_files",
          [](const std::string &domain_path, const std::string &problem_path) {
            return load(read_file(domain_path), read_file(problem_path));
          },
          py::arg("domain_path"), py::arg("problem_path"))
      .def_readonly("domain_name", &PlanningTask::domain_name)
      .def_readonly("problem_name", &PlanningTask::problem_name)
      .def_property_readonly("num_atoms", &PlanningTask::num_atoms)
      .def_property_readonly("num_actions", &PlanningTask::num_actions)
      .def_property_readonly("atoms",
                             [](const PlanningTask &t) {
                               std::vector<std::string> out;
                               for (std::size_t i = 0; i < t.num_atoms(); ++i) out.push_back(t.atom_name(i));
                               return out;
                             })
      .def_property_readonly("actions",
                             [](const PlanningTask &t) {
                               std::vector<std::string> out;
                               for (const auto &a : t.actions) out.push_back(a.name);
                               return out;
                             })
      .def_property_readonly("goal",
                             [](const PlanningTask &t) {
                               std::vector<std::string> out;
                               for (AtomId p : t.goal) out.push_back(t.atom_name(p));
                               return out;
                             })
      .def("__repr__", [](const PlanningTask &t) {
        return "<Task " + t.problem_name + ": " + std::to_string(t.num_atoms()) + " atoms, " +
               std::to_string(t.num_actions()) + " actions>";
      });

  py::class_<PySolution>(m, "Solution")
      .def_readonly("outcome", &PySolution::outcome)
      .def_readonly("makespan", &PySolution::makespan)
      .def_readonly("actions", &PySolution::actions)
      .def_readonly("expansions", &PySolution::expansions)
      .def_readonly("wall_time", &PySolution::wall_time)
      .def_readonly("steps", &PySolution::steps)
      .def_readonly("plan_text", &PySolution::plan_text)
      .def_readonly("config", &PySolution::config)
      .def_property_readonly("solved", [](const PySolution &s) { return s.outcome == "solved"; })
      .def("__repr__", [](const PySolution &s) {
        return "<Solution " + s.outcome + (s.makespan ? " makespan=" + std::to_string(*s.makespan) : "") + ">";
      });

  m.def(
      "solve",
      [](const std::string &domain_path, const std::string &problem_path,
         const std::map<std::string, std::string> &options) {
        const SearchConfig c = config_from(options);
        py::gil_scoped_release release;
        return to_py(solve_files(domain_path, problem_path, c));
      },
      py::arg("domain_path"), py::arg("problem_path"), py::arg("options") = std::map<std::string, std::string>{},
      "Plan for a PDDL domain/problem pair.  Options use the command-line names, e.g. {'pushup': 'off'}.");
  m.def(
      "solve_text",
      [](const std::string &domain, const std::string &problem, const std::map<std::string, std::string> &options) {
        const SearchConfig c = config_from(options);
        py::gil_scoped_release release;
        return to_py(solve_text(domain, problem, c));
      },
      py::arg("domain"), py::arg("problem"), py::arg("options") = std::map<std::string, std::string>{});

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("valid", &ValidationReport::valid)
      .def_readonly("makespan", &ValidationReport::makespan)
      .def_readonly("action_count", &ValidationReport::action_count)
      .def_property_readonly("failures",
                             [](const ValidationReport &r) {
                               std::vector<std::tuple<int, std::string, std::string>> out;
                               for (const auto &f : r.failures) out.emplace_back(f.step, to_string(f.reason), f.detail);
                               return out;
                             })
      .def("summary", &ValidationReport::summary)
      .def("__bool__", [](const ValidationReport &r) { return r.valid; });

  m.def(
      "validate",
      [](const PlanningTask &task, const std::string &plan_text) { return validate(task, parse_plan(task, plan_text)); },
      py::arg("task"), py::arg("plan_text"));
  m.def(
      "deorder",
      [](const PlanningTask &task, const std::string &plan_text) {
        return format_plan(task, deorder_plan(task, parse_plan(task, plan_text)));
      },
      py::arg("task"), py::arg("plan_text"), "Re-schedule a valid plan through minimal de-ordering.");
  m.def("csv_header", &csv_header);
}
