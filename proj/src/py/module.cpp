#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "silverchase/chase.hpp"
#include "silverchase/formats.hpp"
#include "silverchase/game.hpp"

namespace py = pybind11;
using namespace silverchase;

PYBIND11_MODULE(_silverchase, m) {
  m.doc() = "Finite-scale laboratory for Silver conditions and localization trees";

  py::register_exception<arity_error>(m, "ArityError");
  py::register_exception<domain_error>(m, "DomainError");
  py::register_exception<io::parse_error>(m, "ParseError");

  py::class_<SilverCondition>(m, "SilverCondition")
      .def(py::init<int, int, std::map<int, Symbol>>(), py::arg("arity"), py::arg("bound"),
           py::arg("assignments"))
      .def_readonly("value_arity", &SilverCondition::value_arity)
      .def_readonly("bound", &SilverCondition::bound)
      .def_readonly("assignments", &SilverCondition::assignments)
      .def("is_free", &SilverCondition::is_free)
      .def("__eq__", [](const SilverCondition& a, const SilverCondition& b) { return a == b; })
      .def("__repr__", [](const SilverCondition& f) {
        return "SilverCondition('" + io::write_condition(f) + "')";
      });

  m.def("empty_condition", &empty_condition, py::arg("arity"));
  m.def("free_point", &free_point, py::arg("f"), py::arg("i"));
  m.def("star", &star, py::arg("f"), py::arg("sigma"));
  m.def("leq", &leq, py::arg("f"), py::arg("g"));
  m.def("leq_star", &leq_star, py::arg("i"), py::arg("f"), py::arg("g"));
  m.def("compatible", &compatible, py::arg("f"), py::arg("g"));
  m.def("join", &join, py::arg("f"), py::arg("g"));
  m.def("parse_condition", &io::parse_condition, py::arg("text"));
  m.def("write_condition", &io::write_condition, py::arg("f"));

  py::class_<PsiTable>(m, "PsiTable")
      .def(py::init<int, int>(), py::arg("arity"), py::arg("horizon"))
      .def_property_readonly("arity", &PsiTable::arity)
      .def_property_readonly("horizon", &PsiTable::horizon)
      .def("label", &PsiTable::label)
      .def("set_label", &PsiTable::set_label)
      .def("all_strings", &PsiTable::all_strings)
      .def("__eq__", [](const PsiTable& a, const PsiTable& b) { return a == b; });

  py::class_<LabeledTree>(m, "LabeledTree")
      .def_readonly("nodes", &LabeledTree::nodes)
      .def("successors", &LabeledTree::successors)
      .def("depth", &LabeledTree::depth)
      .def("__eq__", [](const LabeledTree& a, const LabeledTree& b) { return a == b; });

  m.def("psi_star", &psi_star, py::arg("psi"), py::arg("t"));
  m.def("witness_set", &witness_set, py::arg("xi"), py::arg("level"));
  m.def("localization_tree", &localization_tree, py::arg("psi"), py::arg("xi"), py::arg("level"));
  m.def("equiv_star", &equiv_star, py::arg("psi"), py::arg("s"), py::arg("t"));
  m.def("equiv_horizon", &equiv_horizon, py::arg("psi"), py::arg("s"), py::arg("t"));
  m.def("is_k_ary", &is_k_ary, py::arg("tree"), py::arg("k"));
  m.def("branching_profile", &branching_profile, py::arg("tree"));
  m.def("parse_psi", &io::parse_psi_string, py::arg("text"));
  m.def("write_psi", &io::write_psi, py::arg("table"), py::arg("comment") = std::string{});

  py::enum_<ChaseStatus>(m, "ChaseStatus")
      .value("completed", ChaseStatus::completed)
      .value("horizon_exhausted", ChaseStatus::horizon_exhausted);

  py::class_<ChaseResult>(m, "ChaseResult")
      .def_readonly("status", &ChaseResult::status)
      .def_readonly("final_assignment", &ChaseResult::final_assignment)
      .def_readonly("final_tree", &ChaseResult::final_tree)
      .def_property_readonly("stage_count",
                             [](const ChaseResult& r) { return r.stages.size(); })
      .def("to_json", [](const ChaseResult& r) { return io::chase_result_to_json(r).dump(2); });

  m.def("chase", &chase, py::arg("psi"), py::arg("max_stages") = 1000);
  m.def("oracle_search", &oracle_search, py::arg("psi"), py::arg("depth"), py::arg("free_count"),
        py::arg("k"), py::arg("threads") = 1);

  py::enum_<PsiKind>(m, "PsiKind")
      .value("random_labels", PsiKind::random_labels)
      .value("level_injective", PsiKind::level_injective)
      .value("constant", PsiKind::constant)
      .value("collapsing", PsiKind::collapsing);

  m.def("gen_psi", &gen_psi, py::arg("seed"), py::arg("arity"), py::arg("horizon"),
        py::arg("label_range"), py::arg("kind") = PsiKind::random_labels);

  // Game refereeing over the JSON document formats.
  m.def(
      "validate_transcript",
      [](const std::string& poset_doc, const std::string& transcript_doc) {
        auto poset = io::poset_from_json(nlohmann::json::parse(poset_doc));
        auto transcript = io::transcript_from_json(nlohmann::json::parse(transcript_doc));
        return io::verdict_to_json(validate_transcript(poset, transcript)).dump(2);
      },
      py::arg("poset_json"), py::arg("transcript_json"),
      "Referee a transcript; both arguments and the result are JSON document strings.");
  m.def(
      "scripted_silver_play",
      [](int n, int stride, int offset, const SilverCondition& root, int rounds) {
        auto play = scripted_silver_play(n, NiceSet::progression(stride, offset), root, rounds);
        return io::transcript_to_json(play).dump(2);
      },
      py::arg("n"), py::arg("stride"), py::arg("offset"), py::arg("root"), py::arg("rounds"));

  m.def("tree_to_dot", &io::tree_to_dot, py::arg("tree"), py::arg("name") = std::string("tree"));
}
