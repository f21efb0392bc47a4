#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "domino/io.hpp"
#include "domino/solver.hpp"
#include "domino/substitution.hpp"
#include "domino/surface.hpp"

namespace py = pybind11;
using namespace domino;

namespace {

Substitution parse_substitution(const std::string& text) {
  return io::substitution_from_json(io::json::parse(text));
}

// (lambda, {letter: weight}); raises when no expansion exists.
py::tuple eigen(const std::string& sub_json) {
  const Substitution sub = parse_substitution(sub_json);
  const auto e = sub.expansion() ? sub.expansion() : find_expansion(sub);
  if (!e) throw std::invalid_argument("substitution has no expansion data");
  py::dict v;
  for (int a = 0; a < sub.letter_count(); ++a) v[py::str(sub.letters()[a])] = e->v[a];
  return py::make_tuple(e->lambda, v);
}

std::string expand(const std::string& sub_json, const std::string& word, int steps) {
  const Substitution sub = parse_substitution(sub_json);
  return sub.format(expand_word(sub, sub.parse_word(word), steps));
}

std::string dehn(const std::string& word) {
  return surface::format_group_word(surface::dehn_reduce(surface::parse_group_word(word)));
}

py::int_ ring_size(int ring) {
  const surface::Addressing addr;
  return py::int_(py::str(surface::pos_to_string(addr.ring_size(ring))));
}

std::string solve_json(const std::string& instance_json, std::size_t budget) {
  const auto inst = io::instance_from_json(io::json::parse(instance_json));
  return io::to_json(solver::solve(inst, budget), inst).dump();
}

}  // namespace

PYBIND11_MODULE(_domino, m) {
  m.doc() = "Substitution tilings, orbit graphs and surface-group SFT tools";
  m.def("eigen", &eigen, py::arg("substitution_json"));
  m.def("expand", &expand, py::arg("substitution_json"), py::arg("word"), py::arg("steps"));
  m.def("dehn_reduce", &dehn, py::arg("word"));
  m.def("is_identity", [](const std::string& w) { return surface::is_identity(surface::parse_group_word(w)); },
        py::arg("word"));
  m.def("ring_size", &ring_size, py::arg("ring"));
  m.def("solve_json", &solve_json, py::arg("instance_json"), py::arg("budget") = 1000000);
}
