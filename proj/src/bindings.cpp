#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "charsum/circuits.hpp"
#include "charsum/groups.hpp"
#include "charsum/search.hpp"

namespace py = pybind11;
using namespace charsum;

namespace {

py::dict histogram_dict(const Histogram& h) {
  py::dict bins;
  for (const auto& [s, c] : h.bins) bins[py::int_(s)] = py::int_(c);
  return bins;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "character-sum algebra over Z3 with forms over Z2";

  // translators run newest-first: the subtype goes after its base
  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
  py::register_exception<capacity_error>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<verification_error>(m, "VerificationError",
                                             PyExc_RuntimeError);

  py::class_<LinearForm>(m, "LinearForm")
      .def_static("parse", &LinearForm::parse, py::arg("text"), py::arg("n"))
      .def_property_readonly("n", &LinearForm::n)
      .def("eval", &LinearForm::eval)
      .def("__add__", &LinearForm::operator+)
      .def("__eq__", [](const LinearForm& a, const LinearForm& b) { return a == b; })
      .def("__str__", &LinearForm::to_string)
      .def("__repr__", [](const LinearForm& l) {
        return "LinearForm('" + l.to_string() + "', n=" + std::to_string(l.n()) + ")";
      });

  py::class_<QuadraticForm>(m, "QuadraticForm")
      .def(py::init<int>(), py::arg("n"))
      .def_static("parse", &QuadraticForm::parse, py::arg("text"), py::arg("n"))
      .def_static("decode", &QuadraticForm::decode, py::arg("n"), py::arg("bits"))
      .def_property_readonly("n", &QuadraticForm::n)
      .def("encode", &QuadraticForm::encode)
      .def("eval", &QuadraticForm::eval)
      .def("support", &QuadraticForm::support)
      .def("is_linear", &QuadraticForm::is_linear)
      .def("__add__", &QuadraticForm::operator+)
      .def("__eq__",
           [](const QuadraticForm& a, const QuadraticForm& b) { return a == b; })
      .def("__hash__", [](const QuadraticForm& q) { return q.encode(); })
      .def("__str__", &QuadraticForm::to_string)
      .def("__repr__", [](const QuadraticForm& q) {
        return "QuadraticForm('" + q.to_string() + "', n=" + std::to_string(q.n()) +
               ")";
      });

  py::class_<WittDecomposition>(m, "WittDecomposition")
      .def_property_readonly("rank", &WittDecomposition::rank)
      .def_property_readonly("residual",
                             [](const WittDecomposition& d) { return d.residual; })
      .def_property_readonly("pairs",
                             [](const WittDecomposition& d) { return d.pairs; })
      .def("recompose", &WittDecomposition::recompose);

  m.def("witt_decompose", &witt_decompose);
  m.def("witt_rank", &witt_rank);
  m.def("witt_normal_form", &witt_normal_form);
  m.def(
      "random_form",
      [](int n, uint64_t seed, uint64_t stream) {
        RandomStream rng(seed, stream);
        return random_form(n, rng);
      },
      py::arg("n"), py::arg("seed"), py::arg("stream") = 0);
  m.def("family_support_profile", &family_support_profile, py::arg("n"),
        py::arg("r"));

  py::class_<FunctionTable>(m, "FunctionTable")
      .def(py::init<int>(), py::arg("n"))
      .def_static("parse", &FunctionTable::parse)
      .def_property_readonly("n", &FunctionTable::n)
      .def("value", &FunctionTable::value)
      .def("set_value", &FunctionTable::set_value)
      .def("support", &FunctionTable::support)
      .def("ones_twos", &FunctionTable::ones_twos)
      .def("__add__", &FunctionTable::operator+)
      .def("__eq__",
           [](const FunctionTable& a, const FunctionTable& b) { return a == b; })
      .def("__str__", &FunctionTable::to_string)
      .def("__repr__",
           [](const FunctionTable& t) { return "FunctionTable('" + t.to_string() + "')"; });

  py::class_<CharacterSum>(m, "CharacterSum")
      .def(py::init<int>(), py::arg("n"))
      .def(py::init<int, std::vector<QuadraticForm>>(), py::arg("n"),
           py::arg("terms"))
      .def_static("parse", &CharacterSum::parse, py::arg("text"), py::arg("n"))
      .def_property_readonly("n", &CharacterSum::n)
      .def_property_readonly("weight", &CharacterSum::weight)
      .def_property_readonly("terms", &CharacterSum::terms)
      .def("add_term", &CharacterSum::add_term)
      .def("__str__", &CharacterSum::to_string);

  m.def("character_table", &character_table);
  m.def("sum_table", &sum_table);
  m.def("and_table", &and_table);
  m.def("and_product_construction", &and_product_construction);
  m.def("expand_character", &expand_character);
  m.def("expand_to_full_rank", &expand_to_full_rank);
  m.def("shift_sum", &shift_sum);
  m.def("check_tradeoff", &check_tradeoff, py::arg("table"), py::arg("w"));

  py::class_<MultilinearPoly>(m, "MultilinearPoly")
      .def_property_readonly("n", &MultilinearPoly::n)
      .def_property_readonly("degree", &MultilinearPoly::degree)
      .def("coeff", &MultilinearPoly::coeff)
      .def("eval", &MultilinearPoly::eval)
      .def("to_table", &MultilinearPoly::to_table);

  m.def("interpolate", &interpolate);
  m.def("poly_degree", &poly_degree);

  py::class_<Circuit>(m, "Circuit")
      .def_static("parse_netlist", &Circuit::parse_netlist)
      .def("evaluate", &Circuit::evaluate)
      .def("depth", &Circuit::depth)
      .def("logic_gate_count", &Circuit::logic_gate_count)
      .def("to_netlist", &Circuit::to_netlist)
      .def("__str__", &Circuit::to_netlist);

  m.def("characters_to_depth2", &characters_to_depth2);
  m.def("depth2_to_characters", &depth2_to_characters);
  m.def("characters_to_depth3", &characters_to_depth3);
  m.def("depth3_to_characters", &depth3_to_characters);

  py::class_<Permutation>(m, "Permutation")
      .def_static("identity", &Permutation::identity)
      .def_static("parse_cycles", &Permutation::parse_cycles, py::arg("text"),
                  py::arg("degree"))
      .def_property_readonly("degree", &Permutation::degree)
      .def("apply", &Permutation::apply)
      .def("__mul__", &Permutation::operator*)
      .def("__eq__",
           [](const Permutation& a, const Permutation& b) { return a == b; })
      .def("__str__", &Permutation::to_cycles)
      .def("__repr__",
           [](const Permutation& p) { return "Permutation('" + p.to_cycles() + "')"; });

  m.def("g72_generators", []() {
    auto [a, b, c, d, e] = g72_generators();
    return py::make_tuple(a, b, c, d, e);
  });
  m.def("g72_word", &g72_word);
  m.def("closure", &closure);
  m.def(
      "eval_g72_program",
      [](const std::string& text, const std::string& input) {
        Program p = parse_program(text, g72_word);
        std::vector<int> bits;
        for (char c : input) bits.push_back(c == '1' ? 1 : 0);
        ProgramResult r = eval_program(p, bits);
        return py::make_tuple(r.element, r.accepted);
      },
      py::arg("program_text"), py::arg("input_bits"));

  py::class_<WeightWitness>(m, "WeightWitness")
      .def_property_readonly("weight",
                             [](const WeightWitness& w) { return w.weight; })
      .def_property_readonly("sum", [](const WeightWitness& w) { return w.sum; })
      .def_property_readonly("target",
                             [](const WeightWitness& w) { return w.target; })
      .def("__str__", &WeightWitness::to_text);

  m.def(
      "bfs_min_weight",
      [](const FunctionTable& target, const std::string& family) {
        GeneratorFamily f = family == "linear" ? GeneratorFamily::LinearOnly
                                               : GeneratorFamily::Quadratic;
        return bfs_min_weight(target, f);
      },
      py::arg("target"), py::arg("family") = "quadratic");

  m.def(
      "sample_histogram",
      [](int n, int w, uint64_t samples, uint64_t seed, int threads) {
        return histogram_dict(sample_histogram(n, w, samples, seed, threads));
      },
      py::arg("n"), py::arg("w"), py::arg("samples"), py::arg("seed") = 0,
      py::arg("threads") = 0);

  m.def("witt_class_sizes", [](int n) {
    py::dict out;
    for (const auto& [code, count] : witt_class_sizes(n))
      out[py::str(QuadraticForm::decode(n, code).to_string())] = py::int_(count);
    return out;
  });

  m.def("enumerate_weight3", [](int n) {
    Histogram h = enumerate_weight3(n);
    py::dict normalized;
    for (const auto& [s, c] : h.bins)
      normalized[py::int_(s)] = py::float_(h.normalized(s));
    return py::make_tuple(histogram_dict(h), normalized);
  });

  m.def(
      "occupancy_grid",
      [](int n, int w, uint64_t samples, uint64_t seed, int threads) {
        OccupancyGrid g = occupancy_grid(n, w, samples, seed, threads);
        std::vector<std::string> rows;
        std::istringstream in(g.to_text());
        std::string line;
        while (std::getline(in, line)) rows.push_back(line);
        return rows;
      },
      py::arg("n"), py::arg("w"), py::arg("samples"), py::arg("seed") = 0,
      py::arg("threads") = 0);

  m.def("pair_sums_to_and", &pair_sums_to_and);
  m.def("scan_complementary_pairs", &scan_complementary_pairs);

  m.attr("__version__") = "0.1.0";
}
