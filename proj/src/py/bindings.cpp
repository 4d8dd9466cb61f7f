#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sepcert/cli.hpp"
#include "sepcert/decomp.hpp"
#include "sepcert/graph_states.hpp"
#include "sepcert/io.hpp"
#include "sepcert/suite.hpp"
#include "sepcert/witness_bank.hpp"
#include "sepcert/xstate.hpp"

namespace py = pybind11;
using namespace sepcert;

namespace {

SeparabilityClass class_arg(int n, const std::string& name) { return class_from_name(n, name); }

}  // namespace

PYBIND11_MODULE(_sepcert, m) {
  m.doc() = "multipartite separability witnesses and explicit decompositions";

  py::register_exception<Error>(m, "SepcertError");

  py::class_<PauliString>(m, "PauliString")
      .def(py::init<const std::string&>())
      .def("__str__", &PauliString::str)
      .def("__repr__", [](const PauliString& s) { return "PauliString('" + s.str() + "')"; })
      .def("__len__", &PauliString::size)
      .def("__eq__", [](const PauliString& a, const PauliString& b) { return a == b; });

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init([](int n, const Mat& entries) { return DensityMatrix{n, entries}; }),
           py::arg("n"), py::arg("entries"))
      .def_readonly("n", &DensityMatrix::n)
      .def_readonly("entries", &DensityMatrix::entries);

  py::class_<CharTensor>(m, "CharTensor")
      .def_readonly("n", &CharTensor::n)
      .def_readonly("values", &CharTensor::values)
      .def("__getitem__",
           [](const CharTensor& R, const std::string& s) { return R[PauliString(s)]; });

  m.def("char_from_density", &char_from_density, py::arg("rho"), py::arg("tol") = kDefaultTol);
  m.def("density_from_char", &density_from_char);
  m.def("named_pure_state", &named_pure_state);
  m.def("noisy_mix", &noisy_mix);

  py::class_<WitnessSpec>(m, "WitnessSpec")
      .def(py::init([](int n) {
             WitnessSpec w;
             w.n = n;
             return w;
           }),
           py::arg("n"))
      .def_readonly("n", &WitnessSpec::n)
      .def_readwrite("constant", &WitnessSpec::constant)
      .def("set", [](WitnessSpec& w, const std::string& s, double c) { w.set(PauliString(s), c); })
      .def("inner", &WitnessSpec::inner)
      .def("scaled", &WitnessSpec::scaled)
      .def("terms", [](const WitnessSpec& w) {
        std::map<std::string, double> out;
        for (const auto& [s, c] : w.terms) out[s.str()] = c;
        return out;
      });

  py::class_<OptimizerOptions>(m, "OptimizerOptions")
      .def(py::init<>())
      .def_readwrite("tol", &OptimizerOptions::tol)
      .def_readwrite("max_sweeps", &OptimizerOptions::max_sweeps)
      .def_readwrite("deterministic_starts", &OptimizerOptions::deterministic_starts)
      .def_readwrite("random_starts", &OptimizerOptions::random_starts)
      .def_readwrite("seed", &OptimizerOptions::seed);

  m.def(
      "max_over_class",
      [](const WitnessSpec& w, const std::string& cls, const OptimizerOptions& o) {
        return max_over_class(w, class_arg(w.n, cls), o).bound;
      },
      py::arg("witness"), py::arg("cls"), py::arg("options") = OptimizerOptions{});
  m.def(
      "noise_threshold",
      [](const WitnessSpec& w, const CharTensor& pure, const std::string& cls,
         const OptimizerOptions& o) { return noise_threshold(w, pure, class_arg(w.n, cls), o); },
      py::arg("witness"), py::arg("pure"), py::arg("cls"),
      py::arg("options") = OptimizerOptions{});

  py::class_<MatchedWitnessResult>(m, "MatchedWitnessResult")
      .def_readonly("witness", &MatchedWitnessResult::witness)
      .def_readonly("p", &MatchedWitnessResult::p);
  m.def(
      "matched_witness_search",
      [](const CharTensor& R, const std::vector<std::string>& support, const std::string& cls,
         const OptimizerOptions& o) {
        std::vector<PauliString> sup;
        for (const auto& s : support) sup.emplace_back(s);
        return matched_witness_search(R, sup, class_arg(R.n, cls), o);
      },
      py::arg("R"), py::arg("support"), py::arg("cls"), py::arg("options") = OptimizerOptions{});

  py::class_<Rational>(m, "Rational")
      .def_readonly("num", &Rational::num)
      .def_readonly("den", &Rational::den)
      .def("value", &Rational::value);

  py::class_<NamedWitness>(m, "NamedWitness")
      .def_readonly("id", &NamedWitness::id)
      .def_readonly("spec", &NamedWitness::spec)
      .def_readonly("state_id", &NamedWitness::state_id)
      .def_readonly("bound", &NamedWitness::bound)
      .def_readonly("inner", &NamedWitness::inner)
      .def_readonly("threshold", &NamedWitness::threshold)
      .def_readonly("notes", &NamedWitness::notes);
  m.def("named_witness", &named_witness);
  m.def("witness_bank_ids", &witness_bank_ids);

  py::class_<XState>(m, "XState")
      .def(py::init([](const std::array<double, 8>& diag, const std::array<double, 4>& anti) {
             XState x;
             x.diag = diag;
             x.anti = anti;
             return x;
           }),
           py::arg("diag"), py::arg("anti"))
      .def_readonly("diag", &XState::diag)
      .def_readonly("anti", &XState::anti)
      .def("embed", &XState::embed)
      .def("validate", &XState::validate, py::arg("tol") = 1e-12)
      .def_static("from_density", &XState::from_density, py::arg("rho"),
                  py::arg("tol") = kDefaultTol);

  py::class_<Theorem2Verdict>(m, "Theorem2Verdict")
      .def_readonly("separable", &Theorem2Verdict::separable)
      .def_readonly("lhs", &Theorem2Verdict::lhs)
      .def_readonly("rhs", &Theorem2Verdict::rhs)
      .def_readonly("margin", &Theorem2Verdict::margin);
  m.def("theorem2_verdict", &theorem2_verdict);
  m.def("xstate_char", &xstate_char);

  py::class_<XDecomposition>(m, "XDecomposition")
      .def_readonly("kappa", &XDecomposition::kappa)
      .def_readonly("residual", &XDecomposition::residual)
      .def_readonly("min_slack", &XDecomposition::min_slack);
  m.def("decompose_xstate", &decompose_xstate);

  py::class_<DecompReport>(m, "DecompReport")
      .def_readonly("pass_", &DecompReport::pass)
      .def_readonly("reconstruction_error", &DecompReport::reconstruction_error)
      .def_readonly("min_factor_eigenvalue", &DecompReport::min_factor_eigenvalue);
  m.def("verify_builtin_decomposition", [](const std::string& id, double tol) {
    const BuiltinDecomposition b = builtin_decomposition(id);
    return verify_decomposition(b.decomposition, b.target, b.cls, tol);
  });

  py::class_<CriterionResult>(m, "CriterionResult")
      .def_readonly("index", &CriterionResult::index)
      .def_readonly("title", &CriterionResult::title)
      .def_readonly("pass_", &CriterionResult::pass)
      .def_readonly("measured", &CriterionResult::measured)
      .def_readonly("note", &CriterionResult::note);
  py::class_<SuiteReport>(m, "SuiteReport")
      .def_readonly("all_pass", &SuiteReport::all_pass)
      .def_readonly("criteria", &SuiteReport::criteria);
  m.def(
      "run_reproduction_suite",
      [](int resolution, std::uint64_t seed) {
        SuiteOptions o;
        o.resolution = resolution;
        o.seed = seed;
        return run_reproduction_suite(o);
      },
      py::arg("resolution") = 17, py::arg("seed") = 0);
  m.def("format_suite_report", &format_suite_report);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    const CommandResult r = run_cli(args);
    return py::make_tuple(r.exit_code, r.report);
  });
}
