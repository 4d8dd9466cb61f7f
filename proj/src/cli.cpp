#include "sepcert/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "sepcert/io.hpp"
#include "sepcert/suite.hpp"
#include "sepcert/witness_bank.hpp"
#include "sepcert/xstate.hpp"

namespace sepcert {

namespace {

struct Common {
  double tol = 1e-9;
  int resolution = 17;
  int starts = 24;
  std::uint64_t seed = 0;
  bool as_json = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--tol", c.tol, "numeric tolerance");
  sub->add_option("--resolution", c.resolution, "grid-oracle resolution");
  sub->add_option("--starts", c.starts, "random optimizer restarts");
  sub->add_option("--seed", c.seed, "seed for all stochastic starts");
  sub->add_flag("--json", c.as_json, "machine-readable output");
}

OptimizerOptions optimizer_of(const Common& c) {
  OptimizerOptions o;
  o.random_starts = c.starts;
  o.seed = c.seed;
  return o;
}

WitnessSpec witness_arg(const std::string& arg) {
  const auto ids = witness_bank_ids();
  if (std::find(ids.begin(), ids.end(), arg) != ids.end()) return named_witness(arg).spec;
  return witness_from_json(load_json_file(arg));
}

std::string fmt(double v, int digits = 12) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

}  // namespace

CommandResult run_cli(std::vector<std::string> args) {
  CLI::App app{"separability witnesses, thresholds and explicit decompositions"};
  app.require_subcommand(1);
  std::ostringstream out;
  int code = 0;

  Common c;
  std::string state_path, xstate_path, witness_arg_s, class_name = "full", state_id, decomp_path,
              out_path;

  auto* charfn = app.add_subcommand("charfn", "Pauli correlation tensor of a state file");
  charfn->add_option("state", state_path, "state JSON file")->required();
  add_common(charfn, c);
  charfn->callback([&] {
    const DensityMatrix rho = state_from_json(load_json_file(state_path));
    const CharTensor R = char_from_density(rho, c.tol);
    if (c.as_json) {
      out << state_to_json(rho, "pauli").dump(2) << "\n";
      return;
    }
    for (std::size_t idx = 0; idx < R.values.size(); ++idx)
      if (R.values[idx] != 0.0)
        out << PauliString::from_index(idx, rho.n).str() << " " << fmt(R.values[idx]) << "\n";
  });

  auto* xcheck = app.add_subcommand("xcheck", "separability verdict for a three-qubit X state");
  xcheck->add_option("xstate", xstate_path, "X-state JSON file")->required();
  add_common(xcheck, c);
  xcheck->callback([&] {
    const XState x = xstate_from_json(load_json_file(xstate_path));
    x.validate(std::max(c.tol, 1e-12));
    const Theorem2Verdict v = theorem2_verdict(x);
    nlohmann::json j{{"separable", v.separable}, {"margin", v.margin}};
    if (v.separable) {
      try {
        const XDecomposition d = decompose_xstate(x);
        j["certificate"] = {{"kappa", d.kappa}, {"residual", d.residual}};
      } catch (const ConstructionFailure& e) {
        j["certificate_error"] = e.what();
      }
      code = 0;
    } else {
      code = 1;
    }
    if (c.as_json) {
      out << j.dump(2) << "\n";
    } else {
      out << (v.separable ? "separable" : "entangled") << ", margin " << fmt(v.margin) << "\n";
      if (j.contains("certificate"))
        out << "decomposition certificate: kappa " << fmt(j["certificate"]["kappa"].get<double>())
            << ", residual " << fmt(j["certificate"]["residual"].get<double>()) << "\n";
    }
  });

  auto* bound = app.add_subcommand("bound", "maximum of a witness over a separability class");
  bound->add_option("--witness", witness_arg_s, "bank id or witness JSON file")->required();
  bound->add_option("--class", class_name, "full, tri or bi")->required();
  add_common(bound, c);
  bound->callback([&] {
    const WitnessSpec w = witness_arg(witness_arg_s);
    const BoundResult r = max_over_class(w, class_from_name(w.n, class_name), optimizer_of(c));
    if (c.as_json)
      out << nlohmann::json{{"bound", r.bound}, {"converged", r.converged}}.dump(2) << "\n";
    else
      out << fmt(r.bound) << "\n";
  });

  auto* threshold = app.add_subcommand("threshold", "white-noise threshold of a bank witness");
  threshold->add_option("--witness", witness_arg_s, "bank id")->required();
  threshold->add_option("--state", state_id, "named pure state id")->required();
  add_common(threshold, c);
  threshold->callback([&] {
    const NamedWitness w = named_witness(witness_arg_s);
    if (state_id == w.state_id) {
      if (c.as_json)
        out << nlohmann::json{{"threshold", w.threshold.value()},
                              {"num", w.threshold.num},
                              {"den", w.threshold.den}}
                   .dump(2)
            << "\n";
      else
        out << fmt(w.threshold.value()) << "\n";
      return;
    }
    const CharTensor pure = char_from_density(named_pure_state(state_id));
    const double t = noise_threshold(w.spec, pure, w.cls, optimizer_of(c));
    if (c.as_json)
      out << nlohmann::json{{"threshold", t}}.dump(2) << "\n";
    else
      out << fmt(t) << "\n";
  });

  auto* certify = app.add_subcommand("certify", "matched-witness entanglement certificate");
  certify->add_option("state", state_path, "state JSON file")->required();
  certify->add_option("--class", class_name, "full, tri or bi")->required();
  add_common(certify, c);
  certify->callback([&] {
    const DensityMatrix rho = state_from_json(load_json_file(state_path));
    const CharTensor R = char_from_density(rho, c.tol);
    std::vector<PauliString> support;
    for (std::size_t idx = 1; idx < R.values.size(); ++idx)
      if (std::abs(R.values[idx]) > 1e-12) support.push_back(PauliString::from_index(idx, rho.n));
    const MatchedWitnessResult m =
        matched_witness_search(R, support, class_from_name(rho.n, class_name), optimizer_of(c));
    code = m.p < 1.0 ? 1 : 2;
    if (c.as_json) {
      nlohmann::json j = witness_to_json(m.witness);
      j["p_ratio"] = m.p;
      j["verdict"] = m.p < 1.0 ? "entangled" : "inconclusive";
      out << j.dump(2) << "\n";
    } else {
      out << (m.p < 1.0 ? "entangled" : "inconclusive") << ", p-ratio " << fmt(m.p, 9) << "\n";
    }
  });

  auto* verify = app.add_subcommand("verify-decomp", "check a decomposition against a state");
  verify->add_option("decomp", decomp_path, "decomposition JSON file")->required();
  verify->add_option("state", state_path, "state JSON file")->required();
  verify->add_option("--class", class_name, "full, tri or bi")->required();
  add_common(verify, c);
  verify->callback([&] {
    const DensityMatrix rho = state_from_json(load_json_file(state_path));
    const SeparableDecomposition d = decomposition_from_json(rho.n, load_json_file(decomp_path));
    const DecompReport r =
        verify_decomposition(d, rho, class_from_name(rho.n, class_name), c.tol);
    code = r.pass ? 0 : 1;
    if (c.as_json)
      out << nlohmann::json{{"pass", r.pass},
                            {"reconstruction_error", r.reconstruction_error},
                            {"min_factor_eigenvalue", r.min_factor_eigenvalue},
                            {"weight_defect", r.weight_defect},
                            {"partitions_ok", r.partitions_ok}}
                 .dump(2)
          << "\n";
    else
      out << (r.pass ? "verified" : "FAILED") << ", reconstruction error "
          << fmt(r.reconstruction_error) << "\n";
  });

  auto* bank = app.add_subcommand("bank", "list the built-in witnesses");
  add_common(bank, c);
  bank->callback([&] {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& id : witness_bank_ids()) {
      const NamedWitness w = named_witness(id);
      if (c.as_json)
        j.push_back({{"id", w.id},
                     {"state", w.state_id},
                     {"bound", w.bound},
                     {"inner", w.inner},
                     {"threshold", std::to_string(w.threshold.num) + "/" +
                                       std::to_string(w.threshold.den)}});
      else
        out << w.id << ": state " << w.state_id << ", bound " << w.bound << ", inner " << w.inner
            << ", threshold " << w.threshold.num << "/" << w.threshold.den << "\n";
    }
    if (c.as_json) out << j.dump(2) << "\n";
  });

  auto* suite = app.add_subcommand("paper-suite", "run the full reproduction suite");
  suite->add_option("--out", out_path, "write the JSON report to this file");
  add_common(suite, c);
  suite->callback([&] {
    SuiteOptions so;
    so.resolution = c.resolution;
    so.seed = c.seed;
    so.optimizer.random_starts = c.starts;
    const SuiteReport r = run_reproduction_suite(so);
    if (!out_path.empty()) save_json_file(out_path, suite_report_to_json(r));
    if (c.as_json)
      out << suite_report_to_json(r).dump(2) << "\n";
    else
      out << format_suite_report(r);
    code = r.all_pass ? 0 : 1;
  });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    return {0, app.help()};
  } catch (const CLI::ParseError& e) {
    return {3, std::string(e.what()) + "\n"};
  } catch (const Error& e) {
    return {3, std::string(e.what()) + "\n"};
  }
  return {code, out.str()};
}

}  // namespace sepcert
