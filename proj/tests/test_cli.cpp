#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "sepcert/cli.hpp"
#include "sepcert/decomp.hpp"
#include "sepcert/io.hpp"

using namespace sepcert;

namespace {

void write_file(const std::string& path, const json& j) { save_json_file(path, j); }

json noisy_bell_state(double p) {
  Mat rho = Mat::Zero(4, 4);
  rho(0, 0) = rho(3, 3) = p / 2.0;
  rho(0, 3) = rho(3, 0) = p / 2.0;
  for (int i = 0; i < 4; ++i) rho(i, i) += (1.0 - p) / 4.0;
  return state_to_json(DensityMatrix{2, rho});
}

json noisy_ghz3_xstate(double p) {
  json j;
  std::array<double, 8> diag;
  for (auto& d : diag) d = (1.0 - p) / 8.0;
  diag[0] += p / 2.0;
  diag[7] += p / 2.0;
  j["diag"] = diag;
  j["anti"] = std::array<double, 4>{p / 2.0, 0.0, 0.0, 0.0};
  return j;
}

}  // namespace

TEST_CASE("threshold subcommand prints the exact rational value") {
  const CommandResult r = run_cli({"threshold", "--witness", "ghz4-trisep", "--state", "ghz4"});
  CHECK(r.exit_code == 0);
  CHECK(r.report == "0.2\n");
}

TEST_CASE("bank lists all four witnesses") {
  const CommandResult r = run_cli({"bank"});
  CHECK(r.exit_code == 0);
  CHECK(r.report.find("ghz4-trisep") != std::string::npos);
  CHECK(r.report.find("5/21") != std::string::npos);
  const CommandResult rj = run_cli({"bank", "--json"});
  CHECK(json::parse(rj.report).size() == 4);
}

TEST_CASE("charfn of the maximally mixed state has a single entry") {
  const std::string path = "cli_mixed_tmp.json";
  write_file(path, state_to_json(DensityMatrix{2, Mat::Identity(4, 4) / 4.0}));
  const CommandResult r = run_cli({"charfn", path});
  CHECK(r.exit_code == 0);
  CHECK(r.report == "II 1\n");
  std::remove(path.c_str());
}

TEST_CASE("malformed input exits with code 3") {
  CHECK(run_cli({"charfn", "no_such_file.json"}).exit_code == 3);
  CHECK(run_cli({"frobnicate"}).exit_code == 3);
  CHECK(run_cli({"threshold", "--witness", "nope", "--state", "ghz4"}).exit_code == 3);
  const std::string path = "cli_garbage_tmp.json";
  {
    std::ofstream out(path);
    out << "{ nope";
  }
  CHECK(run_cli({"charfn", path}).exit_code == 3);
  std::remove(path.c_str());
}

TEST_CASE("bound subcommand reproduces the bank value") {
  const CommandResult r = run_cli({"bound", "--witness", "ghz4-trisep", "--class", "tri"});
  CHECK(r.exit_code == 0);
  CHECK(std::abs(std::stod(r.report) - 2.0) < 1e-6);
}

TEST_CASE("xcheck separates noisy GHZ3 below the threshold and flags it above") {
  const std::string path = "cli_xstate_tmp.json";
  write_file(path, noisy_ghz3_xstate(0.15));
  const CommandResult sep = run_cli({"xcheck", path});
  CHECK(sep.exit_code == 0);
  CHECK(sep.report.find("separable, margin") != std::string::npos);
  CHECK(sep.report.find("decomposition certificate") != std::string::npos);

  write_file(path, noisy_ghz3_xstate(0.5));
  const CommandResult ent = run_cli({"xcheck", path});
  CHECK(ent.exit_code == 1);
  CHECK(ent.report.find("entangled") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("certify splits entangled and inconclusive Bell mixtures") {
  const std::string path = "cli_bell_tmp.json";
  write_file(path, noisy_bell_state(0.5));
  CHECK(run_cli({"certify", path, "--class", "full"}).exit_code == 1);
  write_file(path, noisy_bell_state(0.25));
  const CommandResult r = run_cli({"certify", path, "--class", "full", "--json"});
  CHECK(r.exit_code == 2);
  CHECK(json::parse(r.report)["verdict"] == "inconclusive");
  std::remove(path.c_str());
}

TEST_CASE("verify-decomp accepts a builtin and rejects a corrupted copy") {
  const BuiltinDecomposition b = builtin_decomposition("ghz4-trisep");
  const std::string dpath = "cli_decomp_tmp.json", spath = "cli_target_tmp.json";
  write_file(dpath, decomposition_to_json(b.decomposition));
  write_file(spath, state_to_json(b.target));
  const CommandResult ok =
      run_cli({"verify-decomp", dpath, spath, "--class", "tri", "--tol", "1e-9"});
  CHECK(ok.exit_code == 0);
  CHECK(ok.report.find("verified") != std::string::npos);

  json bad = decomposition_to_json(b.decomposition);
  bad["components"][0]["weight"] = bad["components"][0]["weight"].get<double>() + 0.01;
  write_file(dpath, bad);
  CHECK(run_cli({"verify-decomp", dpath, spath, "--class", "tri", "--tol", "1e-9"}).exit_code == 1);
  std::remove(dpath.c_str());
  std::remove(spath.c_str());
}

TEST_CASE("coarse resolution degrades the suite to a reported failure") {
  const CommandResult r = run_cli({"paper-suite", "--resolution", "8"});
  CHECK(r.exit_code == 1);
  CHECK(r.report.find("degraded tolerance") != std::string::npos);
}

TEST_CASE("identical arguments and seed give byte-identical reports") {
  const std::vector<std::string> argv{"certify", "cli_det_tmp.json", "--class", "full",
                                      "--seed", "7", "--json"};
  write_file("cli_det_tmp.json", noisy_bell_state(0.6));
  const CommandResult a = run_cli(argv);
  const CommandResult b = run_cli(argv);
  CHECK(a.report == b.report);
  CHECK(a.exit_code == b.exit_code);
  std::remove("cli_det_tmp.json");
}
