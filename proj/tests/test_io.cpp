#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "sepcert/decomp.hpp"
#include "sepcert/graph_states.hpp"
#include "sepcert/io.hpp"

using namespace sepcert;

TEST_CASE("dense state round trip") {
  const DensityMatrix rho = noisy_mix(named_pure_state("ghz4"), 0.3);
  const DensityMatrix back = state_from_json(state_to_json(rho, "dense"));
  CHECK(back.n == 4);
  CHECK((back.entries - rho.entries).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("pauli state round trip") {
  const DensityMatrix rho = noisy_mix(named_pure_state("cluster4"), 0.7);
  const json j = state_to_json(rho, "pauli");
  CHECK(j["format"] == "pauli");
  const DensityMatrix back = state_from_json(j);
  CHECK((back.entries - rho.entries).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("state parsing rejects malformed input") {
  CHECK_THROWS_AS(state_from_json(json{{"format", "dense"}}), InputError);
  CHECK_THROWS_AS(state_from_json(json{{"n", 0}, {"format", "dense"}}), InputError);
  CHECK_THROWS_AS(state_from_json(json{{"n", 11}, {"format", "dense"}}), InputError);
  CHECK_THROWS_AS(state_from_json(json{{"n", 1}, {"format", "weird"}}), InputError);
  // Wrong entry count and non-pair entries.
  CHECK_THROWS_AS(state_from_json(json{{"n", 1}, {"format", "dense"}, {"dense", {{1.0, 0.0}}}}),
                  InputError);
  CHECK_THROWS_AS(
      state_from_json(json{{"n", 1}, {"format", "dense"}, {"dense", {1.0, 0.0, 0.0, 1.0}}}),
      InputError);
  // Pauli form needs the identity coefficient pinned to one.
  json p{{"n", 1}, {"format", "pauli"}};
  p["pauli"] = json::array({{{"string", "Z"}, {"coeff", 0.5}}});
  CHECK_THROWS_AS(state_from_json(p), InputError);
  p["pauli"].push_back({{"string", "II"}, {"coeff", 1.0}});
  CHECK_THROWS_AS(state_from_json(p), InputError);
}

TEST_CASE("witness round trip keeps terms and the constant") {
  WitnessSpec w;
  w.n = 3;
  w.set(PauliString("XXZ"), 1.5);
  w.set(PauliString("ZII"), -0.25);
  const WitnessSpec open = witness_from_json(witness_to_json(w));
  CHECK(open.terms == w.terms);
  CHECK(!open.constant.has_value());

  w.constant = -2.0;
  const WitnessSpec closed = witness_from_json(witness_to_json(w));
  CHECK(closed.constant.has_value());
  CHECK(*closed.constant == -2.0);

  CHECK_THROWS_AS(witness_from_json(json{{"n", 3}}), InputError);
  json bad{{"n", 3}};
  bad["terms"] = json::array({{{"string", "XX"}, {"coeff", 1.0}}});
  CHECK_THROWS_AS(witness_from_json(bad), InputError);
}

TEST_CASE("partitions and classes") {
  const Partition p = partition_from_json(4, json::array({"13", "2", "4"}));
  CHECK(p.blocks == std::vector<std::vector<int>>{{1, 3}, {2}, {4}});
  CHECK(partition_from_json(4, partition_to_json(p)).blocks == p.blocks);
  CHECK_THROWS_AS(partition_from_json(4, json::array({"1a", "2"})), InputError);
  CHECK_THROWS_AS(partition_from_json(4, json::array()), InputError);

  CHECK(class_from_name(4, "tri").partitions.size() == 6);
  CHECK(class_from_name(4, "full").partitions.size() == 1);
  CHECK(class_from_name(4, "bi").partitions.size() == 7);
  CHECK_THROWS_AS(class_from_name(4, "septuple"), InputError);

  const SeparabilityClass cls = class_from_json(json{{"n", 4}, {"partitions", "tri"}});
  CHECK(cls.n == 4);
  CHECK(cls.partitions.size() == 6);
  json explicit_cls{{"n", 4}};
  explicit_cls["partitions"] = json::array({json::array({"12", "34"})});
  CHECK(class_from_json(explicit_cls).partitions.size() == 1);
  CHECK_THROWS_AS(class_from_json(json{{"n", 4}}), InputError);
  json empty_cls{{"n", 4}};
  empty_cls["partitions"] = json::array();
  CHECK_THROWS_AS(class_from_json(empty_cls), InputError);
}

TEST_CASE("X-state round trip") {
  XState x;
  x.diag = {0.3, 0.1, 0.1, 0.0, 0.0, 0.1, 0.1, 0.3};
  x.anti = {0.25, 0.0, 0.0, -0.05};
  const XState back = xstate_from_json(xstate_to_json(x));
  CHECK(back.diag == x.diag);
  CHECK(back.anti == x.anti);
  CHECK_THROWS_AS(xstate_from_json(json{{"diag", {1.0}}, {"anti", {0, 0, 0, 0}}}), InputError);
  CHECK_THROWS_AS(xstate_from_json(json{{"diag", {1, 0, 0, 0, 0, 0, 0, 0}}}), InputError);
}

TEST_CASE("stabilizer sets reconstruct the named states") {
  json j{{"n", 3}};
  j["generators"] = json::array({{{"sign", 1}, {"string", "XXX"}},
                                 {{"sign", 1}, {"string", "ZZI"}},
                                 {{"sign", 1}, {"string", "IZZ"}}});
  const StabilizerSet s = stabilizers_from_json(j);
  const DensityMatrix rho = from_stabilizers(s, 3);
  CHECK((rho.entries - named_pure_state("ghz3").entries).cwiseAbs().maxCoeff() < 1e-14);

  j["generators"][0]["sign"] = 2;
  CHECK_THROWS_AS(stabilizers_from_json(j), InputError);
  j["generators"][0] = {{"sign", 1}, {"string", "XX"}};
  CHECK_THROWS_AS(stabilizers_from_json(j), InputError);
}

TEST_CASE("decomposition round trip survives verification") {
  const BuiltinDecomposition b = builtin_decomposition("ghz4-trisep");
  const json j = decomposition_to_json(b.decomposition);
  const SeparableDecomposition back = decomposition_from_json(4, j);
  const DecompReport r = verify_decomposition(back, b.target, b.cls, 1e-12);
  CHECK(r.pass);

  CHECK_THROWS_AS(decomposition_from_json(4, json::object()), InputError);
  json bad = j;
  bad["components"][0]["factors"].erase(0);
  CHECK_THROWS_AS(decomposition_from_json(4, bad), InputError);
}

TEST_CASE("file helpers report unreadable and malformed input") {
  const std::string path = "io_roundtrip_tmp.json";
  save_json_file(path, json{{"n", 2}, {"k", json::array({1, 2})}});
  const json j = load_json_file(path);
  CHECK(j["n"] == 2);
  CHECK(j["k"].size() == 2);

  CHECK_THROWS_AS(load_json_file("does_not_exist.json"), InputError);
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_json_file(path), InputError);
  std::remove(path.c_str());
}
