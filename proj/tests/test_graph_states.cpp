#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sepcert/graph_states.hpp"

using namespace sepcert;

TEST_CASE("commutation via the symplectic product") {
  CHECK(strings_commute(PauliString("XX"), PauliString("ZZ")));
  CHECK_FALSE(strings_commute(PauliString("XI"), PauliString("ZI")));
  CHECK(strings_commute(PauliString("XZII"), PauliString("ZXZI")));
  CHECK_THROWS_AS(strings_commute(PauliString("X"), PauliString("XX")), DimensionMismatch);
}

TEST_CASE("symplectic rank counts independent generators") {
  const StabilizerSet s = named_stabilizers("cluster4");
  CHECK(symplectic_rank(s) == 4);
  StabilizerSet dep = s;
  // Product of the first two generators is dependent.
  dep.generators.push_back({1, PauliString("YYZI")});
  CHECK(symplectic_rank(dep) == 4);
}

TEST_CASE("stabilizer states are valid projectors") {
  for (const char* id : {"ghz3", "ghz4", "cluster4"}) {
    const DensityMatrix rho = named_pure_state(id);
    const StateReport rep = validate_state(rho.entries);
    CHECK(rep.valid);
    // Pure: rho^2 = rho.
    CHECK((rho.entries * rho.entries - rho.entries).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(named_pure_state("ghz5"), UnknownId);
}

TEST_CASE("from_stabilizers rejects anticommuting generators") {
  StabilizerSet bad{{{1, PauliString("XI")}, {1, PauliString("ZI")}}};
  CHECK_THROWS_AS(from_stabilizers(bad, 2), NonCommuting);
}

TEST_CASE("fewer generators give mixed stabilizer states") {
  StabilizerSet s{{{1, PauliString("ZZ")}}};
  const DensityMatrix rho = from_stabilizers(s, 2);
  CHECK(std::abs(rho.entries.trace() - cd(1.0)) < 1e-12);
  CHECK(std::abs(rho.entries(0, 0) - cd(0.5)) < 1e-12);
  CHECK(std::abs(rho.entries(1, 1)) < 1e-12);
}

TEST_CASE("noisy_mix blends with the maximally mixed state") {
  const DensityMatrix ghz3 = named_pure_state("ghz3");
  const DensityMatrix rho = noisy_mix(ghz3, 0.2);
  CHECK(std::abs(rho.entries.trace() - cd(1.0)) < 1e-12);
  CHECK(std::abs(rho.entries(0, 0) - cd(0.2 * 0.5 + 0.1)) < 1e-12);
  CHECK(std::abs(rho.entries(0, 7) - cd(0.1)) < 1e-12);
  CHECK_THROWS_AS(noisy_mix(ghz3, 1.5), RangeError);
  CHECK_THROWS_AS(noisy_mix(ghz3, -0.1), RangeError);
  const CharTensor R = char_from_density(noisy_mix(ghz3, 0.5));
  CHECK(R[PauliString("XXX")] == doctest::Approx(0.5));
}
