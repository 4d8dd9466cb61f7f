#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sepcert/bloch_opt.hpp"
#include "sepcert/graph_states.hpp"

using namespace sepcert;

namespace {

WitnessSpec spec_of(int n, std::initializer_list<std::pair<const char*, double>> terms) {
  WitnessSpec w;
  w.n = n;
  for (const auto& [s, c] : terms) w.set(PauliString(s), c);
  return w;
}

}  // namespace

TEST_CASE("two-qubit correlation table matches explicit expectations") {
  TwoQubitPure phi_plus;
  phi_plus.amps << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  CHECK(phi_plus.correlation(Pauli::X, Pauli::X) == doctest::Approx(1.0));
  CHECK(phi_plus.correlation(Pauli::Y, Pauli::Y) == doctest::Approx(-1.0));
  CHECK(phi_plus.correlation(Pauli::Z, Pauli::Z) == doctest::Approx(1.0));
  CHECK(phi_plus.correlation(Pauli::I, Pauli::I) == doctest::Approx(1.0));
  CHECK(phi_plus.correlation(Pauli::X, Pauli::Z) == doctest::Approx(0.0));
}

TEST_CASE("witness spec rejects the all-identity slot and scales") {
  WitnessSpec w;
  w.n = 2;
  CHECK_THROWS_AS(w.set(PauliString("II"), 1.0), InputError);
  w.set(PauliString("ZZ"), 2.0);
  const WitnessSpec half = w.scaled(0.5);
  CHECK(half.terms.at(PauliString("ZZ")) == doctest::Approx(1.0));
}

TEST_CASE("product expectation for a simple assignment") {
  const WitnessSpec w = spec_of(3, {{"ZZI", 1.0}, {"IIZ", 0.5}});
  ProductAssignment a;
  a.partition = Partition(3, {{1, 2}, {3}});
  TwoQubitPure psi;
  psi.amps << 1, 0, 0, 0;  // |00>
  a.factors = {psi, BlochVector{0, 0, -1}};
  CHECK(product_expectation(w, a) == doctest::Approx(1.0 - 0.5));
}

TEST_CASE("single-qubit bound is the coefficient norm") {
  // max over Bloch sphere of x + 2y + 2z = 3.
  const WitnessSpec w = spec_of(1, {{"X", 1.0}, {"Y", 2.0}, {"Z", 2.0}});
  const BoundResult r = max_over_class(w, SeparabilityClass::full_split(1));
  CHECK(r.bound == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("two-qubit ZZ+XX witness: product vs entangled bound") {
  const WitnessSpec w = spec_of(2, {{"ZZ", 1.0}, {"XX", 1.0}});
  // Over product states the max is 1; the Bell state reaches 2.
  const BoundResult full = max_over_class(w, SeparabilityClass::full_split(2));
  CHECK(full.bound == doctest::Approx(1.0).epsilon(1e-9));
  SeparabilityClass joint{2, {Partition(2, {{1, 2}})}};
  const BoundResult pair = max_over_class(w, joint);
  CHECK(pair.bound == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("grid oracle brackets the optimizer value") {
  const WitnessSpec w = spec_of(2, {{"ZZ", 1.0}, {"XX", 1.0}, {"ZI", 0.3}, {"IX", 0.2}});
  const Partition full(2, {{1}, {2}});
  const double opt = max_over_class(w, SeparabilityClass::full_split(2)).bound;
  const double grid = grid_oracle(w, full, 32);
  CHECK(grid <= opt + 1e-9);
  CHECK(opt - grid < 5e-3);
  CHECK_THROWS_AS(grid_oracle(w, full, 4), RangeError);
}

TEST_CASE("optimizer rejects blocks of three qubits") {
  const WitnessSpec w = spec_of(3, {{"ZZZ", 1.0}});
  SeparabilityClass cls{3, {Partition(3, {{1, 2, 3}})}};
  CHECK_THROWS_AS(max_over_class(w, cls), ArityError);
}

TEST_CASE("bound is monotone under class coarsening") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    WitnessSpec w;
    w.n = 3;
    for (std::size_t idx = 1; idx < 64; ++idx) {
      if (trial % 2 == 0 && idx % 3 == 0) continue;
      w.set(PauliString::from_index(idx, 3), u(rng));
    }
    const double full = max_over_class(w, SeparabilityClass::full_split(3)).bound;
    const double bi = max_over_class(w, SeparabilityClass::bi(3)).bound;
    CHECK(full <= bi + 1e-8);
  }
}

TEST_CASE("deterministic under fixed seed") {
  WitnessSpec w = spec_of(3, {{"ZZI", 0.7}, {"XXX", 1.1}, {"IYY", -0.4}, {"ZIZ", 0.2}});
  OptimizerOptions opts;
  opts.seed = 42;
  const double a = max_over_class(w, SeparabilityClass::full_split(3)).bound;
  const double b = max_over_class(w, SeparabilityClass::full_split(3)).bound;
  CHECK(a == b);
}

TEST_CASE("noise threshold for the GHZ3 XXX+ZZI+IZZ-style witness") {
  // W-form with bound 1 over full product states and inner 3 with GHZ3.
  const WitnessSpec w = spec_of(3, {{"XXX", 1.0}, {"ZZI", 1.0}, {"IZZ", 1.0}});
  const CharTensor pure = char_from_density(named_pure_state("ghz3"));
  const double inner = w.inner(pure);
  CHECK(inner == doctest::Approx(3.0));
  const double p = noise_threshold(w, pure, SeparabilityClass::full_split(3));
  const double bound = max_over_class(w, SeparabilityClass::full_split(3)).bound;
  CHECK(p == doctest::Approx(bound / 3.0));
  CHECK_THROWS_AS(noise_threshold(w.scaled(-1.0), pure, SeparabilityClass::full_split(3)),
                  NonPositiveInner);
}

TEST_CASE("threshold is invariant under witness scaling") {
  const WitnessSpec w = spec_of(3, {{"XXX", 1.0}, {"ZZI", 1.0}, {"IZZ", 1.0}});
  const CharTensor pure = char_from_density(named_pure_state("ghz3"));
  const SeparabilityClass cls = SeparabilityClass::full_split(3);
  const double p1 = noise_threshold(w, pure, cls);
  const double p2 = noise_threshold(w.scaled(2.5), pure, cls);
  CHECK(p1 == doctest::Approx(p2).epsilon(1e-10));
}

TEST_CASE("matched witness search certifies an entangled Bell mixture") {
  // p*Bell + (1-p)*I/4 is separable iff p <= 1/3.
  TwoQubitPure bell;
  bell.amps << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  auto noisy_char = [&](double p) {
    CharTensor R = CharTensor::zero(2);
    R.values[0] = 1.0;
    R[PauliString("XX")] = p;
    R[PauliString("YY")] = -p;
    R[PauliString("ZZ")] = p;
    return R;
  };
  std::vector<PauliString> support{PauliString("XX"), PauliString("YY"), PauliString("ZZ")};
  const SeparabilityClass cls = SeparabilityClass::full_split(2);
  const MatchedWitnessResult ent = matched_witness_search(noisy_char(0.5), support, cls);
  CHECK(ent.p < 1.0);
  const MatchedWitnessResult sep = matched_witness_search(noisy_char(0.25), support, cls);
  CHECK(sep.p >= 1.0 - 1e-6);
  // Near-tight at the boundary.
  const MatchedWitnessResult tight = matched_witness_search(noisy_char(1.0), support, cls);
  CHECK(tight.p == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
}
