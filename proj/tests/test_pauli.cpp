#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sepcert/graph_states.hpp"
#include "sepcert/pauli.hpp"

using namespace sepcert;

namespace {

Mat random_density(int n, std::mt19937_64& rng) {
  const int dim = 1 << n;
  std::normal_distribution<double> g;
  Mat a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = cd(g(rng), g(rng));
  Mat rho = a * a.adjoint();
  rho /= rho.trace();
  return rho;
}

}  // namespace

TEST_CASE("pauli string parsing and indexing") {
  PauliString s("XZII");
  CHECK(s.size() == 4);
  CHECK(s[0] == Pauli::X);
  CHECK(s[1] == Pauli::Z);
  CHECK(s.str() == "XZII");
  CHECK(PauliString::from_index(s.index(), 4) == s);
  CHECK(PauliString::identity(3).is_identity());
  CHECK(PauliString("III").index() == 0);
  // Qubit 1 is the most significant base-4 digit.
  CHECK(PauliString("XII").index() == 16);
  CHECK(PauliString("IIX").index() == 1);
  CHECK_THROWS_AS(PauliString("AB"), InputError);
}

TEST_CASE("string_matrix matches explicit kron for small cases") {
  const Mat zx = string_matrix(PauliString("ZX"));
  Mat expect(4, 4);
  expect << 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, -1, 0;
  CHECK((zx - expect).cwiseAbs().maxCoeff() < 1e-15);
  const Mat y = string_matrix(PauliString("Y"));
  CHECK(std::abs(y(0, 1) - cd(0, -1)) < 1e-15);
}

TEST_CASE("pauli_expectation equals trace against the explicit matrix") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 3; ++n) {
    const Mat rho = random_density(n, rng);
    for (std::size_t idx = 0; idx < (std::size_t{1} << (2 * n)); ++idx) {
      const PauliString s = PauliString::from_index(idx, n);
      const cd direct = (rho * string_matrix(s)).trace();
      CHECK(std::abs(pauli_expectation(rho, s) - direct) < 1e-12);
    }
  }
}

TEST_CASE("char/density round trip") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 3; ++n) {
    const DensityMatrix rho{n, random_density(n, rng)};
    const CharTensor R = char_from_density(rho);
    CHECK(R.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    const DensityMatrix back = density_from_char(R);
    CHECK((back.entries - rho.entries).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("char_from_density rejects non-hermitian input") {
  Mat m(2, 2);
  m << cd(0.5, 0.0), cd(0.3, 0.1), cd(0.9, 0.1), cd(0.5, 0.0);
  CHECK_THROWS_AS(char_from_density(DensityMatrix{1, m}), NonHermitianInput);
}

TEST_CASE("validate_state reports defects") {
  Mat good = Mat::Identity(4, 4) / 4.0;
  const StateReport ok = validate_state(good);
  CHECK(ok.valid);
  CHECK(ok.min_eigenvalue == doctest::Approx(0.25));

  Mat traceless = Mat::Identity(4, 4);
  CHECK_FALSE(validate_state(traceless).valid);

  Mat indefinite = Mat::Zero(2, 2);
  indefinite(0, 0) = 1.5;
  indefinite(1, 1) = -0.5;
  CHECK_FALSE(validate_state(indefinite).valid);
}

TEST_CASE("hermitian_eigensystem sorts ascending with orthonormal vectors") {
  Mat m(2, 2);
  m << 1.0, cd(0.0, -2.0), cd(0.0, 2.0), -1.0;
  const EigenSystem es = hermitian_eigensystem(m);
  CHECK(es.eigenvalues(0) == doctest::Approx(-std::sqrt(5.0)));
  CHECK(es.eigenvalues(1) == doctest::Approx(std::sqrt(5.0)));
  const Mat gram = es.eigenvectors.adjoint() * es.eigenvectors;
  CHECK((gram - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partition canonicalization, refinement and enumeration") {
  const Partition p(4, {{3}, {1, 2}, {4}});
  CHECK(p.str() == "12|3|4");
  const Partition full(4, {{1}, {2}, {3}, {4}});
  CHECK(full.refines(p));
  CHECK_FALSE(p.refines(full));
  CHECK(p.refines(p));

  CHECK(enumerate_partitions(4, 3).size() == 6);
  CHECK(enumerate_partitions(4, 2).size() == 7);
  CHECK(enumerate_partitions(3, 3).size() == 1);

  const SeparabilityClass tri = SeparabilityClass::tri(4);
  CHECK(tri.partitions.size() == 6);
  CHECK(tri.admits(full));
  CHECK(tri.admits(p));
  const Partition bi(4, {{1, 2}, {3, 4}});
  CHECK_FALSE(tri.admits(bi));
}

TEST_CASE("biseparable classes enumerate all two-part splits") {
  CHECK(SeparabilityClass::bi(4).partitions.size() == 7);
  const SeparabilityClass b3 = SeparabilityClass::bi(3);
  CHECK(b3.partitions.size() == 3);
}

TEST_CASE("named states have the right char tensors") {
  const DensityMatrix ghz3 = named_pure_state("ghz3");
  const CharTensor R = char_from_density(ghz3);
  CHECK(R[PauliString("XXX")] == doctest::Approx(1.0));
  CHECK(R[PauliString("ZZI")] == doctest::Approx(1.0));
  CHECK(R[PauliString("XYY")] == doctest::Approx(-1.0));
  CHECK(R[PauliString("ZII")] == doctest::Approx(0.0));
  CHECK(validate_state(ghz3.entries).valid);

  const DensityMatrix cl = named_pure_state("cluster4");
  const CharTensor Rc = char_from_density(cl);
  CHECK(Rc[PauliString("XZII")] == doctest::Approx(1.0));
  CHECK(Rc[PauliString("YXYZ")] == doctest::Approx(-1.0));
  CHECK(Rc[PauliString("ZYXY")] == doctest::Approx(-1.0));
  CHECK(Rc[PauliString("YXXY")] == doctest::Approx(1.0));
  CHECK(validate_state(cl.entries).valid);
}
