#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sepcert/witness_bank.hpp"

using namespace sepcert;

namespace {

// Coefficient table after relabeling qubits 1<->4 and 2<->3.
std::map<PauliString, double> swapped_terms(const WitnessSpec& w) {
  std::map<PauliString, double> out;
  for (const auto& [s, c] : w.terms) {
    std::string rev = s.str();
    std::reverse(rev.begin(), rev.end());
    out[PauliString(rev)] = c;
  }
  return out;
}

}  // namespace

TEST_CASE("named witnesses carry exact integer data") {
  const NamedWitness g = named_witness("ghz4-trisep");
  CHECK(g.bound == 2);
  CHECK(g.inner == 10);
  CHECK(g.threshold == Rational(1, 5));
  CHECK(g.spec.terms.size() == 15);
  CHECK(g.cls.partitions.size() == 6);

  const NamedWitness cf = named_witness("cluster4-fullsep");
  CHECK(cf.bound == 2);
  CHECK(cf.inner == 18);
  CHECK(cf.threshold == Rational(1, 9));
  CHECK(cf.cls.partitions.size() == 1);

  const NamedWitness ct = named_witness("cluster4-trisep");
  CHECK(ct.bound == 5);
  CHECK(ct.inner == 21);
  CHECK(ct.threshold == Rational(5, 21));

  const NamedWitness raw = named_witness("cluster4-trisep-raw");
  CHECK(raw.inner == 21);
  CHECK(raw.spec.terms.at(PauliString("ZYXY")) == doctest::Approx(-6.0));
  CHECK(raw.spec.terms.count(PauliString("YXYZ")) == 0);

  CHECK(witness_bank_ids().size() == 4);
  CHECK_THROWS_AS(named_witness("nope"), UnknownId);
}

TEST_CASE("rational reduction") {
  CHECK(Rational(2, 10) == Rational(1, 5));
  CHECK(Rational(-4, -6) == Rational(2, 3));
  CHECK(Rational(3, -6).num == -1);
  CHECK_THROWS_AS(Rational(1, 0), RangeError);
}

TEST_CASE("the repaired trisep table restores the qubit-reversal symmetry") {
  const NamedWitness rep = named_witness("cluster4-trisep");
  CHECK(swapped_terms(rep.spec) == rep.spec.terms);
  const NamedWitness raw = named_witness("cluster4-trisep-raw");
  CHECK(swapped_terms(raw.spec) != raw.spec.terms);
  // The other two tables share the symmetry.
  CHECK(swapped_terms(named_witness("ghz4-trisep").spec) == named_witness("ghz4-trisep").spec.terms);
  CHECK(swapped_terms(named_witness("cluster4-fullsep").spec) ==
        named_witness("cluster4-fullsep").spec.terms);
}

TEST_CASE("three-way bound verification: ghz4-trisep") {
  const BoundCheckReport r = verify_bound(named_witness("ghz4-trisep"), 12);
  CAPTURE(r.optimizer_value);
  CAPTURE(r.grid_max);
  CAPTURE(r.closed_form_max);
  CHECK(r.optimizer_ok);
  CHECK(r.grid_ok);
  CHECK(r.pass);
  CHECK(r.optimizer_value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(r.grid_values.size() == 6);
}

TEST_CASE("three-way bound verification: cluster4-fullsep") {
  const BoundCheckReport r = verify_bound(named_witness("cluster4-fullsep"), 16);
  CAPTURE(r.optimizer_value);
  CAPTURE(r.grid_max);
  CAPTURE(r.closed_form_max);
  CHECK(r.pass);
  CHECK(r.optimizer_value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("three-way bound verification: cluster4-trisep") {
  // Resolution 13 puts theta = pi/2 on the grid, which the achieving
  // configurations of this witness need.
  const BoundCheckReport r = verify_bound(named_witness("cluster4-trisep"), 13);
  CAPTURE(r.optimizer_value);
  CAPTURE(r.grid_max);
  CHECK(r.pass);
  CHECK(r.optimizer_value == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(r.closed_form_max == doctest::Approx(5.0));
}

TEST_CASE("reduced pair operator matches a direct partial expectation") {
  const NamedWitness w = named_witness("cluster4-trisep");
  const Partition p(4, {{1, 3}, {2}, {4}});
  std::map<int, BlochVector> singles;
  singles[2] = BlochVector{0.0, 0.0, 1.0};
  singles[4] = BlochVector{1.0, 0.0, 0.0};
  const Eigen::Matrix4cd m = reduced_pair_operator(w.spec, p, singles);
  CHECK(std::abs((m - m.adjoint()).cwiseAbs().maxCoeff()) < 1e-14);
  // Trace tr m = 4 * sum of terms that are identity on the pair block.
  cd tr = m.trace();
  double expect = 0.0;
  for (const auto& [s, c] : w.spec.terms) {
    if (s[0] != Pauli::I || s[2] != Pauli::I) continue;
    expect += c * singles[2].component(s[1]) * singles[4].component(s[3]);
  }
  CHECK(std::abs(tr - cd(4.0 * expect)) < 1e-12);

  CHECK_THROWS_AS(reduced_pair_operator(w.spec, Partition(4, {{1, 2, 3}, {4}}), singles),
                  PartitionShape);
}

TEST_CASE("normal form matches the raw reduced operator spectrum") {
  const NamedWitness w = named_witness("cluster4-trisep");
  const Partition p(4, {{1, 3}, {2}, {4}});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ph(0.0, 2.0 * std::acos(-1.0));
  for (int t = 0; t < 40; ++t) {
    const double z2 = u(rng), x4 = u(rng);
    const double a2 = std::sqrt(1.0 - z2 * z2), a4 = std::sqrt(1.0 - x4 * x4);
    const double f1 = ph(rng), f2 = ph(rng);
    std::map<int, BlochVector> singles;
    singles[2] = BlochVector{a2 * std::cos(f1), a2 * std::sin(f1), z2};
    singles[4] = BlochVector{x4, a4 * std::cos(f2), a4 * std::sin(f2)};
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> raw(reduced_pair_operator(w.spec, p, singles),
                                                        Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> nf(cluster_reduced_normal_form(z2, x4),
                                                      Eigen::EigenvaluesOnly);
    CHECK((raw.eigenvalues() - nf.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("factored eigenequation: top eigenvalue is 1 + 4 sqrt(1 - t)") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const double z2 = u(rng), x4 = u(rng);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> nf(cluster_reduced_normal_form(z2, x4),
                                                      Eigen::EigenvaluesOnly);
    const double lam = cluster_reduced_max_eigenvalue(z2, x4);
    worst = std::max(worst, std::abs(nf.eigenvalues()(3) - lam));
    CHECK(lam <= 5.0 + 1e-12);
  }
  CHECK(worst < 1e-9);

  // The printed example point.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> ex(cluster_reduced_normal_form(1.0, 0.5),
                                                    Eigen::EigenvaluesOnly);
  Eigen::Vector4d expect(-3.0, -1.0, 1.0, 3.0);
  CHECK((ex.eigenvalues() - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(cluster_reduced_max_eigenvalue(0.0, 0.0) == doctest::Approx(5.0));
  CHECK(cluster_reduced_max_eigenvalue(1.0, 1.0) == doctest::Approx(5.0));
}

TEST_CASE("eigenvalue scan reaches 5 with tagged achieving conditions") {
  const NamedWitness w = named_witness("cluster4-trisep");
  struct Expected { Partition p; std::vector<std::string> tags; };
  const std::vector<Expected> cases{
      {Partition(4, {{1, 2}, {3}, {4}}),
       {"equator-transverse", "poles-aligned", "poles-anti-aligned"}},
      {Partition(4, {{1, 3}, {2}, {4}}), {"poles", "equator"}},
      {Partition(4, {{1, 4}, {2}, {3}}), {"poles", "equator"}},
      {Partition(4, {{2, 3}, {1}, {4}}), {"poles", "equator"}},
  };
  for (const auto& c : cases) {
    const EigenScanResult r = trisep_eigen_scan(w.spec, c.p, 9);
    CAPTURE(c.p.str());
    CAPTURE(r.condition);
    CHECK(r.refined_max == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(r.grid_max <= r.refined_max + 1e-12);
    bool tagged = false;
    for (const auto& t : c.tags) tagged = tagged || r.condition == t;
    CHECK(tagged);
  }
  CHECK_THROWS_AS(trisep_eigen_scan(w.spec, Partition(4, {{1, 2}, {3}, {4}}), 2), RangeError);
  CHECK_THROWS_AS(trisep_eigen_scan(w.spec, Partition(4, {{1, 2}, {3, 4}}), 9), PartitionShape);
}

TEST_CASE("12|3|4 reduced operator at the aligned corner") {
  // At z3 = x4 = 1 the reduced operator on the pair {1,2} becomes the
  // rank-one spike 2 u u^T - 3 I with u = (1,1,1,-1): one eigenvalue 5,
  // three eigenvalues -3.
  const NamedWitness w = named_witness("cluster4-trisep");
  const Partition p(4, {{1, 2}, {3}, {4}});
  std::map<int, BlochVector> singles;
  singles[3] = BlochVector{0.0, 0.0, 1.0};
  singles[4] = BlochVector{1.0, 0.0, 0.0};
  const Eigen::Matrix4cd m = reduced_pair_operator(w.spec, p, singles);
  Eigen::Vector4cd u(1.0, 1.0, 1.0, -1.0);
  const Eigen::Matrix4cd expect =
      2.0 * u * u.adjoint() - 3.0 * Eigen::Matrix4cd::Identity();
  CHECK((m - expect).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues()(3) == doctest::Approx(5.0));
  CHECK(es.eigenvalues()(2) == doctest::Approx(-3.0));
}
