#pragma once

// The named integer witnesses for the noisy GHZ4 / cluster-4 states, exact
// rational thresholds, bound verification against the optimizer and the grid
// oracle, and the reduced-operator eigenvalue scan used in the tri-separable
// bound proofs.

#include <map>
#include <string>
#include <vector>

#include "sepcert/bloch_opt.hpp"
#include "sepcert/graph_states.hpp"

namespace sepcert {

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);  // reduced, den > 0

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

struct NamedWitness {
  std::string id;
  WitnessSpec spec;          // integer coefficients, explicit zeros included
  SeparabilityClass cls;
  std::string state_id;      // reference pure state
  long long bound;           // max over the class, an integer for these
  long long inner;           // spec . char(pure state)
  Rational threshold;        // bound / inner
  std::string notes;
};

/// "ghz4-trisep", "cluster4-fullsep", "cluster4-trisep" (repaired variant) or
/// "cluster4-trisep-raw" (the misprinted duplicate row kept verbatim).
NamedWitness named_witness(const std::string& id);

std::vector<std::string> witness_bank_ids();

struct BoundCheckReport {
  double optimizer_value = 0.0;
  std::vector<std::pair<Partition, double>> grid_values;
  double grid_max = 0.0;
  double closed_form_max = 0.0;  // partition-specific extremal expressions
  double stated_bound = 0.0;
  bool optimizer_ok = false;
  bool grid_ok = false;
  bool pass = false;
};

/// Checks the stated bound three ways: multi-start optimizer, grid oracle per
/// partition, and the witness-specific closed-form candidates.
BoundCheckReport verify_bound(const NamedWitness& w, int resolution,
                              const OptimizerOptions& opts = {});

/// 4x4 operator <phi_singles| W |phi_singles> acting on the pair block of a
/// two-singleton partition; singles maps qubit index to a Bloch vector.
Eigen::Matrix4cd reduced_pair_operator(const WitnessSpec& w, const Partition& p,
                                       const std::map<int, BlochVector>& singles);

/// The normal form of the cluster tri-separable reduced operator for the
/// partition 13|2|4 in the (z2, x4) variables after local rotations.
Eigen::Matrix4d cluster_reduced_normal_form(double z2, double x4);

/// 1 + 4 sqrt(1 - t) with t = x4^2 (1 - z2^2) + z2^2 (1 - x4^2); the largest
/// root of the factored eigenequation.
double cluster_reduced_max_eigenvalue(double z2, double x4);

struct EigenScanResult {
  Partition partition;
  double grid_max = 0.0;
  double refined_max = 0.0;
  std::array<double, 2> argmax_theta{};
  std::array<double, 2> argmax_phi{};
  std::string condition;  // achieving condition for the cluster witness, or ""
};

/// Scans the two singleton spheres of a two-singleton partition, taking the
/// top eigenvalue of the reduced pair operator at every grid point, then
/// refines the best point by coordinate ascent.
EigenScanResult trisep_eigen_scan(const WitnessSpec& w, const Partition& p, int resolution);

}  // namespace sepcert
