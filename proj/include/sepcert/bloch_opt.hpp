#pragma once

// Witness-constant computation: the maximum of a witness form over product
// states of a separability class, a brute-force grid oracle, white-noise
// thresholds and the matched-witness minimization.

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "sepcert/pauli.hpp"

namespace sepcert {

struct BlochVector {
  double x = 0.0, y = 0.0, z = 1.0;

  double norm() const;
  BlochVector normalized() const;
  static BlochVector from_angles(double theta, double phi);
  double component(Pauli p) const;  // I -> 1
};

struct TwoQubitPure {
  Eigen::Vector4cd amps = Eigen::Vector4cd::Zero();

  /// T_{ij} = <psi| sigma_i (x) sigma_j |psi>, i, j in {I,X,Y,Z}.
  double correlation(Pauli a, Pauli b) const;
  std::array<double, 16> correlation_table() const;
};

/// Sparse characteristic variables M_s; the all-I slot is kept apart.
struct WitnessSpec {
  int n = 0;
  std::map<PauliString, double> terms;
  std::optional<double> constant;  // M_{0...0}

  void set(const PauliString& s, double coeff);
  double inner(const CharTensor& R) const;  // sum_s M_s R_s, all-I excluded
  WitnessSpec scaled(double c) const;
};

using BlockFactor = std::variant<BlochVector, TwoQubitPure>;

struct ProductAssignment {
  Partition partition;
  std::vector<BlockFactor> factors;  // one per block, in block order
};

struct OptimizerOptions {
  double tol = 1e-10;
  int max_sweeps = 500;
  int deterministic_starts = 8;
  int random_starts = 24;
  std::uint64_t seed = 0;
};

struct BoundResult {
  double bound = 0.0;
  ProductAssignment argmax;
  std::vector<std::pair<Partition, double>> per_partition;
  int starts_used = 0;
  bool converged = true;
};

double product_expectation(const WitnessSpec& M, const ProductAssignment& a);

/// Multi-start alternating maximization of the witness form over product
/// states, partition by partition. -bound is the witness constant M_{0...0}.
BoundResult max_over_class(const WitnessSpec& M, const SeparabilityClass& cls,
                           const OptimizerOptions& opts = {});

/// Exhaustive-grid lower bound on the per-partition maximum. Pair blocks are
/// resolved by the exact eigenvector update at every grid point; when more
/// than two singleton spheres are present the first two are gridded and the
/// rest use exact alternating updates (a full product grid is intractable).
double grid_oracle(const WitnessSpec& M, const Partition& p, int resolution);

/// p* = bound(M, cls) / (M . pure); the noisy family p*pure + (1-p)*I/2^n
/// satisfies the witness inequality exactly for p <= p*.
double noise_threshold(const WitnessSpec& M, const CharTensor& pure,
                       const SeparabilityClass& cls, const OptimizerOptions& opts = {});

struct MatchedWitnessResult {
  WitnessSpec witness;
  double p = 0.0;  // < 1 certifies the state is outside the class
};

/// Minimizes bound(M, cls) / (M . R) over witnesses supported on `support`,
/// normalized to max |M_s| = 1. Derivative-free coordinate descent with
/// golden-section line searches and multiple restarts.
MatchedWitnessResult matched_witness_search(const CharTensor& R,
                                            const std::vector<PauliString>& support,
                                            const SeparabilityClass& cls,
                                            const OptimizerOptions& opts = {});

}  // namespace sepcert
