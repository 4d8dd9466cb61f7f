#pragma once

// Explicit separable decompositions: data model, verification oracle, and the
// built-in decompositions for the noisy GHZ4 / cluster-4 reference states.

#include <string>
#include <vector>

#include "sepcert/pauli.hpp"

namespace sepcert {

struct ProductFactor {
  std::vector<int> block;  // 1-based qubit indices, ascending
  DensityMatrix state;     // on 2^{|block|}
};

struct DecompComponent {
  double weight = 0.0;
  Partition partition;
  std::vector<ProductFactor> factors;  // one per block, in block order
};

struct SeparableDecomposition {
  std::vector<DecompComponent> components;

  double total_weight() const;
};

/// Tensor-assembles block factors into the full 2^n matrix, respecting
/// interleaved blocks such as 13|2|4.
Mat assemble_product(int n, const std::vector<ProductFactor>& factors);

Mat assemble(const SeparableDecomposition& d, int n);

struct DecompReport {
  double min_factor_eigenvalue = 0.0;
  double max_factor_trace_defect = 0.0;
  bool partitions_ok = false;
  double weight_defect = 0.0;
  double reconstruction_error = 0.0;  // max-abs entry
  bool pass = false;
};

/// Checks factor validity, class membership (refinements admitted) and the
/// mixture identity against the target.
DecompReport verify_decomposition(const SeparableDecomposition& d, const DensityMatrix& target,
                                  const SeparabilityClass& cls, double tol);

/// scale * sum sign_s sigma_s as a matrix; positivity is not checked.
DensityMatrix pauli_sum_state(const std::vector<std::pair<int, PauliString>>& terms, double scale);

struct BuiltinDecomposition {
  SeparableDecomposition decomposition;
  DensityMatrix target;
  SeparabilityClass cls;
  std::string notes;
};

/// "ghz4-trisep", "cluster4-fullsep" or "cluster4-trisep"; targets are the
/// noisy mixtures at p = 1/5, 1/9 and 5/21.
BuiltinDecomposition builtin_decomposition(const std::string& id);

/// Relabels qubits of a component by the permutation perm (1-based, qubit q
/// goes to perm[q-1]); factor states are conjugated accordingly.
DecompComponent permute_component(const DecompComponent& c, const std::vector<int>& perm);

}  // namespace sepcert
