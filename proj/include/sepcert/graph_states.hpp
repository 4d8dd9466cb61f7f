#pragma once

// Reference states built from stabilizer generators, plus white-noise mixing.

#include <string>
#include <vector>

#include "sepcert/pauli.hpp"

namespace sepcert {

struct SignedPauli {
  int sign = 1;  // +1 or -1
  PauliString string;
};

struct StabilizerSet {
  std::vector<SignedPauli> generators;
};

/// True when the two strings commute (symplectic product is even).
bool strings_commute(const PauliString& a, const PauliString& b);

/// Rank of the generators' binary symplectic representation over GF(2).
int symplectic_rank(const StabilizerSet& s);

/// 2^{-n} prod_j (I + sign_j K_j). Pure projector when the generators are
/// independent; a mixed stabilizer state otherwise.
DensityMatrix from_stabilizers(const StabilizerSet& s, int n);

/// "ghz3", "ghz4" (Hadamard-rotated frame) or "cluster4".
DensityMatrix named_pure_state(const std::string& id);

StabilizerSet named_stabilizers(const std::string& id);

/// p * pure + (1-p)/2^n * I.
DensityMatrix noisy_mix(const DensityMatrix& pure, double p);

}  // namespace sepcert
