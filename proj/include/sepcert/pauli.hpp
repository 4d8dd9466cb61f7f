#pragma once

// Pauli-string algebra, characteristic-function transforms, density-matrix
// validation and partition enumeration for few-qubit systems.
//
// Conventions used throughout the library:
//   * qubit 1 is the leftmost tensor factor and the most significant bit of
//     computational-basis indices;
//   * the characteristic tensor stores R_s = tr(rho sigma_s) with no 2^{-n}
//     factor; the inverse transform owns the 2^{-n}.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sepcert/errors.hpp"

namespace sepcert {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

constexpr double kDefaultTol = 1e-9;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// An n-qubit Pauli string such as "XZII" (qubit 1 leftmost).
class PauliString {
 public:
  explicit PauliString(std::string_view symbols);
  PauliString(std::vector<Pauli> symbols);
  static PauliString identity(int n);
  static PauliString from_index(std::size_t index, int n);

  int size() const { return static_cast<int>(syms_.size()); }
  Pauli operator[](int qubit) const { return syms_[static_cast<std::size_t>(qubit)]; }
  const std::vector<Pauli>& symbols() const { return syms_; }
  bool is_identity() const;
  /// Base-4 index, qubit 1 as the most significant digit.
  std::size_t index() const;
  std::string str() const;

  bool operator==(const PauliString& o) const { return syms_ == o.syms_; }
  bool operator<(const PauliString& o) const { return syms_ < o.syms_; }

 private:
  std::vector<Pauli> syms_;
};

struct DensityMatrix {
  int n = 0;
  Mat entries;

  int dim() const { return 1 << n; }
};

/// Real Pauli correlation tensor of an n-qubit state, 4^n entries.
struct CharTensor {
  int n = 0;
  std::vector<double> values;

  static CharTensor zero(int n);
  double& operator[](const PauliString& s) { return values[s.index()]; }
  double operator[](const PauliString& s) const { return values[s.index()]; }
};

struct Partition {
  int n = 0;
  std::vector<std::vector<int>> blocks;  // 1-based qubit indices, canonical order

  Partition() = default;
  Partition(int n_, std::vector<std::vector<int>> blocks_);

  int part_count() const { return static_cast<int>(blocks.size()); }
  std::string str() const;  // e.g. "12|3|4"
  /// True when every block of this partition is contained in a block of `coarser`.
  bool refines(const Partition& coarser) const;
  bool operator==(const Partition& o) const { return n == o.n && blocks == o.blocks; }
};

struct SeparabilityClass {
  int n = 0;
  std::vector<Partition> partitions;

  /// True when p equals or refines some partition in the class.
  bool admits(const Partition& p) const;

  static SeparabilityClass full_split(int n);
  static SeparabilityClass tri(int n);  // all partitions into exactly 3 parts
  static SeparabilityClass bi(int n);   // all partitions into exactly 2 parts
};

struct EigenSystem {
  Eigen::VectorXd eigenvalues;  // ascending
  Mat eigenvectors;             // orthonormal columns
};

struct StateReport {
  double herm_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;
  bool valid = false;
};

/// Kronecker product of single-qubit Pauli matrices.
Mat string_matrix(const PauliString& s);

/// Single Pauli expectation tr(rho sigma_s) without forming sigma_s.
cd pauli_expectation(const Mat& rho, const PauliString& s);

CharTensor char_from_density(const DensityMatrix& rho, double tol = kDefaultTol);

/// rho = 2^{-n} sum_s R_s sigma_s. Hermitian by construction; positivity is
/// the caller's problem.
DensityMatrix density_from_char(const CharTensor& R);

StateReport validate_state(const Mat& m, double tol = kDefaultTol);

EigenSystem hermitian_eigensystem(const Mat& m, double tol = kDefaultTol);

/// All set partitions of {1..n} into exactly k nonempty blocks, canonical order.
std::vector<Partition> enumerate_partitions(int n, int k);

}  // namespace sepcert
