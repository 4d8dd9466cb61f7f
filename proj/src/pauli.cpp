#include "sepcert/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sepcert {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
  }
  throw InputError(std::string("invalid Pauli symbol '") + c + "'");
}

PauliString::PauliString(std::string_view symbols) {
  if (symbols.empty()) throw InputError("empty Pauli string");
  syms_.reserve(symbols.size());
  for (char c : symbols) syms_.push_back(pauli_from_char(c));
}

PauliString::PauliString(std::vector<Pauli> symbols) : syms_(std::move(symbols)) {
  if (syms_.empty()) throw InputError("empty Pauli string");
}

PauliString PauliString::identity(int n) {
  return PauliString(std::vector<Pauli>(static_cast<std::size_t>(n), Pauli::I));
}

PauliString PauliString::from_index(std::size_t index, int n) {
  std::vector<Pauli> syms(static_cast<std::size_t>(n), Pauli::I);
  for (int q = n - 1; q >= 0; --q) {
    syms[static_cast<std::size_t>(q)] = static_cast<Pauli>(index & 3);
    index >>= 2;
  }
  return PauliString(std::move(syms));
}

bool PauliString::is_identity() const {
  return std::all_of(syms_.begin(), syms_.end(), [](Pauli p) { return p == Pauli::I; });
}

std::size_t PauliString::index() const {
  std::size_t idx = 0;
  for (Pauli p : syms_) idx = (idx << 2) | static_cast<std::size_t>(p);
  return idx;
}

std::string PauliString::str() const {
  std::string s;
  s.reserve(syms_.size());
  for (Pauli p : syms_) s.push_back(pauli_char(p));
  return s;
}

CharTensor CharTensor::zero(int n) {
  CharTensor t;
  t.n = n;
  t.values.assign(std::size_t{1} << (2 * n), 0.0);
  return t;
}

Partition::Partition(int n_, std::vector<std::vector<int>> blocks_) : n(n_), blocks(std::move(blocks_)) {
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  int total = 0;
  for (auto& b : blocks) {
    if (b.empty()) throw PartitionShape("empty block in partition");
    std::sort(b.begin(), b.end());
    for (int q : b) {
      if (q < 1 || q > n) throw PartitionShape("qubit index out of range in partition");
      if (seen[static_cast<std::size_t>(q)]) throw PartitionShape("duplicate qubit in partition");
      seen[static_cast<std::size_t>(q)] = true;
      ++total;
    }
  }
  if (total != n) throw PartitionShape("partition does not cover all qubits");
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

std::string Partition::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) os << '|';
    for (int q : blocks[i]) os << q;
  }
  return os.str();
}

bool Partition::refines(const Partition& coarser) const {
  if (n != coarser.n) return false;
  for (const auto& b : blocks) {
    bool contained = false;
    for (const auto& cb : coarser.blocks) {
      if (std::includes(cb.begin(), cb.end(), b.begin(), b.end())) {
        contained = true;
        break;
      }
    }
    if (!contained) return false;
  }
  return true;
}

bool SeparabilityClass::admits(const Partition& p) const {
  for (const auto& cp : partitions)
    if (p == cp || p.refines(cp)) return true;
  return false;
}

SeparabilityClass SeparabilityClass::full_split(int n) {
  std::vector<std::vector<int>> blocks;
  for (int q = 1; q <= n; ++q) blocks.push_back({q});
  return {n, {Partition(n, blocks)}};
}

SeparabilityClass SeparabilityClass::tri(int n) { return {n, enumerate_partitions(n, 3)}; }
SeparabilityClass SeparabilityClass::bi(int n) { return {n, enumerate_partitions(n, 2)}; }

Mat string_matrix(const PauliString& s) {
  const int n = s.size();
  const int dim = 1 << n;
  Mat m = Mat::Zero(dim, dim);
  const cd im(0.0, 1.0);
  for (int col = 0; col < dim; ++col) {
    int row = col;
    cd phase = 1.0;
    for (int q = 0; q < n; ++q) {
      const int bit = (col >> (n - 1 - q)) & 1;
      switch (s[q]) {
        case Pauli::I: break;
        case Pauli::X: row ^= 1 << (n - 1 - q); break;
        case Pauli::Y:
          row ^= 1 << (n - 1 - q);
          phase *= bit ? -im : im;
          break;
        case Pauli::Z:
          if (bit) phase = -phase;
          break;
      }
    }
    m(row, col) = phase;
  }
  return m;
}

cd pauli_expectation(const Mat& rho, const PauliString& s) {
  const int n = s.size();
  const int dim = 1 << n;
  const cd im(0.0, 1.0);
  cd tr = 0.0;
  for (int col = 0; col < dim; ++col) {
    int row = col;
    cd phase = 1.0;
    for (int q = 0; q < n; ++q) {
      const int bit = (col >> (n - 1 - q)) & 1;
      switch (s[q]) {
        case Pauli::I: break;
        case Pauli::X: row ^= 1 << (n - 1 - q); break;
        case Pauli::Y:
          row ^= 1 << (n - 1 - q);
          phase *= bit ? -im : im;
          break;
        case Pauli::Z:
          if (bit) phase = -phase;
          break;
      }
    }
    tr += rho(col, row) * phase;  // (rho sigma)_{col,col}
  }
  return tr;
}

CharTensor char_from_density(const DensityMatrix& rho, double tol) {
  CharTensor t = CharTensor::zero(rho.n);
  const std::size_t total = t.values.size();
  for (std::size_t idx = 0; idx < total; ++idx) {
    const cd v = pauli_expectation(rho.entries, PauliString::from_index(idx, rho.n));
    if (std::abs(v.imag()) > tol)
      throw NonHermitianInput("characteristic value has imaginary part " +
                              std::to_string(v.imag()));
    t.values[idx] = v.real();
  }
  return t;
}

DensityMatrix density_from_char(const CharTensor& R) {
  const int dim = 1 << R.n;
  Mat m = Mat::Zero(dim, dim);
  for (std::size_t idx = 0; idx < R.values.size(); ++idx) {
    if (R.values[idx] == 0.0) continue;
    m += R.values[idx] * string_matrix(PauliString::from_index(idx, R.n));
  }
  m /= static_cast<double>(dim);
  return DensityMatrix{R.n, std::move(m)};
}

StateReport validate_state(const Mat& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("state matrix is not square");
  const auto d = m.rows();
  if (d < 1 || (d & (d - 1)) != 0) throw DimensionError("dimension is not a power of two");
  StateReport r;
  r.herm_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  r.trace_defect = std::abs(m.trace() - cd(1.0));
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.valid = r.herm_defect <= tol && r.trace_defect <= tol && r.min_eigenvalue >= -tol;
  return r;
}

EigenSystem hermitian_eigensystem(const Mat& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > tol) throw NonHermitianInput("Hermiticity defect " + std::to_string(defect));
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  return EigenSystem{es.eigenvalues(), es.eigenvectors()};
}

namespace {

void partitions_rec(int q, int n, int k, std::vector<std::vector<int>>& blocks,
                    std::vector<Partition>& out) {
  if (q > n) {
    if (static_cast<int>(blocks.size()) == k) out.emplace_back(n, blocks);
    return;
  }
  const int remaining = n - q + 1;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].push_back(q);
    if (static_cast<int>(blocks.size()) + remaining - 1 >= k)
      partitions_rec(q + 1, n, k, blocks, out);
    blocks[b].pop_back();
  }
  if (static_cast<int>(blocks.size()) < k) {
    blocks.push_back({q});
    partitions_rec(q + 1, n, k, blocks, out);
    blocks.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int n, int k) {
  if (k < 1 || k > n) throw RangeError("enumerate_partitions requires 1 <= k <= n");
  std::vector<Partition> out;
  std::vector<std::vector<int>> blocks;
  partitions_rec(1, n, k, blocks, out);
  return out;
}

}  // namespace sepcert
