#include "sepcert/graph_states.hpp"

namespace sepcert {

bool strings_commute(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) throw DimensionMismatch("Pauli strings of different length");
  int anticommuting = 0;
  for (int q = 0; q < a.size(); ++q) {
    if (a[q] != Pauli::I && b[q] != Pauli::I && a[q] != b[q]) ++anticommuting;
  }
  return anticommuting % 2 == 0;
}

int symplectic_rank(const StabilizerSet& s) {
  if (s.generators.empty()) return 0;
  const int n = s.generators.front().string.size();
  // Row j is the (x|z) bit vector of generator j.
  std::vector<std::uint64_t> rows;
  for (const auto& g : s.generators) {
    std::uint64_t r = 0;
    for (int q = 0; q < n; ++q) {
      const Pauli p = g.string[q];
      if (p == Pauli::X || p == Pauli::Y) r |= std::uint64_t{1} << q;
      if (p == Pauli::Z || p == Pauli::Y) r |= std::uint64_t{1} << (n + q);
    }
    rows.push_back(r);
  }
  int rank = 0;
  for (int bit = 0; bit < 2 * n; ++bit) {
    const std::uint64_t mask = std::uint64_t{1} << bit;
    std::size_t pivot = rows.size();
    for (std::size_t i = static_cast<std::size_t>(rank); i < rows.size(); ++i) {
      if (rows[i] & mask) { pivot = i; break; }
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != static_cast<std::size_t>(rank) && (rows[i] & mask))
        rows[i] ^= rows[static_cast<std::size_t>(rank)];
    }
    ++rank;
    if (rank == static_cast<int>(rows.size())) break;
  }
  return rank;
}

DensityMatrix from_stabilizers(const StabilizerSet& s, int n) {
  for (std::size_t i = 0; i < s.generators.size(); ++i) {
    if (s.generators[i].string.size() != n)
      throw DimensionMismatch("generator length does not match qubit count");
    for (std::size_t j = i + 1; j < s.generators.size(); ++j) {
      if (!strings_commute(s.generators[i].string, s.generators[j].string))
        throw NonCommuting("stabilizer generators " + s.generators[i].string.str() + " and " +
                           s.generators[j].string.str() + " anticommute");
    }
  }
  const int dim = 1 << n;
  Mat m = Mat::Identity(dim, dim);
  for (const auto& g : s.generators) {
    Mat factor = Mat::Identity(dim, dim) + static_cast<double>(g.sign) * string_matrix(g.string);
    m = (m * factor).eval();
  }
  m /= static_cast<double>(dim);
  return DensityMatrix{n, std::move(m)};
}

StabilizerSet named_stabilizers(const std::string& id) {
  if (id == "ghz3")
    return {{{1, PauliString("XXX")}, {1, PauliString("ZZI")}, {1, PauliString("IZZ")}}};
  if (id == "ghz4")
    return {{{1, PauliString("XXXX")},
             {1, PauliString("ZZII")},
             {1, PauliString("ZIZI")},
             {1, PauliString("ZIIZ")}}};
  if (id == "cluster4")
    return {{{1, PauliString("XZII")},
             {1, PauliString("ZXZI")},
             {1, PauliString("IZXZ")},
             {1, PauliString("IIZX")}}};
  throw UnknownId("unknown state id '" + id + "'");
}

DensityMatrix named_pure_state(const std::string& id) {
  const StabilizerSet s = named_stabilizers(id);
  const int n = s.generators.front().string.size();
  return from_stabilizers(s, n);
}

DensityMatrix noisy_mix(const DensityMatrix& pure, double p) {
  if (p < 0.0 || p > 1.0) throw RangeError("noise parameter p must be in [0, 1]");
  const int dim = pure.dim();
  Mat m = p * pure.entries + ((1.0 - p) / dim) * Mat::Identity(dim, dim);
  return DensityMatrix{pure.n, std::move(m)};
}

}  // namespace sepcert
