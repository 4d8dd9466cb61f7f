#include "sepcert/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sepcert/graph_states.hpp"
#include "sepcert/witness_bank.hpp"

namespace sepcert {

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix bloch_state(double x, double y, double z) {
  Mat m(2, 2);
  m << cd(0.5 * (1.0 + z), 0.0), cd(0.5 * x, -0.5 * y),
       cd(0.5 * x, 0.5 * y),     cd(0.5 * (1.0 - z), 0.0);
  return DensityMatrix{1, std::move(m)};
}

DensityMatrix axis_state(Pauli axis, int sign) {
  const double s = static_cast<double>(sign);
  switch (axis) {
    case Pauli::X: return bloch_state(s, 0, 0);
    case Pauli::Y: return bloch_state(0, s, 0);
    case Pauli::Z: return bloch_state(0, 0, s);
    default: throw RangeError("axis state needs X, Y or Z");
  }
}

DensityMatrix pair_state(std::initializer_list<std::pair<int, const char*>> terms) {
  std::vector<std::pair<int, PauliString>> list;
  for (const auto& [sign, s] : terms) list.emplace_back(sign, PauliString(s));
  return pauli_sum_state(list, 0.25);
}

// Product components of 2^{-n} prod_g (I + sign_g K_g) when every generator
// is a tensor product of matching single-qubit axes: enumerate the +/-1 sign
// assignments satisfying all generator constraints.
std::vector<DecompComponent> sign_solution_components(int n, double total_weight,
                                                      const std::vector<SignedPauli>& gens) {
  std::vector<Pauli> basis(static_cast<std::size_t>(n), Pauli::I);
  for (const auto& g : gens) {
    for (int q = 0; q < n; ++q) {
      const Pauli p = g.string[q];
      if (p == Pauli::I) continue;
      if (basis[static_cast<std::size_t>(q)] != Pauli::I &&
          basis[static_cast<std::size_t>(q)] != p)
        throw NonCommuting("generators disagree on the axis of qubit " + std::to_string(q + 1));
      basis[static_cast<std::size_t>(q)] = p;
    }
  }
  for (Pauli p : basis)
    if (p == Pauli::I) throw PartitionShape("a qubit has no axis constraint");

  std::vector<std::vector<int>> solutions;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> eta(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) eta[static_cast<std::size_t>(q)] = (mask >> q) & 1 ? -1 : 1;
    bool ok = true;
    for (const auto& g : gens) {
      int prod = 1;
      for (int q = 0; q < n; ++q)
        if (g.string[q] != Pauli::I) prod *= eta[static_cast<std::size_t>(q)];
      if (prod != g.sign) { ok = false; break; }
    }
    if (ok) solutions.push_back(std::move(eta));
  }

  Partition full;
  full.n = n;
  for (int q = 1; q <= n; ++q) full.blocks.push_back({q});

  std::vector<DecompComponent> comps;
  for (const auto& eta : solutions) {
    DecompComponent c;
    c.weight = total_weight / static_cast<double>(solutions.size());
    c.partition = full;
    for (int q = 0; q < n; ++q)
      c.factors.push_back(ProductFactor{
          {q + 1}, axis_state(basis[static_cast<std::size_t>(q)], eta[static_cast<std::size_t>(q)])});
    comps.push_back(std::move(c));
  }
  return comps;
}

void append(SeparableDecomposition& d, std::vector<DecompComponent> comps) {
  for (auto& c : comps) d.components.push_back(std::move(c));
}

DecompComponent pair_and_singles(double weight, const Partition& p,
                                 std::vector<ProductFactor> factors) {
  DecompComponent c;
  c.weight = weight;
  c.partition = p;
  c.factors = std::move(factors);
  return c;
}

SeparableDecomposition ghz4_trisep_decomposition() {
  SeparableDecomposition d;
  const double w = 1.0 / 20.0;

  // (IIII + XXXX + ZZII - YYXX) on 12|3|4.
  {
    const Partition p{4, {{1, 2}, {3}, {4}}};
    const DensityMatrix pp = pair_state({{1, "II"}, {1, "ZZ"}, {1, "XX"}, {-1, "YY"}});
    const DensityMatrix pm = pair_state({{1, "II"}, {1, "ZZ"}, {-1, "XX"}, {1, "YY"}});
    for (int s3 : {1, -1})
      for (int s4 : {1, -1}) {
        const DensityMatrix& pair = s3 == s4 ? pp : pm;
        d.components.push_back(pair_and_singles(
            w, p,
            {{{1, 2}, pair}, {{3}, axis_state(Pauli::X, s3)}, {{4}, axis_state(Pauli::X, s4)}}));
      }
  }
  // (IIII + YYYY - YXYX + IZIZ) on 1|24|3.
  {
    const Partition p{4, {{1}, {2, 4}, {3}}};
    const DensityMatrix qp = pair_state({{1, "II"}, {1, "ZZ"}, {1, "YY"}, {-1, "XX"}});
    const DensityMatrix qm = pair_state({{1, "II"}, {1, "ZZ"}, {-1, "YY"}, {1, "XX"}});
    for (int s1 : {1, -1})
      for (int s3 : {1, -1}) {
        const DensityMatrix& pair = s1 == s3 ? qp : qm;
        d.components.push_back(pair_and_singles(
            w, p,
            {{{1}, axis_state(Pauli::Y, s1)}, {{2, 4}, pair}, {{3}, axis_state(Pauli::Y, s3)}}));
      }
  }
  // (IIII - YXXY - XXYY + ZIZI) on 13|2|4.
  {
    const Partition p{4, {{1, 3}, {2}, {4}}};
    const DensityMatrix sm = pair_state({{1, "II"}, {1, "ZZ"}, {-1, "XY"}, {-1, "YX"}});
    const DensityMatrix sp = pair_state({{1, "II"}, {1, "ZZ"}, {1, "XY"}, {1, "YX"}});
    for (int s2 : {1, -1})
      for (int s4 : {1, -1}) {
        const DensityMatrix& pair = s2 == s4 ? sm : sp;
        d.components.push_back(pair_and_singles(
            w, p,
            {{{1, 3}, pair}, {{2}, axis_state(Pauli::X, s2)}, {{4}, axis_state(Pauli::Y, s4)}}));
      }
  }
  // (IIII - XYYX - XYXY + IIZZ) on 1|2|34.
  {
    const Partition p{4, {{1}, {2}, {3, 4}}};
    const DensityMatrix tm = pair_state({{1, "II"}, {1, "ZZ"}, {-1, "XY"}, {-1, "YX"}});
    const DensityMatrix tp = pair_state({{1, "II"}, {1, "ZZ"}, {1, "XY"}, {1, "YX"}});
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) {
        const DensityMatrix& pair = s1 == s2 ? tm : tp;
        d.components.push_back(pair_and_singles(
            w, p,
            {{{1}, axis_state(Pauli::X, s1)}, {{2}, axis_state(Pauli::Y, s2)}, {{3, 4}, pair}}));
      }
  }
  // (IIII + ZIIZ + IZZI + ZZZZ), fully separable.
  append(d, sign_solution_components(
                4, 1.0 / 5.0, {{1, PauliString("ZIIZ")}, {1, PauliString("IZZI")}}));
  return d;
}

SeparableDecomposition cluster4_fullsep_decomposition() {
  SeparableDecomposition d;
  const double w = 1.0 / 9.0;
  using SP = std::vector<SignedPauli>;
  const std::vector<SP> brackets = {
      {{1, PauliString("ZYYZ")}},
      {{1, PauliString("YXXY")}},
      {{-1, PauliString("YXYZ")}},
      {{-1, PauliString("ZYXY")}},
      {{1, PauliString("ZXZI")}, {1, PauliString("IIZX")}},
      {{1, PauliString("YYZI")}, {1, PauliString("IIZX")}},
      {{1, PauliString("IZXZ")}, {1, PauliString("XZII")}},
      {{1, PauliString("IZYY")}, {1, PauliString("XZII")}},
      {{-1, PauliString("IIZX")}, {-1, PauliString("XZII")}},
  };
  for (const auto& gens : brackets) append(d, sign_solution_components(4, w, gens));
  return d;
}

DensityMatrix outer(const Eigen::Vector4cd& v) {
  Mat m = v * v.adjoint();
  return DensityMatrix{2, std::move(m)};
}

// Top eigenvector of the reduced witness operator, required to be simple.
DensityMatrix top_eigenstate(const Eigen::Matrix4cd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m);
  if (solver.eigenvalues()(3) - solver.eigenvalues()(2) < 1e-9)
    throw ConstructionFailure("reduced operator has a degenerate top eigenvalue");
  return outer(solver.eigenvectors().col(3));
}

SeparableDecomposition cluster4_trisep_decomposition() {
  SeparableDecomposition d;
  const WitnessSpec q_spec = named_witness("cluster4-trisep").spec;
  const std::array<double, 4> grid{kPi / 4.0, 3.0 * kPi / 4.0, 5.0 * kPi / 4.0, 7.0 * kPi / 4.0};

  // rho_0 = (1/16)(IIII - XZII - IIZX + XZZX).
  append(d, sign_solution_components(
                4, 1.0 / 21.0, {{-1, PauliString("XZII")}, {-1, PauliString("IIZX")}}));

  // varrho-bar_1 on 1|23|4: theta-averaged family with the explicit pair state.
  {
    const Partition p{4, {{1}, {2, 3}, {4}}};
    const double w = (6.0 / 21.0) / 16.0;
    for (double th1 : grid)
      for (double th4 : grid) {
        Eigen::Vector4cd psi;
        psi << 0.5, 0.5 * std::exp(cd(0.0, th4)), 0.5 * std::exp(cd(0.0, th1)),
            -0.5 * std::exp(cd(0.0, th1 + th4));
        d.components.push_back(pair_and_singles(
            w, p,
            {{{1}, bloch_state(0.0, std::sin(th1), std::cos(th1))},
             {{2, 3}, outer(psi)},
             {{4}, bloch_state(0.0, std::sin(th4), std::cos(th4))}}));
      }
  }

  // varrho-bar_2 on 14|2|3: singles in the XY plane, pair from the top
  // eigenvector of the reduced witness operator.
  {
    const Partition p{4, {{1, 4}, {2}, {3}}};
    const double w = (6.0 / 21.0) / 16.0;
    for (double th2 : grid)
      for (double th3 : grid) {
        std::map<int, BlochVector> singles;
        singles[2] = BlochVector{std::cos(th2), std::sin(th2), 0.0};
        singles[3] = BlochVector{std::cos(th3), std::sin(th3), 0.0};
        const DensityMatrix pair = top_eigenstate(reduced_pair_operator(q_spec, p, singles));
        d.components.push_back(pair_and_singles(
            w, p,
            {{{1, 4}, pair},
             {{2}, bloch_state(std::cos(th2), std::sin(th2), 0.0)},
             {{3}, bloch_state(std::cos(th3), std::sin(th3), 0.0)}}));
      }
  }

  // varrho_5 on 12|3|4 and its qubit-reversed partner varrho_6 on 1|2|34.
  {
    const Partition p{4, {{1, 2}, {3}, {4}}};
    const double w = (2.0 / 21.0) / 2.0;
    std::vector<DecompComponent> v5;
    for (int s : {1, -1}) {
      const DensityMatrix pair =
          s == 1 ? pair_state({{1, "II"}, {1, "XZ"}, {1, "ZX"}, {1, "YY"}})
                 : pair_state({{1, "II"}, {1, "XZ"}, {-1, "ZX"}, {-1, "YY"}});
      v5.push_back(pair_and_singles(
          w, p,
          {{{1, 2}, pair}, {{3}, axis_state(Pauli::Z, s)}, {{4}, axis_state(Pauli::X, s)}}));
    }
    for (const auto& c : v5) d.components.push_back(c);
    for (const auto& c : v5) d.components.push_back(permute_component(c, {4, 3, 2, 1}));
  }

  // varrho_7 on 12|3|4 and its reversed partner varrho_8 on 1|2|34.
  {
    const Partition p{4, {{1, 2}, {3}, {4}}};
    const double w = (2.0 / 21.0) / 8.0;
    std::vector<DecompComponent> v7;
    for (int s : {1, -1}) {
      const DensityMatrix pair =
          s == 1 ? pair_state({{1, "II"}, {1, "XZ"}, {1, "YX"}, {-1, "ZY"}})
                 : pair_state({{1, "II"}, {1, "XZ"}, {-1, "YX"}, {1, "ZY"}});
      for (double th : grid) {
        v7.push_back(pair_and_singles(
            w, p,
            {{{1, 2}, pair},
             {{3}, bloch_state(std::cos(th), std::sin(th), 0.0)},
             {{4}, bloch_state(0.0, s * std::cos(th), -s * std::sin(th))}}));
      }
    }
    for (const auto& c : v7) d.components.push_back(c);
    for (const auto& c : v7) d.components.push_back(permute_component(c, {4, 3, 2, 1}));
  }

  return d;
}

}  // namespace

double SeparableDecomposition::total_weight() const {
  double s = 0.0;
  for (const auto& c : components) s += c.weight;
  return s;
}

Mat assemble_product(int n, const std::vector<ProductFactor>& factors) {
  const int dim = 1 << n;
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  for (const auto& f : factors) {
    const int k = static_cast<int>(f.block.size());
    if (f.state.entries.rows() != (1 << k) || f.state.entries.cols() != (1 << k))
      throw DimensionMismatch("factor dimension does not match its block size");
    for (int q : f.block) {
      if (q < 1 || q > n || covered[static_cast<std::size_t>(q - 1)])
        throw PartitionShape("factor blocks must tile the qubits exactly once");
      covered[static_cast<std::size_t>(q - 1)] = true;
    }
  }
  for (bool c : covered)
    if (!c) throw PartitionShape("factor blocks must cover every qubit");

  auto sub_index = [n](int full, const std::vector<int>& block) {
    int sub = 0;
    const int k = static_cast<int>(block.size());
    for (int j = 0; j < k; ++j) {
      const int bit = (full >> (n - block[static_cast<std::size_t>(j)])) & 1;
      sub |= bit << (k - 1 - j);
    }
    return sub;
  };

  Mat m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      cd v(1.0, 0.0);
      for (const auto& f : factors) v *= f.state.entries(sub_index(r, f.block), sub_index(c, f.block));
      m(r, c) = v;
    }
  return m;
}

Mat assemble(const SeparableDecomposition& d, int n) {
  const int dim = 1 << n;
  Mat m = Mat::Zero(dim, dim);
  for (const auto& c : d.components) m += c.weight * assemble_product(n, c.factors);
  return m;
}

DecompReport verify_decomposition(const SeparableDecomposition& d, const DensityMatrix& target,
                                  const SeparabilityClass& cls, double tol) {
  if (target.entries.rows() != target.dim() || target.entries.cols() != target.dim())
    throw DimensionMismatch("target matrix does not match its qubit count");
  DecompReport rep;
  rep.min_factor_eigenvalue = 1.0;
  rep.partitions_ok = true;
  for (const auto& c : d.components) {
    if (c.weight < 0.0) rep.partitions_ok = false;
    if (!cls.admits(c.partition)) rep.partitions_ok = false;
    std::vector<std::vector<int>> blocks;
    for (const auto& f : c.factors) blocks.push_back(f.block);
    if (blocks != c.partition.blocks) rep.partitions_ok = false;
    for (const auto& f : c.factors) {
      const StateReport sr = validate_state(f.state.entries, tol);
      rep.min_factor_eigenvalue = std::min(rep.min_factor_eigenvalue, sr.min_eigenvalue);
      rep.max_factor_trace_defect = std::max(rep.max_factor_trace_defect, sr.trace_defect);
    }
  }
  rep.weight_defect = std::abs(d.total_weight() - 1.0);
  const Mat delta = assemble(d, target.n) - target.entries;
  rep.reconstruction_error = delta.cwiseAbs().maxCoeff();
  rep.pass = rep.partitions_ok && rep.min_factor_eigenvalue >= -tol &&
             rep.max_factor_trace_defect <= tol && rep.weight_defect <= std::max(tol, 1e-12) &&
             rep.reconstruction_error <= tol;
  return rep;
}

DensityMatrix pauli_sum_state(const std::vector<std::pair<int, PauliString>>& terms, double scale) {
  if (terms.empty()) throw MissingIdentityTerm("empty Pauli sum");
  const int n = terms.front().second.size();
  bool has_identity = false;
  for (const auto& [sign, s] : terms) {
    if (s.size() != n) throw DimensionMismatch("mixed string lengths in Pauli sum");
    if (s.is_identity()) has_identity = true;
  }
  if (!has_identity) throw MissingIdentityTerm("Pauli sum lacks the all-identity term");
  const int dim = 1 << n;
  Mat m = Mat::Zero(dim, dim);
  for (const auto& [sign, s] : terms) m += static_cast<double>(sign) * string_matrix(s);
  m *= scale;
  return DensityMatrix{n, std::move(m)};
}

DecompComponent permute_component(const DecompComponent& c, const std::vector<int>& perm) {
  const int n = c.partition.n;
  if (static_cast<int>(perm.size()) != n) throw DimensionMismatch("permutation length mismatch");
  DecompComponent out;
  out.weight = c.weight;
  std::vector<std::vector<int>> new_blocks;
  for (const auto& f : c.factors) {
    const int k = static_cast<int>(f.block.size());
    std::vector<int> mapped;
    for (int q : f.block) mapped.push_back(perm[static_cast<std::size_t>(q - 1)]);
    std::vector<int> sorted = mapped;
    std::sort(sorted.begin(), sorted.end());
    // order[j] = position in `mapped` of the j-th qubit of the sorted block.
    std::vector<int> order;
    for (int q : sorted)
      order.push_back(static_cast<int>(std::find(mapped.begin(), mapped.end(), q) - mapped.begin()));
    const int dim = 1 << k;
    Mat m(dim, dim);
    auto remap = [&](int idx) {
      int out_idx = 0;
      for (int j = 0; j < k; ++j) {
        const int bit = (idx >> (k - 1 - order[static_cast<std::size_t>(j)])) & 1;
        out_idx |= bit << (k - 1 - j);
      }
      return out_idx;
    };
    for (int r = 0; r < dim; ++r)
      for (int col = 0; col < dim; ++col) m(remap(r), remap(col)) = f.state.entries(r, col);
    out.factors.push_back(ProductFactor{sorted, DensityMatrix{k, std::move(m)}});
    new_blocks.push_back(out.factors.back().block);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const ProductFactor& a, const ProductFactor& b) { return a.block < b.block; });
  new_blocks.clear();
  for (const auto& f : out.factors) new_blocks.push_back(f.block);
  out.partition = Partition(n, new_blocks);
  return out;
}

BuiltinDecomposition builtin_decomposition(const std::string& id) {
  BuiltinDecomposition b;
  if (id == "ghz4-trisep") {
    b.decomposition = ghz4_trisep_decomposition();
    b.target = noisy_mix(named_pure_state("ghz4"), 1.0 / 5.0);
    b.cls = SeparabilityClass::tri(4);
    b.notes = "five bracket groups; four pair partitions plus the full split";
  } else if (id == "cluster4-fullsep") {
    b.decomposition = cluster4_fullsep_decomposition();
    b.target = noisy_mix(named_pure_state("cluster4"), 1.0 / 9.0);
    b.cls = SeparabilityClass::full_split(4);
    b.notes = "nine sign-solution bracket groups, all on the full split";
  } else if (id == "cluster4-trisep") {
    b.decomposition = cluster4_trisep_decomposition();
    b.target = noisy_mix(named_pure_state("cluster4"), 5.0 / 21.0);
    b.cls = SeparabilityClass::tri(4);
    b.notes = "grouped weights (1, 12, 4, 4)/21 before product resolution";
  } else {
    throw UnknownId("unknown decomposition id '" + id + "'");
  }
  return b;
}

}  // namespace sepcert
