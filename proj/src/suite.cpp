#include "sepcert/suite.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "sepcert/decomp.hpp"
#include "sepcert/graph_states.hpp"
#include "sepcert/witness_bank.hpp"
#include "sepcert/xstate.hpp"

namespace sepcert {

namespace {

std::string fmt(double v, int digits = 9) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

XState noisy_ghz3_xstate(double p) {
  XState x;
  for (auto& d : x.diag) d = (1.0 - p) / 8.0;
  x.diag[0] += p / 2.0;
  x.diag[7] += p / 2.0;
  x.anti = {p / 2.0, 0.0, 0.0, 0.0};
  return x;
}

XState vertex_xstate(const std::array<double, 4>& signs) {
  XState x;
  for (auto& d : x.diag) d = 1.0 / 8.0;
  for (int k = 0; k < 4; ++k) x.anti[static_cast<std::size_t>(k)] = signs[static_cast<std::size_t>(k)] / 8.0;
  return x;
}

struct Runner {
  SuiteReport& report;

  template <typename F>
  void criterion(int index, const std::string& title, F&& body) {
    CriterionResult r;
    r.index = index;
    r.title = title;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (const Error& e) {
      r.pass = false;
      if (r.note.empty()) r.note = std::string("aborted: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.criteria.push_back(std::move(r));
  }
};

}  // namespace

SuiteReport run_reproduction_suite(const SuiteOptions& opts_in) {
  SuiteOptions opts = opts_in;
  opts.optimizer.seed = opts.seed;
  SuiteReport report;
  report.resolution = opts.resolution;
  report.seed = opts.seed;
  Runner run{report};
  const OptimizerOptions oo = opts.optimizer;

  run.criterion(1, "witness bounds (2, 2, 5) verified three ways", [&](CriterionResult& r) {
    double worst = 0.0;
    bool ok = true;
    for (const auto& [id, expect] :
         std::vector<std::pair<std::string, double>>{{"ghz4-trisep", 2.0},
                                                     {"cluster4-fullsep", 2.0},
                                                     {"cluster4-trisep", 5.0}}) {
      const BoundCheckReport b = verify_bound(named_witness(id), opts.resolution, oo);
      ok = ok && b.pass;
      worst = std::max(worst, std::abs(b.optimizer_value - expect));
      if (!b.pass && r.note.empty())
        r.note = id + ": optimizer " + fmt(b.optimizer_value) + ", grid max " + fmt(b.grid_max) +
                 " (grid gap or closed-form check failed at this resolution)";
    }
    // The tri-separable bound must be attained on every one of the six
    // partitions, not just on the worst one.
    const NamedWitness ct = named_witness("cluster4-trisep");
    for (const auto& p : ct.cls.partitions) {
      const double b = max_over_class(ct.spec, SeparabilityClass{4, {p}}, oo).bound;
      worst = std::max(worst, std::abs(b - 5.0));
      ok = ok && std::abs(b - 5.0) <= 1e-6;
    }
    r.pass = ok && worst <= 1e-6;
    r.measured = "worst bound deviation " + fmt(worst) + " vs <= 1e-6";
  });

  run.criterion(2, "exact rational thresholds 1/5, 1/9, 5/21", [&](CriterionResult& r) {
    struct Row { std::string id; Rational expect; long long inner; };
    const std::vector<Row> rows{{"ghz4-trisep", Rational(1, 5), 10},
                                {"cluster4-fullsep", Rational(1, 9), 18},
                                {"cluster4-trisep", Rational(5, 21), 21}};
    bool ok = true;
    std::string got;
    for (const auto& row : rows) {
      const NamedWitness w = named_witness(row.id);
      const CharTensor R = char_from_density(named_pure_state(w.state_id));
      const double inner = w.spec.inner(R);
      ok = ok && std::abs(inner - static_cast<double>(row.inner)) <= 1e-9;
      ok = ok && w.inner == row.inner;
      ok = ok && w.threshold == row.expect && Rational(w.bound, w.inner) == row.expect;
      if (!got.empty()) got += ", ";
      got += std::to_string(w.threshold.num) + "/" + std::to_string(w.threshold.den);
    }
    r.pass = ok;
    r.measured = got + " vs 1/5, 1/9, 5/21 (inner products recomputed)";
  });

  run.criterion(3, "builtin separable decompositions reproduce their targets", [&](CriterionResult& r) {
    double worst_err = 0.0, worst_eig = 0.0;
    bool ok = true;
    for (const std::string id : {"ghz4-trisep", "cluster4-fullsep", "cluster4-trisep"}) {
      const BuiltinDecomposition b = builtin_decomposition(id);
      const DecompReport d = verify_decomposition(b.decomposition, b.target, b.cls, 1e-12);
      ok = ok && d.pass;
      worst_err = std::max(worst_err, d.reconstruction_error);
      worst_eig = std::min(worst_eig, d.min_factor_eigenvalue);
    }
    r.pass = ok && worst_err <= 1e-12 && worst_eig >= -1e-12;
    r.measured = "worst reconstruction error " + fmt(worst_err) + " vs <= 1e-12, min factor eigenvalue " +
                 fmt(worst_eig) + " vs >= -1e-12";
  });

  run.criterion(4, "anti-diagonal maximum: closed form vs grid oracle", [&](CriterionResult& r) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    try {
      for (int t = 0; t < 500; ++t) {
        const XWitnessParams p{u(rng), u(rng), u(rng), u(rng)};
        worst = std::max(worst, std::abs(gm_closed_form(p).value - gm_oracle(p, opts.resolution)));
      }
      worst = std::max(worst, std::abs(gm_closed_form({1, 1, 1, 1}).value - std::sqrt(2.0)));
      worst = std::max(worst, std::abs(gm_closed_form({2, 1, 1, 1}).value - 2.0));
    } catch (const RangeError& e) {
      r.pass = false;
      r.note = std::string("degraded tolerance: ") + e.what();
      r.measured = "oracle unavailable at resolution " + std::to_string(opts.resolution);
      return;
    }
    r.pass = worst <= 1e-6;
    r.measured = "worst |closed form - oracle| over 500 draws " + fmt(worst) + " vs <= 1e-6";
  });

  run.criterion(5, "uniform-vertex R-values 1 (even) and sqrt(2) (odd)", [&](CriterionResult& r) {
    const Theorem1Certificate even = theorem1_evaluate(vertex_xstate({1, 1, 1, 1}));
    const Theorem1Certificate odd = theorem1_evaluate(vertex_xstate({-1, 1, 1, 1}));
    const double dev =
        std::max(std::abs(even.Rvalue - 1.0), std::abs(odd.Rvalue - std::sqrt(2.0)));
    r.pass = dev <= 1e-12 && even.separable && !odd.separable;
    r.measured = "R-values " + fmt(even.Rvalue, 15) + ", " + fmt(odd.Rvalue, 15) +
                 " vs 1, sqrt(2) within 1e-12";
  });

  run.criterion(6, "noisy GHZ3 boundary at p = 0.2 with explicit decompositions", [&](CriterionResult& r) {
    double lo = 0.0, hi = 1.0;  // separable at 0, not at 1
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (theorem2_verdict(noisy_ghz3_xstate(mid)).separable ? lo : hi) = mid;
    }
    const double pstar = 0.5 * (lo + hi);
    double worst_residual = 0.0;
    bool built = true;
    for (const double p : {0.15, 0.19}) {
      const XState x = noisy_ghz3_xstate(p);
      const XDecomposition d = decompose_xstate(x);
      worst_residual = std::max(worst_residual, d.residual);
      const DensityMatrix target{3, x.embed()};
      built = built && verify_decomposition(d.decomposition, target,
                                            SeparabilityClass::full_split(3), 1e-8)
                           .pass;
    }
    r.pass = std::abs(pstar - 0.2) <= 1e-9 && built && worst_residual <= 1e-9;
    r.measured = "bisected boundary " + fmt(pstar, 12) + " vs 0.2 +/- 1e-9; decomposition residual " +
                 fmt(worst_residual) + " vs <= 1e-9";
  });

  run.criterion(7, "reduced-operator spectrum and sphere scans reach 5", [&](CriterionResult& r) {
    std::mt19937_64 rng(opts.seed + 7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_eig = 0.0, worst_lam = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const double z2 = u(rng), x4 = u(rng);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(cluster_reduced_normal_form(z2, x4),
                                                        Eigen::EigenvaluesOnly);
      const double tt = x4 * x4 * (1.0 - z2 * z2) + z2 * z2 * (1.0 - x4 * x4);
      const double root = 4.0 * std::sqrt(1.0 - tt);
      const Eigen::Vector4d factored(-3.0, 1.0 - root, 1.0, 1.0 + root);
      Eigen::Vector4d sorted = factored;
      std::sort(sorted.data(), sorted.data() + 4);
      worst_eig = std::max(worst_eig, (es.eigenvalues() - sorted).cwiseAbs().maxCoeff());
      worst_lam = std::max(worst_lam, cluster_reduced_max_eigenvalue(z2, x4) - 5.0);
    }
    const WitnessSpec w = named_witness("cluster4-trisep").spec;
    double worst_scan = 0.0;
    for (const auto& blocks : std::vector<std::vector<std::vector<int>>>{
             {{1, 2}, {3}, {4}}, {{1, 3}, {2}, {4}}, {{1, 4}, {2}, {3}}, {{2, 3}, {1}, {4}}}) {
      const EigenScanResult s = trisep_eigen_scan(w, Partition(4, blocks), opts.resolution);
      worst_scan = std::max(worst_scan, std::abs(s.refined_max - 5.0));
    }
    r.pass = worst_eig <= 1e-9 && worst_lam <= 1e-12 && worst_scan <= 1e-6;
    r.measured = "eigenvalue mismatch " + fmt(worst_eig) + " vs <= 1e-9; scan deviation " +
                 fmt(worst_scan) + " vs <= 1e-6";
  });

  run.criterion(8, "dominant-M0 witness family: maximum and interior stationarity", [&](CriterionResult& r) {
    std::mt19937_64 rng(opts.seed + 8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_max = 0.0, worst_stat = 0.0;
    bool curvature_ok = true;
    for (int t = 0; t < 50; ++t) {
      CaseIIParams p;
      p.M1 = u(rng);
      p.M2 = u(rng);
      p.M3 = u(rng);
      p.M0 = -10.0 * (1.0 + std::abs(p.M1) + std::abs(p.M2) + std::abs(p.M3));
      const CaseIIResult c = caseII_bound(p);
      worst_max = std::max(worst_max, std::abs(c.M000 + p.M0));
      // d(max over theta2)/dx at the closed-form interior point, against the
      // claimed value M1.
      worst_stat = std::max(worst_stat, std::abs(c.diagnostics.dh_dx - p.M1));
      curvature_ok = curvature_ok && c.diagnostics.second_derivative < 0.0;
    }
    const bool max_ok = worst_max <= 1e-6;
    const bool stat_ok = worst_stat <= 1e-4 && curvature_ok;
    r.pass = max_ok && stat_ok;
    r.measured = "max deviation |F2max + M0| " + fmt(worst_max) + " vs <= 1e-6; |dF3/dx - M1| at x0 " +
                 fmt(worst_stat, 4) + " vs <= 1e-4";
    if (!stat_ok)
      r.note =
          "the maximum -M0 is reproduced exactly (boundary branch), but the stated interior "
          "stationarity cannot hold: the closed-form x0 solves only one of the two conditions "
          "required for the inner square root to vanish, and the second has no real solution "
          "when -M0 dominates; the measured slope at x0 is M1/2, not M1 (curvature is negative "
          "as stated)";
  });

  run.criterion(9, "matched-witness certificate at p = 0.25, inconclusive at 0.19", [&](CriterionResult& r) {
    const NamedWitness w = named_witness("ghz4-trisep");
    std::vector<PauliString> support;
    for (const auto& [s, c] : w.spec.terms) support.push_back(s);
    auto ratio_at = [&](double p) {
      CharTensor R = char_from_density(named_pure_state("ghz4"));
      for (std::size_t i = 1; i < R.values.size(); ++i) R.values[i] *= p;
      return matched_witness_search(R, support, SeparabilityClass::tri(4), oo).p;
    };
    const double ent = ratio_at(0.25);
    const double sep = ratio_at(0.19);
    r.pass = ent < 1.0 && sep >= 1.0;
    r.measured = "p-ratio " + fmt(ent, 6) + " vs < 1 at noise 0.25; " + fmt(sep, 6) +
                 " vs >= 1 at noise 0.19";
  });

  run.criterion(10, "round-trip, monotonicity, scale invariance, determinism", [&](CriterionResult& r) {
    double worst_rt = 0.0;
    for (const std::string id : {"ghz3", "ghz4", "cluster4"}) {
      const DensityMatrix rho = noisy_mix(named_pure_state(id), 0.3);
      const DensityMatrix back = density_from_char(char_from_density(rho));
      worst_rt = std::max(worst_rt, (back.entries - rho.entries).cwiseAbs().maxCoeff());
    }
    const NamedWitness w = named_witness("ghz4-trisep");
    const double b_full = max_over_class(w.spec, SeparabilityClass::full_split(4), oo).bound;
    const double b_tri = max_over_class(w.spec, SeparabilityClass::tri(4), oo).bound;
    bool monotone = b_full <= b_tri + 1e-9;
    for (const auto& p : SeparabilityClass::tri(4).partitions)
      monotone = monotone &&
                 max_over_class(w.spec, SeparabilityClass{4, {p}}, oo).bound <= b_tri + 1e-9;
    const CharTensor pure = char_from_density(named_pure_state("ghz4"));
    const double t1 = noise_threshold(w.spec, pure, w.cls, oo);
    const double t2 = noise_threshold(w.spec.scaled(2.5), pure, w.cls, oo);
    const bool scale_ok = std::abs(t1 - t2) <= 1e-9;

    // Determinism: rerun the stochastic kernels and byte-compare serialized
    // outputs.
    auto kernel = [&]() {
      nlohmann::json j;
      j["tri_bound"] = max_over_class(w.spec, SeparabilityClass::tri(4), oo).bound;
      CharTensor R = CharTensor::zero(2);
      R.values[0] = 1.0;
      R[PauliString("XX")] = 0.5;
      R[PauliString("YY")] = -0.5;
      R[PauliString("ZZ")] = 0.5;
      j["bell_matched_p"] = matched_witness_search(
                                R, {PauliString("XX"), PauliString("YY"), PauliString("ZZ")},
                                SeparabilityClass::full_split(2), oo)
                                .p;
      return j.dump();
    };
    const bool deterministic = kernel() == kernel();

    r.pass = worst_rt <= 1e-12 && monotone && scale_ok && deterministic;
    r.measured = "round-trip error " + fmt(worst_rt) + " vs <= 1e-12; bounds " + fmt(b_full, 6) +
                 " <= " + fmt(b_tri, 6) + "; thresholds " + fmt(t1, 9) +
                 " = " + fmt(t2, 9) + "; deterministic rerun " + (deterministic ? "yes" : "no");
  });

  report.all_pass = true;
  for (const auto& c : report.criteria) report.all_pass = report.all_pass && c.pass;
  return report;
}

std::string format_suite_report(const SuiteReport& r) {
  std::ostringstream out;
  out << "reproduction suite (resolution " << r.resolution << ", seed " << r.seed << ")\n";
  for (const auto& c : r.criteria) {
    out << "  [" << std::setw(2) << c.index << "] " << (c.pass ? "PASS" : "FAIL") << "  "
        << c.title << "\n        " << c.measured << "  (" << std::fixed << std::setprecision(1)
        << c.seconds << "s)\n";
    out.unsetf(std::ios::floatfield);
    if (!c.note.empty()) out << "        note: " << c.note << "\n";
  }
  out << (r.all_pass ? "all criteria pass" : "some criteria FAIL") << "\n";
  return out.str();
}

nlohmann::json suite_report_to_json(const SuiteReport& r) {
  nlohmann::json j;
  j["resolution"] = r.resolution;
  j["seed"] = r.seed;
  j["all_pass"] = r.all_pass;
  j["criteria"] = nlohmann::json::array();
  for (const auto& c : r.criteria) {
    nlohmann::json jc{{"index", c.index}, {"title", c.title},       {"pass", c.pass},
                      {"measured", c.measured}, {"seconds", c.seconds}};
    if (!c.note.empty()) jc["note"] = c.note;
    j["criteria"].push_back(std::move(jc));
  }
  return j;
}

}  // namespace sepcert
