#pragma once

// Closed-form machinery for three-qubit X states: the anti-diagonal sector
// maximum g_m, the R-value test for uniform-diagonal states, the full
// separability criterion for general X states, the case (ii) witness-family
// bound, and the explicit product-state construction behind the criterion.

#include <array>
#include <string>

#include "sepcert/decomp.hpp"
#include "sepcert/pauli.hpp"

namespace sepcert {

struct XState {
  std::array<double, 8> diag{};
  std::array<double, 4> anti{};  // (rho_07, rho_16, rho_25, rho_34)

  Mat embed() const;  // 8x8 matrix
  /// Throws InputError when the diagonal or positivity invariants fail.
  void validate(double tol = 1e-12) const;
  static XState from_density(const DensityMatrix& rho, double tol = kDefaultTol);
};

/// Gamma has -1 on the diagonal, +1 off it; (v*Gamma)_i = sum(v) - 2 v_i.
std::array<double, 4> gamma_map(const std::array<double, 4>& v);

struct XWitnessParams {
  double M111 = 0.0, M122 = 0.0, M212 = 0.0, M221 = 0.0;

  /// (delta, alpha, beta, gamma) = (1/4) (M111, M122, M212, M221) Gamma.
  std::array<double, 4> half_sums() const;
  /// (q_0..q_3) = (alpha beta gamma, delta beta gamma, delta alpha gamma,
  /// delta alpha beta) Gamma.
  std::array<double, 4> q_vector() const;
  double q() const;
};

enum class GmBranch { FirstLine, MaxAbs };

struct GmResult {
  double value = 0.0;
  GmBranch branch = GmBranch::MaxAbs;
  bool q_boundary = false;  // q == 0 within 1e-14
};

/// max over phi of M111 c1c2c3 + M122 c1s2s3 + M212 s1c2s3 + M221 s1s2c3.
/// The product formula sqrt[(da+bg)(db+ag)(dg+ab)/(dabg)] is used only when
/// delta alpha beta gamma > 0 and q > 0 strictly; the result is never below
/// the max-abs candidate.
GmResult gm_closed_form(const XWitnessParams& p);

/// Grid maximum over phi in [0, 2pi)^3 (phi_1 eliminated in closed form),
/// refined by cyclic exact coordinate ascent to 1e-10 stationarity.
double gm_oracle(const XWitnessParams& p, int resolution);

/// Sector expectations (R_111, R_122, R_212, R_221) of an X state.
std::array<double, 4> xstate_char(const XState& x);

struct Theorem1Certificate {
  std::array<double, 4> R{};  // (R_111, R_122, R_212, R_221)
  double Q = 0.0;             // R0 R1 R2 R3
  std::array<double, 4> rvec{};
  double r = 0.0;
  double Rvalue = 0.0;
  GmBranch branch = GmBranch::MaxAbs;
  bool q_boundary = false;
  bool separable = false;  // meaningful for uniform-diagonal states only
};

Theorem1Certificate theorem1_evaluate(const XState& x);

struct Theorem2Verdict {
  bool separable = false;
  double lhs = 0.0;
  double rhs = 0.0;  // Rvalue / 8
  double margin = 0.0;
};

/// Full separability iff min((d0 d3 d5 d6)^{1/4}, (d1 d2 d4 d7)^{1/4},
/// min_i sqrt(d_i d_{7-i})) >= Rvalue / 8.
Theorem2Verdict theorem2_verdict(const XState& x);

struct CaseIIParams {
  double M0 = 0.0, M1 = 0.0, M2 = 0.0, M3 = 0.0;

  /// (m_0..m_3) = -1/2 H (M0, M2, M1, M3), H the +/-1 Hadamard matrix.
  std::array<double, 4> m_vector() const;
  double gm() const;  // (m0 m1 m2 m3)^{1/4}
};

struct F2Coefficients {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0;
};

/// Coefficients of F2(theta1, theta2) = a + b c2 + sqrt((c + d c2)^2 + e^2 s2^2)
/// at x = cos(theta1).
F2Coefficients f2_coefficients(const CaseIIParams& p, double x);

struct CaseIIDiagnostics {
  double branch1 = 0.0;       // F3 from the boundary solution
  double branch2 = 0.0;       // F3 from the interior solution
  double A = 0.0, B = 0.0;
  double x0 = 0.0;            // (-A + sqrt(A^2 - B^2)) / B
  double stationarity = 0.0;  // finite-difference |dF3/dx| at x0
  double dh_dx = 0.0;         // finite-difference d(a - F3)/dx at x0, expected M1
  double second_derivative = 0.0;
};

struct CaseIIResult {
  double M000 = 0.0;  // max of F2, expected -M0
  double argmax_theta1 = 0.0, argmax_theta2 = 0.0;
  CaseIIDiagnostics diagnostics;
};

/// Maximizes F2 over (theta1, theta2) by a fine grid plus local ascent.
/// Requires all m_i > 0 and -M0 > |M1|.
CaseIIResult caseII_bound(const CaseIIParams& p);

struct PhiState {
  XState state;
  SeparableDecomposition decomposition;  // full-split, weights 1/8
};

/// rho = (1/16)(2 A1A2A3 + B1B2B3 + B'1B'2B'3) with A_i = I + cos(theta_i) Z,
/// B_i = sin(theta_i)(cos(phi_i) X + sin(phi_i) Y) and B'_i the phi -> -phi
/// mirror; returned with its explicit product-state mixture.
PhiState construct_phi_state(const std::array<double, 3>& theta, const std::array<double, 3>& phi);

struct XDecomposition {
  SeparableDecomposition decomposition;
  double kappa = 0.0;                 // total mass on the non-diagonal part
  std::array<double, 3> theta{};
  double min_slack = 0.0;             // worst diagonal remainder entry
  double residual = 0.0;              // max-abs reconstruction error
};

/// Writes x as a diagonal remainder plus a mixture of phi-states sharing one
/// theta, with phases chosen on the anti-diagonal sign vertices. Throws
/// ConstructionFailure (with the residual in the message) when no theta gives
/// a nonnegative remainder.
XDecomposition decompose_xstate(const XState& x);

}  // namespace sepcert
