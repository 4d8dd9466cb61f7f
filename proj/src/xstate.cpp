#include "sepcert/xstate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace sepcert {

namespace {

constexpr double kPi = std::numbers::pi;

// Anti-diagonal slots (row, col) in the order (rho_07, rho_16, rho_25, rho_34).
constexpr int kAntiRow[4] = {0, 1, 2, 3};
constexpr int kAntiCol[4] = {7, 6, 5, 4};

DensityMatrix bloch_state(double x, double y, double z) {
  Mat m(2, 2);
  m << cd(0.5 * (1.0 + z), 0.0), cd(0.5 * x, -0.5 * y),
       cd(0.5 * x, 0.5 * y),     cd(0.5 * (1.0 - z), 0.0);
  return DensityMatrix{1, std::move(m)};
}

double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? c : d;
}

}  // namespace

Mat XState::embed() const {
  Mat m = Mat::Zero(8, 8);
  for (int i = 0; i < 8; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  for (int k = 0; k < 4; ++k) {
    m(kAntiRow[k], kAntiCol[k]) = anti[static_cast<std::size_t>(k)];
    m(kAntiCol[k], kAntiRow[k]) = anti[static_cast<std::size_t>(k)];
  }
  return m;
}

void XState::validate(double tol) const {
  double sum = 0.0;
  for (double d : diag) {
    if (d < -tol) throw InputError("X state has a negative diagonal entry");
    sum += d;
  }
  if (std::abs(sum - 1.0) > tol) throw InputError("X state diagonal does not sum to 1");
  for (int k = 0; k < 4; ++k) {
    const double cap = std::sqrt(std::max(0.0, diag[static_cast<std::size_t>(k)] *
                                                   diag[static_cast<std::size_t>(7 - k)]));
    if (std::abs(anti[static_cast<std::size_t>(k)]) > cap + tol)
      throw InputError("X state anti-diagonal entry violates positivity");
  }
}

XState XState::from_density(const DensityMatrix& rho, double tol) {
  if (rho.n != 3 || rho.entries.rows() != 8 || rho.entries.cols() != 8)
    throw DimensionError("X states live on three qubits");
  XState x;
  for (int i = 0; i < 8; ++i) {
    const cd v = rho.entries(i, i);
    if (std::abs(v.imag()) > tol) throw InputError("diagonal entry is not real");
    x.diag[static_cast<std::size_t>(i)] = v.real();
  }
  for (int k = 0; k < 4; ++k) {
    const cd v = rho.entries(kAntiRow[k], kAntiCol[k]);
    if (std::abs(v.imag()) > tol) throw InputError("anti-diagonal entry is not real");
    x.anti[static_cast<std::size_t>(k)] = v.real();
  }
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (i == j || i + j == 7) continue;
      if (std::abs(rho.entries(i, j)) > tol)
        throw InputError("matrix has support outside the X pattern");
    }
  }
  return x;
}

std::array<double, 4> gamma_map(const std::array<double, 4>& v) {
  const double s = v[0] + v[1] + v[2] + v[3];
  return {s - 2.0 * v[0], s - 2.0 * v[1], s - 2.0 * v[2], s - 2.0 * v[3]};
}

std::array<double, 4> XWitnessParams::half_sums() const {
  const auto g = gamma_map({M111, M122, M212, M221});
  return {0.25 * g[0], 0.25 * g[1], 0.25 * g[2], 0.25 * g[3]};
}

std::array<double, 4> XWitnessParams::q_vector() const {
  const auto [d, a, b, g] = half_sums();
  return gamma_map({a * b * g, d * b * g, d * a * g, d * a * b});
}

double XWitnessParams::q() const {
  const auto qv = q_vector();
  return qv[0] * qv[1] * qv[2] * qv[3];
}

GmResult gm_closed_form(const XWitnessParams& p) {
  GmResult out;
  const double cand1 =
      std::max({std::abs(p.M111), std::abs(p.M122), std::abs(p.M212), std::abs(p.M221)});
  out.value = cand1;
  out.branch = GmBranch::MaxAbs;
  const auto [d, a, b, g] = p.half_sums();
  const double prod4 = d * a * b * g;
  const double q = p.q();
  out.q_boundary = std::abs(q) <= 1e-14;
  if (prod4 > 0.0 && q > 0.0) {
    const double rad = (d * a + b * g) * (d * b + a * g) * (d * g + a * b) / prod4;
    if (rad >= 0.0) {
      const double cand2 = std::sqrt(rad);
      if (cand2 >= cand1) {
        out.value = cand2;
        out.branch = GmBranch::FirstLine;
      }
    }
  }
  return out;
}

namespace {

// g(phi) = M111 c1c2c3 + M122 c1s2s3 + M212 s1c2s3 + M221 s1s2c3.
double gm_value(const XWitnessParams& p, const std::array<double, 3>& phi) {
  const double c1 = std::cos(phi[0]), s1 = std::sin(phi[0]);
  const double c2 = std::cos(phi[1]), s2 = std::sin(phi[1]);
  const double c3 = std::cos(phi[2]), s3 = std::sin(phi[2]);
  return p.M111 * c1 * c2 * c3 + p.M122 * c1 * s2 * s3 + p.M212 * s1 * c2 * s3 +
         p.M221 * s1 * s2 * c3;
}

// Per-angle linearization g = u cos(phi_i) + v sin(phi_i).
void gm_linear(const XWitnessParams& p, const std::array<double, 3>& phi, int i, double& u,
               double& v) {
  const double c1 = std::cos(phi[0]), s1 = std::sin(phi[0]);
  const double c2 = std::cos(phi[1]), s2 = std::sin(phi[1]);
  const double c3 = std::cos(phi[2]), s3 = std::sin(phi[2]);
  if (i == 0) {
    u = p.M111 * c2 * c3 + p.M122 * s2 * s3;
    v = p.M212 * c2 * s3 + p.M221 * s2 * c3;
  } else if (i == 1) {
    u = p.M111 * c1 * c3 + p.M212 * s1 * s3;
    v = p.M122 * c1 * s3 + p.M221 * s1 * c3;
  } else {
    u = p.M111 * c1 * c2 + p.M221 * s1 * s2;
    v = p.M122 * c1 * s2 + p.M212 * s1 * c2;
  }
}

}  // namespace

double gm_oracle(const XWitnessParams& p, int resolution) {
  if (resolution < 16) throw RangeError("gm_oracle resolution must be at least 16");
  struct GridPoint { double value; std::array<double, 3> phi; };
  std::vector<GridPoint> points;
  points.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  for (int j = 0; j < resolution; ++j) {
    for (int k = 0; k < resolution; ++k) {
      std::array<double, 3> phi{0.0, 2.0 * kPi * j / resolution, 2.0 * kPi * k / resolution};
      double u, v;
      gm_linear(p, phi, 0, u, v);
      phi[0] = std::atan2(v, u);
      points.push_back({std::hypot(u, v), phi});
    }
  }
  std::sort(points.begin(), points.end(),
            [](const GridPoint& a, const GridPoint& b) { return a.value > b.value; });
  // Exact cyclic coordinate ascent from the leading grid points; a single
  // start can stall in a secondary local maximum.
  const std::size_t starts = std::min<std::size_t>(points.size(), 48);
  double best = points.front().value;
  for (std::size_t s = 0; s < starts; ++s) {
    std::array<double, 3> phi = points[s].phi;
    double value = gm_value(p, phi);
    for (int sweep = 0; sweep < 2000; ++sweep) {
      const double prev = value;
      for (int i = 0; i < 3; ++i) {
        double u, v;
        gm_linear(p, phi, i, u, v);
        if (std::hypot(u, v) > 0.0) phi[static_cast<std::size_t>(i)] = std::atan2(v, u);
      }
      value = gm_value(p, phi);
      if (std::abs(value - prev) < 1e-15) break;
    }
    best = std::max(best, value);
  }
  return best;
}

std::array<double, 4> xstate_char(const XState& x) {
  const double a0 = x.anti[0], a1 = x.anti[1], a2 = x.anti[2], a3 = x.anti[3];
  return {2.0 * (a0 + a1 + a2 + a3), 2.0 * (-a0 + a1 + a2 - a3), 2.0 * (-a0 + a1 - a2 + a3),
          2.0 * (-a0 - a1 + a2 + a3)};
}

Theorem1Certificate theorem1_evaluate(const XState& x) {
  Theorem1Certificate cert;
  cert.R = xstate_char(x);
  const auto& R = cert.R;
  cert.Q = R[0] * R[1] * R[2] * R[3];
  cert.rvec = gamma_map({R[1] * R[2] * R[3], R[0] * R[2] * R[3], R[0] * R[1] * R[3],
                         R[0] * R[1] * R[2]});
  cert.r = cert.rvec[0] * cert.rvec[1] * cert.rvec[2] * cert.rvec[3];
  cert.q_boundary = std::abs(cert.r) <= 1e-14;
  const double max_anti =
      std::max({std::abs(x.anti[0]), std::abs(x.anti[1]), std::abs(x.anti[2]), std::abs(x.anti[3])});
  cert.Rvalue = 8.0 * max_anti;
  cert.branch = GmBranch::MaxAbs;
  if (cert.Q > 0.0 && cert.r > 0.0) {
    const double rad = (R[0] * R[1] + R[2] * R[3]) * (R[0] * R[2] + R[1] * R[3]) *
                       (R[0] * R[3] + R[1] * R[2]) / cert.Q;
    if (rad >= 0.0) {
      const double cand = std::sqrt(rad);
      if (cand >= cert.Rvalue) {
        cert.Rvalue = cand;
        cert.branch = GmBranch::FirstLine;
      }
    }
  }
  cert.separable = cert.Rvalue <= 1.0 + 1e-12;
  return cert;
}

Theorem2Verdict theorem2_verdict(const XState& x) {
  const auto& d = x.diag;
  auto nn = [](double v) { return std::max(v, 0.0); };
  double lhs = std::pow(nn(d[0]) * nn(d[3]) * nn(d[5]) * nn(d[6]), 0.25);
  lhs = std::min(lhs, std::pow(nn(d[1]) * nn(d[2]) * nn(d[4]) * nn(d[7]), 0.25));
  for (int k = 0; k < 4; ++k)
    lhs = std::min(lhs, std::sqrt(nn(d[static_cast<std::size_t>(k)]) *
                                  nn(d[static_cast<std::size_t>(7 - k)])));
  Theorem2Verdict v;
  v.lhs = lhs;
  v.rhs = theorem1_evaluate(x).Rvalue / 8.0;
  v.margin = v.lhs - v.rhs;
  v.separable = v.margin >= -1e-15;
  return v;
}

std::array<double, 4> CaseIIParams::m_vector() const {
  // -1/2 H (M0, M2, M1, M3), H rows (1,1,1,1), (1,-1,1,-1), (1,1,-1,-1), (1,-1,-1,1).
  const double v0 = M0, v1 = M2, v2 = M1, v3 = M3;
  return {-0.5 * (v0 + v1 + v2 + v3), -0.5 * (v0 - v1 + v2 - v3), -0.5 * (v0 + v1 - v2 - v3),
          -0.5 * (v0 - v1 - v2 + v3)};
}

double CaseIIParams::gm() const {
  const auto m = m_vector();
  return std::pow(m[0] * m[1] * m[2] * m[3], 0.25);
}

F2Coefficients f2_coefficients(const CaseIIParams& p, double x) {
  F2Coefficients f;
  const double s1 = std::sqrt(std::max(0.0, 1.0 - x * x));
  f.a = p.M1 * x;
  f.b = p.M2 + p.M3 * x;
  f.c = p.M3 + p.M2 * x;
  f.d = p.M1 + p.M0 * x;
  f.e = p.gm() * s1;
  return f;
}

namespace {

// max over t = cos(theta2) in [-1, 1] of b t + sqrt((c + d t)^2 + e^2 (1 - t^2)).
double f3_of_x(const CaseIIParams& p, double x) {
  const F2Coefficients f = f2_coefficients(p, x);
  auto val = [&](double t) {
    return f.b * t + std::sqrt((f.c + f.d * t) * (f.c + f.d * t) + f.e * f.e * (1.0 - t * t));
  };
  double best = std::max(val(-1.0), val(1.0));
  double arg = val(1.0) >= val(-1.0) ? 1.0 : -1.0;
  const int grid = 128;
  for (int i = 1; i < grid; ++i) {
    const double t = -1.0 + 2.0 * i / grid;
    if (val(t) > best) { best = val(t); arg = t; }
  }
  const double lo = std::max(-1.0, arg - 2.0 / grid);
  const double hi = std::min(1.0, arg + 2.0 / grid);
  const double t_star = golden_max(val, lo, hi, 80);
  best = std::max(best, val(t_star));
  return f.a + best;
}

}  // namespace

CaseIIResult caseII_bound(const CaseIIParams& p) {
  const auto m = p.m_vector();
  for (double mi : m)
    if (mi <= 0.0) throw PreconditionError("case (ii) requires all m_i > 0");
  if (!(-p.M0 > std::abs(p.M1)))
    throw PreconditionError("case (ii) requires -M0 > |M1|");

  CaseIIResult out;
  const int grid = 2000;
  double best = -1e300, arg = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double x = -1.0 + 2.0 * i / grid;
    const double v = f3_of_x(p, x);
    if (v > best) { best = v; arg = x; }
  }
  const double lo = std::max(-1.0, arg - 2.0 / grid);
  const double hi = std::min(1.0, arg + 2.0 / grid);
  auto fx = [&](double x) { return f3_of_x(p, x); };
  const double x_star = golden_max(fx, lo, hi, 80);
  best = std::max(best, fx(x_star));
  out.M000 = best;
  out.argmax_theta1 = std::acos(std::clamp(x_star, -1.0, 1.0));
  {
    const F2Coefficients f = f2_coefficients(p, x_star);
    auto val = [&](double t) {
      return f.b * t + std::sqrt((f.c + f.d * t) * (f.c + f.d * t) + f.e * f.e * (1.0 - t * t));
    };
    const double t_star = golden_max(val, -1.0, 1.0, 100);
    out.argmax_theta2 = std::acos(std::clamp(t_star, -1.0, 1.0));
  }

  CaseIIDiagnostics& d = out.diagnostics;
  d.A = p.M0 * p.M0 + p.M1 * p.M1 - p.M2 * p.M2 - p.M3 * p.M3;
  d.B = 2.0 * (p.M0 * p.M1 - p.M2 * p.M3);
  if (std::abs(d.B) > 1e-12 && d.A * d.A >= d.B * d.B)
    d.x0 = (-d.A + std::sqrt(d.A * d.A - d.B * d.B)) / d.B;
  else
    d.x0 = x_star;

  // Closed-form branch values at x0: boundary solution and interior solution.
  const F2Coefficients f0 = f2_coefficients(p, d.x0);
  d.branch1 = f0.a + f0.b + std::abs(f0.c + f0.d);
  const double e2d2 = f0.e * f0.e - f0.d * f0.d;
  const double b2 = f0.b * f0.b + e2d2;
  const double c2 = f0.c * f0.c + e2d2;
  if (std::abs(e2d2) > 1e-12 && b2 * c2 >= 0.0) {
    d.branch2 = f0.a + (f0.b * f0.c * f0.d +
                        (b2 >= 0.0 ? 1.0 : -1.0) * std::sqrt(f0.e * f0.e * c2 * b2)) /
                           e2d2;
  } else {
    d.branch2 = f3_of_x(p, d.x0);
  }

  const double h = 1e-5;
  const double fm = f3_of_x(p, d.x0 - h);
  const double fc = f3_of_x(p, d.x0);
  const double fp = f3_of_x(p, d.x0 + h);
  const double df3 = (fp - fm) / (2.0 * h);
  d.stationarity = std::abs(df3);
  d.dh_dx = p.M1 - df3;  // h = a - F3, a = M1 x
  d.second_derivative = (fp - 2.0 * fc + fm) / (h * h);
  return out;
}

PhiState construct_phi_state(const std::array<double, 3>& theta, const std::array<double, 3>& phi) {
  PhiState out;
  const std::array<double, 3> c{std::cos(theta[0]), std::cos(theta[1]), std::cos(theta[2])};
  const std::array<double, 3> s{std::sin(theta[0]), std::sin(theta[1]), std::sin(theta[2])};

  // Even sign patterns: eps1 eps2 eps3 = +1.
  static constexpr int kEven[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  const Partition full{3, {{1}, {2}, {3}}};
  for (int mirror = 0; mirror < 2; ++mirror) {
    const double phase_sign = mirror == 0 ? 1.0 : -1.0;
    for (const auto& eps : kEven) {
      DecompComponent comp;
      comp.weight = 1.0 / 8.0;
      comp.partition = full;
      for (int i = 0; i < 3; ++i) {
        const double e = static_cast<double>(eps[i]);
        const double si = s[static_cast<std::size_t>(i)];
        const double ph = phase_sign * phi[static_cast<std::size_t>(i)];
        comp.factors.push_back(ProductFactor{
            {i + 1}, bloch_state(e * si * std::cos(ph), e * si * std::sin(ph),
                                 c[static_cast<std::size_t>(i)])});
      }
      out.decomposition.components.push_back(std::move(comp));
    }
  }

  const Mat rho = assemble(out.decomposition, 3);
  out.state = XState::from_density(DensityMatrix{3, rho}, 1e-10);
  return out;
}

XDecomposition decompose_xstate(const XState& x) {
  x.validate(1e-9);
  XDecomposition out;

  // Anti-diagonal target in the orthogonal basis h_k of reachable sign
  // vertices; c_k is the forced coefficient along h_k.
  static constexpr int kH[4][4] = {
      {1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  std::array<double, 4> coef{};
  double t_mass = 0.0;
  for (int k = 0; k < 4; ++k) {
    double dot = 0.0;
    for (int i = 0; i < 4; ++i) dot += x.anti[static_cast<std::size_t>(i)] * kH[k][i];
    coef[static_cast<std::size_t>(k)] = dot / 4.0;
    t_mass += std::abs(dot) / 4.0;
  }

  const Partition full{3, {{1}, {2}, {3}}};
  auto push_diagonal = [&](const std::array<double, 8>& weights) {
    for (int l = 0; l < 8; ++l) {
      const double w = weights[static_cast<std::size_t>(l)];
      if (w <= 1e-15) continue;
      DecompComponent comp;
      comp.weight = w;
      comp.partition = full;
      for (int qb = 0; qb < 3; ++qb) {
        const double z = (l >> (2 - qb)) & 1 ? -1.0 : 1.0;
        comp.factors.push_back(ProductFactor{{qb + 1}, bloch_state(0.0, 0.0, z)});
      }
      out.decomposition.components.push_back(std::move(comp));
    }
  };

  if (t_mass < 1e-14) {
    out.kappa = 0.0;
    push_diagonal(x.diag);
    const Mat delta = assemble(out.decomposition, 3) - x.embed();
    out.residual = delta.cwiseAbs().maxCoeff();
    out.min_slack = *std::min_element(x.diag.begin(), x.diag.end());
    return out;
  }

  // Shared-theta mass is kappa(c) = 8 t_mass / (s1 s2 s3); the diagonal
  // remainder entries are d_l - kappa/8 prod_i (1 + (-1)^{l_i} c_i).
  auto min_slack = [&](const std::array<double, 3>& c) {
    const double s = std::sqrt((1.0 - c[0] * c[0]) * (1.0 - c[1] * c[1]) * (1.0 - c[2] * c[2]));
    if (s < 1e-9) return -1e300;
    const double scale = t_mass / s;
    double worst = 1e300;
    for (int l = 0; l < 8; ++l) {
      double prod = scale;
      for (int qb = 0; qb < 3; ++qb)
        prod *= 1.0 + ((l >> (2 - qb)) & 1 ? -c[static_cast<std::size_t>(qb)]
                                           : c[static_cast<std::size_t>(qb)]);
      worst = std::min(worst, x.diag[static_cast<std::size_t>(l)] - prod);
    }
    return worst;
  };

  // Coarse grid, then coordinate golden-section refinement from the best
  // starting points.
  struct Start { double value; std::array<double, 3> c; };
  std::vector<Start> starts;
  const int res = 25;
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j)
      for (int k = 0; k < res; ++k) {
        const std::array<double, 3> c{-0.96 + 1.92 * i / (res - 1), -0.96 + 1.92 * j / (res - 1),
                                      -0.96 + 1.92 * k / (res - 1)};
        starts.push_back({min_slack(c), c});
      }
  std::sort(starts.begin(), starts.end(),
            [](const Start& a, const Start& b) { return a.value > b.value; });
  starts.resize(64);

  double best = -1e300;
  std::array<double, 3> best_c{0.0, 0.0, 0.0};
  for (const Start& st : starts) {
    std::array<double, 3> c = st.c;
    double val = st.value;
    for (int sweep = 0; sweep < 60; ++sweep) {
      const double prev = val;
      for (int i = 0; i < 3; ++i) {
        auto line = [&](double ci) {
          std::array<double, 3> cc = c;
          cc[static_cast<std::size_t>(i)] = ci;
          return min_slack(cc);
        };
        c[static_cast<std::size_t>(i)] = golden_max(line, -0.999999, 0.999999, 60);
      }
      val = min_slack(c);
      if (std::abs(val - prev) < 1e-14) break;
    }
    if (val > best) { best = val; best_c = c; }
  }

  if (best < -1e-12) {
    std::ostringstream msg;
    msg << "no theta yields a nonnegative diagonal remainder (worst slack " << best << ")";
    throw ConstructionFailure(msg.str());
  }

  const std::array<double, 3> theta{std::acos(best_c[0]), std::acos(best_c[1]),
                                    std::acos(best_c[2])};
  out.theta = theta;
  out.min_slack = std::max(best, 0.0);
  const double s = std::sin(theta[0]) * std::sin(theta[1]) * std::sin(theta[2]);
  out.kappa = 8.0 * t_mass / s;

  for (int k = 0; k < 4; ++k) {
    const double ck = coef[static_cast<std::size_t>(k)];
    if (std::abs(ck) < 1e-15) continue;
    const double weight = 8.0 * std::abs(ck) / s;
    // Sign vertex sigma * h_k; its last three entries pick A, B, C in {0, pi}
    // with phi1 = (A+B)/2, phi2 = (A+C)/2, phi3 = (B+C)/2.
    const double sigma = ck >= 0.0 ? 1.0 : -1.0;
    const double A = sigma * kH[k][1] > 0.0 ? 0.0 : kPi;
    const double B = sigma * kH[k][2] > 0.0 ? 0.0 : kPi;
    const double C = sigma * kH[k][3] > 0.0 ? 0.0 : kPi;
    const PhiState ph = construct_phi_state(theta, {(A + B) / 2.0, (A + C) / 2.0, (B + C) / 2.0});
    for (DecompComponent comp : ph.decomposition.components) {
      comp.weight *= weight;
      out.decomposition.components.push_back(std::move(comp));
    }
  }

  std::array<double, 8> remainder{};
  for (int l = 0; l < 8; ++l) {
    double prod = out.kappa / 8.0;
    for (int qb = 0; qb < 3; ++qb)
      prod *= 1.0 + ((l >> (2 - qb)) & 1 ? -best_c[static_cast<std::size_t>(qb)]
                                         : best_c[static_cast<std::size_t>(qb)]);
    remainder[static_cast<std::size_t>(l)] = std::max(0.0, x.diag[static_cast<std::size_t>(l)] - prod);
  }
  push_diagonal(remainder);

  const Mat delta = assemble(out.decomposition, 3) - x.embed();
  out.residual = delta.cwiseAbs().maxCoeff();
  if (out.residual > 1e-9) {
    std::ostringstream msg;
    msg << "reconstruction residual " << out.residual << " exceeds 1e-9";
    throw ConstructionFailure(msg.str());
  }
  return out;
}

}  // namespace sepcert
