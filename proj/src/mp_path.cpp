#include "gsmin/mp_path.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "gsmin/csv.hpp"
#include "gsmin/error.hpp"
#include "gsmin/radial.hpp"

namespace gsmin {

const char* to_string(PathKind k) {
  switch (k) {
    case PathKind::Dilation: return "dilation";
    case PathKind::Plateau: return "plateau";
    case PathKind::TwoParameter: return "two-parameter";
  }
  return "?";
}

namespace {

double simpson_coeff(int j, int n) { return (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0); }

// Composite Simpson of fn over [a, b] with n (even) intervals.
double simpson(const std::function<double(double)>& fn, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.0;
  for (int j = 0; j <= n; ++j) s += simpson_coeff(j, n) * fn(a + j * h);
  return s * h / 3.0;
}

// Radial L2 norm of fn on [0, R] (weight omega_N r^(N-1)).
double radial_norm(const std::function<double(double)>& fn, int N, double R, double step) {
  const int n = 2 * static_cast<int>(std::ceil(R / (2.0 * step)));
  const double omega = sphere_measure(N);
  const double s = simpson(
      [&](double r) {
        const double v = fn(r);
        return omega * std::pow(r, N - 1) * v * v;
      },
      0.0, R, n);
  return std::sqrt(std::max(0.0, s));
}

void require_witness(const ShootResult& w, int N) {
  require(w.decayed(), "path construction needs a decayed witness");
  require(w.N == N, "witness has the wrong dimension for this path");
  require(w.trajectory.size() >= 3, "witness trajectory too short");
}

double traj_step(const ShootResult& w) { return w.trajectory.x[1] - w.trajectory.x[0]; }
double traj_length(const ShootResult& w) { return w.trajectory.x.back(); }

}  // namespace

DilationPath dilation_path(const NonlinearityModel& model, const ShootResult& w, int samples,
                           double M_target) {
  require(w.N >= 3, "dilation path needs N >= 3");
  require_witness(w, w.N);
  require(samples >= 4, "need at least 4 samples");
  const int N = w.N;
  const double K = w.integrals.grad_sq;
  const double m_w = w.mass;
  const double J_w = w.action;
  const ShiftedNonlinearity g(model, w.mu);
  const auto& tr = w.trajectory;
  const int n = static_cast<int>(tr.size()) - 1;
  const double h = traj_step(w);
  const double L = traj_length(w);
  const double omega = sphere_measure(N);

  auto formula = [&](double t) {
    return 0.5 * (std::pow(t, N - 2) - (N - 2.0) / N * std::pow(t, N)) * K;
  };
  // Quadrature on the dilated nodes (t x_j, u_j, u'_j / t).
  auto quadrature = [&](double t, double& mass_out) {
    double grad = 0.0, G = 0.0, ms = 0.0;
    const double ht = t * h;
    for (int j = 0; j <= n; ++j) {
      const double r = t * tr.x[j];
      const double wt = simpson_coeff(j, n) * ht / 3.0 * omega * std::pow(r, N - 1);
      const double d = tr.up[j] / t;
      grad += wt * d * d;
      ms += wt * tr.u[j] * tr.u[j];
      G += wt * g.G(tr.u[j]);
    }
    mass_out = ms;
    return 0.5 * grad - G;
  };

  DilationPath out;
  double T = 2.0;
  for (int k = 0; k < 60 && !(formula(T) < -1.0 && std::pow(T, N) * m_w > M_target); ++k) T *= 2.0;
  require(formula(T) < -1.0 && std::pow(T, N) * m_w > M_target, "no admissible end parameter");
  out.T = T;

  std::vector<double> ts;
  for (int k = 0; k <= samples; ++k) ts.push_back(T * k / samples);
  ts.push_back(1.0);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  for (double t : ts) {
    PathSample s;
    s.t = t;
    s.log_t = std::log(t);
    if (t == 0.0) {
      s.distance = std::sqrt(m_w);
    } else {
      s.action = quadrature(t, s.mass);
      s.action_formula = formula(t);
      out.max_mismatch = std::max(
          out.max_mismatch,
          std::abs(s.action - s.action_formula) / std::max(std::abs(s.action_formula), J_w));
      s.distance = radial_norm([&](double r) { return w.at(r / t) - w.at(r); }, N,
                               std::max(1.0, t) * L, 2.0 * h);
    }
    out.samples.push_back(s);
  }
  return out;
}

PlateauPath plateau_path_1d(const NonlinearityModel& model, const ShootResult& w, int samples,
                            double M_target) {
  require_witness(w, 1);
  require(samples >= 4, "need at least 4 samples");
  const ShiftedNonlinearity g(model, w.mu);
  const double zeta = w.zeta;
  const double sg = zeta > 0 ? 1.0 : -1.0;
  require(sg * g.g(zeta) > 0.0, "plateau path needs the sign condition on g_mu(zeta)");

  // G(zeta + sg d) for d >= 0, integrated from zeta where G vanishes.
  auto G_beyond = [&](double d) {
    static constexpr double x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                    0.5384693101056831, 0.9061798459386640};
    static constexpr double wq[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                     0.4786286704993665, 0.2369268850561891};
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += wq[i] * g.g(zeta + sg * 0.5 * d * (1.0 + x[i]));
    return sg * 0.5 * d * s;
  };
  auto e = [&](double y) { return 8.0 * std::pow(y, 6) - G_beyond(std::pow(y, 4)); };

  double eps = 1.0;
  auto eps_ok = [&](double ep) {
    for (int k = 1; k <= 4096; ++k)
      if (!(e(-ep * k / 4096.0) < 0.0)) return false;
    return true;
  };
  while (eps >= 1e-4 && !eps_ok(eps)) eps *= 0.5;
  if (eps < 1e-4) fail(ErrorCode::Numerical, "no plateau width satisfies the strict inequality");

  const auto& tr = w.trajectory;
  const int n = static_cast<int>(tr.size()) - 1;
  const double h = traj_step(w);
  const double L = traj_length(w);
  // Tail integrals int_x^L w'^2 and int_x^L w^2 (trapezoid, cumulative).
  std::vector<double> cw2(n + 1, 0.0), cu2(n + 1, 0.0);
  for (int j = n - 1; j >= 0; --j) {
    cw2[j] = cw2[j + 1] + 0.5 * h * (tr.up[j] * tr.up[j] + tr.up[j + 1] * tr.up[j + 1]);
    cu2[j] = cu2[j + 1] + 0.5 * h * (tr.u[j] * tr.u[j] + tr.u[j + 1] * tr.u[j + 1]);
  }
  auto tail = [&](const std::vector<double>& c, double a) {
    if (a >= L) return 0.0;
    const int j = std::min(static_cast<int>(a / h), n - 1);
    const double f = (a - tr.x[j]) / h;
    return (1.0 - f) * c[j] + f * c[j + 1];
  };
  const double J_w = 2.0 * cw2[0];
  const double m_w = 2.0 * cu2[0];

  const double G_eps = G_beyond(std::pow(eps, 4));
  const double W_eps = zeta + sg * std::pow(eps, 4);
  auto P_e = [&](double a) { return simpson(e, -a, 0.0, 256); };
  auto P_m = [&](double a) {
    return zeta * zeta * a + 2.0 * sg * zeta * std::pow(a, 5) / 5.0 + std::pow(a, 9) / 9.0;
  };
  const double Pe_eps = P_e(eps);
  const double Pm_eps = P_m(eps);

  auto action_at = [&](double a) {  // a = ln t
    if (a < 0.0) return 2.0 * tail(cw2, -a);
    if (a == 0.0) return J_w;
    if (a <= eps) return J_w + 2.0 * P_e(a);
    return J_w + 2.0 * Pe_eps - 2.0 * G_eps * (a - eps);
  };
  auto mass_at = [&](double a) {
    if (a < 0.0) return 2.0 * tail(cu2, -a);
    if (a <= eps) return m_w + 2.0 * P_m(a);
    return m_w + 2.0 * Pm_eps + 2.0 * (a - eps) * W_eps * W_eps;
  };
  auto W = [&](double y) {
    if (y >= 0.0) return w.at(y);
    if (y >= -eps) return zeta + sg * std::pow(y, 4);
    return W_eps;
  };

  const double need_J = (J_w + 2.0 * Pe_eps + 1.0) / (2.0 * G_eps);
  const double need_m = (M_target - m_w - 2.0 * Pm_eps) / (2.0 * W_eps * W_eps);
  const double a_T = eps + 1.25 * std::max({need_J, need_m, eps});

  PlateauPath out;
  out.eps = eps;
  out.J_w = J_w;
  out.T = std::exp(a_T);
  out.log_T = a_T;
  out.bound_ok = true;
  const int half = std::max(2, samples / 2);
  std::vector<double> logs;  // ln t, with -inf for t = 0
  for (int k = 1; k < half; ++k) logs.push_back(std::log(static_cast<double>(k) / half));
  for (int k = 0; k <= half; ++k) logs.push_back(a_T * k / half);

  PathSample zero;
  zero.distance = std::sqrt(m_w);
  out.samples.push_back(zero);
  for (double a : logs) {
    PathSample s;
    s.t = std::exp(a);
    s.log_t = a;
    s.action = action_at(a);
    s.mass = mass_at(a);
    const double X = L + std::max(a, 0.0);
    auto d2 = [&](double x) {
      const double d = W(x - a) - w.at(x);
      return d * d;
    };
    auto quad = [&](double lo, double hi) {
      if (!(hi > lo)) return 0.0;
      const int nd = 2 * std::max(1, static_cast<int>(std::ceil((hi - lo) / (4.0 * h))));
      return simpson(d2, lo, hi, nd);
    };
    // W(x - a) = W_eps on [0, a - eps]; w vanishes past L.
    const double c = std::max(0.0, a - eps);
    const double flat = quad(0.0, std::min(c, L)) + W_eps * W_eps * std::max(0.0, c - L);
    s.distance = std::sqrt(std::max(0.0, 2.0 * (flat + quad(c, X))));
    if (a > eps && !(s.action < J_w - 2.0 * G_eps * (a - eps))) out.bound_ok = false;
    out.samples.push_back(s);
  }
  return out;
}

Psi2D::Psi2D(const NonlinearityModel& model, const ShootResult& w) : g_(model, w.mu), w_(w) {
  require_witness(w, 2);
  const auto& tr = w_.trajectory;
  const int n = static_cast<int>(tr.size()) - 1;
  const double h = traj_step(w_);
  weight_.resize(n + 1);
  for (int j = 0; j <= n; ++j)
    weight_[j] = simpson_coeff(j, n) * h / 3.0 * 2.0 * M_PI * tr.x[j];
  K_ = w_.integrals.grad_sq;
  m_ = w_.mass;
}

double Psi2D::int_G(double theta) const {
  double s = 0.0;
  for (std::size_t j = 0; j < weight_.size(); ++j) s += weight_[j] * g_.G(theta * w_.trajectory.u[j]);
  return s;
}

double Psi2D::int_gw(double theta) const {
  double s = 0.0;
  for (std::size_t j = 0; j < weight_.size(); ++j) {
    const double u = w_.trajectory.u[j];
    s += weight_[j] * g_.g(theta * u) * u;
  }
  return s;
}

double Psi2D::int_hw2(double theta) const {
  double s = 0.0;
  for (std::size_t j = 0; j < weight_.size(); ++j) {
    const double u = w_.trajectory.u[j];
    const double t = theta * u;
    const double hv = t != 0.0 ? g_.g(t) / t : -g_.mu();
    s += weight_[j] * hv * u * u;
  }
  return s;
}

double Psi2D::value(double theta, double s) const {
  return 0.5 * theta * theta * K_ - s * s * int_G(theta);
}
double Psi2D::d_theta(double theta, double s) const { return theta * K_ - s * s * int_gw(theta); }
double Psi2D::d_s(double theta, double s) const { return -2.0 * s * int_G(theta); }
double Psi2D::mass(double theta, double s) const { return theta * theta * s * s * m_; }

double Psi2D::distance(double theta, double s) const {
  return radial_norm([&](double r) { return theta * w_.at(r / s) - w_.at(r); }, 2,
                     std::max(1.0, s) * traj_length(w_), 2.0 * traj_step(w_));
}

TwoParamPath two_param_path_2d(const NonlinearityModel& model, const ShootResult& w,
                               int samples_per_segment, double delta, double M_target) {
  require(samples_per_segment >= 2, "need at least 2 samples per segment");
  require(delta > 0.0, "delta must be positive");
  const Psi2D psi(model, w);
  const double K = psi.grad_sq();
  Path2DParams p;

  auto all_on = [](double a, double b, int n, const std::function<bool(double)>& pred) {
    for (int k = 0; k <= n; ++k)
      if (!pred(a + (b - a) * k / n)) return false;
    return true;
  };
  auto largest_dyadic = [](double start, double floor, const std::function<bool(double)>& ok) {
    for (double d = start; d >= floor; d *= 0.5)
      if (ok(d)) return d;
    return 0.0;
  };

  p.eps = largest_dyadic(0.25, 1e-6, [&](double ep) {
    return all_on(1.0 - ep, 1.0 + ep, 16, [&](double s) { return psi.distance(1.0, s) < delta; });
  });
  if (p.eps == 0.0) fail(ErrorCode::Numerical, "no dilation margin keeps the path within delta");

  std::vector<double> hw2(257);
  for (int k = 1; k <= 256; ++k) hw2[k] = psi.int_hw2(k / 256.0);
  p.s_star = largest_dyadic(0.5, 1e-6, [&](double ss) {
    if (!(ss < 1.0 - p.eps)) return false;
    for (int k = 1; k <= 256; ++k)
      if (!(K - ss * ss * hw2[k] > 0.0)) return false;
    return true;
  });
  if (p.s_star == 0.0) fail(ErrorCode::Numerical, "no small dilation s* found");

  const double d1 = largest_dyadic(0.5, 1e-6, [&](double d) {
    return all_on(1.0 - d, 1.0, 64, [&](double th) { return psi.int_gw(th) > 0.0; });
  });
  const double d2 = largest_dyadic(0.5, 1e-6, [&](double d) {
    return all_on(1.0, 1.0 + d, 64, [&](double th) { return psi.int_gw(th) > 0.0; });
  });
  if (d1 == 0.0 || d2 == 0.0)
    fail(ErrorCode::Numerical, "sign scan of d/dtheta int G(theta w) failed (Nehari identity)");
  p.theta1 = 1.0 - d1;
  p.theta2 = 1.0 + d2;

  auto margin = [&](double s, double sign) {
    return largest_dyadic(0.5, 1e-6, [&](double v) {
      return all_on(1.0 - v, 1.0 + v, 64,
                    [&](double th) { return sign * psi.d_theta(th, s) > 0.0; });
    });
  };
  p.vartheta_lo = margin(1.0 - p.eps, 1.0);
  p.vartheta_hi = margin(1.0 + p.eps, -1.0);
  if (p.vartheta_lo == 0.0 || p.vartheta_hi == 0.0)
    fail(ErrorCode::Numerical, "no sign-definite margin for Psi_theta near theta = 1");
  p.theta_star = std::min({d1, d2, p.vartheta_lo, p.vartheta_hi});

  const double th_end = 1.0 + p.theta_star;
  const double PG = psi.int_G(th_end);
  if (!(PG > 0.0)) fail(ErrorCode::Numerical, "int G((1 + theta*) w) is not positive (Pohozaev identity)");
  const double s_J = std::sqrt((0.5 * th_end * th_end * K + 1.0) / PG);
  const double s_m = std::sqrt(std::max(0.0, M_target) / (th_end * th_end * psi.mass(1.0, 1.0)));
  p.s_end = 1.1 * std::max({1.0 + p.eps, s_J, s_m});

  const double ts = 1.0 - p.theta_star;
  const std::vector<std::pair<double, double>> V{
      {0.0, p.s_star},       {ts, p.s_star},          {ts, 1.0 - p.eps},  {1.0, 1.0 - p.eps},
      {1.0, 1.0},            {1.0, 1.0 + p.eps},      {th_end, 1.0 + p.eps}, {th_end, p.s_end}};

  TwoParamPath out;
  out.params = p;
  const double J_w = psi.value(1.0, 1.0);
  double t0 = 0.0;
  auto push = [&](double th, double s, double t, int seg) {
    PathSample smp;
    smp.t = t;
    smp.log_t = std::log(t);
    smp.segment = seg;
    smp.action = psi.value(th, s);
    smp.mass = psi.mass(th, s);
    smp.distance = th == 0.0 ? std::sqrt(psi.mass(1.0, 1.0)) : psi.distance(th, s);
    out.samples.push_back(smp);
  };
  push(V[0].first, V[0].second, 0.0, 1);
  out.pattern_ok = true;
  const double flat_tol = 1e-6 * (1.0 + std::abs(J_w));
  for (int seg = 1; seg <= 7; ++seg) {
    const auto [a0, b0] = V[seg - 1];
    const auto [a1, b1] = V[seg];
    const double len = std::hypot(a1 - a0, b1 - b0);
    const std::size_t first = out.samples.size() - 1;
    for (int k = 1; k <= samples_per_segment; ++k) {
      const double f = static_cast<double>(k) / samples_per_segment;
      push(a0 + f * (a1 - a0), b0 + f * (b1 - b0), t0 + f * len, seg);
    }
    t0 += len;
    for (std::size_t i = first + 1; i < out.samples.size(); ++i) {
      const double prev = out.samples[i - 1].action, cur = out.samples[i].action;
      bool ok = true;
      if (seg <= 3) ok = cur > prev;
      else if (seg <= 5) ok = std::abs(cur - J_w) <= flat_tol;
      else ok = cur < prev;
      if (!ok && out.pattern_ok) {
        out.pattern_ok = false;
        out.pattern_detail = "segment " + std::to_string(seg) + " breaks the " +
                             (seg <= 3 ? "increase" : seg <= 5 ? "plateau" : "decrease") +
                             " pattern at t=" + format_double(out.samples[i].t);
      }
    }
  }
  out.T = t0;
  return out;
}

PathCheck check_path(std::span<const PathSample> samples, double J_w, double delta,
                     double M_target) {
  PathCheck c;
  c.J_w = J_w;
  if (samples.empty()) {
    c.reasons.push_back("no samples");
    return c;
  }
  const PathSample& first = samples.front();
  const PathSample& last = samples.back();
  c.J_T = last.action;
  c.m_T = last.mass;

  c.endpoints = true;
  if (!(first.t == 0.0 && first.mass == 0.0 && first.action == 0.0)) {
    c.endpoints = false;
    c.reasons.push_back("(i) path does not start at gamma(0) = 0");
  }
  if (!(last.action < -1.0)) {
    c.endpoints = false;
    c.reasons.push_back("(i) J(gamma(T)) = " + format_double(last.action) + " is not below -1");
  }

  c.max_J = first.action;
  for (const auto& s : samples) c.max_J = std::max(c.max_J, s.action);
  const double tol = 1e-8 * (1.0 + std::abs(J_w));
  c.maximum = std::abs(c.max_J - J_w) <= tol;
  if (!c.maximum)
    c.reasons.push_back("(i) sampled maximum " + format_double(c.max_J) + " differs from J(w) " +
                        format_double(J_w));

  c.separation = true;
  for (const auto& s : samples) {
    if (s.distance >= delta && !(s.action < J_w)) {
      c.separation = false;
      c.reasons.push_back("(ii) J >= J(w) at ln t=" + format_double(s.log_t) +
                          " with distance " + format_double(s.distance));
      break;
    }
  }

  c.mass_increasing = true;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].mass > samples[i - 1].mass)) {
      c.mass_increasing = false;
      c.reasons.push_back("(iii) mass not strictly increasing at ln t=" + format_double(samples[i].log_t));
      break;
    }
  }
  if (!(last.mass > M_target)) {
    c.mass_increasing = false;
    c.reasons.push_back("(iii) m(T) = " + format_double(last.mass) + " does not exceed M = " +
                        format_double(M_target));
  }
  return c;
}

namespace {

PathRun build_once(const NonlinearityModel& model, const ShootResult& w, const PathOptions& o,
                   double M, int density) {
  PathRun run;
  run.density = density;
  run.M_target = M;
  if (w.N >= 3) {
    run.kind = PathKind::Dilation;
    DilationPath d = dilation_path(model, w, density, M);
    run.samples = std::move(d.samples);
    run.T = d.T;
    run.log_T = std::log(d.T);
    run.formula_mismatch = d.max_mismatch;
    run.J_w = w.action;
  } else if (w.N == 1) {
    run.kind = PathKind::Plateau;
    PlateauPath p = plateau_path_1d(model, w, density, M);
    run.samples = std::move(p.samples);
    run.T = p.T;
    run.log_T = p.log_T;
    run.eps = p.eps;
    run.plateau_bound = p.bound_ok;
    run.J_w = p.J_w;
  } else {
    run.kind = PathKind::TwoParameter;
    TwoParamPath p = two_param_path_2d(model, w, std::max(2, density / 8), o.delta, M);
    run.samples = std::move(p.samples);
    run.T = p.T;
    run.log_T = std::log(p.T);
    run.params = p.params;
    run.pattern_ok = p.pattern_ok;
    run.pattern_detail = p.pattern_detail;
    run.J_w = Psi2D(model, w).value(1.0, 1.0);
  }
  run.check = check_path(run.samples, run.J_w, o.delta, M);
  return run;
}

bool same_verdict(const PathRun& a, const PathRun& b) {
  return a.check.endpoints == b.check.endpoints && a.check.maximum == b.check.maximum &&
         a.check.separation == b.check.separation &&
         a.check.mass_increasing == b.check.mass_increasing && a.pattern_ok == b.pattern_ok &&
         a.plateau_bound == b.plateau_bound;
}

}  // namespace

PathRun mountain_pass_path(const NonlinearityModel& model, const ShootResult& w,
                           const PathOptions& opts) {
  require(opts.samples >= 4, "need at least 4 samples");
  require(opts.delta > 0.0, "delta must be positive");
  const double M = opts.M_target > 0.0 ? opts.M_target : w.mass;
  PathRun run = build_once(model, w, opts, M, opts.samples);
  for (int k = 0; k < opts.max_doublings; ++k) {
    PathRun next = build_once(model, w, opts, M, 2 * run.density);
    const bool stable = same_verdict(run, next);
    run = std::move(next);
    if (stable) break;
  }
  return run;
}

void write_path_csv(std::span<const PathSample> samples, const std::string& path) {
  CsvWriter w(path, {"t", "mass", "action", "log_t"});
  for (const auto& s : samples) w.row({s.t, s.mass, s.action, s.log_t});
  w.close();
}

}  // namespace gsmin
