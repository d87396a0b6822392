#include "gsmin/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsmin/csv.hpp"
#include "gsmin/error.hpp"
#include "gsmin/radial.hpp"

namespace gsmin {

const char* to_string(ShootStatus s) {
  switch (s) {
    case ShootStatus::Decayed: return "decayed";
    case ShootStatus::BlewUp: return "blew_up";
    case ShootStatus::Oscillated: return "oscillated";
    case ShootStatus::NoSolution: return "no_solution";
  }
  return "?";
}

double ShootResult::at(double x) const {
  const auto& t = trajectory;
  if (t.size() < 2 || x < 0.0 || x > t.x.back()) return 0.0;
  const double h = t.x[1] - t.x[0];
  const std::size_t i = std::min(static_cast<std::size_t>(x / h), t.size() - 2);
  const double s = (x - t.x[i]) / h;
  return (1.0 - s) * t.u[i] + s * t.u[i + 1];
}

namespace {

struct Rhs {
  const ShiftedNonlinearity& g;
  int N;
  void operator()(double r, double u, double v, double& du, double& dv) const {
    du = v;
    dv = -g.g(u);
    if (N > 1) dv -= (N - 1) / r * v;
  }
};

void rk4(const Rhs& f, double r, double h, double& u, double& v) {
  double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
  f(r, u, v, k1u, k1v);
  f(r + 0.5 * h, u + 0.5 * h * k1u, v + 0.5 * h * k1v, k2u, k2v);
  f(r + 0.5 * h, u + 0.5 * h * k2u, v + 0.5 * h * k2v, k3u, k3v);
  f(r + h, u + h * k3u, v + h * k3v, k4u, k4v);
  u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
  v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
}

// Grid of 2n intervals on [0, L] with spacing at most step.
int even_intervals(double L, double step) {
  require(step > 0.0 && std::isfinite(step), "shooting step must be positive");
  const double half = std::ceil(L / (2.0 * step));
  require(half < 5e7, "shooting domain too long for the step");
  return 2 * static_cast<int>(std::max(1.0, half));
}

// Decaying solution of the linear equation -u'' - (N-1)/r u' = -mu u:
// r^(-nu) K_nu(k r), nu = (N-2)/2 (N = 1 gives exp(-k r)).
struct LinearTail {
  int N;
  double k;
  double log_value(double r) const {
    if (N == 1) return -k * r;
    const double nu = 0.5 * (N - 2);
    return -nu * std::log(r) + std::log(std::cyl_bessel_k(nu, k * r));
  }
  double slope(double r) const {  // u'/u
    if (N == 1) return -k;
    const double nu = 0.5 * (N - 2);
    return -k * std::cyl_bessel_k(nu + 1.0, k * r) / std::cyl_bessel_k(nu, k * r);
  }
};

void finish_decayed(const ShiftedNonlinearity& g, ShootResult& res) {
  const auto& t = res.trajectory;
  const int n = static_cast<int>(t.size()) - 1;
  const double h = t.x[1] - t.x[0];
  const double omega = sphere_measure(res.N);
  const NonlinearityModel& model = g.base();
  ProfileIntegrals q;
  q.dim = res.N;
  for (int j = 0; j <= n; ++j) {
    const double c = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    const double w = c * h / 3.0 * omega * std::pow(t.x[j], res.N - 1);
    const double u = t.u[j];
    q.grad_sq += w * t.up[j] * t.up[j];
    q.mass += w * u * u;
    if (u != 0.0) {
      q.int_F += w * model.F(u);
      q.int_fu += w * model.f(u) * u;
    }
  }
  res.integrals = q;
  res.residuals = action_report(q, g.mu());
  res.action = res.residuals.J;
  res.mass = q.mass;

  const double s = res.zeta > 0 ? 1.0 : -1.0;
  res.monotone = true;
  res.zeta_barrier = true;
  for (int j = 1; j <= n; ++j) {
    if (!(s * t.u[j] < s * t.u[j - 1])) res.monotone = false;
    if (s * t.u[j] > s * res.zeta) res.zeta_barrier = false;
  }
}

ShootResult shoot(const ShiftedNonlinearity& g, int N, double b, const ShootOptions& opts) {
  require(N >= 1, "dimension must be >= 1");
  require(b != 0.0 && std::isfinite(b), "start height must be nonzero");
  ShootResult res;
  res.N = N;
  res.mu = g.mu();
  res.zeta = b;
  const double s = b > 0 ? 1.0 : -1.0;
  const double k = std::sqrt(g.mu());
  const double L = opts.length_factor / k;
  const int n = even_intervals(L, opts.step);
  const double h = L / n;
  auto& t = res.trajectory;
  t.x.reserve(n + 1);
  t.u.reserve(n + 1);
  t.up.reserve(n + 1);
  t.x.push_back(0.0);
  t.u.push_back(b);
  t.up.push_back(0.0);

  const double gb = g.g(b);
  if (!(s * gb > 0.0)) {
    res.status = ShootStatus::BlewUp;
    res.note = "g_mu has the wrong sign at the start height";
    return res;
  }

  const Rhs rhs{g, N};
  const LinearTail tail{N, k};
  double u = b, v = 0.0;
  int i = 1;
  if (N > 1) {
    // Series start across the regular singular point.
    u = b - gb * h * h / (2.0 * N);
    v = -gb * h / N;
  } else {
    rk4(rhs, 0.0, h, u, v);
  }
  res.status = ShootStatus::Oscillated;
  for (;; ++i) {
    const double r = i * h;
    t.x.push_back(r);
    t.u.push_back(u);
    t.up.push_back(v);
    if (!std::isfinite(u) || !std::isfinite(v) || std::abs(u) > opts.blowup_factor * std::abs(b)) {
      res.status = ShootStatus::BlewUp;
      res.note = "escaped the blow-up bound";
      return res;
    }
    if (s * u < 0.0) {
      res.crossed_zero = true;
      res.note = "crossed zero";
      return res;
    }
    if (s * v > 0.0) {
      res.note = "turned back before decaying";
      return res;
    }
    if (std::abs(u) <= opts.capture_ratio * std::abs(b) &&
        std::abs(g.base().f(u)) <= 1e-6 * g.mu() * std::abs(u) &&
        std::abs(v / u - tail.slope(r)) <= opts.capture_slope_tol * k) {
      res.capture_x = r;
      const double base = tail.log_value(r);
      for (int j = i + 1; j <= n; ++j) {
        const double rj = j * h;
        const double uj = u * std::exp(tail.log_value(rj) - base);
        t.x.push_back(rj);
        t.u.push_back(uj);
        t.up.push_back(uj * tail.slope(rj));
      }
      res.status = ShootStatus::Decayed;
      break;
    }
    if (i == n) {
      if (std::abs(u) + std::abs(v) < opts.decay_threshold) {
        res.status = ShootStatus::Decayed;
      } else {
        res.note = "did not decay within the domain";
        return res;
      }
      break;
    }
    rk4(rhs, r, h, u, v);
  }

  finish_decayed(g, res);
  if (N == 1) {
    double dev = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j)
      dev = std::max(dev, std::abs(0.5 * t.up[j] * t.up[j] + g.G(t.u[j])));
    res.phase_energy_max_dev = dev;
  }
  return res;
}

// First zero of g_mu beyond zeta on its side, if any below the scan limit.
std::optional<double> next_zero_of_g(const ShiftedNonlinearity& g, double zeta) {
  const double s = zeta > 0 ? 1.0 : -1.0;
  double a = zeta;
  for (double t = zeta * 1.01; std::abs(t) < 1e8 * std::abs(zeta); t *= 1.01) {
    if (s * g.g(t) <= 0.0) {
      double lo = a, hi = t;
      for (int it = 0; it < 200 && lo != hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (s * g.g(mid) > 0.0 ? lo : hi) = mid;
      }
      return lo;
    }
    a = t;
  }
  return std::nullopt;
}

ShootResult no_solution(int N, double mu, std::string note) {
  ShootResult r;
  r.N = N;
  r.mu = mu;
  r.status = ShootStatus::NoSolution;
  r.note = std::move(note);
  return r;
}

}  // namespace

Trajectory integrate_radial(const ShiftedNonlinearity& g, int N, double b, double r_end,
                            double step) {
  require(N >= 1, "dimension must be >= 1");
  require(r_end > 0.0, "r_end must be positive");
  const int n = even_intervals(r_end, step);
  const double h = r_end / n;
  const Rhs rhs{g, N};
  Trajectory t;
  double u = b, v = 0.0;
  t.x.push_back(0.0);
  t.u.push_back(u);
  t.up.push_back(v);
  const double gb = g.g(b);
  if (N > 1) {
    u = b - gb * h * h / (2.0 * N);
    v = -gb * h / N;
  } else {
    rk4(rhs, 0.0, h, u, v);
  }
  for (int i = 1; i <= n; ++i) {
    t.x.push_back(i * h);
    t.u.push_back(u);
    t.up.push_back(v);
    if (i < n) rk4(rhs, i * h, h, u, v);
  }
  return t;
}

ShootResult shoot_1d(const NonlinearityModel& model, double mu, int sign,
                     const ShootOptions& opts) {
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  const ShiftedNonlinearity g(model, mu);
  const auto z = find_zeta(g, sign);
  if (!z) return no_solution(1, mu, "G_mu has no zero of this sign");
  if (!(sign * z->g_at_zeta > 0.0)) {
    ShootResult r = no_solution(1, mu, "sign condition on g_mu(zeta) fails");
    r.zeta = z->zeta;
    return r;
  }
  return shoot(g, 1, z->zeta, opts);
}

ShootResult shoot_radial(const NonlinearityModel& model, int N, double mu, double b,
                         const ShootOptions& opts) {
  require(std::isfinite(mu) && mu > 0.0, "mu must be positive");
  const ShiftedNonlinearity g(model, mu);
  return shoot(g, N, b, opts);
}

ShootResult ground_state_radial(const NonlinearityModel& model, int N, double mu, int sign,
                                const ShootOptions& opts, HeightSearch* search) {
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  if (N == 1) return shoot_1d(model, mu, sign, opts);
  const ShiftedNonlinearity g(model, mu);
  const auto z = find_zeta(g, sign);
  if (!z) return no_solution(N, mu, "G_mu has no zero of this sign");

  HeightSearch hs;
  hs.lo = z->zeta;
  ShootResult shot = shoot(g, N, hs.lo, opts);
  if (shot.decayed()) return shot;

  const auto cap = next_zero_of_g(g, z->zeta);
  bool bracketed = false;
  for (int k = 1; k <= 60 && !bracketed; ++k) {
    const double cand = cap ? z->zeta + (*cap - z->zeta) * (1.0 - std::exp2(-k))
                            : z->zeta * std::exp2(k);
    shot = shoot(g, N, cand, opts);
    ++hs.iterations;
    if (shot.decayed()) return shot;
    if (shot.crossed_zero) {
      hs.hi = cand;
      bracketed = true;
    } else if (shot.status == ShootStatus::Oscillated) {
      hs.lo = cand;
    }
  }
  if (search) *search = hs;
  if (!bracketed) return no_solution(N, mu, "no overshooting height found");

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (hs.lo + hs.hi);
    if (mid == hs.lo || mid == hs.hi) break;
    shot = shoot(g, N, mid, opts);
    ++hs.iterations;
    if (search) *search = hs;
    if (shot.decayed()) return shot;
    (shot.crossed_zero ? hs.hi : hs.lo) = mid;
  }
  if (search) *search = hs;
  ShootResult r = no_solution(N, mu, "height bisection did not capture a decaying tail");
  r.zeta = 0.5 * (hs.lo + hs.hi);
  return r;
}

LeastActionResult least_action(const NonlinearityModel& model, int N, double mu,
                               const ShootOptions& opts) {
  require(std::isfinite(mu) && mu > 0.0, "mu must be positive");
  LeastActionResult out;
  out.upper_bound_only = N >= 2;
  std::vector<int> signs{1};
  if (N == 1 || !model.is_odd()) signs.push_back(-1);
  for (int s : signs) out.candidates.push_back(ground_state_radial(model, N, mu, s, opts));
  const ShootResult* best = nullptr;
  for (const auto& c : out.candidates)
    if (c.decayed() && (!best || c.action < best->action)) best = &c;
  if (!best) fail(ErrorCode::NoSolution, "no decaying solution found");
  out.witness = *best;
  out.A = best->action;
  return out;
}

void write_trajectory_csv(const ShootResult& r, const std::string& path) {
  CsvWriter w(path, {"x", "u", "uprime"});
  const auto& t = r.trajectory;
  for (std::size_t j = 0; j < t.size(); ++j) w.row({t.x[j], t.u[j], t.up[j]});
  w.close();
}

void write_shoot_summary_csv(const std::vector<ShootResult>& results, const std::string& path) {
  CsvWriter w(path, {"mu", "zeta_or_b", "action", "mass", "status"});
  for (const auto& r : results) w.row({r.mu, r.zeta, r.action, r.mass, to_string(r.status)});
  w.close();
}

}  // namespace gsmin
