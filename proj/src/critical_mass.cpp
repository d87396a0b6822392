#include "gsmin/critical_mass.hpp"

#include <algorithm>
#include <cmath>

#include "gsmin/csv.hpp"
#include "gsmin/error.hpp"
#include "parallel.hpp"

namespace gsmin {

const char* to_string(MStarClass c) {
  switch (c) {
    case MStarClass::Zero: return "zero";
    case MStarClass::Positive: return "positive";
    case MStarClass::Bracketed: return "bracketed";
  }
  return "?";
}

namespace {

struct Probe {
  bool certified = false;
  double E = 0.0;
  bool converged = false;
};

Probe probe(const NonlinearityModel& model, int N, double m, const RadialGrid& grid,
            const SolverConfig& cfg, double margin) {
  Probe p;
  try {
    const MinimizeResult r = minimize(model, N, m, grid, cfg);
    p.E = r.E;
    p.converged = r.converged;
    p.certified = r.converged && r.E < -margin;
  } catch (const Error&) {
    p.E = std::nan("");
  }
  return p;
}

}  // namespace

std::vector<SpotCheck> small_mass_spot_checks(const NonlinearityModel& model, int N,
                                              const RadialGrid& grid, const SolverConfig& config,
                                              const MStarOptions& opts) {
  require(!opts.spot_masses.empty(), "spot checks need at least one mass");
  const double margin = opts.margin > 0.0 ? opts.margin : 10.0 * config.tol;
  const double m_ref = opts.spot_reference_mass > 0.0
                           ? opts.spot_reference_mass
                           : *std::max_element(opts.spot_masses.begin(), opts.spot_masses.end());
  const double p = model.exponent_at_zero();
  const double denom = p > 2.0 ? N - 4.0 / (p - 2.0) : 0.0;

  std::vector<SpotCheck> out(opts.spot_masses.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double m = opts.spot_masses[i];
    require(m > 0.0, "spot masses must be positive");
    const double ell = denom != 0.0 ? std::pow(m / m_ref, 1.0 / denom) : 1.0;
    const RadialGrid g(N, grid.radius() * ell, grid.intervals());
    SolverConfig cfg = config;
    // Amplitude scales as ell^(-2/(p-2)) and time as ell^2.
    cfg.dt *= ell * ell;
    if (denom != 0.0) cfg.tol *= std::pow(ell, -2.0 / (p - 2.0) - 2.0);
    cfg.init_width *= ell;
    if (cfg.init == InitKind::File || cfg.init == InitKind::Profile) cfg.init = InitKind::Gaussian;
    cfg.init_profile.reset();
    SpotCheck& s = out[i];
    s.m = m;
    s.R = g.radius();
    s.row.m = m;
    try {
      s.row.result = minimize(model, N, m, g, cfg);
    } catch (const Error& e) {
      s.row.error = e.what();
    }
    // Energies scale as ell^(N - 2 - 4/(p-2)); so does the margin.
    const double scaled_margin =
        denom != 0.0 ? margin * std::pow(ell, N - 2.0 - 4.0 / (p - 2.0)) : margin;
    s.certified = s.row.certified_negative(scaled_margin);
  }
  return out;
}

MStarEstimate estimate_mstar(const NonlinearityModel& model, int N, const RadialGrid& grid,
                             const SolverConfig& config, const MStarOptions& opts) {
  config.validate();
  require(grid.dim() == N, "grid dimension does not match N");
  require(opts.m_lo > 0.0 && opts.m_hi > opts.m_lo, "mass bracket must satisfy 0 < m_lo < m_hi");
  require(opts.tol_mass > 0.0, "tol_mass must be positive");
  require(opts.verify_restarts >= 1, "verify_restarts must be >= 1");

  MStarEstimate est;
  est.margin = opts.margin > 0.0 ? opts.margin : 10.0 * config.tol;
  const SmallMassClass cls = classify_small_mass(model, N);
  if (cls == SmallMassClass::A1) {
    est.classification = MStarClass::Zero;
    est.spot_checks = small_mass_spot_checks(model, N, grid, config, opts);
    for (const auto& s : est.spot_checks) est.spot_checks_pass = est.spot_checks_pass && s.certified;
    return est;
  }
  est.classification = cls == SmallMassClass::A2 ? MStarClass::Positive : MStarClass::Bracketed;

  const double margin = est.margin;
  auto eval = [&](double m) { return probe(model, N, m, grid, config, margin); };

  double lo = opts.m_lo, hi = opts.m_hi;
  Probe p_lo = eval(lo);
  for (int k = 0; p_lo.certified && k < opts.max_growth; ++k) {
    hi = lo;
    lo *= 0.25;
    p_lo = eval(lo);
  }
  if (p_lo.certified)
    fail(ErrorCode::InvalidArgument, "bracket invalid: E is certified negative at every lower mass tried");
  Probe p_hi = eval(hi);
  for (int k = 0; !p_hi.certified && k < opts.max_growth; ++k) {
    lo = hi;
    p_lo = p_hi;
    hi *= 2.0;
    p_hi = eval(hi);
  }
  if (!p_hi.certified)
    fail(ErrorCode::NoSolution, "no mass up to " + format_double(hi) + " certifies E < 0");

  int it = 0;
  est.log.push_back({it, lo, hi, p_lo.certified, p_hi.certified});
  while (hi - lo > opts.tol_mass) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const Probe p = eval(mid);
    if (p.certified) {
      hi = mid;
      p_hi = p;
    } else {
      lo = mid;
      p_lo = p;
    }
    est.log.push_back({++it, lo, hi, p_lo.certified, p_hi.certified});
  }

  // Re-run both endpoints with a fresh restart stream.
  SolverConfig vcfg = config;
  vcfg.restarts = std::max(config.restarts, opts.verify_restarts);
  vcfg.seed = config.seed + 1;
  Probe v[2];
  const double ends[2] = {lo, hi};
  detail::parallel_for(2, config.workers, [&](int i) {
    SolverConfig c = vcfg;
    c.workers = 1;
    v[i] = probe(model, N, ends[i], grid, c, margin);
  });
  est.endpoints_verified = !v[0].certified && v[1].certified;
  est.log.push_back({++it, lo, hi, v[0].certified, v[1].certified});

  est.lower = lo;
  est.upper = hi;
  est.width = hi - lo;
  est.E_upper = v[1].certified ? std::min(v[1].E, p_hi.E) : p_hi.E;
  est.E_lower = std::isnan(v[0].E) ? p_lo.E : std::min(v[0].E, p_lo.E);
  return est;
}

CurveReport curve_properties(const std::vector<double>& masses, const std::vector<double>& energies,
                             int N, double tol) {
  require(masses.size() == energies.size(), "masses and energies differ in length");
  require(masses.size() >= 4, "curve checks need at least 4 rows");
  for (std::size_t i = 1; i < masses.size(); ++i)
    require(masses[i] > masses[i - 1], "curve masses must be strictly increasing");
  CurveReport r;
  r.masses = masses;
  r.energies.resize(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) r.energies[i] = std::min(energies[i], 0.0);
  const auto& m = r.masses;
  const auto& E = r.energies;
  const std::size_t n = m.size();
  const double slack = 2.0 * tol;

  r.nonincreasing = true;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (E[i + 1] > E[i] + slack) {
      r.nonincreasing = false;
      r.violations.push_back("E increases between m=" + format_double(m[i]) + " and m=" +
                             format_double(m[i + 1]));
    }

  r.subhomogeneous = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (E[j] > m[j] / m[i] * E[i] + slack) {
        r.subhomogeneous = false;
        r.violations.push_back("E(" + format_double(m[j]) + ") > (m'/m) E(" + format_double(m[i]) +
                               ")");
      }

  r.concave_applicable = N >= 2;
  r.concave = true;
  if (r.concave_applicable) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double chord =
          ((m[i + 1] - m[i]) * E[i - 1] + (m[i] - m[i - 1]) * E[i + 1]) / (m[i + 1] - m[i - 1]);
      if (E[i] < chord - slack) {
        r.concave = false;
        r.violations.push_back("E below the chord at m=" + format_double(m[i]));
      }
    }
  }

  double C = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    C = std::max(C, std::abs(E[i + 1] - E[i]) / (m[i + 1] - m[i]));
  r.continuity_constant = C;
  r.continuous = std::isfinite(C);
  return r;
}

CurveReport curve_properties(const std::vector<CurveRow>& rows, int N, double tol) {
  std::vector<double> m, E;
  for (const auto& row : rows) {
    if (!row.converged()) continue;
    if (!m.empty() && row.m == m.back()) {
      E.back() = std::min(E.back(), row.result->E);
      continue;
    }
    m.push_back(row.m);
    E.push_back(row.result->E);
  }
  require(m.size() >= 4, "curve checks need at least 4 converged rows");
  return curve_properties(m, E, N, tol);
}

std::vector<PhiProbeRow> phi_u_probe(const NonlinearityModel& model, const RadialProfile& u,
                                     const std::vector<double>& masses,
                                     const std::vector<CurveRow>* reference, double tol) {
  const int N = u.grid().dim();
  require(N >= 2, "Phi_u probe needs N >= 2");
  require(std::abs(mass(u) - 1.0) <= 1e-8, "Phi_u probe needs a profile of unit mass");
  const double K = grad_norm_sq(u);
  const double IF = integrate(u, [&](double t) { return model.F(t); });
  std::vector<PhiProbeRow> out;
  for (double m : masses) {
    require(m > 0.0, "probe masses must be positive");
    PhiProbeRow row;
    row.m = m;
    const double scale = std::pow(m, 1.0 - 2.0 / N);
    row.phi = scale * K - m * IF;
    row.I_dilated = 0.5 * scale * K - m * IF;
    if (reference) {
      for (const auto& ref : *reference) {
        if (ref.m == m && ref.converged()) {
          row.E_ref = ref.result->E;
          row.above_curve = row.phi >= *row.E_ref - 2.0 * tol;
          break;
        }
      }
    }
    out.push_back(row);
  }
  return out;
}

void write_mstar_log_csv(const MStarEstimate& est, const std::string& path) {
  CsvWriter w(path, {"iteration", "m_lo", "m_hi", "status_lo", "status_hi"});
  auto status = [](bool c) { return c ? "certified" : "not-certified"; };
  for (const auto& r : est.log) w.row({r.iteration, r.m_lo, r.m_hi, status(r.certified_lo), status(r.certified_hi)});
  w.close();
}

}  // namespace gsmin
