#include "gsmin/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gsmin/error.hpp"

namespace gsmin {

namespace {

double signed_power(double t, double e) {  // |t|^(e-2) t
  if (t == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(t), e - 1.0), t);
}

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void require_exponent(double e, const char* name) {
  require(std::isfinite(e) && e > 1.0,
          std::string("exponent ") + name + " must be finite and > 1");
}

// Adaptive Simpson on [a, b].
double simpson_step(const NonlinearityModel::Callable& f, double a, double b,
                    double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const NonlinearityModel::Callable& f, double a,
                        double b, double tol) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

// Terms with equal exponents merged, zero coefficients dropped, sorted by exponent.
std::vector<PowerTerm> merged(std::span<const PowerTerm> terms) {
  std::vector<PowerTerm> out;
  for (const auto& t : terms) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const PowerTerm& o) { return same(o.exponent, t.exponent); });
    if (it == out.end())
      out.push_back(t);
    else
      it->coeff += t.coeff;
  }
  std::erase_if(out, [](const PowerTerm& t) { return t.coeff == 0.0; });
  std::sort(out.begin(), out.end(),
            [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
  return out;
}

}  // namespace

NonlinearityModel NonlinearityModel::single_power(double p, int sign) {
  require_exponent(p, "p");
  require(sign == 1 || sign == -1, "single-power sign must be +1 or -1");
  NonlinearityModel m;
  m.family_ = Family::SinglePower;
  m.terms_ = {{static_cast<double>(sign), p}};
  m.exp_zero_ = m.exp_inf_ = p;
  m.descriptor_ = "single-power:p=" + fmt_num(p) + (sign < 0 ? ",sign=-1" : "");
  return m;
}

NonlinearityModel NonlinearityModel::power_sum(double p, double q, double A) {
  require_exponent(p, "p");
  require_exponent(q, "q");
  require(std::isfinite(A), "power-sum coefficient A must be finite");
  require(q < p, "power-sum requires q < p");
  NonlinearityModel m;
  m.family_ = Family::PowerSum;
  m.terms_ = {{1.0, p}, {A, q}};
  m.exp_zero_ = A != 0.0 ? q : p;
  m.exp_inf_ = p;
  m.descriptor_ = "power-sum:p=" + fmt_num(p) + ",q=" + fmt_num(q) + ",A=" + fmt_num(A);
  return m;
}

NonlinearityModel NonlinearityModel::power_difference(double p, double q) {
  require_exponent(p, "p");
  require_exponent(q, "q");
  require(p < q, "power-difference requires p < q");
  NonlinearityModel m;
  m.family_ = Family::PowerDifference;
  m.terms_ = {{1.0, p}, {-1.0, q}};
  m.exp_zero_ = p;
  m.exp_inf_ = q;
  m.descriptor_ = "power-difference:p=" + fmt_num(p) + ",q=" + fmt_num(q);
  return m;
}

NonlinearityModel NonlinearityModel::cubic_quintic() {
  NonlinearityModel m = power_difference(4.0, 6.0);
  m.family_ = Family::CubicQuintic;
  m.descriptor_ = "cubic-quintic";
  return m;
}

NonlinearityModel NonlinearityModel::custom(Callable f, double exponent_at_zero,
                                            double exponent_at_infinity,
                                            std::string name) {
  require(static_cast<bool>(f), "custom model needs a callable");
  require(std::isfinite(exponent_at_zero) && std::isfinite(exponent_at_infinity),
          "custom model must declare finite leading exponents of F");
  NonlinearityModel m;
  m.family_ = Family::Custom;
  m.custom_ = std::move(f);
  m.exp_zero_ = exponent_at_zero;
  m.exp_inf_ = exponent_at_infinity;
  m.name_ = name;
  m.descriptor_ = "custom:" + name;
  return m;
}

double NonlinearityModel::f(double t) const {
  if (family_ == Family::Custom) {
    double v;
    try {
      v = custom_(t);
    } catch (const std::exception& e) {
      fail(ErrorCode::Numerical,
           "custom nonlinearity failed at t=" + fmt_num(t) + ": " + e.what());
    }
    if (!std::isfinite(v))
      fail(ErrorCode::Numerical,
           "custom nonlinearity returned a non-finite value at t=" + fmt_num(t));
    return v;
  }
  double s = 0.0;
  for (const auto& term : terms_) s += term.coeff * signed_power(t, term.exponent);
  return s;
}

double NonlinearityModel::F(double t) const {
  if (family_ == Family::Custom) {
    Callable fn = [this](double x) { return f(x); };
    return adaptive_simpson(fn, 0.0, t, kCustomQuadratureTol);
  }
  const double a = std::abs(t);
  double s = 0.0;
  for (const auto& term : terms_)
    s += term.coeff * std::pow(a, term.exponent) / term.exponent;
  return s;
}

std::string NonlinearityModel::describe() const { return descriptor_; }

NonlinearityModel parse_model(std::string_view descriptor) {
  const auto colon = descriptor.find(':');
  const std::string family(descriptor.substr(0, colon));
  std::map<std::string, double> params;
  if (colon != std::string_view::npos) {
    std::string rest(descriptor.substr(colon + 1));
    std::istringstream is(rest);
    std::string item;
    while (std::getline(is, item, ',')) {
      const auto eq = item.find('=');
      require(eq != std::string::npos && eq > 0,
              "malformed model parameter '" + item + "' (expected key=value)");
      const std::string key = item.substr(0, eq);
      const std::string val = item.substr(eq + 1);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(val, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      require(used == val.size() && !val.empty(),
              "model parameter '" + key + "' is not a number: '" + val + "'");
      require(params.emplace(key, v).second, "duplicate model parameter '" + key + "'");
    }
  }
  auto take = [&](const std::string& key) -> double {
    auto it = params.find(key);
    require(it != params.end(), "model '" + family + "' needs parameter '" + key + "'");
    const double v = it->second;
    params.erase(it);
    return v;
  };
  auto take_or = [&](const std::string& key, double dflt) {
    return params.count(key) ? take(key) : dflt;
  };
  NonlinearityModel model = [&] {
    if (family == "single-power") {
      const double p = take("p");
      return NonlinearityModel::single_power(p, static_cast<int>(take_or("sign", 1.0)));
    }
    if (family == "power-sum") {
      const double p = take("p");
      const double q = take("q");
      return NonlinearityModel::power_sum(p, q, take("A"));
    }
    if (family == "power-difference") {
      const double p = take("p");
      return NonlinearityModel::power_difference(p, take("q"));
    }
    if (family == "cubic-quintic") return NonlinearityModel::cubic_quintic();
    fail(ErrorCode::InvalidArgument, "unknown model family '" + family + "'");
  }();
  require(params.empty(), "unknown parameter '" +
                              (params.empty() ? std::string() : params.begin()->first) +
                              "' for model '" + family + "'");
  return model;
}

ShiftedNonlinearity::ShiftedNonlinearity(NonlinearityModel base, double mu)
    : base_(std::move(base)), mu_(mu) {
  require(std::isfinite(mu) && mu > 0.0, "mu must be positive");
}

const char* to_string(SmallMassClass c) {
  switch (c) {
    case SmallMassClass::A1: return "A1";
    case SmallMassClass::A2: return "A2";
    case SmallMassClass::Undetermined: return "undetermined";
  }
  return "?";
}

const char* to_string(Verdict3 v) {
  switch (v) {
    case Verdict3::Pass: return "pass";
    case Verdict3::Fail: return "fail";
    case Verdict3::Sampled: return "sampled";
  }
  return "?";
}

namespace {

void check_family_range(const NonlinearityModel& model, int N) {
  const double crit = 2.0 + 4.0 / N;
  const auto terms = model.terms();
  if (model.family() == Family::PowerSum) {
    const double p = terms[0].exponent, q = terms[1].exponent;
    require(2.0 < q && q < p && p < crit,
            "power-sum needs 2 < q < p < 2 + 4/N = " + fmt_num(crit) + " (got p=" +
                fmt_num(p) + ", q=" + fmt_num(q) + ")");
  }
  if (model.family() == Family::PowerDifference || model.family() == Family::CubicQuintic) {
    const double p = terms[0].exponent, q = terms[1].exponent;
    require(2.0 < p && p < q, "power-difference needs 2 < p < q");
    if (N >= 3) {
      const double sob = 2.0 * N / (N - 2.0);
      require(q <= sob + 1e-12, "power-difference needs q <= 2N/(N-2) = " + fmt_num(sob) +
                                    " for N=" + std::to_string(N) + " (got q=" + fmt_num(q) + ")");
    }
  }
}

HypothesisReport check_builtin(const NonlinearityModel& model, int N) {
  HypothesisReport r;
  const auto terms = merged(model.terms());
  const double crit = 2.0 + 4.0 / N;
  if (terms.empty()) {
    r.f1 = {Verdict3::Pass, "f is identically zero"};
    r.f2 = {Verdict3::Pass, "f is identically zero"};
    r.f3 = {Verdict3::Fail, "F is identically zero"};
    return r;
  }
  const PowerTerm low = terms.front();
  const PowerTerm high = terms.back();

  if (low.exponent > 2.0)
    r.f1 = {Verdict3::Pass, "smallest exponent " + fmt_num(low.exponent) + " > 2"};
  else
    r.f1 = {Verdict3::Fail, "smallest exponent " + fmt_num(low.exponent) + " <= 2"};

  std::string why;
  bool ok = true;
  if (N >= 3) {
    const double sob = 2.0 * N / (N - 2.0);
    if (high.exponent > sob + 1e-12) {
      ok = false;
      why = "largest exponent " + fmt_num(high.exponent) + " exceeds 2N/(N-2) = " + fmt_num(sob);
    }
  }
  if (ok) {
    if (high.exponent < crit - 1e-12) {
      why = "largest exponent " + fmt_num(high.exponent) + " < 2+4/N = " + fmt_num(crit);
    } else if (same(high.exponent, crit)) {
      ok = high.coeff <= 0.0;
      why = "largest exponent equals 2+4/N with coefficient " + fmt_num(high.coeff);
    } else {
      ok = high.coeff < 0.0;
      why = "largest exponent " + fmt_num(high.exponent) + " > 2+4/N = " + fmt_num(crit) +
            " with coefficient " + fmt_num(high.coeff);
    }
  }
  r.f2 = {ok ? Verdict3::Pass : Verdict3::Fail, why};

  const bool positive = std::any_of(terms.begin(), terms.end(),
                                    [](const PowerTerm& t) { return t.coeff > 0.0; });
  // With at most a positive small-t or large-t leading term F is positive
  // somewhere; if every coefficient is <= 0, F <= 0 everywhere.
  if (low.coeff > 0.0 || high.coeff > 0.0)
    r.f3 = {Verdict3::Pass, "leading term of F is positive near 0 or infinity"};
  else if (!positive)
    r.f3 = {Verdict3::Fail, "all coefficients are non-positive, F <= 0"};
  else {
    bool found = false;
    for (double t = 1e-6; t < 1e6 && !found; t *= 1.01) found = model.F(t) > 0.0 || model.F(-t) > 0.0;
    r.f3 = {found ? Verdict3::Pass : Verdict3::Fail, "decided by scanning F"};
  }
  return r;
}

HypothesisReport check_custom(const NonlinearityModel& model, int N) {
  HypothesisReport r;
  const double crit = 2.0 + 4.0 / N;

  double worst = 0.0;
  for (double t = 1e-3; t >= 1e-8; t /= 10.0)
    worst = std::max({worst, std::abs(model.f(t) / t), std::abs(model.f(-t) / t)});
  const double last = std::max(std::abs(model.f(1e-8) / 1e-8), std::abs(model.f(-1e-8) / 1e-8));
  r.f1 = {last < 1e-3 ? Verdict3::Sampled : Verdict3::Fail,
          "max |f(t)/t| at |t|=1e-8 is " + fmt_num(last)};

  bool ok = true;
  std::string why = "sampled on |t| in [10, 1e6]";
  if (N >= 3) {
    const double sob = 2.0 * N / (N - 2.0);
    if (model.exponent_at_infinity() > sob + 1e-12) {
      ok = false;
      why = "declared exponent at infinity exceeds 2N/(N-2)";
    }
  }
  if (ok) {
    // f(t) t / |t|^(2+4/N) must not stay positive and bounded away from zero.
    std::vector<double> ratios;
    for (double t = 10.0; t <= 1e6; t *= 10.0) {
      ratios.push_back(model.f(t) * t / std::pow(t, crit));
      ratios.push_back(model.f(-t) * -t / std::pow(t, crit));
    }
    const double tail = std::max(ratios[ratios.size() - 1], ratios[ratios.size() - 2]);
    if (tail > 1e-6) {
      ok = false;
      why = "f(t)t/|t|^(2+4/N) = " + fmt_num(tail) + " > 0 at |t|=1e6";
    }
  }
  r.f2 = {ok ? Verdict3::Sampled : Verdict3::Fail, why};

  bool found = false;
  for (double t = 1e-4; t < 1e4 && !found; t *= 1.05)
    found = model.F(t) > 0.0 || model.F(-t) > 0.0;
  r.f3 = {found ? Verdict3::Sampled : Verdict3::Fail,
          found ? "F > 0 found on sample grid" : "no sample with F > 0"};
  return r;
}

}  // namespace

HypothesisReport check_hypotheses(const NonlinearityModel& model, int N) {
  require(N >= 1, "dimension N must be >= 1");
  if (!model.is_builtin()) return check_custom(model, N);
  check_family_range(model, N);
  return check_builtin(model, N);
}

SmallMassClass classify_small_mass(const NonlinearityModel& model, int N) {
  require(N >= 1, "dimension N must be >= 1");
  const double crit = 2.0 + 4.0 / N;
  if (model.is_builtin()) {
    const auto terms = merged(model.terms());
    if (terms.empty()) return SmallMassClass::A2;
    const PowerTerm low = terms.front();
    return (low.exponent < crit - 1e-12 && low.coeff > 0.0) ? SmallMassClass::A1
                                                            : SmallMassClass::A2;
  }
  const double e0 = model.exponent_at_zero();
  if (same(e0, crit)) return SmallMassClass::Undetermined;
  if (e0 > crit) return SmallMassClass::A2;
  bool pos = true, neg = true;
  for (double t = 1e-2; t >= 1e-6; t /= 10.0) {
    for (double s : {t, -t}) {
      const double v = model.F(s);
      pos = pos && v > 0.0;
      neg = neg && v < 0.0;
    }
  }
  if (pos) return SmallMassClass::A1;
  if (neg) return SmallMassClass::A2;
  return SmallMassClass::Undetermined;
}

std::optional<Zeta> find_zeta(const ShiftedNonlinearity& shifted, int sign,
                              const ZetaOptions& opts) {
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  const double s = sign;
  auto h = [&](double t) { return shifted.G(s * t); };
  auto dh = [&](double t) { return s * shifted.g(s * t); };

  // First sign change of g_mu on the requested side.
  double tg = -1.0;
  for (double t = opts.scan_start; t <= opts.scan_limit; t *= 1.02) {
    if (dh(t) > 0.0) {
      tg = t;
      break;
    }
  }
  if (tg < 0.0) return std::nullopt;

  // G_mu < 0 on (0, tg]; look for its first zero in (tg, 10 tg], refining the
  // scan grid geometrically so that narrow positive windows are not missed.
  const double hi_limit = 10.0 * tg;
  double a = -1.0, b = -1.0;
  for (int n = 1024; n <= 1 << 16 && b < 0.0; n *= 4) {
    const double step = (hi_limit - tg) / n;
    double prev = tg;
    for (int k = 1; k <= n; ++k) {
      const double t = tg + k * step;
      if (h(t) >= 0.0) {
        a = prev;
        b = t;
        break;
      }
      prev = t;
    }
  }
  if (b < 0.0) return std::nullopt;

  while (b - a > opts.tol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (h(mid) >= 0.0)
      b = mid;
    else
      a = mid;
  }
  double t = 0.5 * (a + b);
  // Newton polish: G' = g is nonzero at a transversal root.
  for (int it = 0; it < 3; ++it) {
    const double d = dh(t);
    if (d == 0.0) break;
    const double next = t - h(t) / d;
    if (!(next > a - opts.tol && next < b + opts.tol)) break;
    if (std::abs(h(next)) > std::abs(h(t))) break;
    t = next;
  }
  const double zeta = s * t;
  return Zeta{zeta, shifted.g(zeta)};
}

}  // namespace gsmin
