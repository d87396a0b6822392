#include "gsmin/radial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <numbers>
#include <sstream>

#include "gsmin/error.hpp"

namespace gsmin {

double sphere_measure(int N) {
  require(N >= 1, "dimension must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

RadialGrid::RadialGrid(int N, double R, int M) : N_(N), R_(R), M_(M) {
  require(N >= 1, "grid dimension must be >= 1");
  require(std::isfinite(R) && R > 0.0, "grid radius must be positive");
  require(M >= 16, "grid needs at least 16 intervals");
  h_ = R / M;
  omega_ = sphere_measure(N);
  std::vector<double> w(M + 1);
  for (int i = 0; i <= M; ++i) {
    const double r = i * h_;
    w[i] = omega_ * (N == 1 ? 1.0 : std::pow(r, N - 1)) * h_;
  }
  w[0] *= 0.5;
  w[M] *= 0.5;
  std::vector<double> a(M);
  for (int i = 0; i < M; ++i) {
    const double rm = (i + 0.5) * h_;
    a[i] = omega_ * (N == 1 ? 1.0 : std::pow(rm, N - 1)) / h_;
  }
  weights_ = std::make_shared<const std::vector<double>>(std::move(w));
  stiffness_ = std::make_shared<const std::vector<double>>(std::move(a));
}

RadialProfile::RadialProfile(RadialGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require(static_cast<int>(values_.size()) == grid_.nodes(),
          "profile size does not match the grid");
  for (double v : values_)
    if (!std::isfinite(v)) fail(ErrorCode::Numerical, "profile contains non-finite values");
  values_.back() = 0.0;
}

RadialProfile RadialProfile::zero(const RadialGrid& grid) {
  return RadialProfile(grid, std::vector<double>(grid.nodes(), 0.0));
}

RadialProfile RadialProfile::sample(const RadialGrid& grid,
                                    const std::function<double(double)>& fn) {
  std::vector<double> v(grid.nodes());
  for (int i = 0; i < grid.nodes(); ++i) v[i] = fn(grid.r(i));
  return RadialProfile(grid, std::move(v));
}

double RadialProfile::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double RadialProfile::at(double r) const {
  r = std::abs(r);
  if (r >= grid_.radius()) return 0.0;
  const double x = r / grid_.h();
  const int i = std::min(static_cast<int>(x), grid_.intervals() - 1);
  const double frac = x - i;
  return (1.0 - frac) * values_[i] + frac * values_[i + 1];
}

RadialProfile RadialProfile::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return RadialProfile(grid_, std::move(v));
}

double mass(const RadialProfile& u) {
  const auto w = u.grid().weights();
  double s = 0.0;
  for (int i = 0; i < u.size(); ++i) s += w[i] * u[i] * u[i];
  return s;
}

double grad_norm_sq(const RadialProfile& u) {
  const auto a = u.grid().stiffness();
  double s = 0.0;
  for (int i = 0; i + 1 < u.size(); ++i) {
    const double d = u[i + 1] - u[i];
    s += a[i] * d * d;
  }
  return s;
}

double integrate(const RadialProfile& u, const std::function<double(double)>& phi) {
  const auto w = u.grid().weights();
  double s = 0.0;
  for (int i = 0; i < u.size(); ++i) s += w[i] * phi(u[i]);
  return s;
}

double l2_distance(const RadialProfile& a, const RadialProfile& b) {
  require(a.grid() == b.grid(), "profiles live on different grids");
  const auto w = a.grid().weights();
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += w[i] * d * d;
  }
  return std::sqrt(s);
}

RadialProfile l2_scaling(double s, const RadialProfile& u) {
  const int N = u.grid().dim();
  const double amp = std::exp(0.5 * N * s);
  const double stretch = std::exp(s);
  return RadialProfile::sample(u.grid(), [&](double r) { return amp * u.at(stretch * r); });
}

RadialProfile dilate(double t, const RadialProfile& u) {
  require(std::isfinite(t) && t > 0.0, "dilation factor must be positive");
  return RadialProfile::sample(u.grid(), [&](double r) { return u.at(r / t); });
}

RadialProfile schwarz_rearrange(const RadialProfile& u) {
  const int n = u.size();
  for (int i = 0; i < n; ++i)
    require(u[i] >= 0.0, "rearrangement needs a nonnegative profile (negative value at node " +
                             std::to_string(i) + ")");

  bool monotone = true;
  for (int i = 0; i + 1 < n && monotone; ++i) monotone = u[i + 1] <= u[i];
  if (monotone) return u;

  const auto w = u.grid().weights();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return u[a] > u[b]; });

  std::vector<std::pair<double, double>> pieces;  // (measure, value), descending
  for (int i : order)
    if (w[i] > 0.0) pieces.emplace_back(w[i], u[i]);
  int last_cell = n - 1;
  while (last_cell > 0 && w[last_cell] == 0.0) --last_cell;

  std::vector<double> out(n, 0.0);
  std::size_t k = 0;
  double left = pieces.empty() ? 0.0 : pieces[0].first;
  for (int j = 0; j < n; ++j) {
    if (w[j] == 0.0) {
      out[j] = j == 0 ? u[order.front()] : out[j - 1];
      continue;
    }
    double need = w[j];
    double acc = 0.0;
    while (need > 0.0 && k < pieces.size()) {
      const double take = std::min(need, left);
      acc += take * pieces[k].second * pieces[k].second;
      need -= take;
      left -= take;
      if (left <= 0.0 && ++k < pieces.size()) left = pieces[k].first;
    }
    if (j == last_cell) {
      for (; k < pieces.size(); ++k) {
        acc += left * pieces[k].second * pieces[k].second;
        if (k + 1 < pieces.size()) left = pieces[k + 1].first;
      }
    }
    out[j] = std::sqrt(acc / w[j]);
  }
  for (int j = 1; j < n; ++j) out[j] = std::min(out[j], out[j - 1]);
  return RadialProfile(u.grid(), std::move(out));
}

void write_profile_csv(const RadialProfile& u, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::Io, "cannot write profile file '" + path + "'");
  os.precision(17);
  os << "r,u\n";
  for (int i = 0; i < u.size(); ++i) os << u.grid().r(i) << ',' << u[i] << '\n';
  if (!os) fail(ErrorCode::Io, "write failed for '" + path + "'");
}

RadialProfile read_profile_csv(const std::string& path, const RadialGrid& grid) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::Io, "cannot read profile file '" + path + "'");
  std::string line;
  std::getline(is, line);
  require(line.rfind("r,u", 0) == 0, "profile file '" + path + "' lacks the 'r,u' header");
  std::vector<double> rs, us;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double r, v;
    char comma;
    if (!(ls >> r >> comma >> v) || comma != ',')
      fail(ErrorCode::InvalidArgument, "malformed profile row '" + line + "' in " + path);
    require(rs.empty() || r > rs.back(), "profile radii must be increasing in " + path);
    rs.push_back(r);
    us.push_back(v);
  }
  require(rs.size() >= 2, "profile file '" + path + "' has fewer than two rows");
  return RadialProfile::sample(grid, [&](double r) {
    if (r <= rs.front()) return us.front();
    if (r >= rs.back()) return 0.0;
    const auto it = std::upper_bound(rs.begin(), rs.end(), r);
    const std::size_t k = static_cast<std::size_t>(it - rs.begin());
    const double f = (r - rs[k - 1]) / (rs[k] - rs[k - 1]);
    return (1.0 - f) * us[k - 1] + f * us[k];
  });
}

}  // namespace gsmin
