#include "mlnf/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <stdexcept>

#include "mlnf/errors.hpp"

namespace mlnf {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton iteration from Chebyshev-like initial guesses
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

SphereRule sphere_quadrature(int degree) {
  if (degree < 1) throw std::invalid_argument("sphere_quadrature: degree must be >= 1");
  SphereRule rule;
  rule.degree = degree;
  std::vector<double> x, w;
  gauss_legendre(degree + 1, x, w);
  const int nphi = 2 * degree + 2;
  const double wphi = 2.0 * kPi / nphi;
  rule.nodes.reserve(x.size() * nphi);
  rule.weights.reserve(x.size() * nphi);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double theta = std::acos(std::max(-1.0, std::min(1.0, x[i])));
    for (int j = 0; j < nphi; ++j) {
      rule.nodes.push_back({theta, 2.0 * kPi * j / nphi});
      rule.weights.push_back(w[i] * wphi);
    }
  }
  return rule;
}

namespace {

// Gauss-Kronrod 7/15 nodes on [-1,1] (symmetric; nonnegative half listed)
constexpr double kKronrodX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
  cdouble kronrod;
  double err;
  double resabs;  // integral of |f|, for rounding-floor estimates
};

PanelResult gk15(const std::function<cdouble(double)>& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  cdouble fk[15];
  for (int i = 0; i < 7; ++i) {
    fk[i] = f(c - h * kKronrodX[i]);
    fk[14 - i] = f(c + h * kKronrodX[i]);
  }
  fk[7] = f(c);
  cdouble resk = kKronrodW[7] * fk[7];
  double resabs = kKronrodW[7] * std::abs(fk[7]);
  cdouble resg = kGaussW[3] * fk[7];
  for (int i = 0; i < 7; ++i) {
    resk += kKronrodW[i] * (fk[i] + fk[14 - i]);
    resabs += kKronrodW[i] * (std::abs(fk[i]) + std::abs(fk[14 - i]));
    if (i % 2 == 1) resg += kGaussW[i / 2] * (fk[i] + fk[14 - i]);
  }
  resk *= h;
  resg *= h;
  resabs *= h;
  return {resk, std::abs(resk - resg), resabs};
}

}  // namespace

cdouble integrate_adaptive(const std::function<cdouble(double)>& f, double a,
                           double b, double abs_tol, double rel_tol,
                           const std::vector<double>& breakpoints,
                           double max_panel_width) {
  if (!(b > a)) return 0.0;
  std::vector<std::pair<double, double>> stack;
  std::vector<double> edges{a};
  for (double s : breakpoints)
    if (s > a && s < b) edges.push_back(s);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double lo = edges[i], hi = edges[i + 1];
    int nsub = 1;
    if (max_panel_width > 0.0)
      nsub = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_panel_width)));
    for (int j = 0; j < nsub; ++j)
      stack.emplace_back(lo + (hi - lo) * j / nsub, lo + (hi - lo) * (j + 1) / nsub);
  }

  cdouble total = 0.0;
  cdouble comp = 0.0;  // Kahan compensation
  double err_total = 0.0;
  double running_mag = 0.0;
  int splits = 0;
  const int max_splits = 200000;
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    PanelResult r = gk15(f, lo, hi);
    double tol = std::max(abs_tol, rel_tol * std::max(running_mag, std::abs(r.kronrod)));
    double width_frac = (hi - lo) / (b - a);
    // a panel whose error estimate sits at the rounding floor of its own
    // absolute-value integral cannot be improved by splitting
    const double floor_err =
        64.0 * std::numeric_limits<double>::epsilon() * r.resabs;
    if (r.err > std::max(tol * std::max(width_frac, 1e-6), floor_err) &&
        (hi - lo) > 1e-14 * (b - a) && splits < max_splits) {
      double mid = 0.5 * (lo + hi);
      stack.emplace_back(lo, mid);
      stack.emplace_back(mid, hi);
      ++splits;
      continue;
    }
    cdouble y = r.kronrod - comp;
    cdouble t = total + y;
    comp = (t - total) - y;
    total = t;
    err_total += r.err;
    running_mag = std::max(running_mag, std::abs(total));
  }
  (void)err_total;
  return total;
}

cdouble richardson_extrapolate(const std::vector<double>& x,
                               const std::vector<cdouble>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("richardson_extrapolate: need >= 2 samples");
  // Neville tableau evaluated at 0
  std::vector<cdouble> v = y;
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      v[i] = (x[i] * v[i + 1] - x[i + m] * v[i]) / (x[i] - x[i + m]);
  return v[0];
}

RegularizedIntegral line_integrate_regularized(
    const std::function<cdouble(double)>& f, const std::vector<double>& delta_values,
    double cutoff, const std::vector<double>& breakpoints, double max_panel_width,
    double abs_tol, double rel_tol) {
  if (delta_values.size() < 3)
    throw std::invalid_argument("line_integrate_regularized: need >= 3 deltas");
  for (std::size_t i = 0; i + 1 < delta_values.size(); ++i)
    if (!(delta_values[i] > delta_values[i + 1]) || delta_values[i + 1] <= 0.0)
      throw std::invalid_argument(
          "line_integrate_regularized: deltas must be strictly decreasing and positive");

  RegularizedIntegral out;
  for (double delta : delta_values) {
    auto damped = [&f, delta](double w) { return f(w) * std::exp(-delta * w); };
    out.damped_values.push_back(integrate_adaptive(damped, 0.0, cutoff, abs_tol,
                                                   rel_tol, breakpoints,
                                                   max_panel_width));
  }

  // successive extrapolants over growing prefixes; the returned value is
  // the extrapolant at the stability optimum (smallest change from its
  // predecessor), so deeper-but-noisier table levels are not trusted
  // blindly
  std::vector<cdouble> extr;
  for (std::size_t m = 2; m <= delta_values.size(); ++m) {
    std::vector<double> xs(delta_values.begin(), delta_values.begin() + m);
    std::vector<cdouble> ys(out.damped_values.begin(), out.damped_values.begin() + m);
    extr.push_back(richardson_extrapolate(xs, ys));
  }
  std::vector<double> diffs(extr.size() - 1);
  for (std::size_t i = 0; i + 1 < extr.size(); ++i)
    diffs[i] = std::abs(extr[i + 1] - extr[i]);
  std::size_t best = 0;
  for (std::size_t i = 1; i < diffs.size(); ++i)
    if (diffs[i] < diffs[best]) best = i;
  out.value = extr[best + 1];
  out.error_estimate = diffs[best];

  double scale = std::abs(out.value);
  for (const auto& dv : out.damped_values) scale = std::max(scale, std::abs(dv));
  bool monotone_growth = diffs.size() >= 2;
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
    if (diffs[i + 1] <= diffs[i]) monotone_growth = false;
  if (monotone_growth && out.error_estimate > 0.05 * scale)
    throw ConvergenceError("regularized integral: extrapolation diverging",
                           out.value, out.error_estimate);
  return out;
}

}  // namespace mlnf
