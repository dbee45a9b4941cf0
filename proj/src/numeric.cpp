#include "thinord/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thinord {

double kahan_total(std::span<const double> xs) {
  KahanSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

double binom_coeff(long long a, long long b) {
  if (b < 0 || b > a) return 0.0;
  if (b == 0 || b == a) return 1.0;
  if (a - b < b) b = a - b;
  double v = 1.0;
  for (long long i = 1; i <= b; ++i) v *= static_cast<double>(a - b + i) / static_cast<double>(i);
  return v;
}

double log_choose(long long n, long long k) {
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(static_cast<double>(n + 1)) - std::lgamma(static_cast<double>(k + 1)) -
         std::lgamma(static_cast<double>(n - k + 1));
}

double log_poisson_pmf(long long j, double lambda) {
  return -lambda + static_cast<double>(j) * std::log(lambda) - std::lgamma(static_cast<double>(j + 1));
}

std::vector<QuadNode> gauss_legendre(int order) {
  std::vector<QuadNode> out(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    out[i] = {-x, w};
    out[order - 1 - i] = {x, w};
  }
  return out;
}

namespace {

// Appends nodes for one panel [lo, hi] of ∫ f(t) dens(t) dt, where log_dens
// is evaluated pointwise. The weight carries the density value.
void plain_panel(std::vector<QuadNode>& out, const std::vector<QuadNode>& gl, double lo,
                 double hi, const auto& log_dens) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (const auto& n : gl) {
    const double t = mid + half * n.x;
    out.push_back({t, n.w * half * std::exp(log_dens(t))});
  }
}

// Singular panel [0, edge] with density ~ t^{shape-1} * smooth(t). Substituting
// t = edge * u^p with p*shape >= 2 leaves an integrand with a bounded, slowly
// varying u-power, which the plain rule then handles.
void power_panel_left(std::vector<QuadNode>& out, const std::vector<QuadNode>& gl, double edge,
                      double shape, const auto& log_smooth) {
  const int p = std::max(1, static_cast<int>(std::ceil(2.0 / shape)));
  for (const auto& n : gl) {
    const double u = 0.5 * (n.x + 1.0);  // map to (0, 1)
    if (u <= 0.0) continue;
    const double t = edge * std::pow(u, p);
    // weight = gl.w/2 * d t/d u * t^{shape-1} * smooth(t)
    const double log_w = std::log(0.5 * n.w) + std::log(edge * p) + (p - 1.0) * std::log(u) +
                         (shape - 1.0) * (std::log(edge) + p * std::log(u)) + log_smooth(t);
    out.push_back({t, std::exp(log_w)});
  }
}

std::vector<double> graded_edges(double lo_cut, double hi, double width_cap) {
  // Descending edges from hi toward lo_cut: geometric ratio with a width cap.
  std::vector<double> edges{hi};
  double b = hi;
  while (b > lo_cut) {
    double nxt = std::max(b * 0.38, b - width_cap);
    if (nxt <= lo_cut) nxt = lo_cut;
    edges.push_back(nxt);
    b = nxt;
  }
  std::reverse(edges.begin(), edges.end());
  return edges;
}

void insert_breakpoints(std::vector<double>& edges, std::span<const double> brk, double lo,
                        double hi) {
  for (double b : brk) {
    if (b <= lo || b >= hi) continue;
    auto it = std::lower_bound(edges.begin(), edges.end(), b);
    if (it != edges.end() && std::abs(*it - b) < 1e-14 * hi) continue;
    edges.insert(it, b);
  }
}

}  // namespace

std::vector<QuadNode> gamma_quadrature(double shape, double scale, int order, double tail_eps,
                                       std::span<const double> breakpoints) {
  // Chernoff cut: P(X > A) <= (A/(shape*scale))^shape * exp(shape - A/scale).
  double cut = scale * (shape + 10.0 * std::sqrt(shape + 1.0) + 25.0);
  auto tail_bound = [&](double a) {
    return std::exp(shape * std::log(a / (shape * scale)) + shape - a / scale);
  };
  while (tail_bound(cut) > 0.5 * tail_eps) cut *= 1.3;

  const double lgnorm = std::lgamma(shape) + shape * std::log(scale);
  auto log_dens = [&](double t) { return (shape - 1.0) * std::log(t) - t / scale - lgnorm; };
  auto log_smooth = [&](double t) { return -t / scale - lgnorm; };

  const double sing_edge = cut * 1e-12;
  std::vector<double> edges = graded_edges(sing_edge, cut, 3.0 * scale);
  insert_breakpoints(edges, breakpoints, sing_edge, cut);

  const int per_panel = std::max(6, order / 24);
  const auto gl = gauss_legendre(per_panel);
  std::vector<QuadNode> out;
  out.reserve((edges.size() + 1) * gl.size());
  power_panel_left(out, gl, edges.front(), shape, log_smooth);
  for (size_t i = 0; i + 1 < edges.size(); ++i) plain_panel(out, gl, edges[i], edges[i + 1], log_dens);
  return out;
}

std::vector<QuadNode> beta_quadrature(double a, double b, int order,
                                      std::span<const double> breakpoints) {
  const double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  auto log_dens = [&](double t) {
    return (a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t) - lbeta;
  };

  const int per_panel = std::max(6, order / 24);
  const auto gl = gauss_legendre(per_panel);
  std::vector<QuadNode> out;

  // Left half: graded toward 0, singular factor t^{a-1}.
  {
    const double sing_edge = 0.5e-12;
    std::vector<double> edges = graded_edges(sing_edge, 0.5, 1.0);
    insert_breakpoints(edges, breakpoints, sing_edge, 0.5);
    auto log_smooth = [&](double t) { return (b - 1.0) * std::log1p(-t) - lbeta; };
    power_panel_left(out, gl, edges.front(), a, log_smooth);
    for (size_t i = 0; i + 1 < edges.size(); ++i) plain_panel(out, gl, edges[i], edges[i + 1], log_dens);
  }

  // Right half: mirror u = 1 - t, singular factor (1-t)^{b-1}.
  {
    std::vector<double> mirrored;
    for (double x : breakpoints) mirrored.push_back(1.0 - x);
    const double sing_edge = 0.5e-12;
    std::vector<double> edges = graded_edges(sing_edge, 0.5, 1.0);
    insert_breakpoints(edges, mirrored, sing_edge, 0.5);
    auto log_smooth = [&](double u) { return (a - 1.0) * std::log1p(-u) - lbeta; };
    std::vector<QuadNode> right;
    power_panel_left(right, gl, edges.front(), b, log_smooth);
    auto log_dens_m = [&](double u) {
      return (b - 1.0) * std::log(u) + (a - 1.0) * std::log1p(-u) - lbeta;
    };
    for (size_t i = 0; i + 1 < edges.size(); ++i) plain_panel(right, gl, edges[i], edges[i + 1], log_dens_m);
    for (auto& n : right) out.push_back({1.0 - n.x, n.w});
  }
  return out;
}

}  // namespace thinord
