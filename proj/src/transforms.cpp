#include "thinord/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thinord/orderings.hpp"

namespace thinord {

MixingDistribution MixingDistribution::atoms(
    std::vector<std::pair<double, double>> value_weight) {
  if (value_weight.empty()) fail(Errc::invalid_parameter, "mixing needs at least one atom");
  KahanSum wsum;
  for (const auto& [v, w] : value_weight) {
    if (!(v >= 0.0)) fail(Errc::mixing_support_out_of_range, "atom value below 0");
    if (!(w >= 0.0)) fail(Errc::negative_weight, "atom weight below 0");
    wsum.add(w);
  }
  if (std::abs(wsum.value() - 1.0) > 1e-9)
    fail(Errc::not_normalized, "atom weights sum to " + std::to_string(wsum.value()));
  MixingDistribution m;
  m.kind_ = MixKind::atoms;
  m.atoms_ = std::move(value_weight);
  return m;
}

MixingDistribution MixingDistribution::gamma(double shape, double scale, int quadrature_order) {
  if (!(shape > 0.0) || !(scale > 0.0))
    fail(Errc::invalid_parameter, "gamma mixing needs positive shape and scale");
  if (quadrature_order < 16) fail(Errc::invalid_parameter, "quadrature order must be >= 16");
  MixingDistribution m;
  m.kind_ = MixKind::gamma;
  m.a_ = shape;
  m.b_ = scale;
  m.order_ = quadrature_order;
  return m;
}

MixingDistribution MixingDistribution::beta(double a, double b, int quadrature_order) {
  if (!(a > 0.0) || !(b > 0.0))
    fail(Errc::invalid_parameter, "beta mixing needs positive parameters");
  if (quadrature_order < 16) fail(Errc::invalid_parameter, "quadrature order must be >= 16");
  MixingDistribution m;
  m.kind_ = MixKind::beta;
  m.a_ = a;
  m.b_ = b;
  m.order_ = quadrature_order;
  return m;
}

double MixingDistribution::mean() const {
  switch (kind_) {
    case MixKind::atoms: {
      KahanSum acc;
      for (const auto& [v, w] : atoms_) acc.add(v * w);
      return acc.value();
    }
    case MixKind::gamma: return a_ * b_;
    case MixKind::beta: return a_ / (a_ + b_);
  }
  return 0.0;
}

bool MixingDistribution::within_unit_interval() const {
  switch (kind_) {
    case MixKind::atoms:
      return std::all_of(atoms_.begin(), atoms_.end(),
                         [](const auto& vw) { return vw.first <= 1.0; });
    case MixKind::gamma: return false;
    case MixKind::beta: return true;
  }
  return false;
}

namespace {

void require_kind(MixKind have, MixKind want) {
  if (have != want) fail(Errc::invalid_parameter, "mixing parameter of the wrong kind");
}

}  // namespace

double MixingDistribution::gamma_shape() const {
  require_kind(kind_, MixKind::gamma);
  return a_;
}

double MixingDistribution::gamma_scale() const {
  require_kind(kind_, MixKind::gamma);
  return b_;
}

double MixingDistribution::beta_a() const {
  require_kind(kind_, MixKind::beta);
  return a_;
}

double MixingDistribution::beta_b() const {
  require_kind(kind_, MixKind::beta);
  return b_;
}

const std::vector<std::pair<double, double>>& MixingDistribution::atom_list() const {
  require_kind(kind_, MixKind::atoms);
  return atoms_;
}

std::vector<QuadNode> MixingDistribution::nodes(double tail_eps,
                                                std::span<const double> kinks) const {
  switch (kind_) {
    case MixKind::atoms: {
      std::vector<QuadNode> out;
      out.reserve(atoms_.size());
      for (const auto& [v, w] : atoms_) out.push_back({v, w});
      return out;
    }
    case MixKind::gamma: return gamma_quadrature(a_, b_, order_, tail_eps, kinks);
    case MixKind::beta: return beta_quadrature(a_, b_, order_, kinks);
  }
  return {};
}

AlphaPath alpha_path(Pmf base, double alpha, double tail_eps) {
  AlphaPath path;
  path.lambda = base.mean();
  path.base = std::move(base);
  path.alpha = alpha;
  path.tail_eps = tail_eps;
  return path;
}

Pmf size_bias(const Pmf& p) {
  const double lam = p.mean();
  if (!(lam > 0.0)) fail(Errc::zero_mean, "size bias needs a positive mean");
  const long long lo = std::max<long long>(1, p.min_value());
  std::vector<double> w(static_cast<size_t>(p.max_value() - lo) + 1, 0.0);
  for (long long j = lo; j <= p.max_value(); ++j)
    w[static_cast<size_t>(j - lo)] = static_cast<double>(j) * p.prob(j) / lam;
  double tail = p.tail_mass() * (2.0 * static_cast<double>(p.max_value()) + 2.0) / lam;
  tail = std::min(tail, 1.0);
  return Pmf::raw(lo, std::move(w), tail);
}

Pmf thin(const Pmf& p, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    fail(Errc::alpha_out_of_range, "thinning level must lie in [0,1]");
  if (alpha == 1.0) return p;
  if (alpha == 0.0) return point_mass(0);  // every count dies, truncated mass included
  std::vector<double> acc(static_cast<size_t>(p.max_value()) + 1, 0.0);
  for (long long i = p.min_value(); i <= p.max_value(); ++i) {
    const double pi = p.prob(i);
    if (pi == 0.0) continue;
    if (i == 0) {
      acc[0] += pi;
      continue;
    }
    const Pmf row = binomial_pmf(i, alpha);
    for (long long j = row.min_value(); j <= row.max_value(); ++j)
      acc[static_cast<size_t>(j)] += pi * row.prob(j);
  }
  return Pmf::raw(0, std::move(acc), p.tail_mass());
}

Pmf u_alpha(const AlphaPath& path) {
  if (!(path.alpha >= 0.0 && path.alpha <= 1.0))
    fail(Errc::alpha_out_of_range, "alpha must lie in [0,1]");
  if (!(path.tail_eps > 0.0)) fail(Errc::invalid_parameter, "tail_eps must be positive");
  const double drift =
      path.base.tail_mass() * (static_cast<double>(path.base.max_value()) + 2.0);
  if (std::abs(path.lambda - path.base.mean()) > 1e-10 + drift)
    fail(Errc::mean_mismatch, "path lambda disagrees with the base mean");
  if (path.alpha == 1.0) return path.base;
  if (path.alpha == 0.0) return poisson_pmf(path.lambda, path.tail_eps);
  return convolve(thin(path.base, path.alpha),
                  poisson_pmf((1.0 - path.alpha) * path.lambda, path.tail_eps));
}

Pmf v_op(const Pmf& p) { return shift(size_bias(p), -1); }

Pmf hyper_thin(const Pmf& p, long long n) {
  if (n < 1) fail(Errc::invalid_parameter, "thinning degree must be >= 1");
  if (p.max_value() > n)
    fail(Errc::support_exceeds_degree, "support reaches past the thinning degree");
  std::vector<double> w(static_cast<size_t>(n), 0.0);
  const double dn = static_cast<double>(n);
  for (long long i = 0; i < n; ++i)
    w[static_cast<size_t>(i)] =
        (static_cast<double>(n - i) * p.prob(i) + static_cast<double>(i + 1) * p.prob(i + 1)) /
        dn;
  return Pmf::raw(0, std::move(w), p.tail_mass());
}

Pmf plus_transform(const Pmf& p, long long n, double r) {
  if (n < 1) fail(Errc::invalid_parameter, "degree must be >= 1");
  if (!(r > 0.0 && r < 1.0)) fail(Errc::invalid_parameter, "r must lie in (0,1)");
  if (p.max_value() > n)
    fail(Errc::support_exceeds_degree, "support reaches past the degree");
  const double mean = p.mean();
  if (std::abs(mean - static_cast<double>(n) * r) > 1e-9)
    fail(Errc::mean_mismatch,
         "plus transform needs mean n*r = " + std::to_string(static_cast<double>(n) * r) +
             ", got " + std::to_string(mean));
  const double norm = static_cast<double>(n) * (1.0 - r);
  std::vector<double> w(static_cast<size_t>(n), 0.0);
  for (long long j = 1; j <= n; ++j)
    w[static_cast<size_t>(j - 1)] = static_cast<double>(n + 1 - j) * p.prob(j - 1) / norm;
  return Pmf::raw(1, std::move(w), p.tail_mass() / (1.0 - r));
}

Pmf markov_step(const Pmf& p, long long n, double r) {
  if (n < 1) fail(Errc::invalid_parameter, "degree must be >= 1");
  if (!(r > 0.0 && r < 1.0)) fail(Errc::invalid_parameter, "r must lie in (0,1)");
  if (p.max_value() > n)
    fail(Errc::support_exceeds_degree, "support reaches past the degree");
  const double s = 1.0 - r;
  std::vector<double> w(static_cast<size_t>(n) + 1, 0.0);
  for (long long i = 0; i <= n; ++i) {
    const double up = static_cast<double>(n + 1 - i) * (s * p.prob(i) + r * p.prob(i - 1));
    const double down = static_cast<double>(i + 1) * (s * p.prob(i + 1) + r * p.prob(i));
    w[static_cast<size_t>(i)] = (up + down) / static_cast<double>(n + 1);
  }
  return Pmf::raw(0, std::move(w), p.tail_mass());
}

Pmf markov_chain(const Pmf& p, long long n, double r, long long t) {
  if (t < 0) fail(Errc::invalid_t, "step count must be >= 0");
  Pmf cur = p;
  for (long long u = 0; u < t; ++u) cur = markov_step(cur, n, r);
  return cur;
}

namespace {

template <typename MakeComponent>
Pmf mix_nodes(const std::vector<QuadNode>& nodes, MakeComponent&& component) {
  if (nodes.empty()) fail(Errc::invalid_parameter, "empty mixing support");
  std::vector<Pmf> parts;
  parts.reserve(nodes.size());
  KahanSum wsum;
  long long hi = 0;
  for (const auto& nd : nodes) {
    parts.push_back(component(nd.x));
    hi = std::max(hi, parts.back().max_value());
    wsum.add(nd.w);
  }
  std::vector<double> acc(static_cast<size_t>(hi) + 1, 0.0);
  KahanSum tail;
  for (size_t k = 0; k < nodes.size(); ++k) {
    const double wt = nodes[k].w;
    const Pmf& part = parts[k];
    for (long long i = 0; i < part.size(); ++i)
      acc[static_cast<size_t>(part.offset() + i)] +=
          wt * part.weights()[static_cast<size_t>(i)];
    tail.add(wt * part.tail_mass());
  }
  tail.add(std::abs(1.0 - wsum.value()));  // discretization mass defect
  return Pmf::raw(0, std::move(acc), tail.value());
}

}  // namespace

Pmf mixed_poisson(const MixingDistribution& mix, double tail_eps) {
  if (!(tail_eps > 0.0)) fail(Errc::invalid_parameter, "tail_eps must be positive");
  const auto nodes = mix.nodes(tail_eps);
  return mix_nodes(nodes, [&](double lam) { return poisson_pmf(lam, tail_eps); });
}

Pmf mixed_binomial(long long m, const MixingDistribution& mix) {
  if (m < 0) fail(Errc::invalid_parameter, "m must be >= 0");
  if (!mix.within_unit_interval())
    fail(Errc::mixing_support_out_of_range, "mixing must be supported in [0,1]");
  const auto nodes = mix.nodes();
  return mix_nodes(nodes, [&](double x) { return binomial_pmf(m, x); });
}

double lemma1_residual(const AlphaPath& path, double h) {
  if (!(h > 0.0)) fail(Errc::invalid_parameter, "difference step must be positive");
  if (!(path.alpha >= h && path.alpha <= 1.0 - h))
    fail(Errc::alpha_out_of_range, "alpha must lie in [h, 1-h]");
  AlphaPath lo = path;
  lo.alpha = path.alpha - h;
  AlphaPath hi = path;
  hi.alpha = path.alpha + h;
  const Pmf w_lo = u_alpha(lo);
  const Pmf w_mid = u_alpha(path);
  const Pmf w_hi = u_alpha(hi);
  const Pmf star = size_bias(w_mid);
  const long long j_max =
      std::max({w_lo.max_value(), w_hi.max_value(), star.max_value(), w_mid.max_value() + 1}) +
      1;
  double worst = 0.0;
  for (long long j = 0; j <= j_max; ++j) {
    const double lhs = (w_hi.prob(j) - w_lo.prob(j)) / (2.0 * h);
    const double f0 = w_mid.prob(j - 1) - star.prob(j);  // P(W+1 = j) - P(W* = j)
    const double f1 = w_mid.prob(j) - star.prob(j + 1);
    const double rhs = (path.lambda / path.alpha) * (f1 - f0);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double bin_lemma_residual(const Pmf& p, long long n, double r) {
  const Pmf next = markov_step(p, n, r);
  const Pmf plus = plus_transform(p, n, r);
  const Pmf star = size_bias(p);
  const double c = static_cast<double>(n) * r * (1.0 - r) / static_cast<double>(n + 1);
  double worst = 0.0;
  for (long long j = 0; j <= n; ++j) {
    const double lhs = p.prob(j) - next.prob(j);
    const double g0 = plus.prob(j) - star.prob(j);
    const double g1 = plus.prob(j + 1) - star.prob(j + 1);
    const double rhs = c * (g1 - g0);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

OrderingReport check_eq_order1(const Pmf& p, int s, std::optional<double> tolerance) {
  return check_order(size_bias(p), shift(p, 1), Relation::s_cx, s, tolerance);
}

}  // namespace thinord
