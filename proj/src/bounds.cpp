#include "thinord/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "thinord/entropy.hpp"
#include "thinord/models.hpp"
#include "thinord/numeric.hpp"
#include "thinord/orderings.hpp"

namespace thinord {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pow2(int e) { return std::ldexp(1.0, e); }

int pos_part(int x) { return x > 0 ? x : 0; }

// E binom(W + m, m) over the retained window.
double expected_binom_shifted(const Pmf& p, int m) {
  KahanSum acc;
  for (long long j = p.min_value(); j <= p.max_value(); ++j) {
    const double w = p.prob(j);
    if (w > 0.0) acc.add(w * binom_coeff(j + m, m));
  }
  return acc.value();
}

// E binom(Z + m, m) for Z ~ Po(lambda), by the convolution identity
// binom(Z + m, m) = sum_i binom(Z, i) binom(m, m - i) and E binom(Z, i) =
// lambda^i / i!.
double poisson_expected_binom_shifted(double lambda, int m) {
  KahanSum acc;
  double pw = 1.0;  // lambda^i / i!
  for (int i = 0; i <= m; ++i) {
    acc.add(binom_coeff(m, m - i) * pw);
    pw *= lambda / static_cast<double>(i + 1);
  }
  return acc.value();
}

// E f(xi) for the mixing law, plus a defect-driven error estimate.
template <typename F>
std::pair<double, double> mixing_expect(const MixingDistribution& mix, double kink,
                                        double tail_eps, F&& f) {
  KahanSum acc;
  KahanSum mass;
  double worst = 0.0;
  const double kinks[] = {kink};
  const std::vector<QuadNode> nodes =
      mix.kind() == MixKind::atoms ? mix.nodes() : mix.nodes(tail_eps, kinks);
  for (const QuadNode& nd : nodes) {
    const double v = f(nd.x);
    acc.add(nd.w * v);
    mass.add(nd.w);
    worst = std::max(worst, std::abs(v));
  }
  const double defect = std::abs(1.0 - mass.value());
  return {acc.value(), defect * (worst + 1.0)};
}

void attach_exact(BoundReport& rep, const MetricValue& mv, bool hypothesis_known,
                  bool hypothesis_ok) {
  rep.exact = mv.value;
  rep.uncertainty += mv.uncertainty;
  if (hypothesis_known) {
    rep.hypothesis_holds = hypothesis_ok;
    if (hypothesis_ok) rep.holds = rep.bound + rep.uncertainty >= mv.value;
  } else {
    rep.holds = rep.bound + rep.uncertainty >= mv.value;
  }
}

// Thinning contracts an iterated tail-sum metric at the advertised rate only
// when the low-order slots of the difference sequence vanish, which needs the
// factorial moments to follow the Poisson recursion (k+1) mu_{k+1} = lambda mu_k
// up to the given order.  Size-biasing makes the pair (W, W* - 1) satisfy this
// exactly when W does relative to its own mean.
bool poisson_moment_recursion(const Pmf& p, double lambda, int order) {
  for (int k = 1; k <= order; ++k) {
    const double lhs = static_cast<double>(k + 1) * p.factorial_moment(k + 1);
    const double rhs = lambda * p.factorial_moment(k);
    if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs))) return false;
  }
  return true;
}

}  // namespace

BoundReport cor_order_bound(const Pmf& p, int s, int k, double tail_eps) {
  if (s < 1) fail(Errc::invalid_parameter, "cor_order_bound: need s >= 1");
  if (k < -1 || k > s + 1) {
    fail(Errc::invalid_parameter, "cor_order_bound: need k in {-1, ..., s+1}");
  }
  const double lambda = p.mean();
  const double scale = pow2(pos_part(s - k - 1));
  const double gap = poisson_expected_binom_shifted(lambda, s + 1) -
                     expected_binom_shifted(p, s + 1);
  BoundReport rep;
  rep.source = s == 1 ? "variance-gap" : "factorial-moment-gap";
  rep.bound = std::max(0.0, scale * gap);
  rep.uncertainty = scale * p.tail_mass() * binom_coeff(p.max_value() + s + 2, s + 1) +
                    1e-14 * (1.0 + rep.bound);

  bool hyp = check_eq_order1(p, s).holds;
  for (int kk = 3; hyp && kk <= s; ++kk) {
    double poisson_fm = 1.0;
    for (int i = 1; i <= kk; ++i) poisson_fm *= lambda / static_cast<double>(i);
    hyp = p.factorial_moment(kk) <= poisson_fm + 1e-10;
  }
  attach_exact(rep, d_np(p, poisson_pmf(lambda, tail_eps), {-k, kInf}), true, hyp);
  return rep;
}

std::vector<BoundReport> thm_pois_bounds(const Pmf& p, int s, double tail_eps) {
  if (s < 0) fail(Errc::invalid_parameter, "thm_pois_bounds: need s >= 0");
  const double lambda = p.mean();
  const Pmf target = poisson_pmf(lambda, tail_eps);
  const Pmf v = v_op(p);
  std::vector<BoundReport> out;

  {
    BoundReport rep;
    rep.source = "thinning-l1";
    const MetricValue inner = d_np(p, v, {1 - s, 1.0});
    rep.bound = std::max(0.0, lambda / (1.0 + s) * inner.value);
    rep.uncertainty = lambda / (1.0 + s) * inner.uncertainty;
    attach_exact(rep, d_np(p, target, {-s, 1.0}), s >= 2,
                 s < 2 || poisson_moment_recursion(p, lambda, s - 1));
    out.push_back(rep);
  }
  if (s >= 1) {
    BoundReport rep;
    rep.source = "thinning-sup";
    const MetricValue inner = d_np(p, v, {1 - s, kInf});
    rep.bound = std::max(0.0, lambda / s * inner.value);
    rep.uncertainty = lambda / s * inner.uncertainty;
    attach_exact(rep, d_np(p, target, {-s, kInf}), s >= 3,
                 s < 3 || poisson_moment_recursion(p, lambda, s - 2));
    out.push_back(rep);
  }
  if (s >= 1) {
    const bool order_hyp = check_eq_order1(p, s).holds;
    KahanSum weighted;
    for (long long j = p.min_value(); j <= p.max_value(); ++j) {
      const double w = p.prob(j);
      if (w > 0.0) weighted.add(w * static_cast<double>(j) * binom_coeff(j + s - 1, s));
    }
    const double gap =
        lambda * expected_binom_shifted(p, s) - weighted.value();
    const double gap_slack =
        p.tail_mass() * (lambda + static_cast<double>(p.max_value()) + 1.0) *
        binom_coeff(p.max_value() + s + 1, s);
    {
      BoundReport rep;
      rep.source = "ordering-gap-l1";
      rep.bound = std::max(0.0, gap / (1.0 + s));
      rep.uncertainty = gap_slack + 1e-14 * (1.0 + rep.bound);
      const bool hyp =
          order_hyp && (s < 2 || poisson_moment_recursion(p, lambda, s - 1));
      attach_exact(rep, d_np(p, target, {-s, 1.0}), true, hyp);
      out.push_back(rep);
    }
    for (int k = 1; k <= s + 1; ++k) {
      BoundReport rep;
      rep.source = "ordering-gap-sup-k" + std::to_string(k);
      rep.bound = std::max(0.0, pow2(pos_part(s - k - 1)) * gap / k);
      rep.uncertainty = gap_slack + 1e-14 * (1.0 + rep.bound);
      const bool hyp =
          order_hyp && (k < 3 || poisson_moment_recursion(p, lambda, k - 2));
      attach_exact(rep, d_np(p, target, {-k, kInf}), true, hyp);
      out.push_back(rep);
    }
  }
  return out;
}

BoundReport dw_var_bound(const Pmf& p, double tail_eps) {
  const double lambda = p.mean();
  if (!(lambda > 0.0)) fail(Errc::zero_mean, "dw_var_bound: zero mean");
  BoundReport rep;
  rep.source = "wasserstein-variance";
  rep.bound = std::min(1.0, 1.15 / std::sqrt(lambda)) *
              std::max(0.0, lambda - p.variance());
  const double mx = static_cast<double>(p.max_value());
  rep.uncertainty = p.tail_mass() * (mx + 2.0) * (mx + 2.0) + 1e-12;
  attach_exact(rep, wasserstein(p, poisson_pmf(lambda, tail_eps)), true,
               check_eq_order1(p, 1).holds);
  return rep;
}

BoundReport concentration_poisson(double lambda, double t, TailSide side,
                                  const Pmf* exact_law) {
  if (!(lambda > 0.0)) {
    fail(Errc::invalid_parameter, "concentration_poisson: need lambda > 0");
  }
  if (!(t > 0.0)) fail(Errc::invalid_t, "concentration_poisson: need t > 0");
  BoundReport rep;
  if (side == TailSide::upper) {
    rep.source = "poisson-tail-upper";
    rep.bound = std::exp(t - (t + lambda) * std::log1p(t / lambda));
  } else {
    if (!(t < lambda)) {
      fail(Errc::invalid_t, "concentration_poisson: lower tail needs t < lambda");
    }
    rep.source = "poisson-tail-lower";
    rep.bound = std::exp(-t + (t - lambda) * std::log1p(-t / lambda));
  }
  if (exact_law != nullptr) {
    const Pmf& w = *exact_law;
    MetricValue mv;
    if (side == TailSide::upper) {
      const long long j0 = static_cast<long long>(std::ceil(lambda + t));
      mv = {w.survival(j0), w.tail_mass()};
    } else {
      const long long j0 = static_cast<long long>(std::floor(lambda - t));
      mv = {w.mass() - w.survival(j0 + 1), 1e-15};
    }
    attach_exact(rep, mv, true, check_eq_order1(w, 1).holds);
  }
  return rep;
}

BoundReport concentration_binomial(long long n, double r, double t, TailSide side,
                                   const Pmf* exact_law) {
  if (n < 1 || !(r > 0.0 && r < 1.0)) {
    fail(Errc::invalid_parameter, "concentration_binomial: need n >= 1, r in (0,1)");
  }
  if (!(t > 0.0)) fail(Errc::invalid_t, "concentration_binomial: need t > 0");
  const double lambda = static_cast<double>(n) * r;
  BoundReport rep;
  if (side == TailSide::upper) {
    rep.source = "binomial-tail-upper";
    const double edge = static_cast<double>(n) - lambda;
    if (t < edge) {
      const double a = (1.0 - r) * (lambda + t) / ((1.0 - r) * lambda - r * t);
      rep.bound = std::exp(-(t + lambda) * std::log(a) +
                           static_cast<double>(n) * std::log(1.0 - r + r * a));
    } else if (t == edge) {
      // Limit of the optimized exponent as the formula's domain closes:
      // exactly the mass binomial puts on the single reachable point n.
      rep.bound = std::exp(static_cast<double>(n) * std::log(r));
    } else {
      // The support ends at n, so the tail event is empty.
      rep.bound = 0.0;
    }
  } else {
    if (!(t < lambda)) {
      fail(Errc::invalid_t, "concentration_binomial: lower tail needs t < lambda");
    }
    rep.source = "binomial-tail-lower";
    const double b = (1.0 - r) * (lambda - t) / ((1.0 - r) * lambda + r * t);
    rep.bound = std::exp((t - lambda) * std::log(b) +
                         static_cast<double>(n) * std::log(1.0 - r + r * b));
  }
  if (exact_law != nullptr) {
    const Pmf& w = *exact_law;
    MetricValue mv;
    if (side == TailSide::upper) {
      const long long j0 = static_cast<long long>(std::ceil(lambda + t));
      mv = {w.survival(j0), w.tail_mass()};
    } else {
      const long long j0 = static_cast<long long>(std::floor(lambda - t));
      mv = {w.mass() - w.survival(j0 + 1), 1e-15};
    }
    const bool hyp = w.max_value() <= n && std::abs(w.mean() - lambda) <= 1e-9 &&
                     is_ulc(w, n);
    attach_exact(rep, mv, true, hyp);
  }
  return rep;
}

BoundReport mp_bound(const MixingDistribution& mix, int n, double tail_eps) {
  const double lambda = mix.mean();
  if (!(lambda > 0.0)) fail(Errc::zero_mean, "mp_bound: mixing mean must be positive");
  if (n >= 1 && mix.kind() == MixKind::atoms) {
    for (const auto& [v, w] : mix.atom_list()) {
      if (w > 0.0 && v <= 0.0) {
        fail(Errc::nonpositive_mixing,
             "mp_bound: strictly positive mixing required for n >= 1");
      }
    }
  }
  const double e = (2.0 - n) / 2.0;
  if (n != 2 && e < 0.0) {
    // xi^e must be integrable at 0; for the parametric mixings this is the
    // explicit moment condition shape + e > 0.
    if (mix.kind() == MixKind::gamma && mix.gamma_shape() + e <= 0.0) {
      fail(Errc::integrability_failure, "mp_bound: fractional moment diverges");
    }
    if (mix.kind() == MixKind::beta && mix.beta_a() + e <= 0.0) {
      fail(Errc::integrability_failure, "mp_bound: fractional moment diverges");
    }
  }

  BoundReport rep;
  rep.source = "mixing-deviation";
  double dev = 0.0;
  double quad_err = 0.0;
  if (n == 2) {
    std::tie(dev, quad_err) = mixing_expect(
        mix, lambda, tail_eps,
        [lambda](double x) { return std::abs(std::log(x / lambda)); });
    rep.bound = dev;
  } else {
    const double le = std::pow(lambda, e);
    std::tie(dev, quad_err) = mixing_expect(
        mix, lambda, tail_eps,
        [e, le](double x) { return std::abs(std::pow(x, e) - le); });
    rep.bound = std::abs(2.0 / (n - 2.0)) * dev;
    quad_err *= std::abs(2.0 / (n - 2.0));
  }
  rep.uncertainty = quad_err + 1e-12 * (1.0 + rep.bound);
  attach_exact(rep,
               d_np(mixed_poisson(mix, tail_eps), poisson_pmf(lambda, tail_eps),
                    {n, 1.0}),
               false, true);
  return rep;
}

BoundReport mp_tv_bound(const MixingDistribution& mix, double eps, double tail_eps) {
  if (!(eps >= 0.0 && eps <= 0.5)) {
    fail(Errc::invalid_parameter, "mp_tv_bound: need eps in [0, 1/2]");
  }
  const double lambda = mix.mean();
  if (!(lambda > 0.0)) fail(Errc::zero_mean, "mp_tv_bound: mixing mean must be positive");
  BoundReport rep;
  rep.source = "mixing-tv";
  const double dev = mixing_mean_abs_dev(mix);
  rep.bound = std::pow(dev, 0.5 + eps) / std::pow(lambda, eps);
  rep.uncertainty = 1e-12 * (1.0 + rep.bound);
  attach_exact(rep,
               total_variation(mixed_poisson(mix, tail_eps),
                               poisson_pmf(lambda, tail_eps)),
               false, true);
  return rep;
}

double negbin_mean_abs_dev(double beta, double q) {
  if (!(beta > 0.0) || !(q > 0.0 && q < 1.0)) {
    fail(Errc::invalid_parameter, "negbin_mean_abs_dev: need beta > 0, q in (0,1)");
  }
  return 2.0 * q / (1.0 - q) *
         std::exp(beta * std::log(beta) - beta - std::lgamma(beta));
}

double mixing_mean_abs_dev(const MixingDistribution& mix) {
  const double lambda = mix.mean();
  return mixing_expect(mix, lambda, 1e-14,
                       [lambda](double x) { return std::abs(x - lambda); })
      .first;
}

std::pair<BoundReport, BoundReport> nb_bounds(double beta, double q,
                                              double tail_eps) {
  if (!(beta > 0.0) || !(q > 0.0 && q < 1.0)) {
    fail(Errc::invalid_parameter, "nb_bounds: need beta > 0, q in (0,1)");
  }
  const double lambda = beta * q / (1.0 - q);
  const MetricValue exact = total_variation(negative_binomial_pmf(beta, q, tail_eps),
                                            poisson_pmf(lambda, tail_eps));
  BoundReport first;
  first.source = "negbin-tv-sqrt";
  first.bound = std::sqrt(q / (1.0 - q)) *
                std::min(std::sqrt(2.0 / std::numbers::pi),
                         std::pow(2.0 * beta / std::numbers::pi, 0.25));
  first.uncertainty = 1e-14;
  attach_exact(first, exact, false, true);

  BoundReport second;
  second.source = "negbin-tv-quadratic";
  const double ratio = q / (1.0 - q);
  second.bound =
      beta * ratio * ratio *
      std::min(3.0 * (1.0 - q) / (4.0 * std::numbers::e * beta * q), 1.0);
  second.uncertainty = 1e-14;
  attach_exact(second, exact, false, true);
  return {first, second};
}

std::pair<BoundReport, BoundReport> polya_bounds(long long N, long long r,
                                                 long long c, long long m) {
  if (!(r > 0 && r < N) || c < 1 || m < 1) {
    fail(Errc::invalid_parameter, "polya_bounds: need 0 < r < N, c >= 1, m >= 1");
  }
  const double Nd = static_cast<double>(N);
  const double rd = static_cast<double>(r);
  const double cd = static_cast<double>(c);
  const double md = static_cast<double>(m);
  const double lambda = md * rd / Nd;
  const double sigma =
      std::sqrt(md * rd * (Nd + cd * md) * (Nd - rd) / (Nd * Nd * (Nd + cd)));
  const MetricValue exact =
      wasserstein(beta_binomial_pmf(m, rd / cd, (Nd - rd) / cd),
                  poisson_pmf(lambda, 1e-15));

  BoundReport first;
  first.source = "polya-coupling";
  first.bound = sigma + (std::sqrt(md * rd * (Nd - rd) * (Nd + cd * md)) +
                         md * std::sqrt(cd * rd * (Nd - rd))) /
                            ((Nd - rd) * std::sqrt(Nd + cd));
  first.uncertainty = 1e-12 * (1.0 + first.bound);
  attach_exact(first, exact, false, true);

  BoundReport second;
  second.source = "polya-mixing";
  second.bound =
      1.15 * std::sqrt(md) * std::pow(rd * (rd + cd) / (Nd * (Nd + cd)), 0.75) +
      md * std::sqrt(cd * rd * (Nd - rd) / (Nd * Nd * (Nd + cd)));
  second.uncertainty = 1e-12 * (1.0 + second.bound);
  attach_exact(second, exact, false, true);
  return {first, second};
}

BoundReport binomial_approx_bound(const Pmf& p, long long n, double r, int k) {
  if (n < 1 || !(r > 0.0 && r < 1.0)) {
    fail(Errc::invalid_parameter, "binomial_approx_bound: need n >= 1, r in (0,1)");
  }
  if (k < -1 || k > 2) {
    fail(Errc::invalid_parameter, "binomial_approx_bound: need k in {-1, 0, 1, 2}");
  }
  if (p.max_value() > n) {
    fail(Errc::hypothesis_failed, "binomial_approx_bound: support exceeds n");
  }
  const double lambda = static_cast<double>(n) * r;
  if (std::abs(p.mean() - lambda) > 1e-9) {
    fail(Errc::mean_mismatch, "binomial_approx_bound: mean must equal n r");
  }
  BoundReport rep;
  rep.source = "binomial-variance-gap";
  rep.bound = pow2(pos_part(-k) - 1) *
              std::max(0.0, lambda * (1.0 - r) - p.variance());
  rep.uncertainty = 1e-13 * (1.0 + rep.bound);
  attach_exact(rep, d_np(p, binomial_pmf(n, r), {-k, kInf}), true, is_ulc(p, n));
  return rep;
}

BoundReport binomial_chain_bound(const Pmf& p, long long n, double r, long long t,
                                 MetricSpec spec) {
  if (t < 0) fail(Errc::invalid_t, "binomial_chain_bound: need t >= 0");
  const double c =
      static_cast<double>(n) * r * (1.0 - r) / (static_cast<double>(n) + 1.0);
  KahanSum acc;
  double inner_unc = 0.0;
  Pmf cur = p;
  for (long long u = 0; u < t; ++u) {
    const MetricValue mv =
        d_np(plus_transform(cur, n, r), size_bias(cur), {spec.n + 1, spec.p});
    acc.add(mv.value);
    inner_unc += mv.uncertainty;
    cur = markov_step(cur, n, r);
  }
  BoundReport rep;
  rep.source = "chain-telescope";
  rep.bound = std::max(0.0, c * acc.value());
  rep.uncertainty = c * inner_unc + 1e-14 * (1.0 + rep.bound);
  attach_exact(rep, d_np(p, cur, spec), false, true);
  return rep;
}

BoundReport lightbulb_entropy_bound(long long n) {
  if (n < 10) {
    fail(Errc::invalid_n, "lightbulb_entropy_bound: need n >= 10");
  }
  const double nd = static_cast<double>(n);
  const double beta = 5.47 * std::sqrt(nd) * std::exp(-(nd + 1.0) / 3.0);
  BoundReport rep;
  rep.source = "lightbulb-entropy";
  rep.bound = poisson_entropy((nd - 1.0) / 2.0) -
              beta * std::log(2.0 * beta / (nd + 2.0));
  rep.uncertainty = 1e-10;
  rep.exact = entropy(lightbulb(n));
  rep.holds = *rep.exact <= rep.bound + rep.uncertainty;
  return rep;
}

double entropy_diff_bound(double beta, long long k) {
  if (!(beta > 0.0 && beta <= 0.5)) {
    fail(Errc::invalid_beta, "entropy_diff_bound: need beta in (0, 1/2]");
  }
  if (k < 1) fail(Errc::invalid_parameter, "entropy_diff_bound: need k >= 1");
  return -beta * std::log(beta / static_cast<double>(k));
}

double poisson_entropy_upper(double lambda) {
  if (!(lambda > 0.0)) {
    fail(Errc::invalid_parameter, "poisson_entropy_upper: need lambda > 0");
  }
  return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e *
                        (lambda + 1.0 / 12.0));
}

}  // namespace thinord
