#include "thinord/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "thinord/bounds.hpp"
#include "thinord/entropy.hpp"
#include "thinord/io.hpp"
#include "thinord/metrics.hpp"
#include "thinord/models.hpp"
#include "thinord/orderings.hpp"
#include "thinord/transforms.hpp"

namespace thinord {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void usage_error(const std::string& what) {
  fail(Errc::invalid_parameter, what);
}

double to_real(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    usage_error("not a number: " + s);
  }
}

long long to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    usage_error("not an integer: " + s);
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  if (!s.empty() && s.back() == ',') out.push_back("");
  return out;
}

std::vector<double> real_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& part : split_commas(s)) out.push_back(to_real(part));
  return out;
}

std::vector<long long> int_list(const std::string& s) {
  std::vector<long long> out;
  for (const std::string& part : split_commas(s)) out.push_back(to_int(part));
  return out;
}

Pmf pmf_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage_error("cannot open " + path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    return pmf_from_csv(in);
  }
  nlohmann::json j;
  in >> j;
  return pmf_from_json(j);
}

JointIndicatorTable table_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return joint_table_from_json(j);
}

// Distribution mini-language: name:arg,arg,... File-backed entries take the
// remainder of the spec verbatim so paths may contain commas.
Pmf parse_dist(const std::string& spec, double tail_eps) {
  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  if (name == "file") return pmf_from_file(rest);
  if (name == "table") return indicator_sum(table_from_file(rest));
  const std::vector<std::string> args =
      rest.empty() ? std::vector<std::string>() : split_commas(rest);
  auto want = [&](std::size_t k) {
    if (args.size() != k) {
      usage_error(name + " takes " + std::to_string(k) + " arguments");
    }
  };
  if (name == "poisson") {
    want(1);
    return poisson_pmf(to_real(args[0]), tail_eps);
  }
  if (name == "binomial") {
    want(2);
    return binomial_pmf(to_int(args[0]), to_real(args[1]));
  }
  if (name == "bernoulli") {
    want(1);
    return bernoulli_pmf(to_real(args[0]));
  }
  if (name == "point") {
    want(1);
    return point_mass(to_int(args[0]));
  }
  if (name == "hypergeom") {
    want(3);
    return hypergeometric_pmf(to_int(args[0]), to_int(args[1]), to_int(args[2]));
  }
  if (name == "negbin") {
    want(2);
    return negative_binomial_pmf(to_real(args[0]), to_real(args[1]), tail_eps);
  }
  if (name == "betabin") {
    want(3);
    return beta_binomial_pmf(to_int(args[0]), to_real(args[1]), to_real(args[2]));
  }
  if (name == "clubbed") {
    want(2);
    if (args[1] != "even" && args[1] != "odd") {
      usage_error("clubbed parity must be even or odd");
    }
    return clubbed_binomial_pmf(to_int(args[0]),
                                args[1] == "even" ? Parity::even : Parity::odd);
  }
  if (name == "occupancy") {
    want(3);
    return occupancy_model(to_int(args[0]), to_int(args[1]), to_int(args[2]));
  }
  if (name == "polya-unseen") {
    want(2);
    return polya_unseen(to_int(args[0]), to_int(args[1]));
  }
  if (name == "matrix-occupancy") {
    if (args.size() < 3) usage_error("matrix-occupancy:n,threshold,s1[,s2,...]");
    std::vector<long long> s;
    for (std::size_t i = 2; i < args.size(); ++i) s.push_back(to_int(args[i]));
    return matrix_occupancy(static_cast<long long>(s.size()), to_int(args[0]), s,
                            to_int(args[1]));
  }
  if (name == "permutation") {
    if (args.empty()) usage_error("permutation:a1[,a2,...]");
    std::vector<long long> a;
    for (const std::string& part : args) a.push_back(to_int(part));
    return permutation_threshold(a);
  }
  if (name == "lightbulb") {
    want(1);
    return lightbulb(to_int(args[0]));
  }
  usage_error("unknown distribution: " + spec);
}

// Mixing mini-language: atoms:v1,w1[,v2,w2,...], gamma:shape,scale, beta:a,b.
MixingDistribution parse_mix(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::vector<std::string> args =
      colon == std::string::npos ? std::vector<std::string>()
                                 : split_commas(spec.substr(colon + 1));
  if (name == "atoms") {
    if (args.empty() || args.size() % 2 != 0) {
      usage_error("atoms:v1,w1[,v2,w2,...]");
    }
    std::vector<std::pair<double, double>> vw;
    for (std::size_t i = 0; i < args.size(); i += 2) {
      vw.emplace_back(to_real(args[i]), to_real(args[i + 1]));
    }
    return MixingDistribution::atoms(std::move(vw));
  }
  if (name == "gamma") {
    if (args.size() != 2) usage_error("gamma:shape,scale");
    return MixingDistribution::gamma(to_real(args[0]), to_real(args[1]));
  }
  if (name == "beta") {
    if (args.size() != 2) usage_error("beta:a,b");
    return MixingDistribution::beta(to_real(args[0]), to_real(args[1]));
  }
  usage_error("unknown mixing: " + spec);
}

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "sup") return kInf;
  return to_real(s);
}

Relation parse_relation(const std::string& s) {
  if (s == "st") return Relation::st;
  if (s == "icx") return Relation::icx;
  if (s == "cx") return Relation::cx;
  if (s == "s-cx" || s == "scx") return Relation::s_cx;
  if (s == "tnd") return Relation::tnd;
  if (s == "nr") return Relation::nr;
  usage_error("unknown relation: " + s);
}

// "a..b" inclusive integer range, or a plain comma list.
std::vector<long long> parse_range(const std::string& s) {
  const std::size_t dots = s.find("..");
  if (dots == std::string::npos) return int_list(s);
  const long long lo = to_int(s.substr(0, dots));
  const long long hi = to_int(s.substr(dots + 2));
  if (hi < lo) usage_error("empty range: " + s);
  std::vector<long long> out;
  for (long long v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

void emit(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

struct ReportRow {
  std::string parameters;
  BoundReport rep;
};

nlohmann::json rows_to_json(const std::vector<ReportRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ReportRow& row : rows) {
    nlohmann::json j = bound_report_to_json(row.rep);
    j["parameters"] = row.parameters;
    j["slack"] = row.rep.exact
                     ? nlohmann::json(row.rep.bound + row.rep.uncertainty - *row.rep.exact)
                     : nlohmann::json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "parameters,source,bound,exact,slack,holds\n";
  for (const ReportRow& row : rows) {
    out << '"' << row.parameters << "\"," << row.rep.source << ',' << row.rep.bound
        << ',';
    if (row.rep.exact) out << *row.rep.exact;
    out << ',';
    if (row.rep.exact) out << (row.rep.bound + row.rep.uncertainty - *row.rep.exact);
    out << ',';
    if (row.rep.holds) out << (*row.rep.holds ? "true" : "false");
    out << '\n';
  }
  return out.str();
}

int rows_exit_code(const std::vector<ReportRow>& rows) {
  for (const ReportRow& row : rows) {
    if (row.rep.holds && !*row.rep.holds) return 1;
  }
  return 0;
}

std::vector<ReportRow> suite_hypergeom_gap(double tail_eps) {
  std::vector<ReportRow> rows;
  const long long grid[][3] = {{4, 2, 2}, {10, 3, 4}, {20, 5, 8}, {30, 6, 10}};
  for (const auto& g : grid) {
    const Pmf p = hypergeometric_pmf(g[0], g[1], g[2]);
    for (int k = -1; k <= 2; ++k) {
      std::ostringstream ps;
      ps << "N=" << g[0] << ",n=" << g[1] << ",m=" << g[2] << ",k=" << k;
      rows.push_back({ps.str(), cor_order_bound(p, 1, k, tail_eps)});
    }
  }
  return rows;
}

std::vector<ReportRow> suite_hypergeom_refined(double tail_eps) {
  std::vector<ReportRow> rows;
  const long long grid[][3] = {{4, 2, 2}, {10, 3, 4}, {20, 5, 8}, {30, 6, 10}};
  for (const auto& g : grid) {
    const Pmf p = hypergeometric_pmf(g[0], g[1], g[2]);
    const std::vector<BoundReport> all = thm_pois_bounds(p, 1, tail_eps);
    for (const BoundReport& rep : all) {
      if (rep.source == "thinning-l1" || rep.source == "thinning-sup") continue;
      std::ostringstream ps;
      ps << "N=" << g[0] << ",n=" << g[1] << ",m=" << g[2];
      rows.push_back({ps.str(), rep});
    }
  }
  return rows;
}

std::vector<ReportRow> suite_polya(bool mixing_route) {
  std::vector<ReportRow> rows;
  const long long grid[][4] = {
      {10, 2, 1, 5}, {20, 5, 2, 10}, {30, 6, 1, 15}, {40, 8, 3, 20}};
  for (const auto& g : grid) {
    const auto [coupling, mixing] = polya_bounds(g[0], g[1], g[2], g[3]);
    std::ostringstream ps;
    ps << "N=" << g[0] << ",r=" << g[1] << ",c=" << g[2] << ",m=" << g[3];
    rows.push_back({ps.str(), mixing_route ? mixing : coupling});
  }
  return rows;
}

std::vector<ReportRow> suite_negbin(double tail_eps) {
  std::vector<ReportRow> rows;
  for (double beta : {0.5, 1.0, 3.0}) {
    for (double q : {0.05, 0.1, 0.3}) {
      const auto [first, second] = nb_bounds(beta, q, tail_eps);
      std::ostringstream ps;
      ps << "beta=" << beta << ",q=" << q;
      rows.push_back({ps.str(), first});
      rows.push_back({ps.str(), second});
    }
  }
  return rows;
}

std::vector<ReportRow> suite_lightbulb(const std::vector<long long>& ns) {
  std::vector<ReportRow> rows;
  for (long long n : ns) {
    rows.push_back({"n=" + std::to_string(n), lightbulb_entropy_bound(n)});
  }
  return rows;
}

std::vector<ReportRow> suite_binomial_chain() {
  std::vector<ReportRow> rows;
  const Pmf hyper = hypergeometric_pmf(4, 2, 2);
  for (long long t : {1, 2, 3, 5, 10}) {
    rows.push_back({"dist=hypergeom:4,2,2,n=2,r=0.5,t=" + std::to_string(t),
                    binomial_chain_bound(hyper, 2, 0.5, t, {1, 1.0})});
  }
  const Pmf fixed = binomial_pmf(5, 0.3);
  rows.push_back({"dist=binomial:5,0.3,n=5,r=0.3,t=3",
                  binomial_chain_bound(fixed, 5, 0.3, 3, {1, 1.0})});
  return rows;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"negative dependence toolkit"};
  app.require_subcommand(1);

  double tail_eps = 1e-12;
  std::optional<double> tol;
  unsigned long long seed = 20240813ULL;
  std::string format;
  app.add_option("--tail-eps", tail_eps, "upper-tail mass cut for countable laws");
  app.add_option("--tol", tol, "tolerance override for checks");
  app.add_option("--seed", seed, "seed for randomized modes");
  app.add_option("--format", format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string dist_spec, target_spec, table_path, op, relation_name_flag, mode;
  std::string mix_spec, x_spec, bound_name, side_name, kind_name, p_flag;
  std::string alphas_flag, steps_flag, suite, n_range_flag, lemma_flag;
  double alpha = 0.5, r = 0.5, t_real = 1.0, eps = 0.0, beta_param = 1.0;
  double q_param = 0.1, lambda_flag = 0.0, h_step = 1e-4;
  long long n_param = 1, k_param = 0, c_param = 1, m_param = 1, N_param = 2;
  long long t_steps = 1, trials = 200, s_order = 1, metric_n = 0;
  long long shift_c = 0;

  CLI::App* cmd_dist = app.add_subcommand("dist", "materialize a distribution");
  cmd_dist->add_option("--dist", dist_spec)->required();

  CLI::App* cmd_tr = app.add_subcommand("transform", "apply an operator");
  cmd_tr->add_option("--dist", dist_spec)->required();
  cmd_tr->add_option("--op", op)->required();
  cmd_tr->add_option("--alpha", alpha);
  cmd_tr->add_option("--n", n_param);
  cmd_tr->add_option("--r", r);
  cmd_tr->add_option("--t", t_steps);
  cmd_tr->add_option("--c", shift_c);
  cmd_tr->add_option("--x", x_spec);

  CLI::App* cmd_oc = app.add_subcommand("order-check", "verify a stochastic order");
  cmd_oc->add_option("--dist", dist_spec);
  cmd_oc->add_option("--target", target_spec);
  cmd_oc->add_option("--table", table_path);
  cmd_oc->add_option("--relation", relation_name_flag);
  cmd_oc->add_option("--s", s_order);
  cmd_oc->add_option("--mode", mode)->check(CLI::IsMember({"exact", "randomized"}));
  cmd_oc->add_option("--trials", trials);

  CLI::App* cmd_metric = app.add_subcommand("metric", "evaluate a distance");
  cmd_metric->add_option("--dist", dist_spec)->required();
  cmd_metric->add_option("--target", target_spec)->required();
  cmd_metric->add_option("--n", metric_n);
  cmd_metric->add_option("--p", p_flag);
  cmd_metric->add_option("--name", bound_name);

  CLI::App* cmd_bound = app.add_subcommand("bound", "evaluate a bound");
  cmd_bound->add_option("--name", bound_name)->required();
  cmd_bound->add_option("--dist", dist_spec);
  cmd_bound->add_option("--s", s_order);
  cmd_bound->add_option("--k", k_param);
  cmd_bound->add_option("--kind", kind_name)
      ->check(CLI::IsMember({"poisson", "binomial"}));
  cmd_bound->add_option("--lambda", lambda_flag);
  cmd_bound->add_option("--n", n_param);
  cmd_bound->add_option("--r", r);
  cmd_bound->add_option("--t", t_real);
  cmd_bound->add_option("--side", side_name)
      ->check(CLI::IsMember({"upper", "lower"}));
  cmd_bound->add_option("--mix", mix_spec);
  cmd_bound->add_option("--eps", eps);
  cmd_bound->add_option("--beta", beta_param);
  cmd_bound->add_option("--q", q_param);
  cmd_bound->add_option("--N", N_param);
  cmd_bound->add_option("--c", c_param);
  cmd_bound->add_option("--m", m_param);
  cmd_bound->add_option("--steps", t_steps);
  cmd_bound->add_option("--metric-n", metric_n);
  cmd_bound->add_option("--metric-p", p_flag);
  cmd_bound->add_option("--x", x_spec);

  CLI::App* cmd_flow = app.add_subcommand("entropy-flow", "entropy along a flow");
  cmd_flow->add_option("--dist", dist_spec)->required();
  cmd_flow->add_option("--alphas", alphas_flag);
  bool chain_mode = false;
  cmd_flow->add_flag("--chain", chain_mode);
  cmd_flow->add_option("--n", n_param);
  cmd_flow->add_option("--r", r);
  cmd_flow->add_option("--steps", steps_flag);

  CLI::App* cmd_verify = app.add_subcommand("verify", "check a closure identity");
  cmd_verify->add_option("--lemma", lemma_flag)->required();
  cmd_verify->add_option("--dist", dist_spec)->required();
  cmd_verify->add_option("--alpha", alpha);
  cmd_verify->add_option("--step", h_step);
  cmd_verify->add_option("--n", n_param);
  cmd_verify->add_option("--r", r);

  CLI::App* cmd_report = app.add_subcommand("report", "canned replication suites");
  cmd_report->add_option("--suite", suite)->required();
  cmd_report->add_option("--n", n_range_flag);

  // global options remain usable after the subcommand name
  for (CLI::App* sub : {cmd_dist, cmd_tr, cmd_oc, cmd_metric, cmd_bound, cmd_flow,
                        cmd_verify, cmd_report}) {
    sub->fallthrough();
  }

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (format == "csv" && !(*cmd_dist || *cmd_tr || *cmd_flow || *cmd_report)) {
      usage_error("csv output is only available for dist, transform, entropy-flow, report");
    }

    if (*cmd_dist) {
      const Pmf p = parse_dist(dist_spec, tail_eps);
      if (format == "csv") out << pmf_to_csv(p);
      else emit(out, pmf_to_json(p));
      return 0;
    }

    if (*cmd_tr) {
      const Pmf p = parse_dist(dist_spec, tail_eps);
      Pmf result = p;
      if (op == "thin") result = thin(p, alpha);
      else if (op == "size-bias") result = size_bias(p);
      else if (op == "u-alpha") result = u_alpha(alpha_path(p, alpha, tail_eps));
      else if (op == "v") result = v_op(p);
      else if (op == "hyper-thin") result = hyper_thin(p, n_param);
      else if (op == "plus") result = plus_transform(p, n_param, r);
      else if (op == "markov-step") result = markov_step(p, n_param, r);
      else if (op == "markov-chain") result = markov_chain(p, n_param, r, t_steps);
      else if (op == "shift") result = shift(p, shift_c);
      else if (op == "compound") {
        if (x_spec.empty()) usage_error("compound needs --x");
        result = compound(p, parse_dist(x_spec, tail_eps), tail_eps);
      } else usage_error("unknown op: " + op);
      if (format == "csv") out << pmf_to_csv(result);
      else emit(out, pmf_to_json(result));
      return 0;
    }

    if (*cmd_oc) {
      OrderingReport rep;
      const Relation rel = relation_name_flag.empty()
                               ? Relation::s_cx
                               : parse_relation(relation_name_flag);
      if (rel == Relation::tnd || rel == Relation::nr) {
        if (table_path.empty()) usage_error("tnd/nr checks need --table");
        const JointIndicatorTable table = table_from_file(table_path);
        if (rel == Relation::tnd) {
          rep = tnd_check(table, tol.value_or(1e-12));
        } else if (mode == "randomized") {
          rep = nr_check_randomized(table, trials, seed, tol.value_or(1e-12));
        } else {
          rep = nr_check_exact(table, tol.value_or(1e-12));
        }
      } else {
        if (dist_spec.empty()) usage_error("order-check needs --dist");
        const Pmf p = parse_dist(dist_spec, tail_eps);
        if (target_spec.empty()) {
          rep = check_eq_order1(p, static_cast<int>(s_order), tol);
        } else {
          const Pmf q = target_spec == "poisson"
                            ? poisson_pmf(p.mean(), tail_eps)
                            : parse_dist(target_spec, tail_eps);
          rep = check_order(p, q, rel, static_cast<int>(s_order), tol);
        }
      }
      emit(out, ordering_report_to_json(rep));
      return rep.holds ? 0 : 1;
    }

    if (*cmd_metric) {
      const Pmf p = parse_dist(dist_spec, tail_eps);
      const Pmf q = target_spec == "poisson" ? poisson_pmf(p.mean(), tail_eps)
                                             : parse_dist(target_spec, tail_eps);
      MetricValue v;
      if (!bound_name.empty()) {
        if (bound_name == "tv") v = total_variation(p, q);
        else if (bound_name == "kolmogorov") v = kolmogorov(p, q);
        else if (bound_name == "wasserstein") v = wasserstein(p, q);
        else if (bound_name == "stop-loss") v = stop_loss(p, q);
        else if (bound_name == "local-limit") v = local_limit(p, q);
        else usage_error("unknown metric name: " + bound_name);
      } else {
        v = d_np(p, q, {static_cast<int>(metric_n),
                        p_flag.empty() ? 1.0 : parse_p(p_flag)});
      }
      emit(out, metric_value_to_json(v));
      return 0;
    }

    if (*cmd_bound) {
      std::vector<BoundReport> reps;
      if (bound_name == "variance-gap" || bound_name == "factorial-moment-gap" ||
          bound_name == "hyp1") {
        if (dist_spec.empty()) usage_error("this bound needs --dist");
        reps.push_back(cor_order_bound(parse_dist(dist_spec, tail_eps),
                                       static_cast<int>(s_order),
                                       static_cast<int>(k_param), tail_eps));
      } else if (bound_name == "poisson-approx") {
        if (dist_spec.empty()) usage_error("this bound needs --dist");
        reps = thm_pois_bounds(parse_dist(dist_spec, tail_eps),
                               static_cast<int>(s_order), tail_eps);
      } else if (bound_name == "wasserstein-variance") {
        if (dist_spec.empty()) usage_error("this bound needs --dist");
        reps.push_back(dw_var_bound(parse_dist(dist_spec, tail_eps), tail_eps));
      } else if (bound_name == "concentration") {
        if (side_name.empty()) usage_error("concentration needs --side");
        const TailSide side =
            side_name == "upper" ? TailSide::upper : TailSide::lower;
        std::optional<Pmf> law;
        if (!dist_spec.empty()) law = parse_dist(dist_spec, tail_eps);
        if (kind_name == "binomial") {
          reps.push_back(concentration_binomial(n_param, r, t_real, side,
                                                law ? &*law : nullptr));
        } else {
          const double lam =
              lambda_flag > 0.0 ? lambda_flag : (law ? law->mean() : 0.0);
          reps.push_back(
              concentration_poisson(lam, t_real, side, law ? &*law : nullptr));
        }
      } else if (bound_name == "mixing-deviation") {
        if (mix_spec.empty()) usage_error("this bound needs --mix");
        reps.push_back(mp_bound(parse_mix(mix_spec), static_cast<int>(metric_n),
                                tail_eps));
      } else if (bound_name == "mixing-tv") {
        if (mix_spec.empty()) usage_error("this bound needs --mix");
        reps.push_back(mp_tv_bound(parse_mix(mix_spec), eps, tail_eps));
      } else if (bound_name == "negbin") {
        const auto [first, second] = nb_bounds(beta_param, q_param, tail_eps);
        reps.push_back(first);
        reps.push_back(second);
      } else if (bound_name == "polya") {
        const auto [first, second] =
            polya_bounds(N_param, n_param, c_param, m_param);
        reps.push_back(first);
        reps.push_back(second);
      } else if (bound_name == "binomial-approx") {
        if (dist_spec.empty()) usage_error("this bound needs --dist");
        reps.push_back(binomial_approx_bound(parse_dist(dist_spec, tail_eps),
                                             n_param, r,
                                             static_cast<int>(k_param)));
      } else if (bound_name == "chain-telescope" || bound_name == "chain") {
        if (dist_spec.empty()) usage_error("this bound needs --dist");
        reps.push_back(binomial_chain_bound(
            parse_dist(dist_spec, tail_eps), n_param, r, t_steps,
            {static_cast<int>(metric_n), p_flag.empty() ? 1.0 : parse_p(p_flag)}));
      } else if (bound_name == "lightbulb-entropy") {
        reps.push_back(lightbulb_entropy_bound(n_param));
      } else if (bound_name == "entropy-diff") {
        BoundReport rep;
        rep.source = "entropy-diff";
        rep.bound = entropy_diff_bound(beta_param, k_param);
        reps.push_back(rep);
      } else if (bound_name == "poisson-entropy-upper") {
        BoundReport rep;
        rep.source = "poisson-entropy-upper";
        rep.bound = poisson_entropy_upper(lambda_flag);
        rep.exact = poisson_entropy(lambda_flag);
        rep.uncertainty = 1e-12;
        rep.holds = *rep.exact <= rep.bound + rep.uncertainty;
        reps.push_back(rep);
      } else if (bound_name == "poisson-max-entropy") {
        if (dist_spec.empty()) usage_error("this bound needs --dist");
        reps.push_back(max_entropy_check_poisson(parse_dist(dist_spec, tail_eps)));
      } else if (bound_name == "binomial-max-entropy") {
        if (dist_spec.empty()) usage_error("this bound needs --dist");
        reps.push_back(
            max_entropy_check_binomial(parse_dist(dist_spec, tail_eps), n_param, r));
      } else if (bound_name == "compound-poisson-max-entropy") {
        if (dist_spec.empty() || x_spec.empty()) usage_error("needs --dist and --x");
        reps.push_back(compound_entropy_check_poisson(
            parse_dist(dist_spec, tail_eps), parse_dist(x_spec, tail_eps)));
      } else if (bound_name == "compound-binomial-max-entropy") {
        if (dist_spec.empty() || x_spec.empty()) usage_error("needs --dist and --x");
        reps.push_back(compound_entropy_check_binomial(
            parse_dist(dist_spec, tail_eps), parse_dist(x_spec, tail_eps), n_param,
            r));
      } else {
        usage_error("unknown bound name: " + bound_name);
      }

      nlohmann::json j;
      if (reps.size() == 1) {
        j = bound_report_to_json(reps[0]);
      } else {
        j = nlohmann::json::array();
        for (const BoundReport& rep : reps) j.push_back(bound_report_to_json(rep));
      }
      emit(out, j);
      for (const BoundReport& rep : reps) {
        if (rep.holds && !*rep.holds) return 1;
      }
      return 0;
    }

    if (*cmd_flow) {
      const Pmf p = parse_dist(dist_spec, tail_eps);
      FlowReport rep;
      if (chain_mode) {
        const std::vector<long long> steps =
            steps_flag.empty() ? std::vector<long long>{0, 1, 2, 3, 4, 5}
                               : parse_range(steps_flag);
        rep = entropy_flow_chain(p, n_param, r, steps);
      } else {
        std::vector<double> alphas;
        if (alphas_flag.empty()) {
          for (int i = 0; i <= 10; ++i) alphas.push_back(i / 10.0);
        } else {
          alphas = real_list(alphas_flag);
        }
        rep = entropy_flow_alpha(p, alphas, tail_eps);
      }
      if (format == "json") emit(out, flow_report_to_json(rep));
      else out << flow_report_to_csv(rep);
      return 0;
    }

    if (*cmd_verify) {
      double residual = 0.0;
      double threshold = tol.value_or(1e-5);
      if (lemma_flag == "1") {
        residual = lemma1_residual(alpha_path(parse_dist(dist_spec, tail_eps),
                                              alpha, tail_eps),
                                   h_step);
      } else if (lemma_flag == "bin") {
        residual = bin_lemma_residual(parse_dist(dist_spec, tail_eps), n_param, r);
        threshold = tol.value_or(1e-12);
      } else {
        usage_error("unknown lemma: " + lemma_flag);
      }
      const bool pass = residual <= threshold;
      emit(out, nlohmann::json{{"residual", residual},
                               {"tolerance", threshold},
                               {"pass", pass}});
      return pass ? 0 : 1;
    }

    if (*cmd_report) {
      std::vector<ReportRow> rows;
      if (suite == "hypergeom-gap") rows = suite_hypergeom_gap(tail_eps);
      else if (suite == "hypergeom-refined") rows = suite_hypergeom_refined(tail_eps);
      else if (suite == "polya-coupling") rows = suite_polya(false);
      else if (suite == "polya-mixing") rows = suite_polya(true);
      else if (suite == "negbin-grid") rows = suite_negbin(tail_eps);
      else if (suite == "lightbulb") {
        std::vector<long long> ns;
        if (n_range_flag.empty()) {
          for (long long n = 10; n <= 30; ++n) ns.push_back(n);
        } else {
          ns = parse_range(n_range_flag);
        }
        rows = suite_lightbulb(ns);
      } else if (suite == "binomial-chain") rows = suite_binomial_chain();
      else usage_error("unknown suite: " + suite);
      if (format == "csv") out << rows_to_csv(rows);
      else emit(out, rows_to_json(rows));
      return rows_exit_code(rows);
    }

    usage_error("no subcommand given");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace thinord
