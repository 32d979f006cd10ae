#include "cli.hpp"

#include "hyperham/absorbing.hpp"
#include "hyperham/constructions.hpp"
#include "hyperham/errors.hpp"
#include "hyperham/hypergraph.hpp"
#include "hyperham/json_io.hpp"
#include "hyperham/paths.hpp"
#include "hyperham/reachability.hpp"
#include "hyperham/shadows.hpp"
#include "hyperham/thresholds.hpp"
#include "hyperham/tilings.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace hyperham::cli {

std::string to_string(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::proved_negative: return "proved-negative";
    case Status::budget: return "budget";
    case Status::stage_failure: return "stage-failure";
    case Status::invalid: return "invalid";
    case Status::usage: return "usage";
    case Status::parse_error: return "parse-error";
    case Status::error: return "error";
  }
  return "error";
}

int exit_code(Status s) {
  switch (s) {
    case Status::ok:
    case Status::proved_negative: return 0;
    case Status::usage: return 2;
    case Status::parse_error: return 3;
    case Status::budget: return 4;
    case Status::stage_failure:
    case Status::invalid: return 5;
    case Status::error: return 1;
  }
  return 1;
}

using hyperham::to_string;

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;  // 0: the command's own default
  std::string format;
  std::string out;
  bool timing = false;
  int jobs = 1;
};

struct Output {
  Status status = Status::ok;
  std::string text;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "64-bit seed for every random choice");
  app->add_option("--budget", c.budget, "search budget in decision nodes");
  app->add_option("--format", c.format, "json, csv or hg")->check(CLI::IsMember({"json", "csv", "hg"}));
  app->add_option("--out", c.out, "write the payload here instead of stdout");
  app->add_flag("--timing", c.timing, "report wall time (output is then not byte-stable)");
  app->add_option("--jobs", c.jobs, "worker count; searches run single-threaded")->check(CLI::PositiveNumber);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string hg_text(const Hypergraph& h) {
  std::ostringstream os;
  write_hg(os, h);
  return os.str();
}

Status search_status(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return Status::ok;
    case SearchStatus::none_proven: return Status::proved_negative;
    case SearchStatus::budget_exhausted: return Status::budget;
  }
  return Status::error;
}

Json gadget_json(const Gadget& g) {
  const auto& c = g.cert;
  Json j;
  j["k"] = c.k;
  j["ell"] = c.ell;
  j["vertices"] = g.graph.n();
  j["classes"] = c.classes;
  j["s_prime"] = c.s_prime;
  j["x"] = c.x;
  j["p"] = c.p.order;
  j["q"] = c.q.order;
  j["begin_end"] = c.begin_end;
  j["end_end"] = c.end_end;
  Json edges = Json::array();
  for (const auto& e : g.graph.edges()) edges.push_back(to_json(e));
  j["edges"] = edges;
  return j;
}

Json rational_list(const std::vector<Rational>& xs) {
  Json j = Json::array();
  for (const auto& x : xs) j.push_back(to_json(x));
  return j;
}

Hypergraph pattern_of(const Hypergraph& h, const std::string& file, int pk, int pb) {
  if (!file.empty()) return load_hg(file);
  const int k = pk > 0 ? pk : h.k();
  return pattern_Y(k, pb >= 0 ? pb : k - 1);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write '" + path + "'");
  f << text;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) row += ',';
    row += c;
    first = false;
  }
  return row + "\n";
}

}  // namespace

CommandResult dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Desk-scale workbench for Hamilton ell-cycles in k-graphs", "hyperham"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  std::function<Output()> run;

  // shared positional and parameter slots
  std::string graph_file, witness_file, kind, formula = "barrier", pattern_file, t_text, eps_text = "0",
                                             beta_text = "0", alpha_text, gamma_text = "0", witness_out;
  int k = 0, ell = 0, n = 0, d = 0, b = -1, pk = 0, pb = -1, size_cap = 0;
  int min_len = 2, max_len = 2, capacity = -1, reserve = 0, max_connector = 3, restarts = 8, attempts = 3;
  double p = 0.5, reservoir = 0.1;
  std::uint64_t stage_budget = 2'000'000;
  std::string edges_text;
  std::vector<int> set_members, from, to, forbid, n_list, pair;
  bool members = false;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a k-graph or gadget");
  gen->add_option("kind", kind, "space-barrier | complete | random | pattern-y | gadget")
      ->required()
      ->check(CLI::IsMember({"space-barrier", "complete", "random", "pattern-y", "gadget"}));
  gen->add_option("-k", k, "uniformity")->required();
  gen->add_option("-l,--ell", ell, "overlap");
  gen->add_option("-n", n, "vertices");
  gen->add_option("-p", p, "edge probability (random)");
  gen->add_option("-b", b, "shared vertices (pattern-y)");
  gen->add_option("--size-cap", size_cap, "gadget size cap, 0 for k^4");
  add_common(gen, common);
  gen->callback([&] {
    run = [&]() -> Output {
      if (kind == "gadget") {
        const auto r = search_gadget(k, ell, size_cap, common.budget ? common.budget : 1'000'000);
        Json j;
        j["schema"] = kSchemaVersion;
        j["status"] = to_string(r.status);
        j["nodes"] = r.nodes;
        if (r.gadget) j["gadget"] = gadget_json(*r.gadget);
        const Status st = search_status(r.status);
        if (common.format == "hg" && r.gadget) return {st, hg_text(r.gadget->graph)};
        return {st, dump(j)};
      }
      Hypergraph h;
      if (kind == "space-barrier") {
        h = space_barrier(SpaceBarrierSpec{k, ell, n});
      } else if (kind == "complete") {
        h = complete_graph(k, n);
      } else if (kind == "random") {
        if (p < 0 || p > 1) throw DomainError("p must lie in [0, 1]");
        SplitMix64 rng(common.seed);
        h = random_graph(k, n, p, rng);
      } else {
        h = pattern_Y(k, b);
      }
      if (common.format == "json") {
        Json j;
        j["schema"] = kSchemaVersion;
        j["k"] = h.k();
        j["n"] = h.n();
        Json edges = Json::array();
        for (const auto& e : h.edges()) edges.push_back(to_json(e));
        j["edges"] = edges;
        return {Status::ok, dump(j)};
      }
      return {Status::ok, hg_text(h)};
    };
  });

  // degree
  auto* deg = app.add_subcommand("degree", "minimum d-degree, or the degree of one set");
  deg->add_option("graph", graph_file)->required();
  deg->add_option("-d", d, "set size");
  deg->add_option("--set", set_members, "a single set, comma separated")->delimiter(',');
  add_common(deg, common);
  deg->callback([&] {
    run = [&]() -> Output {
      const Hypergraph h = load_hg(graph_file);
      Json j;
      j["schema"] = kSchemaVersion;
      j["k"] = h.k();
      j["n"] = h.n();
      j["edges"] = h.edge_count();
      if (!set_members.empty()) {
        const VertexSet s(set_members);
        j["set"] = to_json(s);
        j["degree"] = degree(h, s);
        return {Status::ok, dump(j)};
      }
      if (d < 1 || d > h.k() - 1) throw ArityError("need 1 <= d <= k-1");
      if (h.n() < d) throw DomainError("fewer than d vertices");
      const auto m = min_degree(h, d);
      j["d"] = d;
      j["min_degree"] = m;
      j["fraction"] = to_json(Rational(BigInt(m), binomial(h.n() - d, h.k() - d)));
      j["ratio"] = to_json(Rational(BigInt(m), binomial(h.n(), h.k() - d)));
      return {Status::ok, dump(j)};
    };
  });

  // hamilton
  auto* ham = app.add_subcommand("hamilton", "exact search for a Hamilton ell-cycle");
  ham->add_option("graph", graph_file)->required();
  ham->add_option("-l,--ell", ell)->required();
  ham->add_option("--witness", witness_out, "write the cycle witness here");
  add_common(ham, common);
  ham->callback([&] {
    run = [&]() -> Output {
      const Hypergraph h = load_hg(graph_file);
      SearchOptions opt;
      if (common.budget) opt.budget = common.budget;
      const auto r = find_hamilton_cycle(h, ell, opt);
      Json j;
      j["schema"] = kSchemaVersion;
      j["k"] = h.k();
      j["ell"] = ell;
      j["n"] = h.n();
      j["status"] = to_string(r.status);
      if (!r.reason.empty()) j["reason"] = r.reason;
      j["nodes"] = r.nodes;
      if (r.cycle) {
        j["cycle"] = to_json(*r.cycle);
        if (!witness_out.empty()) write_file(witness_out, dump(witness_json(*r.cycle)));
      }
      return {search_status(r.status), dump(j)};
    };
  });

  // connect
  auto* con = app.add_subcommand("connect", "ell-path between two ordered ell-tuples");
  con->add_option("graph", graph_file)->required();
  con->add_option("-l,--ell", ell)->required();
  con->add_option("--from", from, "ordered start tuple")->delimiter(',')->required();
  con->add_option("--to", to, "ordered end tuple")->delimiter(',')->required();
  con->add_option("--min-len", min_len);
  con->add_option("--max-len", max_len);
  con->add_option("--forbid", forbid)->delimiter(',');
  con->add_option("--witness", witness_out, "write the path witness here");
  add_common(con, common);
  con->callback([&] {
    run = [&]() -> Output {
      const Hypergraph h = load_hg(graph_file);
      ConnectOptions opt;
      opt.min_len = min_len;
      opt.max_len = max_len;
      opt.forbidden = VertexSet(forbid);
      if (common.budget) opt.budget = common.budget;
      const auto r = connect(h, ell, from, to, opt);
      Json j;
      j["schema"] = kSchemaVersion;
      j["k"] = h.k();
      j["ell"] = ell;
      j["from"] = from;
      j["to"] = to;
      j["status"] = to_string(r.status);
      j["nodes"] = r.nodes;
      if (r.path) {
        j["path"] = to_json(*r.path);
        j["length"] = r.path->length();
        if (!witness_out.empty()) write_file(witness_out, dump(witness_json(*r.path)));
      }
      return {search_status(r.status), dump(j)};
    };
  });

  // shadow
  auto* sh = app.add_subcommand("shadow", "shadow sizes, Kruskal-Katona bound, connecting witness");
  sh->add_option("graph", graph_file)->required();
  sh->add_option("-l,--ell", ell, "levels down")->required();
  sh->add_option("--eps", eps_text, "robustness threshold, p/q or decimal");
  sh->add_option("--from", from, "ordered ell-tuple S")->delimiter(',');
  sh->add_option("--to", to, "ordered ell-tuple T")->delimiter(',');
  sh->add_flag("--members", members, "list the robust shadow");
  add_common(sh, common);
  sh->callback([&] {
    run = [&]() -> Output {
      const Hypergraph h = load_hg(graph_file);
      const Rational eps = parse_rational(eps_text);
      if (eps < 0) throw DomainError("eps must be non-negative");
      Json j;
      j["schema"] = kSchemaVersion;
      j["k"] = h.k();
      j["n"] = h.n();
      j["ell"] = ell;
      j["eps"] = to_json(eps);
      j["edges"] = h.edge_count();
      if (!from.empty() || !to.empty()) {
        const auto r = shadow_intersection_witness(h, from, to, eps);
        Json common_sets = Json::array();
        for (const auto& s : r.common) common_sets.push_back(to_json(s));
        j["common"] = common_sets;
        if (r.witness) {
          j["witness"] = {{"d", to_json(r.witness->d)},
                          {"s1", to_json(r.witness->s1)},
                          {"t1", to_json(r.witness->t1)},
                          {"path", to_json(r.witness->path)}};
        } else {
          j["witness"] = nullptr;
        }
        return {r.witness ? Status::ok : Status::proved_negative, dump(j)};
      }
      const auto plain = robust_shadow(h, ell, Rational(0));
      const auto robust = eps == 0 ? plain : robust_shadow(h, ell, eps);
      const Rational bound = kk_bound(BigInt(h.edge_count()), h.k(), ell);
      j["shadow_size"] = plain.size();
      j["robust_size"] = robust.size();
      j["kk_bound"] = to_json(bound);
      j["kk_decimal"] = to_decimal(bound);
      j["kk_holds"] = Rational(plain.size()) >= bound;
      if (members) {
        Json list = Json::array();
        for (const auto& s : robust) list.push_back(to_json(s));
        j["robust_shadow"] = list;
      }
      return {Status::ok, dump(j)};
    };
  });

  // reach
  auto* re = app.add_subcommand("reach", "reachability counts and partition");
  re->add_option("graph", graph_file)->required();
  re->add_option("-l,--ell", ell)->required();
  re->add_option("--beta", beta_text, "minimum beta for joining a pair");
  re->add_option("--pair", pair, "count for one pair u,v")->delimiter(',');
  add_common(re, common);
  re->callback([&] {
    run = [&]() -> Output {
      const Hypergraph h = load_hg(graph_file);
      Json j;
      j["schema"] = kSchemaVersion;
      j["k"] = h.k();
      j["n"] = h.n();
      j["ell"] = ell;
      if (!pair.empty()) {
        if (pair.size() != 2) throw ArityError("--pair takes two vertices");
        const auto r = reachable_count(h, pair[0], pair[1], ell);
        j["u"] = r.u;
        j["v"] = r.v;
        j["count"] = r.count;
        j["normalization"] = to_string(r.normalization);
        j["beta"] = to_json(r.beta);
        return {Status::ok, dump(j)};
      }
      const Rational beta = parse_rational(beta_text);
      const auto part = reachability_partition(h, ell, beta);
      if (common.format == "csv") {
        const BigInt norm = power(BigInt(h.n()), static_cast<unsigned>(2 * h.k() - ell - 1));
        std::string text = csv_row({"u", "v", "count", "beta"});
        for (int u = 0; u < h.n(); ++u) {
          for (int v = u + 1; v < h.n(); ++v) {
            const auto c = part.counts[u][v];
            text += csv_row({std::to_string(u), std::to_string(v), std::to_string(c),
                             to_string(Rational(BigInt(c), norm))});
          }
        }
        return {Status::ok, text};
      }
      j["beta_min"] = to_json(beta);
      j["parts"] = part.parts;
      j["leftover"] = part.leftover;
      j["min_pair_beta"] = rational_list(part.min_pair_beta);
      j["counts"] = part.counts;
      return {Status::ok, dump(j)};
    };
  });

  // tile / frac-tile
  auto add_pattern = [&](CLI::App* sub) {
    sub->add_option("graph", graph_file)->required();
    sub->add_option("--pattern", pattern_file, "pattern .hg file");
    sub->add_option("--pattern-k", pk, "Y pattern uniformity (default: the graph's k)");
    sub->add_option("--pattern-b", pb, "Y pattern overlap (default: k-1)");
    add_common(sub, common);
  };
  auto* ti = app.add_subcommand("tile", "maximum vertex-disjoint pattern tiling");
  add_pattern(ti);
  ti->callback([&] {
    run = [&]() -> Output {
      const Hypergraph h = load_hg(graph_file);
      const Hypergraph f = pattern_of(h, pattern_file, pk, pb);
      const auto t = max_tiling(h, f, common.budget ? common.budget : 10'000'000);
      Json j;
      j["schema"] = kSchemaVersion;
      j["n"] = h.n();
      j["pattern_vertices"] = f.n();
      j["copies"] = t.copies.size();
      j["covered"] = t.covered;
      j["optimal"] = t.optimal;
      j["upper_bound"] = t.upper_bound;
      j["nodes"] = t.nodes;
      Json list = Json::array();
      for (const auto& c : t.copies) list.push_back(to_json(c));
      j["tiling"] = list;
      return {t.optimal ? Status::ok : Status::budget, dump(j)};
    };
  });
  auto* ft = app.add_subcommand("frac-tile", "maximum fractional pattern tiling with dual certificate");
  add_pattern(ft);
  ft->callback([&] {
    run = [&]() -> Output {
      const Hypergraph h = load_hg(graph_file);
      const Hypergraph f = pattern_of(h, pattern_file, pk, pb);
      const auto t = max_fractional_tiling(h, f);
      Json j;
      j["schema"] = kSchemaVersion;
      j["n"] = h.n();
      j["pattern_vertices"] = f.n();
      j["size"] = to_json(t.size);
      j["perfect"] = t.size * f.n() == h.n();
      j["dual_verified"] = t.dual_verified;
      j["pivots"] = t.pivots;
      Json weights = Json::array();
      for (std::size_t i = 0; i < t.copies.size(); ++i) {
        if (t.weights[i] == 0) continue;
        weights.push_back({{"vertices", to_json(t.copies[i].vertices)}, {"weight", to_json(t.weights[i])}});
      }
      j["weights"] = weights;
      j["vertex_duals"] = rational_list(t.vertex_duals);
      return {Status::ok, dump(j)};
    };
  });

  // threshold
  auto* th = app.add_subcommand("threshold", "exact threshold formulas");
  th->add_option("--formula", formula)
      ->check(CLI::IsMember({"barrier", "thm11", "thm14", "thm15", "cor16", "kk", "convergence", "a3", "a3-limit"}));
  th->add_option("-k", k);
  th->add_option("-d", d);
  th->add_option("-l,--ell", ell);
  th->add_option("-n", n);
  th->add_option("--t", t_text, "value of t(k,d,ell): a rational or 'known'");
  th->add_option("--edges", edges_text, "edge count for kk");
  th->add_option("--n-list", n_list, "sizes for convergence")->delimiter(',');
  th->add_option("--alpha", alpha_text);
  th->add_option("--gamma", gamma_text);
  add_common(th, common);
  th->callback([&] {
    run = [&]() -> Output {
      const bool json = common.format == "json";
      Json j;
      j["schema"] = kSchemaVersion;
      j["formula"] = formula;
      const std::string ks = std::to_string(k), ds = std::to_string(d), ls = std::to_string(ell);
      const std::string header = csv_row({"k", "d", "ell", "formula", "value", "decimal"});
      auto single = [&](const std::string& dcol, const std::string& value, const std::string& decimal) -> Output {
        if (json) {
          j["k"] = k;
          if (!dcol.empty()) j["d"] = d;
          j["ell"] = ell;
          j["value"] = value;
          j["decimal"] = decimal;
          return {Status::ok, dump(j)};
        }
        return {Status::ok, header + csv_row({ks, dcol, ls, formula, value, decimal})};
      };
      if (formula == "barrier") {
        const Rational v = space_barrier_limit(k, d, ell);
        return single(ds, to_string(v), to_decimal(v));
      }
      if (formula == "thm11") {
        const Rational v = thm11_value(k, ell);
        return single("", to_string(v), to_decimal(v));
      }
      if (formula == "thm14" || formula == "thm15") {
        std::optional<Rational> t;
        if (t_text == "known") {
          t = known_t(k, d, ell);
          if (!t) throw DomainError("t(" + ks + "," + ds + "," + ls + ") is not known exactly");
        } else if (!t_text.empty()) {
          t = parse_rational(t_text);
        }
        const auto ub = upper_bound_thm(k, d, ell, t, formula == "thm14" ? UpperForm::thm14 : UpperForm::thm15);
        if (json) j["t_lower"] = to_json(ub.t_lower);
        return single(ds, ub.bound.text, ub.bound.decimal);
      }
      if (formula == "cor16") {
        const auto c = cor16_check(k, d, ell);
        if (json) {
          j["window"] = c.window;
          j["barrier"] = to_json(c.barrier);
          j["barrier_above_third"] = c.barrier_above_third;
          j["chain"] = c.chain;
        }
        return single(ds, c.certified ? "true" : "false", to_decimal(c.barrier));
      }
      if (formula == "kk") {
        if (edges_text.empty()) throw DomainError("kk needs --edges");
        const BigInt e(edges_text);
        if (e < 0) throw DomainError("edge count must be non-negative");
        const Rational v = kk_bound(e, k, ell);
        if (json) j["edges"] = edges_text;
        return single("", to_string(v), to_decimal(v));
      }
      if (formula == "convergence") {
        const auto rows = convergence_table(k, d, ell, n_list);
        if (json) {
          j["k"] = k;
          j["d"] = d;
          j["ell"] = ell;
          Json list = Json::array();
          for (const auto& r : rows) {
            list.push_back({{"n", r.n}, {"ratio", to_json(r.ratio)}, {"limit", to_json(r.limit)}, {"gap", to_json(r.gap)}});
          }
          j["rows"] = list;
          return {Status::ok, dump(j)};
        }
        std::string text = csv_row({"n", "ratio", "limit", "gap", "gap_decimal"});
        for (const auto& r : rows) {
          text += csv_row({std::to_string(r.n), to_string(r.ratio), to_string(r.limit), to_string(r.gap), to_decimal(r.gap)});
        }
        return {Status::ok, text};
      }
      // a3, a3-limit
      if (alpha_text.empty()) throw DomainError(formula + " needs --alpha");
      const Rational alpha = parse_rational(alpha_text);
      const Rational gamma = parse_rational(gamma_text);
      const Rational v = formula == "a3" ? thm_A3_bound(n, alpha, gamma) : thm_A3_limit(alpha);
      if (json) {
        if (formula == "a3") j["n"] = n;
        j["alpha"] = to_json(alpha);
        if (formula == "a3") j["gamma"] = to_json(gamma);
        j["value"] = to_json(v);
        j["decimal"] = to_decimal(v);
        return {Status::ok, dump(j)};
      }
      return {Status::ok, csv_row({"n", "alpha", "gamma", "formula", "value", "decimal"}) +
                              csv_row({formula == "a3" ? std::to_string(n) : "", to_string(alpha),
                                       formula == "a3" ? to_string(gamma) : "", formula, to_string(v), to_decimal(v)})};
    };
  });

  // absorb-run
  auto* ab = app.add_subcommand("absorb-run", "reservoir, absorbing path, cover, connect, absorb");
  ab->add_option("graph", graph_file)->required();
  ab->add_option("-l,--ell", ell)->required();
  ab->add_option("--reservoir", reservoir, "reservoir fraction of n");
  ab->add_option("--capacity", capacity, "absorber slots, -1 adaptive");
  ab->add_option("--reserve", reserve, "p: sets of each base vector held back in R1");
  ab->add_option("--max-connector", max_connector);
  ab->add_option("--stage-budget", stage_budget, "decision nodes per search stage");
  ab->add_option("--restarts", restarts);
  ab->add_option("--attempts", attempts);
  ab->add_option("--witness", witness_out, "write the cycle witness here");
  add_common(ab, common);
  ab->callback([&] {
    run = [&]() -> Output {
      const Hypergraph h = load_hg(graph_file);
      PipelineParams params;
      params.reservoir_fraction = reservoir;
      params.capacity = capacity;
      params.reserve = reserve;
      params.max_connector = max_connector;
      params.stage_budget = stage_budget;
      params.restarts = restarts;
      params.attempts = attempts;
      const auto report = run_pipeline(h, ell, params, common.seed);
      if (report.cycle && !witness_out.empty()) write_file(witness_out, dump(witness_json(*report.cycle)));
      return {report.success() ? Status::ok : Status::stage_failure, dump(to_json(report))};
    };
  });

  // validate
  auto* va = app.add_subcommand("validate", "check an ell-path or ell-cycle witness against a graph");
  va->add_option("graph", graph_file)->required();
  va->add_option("witness", witness_file)->required();
  add_common(va, common);
  va->callback([&] {
    run = [&]() -> Output {
      const Hypergraph h = load_hg(graph_file);
      std::ifstream f(witness_file);
      if (!f) throw ParseError(0, "cannot open '" + witness_file + "'");
      std::stringstream buf;
      buf << f.rdbuf();
      const Witness w = parse_witness(buf.str());
      Json j;
      j["schema"] = kSchemaVersion;
      Validation v;
      int wk = 0;
      if (const auto* c = std::get_if<EllCycle>(&w)) {
        j["type"] = "ell_cycle";
        wk = c->k;
        v = validate_cycle(h, *c);
      } else {
        const auto& pth = std::get<EllPath>(w);
        j["type"] = "ell_path";
        wk = pth.k;
        v = validate_path(h, pth);
      }
      if (wk != h.k()) {
        v = Validation{};
        v.valid = false;
        v.violation = "witness has k=" + std::to_string(wk) + " but the graph is " + std::to_string(h.k()) + "-uniform";
      }
      j["valid"] = v.valid;
      if (std::holds_alternative<EllCycle>(w)) j["hamilton"] = v.valid && v.hamilton;
      if (!v.valid) {
        j["violation"] = v.violation;
        if (v.window >= 0) j["window"] = v.window;
      }
      return {v.valid ? Status::ok : Status::invalid, dump(j)};
    };
  });

  CommandResult result;
  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("hyperham");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return result;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return result;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    result.status = Status::usage;
    result.exit = exit_code(result.status);
    return result;
  }
  result.seed = common.seed;

  const auto start = std::chrono::steady_clock::now();
  Output o;
  try {
    o = run();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    o.status = Status::parse_error;
  } catch (const StageError& e) {
    err << "stage " << e.stage() << " failed: " << e.what() << "\n";
    o.status = Status::stage_failure;
  } catch (const ArityError& e) {
    err << "error: " << e.what() << "\n";
    o.status = Status::usage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    o.status = Status::usage;
  } catch (const RegimeError& e) {
    err << "error: " << e.what() << "\n";
    o.status = Status::usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    o.status = Status::error;
  }
  result.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  result.status = o.status;
  result.exit = exit_code(o.status);
  result.payload = o.text;

  if (!o.text.empty()) {
    if (common.out.empty()) {
      out << o.text;
    } else {
      try {
        write_file(common.out, o.text);
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        result.status = Status::error;
        result.exit = exit_code(result.status);
      }
    }
  }
  if (common.timing) err << "timing_ms " << result.timing_ms << "\n";
  err << "status " << to_string(result.status) << " seed " << result.seed << "\n";
  return result;
}

}  // namespace hyperham::cli
