#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ramanujan/bounds.hpp"
#include "ramanujan/census.hpp"
#include "ramanujan/constructions.hpp"
#include "ramanujan/errors.hpp"
#include "ramanujan/fixtures.hpp"
#include "ramanujan/fungroup.hpp"
#include "ramanujan/groups.hpp"
#include "ramanujan/limits.hpp"
#include "ramanujan/nullcycle.hpp"
#include "ramanujan/percolation.hpp"
#include "ramanujan/random.hpp"
#include "ramanujan/spectral.hpp"
#include "ramanujan/tree_walk.hpp"

namespace ramanujan::cli {

namespace {

struct Context {
  Sink sink;
  std::vector<std::uint64_t> seeds;
  std::size_t workers = 1;
  int code = kOk;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

// --out PATH for JSON and --csv [PATH] for tables. A bare --csv means
// standard output, and then JSON is only written if --out is given.
struct Outputs {
  std::string out;
  std::string csv;
  CLI::Option* out_opt = nullptr;
  CLI::Option* csv_opt = nullptr;
};

void add_outputs(CLI::App* app, Outputs& o, bool with_csv) {
  o.out_opt = app->add_option("--out", o.out, "JSON output file (default: standard output)");
  if (with_csv)
    o.csv_opt = app->add_option("--csv", o.csv, "CSV output file; bare --csv writes to standard output")
                    ->expected(0, 1);
  app->add_flag("--json", "JSON output (the default)");
}

void emit(Context& ctx, const Outputs& o, const Json* doc, const std::string* csv) {
  std::string csv_path;
  if (o.csv_opt && o.csv_opt->count() > 0) csv_path = o.csv.empty() ? "-" : o.csv;
  if (csv && !csv_path.empty()) ctx.sink.add("csv", csv_path, *csv);
  std::string json_path = "-";
  if (o.out_opt && o.out_opt->count() > 0)
    json_path = o.out;
  else if (csv && csv_path == "-")
    json_path.clear();
  if (doc && !json_path.empty()) ctx.sink.add("out", json_path, doc->dump(2) + "\n");
}

SerreGraph load(const std::string& path) {
  try {
    return read_sgf_file(path);
  } catch (const ParseError& e) {
    throw Error("malformed SGF in " + path + ": " + e.what());
  } catch (const StructuralError& e) {
    throw Error("invalid graph in " + path + ": " + e.what() + " (edge " +
                std::to_string(e.edge_id()) + ")");
  }
}

Json number(double x) {
  if (std::isfinite(x)) return x;
  return csv_number(x);
}

Json graph_info(const SerreGraph& g) {
  Json j;
  j["name"] = g.name();
  j["vertices"] = g.vertex_count();
  j["directed_edges"] = g.edge_count();
  if (g.regular_degree())
    j["degree"] = *g.regular_degree();
  else
    j["degree"] = nullptr;
  return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) parts.push_back(cur);
  return parts;
}

std::size_t to_size(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || s[0] == '-')
    throw PreconditionError("bad " + what + ": '" + s + "'");
  return static_cast<std::size_t>(v);
}

// "1..4", "2", "1,3,5" or any mix.
std::vector<std::size_t> parse_range(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& part : split(s, ',')) {
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_size(part, "range"));
      continue;
    }
    auto lo = to_size(part.substr(0, dots), "range"), hi = to_size(part.substr(dots + 2), "range");
    if (hi < lo) throw PreconditionError("empty range " + part);
    for (auto k = lo; k <= hi; ++k) out.push_back(k);
  }
  if (out.empty()) throw PreconditionError("empty range");
  return out;
}

int verdict_code(const std::vector<BoundReport>& reports) {
  bool na = false;
  for (const auto& r : reports) {
    if (r.failed()) return kError;
    if (r.verdict == Verdict::kNotApplicable) na = true;
  }
  return na ? kNotApplicable : kOk;
}

VertexId vertex_arg(const SerreGraph& g, std::size_t v, const char* what) {
  if (v >= g.vertex_count())
    throw PreconditionError(std::string(what) + " " + std::to_string(v) + " is not a vertex");
  return static_cast<VertexId>(v);
}

// ---------------------------------------------------------------- treewalk

void setup_treewalk(CLI::App& app, Context& ctx) {
  auto* tw = app.add_subcommand("treewalk", "Exact walk counts on the d-regular tree");
  tw->require_subcommand(1);

  struct TablesOpts {
    unsigned d = 3;
    std::size_t nmax = 0;
    bool counts = false;
    Outputs o;
  };
  auto t = std::make_shared<TablesOpts>();
  auto* tables = tw->add_subcommand("tables", "Return probabilities and walk counts");
  tables->add_option("--d", t->d, "degree")->required()->check(CLI::Range(2u, 1000u));
  tables->add_option("--nmax", t->nmax, "largest walk length")->required()->check(CLI::Range(0, 100000));
  tables->add_flag("--counts", t->counts, "include the full table c[n][k]");
  add_outputs(tables, t->o, false);
  tables->callback([t, &ctx] {
    auto tab = tree_walk_tables(t->d, t->nmax);
    Json doc;
    doc["d"] = t->d;
    doc["nmax"] = t->nmax;
    doc["cache_key"] = tree_walk_cache_key(t->d, tab->nmax());
    Json r = Json::object();
    for (std::size_t n = 0; n <= t->nmax; n += 2) r[std::to_string(n)] = to_decimal(tab->return_probability(n));
    doc["return_probability"] = r;
    Json s = Json::array();
    for (std::size_t k = 0; k <= t->nmax; ++k) s.push_back(to_decimal(tab->sphere_size(k)));
    doc["sphere_size"] = s;
    if (t->counts) {
      Json c = Json::array();
      for (std::size_t n = 0; n <= t->nmax; ++n) {
        Json row = Json::array();
        for (std::size_t k = 0; k <= n; ++k) row.push_back(to_decimal(tab->count(n, k)));
        c.push_back(row);
      }
      doc["counts"] = c;
    }
    emit(ctx, t->o, &doc, nullptr);
  });

  struct CheckOpts {
    unsigned d = 3;
    std::size_t nmax = 200;
    Outputs o;
  };
  auto c = std::make_shared<CheckOpts>();
  auto* check = tw->add_subcommand("check-bounds", "Two-sided bounds on the return probability");
  check->add_option("--d", c->d, "degree")->required()->check(CLI::Range(3u, 1000u));
  check->add_option("--nmax", c->nmax, "largest walk length")->capture_default_str();
  add_outputs(check, c->o, true);
  check->callback([c, &ctx] {
    auto reports = check_return_bounds(c->d, c->nmax);
    std::string csv = "n,lhs,r_n,rhs,margin,verdict\n";
    Json rows = Json::array();
    std::size_t n = 0;
    for (const auto& r : reports) {
      n += 2;
      csv += std::to_string(n) + "," + csv_number(r.lhs) + "," + csv_number(r.value) + "," +
             csv_number(r.rhs) + "," + csv_number(r.margin) + "," + to_string(r.verdict) + "\n";
      auto j = to_json(r);
      j["n"] = n;
      rows.push_back(j);
    }
    Json doc{{"d", c->d}, {"nmax", c->nmax}, {"reports", rows}};
    Outputs o = c->o;
    if (!o.csv_opt || o.csv_opt->count() == 0) {
      // CSV is the primary format here.
      if (!o.out_opt || o.out_opt->count() == 0) ctx.sink.add("csv", "-", csv);
      else emit(ctx, o, &doc, nullptr);
    } else {
      emit(ctx, o, &doc, &csv);
    }
    ctx.code = verdict_code(reports);
  });
}

// ---------------------------------------------------------------- spectrum

void setup_spectrum(CLI::App& app, Context& ctx) {
  struct Opts {
    std::string in;
    std::size_t dense_limit = SpectrumOptions{}.dense_limit;
    std::size_t residual_limit = SpectrumOptions{}.residual_limit;
    bool no_eigenvalues = false;
    Outputs o;
  };
  auto s = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("spectrum", "Spectrum of the Markov operator of a regular graph");
  sub->add_option("--in", s->in, "SGF graph")->required();
  sub->add_option("--dense-limit", s->dense_limit, "largest size for the dense solver")->capture_default_str();
  sub->add_option("--residual-limit", s->residual_limit, "largest size with eigenvector residuals")
      ->capture_default_str();
  sub->add_flag("--no-eigenvalues", s->no_eigenvalues, "omit the eigenvalue list");
  add_outputs(sub, s->o, false);
  sub->callback([s, &ctx] {
    auto g = load(s->in);
    SpectrumOptions opts;
    opts.dense_limit = s->dense_limit;
    opts.residual_limit = s->residual_limit;
    auto sp = markov_spectrum(g, opts);
    Json doc;
    doc["graph"] = graph_info(g);
    doc["method"] = sp.method;
    doc["rho"] = sp.rho;
    doc["residual"] = sp.residual;
    doc["rho_interval"] = {sp.rho - sp.residual, sp.rho + sp.residual};
    doc["tree_rho"] = tree_rho(static_cast<unsigned>(sp.degree));
    doc["ramanujan"] = sp.ramanujan;
    doc["bipartite"] = sp.is_bipartite;
    doc["components"] = sp.components;
    doc["weakly_ramanujan_mass"] = number(sp.eigenvalues.empty() ? NAN : weakly_ramanujan_mass(sp));
    Json distinct = Json::array();
    for (const auto& [v, m] : sp.distinct) distinct.push_back({{"value", v}, {"multiplicity", m}});
    doc["distinct"] = distinct;
    if (!s->no_eigenvalues) doc["eigenvalues"] = sp.eigenvalues;
    emit(ctx, s->o, &doc, nullptr);
  });
}

// ---------------------------------------------------------------- cogrowth

void setup_cogrowth(CLI::App& app, Context& ctx) {
  struct Opts {
    std::string in;
    std::size_t m = 0;
    Outputs o;
  };
  auto s = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("cogrowth", "Non-backtracking growth and the Tree_m criterion");
  sub->add_option("--in", s->in, "SGF graph")->required();
  auto* mopt = sub->add_option("--m", s->m, "ambient degree (default: maximum degree)");
  add_outputs(sub, s->o, false);
  sub->callback([s, mopt, &ctx] {
    auto g = load(s->in);
    std::optional<std::size_t> m;
    if (mopt->count()) m = s->m;
    auto c = nonbacktracking_cogrowth(g, m);
    Json doc;
    doc["graph"] = graph_info(g);
    doc["m"] = c.m;
    doc["alpha"] = c.alpha;
    doc["degenerate"] = c.degenerate;
    doc["alpha_integer"] = c.alpha_integer ? Json(*c.alpha_integer) : Json(nullptr);
    doc["method"] = c.method;
    doc["flagged"] = c.flagged;
    doc["iterations"] = c.iterations;
    doc["rho_cover"] = c.rho_cover;
    auto t = tree_m_ramanujan(g, c.m);
    doc["tree_m"] = {{"threshold", t.threshold}, {"margin", t.margin},     {"exact", t.exact},
                     {"ramanujan", t.ramanujan}, {"sufficient_bound", t.sufficient_bound}};
    emit(ctx, s->o, &doc, nullptr);
  });
}

// ---------------------------------------------------------------- census

void setup_census(CLI::App& app, Context& ctx) {
  struct Opts {
    std::string in;
    std::size_t k = 3;
    std::size_t profile = 0;
    Outputs o;
  };
  auto s = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("census", "Nontrivial closed walks of length k at every vertex");
  sub->add_option("--in", s->in, "SGF graph")->required();
  sub->add_option("--k", s->k, "cycle length")->required()->check(CLI::Range(1, 64));
  sub->add_option("--profile", s->profile, "also report tree-ball fractions for radii 1..R");
  add_outputs(sub, s->o, true);
  sub->callback([s, &ctx] {
    auto g = load(s->in);
    auto c = cycle_census(g, s->k);
    std::string csv = "vertex,gamma\n";
    std::uint64_t mx = 0;
    for (std::size_t v = 0; v < c.per_vertex.size(); ++v) {
      csv += std::to_string(v) + "," + std::to_string(c.per_vertex[v]) + "\n";
      mx = std::max(mx, c.per_vertex[v]);
    }
    Json doc;
    doc["graph"] = graph_info(g);
    doc["k"] = s->k;
    doc["total"] = c.total;
    doc["density"] = c.density;
    doc["max"] = mx;
    if (s->profile) {
      auto p = essential_girth_profile(g, s->profile);
      doc["tree_fraction"] = p.fraction;
      doc["beta"] = p.beta ? Json(*p.beta) : Json(nullptr);
      doc["threshold"] = p.threshold ? Json(*p.threshold) : Json(nullptr);
    }
    emit(ctx, s->o, &doc, &csv);
  });
}

// ---------------------------------------------------------------- nullcycle

struct StatSpec {
  std::string name;
  std::size_t k = 0, ell = 0;
  std::string key;
};

std::vector<StatSpec> parse_stats(const std::string& text) {
  std::vector<StatSpec> out;
  for (const auto& tok : split(text, ',')) {
    auto parts = split(tok, ':');
    StatSpec st;
    st.name = parts.at(0);
    for (std::size_t i = 1; i < parts.size(); ++i) {
      auto eq = parts[i].find('=');
      if (eq == std::string::npos) throw PreconditionError("bad statistic parameter '" + parts[i] + "'");
      auto key = parts[i].substr(0, eq), val = parts[i].substr(eq + 1);
      if (key == "k")
        st.k = to_size(val, "k");
      else if (key == "l")
        st.ell = to_size(val, "l");
      else
        throw PreconditionError("unknown statistic parameter '" + key + "'");
    }
    if (st.name == "visits") {
      st.key = "visits";
    } else if (st.name == "chi") {
      if (st.k == 0 || st.ell == 0) throw PreconditionError("chi needs k and l, e.g. chi:k=3:l=100");
      st.key = "chi_k" + std::to_string(st.k) + "_l" + std::to_string(st.ell);
    } else if (st.name == "reduced") {
      st.key = "reduced";
    } else {
      throw PreconditionError("unknown statistic '" + st.name + "' (visits, chi, reduced)");
    }
    out.push_back(st);
  }
  return out;
}

void setup_nullcycle(CLI::App& app, Context& ctx) {
  auto* nc = app.add_subcommand("nullcycle", "Uniform closed walks that lift to closed walks on the tree");
  nc->require_subcommand(1);
  struct Opts {
    std::string in;
    std::size_t root = 0, n = 0, count = 1000;
    std::uint64_t seed = 0;
    std::string stats = "visits";
    std::vector<std::size_t> set;
    bool walks = false;
    Outputs o;
  };
  auto s = std::make_shared<Opts>();
  auto* sample = nc->add_subcommand("sample", "Draw nullcycles and evaluate statistics");
  sample->add_option("--in", s->in, "SGF graph")->required();
  sample->add_option("--root", s->root, "root vertex")->capture_default_str();
  sample->add_option("--n", s->n, "length (even)")->required();
  sample->add_option("--seed", s->seed, "seed")->required();
  sample->add_option("--count", s->count, "number of samples")->capture_default_str();
  sample->add_option("--stats", s->stats, "visits, chi:k=K:l=L, reduced")->capture_default_str();
  sample->add_option("--set", s->set, "vertex set A for visits (default: the root)")->delimiter(',');
  sample->add_flag("--walks", s->walks, "include the vertex sequence of each sample");
  add_outputs(sample, s->o, false);
  sample->callback([s, &ctx] {
    auto g = load(s->in);
    const auto root = vertex_arg(g, s->root, "root");
    auto specs = parse_stats(s->stats);
    std::vector<VertexId> a;
    for (auto v : s->set) a.push_back(vertex_arg(g, v, "set vertex"));
    if (a.empty()) a.push_back(root);
    std::vector<bool> in_a(g.vertex_count(), false);
    for (auto v : a) in_a[v] = true;
    ctx.seeds.push_back(s->seed);
    NullcycleSampler sampler(g, root, s->n);
    auto rng = make_stream(s->seed);
    Json records = Json::array();
    std::map<std::string, double> sum;
    for (std::size_t i = 0; i < s->count; ++i) {
      auto w = sampler.sample(rng);
      auto vs = walk_vertices(g, w);
      Json rec;
      rec["i"] = i;
      for (const auto& st : specs) {
        double v = 0;
        if (st.name == "visits") {
          std::size_t c = 0;
          for (auto x : vs) c += in_a[x];
          rec[st.key] = c;
          v = static_cast<double>(c);
        } else if (st.name == "chi") {
          auto c = chi_statistic(g, w, st.k, st.ell);
          rec[st.key] = c;
          v = static_cast<double>(c);
        } else {
          bool red = homotopy_class(g, w).empty();
          rec[st.key] = red;
          v = red;
        }
        sum[st.key] += v;
      }
      if (s->walks) rec["vertices"] = vs;
      records.push_back(rec);
    }
    Json summary = Json::object();
    for (const auto& st : specs) {
      Json e;
      e["mean"] = s->count ? sum[st.key] / static_cast<double>(s->count) : 0.0;
      if (st.name == "visits") {
        auto ex = expected_visits_value(g, root, a, s->n);
        e["exact"] = to_decimal(ex);
        e["exact_value"] = ex.get_d();
      }
      summary[st.key] = e;
    }
    Json doc;
    doc["graph"] = graph_info(g);
    doc["root"] = root;
    doc["n"] = s->n;
    doc["seed"] = s->seed;
    doc["count"] = s->count;
    doc["set"] = a;
    doc["summary"] = summary;
    doc["records"] = records;
    emit(ctx, s->o, &doc, nullptr);
  });

  struct ExpOpts {
    std::string in;
    std::size_t root = 0, n = 0;
    std::vector<std::size_t> set;
    Outputs o;
  };
  auto e = std::make_shared<ExpOpts>();
  auto* expect = nc->add_subcommand("expected", "Exact expected visits to a set, with bounds");
  expect->add_option("--in", e->in, "SGF graph")->required();
  expect->add_option("--root", e->root, "root vertex")->capture_default_str();
  expect->add_option("--n", e->n, "length (even)")->required();
  expect->add_option("--set", e->set, "vertex set A (default: the root)")->delimiter(',');
  add_outputs(expect, e->o, false);
  expect->callback([e, &ctx] {
    auto g = load(e->in);
    const auto root = vertex_arg(g, e->root, "root");
    std::vector<VertexId> a;
    for (auto v : e->set) a.push_back(vertex_arg(g, v, "set vertex"));
    if (a.empty()) a.push_back(root);
    auto rep = expected_visits(g, root, a, e->n);
    Json doc;
    doc["graph"] = graph_info(g);
    doc["root"] = root;
    doc["n"] = e->n;
    doc["set"] = a;
    doc["expected"] = to_decimal(rep.expected);
    doc["expected_value"] = rep.expected.get_d();
    doc["rho"] = rep.rho;
    doc["finite_bound"] = to_json(rep.finite_bound);
    doc["constant_bound"] = to_json(rep.constant_bound);
    emit(ctx, e->o, &doc, nullptr);
    ctx.code = verdict_code({rep.finite_bound, rep.constant_bound}) == kError ? kError : kOk;
  });
}

// ---------------------------------------------------------------- bounds

void setup_bounds(CLI::App& app, Context& ctx) {
  auto* b = app.add_subcommand("bounds", "Check the cycle/spectral-radius inequalities on a graph");
  b->require_subcommand(1);
  struct Opts {
    std::string in;
    std::string suite = "main";
    std::string k = "1..3";
    std::size_t n = 4;
    std::string log_base = "d";
    Outputs o;
  };
  auto s = std::make_shared<Opts>();
  auto* verify = b->add_subcommand("verify", "Run inequality suites; exit 2 if a suite does not apply");
  verify->add_option("--in", s->in, "SGF graph")->required();
  verify->add_option("--suite", s->suite, "comma list of main, returns, girth")->capture_default_str();
  verify->add_option("--k", s->k, "cycle lengths, e.g. 1..4 or 1,3")->capture_default_str();
  verify->add_option("--n", s->n, "number of k-blocks for the returns suite")->capture_default_str();
  verify->add_option("--log-base", s->log_base, "d or d-1")
      ->check(CLI::IsMember({"d", "d-1"}))
      ->capture_default_str();
  add_outputs(verify, s->o, true);
  verify->callback([s, &ctx] {
    auto g = load(s->in);
    auto ks = parse_range(s->k);
    auto suites = split(s->suite, ',');
    for (const auto& x : suites)
      if (x != "main" && x != "returns" && x != "girth") throw PreconditionError("unknown suite '" + x + "'");
    std::vector<std::pair<std::string, BoundReport>> rows;
    std::optional<SpectralSummary> spectrum;
    const auto base = s->log_base == "d" ? LogBase::kDegree : LogBase::kDegreeMinusOne;
    for (const auto& suite : suites) {
      if (suite == "girth") {
        rows.emplace_back("girth", ess_girth_report(g));
        continue;
      }
      for (auto k : ks) {
        if (suite == "main") {
          if (!spectrum && g.regular_degree()) {
            SpectrumOptions opts;
            opts.residual_limit = 0;
            spectrum = markov_spectrum(g, opts);
          }
          auto r = spectral_cycle_bound(g, k, spectrum ? &*spectrum : nullptr, base);
          r.rho_bound.name += " k=" + std::to_string(k);
          r.ramanujan.name += " k=" + std::to_string(k);
          rows.emplace_back("main", r.rho_bound);
          rows.emplace_back("main", r.ramanujan);
        } else if ((s->n * k) % 2) {
          BoundReport r;
          r.name = "returns k=" + std::to_string(k);
          r.hypotheses = {{"nk even", false}};
          r.note = "closed walks of odd length nk do not exist on trees";
          rows.emplace_back("returns", r);
        } else {
          auto r = return_cycle_bound(g, s->n, k);
          r.name += " k=" + std::to_string(k);
          rows.emplace_back("returns", r);
        }
      }
    }
    std::string csv = "suite,name,relation,lhs,value,rhs,margin,verdict\n";
    Json reports = Json::array();
    std::vector<BoundReport> all;
    for (const auto& [suite, r] : rows) {
      csv += suite + ",\"" + r.name + "\",\"" + r.relation + "\"," + csv_number(r.lhs) + "," +
             csv_number(r.value) + "," + csv_number(r.rhs) + "," + csv_number(r.margin) + "," +
             to_string(r.verdict) + "\n";
      auto j = to_json(r);
      j["suite"] = suite;
      reports.push_back(j);
      all.push_back(r);
    }
    Json doc{{"graph", graph_info(g)}, {"suites", suites}, {"k", ks}, {"reports", reports}};
    emit(ctx, s->o, &doc, &csv);
    ctx.code = verdict_code(all);
    if (ctx.code == kNotApplicable) *ctx.err << "note: hypotheses do not hold for at least one check\n";
    if (ctx.code == kError) *ctx.err << "error: at least one inequality failed\n";
  });
}

// ---------------------------------------------------------------- kappa

void setup_kappa(CLI::App& app, Context& ctx) {
  struct Opts {
    std::string in;
    std::size_t x = 0, y = 0, k = 1, mmax = 50;
    double budget = 2e9;
    bool star = false, pk = false;
    Outputs o;
  };
  auto s = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("kappa", "Norm estimates for walk step sets in the fundamental group");
  sub->add_option("--in", s->in, "SGF graph")->required();
  sub->add_option("--x", s->x, "start vertex")->capture_default_str();
  sub->add_option("--y", s->y, "end vertex")->capture_default_str();
  sub->add_option("--k", s->k, "walk length")->capture_default_str();
  sub->add_option("--mmax", s->mmax, "largest m")->capture_default_str();
  sub->add_option("--budget", s->budget, "work budget for the return counts")->capture_default_str();
  sub->add_flag("--star", s->star, "also compute the p_k-weighted geometric mean at x");
  sub->add_flag("--pk", s->pk, "also compute the time-k law of the infinite nullcycle at x");
  add_outputs(sub, s->o, false);
  sub->callback([s, &ctx] {
    auto g = load(s->in);
    const auto x = vertex_arg(g, s->x, "x"), y = vertex_arg(g, s->y, "y");
    auto e = kappa_estimate(g, x, y, s->k, s->mmax, s->budget);
    Json doc;
    doc["graph"] = graph_info(g);
    doc["x"] = x;
    doc["y"] = y;
    doc["k"] = s->k;
    doc["walk_count"] = to_decimal(e.walk_count);
    doc["achieved_m"] = e.achieved_m;
    doc["truncated"] = e.truncated;
    doc["monotone"] = e.monotone;
    doc["kappa_hat"] = e.kappa_hat;
    doc["extrapolated"] = number(e.achieved_m >= 4 ? kappa_extrapolate(e) : NAN);
    Json returns = Json::array();
    for (const auto& r : e.returns) returns.push_back(to_decimal(r));
    doc["returns"] = returns;
    if (s->pk) {
      auto p = p_k_distribution(g, x, s->k);
      doc["p_k"] = {{"n", p.n},
                    {"stabilized", p.stabilized},
                    {"last_change", p.last_change},
                    {"limit_gap", p.limit_gap},
                    {"values", p.values},
                    {"limit", p.limit}};
    }
    if (s->star) {
      auto st = kappa_star(g, x, s->k, s->mmax);
      Json support = Json::array();
      for (const auto& [v, p] : st.support) support.push_back({{"vertex", v}, {"p", p}});
      doc["kappa_star"] = {{"value", st.value}, {"support", support}, {"diagnostic", to_json(st.diagnostic)}};
    }
    emit(ctx, s->o, &doc, nullptr);
  });
}

// ---------------------------------------------------------------- limits

template <class F>
void parallel_for(std::size_t jobs, std::size_t workers, F&& f) {
  workers = std::max<std::size_t>(1, std::min(workers, jobs));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < jobs;) {
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void setup_limits(CLI::App& app, Context& ctx) {
  auto* lim = app.add_subcommand("limits", "Local statistics and random regular fleets");
  lim->require_subcommand(1);

  struct FleetOpts {
    FleetOptions f;
    Outputs o;
  };
  auto s = std::make_shared<FleetOpts>();
  auto* fleet = lim->add_subcommand("fleet", "Random regular graphs: cycles, tree balls, spectral mass");
  fleet->add_option("--d", s->f.d, "degree")->capture_default_str()->check(CLI::Range(3u, 64u));
  fleet->add_option("--sizes", s->f.sizes, "comma list of vertex counts")->delimiter(',')->capture_default_str();
  fleet->add_option("--seeds", s->f.seeds, "graphs per size")->capture_default_str();
  fleet->add_option("--base-seed", s->f.base_seed, "base seed")->capture_default_str();
  fleet->add_option("--planted", s->f.planted_density, "planted triangles per vertex")->capture_default_str();
  fleet->add_option("--radius", s->f.radius, "ball radius for the tree defect")->capture_default_str();
  fleet->add_option("--kmax", s->f.kmax, "largest cycle length")->capture_default_str();
  add_outputs(fleet, s->o, true);
  fleet->callback([s, &ctx] {
    const auto& f = s->f;
    ctx.seeds.push_back(f.base_seed);
    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    for (auto n : f.sizes)
      for (std::size_t i = 0; i < f.seeds; ++i) jobs.emplace_back(n, i);
    std::vector<FleetRow> rows(jobs.size());
    parallel_for(jobs.size(), ctx.workers, [&](std::size_t j) { rows[j] = fleet_row(f, jobs[j].first, jobs[j].second); });
    std::string csv = "d,n,seed,triangles,mass,rho,residual,tree_defect,wasserstein,moment_error";
    for (std::size_t L = 1; L <= f.kmax; ++L) csv += ",cycle_density_" + std::to_string(L);
    csv += "\n";
    for (const auto& r : rows) {
      csv += std::to_string(r.d) + "," + std::to_string(r.n) + "," + std::to_string(r.seed) + "," +
             std::to_string(r.triangles) + "," + csv_number(r.stats.mass) + "," + csv_number(r.stats.rho) + "," +
             csv_number(r.residual) + "," + csv_number(r.stats.tree_defect) + "," +
             csv_number(r.stats.wasserstein) + "," + csv_number(r.stats.moment_error);
      for (double c : r.stats.cycle_density) csv += "," + csv_number(c);
      csv += "\n";
    }
    Json summary = Json::array();
    for (const auto& x : summarize_fleet(rows))
      summary.push_back({{"n", x.n},
                         {"count", x.count},
                         {"mean_mass", number(x.mean_mass)},
                         {"sd_mass", number(x.sd_mass)},
                         {"mean_wasserstein", number(x.mean_wasserstein)},
                         {"mean_tree_defect", number(x.mean_defect)}});
    Json doc{{"d", f.d},           {"sizes", f.sizes},   {"seeds", f.seeds}, {"base_seed", f.base_seed},
             {"planted", f.planted_density}, {"radius", f.radius}, {"kmax", f.kmax}, {"summary", summary}};
    emit(ctx, s->o, &doc, &csv);
  });

  struct HistOpts {
    std::string in;
    std::size_t r = 1;
    Outputs o;
  };
  auto h = std::make_shared<HistOpts>();
  auto* hist = lim->add_subcommand("histogram", "Exact r-ball frequencies");
  hist->add_option("--in", h->in, "SGF graph")->required();
  hist->add_option("--r", h->r, "radius")->capture_default_str();
  add_outputs(hist, h->o, false);
  hist->callback([h, &ctx] {
    auto g = load(h->in);
    auto hs = bs_histogram(g, h->r);
    Json pats = Json::array();
    for (const auto& [canon, count] : hs.counts)
      pats.push_back({{"pattern", canon}, {"count", count}, {"frequency", to_decimal(hs.frequency(canon))}});
    Json doc{{"graph", graph_info(g)}, {"radius", h->r}, {"patterns", pats}};
    emit(ctx, h->o, &doc, nullptr);
  });

  struct EkvOpts {
    std::vector<std::string> in;
    std::size_t r = 2, kmax = 5;
    Outputs o;
  };
  auto e = std::make_shared<EkvOpts>();
  auto* ekv = lim->add_subcommand("diagnostic", "Cycle density, tree defect and Kesten-McKay distance side by side");
  ekv->add_option("--in", e->in, "comma list of SGF graphs, in sequence order")->required()->delimiter(',');
  ekv->add_option("--r", e->r, "ball radius")->capture_default_str();
  ekv->add_option("--kmax", e->kmax, "largest cycle length")->capture_default_str();
  add_outputs(ekv, e->o, true);
  ekv->callback([e, &ctx] {
    std::vector<SerreGraph> gs;
    for (const auto& p : e->in) gs.push_back(load(p));
    auto rep = local_limit_diagnostic(gs, e->r, e->kmax);
    std::string csv = "graph,vertices,cycle_density_sum,tree_defect,wasserstein,mass,moment_error\n";
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
      double c = 0;
      for (double x : row.cycle_density) c += x;
      csv += row.label + "," + std::to_string(row.vertices) + "," + csv_number(c) + "," +
             csv_number(row.tree_defect) + "," + csv_number(row.wasserstein) + "," + csv_number(row.mass) + "," +
             csv_number(row.moment_error) + "\n";
      rows.push_back({{"graph", row.label},
                      {"vertices", row.vertices},
                      {"cycle_density", row.cycle_density},
                      {"tree_defect", row.tree_defect},
                      {"wasserstein", number(row.wasserstein)},
                      {"mass", number(row.mass)},
                      {"rho", row.rho},
                      {"moment_error", number(row.moment_error)}});
    }
    Json doc{{"radius", rep.radius},
             {"kmax", rep.kmax},
             {"rows", rows},
             {"cycles_decreasing", rep.cycles_decreasing},
             {"tree_defect_decreasing", rep.defect_decreasing},
             {"wasserstein_decreasing", rep.wasserstein_decreasing}};
    emit(ctx, e->o, &doc, &csv);
  });

  struct MassOpts {
    std::string in;
    Outputs o;
  };
  auto m = std::make_shared<MassOpts>();
  auto* mass = lim->add_subcommand("mass", "Fraction of eigenvalues inside [-rho(T_d), rho(T_d)]");
  mass->add_option("--in", m->in, "SGF graph")->required();
  add_outputs(mass, m->o, false);
  mass->callback([m, &ctx] {
    auto g = load(m->in);
    Json doc{{"graph", graph_info(g)}, {"mass", number(weakly_ramanujan_mass(g))}};
    emit(ctx, m->o, &doc, nullptr);
  });
}

// ---------------------------------------------------------------- percolation

void setup_percolation(CLI::App& app, Context& ctx) {
  auto* perc = app.add_subcommand("percolation", "Site percolation on Z^2 and cover growth");
  perc->require_subcommand(1);
  struct Opts {
    double p = 0.85;
    std::size_t size = 200, nmax = 40;
    std::uint64_t seed = 0;
    double tail = 0.25;
    std::string policy = "attached";
    bool condition = false;
    Outputs o;
  };
  auto s = std::make_shared<Opts>();
  auto* growth = perc->add_subcommand("growth", "Sphere sizes in the universal cover of the origin's cluster");
  growth->add_option("--p", s->p, "open probability")->required()->check(CLI::Range(0.0, 1.0));
  growth->add_option("--size", s->size, "window side")->capture_default_str()->check(CLI::Range(1, 100000));
  growth->add_option("--seed", s->seed, "seed")->required();
  growth->add_option("--nmax", s->nmax, "largest sphere radius")->capture_default_str();
  growth->add_option("--tail", s->tail, "tail fraction for the lower growth estimate")->capture_default_str();
  growth->add_option("--policy", s->policy, "attached or unfold")
      ->check(CLI::IsMember({"attached", "unfold"}))
      ->capture_default_str();
  growth->add_flag("--condition", s->condition, "redraw until the cluster reaches the window edge");
  add_outputs(growth, s->o, true);
  growth->callback([s, &ctx] {
    ctx.seeds.push_back(s->seed);
    const auto policy = s->policy == "attached" ? LoopPolicy::kAttached : LoopPolicy::kUnfold;
    auto run = s->condition ? conditioned_growth(s->size, s->p, s->seed, s->nmax, s->tail, policy)
                            : percolation_growth(s->size, s->p, s->seed, s->nmax, s->tail, policy);
    const auto& w = run.window;
    const std::size_t clean = w.reaches_boundary ? w.boundary_distance - 1 : SIZE_MAX;
    std::string csv = "n,sphere_size,root,clean\n";
    Json sizes = Json::array();
    for (std::size_t n = 0; n < run.sizes.size(); ++n) {
      double root = n ? std::pow(run.sizes[n].get_d(), 1.0 / static_cast<double>(n)) : 1.0;
      csv += std::to_string(n) + "," + to_decimal(run.sizes[n]) + "," + csv_number(root) + "," +
             (n <= clean ? "1" : "0") + "\n";
      sizes.push_back(to_decimal(run.sizes[n]));
    }
    Json doc;
    doc["p"] = s->p;
    doc["size"] = s->size;
    doc["seed"] = s->seed;
    doc["attempt"] = run.attempt;
    doc["policy"] = s->policy;
    doc["cluster_vertices"] = w.cluster.vertex_count();
    doc["reaches_boundary"] = w.reaches_boundary;
    doc["boundary_distance"] = w.reaches_boundary ? Json(w.boundary_distance) : Json(nullptr);
    doc["estimate"] = {{"value", number(run.estimate.value)},
                       {"from", run.estimate.from},
                       {"to", run.estimate.to},
                       {"boundary_truncated", run.estimate.boundary_truncated}};
    doc["sphere_sizes"] = sizes;
    emit(ctx, s->o, &doc, &csv);
  });
}

// ---------------------------------------------------------------- fixtures

void setup_fixtures(CLI::App& app, Context& ctx) {
  struct Opts {
    std::string dir = "fixtures";
  };
  auto s = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("fixtures", "Write the standard graph fixtures as SGF");
  sub->add_option("--dir", s->dir, "output directory")->capture_default_str();
  sub->callback([s, &ctx] {
    Json index = Json::array();
    for (const auto& g : standard_fixtures()) {
      std::ostringstream os;
      write_sgf(os, g);
      const auto path = (std::filesystem::path(s->dir) / (g.name() + ".sgf")).string();
      index.push_back({{"name", g.name()}, {"path", path}, {"vertices", g.vertex_count()}, {"sha256", sha256_hex(os.str())}});
      ctx.sink.add("fixture", path, os.str());
    }
    Json doc{{"dir", s->dir}, {"fixtures", index}};
    ctx.sink.add("out", (std::filesystem::path(s->dir) / "index.json").string(), doc.dump(2) + "\n");
  });
}

// ---------------------------------------------------------------- replay

void setup_replay(CLI::App& app, Context& ctx) {
  struct Opts {
    std::string manifest;
  };
  auto s = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("replay", "Re-run a manifest and compare output digests");
  sub->add_option("manifest", s->manifest, "manifest file")->required();
  sub->callback([s, &ctx] {
    std::ifstream in(s->manifest);
    if (!in) throw Error("cannot read " + s->manifest);
    Json m;
    try {
      m = Json::parse(in);
    } catch (const std::exception& e) {
      throw Error("malformed manifest " + s->manifest + ": " + e.what());
    }
    auto argv = m.at("argv").get<std::vector<std::string>>();
    std::ostringstream sink_out, sink_err;
    auto again = execute(argv, sink_out, sink_err);
    std::map<std::string, std::string> now;
    for (const auto& a : again.sink.artifacts()) now[a.path] = sha256_hex(a.content);
    bool ok = again.code == m.at("exit_code").get<int>();
    Json rows = Json::array();
    for (const auto& o : m.at("outputs")) {
      const auto path = o.at("path").get<std::string>();
      const auto want = o.at("sha256").get<std::string>();
      const bool same = now.count(path) && now[path] == want;
      ok = ok && same;
      rows.push_back({{"path", path}, {"expected", want}, {"actual", now.count(path) ? now[path] : ""}, {"match", same}});
    }
    Json doc{{"manifest", s->manifest}, {"match", ok}, {"exit_code", again.code}, {"outputs", rows}};
    ctx.sink.add("out", "-", doc.dump(2) + "\n");
    if (!ok) {
      *ctx.err << "error: replay does not reproduce the recorded outputs\n";
      ctx.code = kError;
    }
  });
}

Json parameters_of(const CLI::App* app) {
  Json p = Json::object();
  for (const auto* opt : app->get_options()) {
    const auto name = opt->get_name(false, true);
    if (name == "--help" || name == "-h") continue;
    std::string key = opt->get_lnames().empty() ? name : opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_expected_max() == 0)
        p[key] = true;
      else if (res.size() == 1)
        p[key] = res.front();
      else
        p[key] = res;
    } else if (!opt->get_default_str().empty()) {
      p[key] = opt->get_default_str();
    }
  }
  return p;
}

}  // namespace

Execution execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Execution ex;
  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  CLI::App app{"Random walks, cycles and spectra of regular graphs", "ramanujan"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  std::string manifest_path;
  app.add_option("--manifest", manifest_path, "manifest path (default: next to the first output file)");
  app.add_option("--workers", ctx.workers, "worker threads; results do not depend on this")
      ->capture_default_str()
      ->check(CLI::Range(1, 256));

  setup_treewalk(app, ctx);
  setup_spectrum(app, ctx);
  setup_cogrowth(app, ctx);
  setup_census(app, ctx);
  setup_nullcycle(app, ctx);
  setup_bounds(app, ctx);
  setup_kappa(app, ctx);
  setup_limits(app, ctx);
  setup_percolation(app, ctx);
  setup_fixtures(app, ctx);
  setup_replay(app, ctx);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    ex.code = app.exit(e, o, r) == 0 ? kOk : kError;
    out << o.str();
    err << r.str();
    return ex;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << " (raise the budget or reduce the size)\n";
    ex.code = kError;
    return ex;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    ex.code = kError;
    return ex;
  }

  ex.code = ctx.code;
  ex.sink = std::move(ctx.sink);

  std::string command;
  Json params = Json::object();
  for (const CLI::App* cur = &app;;) {
    auto subs = cur->get_subcommands();
    if (subs.empty()) break;
    cur = subs.front();
    command += (command.empty() ? "" : " ") + cur->get_name();
    const Json own = parameters_of(cur);
    for (const auto& [k, v] : own.items()) params[k] = v;
  }
  Json outputs = Json::array();
  for (const auto& a : ex.sink.artifacts())
    outputs.push_back({{"role", a.role}, {"path", a.path}, {"bytes", a.content.size()}, {"sha256", sha256_hex(a.content)}});
  const char* cache = std::getenv("RAMANUJAN_TABLE_CACHE");
  ex.manifest = Json{{"tool", "ramanujan"},
                     {"version", kToolVersion},
                     {"subcommand", command},
                     {"argv", args},
                     {"parameters", params},
                     {"seeds", ctx.seeds},
                     {"workers", ctx.workers},
                     {"table_cache", {{"dir", cache ? Json(cache) : Json(nullptr)}, {"keys", tree_walk_keys_in_use()}}},
                     {"outputs", outputs},
                     {"exit_code", ex.code}};
  ex.manifest_path = manifest_path;
  if (ex.manifest_path.empty() && command != "replay")
    for (const char* role : {"out", "csv", "fixture"}) {
      for (const auto& a : ex.sink.artifacts())
        if (a.role == role && a.path != "-") {
          ex.manifest_path = a.path + ".manifest.json";
          break;
        }
      if (!ex.manifest_path.empty()) break;
    }
  return ex;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto ex = execute(args, out, err);
  if (ex.manifest.is_null()) return ex.code;
  try {
    for (const auto& a : ex.sink.artifacts())
      if (a.path != "-") {
        auto parent = std::filesystem::path(a.path).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
      }
    ex.sink.flush(out);
    if (!ex.manifest_path.empty()) {
      std::ofstream m(ex.manifest_path);
      if (!m) throw Error("cannot write manifest " + ex.manifest_path);
      m << ex.manifest.dump(2) << "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return ex.code;
}

}  // namespace ramanujan::cli
