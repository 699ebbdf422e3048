#include "ramanujan/bounds.hpp"

#include <cmath>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "ramanujan/census.hpp"
#include "ramanujan/errors.hpp"
#include "ramanujan/nullcycle.hpp"
#include "ramanujan/patterns.hpp"
#include "ramanujan/random.hpp"
#include "ramanujan/tree_walk.hpp"

namespace ramanujan {

namespace {

mpz_class pow_ui(unsigned long base, std::size_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

// log of a positive big integer without overflowing a double.
double log_mpz(const mpz_class& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

unsigned degree_of(const SerreGraph& g) {
  auto d = g.regular_degree();
  if (!d) throw PreconditionError("graph is not regular");
  return static_cast<unsigned>(*d);
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

}  // namespace

mpz_class nu_k(unsigned d, std::size_t k) {
  if (d < 3 || k < 1) throw PreconditionError("nu_k needs d >= 3, k >= 1");
  return mpz_class(200'000'000'000UL) * pow_ui(2, 4 * k) * pow_ui(d - 1, 3 * k) * mpz_class(k);
}

mpq_class c_k(unsigned d, std::size_t k) {
  if (d < 3 || k < 1) throw PreconditionError("c_k needs d >= 3, k >= 1");
  if (k == 1) return mpq_class(1, 16);
  mpq_class r(1, pow_ui(d - 1, k) * 2);
  r.canonicalize();
  return r;
}

mpz_class ell_k(unsigned d, std::size_t k) {
  if (d < 3 || k < 1) throw PreconditionError("ell needs d >= 3, k >= 1");
  return mpz_class(600'000'000UL) * pow_ui(4 * d - 4, k);
}

SpectralCycleReport spectral_cycle_bound(const SerreGraph& g, std::size_t k, const SpectralSummary* spectrum,
                                 LogBase base) {
  const unsigned d = degree_of(g);
  SpectralCycleReport r;
  SpectralSummary local;
  if (!spectrum) {
    local = markov_spectrum(g);
    spectrum = &local;
  }
  r.rho = spectrum->rho;
  r.mean_gamma = cycle_census(g, k).density;
  const double size = static_cast<double>(g.vertex_count());
  const double nu = nu_k(std::max(d, 3u), k).get_d();
  const double lb = base == LogBase::kDegree ? std::log(static_cast<double>(d))
                                             : std::log(static_cast<double>(d - 1));
  const double logn = std::log(size) / lb;
  const double penalty = (1.5 * std::log(logn) + 6) / logn;
  const double trho = tree_rho(d);

  auto& b = r.rho_bound;
  b.name = "rho lower bound";
  b.relation = "lhs >= rhs";
  b.hypotheses = {{"d >= 3", d >= 3}, {"|G| >= 8d", g.vertex_count() >= 8u * d}};
  b.lhs = r.rho / trho;
  b.rhs = 1 + r.mean_gamma / nu - penalty;
  b.tolerance = spectrum->residual / trho;
  b.margin = b.lhs - b.rhs;
  b.constants = {{"k", std::to_string(k)},
                 {"nu_k", nu_k(std::max(d, 3u), k).get_str()},
                 {"E gamma_k", fmt(r.mean_gamma)},
                 {"log base", base == LogBase::kDegree ? "d" : "d-1"}};
  settle(b, b.margin + b.tolerance >= 0);

  auto& c = r.ramanujan;
  c.name = "ramanujan cycle bound";
  c.relation = "lhs <= rhs";
  c.hypotheses = b.hypotheses;
  c.hypotheses.push_back({"rho <= rho(T_d)", r.rho <= trho + spectrum->residual});
  c.lhs = r.mean_gamma;
  c.rhs = nu * penalty;
  c.margin = c.rhs - c.lhs;
  c.constants = b.constants;
  settle(c, c.margin >= 0);
  return r;
}

namespace {

template <class Count>
Count half_walk_square_sum(const SerreGraph& g, VertexId o, std::size_t h) {
  std::unordered_map<VertexId, std::size_t> index{{o, 0}};
  std::vector<VertexId> verts{o};
  std::deque<std::pair<VertexId, std::size_t>> queue{{o, 0}};
  while (!queue.empty()) {
    auto [u, du] = queue.front();
    queue.pop_front();
    if (du == h) continue;
    for (auto e : g.out_edges(u)) {
      auto w = g.edge(e).target;
      if (index.emplace(w, verts.size()).second) {
        verts.push_back(w);
        queue.push_back({w, du + 1});
      }
    }
  }
  std::vector<Count> cur(verts.size(), Count(0)), next(verts.size());
  cur[0] = 1;
  for (std::size_t s = 0; s < h; ++s) {
    for (auto& x : next) x = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (cur[i] == 0) continue;
      for (auto e : g.out_edges(verts[i])) {
        auto it = index.find(g.edge(e).target);
        if (it != index.end()) next[it->second] += cur[i];
      }
    }
    std::swap(cur, next);
  }
  Count total = 0;
  for (const auto& x : cur) total += x * x;
  return total;
}

}  // namespace

mpz_class closed_walks_at(const SerreGraph& g, VertexId o, std::size_t length) {
  if (length % 2) throw PreconditionError("length must be even");
  if (o >= g.vertex_count()) throw PreconditionError("root out of range");
  const double bits = static_cast<double>(length) * std::log2(static_cast<double>(std::max<std::size_t>(g.max_degree(), 1)));
  if (bits < 126) {
    const unsigned __int128 x = half_walk_square_sum<unsigned __int128>(g, o, length / 2);
    mpz_class r = static_cast<unsigned long>(x >> 64);
    r <<= 64;
    r += static_cast<unsigned long>(x & ~std::uint64_t{0});
    return r;
  }
  return half_walk_square_sum<mpz_class>(g, o, length / 2);
}

BoundReport return_cycle_bound(const SerreGraph& g, std::size_t n, std::size_t k,
                             std::optional<double> mean_gamma) {
  const std::size_t len = n * k;
  if (len % 2) throw PreconditionError("nk must be even");
  const unsigned d = degree_of(g);
  BoundReport b;
  b.name = "return lower bound";
  b.relation = "lhs >= rhs";
  b.hypotheses = {{"d >= 3", d >= 3}, {"n >= 4", n >= 4}, {"|G| >= (nk)^2", g.vertex_count() >= len * len}};
  if (!b.hypotheses_hold()) {
    settle(b, false);
    return b;
  }
  const double gamma = mean_gamma ? *mean_gamma : cycle_census(g, k).density;
  double sum = 0;
  const double scale = static_cast<double>(len) * std::log(static_cast<double>(d));
  for (VertexId o = 0; o < g.vertex_count(); ++o) sum += log_mpz(closed_walks_at(g, o, len)) - scale;
  const double nk = static_cast<double>(len);
  b.lhs = sum / static_cast<double>(g.vertex_count());
  b.rhs = nk * std::log(tree_rho(d)) - 1.5 * std::log(nk) - 4 + nk * gamma / nu_k(d, k).get_d();
  b.tolerance = 1e-9 * std::fabs(b.lhs);
  b.margin = b.lhs - b.rhs;
  b.constants = {{"n", std::to_string(n)}, {"k", std::to_string(k)}, {"E gamma_k", fmt(gamma)}};
  settle(b, b.margin + b.tolerance >= 0);
  return b;
}

DistanceBound distance_bound(unsigned d, std::size_t radius, std::size_t k) {
  if (d < 3) throw PreconditionError("distance bound needs d >= 3");
  DistanceBound r;
  r.exponent = radius + k / 2 + 1;  // floor(R + k/2 + 1) for integer R
  r.tree_rho = tree_rho(d);
  r.gap = mpq_class(d - 2, mpz_class(d) * pow_ui(d - 1, 2 * r.exponent));
  r.gap.canonicalize();
  r.value = r.tree_rho + r.gap.get_d();
  return r;
}

EssentialGirthBound ess_girth_bound(double graph_size, unsigned d, double alpha, double beta,
                                    double eps) {
  if (d < 3) throw PreconditionError("essential girth bound needs d >= 3");
  if (alpha <= 0 || beta <= 0 || eps <= 0) throw PreconditionError("alpha, beta, eps must be positive");
  if (graph_size <= std::exp(1.0)) throw PreconditionError("|G| must exceed e");
  EssentialGirthBound r;
  r.beta_max = std::min(alpha, 1.0) / (6 * std::log(static_cast<double>(d - 1)) + 8 * std::log(2.0));
  if (!(beta + eps < r.beta_max)) throw PreconditionError("beta + eps must be below (alpha ^ 1)/(6 log(d-1) + 8 log 2)");
  r.k = beta * std::log(std::log(graph_size));
  r.envelope = std::pow(std::log(graph_size), -eps);
  return r;
}

BoundReport ess_girth_report(const SerreGraph& g) {
  const unsigned d = degree_of(g);
  BoundReport b;
  b.name = "essential girth";
  b.relation = "fraction of tree balls; observed constant c";
  b.hypotheses = {{"d >= 3", d >= 3}, {"|G| > e", g.vertex_count() > 2}};
  if (!b.hypotheses_hold()) {
    settle(b, false);
    return b;
  }
  const double size = static_cast<double>(g.vertex_count());
  const double beta = 1.0 / (30 * std::log(static_cast<double>(d - 1)));
  const double radius = beta * std::log(std::log(size));
  const auto r = static_cast<std::size_t>(std::floor(radius));
  std::size_t trees = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) trees += ball(g, v, r, false).is_tree;
  b.value = static_cast<double>(trees) / size;
  b.lhs = b.value;
  b.rhs = (1 - b.value) * std::pow(std::log(size), beta);
  b.margin = 0;
  b.constants = {{"beta", fmt(beta)}, {"radius", fmt(radius)}, {"r", std::to_string(r)}};
  b.note = "rhs is the observed c; the constant is unspecified";
  b.verdict = Verdict::kInformational;
  return b;
}

NullcycleInequality nullcycle_inequality(const SerreGraph& g, VertexId o, std::size_t n,
                                         std::size_t k, std::size_t ell, std::size_t samples,
                                         std::uint64_t seed, std::uint64_t enum_limit) {
  const unsigned d = degree_of(g);
  const std::size_t len = n * k;
  if (len % 2) throw PreconditionError("nk must be even");
  if (ell == 0) throw PreconditionError("ell must be positive");
  NullcycleInequality r;
  r.closed_walks = closed_walks_at(g, o, len);
  const double c = c_k(std::max(d, 3u), k).get_d();
  const double l = static_cast<double>(ell);
  const double walks = std::pow(static_cast<double>(d), static_cast<double>(len));
  if (walks <= static_cast<double>(enum_limit)) {
    double sum = 0;
    for (const auto& w : enumerate_nullcycles(g, o, len))
      sum += std::exp(c * static_cast<double>(chi_statistic(g, w, k, ell)) / l);
    r.rhs = sum / 14;
    r.exact = true;
  } else {
    if (samples == 0) throw PreconditionError("samples must be positive");
    NullcycleSampler sampler(g, o, len);
    const double count = tree_walk_tables(d, len)->count(len, 0).get_d();
    auto rng = make_stream(seed);
    double s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      const double x = std::exp(c * static_cast<double>(chi_statistic(g, sampler.sample(rng), k, ell)) / l);
      s1 += x;
      s2 += x * x;
    }
    const double m = static_cast<double>(samples);
    const double mean = s1 / m;
    r.rhs = count * mean / 14;
    r.standard_error = count / 14 * std::sqrt(std::max(0.0, s2 / m - mean * mean) / m);
  }
  auto& b = r.check;
  b.name = "cycles and nullcycles";
  b.relation = "lhs >= rhs";
  b.hypotheses = {{"d >= 3", d >= 3}};
  b.lhs = r.closed_walks.get_d();
  b.rhs = r.rhs;
  b.tolerance = 3 * r.standard_error;
  b.margin = b.lhs - b.rhs;
  b.constants = {{"c_k", c_k(std::max(d, 3u), k).get_str()}, {"ell", std::to_string(ell)}};
  settle(b, b.margin + b.tolerance >= 0);
  return r;
}

}  // namespace ramanujan
