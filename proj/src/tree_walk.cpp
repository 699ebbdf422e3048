#include "ramanujan/tree_walk.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "ramanujan/errors.hpp"

namespace ramanujan {

namespace {

const mpz_class& zero() {
  static const mpz_class z = 0;
  return z;
}

}  // namespace

TreeWalkTables::TreeWalkTables(unsigned d, std::size_t nmax) : d_(d), nmax_(nmax) {
  if (d < 2) throw PreconditionError("tree walk tables need d >= 2");
  c_.resize(nmax + 1);
  c_[0] = {1};
  for (std::size_t n = 1; n <= nmax; ++n) {
    auto& row = c_[n];
    const auto& prev = c_[n - 1];
    row.assign(n + 1, 0);
    if (n - 1 >= 1) row[0] = prev[1];
    for (std::size_t k = 1; k <= n; ++k) {
      if ((n + k) % 2) continue;
      row[k] = prev[k - 1] * (k == 1 ? d : d - 1);
      if (k + 1 <= n - 1) row[k] += prev[k + 1];
    }
  }
  fill_per_vertex();
}

void TreeWalkTables::fill_per_vertex() {
  a_.resize(nmax_ + 1);
  for (std::size_t n = 0; n <= nmax_; ++n) {
    a_[n].assign(n + 1, 0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (c_[n][k] == 0) continue;
      auto s = sphere_size(k);
      if (!mpz_divisible_p(c_[n][k].get_mpz_t(), s.get_mpz_t()))
        throw Error("tree walk table: c[n][k] not divisible by the sphere size");
      mpz_divexact(a_[n][k].get_mpz_t(), c_[n][k].get_mpz_t(), s.get_mpz_t());
    }
  }
}

const mpz_class& TreeWalkTables::count(std::size_t n, std::size_t k) const {
  if (n > nmax_) throw PreconditionError("walk length " + std::to_string(n) + " beyond table nmax " +
                                         std::to_string(nmax_));
  return k <= n ? c_[n][k] : zero();
}

const mpz_class& TreeWalkTables::per_vertex(std::size_t n, std::size_t k) const {
  if (n > nmax_) throw PreconditionError("walk length " + std::to_string(n) + " beyond table nmax " +
                                         std::to_string(nmax_));
  return k <= n ? a_[n][k] : zero();
}

mpz_class TreeWalkTables::sphere_size(std::size_t k) const {
  if (k == 0) return 1;
  mpz_class s;
  mpz_ui_pow_ui(s.get_mpz_t(), d_ - 1, k - 1);
  return s * d_;
}

mpq_class TreeWalkTables::return_probability(std::size_t n) const {
  mpz_class dn;
  mpz_ui_pow_ui(dn.get_mpz_t(), d_, n);
  mpq_class r(count(n, 0), dn);
  r.canonicalize();
  return r;
}

void TreeWalkTables::save(std::ostream& out) const {
  out << "treewalk 1 " << d_ << ' ' << nmax_ << '\n';
  for (std::size_t n = 0; n <= nmax_; ++n)
    for (std::size_t k = 0; k <= n; ++k)
      if (c_[n][k] != 0) out << n << ' ' << k << ' ' << c_[n][k].get_str() << '\n';
}

std::unique_ptr<TreeWalkTables> TreeWalkTables::load(std::istream& in) {
  std::string tag;
  int version = 0;
  std::unique_ptr<TreeWalkTables> t(new TreeWalkTables());
  if (!(in >> tag >> version >> t->d_ >> t->nmax_) || tag != "treewalk" || version != 1 ||
      t->d_ < 2)
    return nullptr;
  t->c_.resize(t->nmax_ + 1);
  for (std::size_t n = 0; n <= t->nmax_; ++n) t->c_[n].assign(n + 1, 0);
  std::size_t n = 0, k = 0;
  std::string value;
  while (in >> n >> k >> value) {
    if (n > t->nmax_ || k > n) return nullptr;
    if (t->c_[n][k].set_str(value, 10) != 0) return nullptr;
  }
  // Integrity: row sums must be d^n and the recursion must hold.
  for (std::size_t m = 0; m <= t->nmax_; ++m) {
    mpz_class sum = 0, dn;
    for (const auto& x : t->c_[m]) sum += x;
    mpz_ui_pow_ui(dn.get_mpz_t(), t->d_, m);
    if (sum != dn) return nullptr;
    if (m > 1 && t->c_[m][0] != t->c_[m - 1][1]) return nullptr;
  }
  try {
    t->fill_per_vertex();
  } catch (const Error&) {
    return nullptr;
  }
  return t;
}

std::string tree_walk_cache_key(unsigned d, std::size_t nmax) {
  return "treewalk-v1-d" + std::to_string(d) + "-n" + std::to_string(nmax);
}

namespace {

std::mutex memo_mutex;
std::map<unsigned, std::shared_ptr<const TreeWalkTables>> memo;

}  // namespace

std::vector<std::string> tree_walk_keys_in_use() {
  std::lock_guard<std::mutex> lock(memo_mutex);
  std::vector<std::string> keys;
  for (const auto& [d, t] : memo) keys.push_back(tree_walk_cache_key(d, t->nmax()));
  return keys;
}

std::shared_ptr<const TreeWalkTables> tree_walk_tables(unsigned d, std::size_t nmax) {
  std::lock_guard<std::mutex> lock(memo_mutex);
  auto it = memo.find(d);
  if (it != memo.end() && it->second->nmax() >= nmax) return it->second;

  std::shared_ptr<const TreeWalkTables> tables;
  const char* dir = std::getenv("RAMANUJAN_TABLE_CACHE");
  std::filesystem::path file;
  if (dir && *dir) {
    file = std::filesystem::path(dir) / (tree_walk_cache_key(d, nmax) + ".txt");
    std::ifstream in(file);
    if (in) tables = TreeWalkTables::load(in);
    if (tables && (tables->degree() != d || tables->nmax() < nmax)) tables.reset();
  }
  if (!tables) {
    tables = std::make_shared<TreeWalkTables>(d, nmax);
    if (!file.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(file.parent_path(), ec);
      auto tmp = file;
      tmp += ".tmp";
      {
        std::ofstream out(tmp);
        if (out) tables->save(out);
      }
      std::filesystem::rename(tmp, file, ec);
    }
  }
  memo[d] = tables;
  return tables;
}

mpq_class return_probability(unsigned d, std::size_t n, bool allow_odd) {
  if (n % 2) {
    if (allow_odd) return 0;
    throw PreconditionError("return probability needs even n (got " + std::to_string(n) + ")");
  }
  return tree_walk_tables(d, n)->return_probability(n);
}

double tree_rho(unsigned d) { return 2.0 * std::sqrt(static_cast<double>(d - 1)) / d; }

std::vector<BoundReport> check_return_bounds(unsigned d, std::size_t nmax) {
  if (d < 3) throw PreconditionError("return bounds need d >= 3");
  auto t = tree_walk_tables(d, nmax);
  const mpq_class rho2(4 * (d - 1), d * d);  // rho^2, rational
  std::vector<BoundReport> out;
  mpq_class rho2n = 1;
  for (std::size_t n = 1; n <= nmax; ++n) {
    rho2n *= rho2;
    if (n % 2) continue;
    auto r = t->return_probability(n);
    mpq_class lhs_sq = r * r * mpz_class(n) * mpz_class(n) * mpz_class(n);
    bool lower_ok = mpq_class(4, 9) * rho2n < lhs_sq;
    bool upper_ok = lhs_sq < mpq_class(100) * rho2n;

    BoundReport rep;
    rep.name = "return bounds d=" + std::to_string(d) + " n=" + std::to_string(n);
    rep.relation = "lhs < value < rhs";
    rep.hypotheses = {{"d >= 3", true}, {"n even", true}};
    const double logs = static_cast<double>(n) * std::log(tree_rho(d)) - 1.5 * std::log(double(n));
    rep.value = r.get_d();
    rep.lhs = (2.0 / 3.0) * std::exp(logs);
    rep.rhs = 10.0 * std::exp(logs);
    rep.margin = std::min(std::log(rep.value / rep.lhs), std::log(rep.rhs / rep.value));
    rep.constants = {{"rho", std::to_string(tree_rho(d))}, {"r_n", r.get_str()}};
    settle(rep, lower_ok && upper_ok);
    out.push_back(std::move(rep));
  }
  return out;
}

double kesten_mckay_moment(unsigned d, std::size_t n, double tol) {
  if (d < 3) throw PreconditionError("Kesten-McKay moments need d >= 3");
  const long double rho = 2.0L * std::sqrt(static_cast<long double>(d - 1)) / d;
  const long double pi = std::numbers::pi_v<long double>;
  // t = rho cos(theta) turns the density into a smooth periodic integrand.
  auto f = [&](long double theta) {
    long double c = std::cos(theta), s = std::sin(theta);
    return s * s * std::pow(c, static_cast<long double>(n)) / (1 - rho * rho * c * c);
  };
  const long double scale = d * std::pow(rho, static_cast<long double>(n + 2)) / (2 * pi);
  std::size_t m = 16;
  long double sum = 0;
  for (std::size_t i = 1; i < m; ++i) sum += f(pi * i / m);
  long double prev = scale * sum * pi / m;
  long double err = 0;
  for (; m < (std::size_t{1} << 22);) {
    for (std::size_t i = 1; i < 2 * m; i += 2) sum += f(pi * i / (2 * m));
    m *= 2;
    long double cur = scale * sum * pi / m;
    err = std::fabs(cur - prev);
    if (err <= tol && m > n + 16) return static_cast<double>(cur);
    prev = cur;
  }
  throw ConvergenceError("Kesten-McKay quadrature did not converge", static_cast<double>(err));
}

ExcursionTables::ExcursionTables(std::size_t nmax) : nmax_(nmax) {
  w_.resize(nmax + 1);
  wp_.resize(nmax + 1);
  for (std::size_t n = 0; n <= nmax; ++n) {
    w_[n].assign(n + 1, 0);
    wp_[n].assign(n + 1, 0);
    for (std::size_t k = n % 2; k <= n; k += 2)
      mpz_bin_uiui(w_[n][k].get_mpz_t(), n, (n + k) / 2);
    for (std::size_t k = 1; k <= n; ++k) {
      if ((n + k) % 2) continue;
      mpz_class x = w_[n][k] * static_cast<unsigned long>(k);
      mpz_divexact_ui(wp_[n][k].get_mpz_t(), x.get_mpz_t(), n);
    }
  }
  wp_[0][0] = 1;
  for (std::size_t n = 2; n <= nmax; n += 2) {
    mpz_class x = w_[n - 2][0] * 2;
    mpz_divexact_ui(wp_[n][0].get_mpz_t(), x.get_mpz_t(), n);
  }
}

const mpz_class& ExcursionTables::paths(std::size_t n, std::size_t k) const {
  if (n > nmax_) throw PreconditionError("excursion table too short");
  return k <= n ? w_[n][k] : zero();
}

const mpz_class& ExcursionTables::positive_paths(std::size_t n, std::size_t k) const {
  if (n > nmax_) throw PreconditionError("excursion table too short");
  return k <= n ? wp_[n][k] : zero();
}

mpq_class excursion_visits_z(const ExcursionTables& t, std::size_t k, std::size_t n) {
  if (k < 1) throw PreconditionError("excursion level must be >= 1");
  if (n < 2 || n % 2) throw PreconditionError("excursion length must be even and >= 2");
  mpz_class total = 0;
  for (std::size_t m = k; m + k <= n; ++m)
    total += t.positive_paths(m, k) * t.positive_paths(n - m, k);
  mpq_class v(total, t.excursions(n));
  v.canonicalize();
  return v;
}

mpq_class excursion_visits_z(std::size_t k, std::size_t n) {
  return excursion_visits_z(ExcursionTables(n), k, n);
}

mpq_class bridge_distance_probability(const TreeWalkTables& t, std::size_t n, std::size_t j,
                                      std::size_t k) {
  if (n % 2) throw PreconditionError("bridge length must be even");
  if (j > n) return 0;
  mpq_class p(t.count(j, k) * t.count(n - j, k), t.sphere_size(k) * t.count(n, 0));
  p.canonicalize();
  return p;
}

mpq_class bridge_visit_expectation(const TreeWalkTables& t, std::size_t k, std::size_t n) {
  if (n % 2) throw PreconditionError("bridge length must be even");
  if (k > n) throw PreconditionError("distance beyond bridge length");
  mpz_class total = 0;
  for (std::size_t j = k; j + k <= n; ++j) total += t.count(j, k) * t.count(n - j, k);
  mpq_class v(total, t.sphere_size(k) * t.count(n, 0));
  v.canonicalize();
  return v;
}

mpq_class bridge_visit_expectation(unsigned d, std::size_t k, std::size_t n) {
  return bridge_visit_expectation(*tree_walk_tables(d, n), k, n);
}

namespace {

void require_dist(unsigned d, std::size_t dist) {
  if (dist < 1) throw PreconditionError("bridge ratio needs |x| >= 1");
  if (d < 2) throw PreconditionError("bridge ratio needs d >= 2");
}

}  // namespace

mpq_class infinite_bridge_ratio(unsigned d, std::size_t dist) {
  require_dist(d, dist);
  long D = d, x = static_cast<long>(dist);
  mpq_class r(mpz_class((D - 1) * (D + (D - 2) * (x + 1))), mpz_class(D + (D - 2) * (x - 1)));
  r.canonicalize();
  return r;
}

mpq_class single_child_ratio_limit(unsigned d, std::size_t dist) {
  require_dist(d, dist);
  long D = d, x = static_cast<long>(dist);
  mpq_class r(mpz_class(D + (D - 2) * (x + 1)), mpz_class((D - 1) * (D + (D - 2) * (x - 1))));
  r.canonicalize();
  return r;
}

mpq_class radial_ratio_limit(unsigned d, std::size_t dist) {
  require_dist(d, dist);
  long D = d, x = static_cast<long>(dist);
  mpq_class r(mpz_class(D + (D - 2) * (x + 1)), mpz_class(D + (D - 2) * (x - 1)));
  r.canonicalize();
  return r;
}

mpq_class finite_bridge_ratio(const TreeWalkTables& t, std::size_t m, std::size_t dist) {
  require_dist(t.degree(), dist);
  const auto& down = t.per_vertex(m, dist - 1);
  if (down == 0) throw PreconditionError("parent cannot reach the root in m steps (parity)");
  mpq_class r(t.per_vertex(m, dist + 1), down);
  r.canonicalize();
  return r;
}

std::vector<long double> walk_to_root_profile(unsigned d, std::size_t m) {
  if (d < 2) throw PreconditionError("d >= 2 required");
  std::vector<long double> cur(m + 2, 0.0L), next(m + 2, 0.0L);
  cur[0] = 1.0L;
  for (std::size_t n = 1; n <= m; ++n) {
    long double peak = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      long double v = 0;
      if (k == 0)
        v = d * cur[1];
      else
        v = cur[k - 1] + (k + 1 <= n - 1 ? (d - 1) * cur[k + 1] : 0.0L);
      next[k] = v;
      peak = std::max(peak, v);
    }
    for (std::size_t k = 0; k <= n; ++k) cur[k] = next[k] / peak;
  }
  cur.resize(m + 1);
  return cur;
}

long double bridge_ratio_float(unsigned d, std::size_t dist, std::size_t m) {
  require_dist(d, dist);
  auto a = walk_to_root_profile(d, m);
  if (dist + 1 > m || a[dist - 1] == 0) throw PreconditionError("parity or length mismatch");
  return a[dist + 1] / a[dist - 1];
}

}  // namespace ramanujan
