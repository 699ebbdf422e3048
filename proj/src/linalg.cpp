#include "ramanujan/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ramanujan/errors.hpp"
#include "ramanujan/random.hpp"

namespace ramanujan {

namespace {

constexpr double kEps = 2.220446049250313e-16;
constexpr int kMaxQlIterations = 60;

// Householder reduction, values only. Works on the upper triangle so that
// the inner loops run along rows. On return d is the diagonal and e[i]
// couples i-1 and i (e[0] = 0).
void tred2_values(DenseMatrix& a, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = a.size();
  for (std::size_t j = 0; j < n; ++j) d[j] = a(j, n - 1);
  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0, h = 0;
    for (std::size_t k = 0; k < i; ++k) scale += std::fabs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = a(j, i - 1);
        a(j, i) = 0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0;
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        const double* rowj = a.row(j);
        g = e[j] + rowj[j] * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += rowj[k] * d[k];
          e[k] += rowj[k] * f;
        }
        e[j] = g;
      }
      f = 0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        double* rowj = a.row(j);
        for (std::size_t k = j; k < i; ++k) rowj[k] -= (f * e[k] + g * d[k]);
        d[j] = rowj[i - 1];
        rowj[i] = 0;
      }
    }
    d[i] = h;
  }
  for (std::size_t j = 0; j < n; ++j) d[j] = a(j, j);
  e[0] = 0;
}

// Householder reduction with accumulated transformations (column form).
void tred2_vectors(DenseMatrix& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.size();
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);
  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0, h = 0;
    for (std::size_t k = 0; k < i; ++k) scale += std::fabs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0;
        v(j, i) = 0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0;
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0;
      }
    }
    d[i] = h;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0;
  }
  v(n - 1, n - 1) = 1;
  e[0] = 0;
}

// Implicit QL on a tridiagonal matrix. e[i] couples i and i+1, e[n-1] = 0.
// If vt is non-null its rows are rotated along (vt holds vectors as rows).
void tql2(std::vector<double>& d, std::vector<double>& e, DenseMatrix* vt) {
  const std::size_t n = d.size();
  if (n == 0) return;
  double f = 0, tst1 = 0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::fabs(e[m]) > kEps * tst1) ++m;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxQlIterations)
          throw ConvergenceError("tridiagonal QL did not converge", std::fabs(e[l]));
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;
        p = d[m];
        double c = 1, c2 = 1, c3 = 1;
        const double el1 = e[l + 1];
        double s = 0, s2 = 0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          if (vt) {
            double* a = vt->row(ii);
            double* b = vt->row(ii + 1);
            const std::size_t cols = vt->size();
            for (std::size_t k = 0; k < cols; ++k) {
              const double hb = b[k];
              b[k] = s * a[k] + c * hb;
              a[k] = c * a[k] - s * hb;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::fabs(e[l]) > kEps * tst1);
    }
    d[l] += f;
    e[l] = 0;
  }
}

std::vector<double> sort_with_rows(std::vector<double> d, DenseMatrix* vt) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return d[a] < d[b]; });
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[order[i]];
  if (vt) {
    const std::size_t n = vt->size();
    DenseMatrix sorted(n);
    for (std::size_t i = 0; i < n; ++i) std::copy_n(vt->row(order[i]), n, sorted.row(i));
    *vt = std::move(sorted);
  }
  return out;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(DenseMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  std::vector<double> d(n), e(n);
  tred2_values(a, d, e);
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0;
  tql2(d, e, nullptr);
  return sort_with_rows(std::move(d), nullptr);
}

EigenSystem symmetric_eigensystem(DenseMatrix a) {
  const std::size_t n = a.size();
  EigenSystem out;
  if (n == 0) return out;
  std::vector<double> d(n), e(n);
  tred2_vectors(a, d, e);
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0;
  DenseMatrix vt(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) vt(i, j) = a(j, i);
  tql2(d, e, &vt);
  out.values = sort_with_rows(std::move(d), &vt);
  out.vectors = std::move(vt);
  return out;
}

std::vector<double> tridiagonal_eigen(std::vector<double> diag, std::vector<double> off,
                                      DenseMatrix* vectors) {
  const std::size_t n = diag.size();
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n && i < off.size(); ++i) e[i] = off[i];
  if (vectors) {
    *vectors = DenseMatrix(n);
    for (std::size_t i = 0; i < n; ++i) (*vectors)(i, i) = 1;
  }
  tql2(diag, e, vectors);
  return sort_with_rows(std::move(diag), vectors);
}

namespace {

void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
  for (const auto& q : basis) {
    const double c = std::inner_product(v.begin(), v.end(), q.begin(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
  }
}

double norm(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

LanczosResult lanczos_extremes(const LinearOperator& op, std::size_t n,
                               const std::vector<std::vector<double>>& deflate, double tol,
                               std::size_t max_iter, std::uint64_t seed) {
  LanczosResult res;
  if (deflate.size() >= n) {
    res.converged = true;
    return res;
  }
  auto rng = make_stream(seed, 0);
  std::vector<double> q(n);
  for (auto& x : q) x = uniform01(rng) - 0.5;
  for (int pass = 0; pass < 2; ++pass) orthogonalize(q, deflate);
  double nq = norm(q);
  if (nq == 0.0) throw ConvergenceError("Lanczos start vector vanished after deflation", 0);
  for (auto& x : q) x /= nq;

  std::vector<std::vector<double>> basis{q};
  std::vector<double> alpha, beta;
  std::vector<double> w(n);
  const std::size_t limit = std::min(max_iter, n - deflate.size());
  for (std::size_t k = 0; k < limit; ++k) {
    op(basis[k], w);
    const double a = std::inner_product(w.begin(), w.end(), basis[k].begin(), 0.0);
    alpha.push_back(a);
    for (std::size_t i = 0; i < n; ++i) w[i] -= a * basis[k][i];
    if (k > 0)
      for (std::size_t i = 0; i < n; ++i) w[i] -= beta[k - 1] * basis[k - 1][i];
    for (int pass = 0; pass < 2; ++pass) {
      orthogonalize(w, deflate);
      orthogonalize(w, basis);
    }
    const double b = norm(w);
    const bool breakdown = b < 1e-13 || k + 1 == n - deflate.size();
    const bool check = breakdown || (k + 1) % 20 == 0 || k + 1 == limit;
    if (check) {
      DenseMatrix s;
      auto theta = tridiagonal_eigen(alpha, beta, &s);
      const std::size_t m = theta.size();
      res.smallest = theta.front();
      res.largest = theta.back();
      res.residual_smallest = breakdown ? 0.0 : std::fabs(b * s(0, m - 1));
      res.residual_largest = breakdown ? 0.0 : std::fabs(b * s(m - 1, m - 1));
      res.iterations = k + 1;
      if (breakdown || (res.residual_smallest < tol && res.residual_largest < tol)) {
        res.converged = true;
        return res;
      }
    }
    beta.push_back(b);
    for (auto& x : w) x /= b;
    basis.push_back(w);
  }
  return res;
}

}  // namespace ramanujan
