#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace oracle {

QMatrix identity(std::size_t n) {
  QMatrix m(n, std::vector<Q>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMatrix mul(const QMatrix& a, const QMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMatrix c(n, std::vector<Q>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
  return c;
}

QMatrix add(const QMatrix& a, const QMatrix& b) {
  QMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
  return c;
}

QMatrix scale(const Q& s, const QMatrix& a) {
  QMatrix c = a;
  for (auto& row : c)
    for (auto& v : row) v *= s;
  return c;
}

namespace {

bool is_zero(const QMatrix& a) {
  for (const auto& row : a)
    for (const auto& v : row)
      if (v != 0) return false;
  return true;
}

}  // namespace

QMatrix exp_nilpotent(const QMatrix& n) {
  QMatrix sum = identity(n.size()), term = identity(n.size());
  for (long k = 1;; ++k) {
    term = scale(Q(1, k), mul(term, n));
    if (is_zero(term)) return sum;
    sum = add(sum, term);
  }
}

QMatrix log_unipotent(const QMatrix& u) {
  QMatrix m = add(u, scale(-1, identity(u.size())));
  QMatrix sum(u.size(), std::vector<Q>(u.size(), 0)), power = identity(u.size());
  for (long k = 1;; ++k) {
    power = mul(power, m);
    if (is_zero(power)) return sum;
    sum = add(sum, scale(Q(k % 2 ? 1 : -1, k), power));
  }
}

QMatrix bch(const QMatrix& a, const QMatrix& b) { return log_unipotent(mul(exp_nilpotent(a), exp_nilpotent(b))); }

// ---------------------------------------------------------------- free series

void FreeSeries::prune() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second == 0 || it->first.size() > degree)
      it = terms.erase(it);
    else
      ++it;
  }
}

FreeSeries FreeSeries::operator+(const FreeSeries& o) const {
  FreeSeries r = *this;
  r.degree = std::min(degree, o.degree);
  for (const auto& [w, c] : o.terms) r.terms[w] += c;
  r.prune();
  return r;
}

FreeSeries FreeSeries::operator*(const FreeSeries& o) const {
  FreeSeries r;
  r.degree = std::min(degree, o.degree);
  for (const auto& [w1, c1] : terms)
    for (const auto& [w2, c2] : o.terms)
      if (w1.size() + w2.size() <= r.degree) r.terms[w1 + w2] += c1 * c2;
  r.prune();
  return r;
}

FreeSeries FreeSeries::scaled(const Q& c) const {
  FreeSeries r = *this;
  for (auto& [w, v] : r.terms) v *= c;
  r.prune();
  return r;
}

FreeSeries letter(char c, unsigned degree) {
  FreeSeries s;
  s.degree = degree;
  s.terms[std::string(1, c)] = 1;
  return s;
}

FreeSeries exp_series(const FreeSeries& a) {
  FreeSeries sum, term;
  sum.degree = term.degree = a.degree;
  sum.terms[""] = 1;
  term.terms[""] = 1;
  for (long k = 1; k <= static_cast<long>(a.degree); ++k) {
    term = (term * a).scaled(Q(1, k));
    sum = sum + term;
  }
  return sum;
}

FreeSeries log_series(const FreeSeries& a) {
  FreeSeries m = a;
  m.terms.erase("");
  FreeSeries sum, power;
  sum.degree = power.degree = a.degree;
  power.terms[""] = 1;
  for (long k = 1; k <= static_cast<long>(a.degree); ++k) {
    power = power * m;
    sum = sum + power.scaled(Q(k % 2 ? 1 : -1, k));
  }
  return sum;
}

FreeSeries bch_series(const FreeSeries& a, const FreeSeries& b) { return log_series(exp_series(a) * exp_series(b)); }

FreeSeries free_bch(unsigned degree) { return bch_series(letter('x', degree), letter('y', degree)); }

FreeSeries nested_bracket(const std::string& word, unsigned degree) {
  FreeSeries v = letter(word.back(), degree);
  for (std::size_t i = word.size() - 1; i-- > 0;) {
    FreeSeries l = letter(word[i], degree);
    v = l * v + (v * l).scaled(-1);
  }
  return v;
}

// ---------------------------------------------------------------- finite fields

namespace {

std::vector<long> apply(const GFTensor& f, const std::vector<long>& x, const std::vector<long>& y) {
  std::vector<long> out(f.m, 0);
  for (std::size_t i = 0; i < f.n; ++i)
    if (x[i])
      for (std::size_t j = 0; j < f.n; ++j)
        if (y[j])
          for (std::size_t k = 0; k < f.m; ++k) out[k] = (out[k] + x[i] * y[j] % f.p * f.at(i, j, k)) % f.p;
  return out;
}

std::vector<std::vector<long>> all_vectors(long p, std::size_t n) {
  std::vector<std::vector<long>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<long>> next;
    for (const auto& v : out)
      for (long a = 0; a < p; ++a) {
        auto w = v;
        w.push_back(a);
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<long> column(const std::vector<long>& a, std::size_t n, std::size_t j) {
  std::vector<long> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i * n + j];
  return c;
}

std::vector<long> mat_mul(const std::vector<long>& a, const std::vector<long>& b, std::size_t n, long p) {
  std::vector<long> c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] = (c[i * n + j] + a[i * n + k] * b[k * n + j]) % p;
  return c;
}

}  // namespace

std::vector<std::vector<long>> brute_scalar_ring(const GFTensor& f) {
  const std::size_t n = f.n;
  auto mats = all_vectors(f.p, n * n);
  auto basis = [&](std::size_t i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    return e;
  };
  std::vector<std::vector<long>> sym;
  for (const auto& a : mats) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        ok = apply(f, column(a, n, i), basis(j)) == apply(f, basis(i), column(a, n, j));
    if (ok) sym.push_back(a);
  }
  std::vector<std::vector<long>> center;
  for (const auto& a : sym) {
    bool ok = true;
    for (const auto& b : sym) {
      if (mat_mul(a, b, n, f.p) != mat_mul(b, a, n, f.p)) {
        ok = false;
        break;
      }
    }
    if (ok) center.push_back(a);
  }
  // relations: coefficient arrays c with sum c_ij f(b_i, b_j) = 0
  std::vector<std::vector<long>> relations;
  for (const auto& c : all_vectors(f.p, n * n)) {
    std::vector<long> s(f.m, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < f.m; ++k) s[k] = (s[k] + c[i * n + j] * f.at(i, j, k)) % f.p;
    if (std::all_of(s.begin(), s.end(), [](long v) { return v == 0; })) relations.push_back(c);
  }
  std::vector<std::vector<long>> out;
  for (const auto& a : center) {
    bool ok = true;
    for (const auto& c : relations) {
      std::vector<long> s(f.m, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (!c[i * n + j]) continue;
          auto v = apply(f, column(a, n, i), basis(j));
          for (std::size_t k = 0; k < f.m; ++k) s[k] = (s[k] + c[i * n + j] * v[k]) % f.p;
        }
      if (!std::all_of(s.begin(), s.end(), [](long v) { return v == 0; })) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(a);
  }
  return out;
}

std::size_t brute_two_sided_kernel(const GFTensor& f) {
  auto all = all_vectors(f.p, f.n);
  std::vector<long> zero(f.m, 0);
  std::size_t count = 0;
  for (const auto& x : all) {
    bool ok = true;
    for (const auto& y : all) {
      if (apply(f, x, y) != zero || apply(f, y, x) != zero) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

std::size_t brute_nilpotents(const GFTensor& a) {
  std::size_t count = 0;
  std::vector<long> zero(a.n, 0);
  for (const auto& x : all_vectors(a.p, a.n)) {
    auto power = x;
    for (std::size_t k = 0; k <= a.n && power != zero; ++k) power = apply(a, power, x);
    if (power == zero) ++count;
  }
  return count;
}

std::size_t brute_idempotents(const GFTensor& a) {
  std::size_t count = 0;
  for (const auto& x : all_vectors(a.p, a.n))
    if (apply(a, x, x) == x) ++count;
  return count;
}

// ---------------------------------------------------------------- integers

namespace {

mpz_class det(std::vector<std::vector<mpz_class>> m) {
  // Bareiss fraction-free elimination
  const std::size_t n = m.size();
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return n == 0 ? mpz_class(1) : sign * m[n - 1][n - 1];
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (cur.size() == k) {
    visit(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, visit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<mpz_class> smith_invariants(const std::vector<std::vector<mpz_class>>& a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    mpz_class g = 0;
    std::vector<std::size_t> rs, cs;
    subsets(rows, k, 0, rs, [&](const std::vector<std::size_t>& r) {
      subsets(cols, k, 0, cs, [&](const std::vector<std::size_t>& c) {
        std::vector<std::vector<mpz_class>> minor(k, std::vector<mpz_class>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) minor[i][j] = a[r[i]][c[j]];
        mpz_class d = det(minor);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace oracle
