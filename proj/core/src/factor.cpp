#include <algorithm>
#include <map>
#include <set>

#include "scalarkit/poly.hpp"

namespace scalarkit {

namespace {

constexpr std::uint64_t kFactorSeed = 0x5ca1ab1eULL;

bool is_finite_field(const Domain& d) {
  return d.kind() == DomainKind::PrimeField ||
         (d.kind() == DomainKind::Extension && d.characteristic() != 0);
}

bool is_one(const Poly& p) { return p.degree() == 0 && p.leading().is_one(); }

void sort_factors(std::vector<PolyFactor>& fs) {
  std::sort(fs.begin(), fs.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
    const auto& ca = a.factor.coefficients();
    const auto& cb = b.factor.coefficients();
    if (ca != cb)
      return std::lexicographical_compare(ca.rbegin(), ca.rend(), cb.rbegin(), cb.rend());
    return a.multiplicity < b.multiplicity;
  });
}

// ------------------------------------------------------------ finite fields

Integer field_order(const Domain& d) { return *d.order(); }

// p-th root of a polynomial whose exponents are all multiples of p.
Poly pth_root(const Poly& f) {
  const Domain& d = f.domain();
  const Integer p = d.characteristic();
  const unsigned long pu = p.get_ui();
  Integer root_exp = field_order(d) / p;  // a^(q/p) is the p-th root in GF(q)
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < f.coefficients().size(); i += pu) c.push_back(f.coefficients()[i].pow(root_exp));
  return Poly(d, std::move(c));
}

std::vector<PolyFactor> squarefree_finite(const Poly& f) {
  std::vector<PolyFactor> out;
  const unsigned p = static_cast<unsigned>(f.domain().characteristic().get_ui());
  Poly df = f.derivative();
  if (df.is_zero()) {
    for (auto& pf : squarefree_finite(pth_root(f))) out.push_back({pf.factor, pf.multiplicity * p});
    return out;
  }
  Poly c = gcd(f, df);
  Poly w = f / c;
  unsigned i = 1;
  while (!is_one(w)) {
    Poly y = gcd(w, c);
    Poly z = (w / y).monic();
    if (z.degree() > 0) out.push_back({z, i});
    w = y;
    c = (c / y).monic();
    ++i;
  }
  if (!is_one(c) && c.degree() > 0) {
    for (auto& pf : squarefree_finite(pth_root(c))) out.push_back({pf.factor, pf.multiplicity * p});
  }
  return out;
}

std::vector<PolyFactor> squarefree_char0(const Poly& f) {
  std::vector<PolyFactor> out;
  Poly df = f.derivative();
  Poly b = gcd(f, df);
  Poly c = (f / b).monic();
  Poly d = (df / b) - c.derivative();
  unsigned i = 1;
  while (!is_one(c)) {
    Poly a = gcd(c, d);
    if (a.degree() > 0) out.push_back({a, i});
    c = (c / a).monic();
    d = (d / a) - c.derivative();
    ++i;
  }
  return out;
}

Poly random_poly(const Domain& d, int below_degree, Rng& rng) {
  std::vector<Scalar> c;
  for (int i = 0; i < below_degree; ++i) c.push_back(rng.scalar(d));
  return Poly(d, std::move(c));
}

// Split a squarefree product of irreducibles all of degree `deg`.
void equal_degree_split(const Poly& g, int deg, Rng& rng, std::vector<Poly>& out) {
  if (g.degree() == deg) {
    out.push_back(g.monic());
    return;
  }
  const Domain& d = g.domain();
  const Integer q = field_order(d);
  Integer qd;
  mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(deg));
  const bool even = d.characteristic() == 2;
  const Poly one = Poly::constant(Scalar::one(d));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Poly a = random_poly(d, g.degree(), rng);
    if (a.degree() < 1) continue;
    Poly b(d);
    if (!even) {
      b = powmod(a, (qd - 1) / 2, g) - one;
    } else {
      // Absolute trace to GF(2): a + a^2 + ... + a^(2^(k*deg - 1)).
      std::size_t steps = d.degree() * static_cast<std::size_t>(deg);
      Poly t = a % g;
      Poly acc = t;
      for (std::size_t i = 1; i < steps; ++i) {
        t = (t * t) % g;
        acc = acc + t;
      }
      b = acc;
    }
    Poly u = gcd(b, g);
    if (u.degree() > 0 && u.degree() < g.degree()) {
      equal_degree_split(u, deg, rng, out);
      equal_degree_split((g / u).monic(), deg, rng, out);
      return;
    }
  }
  fail(ErrorCode::ProbeExhausted, "equal-degree splitting did not converge for " + g.to_string());
}

std::vector<Poly> factor_squarefree_finite(const Poly& f, Rng& rng) {
  std::vector<Poly> out;
  const Domain& d = f.domain();
  const Integer q = field_order(d);
  Poly rest = f.monic();
  Poly xpoly = Poly::x(d);
  Poly h = xpoly % rest;
  int i = 1;
  while (rest.degree() >= 2 * i) {
    h = powmod(h, q, rest);
    Poly g = gcd(h - xpoly, rest);
    if (g.degree() > 0) {
      equal_degree_split(g, i, rng, out);
      rest = (rest / g).monic();
      h = h % rest;
    }
    ++i;
  }
  if (rest.degree() > 0) out.push_back(rest);
  return out;
}

Factorization factor_finite(const Poly& p) {
  Rng rng(kFactorSeed);
  Factorization result{p.leading(), {}};
  for (const auto& sq : squarefree_finite(p.monic())) {
    for (auto& g : factor_squarefree_finite(sq.factor, rng)) result.factors.push_back({g, sq.multiplicity});
  }
  return result;
}

// ------------------------------------------------------------ rationals

Integer lcm_denominators(const std::vector<Scalar>& c) {
  Integer l = 1;
  for (const auto& s : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.value().get_den().get_mpz_t());
  return l;
}

// Primitive integer coefficient vector proportional to a rational polynomial.
std::vector<Integer> primitive_integer(const Poly& f) {
  Integer l = lcm_denominators(f.coefficients());
  std::vector<Integer> out;
  Integer content = 0;
  for (const auto& s : f.coefficients()) {
    Rational v = s.value() * l;
    out.push_back(v.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
  }
  if (content != 0)
    for (auto& v : out) v /= content;
  if (!out.empty() && out.back() < 0)
    for (auto& v : out) v = -v;
  return out;
}

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  if (n == 0) return {};
  std::vector<std::pair<Integer, unsigned>> primes;
  Integer m = n;
  std::uint64_t steps = 0;
  for (Integer d = 2; d * d <= m; ++d) {
    if (++steps > 5'000'000) fail(ErrorCode::UnsupportedDegree, "coefficient " + n.get_str() + " too large to enumerate divisors");
    unsigned e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    if (e) primes.push_back({d, e});
  }
  if (m > 1) primes.push_back({m, 1});
  std::vector<Integer> divs{1};
  for (const auto& [pr, e] : primes) {
    std::size_t count = divs.size();
    Integer pw = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pw *= pr;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pw);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<Scalar> rational_roots(const Poly& f) {
  const Domain& q = f.domain();
  std::vector<Scalar> roots;
  std::vector<Integer> g = primitive_integer(f);
  std::size_t low = 0;
  while (low < g.size() && g[low] == 0) ++low;
  if (low > 0) roots.push_back(Scalar::zero(q));
  if (low + 1 >= g.size()) return roots;
  std::set<Rational> seen;
  for (const auto& num : positive_divisors(g[low])) {
    for (const auto& den : positive_divisors(g.back())) {
      for (int sign : {1, -1}) {
        Rational r(num * sign, den);
        r.canonicalize();
        if (!seen.insert(r).second) continue;
        Scalar s(q, r);
        if (f.evaluate(s).is_zero()) roots.push_back(s);
      }
    }
  }
  return roots;
}

// Quadratic factor of a monic quartic over Q without rational roots.
std::optional<std::pair<Poly, Poly>> quartic_quadratic_split(const Poly& h) {
  const Domain& q = h.domain();
  Integer den = lcm_denominators(h.coefficients());
  // H(y) = den^4 h(y/den) is monic with integer coefficients.
  std::vector<Integer> c(5);
  Integer pw = 1;
  for (int k = 4; k >= 0; --k) {
    Rational v = h.coeff(static_cast<std::size_t>(k)).value() * Rational(pw);
    c[static_cast<std::size_t>(k)] = v.get_num();
    pw *= den;
  }
  const Integer &c3 = c[3], &c2 = c[2], &c1 = c[1], &c0 = c[0];
  auto make = [&](const Integer& a, const Integer& b) {
    // y^2 + a y + b  ->  x^2 + (a/den) x + b/den^2
    return Poly::from_rationals(q, {Rational(b, den * den), Rational(a, den), Rational(1)});
  };
  for (const auto& absb : positive_divisors(c0)) {
    for (int sign : {1, -1}) {
      Integer b = absb * sign;
      Integer d = c0 / b;
      if (b != d) {
        Integer numer = c1 - b * c3;
        Integer denom = d - b;
        if (numer % denom != 0) continue;
        Integer a = numer / denom;
        Integer cc = c3 - a;
        if (a * cc + b + d != c2) continue;
        Poly f1 = make(a, b), f2 = make(cc, d);
        return std::make_pair(f1.monic(), f2.monic());
      }
      if (b * c3 != c1) continue;
      // a + c = c3, a c = c2 - 2b: integer roots of t^2 - c3 t + (c2 - 2b).
      Integer disc = c3 * c3 - 4 * (c2 - 2 * b);
      if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) continue;
      Integer s = sqrt(disc);
      if ((c3 + s) % 2 != 0) continue;
      Integer a = (c3 + s) / 2;
      Poly f1 = make(a, b), f2 = make(c3 - a, d);
      return std::make_pair(f1.monic(), f2.monic());
    }
  }
  return std::nullopt;
}

// Certifies irreducibility over Q from factor degree patterns mod small primes.
bool degree_pattern_irreducible(const Poly& h) {
  const int n = h.degree();
  std::vector<Integer> g = primitive_integer(h);
  std::vector<bool> possible(static_cast<std::size_t>(n), true);
  possible[0] = false;
  int used = 0;
  for (unsigned long p = 2; p < 400 && used < 16; ++p) {
    if (!is_probable_prime(Integer(p))) continue;
    if (g.back() % p == 0) continue;
    Domain fp = Domain::prime_field(Integer(p));
    std::vector<Rational> coeffs;
    for (const auto& v : g) coeffs.emplace_back(v);
    Poly hp = Poly::from_rationals(fp, coeffs);
    if (gcd(hp, hp.derivative()).degree() > 0) continue;
    ++used;
    Rng rng(kFactorSeed + p);
    std::vector<int> degs;
    for (const auto& f : factor_squarefree_finite(hp, rng)) degs.push_back(f.degree());
    std::vector<bool> sums(static_cast<std::size_t>(n) + 1, false);
    sums[0] = true;
    for (int dgs : degs)
      for (int s = n; s >= dgs; --s)
        if (sums[static_cast<std::size_t>(s - dgs)]) sums[static_cast<std::size_t>(s)] = true;
    bool any = false;
    for (int k = 1; k < n; ++k) {
      possible[static_cast<std::size_t>(k)] = possible[static_cast<std::size_t>(k)] && sums[static_cast<std::size_t>(k)];
      any = any || possible[static_cast<std::size_t>(k)];
    }
    if (!any) return true;
  }
  return false;
}

std::vector<Poly> factor_squarefree_rational(Poly g) {
  std::vector<Poly> out;
  for (const auto& r : rational_roots(g)) {
    Poly lin = Poly::linear(r);
    out.push_back(lin);
    g = g / lin;
  }
  g = g.monic();
  if (g.degree() <= 0) return out;
  if (g.degree() <= 3) {
    out.push_back(g);
    return out;
  }
  if (g.degree() == 4) {
    if (auto split = quartic_quadratic_split(g)) {
      out.push_back(split->first);
      out.push_back(split->second);
    } else {
      out.push_back(g);
    }
    return out;
  }
  if (degree_pattern_irreducible(g)) {
    out.push_back(g);
    return out;
  }
  fail(ErrorCode::UnsupportedDegree, "cannot decide factorization of degree-" + std::to_string(g.degree()) +
                                         " polynomial " + g.to_string() + " over Q");
}

Factorization factor_rational(const Poly& p) {
  Factorization result{p.leading(), {}};
  for (const auto& sq : squarefree_char0(p.monic())) {
    for (auto& g : factor_squarefree_rational(sq.factor)) result.factors.push_back({g, sq.multiplicity});
  }
  return result;
}

// ------------------------------------------------------------ extensions of Q

Rational rational_det(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

// N_{K/Q}(b) as the determinant of multiplication by b.
Rational element_norm(const Scalar& b) {
  const Domain& k = b.domain();
  const std::size_t d = k.degree();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  Scalar basis = Scalar::one(k);
  Scalar a = Scalar::generator(k);
  for (std::size_t j = 0; j < d; ++j) {
    Scalar col = b * basis;
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coefficients()[i];
    basis *= a;
  }
  return rational_det(std::move(m));
}

// Norm of a polynomial over Q(a), recovered by interpolation.
Poly poly_norm(const Poly& f) {
  const Domain& k = f.domain();
  const Domain q = k.base();
  const std::size_t deg = static_cast<std::size_t>(f.degree()) * k.degree();
  std::vector<Rational> xs, ys;
  for (std::size_t i = 0; i <= deg; ++i) {
    Rational x0(static_cast<long>(i));
    xs.push_back(x0);
    ys.push_back(element_norm(f.evaluate(Scalar(k, x0))));
  }
  // Newton divided differences.
  std::vector<Rational> coef = ys;
  for (std::size_t j = 1; j <= deg; ++j)
    for (std::size_t i = deg; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
  Poly result = Poly::constant(Scalar(q, coef[deg]));
  for (std::size_t i = deg; i-- > 0;) {
    result = result * Poly::from_rationals(q, {-xs[i], Rational(1)}) + Poly::constant(Scalar(q, coef[i]));
  }
  return result;
}

Poly embed_rational_poly(const Poly& p, const Domain& k) {
  std::vector<Scalar> c;
  for (const auto& s : p.coefficients()) c.emplace_back(k, s.value());
  return Poly(k, std::move(c));
}

std::vector<Poly> trager_split(const Poly& g) {
  if (g.degree() <= 1) return {g};
  const Domain& k = g.domain();
  const Scalar a = Scalar::generator(k);
  for (long s : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L}) {
    Scalar sa = a * Scalar(k, s);
    Poly shifted = g.compose(Poly(k, {-sa, Scalar::one(k)}));
    Poly n = poly_norm(shifted);
    if (gcd(n, n.derivative()).degree() > 0) continue;
    Factorization fn = factor_rational(n);
    if (fn.factors.size() == 1) return {g};
    std::vector<Poly> out;
    Poly back(k, {sa, Scalar::one(k)});
    for (const auto& pf : fn.factors) {
      Poly u = gcd(shifted, embed_rational_poly(pf.factor, k));
      if (u.degree() > 0) out.push_back(u.compose(back).monic());
    }
    return out;
  }
  fail(ErrorCode::UnsupportedDegree, "no squarefree norm found for " + g.to_string());
}

Factorization factor_extension_q(const Poly& p) {
  Factorization result{p.leading(), {}};
  for (const auto& sq : squarefree_char0(p.monic())) {
    for (auto& g : trager_split(sq.factor)) result.factors.push_back({g, sq.multiplicity});
  }
  return result;
}

}  // namespace

std::vector<PolyFactor> squarefree_decomposition(const Poly& p) {
  if (!p.domain().is_field()) fail(ErrorCode::NonFieldDomain, "squarefree decomposition needs a field");
  if (p.degree() < 1) return {};
  auto out = is_finite_field(p.domain()) ? squarefree_finite(p.monic()) : squarefree_char0(p.monic());
  sort_factors(out);
  return out;
}

Factorization poly_factor(const Poly& p) {
  const Domain& d = p.domain();
  if (!d.is_field())
    fail(ErrorCode::UnsupportedDomain, "polynomial factorization over " + d.to_string() + " is not supported");
  if (p.degree() < 1) fail(ErrorCode::InvalidStructure, "poly_factor needs degree >= 1, got " + p.to_string());
  Factorization f = is_finite_field(d)             ? factor_finite(p)
                    : d.kind() == DomainKind::Rationals ? factor_rational(p)
                                                        : factor_extension_q(p);
  // Merge repeated factors (possible after recursive p-th roots).
  std::map<std::string, std::size_t> index;
  std::vector<PolyFactor> merged;
  for (auto& pf : f.factors) {
    auto key = pf.factor.to_string();
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, merged.size());
      merged.push_back(pf);
    } else {
      merged[it->second].multiplicity += pf.multiplicity;
    }
  }
  sort_factors(merged);
  f.factors = std::move(merged);
  return f;
}

Poly expand(const Factorization& f) {
  Poly out = Poly::constant(f.unit);
  for (const auto& pf : f.factors)
    for (unsigned i = 0; i < pf.multiplicity; ++i) out = out * pf.factor;
  return out;
}

bool is_irreducible(const Poly& p) {
  if (p.degree() < 1) return false;
  if (p.degree() == 1) return true;
  auto f = poly_factor(p);
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

std::vector<Scalar> roots_in_field(const Poly& p) {
  std::vector<Scalar> roots;
  if (p.degree() < 1) return roots;
  for (const auto& pf : poly_factor(p).factors)
    if (pf.factor.degree() == 1) roots.push_back(-pf.factor.coeff(0));
  return roots;
}

}  // namespace scalarkit
