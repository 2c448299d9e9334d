#pragma once

// Brute-force and series oracles used by the tests and by selftest. They
// share no code with the library: plain GMP rationals, explicit
// enumeration, truncated power series.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oracle {

using Q = mpq_class;
using QMatrix = std::vector<std::vector<Q>>;

QMatrix identity(std::size_t n);
QMatrix mul(const QMatrix& a, const QMatrix& b);
QMatrix add(const QMatrix& a, const QMatrix& b);
QMatrix scale(const Q& c, const QMatrix& a);
/// exp of a nilpotent matrix, summed until the powers vanish.
QMatrix exp_nilpotent(const QMatrix& n);
/// log of a unipotent matrix.
QMatrix log_unipotent(const QMatrix& u);
/// log(exp a * exp b) for nilpotent a, b.
QMatrix bch(const QMatrix& a, const QMatrix& b);

/// Noncommutative polynomials in x and y truncated above a degree.
struct FreeSeries {
  unsigned degree = 0;
  std::map<std::string, Q> terms;  // word -> coefficient, "" is the constant

  FreeSeries operator+(const FreeSeries& o) const;
  FreeSeries operator*(const FreeSeries& o) const;
  FreeSeries scaled(const Q& c) const;
  void prune();
};

FreeSeries letter(char c, unsigned degree);
FreeSeries exp_series(const FreeSeries& a);
FreeSeries log_series(const FreeSeries& a);  // a has constant term 1
/// log(e^a e^b) for series without constant term.
FreeSeries bch_series(const FreeSeries& a, const FreeSeries& b);
/// log(e^x e^y) truncated at the degree.
FreeSeries free_bch(unsigned degree);
/// Expansion of a right-nested bracket word such as "xxy" = (x,(x,y)).
FreeSeries nested_bracket(const std::string& word, unsigned degree);

/// Finite-field tensor f(b_i, b_j)_k over GF(p), entries in [0, p).
struct GFTensor {
  long p = 2;
  std::size_t n = 0;  // dim M
  std::size_t m = 0;  // dim N
  std::vector<long> t;

  long at(std::size_t i, std::size_t j, std::size_t k) const { return t[(i * n + j) * m + k]; }
};

/// All A (row-major, n*n entries) in the largest scalar ring: symmetric,
/// central among the symmetric ones, and respecting every linear relation
/// among the products. Everything is enumerated.
std::vector<std::vector<long>> brute_scalar_ring(const GFTensor& f);
/// Number of x with f(x, M) = f(M, x) = 0.
std::size_t brute_two_sided_kernel(const GFTensor& f);
/// Number of nilpotent and of idempotent elements of a commutative GF(p)
/// algebra given by its multiplication tensor (n == m).
std::size_t brute_nilpotents(const GFTensor& algebra);
std::size_t brute_idempotents(const GFTensor& algebra);

/// Determinantal divisors d_k = gcd of the k x k minors; the Smith
/// invariants are d_k / d_{k-1}.
std::vector<mpz_class> smith_invariants(const std::vector<std::vector<mpz_class>>& a);

}  // namespace oracle
