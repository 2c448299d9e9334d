#include "selftest.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "document.hpp"
#include "oracles.hpp"
#include "pipelines.hpp"
#include "scalarkit/malcev.hpp"

namespace scalarkit::cli {

const std::vector<FixtureExpectation>& shipped_fixtures() {
  static const std::vector<FixtureExpectation> fixtures = {
      {"h3.json", ""},
      {"h3-plus-abelian.json", ""},
      {"h3-h3-q.json", ""},
      {"free-class3.json", ""},
      {"z-nosplit.json", "foundation_addition"},
      {"gf2-diagonal.json", ""},
      {"q-x2-2-squared.json", ""},
      {"q-x2-x.json", ""},
      {"q-x2-1.json", ""},
      {"q-x3.json", ""},
      {"gf2-x2-1.json", ""},
      {"alternating-q2.json", ""},
      {"alternating-q2-sum.json", ""},
      {"gf2-field4.json", ""},
      {"gf3-dual-numbers.json", ""},
      {"gf27.json", ""},
      {"zero-map.json", ""},
      {"mixed-module.json", ""},
      {"free-z-module.json", "divisible_bounded_split"},
  };
  return fixtures;
}

namespace {

constexpr std::size_t kMaxListedFailures = 10;

struct Suite {
  explicit Suite(std::string n) : name(std::move(n)) {}
  std::string name;
  std::size_t checks = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;
  std::vector<std::string> missing;  // fixtures, all listed

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok)
      ++passed;
    else if (failures.size() < kMaxListedFailures)
      failures.push_back(what);
  }

  Json json() const {
    Json j = Json::object();
    j["name"] = name;
    j["checks"] = checks;
    j["passed"] = passed;
    j["result"] = passed == checks ? "pass" : "fail";
    if (!missing.empty()) j["missing_fixtures"] = missing;
    if (!failures.empty()) j["failures"] = failures;
    return j;
  }
};

template <class F>
void guarded(Suite& s, const std::string& what, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    s.check(false, what + ": " + e.what());
  }
}

std::size_t power(std::size_t p, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= p;
  return r;
}

// Largest scalar ring against full enumeration of End(M).
Suite scalar_ring_suite(SelftestLevel level) {
  Suite s("scalar_ring_enumeration");
  Rng rng(2024);
  std::vector<std::pair<long, int>> plan = {{2L, 20}};
  if (level == SelftestLevel::Full) plan = {{2L, 30}, {3L, 24}};
  for (auto [p, count] : plan) {
    Domain d = Domain::prime_field(p);
    int done = 0;
    while (done < count) {
      std::size_t n = 1 + rng.below(3), m = 1 + rng.below(2);
      oracle::GFTensor g{p, n, m, {}};
      std::vector<std::vector<Vector>> table(n, std::vector<Vector>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < m; ++k) {
            long v = rng.below(3) == 0 ? static_cast<long>(rng.below(static_cast<std::uint64_t>(p))) : 0;
            g.t.push_back(v);
            table[i][j].emplace_back(d, Rational(v));
          }
      if (oracle::brute_two_sided_kernel(g) != 1) continue;
      ++done;
      const std::string tag = "GF(" + std::to_string(p) + ") instance " + std::to_string(done);
      guarded(s, tag, [&] {
        bilinear::BilinearMap f(modules::ModuleDesc::vector_space(d, n), modules::ModuleDesc::vector_space(d, m), table);
        auto report = scalar_rings::p_of_f(f);
        auto brute = oracle::brute_scalar_ring(g);
        s.check(brute.size() == power(static_cast<std::size_t>(p), report.algebra.dim()), tag + ": size of P(f)");
        bool all = true;
        for (const auto& a : brute) {
          Matrix mat(d, n, n);
          for (std::size_t i = 0; i < n * n; ++i) mat(i / n, i % n) = Scalar(d, Rational(a[i]));
          all = all && report.algebra.contains(mat);
        }
        s.check(all, tag + ": enumerated elements lie in P(f)");
        s.check(scalar_rings::certify_bilinear(f, report), tag + ": bilinearity certificate");
      });
    }
  }
  return s;
}

// U m V = D checked by multiplying back, with invariants from minors.
Suite smith_suite(SelftestLevel level) {
  Suite s("snf_remultiplication");
  Rng rng(77);
  Domain z = Domain::integers();
  const int count = level == SelftestLevel::Quick ? 40 : 150;
  for (int t = 0; t < count; ++t) {
    std::size_t r = 1 + rng.below(4), c = 1 + rng.below(4);
    Matrix m(z, r, c);
    std::vector<std::vector<mpz_class>> a(r, std::vector<mpz_class>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        long v = rng.range(-9, 9);
        m(i, j) = Scalar(z, v);
        a[i][j] = v;
      }
    const std::string tag = "matrix " + std::to_string(t + 1);
    guarded(s, tag, [&] {
      auto snf = smith_normal_form(m);
      s.check(snf.U * m * snf.V == snf.D, tag + ": U m V = D");
      s.check(abs(integer_determinant(snf.U)) == 1 && abs(integer_determinant(snf.V)) == 1, tag + ": unimodular");
      auto inv = oracle::smith_invariants(a);
      bool diagonal = true;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
          if (i == j) {
            mpz_class expect = i < inv.size() ? mpz_class(abs(inv[i])) : mpz_class(0);
            diagonal = diagonal && abs(snf.D(i, j).value().get_num()) == expect;
          } else {
            diagonal = diagonal && snf.D(i, j).is_zero();
          }
        }
      s.check(diagonal, tag + ": invariants match the determinantal divisors");
    });
  }
  return s;
}

rings::RingPresentation lie_table(std::size_t n, const std::vector<std::tuple<int, int, int>>& brackets) {
  Domain q = Domain::rationals();
  std::vector<std::vector<Vector>> t(n, std::vector<Vector>(n, zero_vector(q, n)));
  for (auto [i, j, k] : brackets) {
    t[i][j][k] = Scalar::one(q);
    t[j][i][k] = -Scalar::one(q);
  }
  return rings::RingPresentation(modules::ModuleDesc::vector_space(q, n), t);
}

Vector random_rational(Rng& rng, std::size_t n) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(Domain::rationals(), rng.rational(5));
  return v;
}

// bch against log(exp X exp Y) for unitriangular matrices and free series.
Suite bch_suite(SelftestLevel level) {
  Suite s("bch_matrix_oracle");
  guarded(s, "h3", [&] {
    auto h = std::make_shared<const malcev::NilpotentLieAlgebra>(malcev::verify_nilpotent_lie(lie_table(3, {{0, 1, 2}})));
    auto matrix = [](const Vector& v) {
      oracle::QMatrix m(3, std::vector<oracle::Q>(3, 0));
      m[0][1] = v[0].value();
      m[1][2] = v[1].value();
      m[0][2] = v[2].value();
      return m;
    };
    Rng rng(200);
    const int count = level == SelftestLevel::Quick ? 50 : 200;
    for (int t = 0; t < count; ++t) {
      Vector a = random_rational(rng, 3), b = random_rational(rng, 3);
      s.check(matrix(malcev::bch(*h, a, b)) == oracle::bch(matrix(a), matrix(b)), "h3 pair " + std::to_string(t + 1));
    }
  });
  if (level == SelftestLevel::Quick) return s;
  guarded(s, "free class 3", [&] {
    auto f = std::make_shared<const malcev::NilpotentLieAlgebra>(
        malcev::verify_nilpotent_lie(lie_table(5, {{0, 1, 2}, {0, 2, 3}, {1, 2, 4}})));
    auto series = [](const Vector& v) {
      static const char* words[] = {"x", "y", "xy", "xxy", "yxy"};
      oracle::FreeSeries out;
      out.degree = 3;
      for (std::size_t i = 0; i < 5; ++i) out = out + oracle::nested_bracket(words[i], 3).scaled(v[i].value());
      return out;
    };
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
      Vector a = random_rational(rng, 5), b = random_rational(rng, 5);
      s.check(series(malcev::bch(*f, a, b)).terms == oracle::bch_series(series(a), series(b)).terms,
              "free class 3 pair " + std::to_string(t + 1));
    }
  });
  return s;
}

// Idempotent and nilpotent counts of GF(p)[x]/(m) by enumeration.
Suite local_algebra_suite(SelftestLevel level) {
  Suite s("local_algebra_enumeration");
  std::vector<long> primes = {2};
  if (level == SelftestLevel::Full) primes.push_back(3);
  for (long p : primes) {
    Domain d = Domain::prime_field(p);
    for (std::size_t deg = 1; deg <= 3; ++deg) {
      std::size_t polys = power(static_cast<std::size_t>(p), deg);
      for (std::size_t code = 0; code < polys; ++code) {
        std::vector<Rational> c;
        std::size_t x = code;
        for (std::size_t i = 0; i < deg; ++i, x /= static_cast<std::size_t>(p))
          c.emplace_back(static_cast<long>(x % static_cast<std::size_t>(p)));
        c.emplace_back(1);
        Poly m = Poly::from_rationals(d, c);
        const std::string tag = "GF(" + std::to_string(p) + ")[x]/(" + m.to_string() + ")";
        guarded(s, tag, [&] {
          auto alg = artinian::CommutativeAlgebra::polynomial_quotient(m);
          oracle::GFTensor g{p, deg, deg, {}};
          for (std::size_t i = 0; i < deg; ++i)
            for (std::size_t j = 0; j < deg; ++j)
              for (std::size_t k = 0; k < deg; ++k) g.t.push_back(alg.table()[i][j][k].value().get_num().get_si());
          auto factors = artinian::local_decomposition(alg);
          s.check(oracle::brute_idempotents(g) == power(2, factors.size()), tag + ": idempotent count");
          s.check(oracle::brute_nilpotents(g) == power(static_cast<std::size_t>(p), artinian::radical(alg).size()),
                  tag + ": nilpotent count");
          Vector sum = alg.zero();
          for (const auto& lf : factors) sum = add(sum, lf.idempotent);
          s.check(sum == alg.one(), tag + ": idempotents sum to 1");
        });
      }
    }
  }
  return s;
}

Suite fixture_suite(const std::string& dir) {
  Suite s("fixtures");
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) s.check(false, "fixture directory not found");
  for (const auto& fx : shipped_fixtures()) {
    fs::path path = fs::path(dir) / fx.file;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      ++s.checks;
      s.missing.push_back(fx.file);
      continue;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    guarded(s, fx.file, [&] {
      InputDocument doc = parse_document(buf.str());
      std::string once = dump_document(doc);
      InputDocument again = parse_document(once);
      s.check(again == doc && dump_document(again) == once, fx.file + ": parse, serialize, parse round trip");
      std::string failed;
      try {
        analyze(doc, Options{});
      } catch (const PipelineError& e) {
        failed = e.stage();
      }
      s.check(failed == fx.failing_stage, fx.file + ": pipeline outcome" +
                                              (failed.empty() ? std::string(" (succeeded)") : " (failed at " + failed + ")"));
    });
  }
  return s;
}

}  // namespace

Json selftest(SelftestLevel level, const std::string& fixture_dir) {
  std::vector<Suite> suites;
  suites.push_back(scalar_ring_suite(level));
  suites.push_back(smith_suite(level));
  suites.push_back(bch_suite(level));
  suites.push_back(local_algebra_suite(level));
  suites.push_back(fixture_suite(fixture_dir));
  Json report = Json::object();
  report["command"] = "selftest";
  report["level"] = level == SelftestLevel::Quick ? "quick" : "full";
  Json list = Json::array();
  std::size_t checks = 0, passed = 0;
  for (const auto& s : suites) {
    list.push_back(s.json());
    checks += s.checks;
    passed += s.passed;
  }
  report["suites"] = list;
  report["checks"] = checks;
  report["passed"] = passed;
  report["result"] = checks == passed ? "pass" : "fail";
  return report;
}

bool selftest_passed(const Json& report) { return report.value("result", "") == "pass"; }

}  // namespace scalarkit::cli
