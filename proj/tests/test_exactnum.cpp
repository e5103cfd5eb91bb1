#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "momkit/algebraic.hpp"
#include "momkit/intpoly.hpp"

using namespace momkit;

TEST_CASE("rational parsing and canonical form") {
  CHECK(to_string(parse_rational("4/6")) == "2/3");
  CHECK(to_string(parse_rational("-4/6")) == "-2/3");
  CHECK(to_string(parse_rational("5")) == "5");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational(""));
}

TEST_CASE("log bounds enclose known values") {
  Rational lo, hi;
  log_bounds(Rational(2), 40, lo, hi);
  // ln 2 = 0.69314718...
  CHECK(lo < Rational(693148, 1000000));
  CHECK(hi > Rational(693147, 1000000));
  CHECK(hi - lo < Rational(1, 1000000));
  log_bounds(Rational(1), 30, lo, hi);
  CHECK(lo <= 0);
  CHECK(hi >= 0);
  log_bounds(Rational(3, 2), 40, lo, hi);  // 0.405465
  CHECK(lo < Rational(405466, 1000000));
  CHECK(hi > Rational(405465, 1000000));
}

TEST_CASE("sqrt bounds") {
  Rational lo, hi;
  sqrt_bounds(Rational(2), 40, lo, hi);
  CHECK(lo * lo <= 2);
  CHECK(hi * hi >= 2);
  CHECK(hi - lo < Rational(1, 1 << 30));
}

TEST_CASE("intpoly arithmetic basics") {
  IntPoly p{1, 2, 3};    // 3x^2 + 2x + 1
  IntPoly q{-1, 1};      // x - 1
  CHECK((p * q).to_string() == "3x^3 - x^2 - x - 1");
  CHECK(p.eval(Integer(2)) == 17);
  CHECK(p.derivative().to_string() == "6x + 2");
  CHECK(IntPoly{0, 0, 0}.is_zero());
  CHECK(p.degree() == 2);
}

TEST_CASE("divide_exact and divides") {
  IntPoly p{-1, 0, 1};  // x^2 - 1
  IntPoly a{1, 1};      // x + 1
  IntPoly b{-1, 1};     // x - 1
  CHECK(divide_exact(p, a) == b);
  CHECK(divides(a, p));
  CHECK(!divides(IntPoly{1, 1, 1}, p));
}

TEST_CASE("gcd and squarefree machinery") {
  IntPoly a{-1, 0, 1};          // (x-1)(x+1)
  IntPoly b{1, -2, 1};          // (x-1)^2
  CHECK(gcd(a, b) == IntPoly{-1, 1});
  IntPoly p = b * IntPoly{3, 1};  // (x-1)^2 (x+3)
  auto dec = squarefree_decomposition(p);
  REQUIRE(dec.size() == 2);
  CHECK(dec[0].first == IntPoly{3, 1});
  CHECK(dec[0].second == 1);
  CHECK(dec[1].first == IntPoly{-1, 1});
  CHECK(dec[1].second == 2);
  CHECK(squarefree_part(p) == IntPoly{3, 1} * IntPoly{-1, 1});
}

TEST_CASE("resultant frozen examples") {
  // res(x-2, x-3) = -1 with the Sylvester convention (p rows first)
  CHECK(resultant(IntPoly{-2, 1}, IntPoly{-3, 1}) == -1);
  CHECK(resultant(IntPoly{-2, 0, 1}, IntPoly{-2, 0, 1}) == 0);
  CHECK(resultant(IntPoly{1, 0, 1}, IntPoly{-1, 1}) == 2);
}

TEST_CASE("resultant vanishes iff common root") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Integer> pc(1 + rng() % 4), qc(1 + rng() % 4);
    for (auto& c : pc) c = coef(rng);
    for (auto& c : qc) c = coef(rng);
    pc.push_back(1 + (rng() % 3));
    qc.push_back(1 + (rng() % 3));
    IntPoly p{std::move(pc)}, q{std::move(qc)};
    bool res_zero = resultant(p, q) == 0;
    bool share = gcd(p, q).degree() >= 1;
    CHECK(res_zero == share);
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == IntPoly{-1, 1});
  CHECK(cyclotomic(2) == IntPoly{1, 1});
  CHECK(cyclotomic(3) == IntPoly{1, 1, 1});
  CHECK(cyclotomic(4) == IntPoly{1, 0, 1});
  CHECK(cyclotomic(8) == IntPoly{1, 0, 0, 0, 1});
  CHECK(cyclotomic(12) == IntPoly{1, 0, -1, 0, 1});
}

TEST_CASE("cyclotomic_order spec examples") {
  CHECK(cyclotomic_order(IntPoly{1, 1, 1}) == 3u);
  CHECK(cyclotomic_order(IntPoly{-1, 1}) == 1u);
  CHECK(cyclotomic_order(IntPoly{-1, -1, 1}) == std::nullopt);  // golden ratio poly
  CHECK_THROWS_WITH(cyclotomic_order(IntPoly{-1, 0, 1}), "requires irreducible polynomial");
  CHECK(cyclotomic_order(IntPoly{1, 0, 1}) == 4u);
}

TEST_CASE("cyclotomic_order(p)=n implies p | x^n - 1") {
  for (unsigned n : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 10u, 12u}) {
    IntPoly phi = cyclotomic(n);
    auto ord = cyclotomic_order(phi);
    REQUIRE(ord == n);
    std::vector<Integer> xn(n + 1, Integer(0));
    xn[0] = -1;
    xn[n] = 1;
    CHECK(divides(phi, IntPoly{std::move(xn)}));
  }
}

TEST_CASE("power sums and composed operations") {
  IntPoly p{-2, 0, 1};  // roots ± sqrt 2
  auto s = power_sums(p, 4);
  CHECK(s[0] == 0);
  CHECK(s[1] == 4);
  CHECK(s[2] == 0);
  CHECK(s[3] == 8);
  // composed product of (x^2-2) with itself: roots {2, -2, -2, 2} -> (x^2-4)^2
  IntPoly cp = composed_product(p, p);
  CHECK(divides(IntPoly{-4, 0, 1}, cp));
  CHECK(cp.degree() == 4);
  // composed power k=2: roots {2, 2} -> (x-2)^2
  IntPoly c2 = composed_power(p, 2);
  CHECK(c2.canonical() == IntPoly{4, -4, 1});
  // composed sum of (x-2) and (x-3): root 5
  IntPoly cs = composed_sum(IntPoly{-2, 1}, IntPoly{-3, 1});
  CHECK(cs.canonical() == IntPoly{-5, 1});
  // composed difference of (x^2-2) with itself: roots {0,0, ±2sqrt2}
  IntPoly cd = composed_difference(p, p);
  CHECK(cd.eval(Integer(0)) == 0);
  CHECK(divides(IntPoly{-8, 0, 1}, cd));  // x^2 - 8
}

TEST_CASE("mod-p irreducibility proof") {
  CHECK(irreducible_mod_prime_proof(IntPoly{-1, -1, 1}));  // x^2-x-1
  CHECK(irreducible_mod_prime_proof(IntPoly{1, 1, 1}));
  CHECK(!irreducible_mod_prime_proof(IntPoly{-1, 0, 1}));  // reducible stays reducible
  CHECK(irreducible_mod_prime_proof(IntPoly{-2, 0, 1}));
  CHECK(irreducible_mod_prime_proof(IntPoly{2, 2, 0, 1}));  // Eisenstein cubic
}

TEST_CASE("isolate_real_roots spec examples") {
  // x^2 - 2: two roots around ±sqrt(2)
  auto roots = isolate_real_roots(IntPoly{-2, 0, 1});
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].multiplicity == 1);
  CHECK(roots[1].multiplicity == 1);
  CHECK(roots[0].value.approx() == doctest::Approx(-1.41421356).epsilon(1e-6));
  CHECK(roots[1].value.approx() == doctest::Approx(1.41421356).epsilon(1e-6));

  // x^2 + 1: empty
  CHECK(isolate_real_roots(IntPoly{1, 0, 1}).empty());

  // (x-1)^2 (x+3): roots -3 (mult 1), 1 (mult 2)
  IntPoly p = IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{3, 1};
  auto r2 = isolate_real_roots(p);
  REQUIRE(r2.size() == 2);
  CHECK(compare_to_rational(r2[0].value, Rational(-3)) == 0);
  CHECK(r2[0].multiplicity == 1);
  CHECK(compare_to_rational(r2[1].value, Rational(1)) == 0);
  CHECK(r2[1].multiplicity == 2);

  CHECK_THROWS_WITH(isolate_real_roots(IntPoly::zero()), "zero polynomial has no root set");
}

TEST_CASE("isolation finds planted rational roots exactly") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    Rational r1(num(rng), den(rng)), r2(num(rng), den(rng));
    r1.canonicalize();
    r2.canonicalize();
    IntPoly p = IntPoly::linear_from_root(r1) * IntPoly::linear_from_root(r2) * IntPoly{1, 0, 1};
    auto roots = isolate_real_roots(p);
    // p(r) = 0 iff r in {r1, r2}
    for (const auto& rt : roots) {
      bool matches_r1 = compare_to_rational(rt.value, r1) == 0;
      bool matches_r2 = compare_to_rational(rt.value, r2) == 0;
      CHECK((matches_r1 || matches_r2));
    }
    size_t expected = (r1 == r2) ? 1 : 2;
    CHECK(roots.size() == expected);
  }
}

TEST_CASE("compare_algebraic spec examples") {
  auto sqrt2 = AlgebraicReal::from_root(IntPoly{-2, 0, 1}, {Rational(1), Rational(2)});
  CHECK(compare_to_rational(sqrt2, Rational(3, 2)) < 0);
  auto sqrt2b = AlgebraicReal::from_root(IntPoly{-2, 0, 1}, {Rational(1), Rational(2)});
  CHECK(compare_algebraic(sqrt2, sqrt2b) == Ordering::EQ);
  auto golden = AlgebraicReal::from_root(IntPoly{-1, -1, 1}, {Rational(1), Rational(2)});
  CHECK(compare_algebraic(golden, sqrt2) == Ordering::GT);
}

TEST_CASE("compare_algebraic is a total order on random roots") {
  std::vector<AlgebraicReal> values;
  for (const IntPoly& p : {IntPoly{-2, 0, 1}, IntPoly{-3, 0, 1}, IntPoly{-1, -1, 1},
                           IntPoly{1, -3, 1}, IntPoly{-1, -2, 0, 1}}) {
    for (const auto& r : isolate_real_roots(p)) values.push_back(r.value);
  }
  // antisymmetry + transitivity on all triples
  auto ord = [&](size_t i, size_t j) { return compare_algebraic(values[i], values[j]); };
  for (size_t i = 0; i < values.size(); ++i)
    for (size_t j = 0; j < values.size(); ++j) {
      Ordering a = ord(i, j), b = ord(j, i);
      if (a == Ordering::LT) CHECK(b == Ordering::GT);
      if (a == Ordering::EQ) CHECK(b == Ordering::EQ);
      for (size_t k = 0; k < values.size(); ++k) {
        if (a == Ordering::LT && ord(j, k) == Ordering::LT) CHECK(ord(i, k) == Ordering::LT);
      }
    }
  // consistency with high precision refinement
  for (size_t i = 0; i < values.size(); ++i)
    for (size_t j = 0; j < values.size(); ++j) {
      AlgebraicReal x = values[i], y = values[j];
      Rational w(1);
      for (int t = 0; t < 170; ++t) w /= 2;  // ~ 50 decimal digits
      x.refine_to_width(w);
      y.refine_to_width(w);
      Ordering o = ord(i, j);
      if (o == Ordering::LT) CHECK(x.lo() < y.hi());
      if (o == Ordering::GT) CHECK(y.lo() < x.hi());
    }
}

TEST_CASE("algebraic arithmetic helpers") {
  auto sqrt2 = AlgebraicReal::from_root(IntPoly{-2, 0, 1}, {Rational(1), Rational(2)});
  auto two = sqrt2.squared();
  CHECK(compare_to_rational(two, Rational(2)) == 0);
  auto p = mul(sqrt2, sqrt2);
  CHECK(compare_to_rational(p, Rational(2)) == 0);
  auto s = pow(sqrt2, 4);
  CHECK(compare_to_rational(s, Rational(4)) == 0);
  auto rt = AlgebraicReal::from_rational(Rational(2)).sqrt_nonneg();
  CHECK(compare_algebraic(rt, sqrt2) == Ordering::EQ);
  auto neg = sqrt2.negated();
  CHECK(neg.sign() == -1);
  CHECK(compare_algebraic(neg.abs_value(), sqrt2) == Ordering::EQ);
  auto scaled = sqrt2.scaled(Rational(3, 2));
  CHECK(scaled.approx() == doctest::Approx(2.1213203).epsilon(1e-6));
  CHECK(sqrt2.decimal_approx(6).substr(0, 8) == "1.414214");
}

TEST_CASE("sign of algebraic zero") {
  // root of x(x^2-2) isolated around 0
  IntPoly p = IntPoly{0, 1} * IntPoly{-2, 0, 1};
  auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 3);
  CHECK(roots[1].value.sign() == 0);
  CHECK(roots[0].value.sign() == -1);
  CHECK(roots[2].value.sign() == 1);
}
