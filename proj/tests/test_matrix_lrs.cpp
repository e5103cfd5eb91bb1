#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "momkit/lrs.hpp"
#include "momkit/matrix.hpp"

using namespace momkit;

namespace {

RatMatrix rat_matrix(int n, std::vector<long> entries) {
  std::vector<Rational> v;
  v.reserve(entries.size());
  for (long e : entries) v.emplace_back(e);
  return RatMatrix(n, std::move(v));
}

RatMatrix random_matrix(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<Rational> v;
  for (int i = 0; i < n * n; ++i) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    v.push_back(r);
  }
  return RatMatrix(n, std::move(v));
}

}  // namespace

TEST_CASE("moment spec examples") {
  RatMatrix rot = rat_matrix(2, {0, -1, 1, 0});
  std::vector<long> expect{2, 0, -2, 0, 2};
  for (unsigned long n = 0; n <= 4; ++n)
    CHECK(moment(rot, LinearFunctional::trace(), n) == Rational(expect[n]));

  RatMatrix id = RatMatrix::identity(2);
  for (unsigned long n : {0ul, 1ul, 7ul, 30ul})
    CHECK(moment(id, LinearFunctional::trace(), n) == 2);

  RatMatrix fib = rat_matrix(2, {1, 1, 1, 0});
  std::vector<long> lucas{1, 3, 4, 7, 11};
  for (unsigned long n = 1; n <= 5; ++n)
    CHECK(moment(fib, LinearFunctional::trace(), n) == Rational(lucas[n - 1]));
}

TEST_CASE("moment with functionals") {
  RatMatrix a = rat_matrix(2, {1, 2, 3, 4});
  auto tf = LinearFunctional::trace_form(rat_matrix(2, {1, 0, 0, 0}));
  CHECK(moment(a, tf, 1) == 1);
  CHECK(moment(a, tf, 2) == 7);  // (A^2)_{11} = 1+6
  auto bil = LinearFunctional::bilinear({Rational(1), Rational(0)}, {Rational(0), Rational(1)});
  CHECK(moment(a, bil, 1) == 2);  // A_{12}
  auto bad = LinearFunctional::bilinear({Rational(1)}, {Rational(1)});
  CHECK_THROWS(moment(a, bad, 1));
}

TEST_CASE("char_poly spec examples") {
  auto cp = char_poly(rat_matrix(2, {1, 1, 1, 0}));
  CHECK(cp.poly == IntPoly{-1, -1, 1});
  CHECK(cp.scale == 1);

  auto cp2 = char_poly(RatMatrix::identity(2));
  CHECK(cp2.poly == IntPoly{1, -2, 1});
  CHECK(cp2.scale == 1);

  std::vector<Rational> entries{Rational(3, 5), Rational(-4, 5), Rational(4, 5), Rational(3, 5)};
  auto cp3 = char_poly(RatMatrix(2, entries));
  CHECK(cp3.poly == IntPoly{25, -6, 1});
  CHECK(cp3.scale == 5);
}

TEST_CASE("verify_cayley_hamilton") {
  CHECK(verify_cayley_hamilton(rat_matrix(2, {1, 1, 1, 0})));
  CHECK(verify_cayley_hamilton(RatMatrix::identity(3)));
  std::mt19937 rng(42);
  for (int t = 0; t < 20; ++t) CHECK(verify_cayley_hamilton(random_matrix(rng, 4)));
}

TEST_CASE("Newton identities hold exactly") {
  std::mt19937 rng(43);
  for (int t = 0; t < 20; ++t) {
    int s = 2 + static_cast<int>(rng() % 3);
    RatMatrix a = random_matrix(rng, s);
    std::vector<Rational> p = char_poly_rational(a);
    // e_k = (-1)^k p[s-k]; power sums mu_1..mu_s must satisfy Newton exactly
    std::vector<Rational> mu(s + 1);
    for (int n = 1; n <= s; ++n) mu[n] = moment(a, LinearFunctional::trace(), n);
    std::vector<Rational> e(s + 1);
    for (int k = 0; k <= s; ++k) {
      e[k] = p[s - k];
      if (k % 2 == 1) e[k] = -e[k];
    }
    for (int k = 1; k <= s; ++k) {
      Rational acc(0);
      for (int i = 1; i < k; ++i) {
        Rational term = e[i] * mu[k - i];
        if (i % 2 == 0) acc -= term;
        else acc += term;
      }
      Rational rhs = acc + Rational((k % 2 == 1) ? k : -k) * e[k];
      CHECK(mu[k] == rhs);
    }
  }
}

TEST_CASE("moment recurrence from char poly (Lemma 2.2 shape)") {
  std::mt19937 rng(44);
  for (int t = 0; t < 15; ++t) {
    int s = 2 + static_cast<int>(rng() % 3);
    RatMatrix m = random_matrix(rng, s);
    std::vector<Rational> p = char_poly_rational(m);
    std::vector<Rational> a(s);
    for (int i = 1; i <= s; ++i) a[i - 1] = -p[s - i];
    std::vector<Rational> mu(4 * s + 1);
    for (int n = 0; n <= 4 * s; ++n) mu[n] = moment(m, LinearFunctional::trace(), n);
    for (int n = s; n <= 4 * s; ++n) {
      Rational acc(0);
      for (int i = 1; i <= s; ++i) acc += a[i - 1] * mu[n - i];
      CHECK(mu[n] == acc);
    }
  }
}

TEST_CASE("scaled moments relation") {
  std::mt19937 rng(45);
  for (int t = 0; t < 10; ++t) {
    int s = 2 + static_cast<int>(rng() % 2);
    RatMatrix a = random_matrix(rng, s);
    Integer c = least_common_denominator(a);
    IntMatrix b = scale_to_integer(a, c);
    for (unsigned long n = 0; n <= 6; ++n) {
      Integer bn = b.pow(n).trace();
      Rational an = moment(a, LinearFunctional::trace(), n);
      Integer cn;
      mpz_pow_ui(cn.get_mpz_t(), c.get_mpz_t(), n);
      CHECK(Rational(bn) == an * Rational(cn));
    }
  }
}

TEST_CASE("determinant") {
  CHECK(determinant(rat_matrix(2, {1, 2, 3, 4})) == -2);
  CHECK(determinant(rat_matrix(3, {0, 1, 0, 0, 0, 1, 1, 0, 0})) == 1);
  std::vector<Rational> entries{Rational(3, 5), Rational(-4, 5), Rational(4, 5), Rational(3, 5)};
  CHECK(determinant(RatMatrix(2, entries)) == 1);
}

TEST_CASE("psi_embed examples") {
  GaussMatrix i1(1);
  i1.at(0, 0) = GaussQ(Rational(0), Rational(1));
  RatMatrix e = psi_embed(i1);
  CHECK(e == rat_matrix(2, {0, -1, 1, 0}));
  GaussMatrix id = GaussMatrix::identity(3);
  CHECK(psi_embed(id) == RatMatrix::identity(6));
  // homomorphism: psi(i)^2 = psi(-1) = -I
  RatMatrix sq = e * e;
  CHECK(sq == rat_matrix(2, {-1, 0, 0, -1}));
  GaussMatrix bad(1);
  bad.at(0, 0) = GaussQ(Rational(2));
  CHECK_THROWS(psi_embed(bad));
}

TEST_CASE("char_poly_gauss") {
  GaussMatrix u(2);
  u.at(0, 0) = GaussQ(Rational(1));
  u.at(1, 1) = GaussQ(Rational(0), Rational(1));
  auto p = char_poly_gauss(u);  // (x-1)(x-i) = x^2 - (1+i) x + i
  REQUIRE(p.size() == 3);
  CHECK(p[2] == GaussQ(Rational(1)));
  CHECK(p[1] == GaussQ(Rational(-1), Rational(-1)));
  CHECK(p[0] == GaussQ(Rational(0), Rational(1)));
}

TEST_CASE("lrs term spec examples") {
  LRSSpec fib;
  fib.coeffs = {Rational(1), Rational(1)};
  fib.initial = {Rational(1), Rational(1)};
  CHECK(std::get<Rational>(term(fib, 6)) == 8);
  CHECK_THROWS_WITH(term(fib, 0), "terms indexed from 1");

  // Chebyshev over Z[x]: T_n = 2x T_{n-1} - T_{n-2}, T_1 = x, T_0 = 1.
  // With u_1 = T_1, u_2 = T_2 the spec indexes u_n = T_n.
  LRSSpec cheb;
  cheb.ring = RingTag::IntPolyRing;
  cheb.poly_vars = 1;
  CommPoly x = CommPoly::variable(0);
  CommPoly two_x = CommPoly::variable(0, Integer(2));
  cheb.coeffs = {two_x, CommPoly(-1)};
  cheb.initial = {x, two_x * x - CommPoly(1)};
  CommPoly t5 = std::get<CommPoly>(term(cheb, 5));
  CommPoly expect;  // 16x^5 - 20x^3 + 5x
  expect.add_term({5}, Integer(16));
  expect.add_term({3}, Integer(-20));
  expect.add_term({1}, Integer(5));
  CHECK(t5 == expect);

  LRSSpec constant;
  constant.coeffs = {Rational(1)};
  constant.initial = {Rational(7)};
  for (unsigned long n : {1ul, 2ul, 9ul}) CHECK(std::get<Rational>(term(constant, n)) == 7);
}

TEST_CASE("companion spec examples") {
  LRSSpec fib;
  fib.coeffs = {Rational(1), Rational(1)};
  fib.initial = {Rational(1), Rational(1)};
  auto br = companion(fib);
  CHECK(br.a == rat_matrix(2, {1, 1, 1, 0}));
  CHECK(br.v == std::vector<Rational>{Rational(1), Rational(1)});
  CHECK(br.w == std::vector<Rational>{Rational(1), Rational(0)});
  // u_3 = v^t A w = 2
  auto bil = LinearFunctional::bilinear(br.v, br.w);
  CHECK(moment(br.a, bil, 1) == 2);

  LRSSpec one;
  one.coeffs = {Rational(2)};
  one.initial = {Rational(3)};
  auto br1 = companion(one);
  CHECK(br1.a.at(0, 0) == 2);
  auto bil1 = LinearFunctional::bilinear(br1.v, br1.w);
  CHECK(moment(br1.a, bil1, 3) == 24);  // u_4 = 3 * 2^3

  LRSSpec zero;
  zero.coeffs = {Rational(1), Rational(1)};
  zero.initial = {Rational(0), Rational(0)};
  auto brz = companion(zero);
  auto bilz = LinearFunctional::bilinear(brz.v, brz.w);
  for (unsigned long n = 1; n <= 5; ++n) CHECK(moment(brz.a, bilz, n) == 0);
}

TEST_CASE("from_moments spec examples") {
  auto lucas = from_moments(rat_matrix(2, {1, 1, 1, 0}), LinearFunctional::trace());
  CHECK(std::get<Rational>(lucas.coeffs[0]) == 1);
  CHECK(std::get<Rational>(lucas.coeffs[1]) == 1);
  CHECK(std::get<Rational>(lucas.initial[0]) == 1);
  CHECK(std::get<Rational>(lucas.initial[1]) == 3);
  std::vector<long> continued{4, 7, 11};
  for (unsigned long n = 3; n <= 5; ++n)
    CHECK(std::get<Rational>(term(lucas, n)) == Rational(continued[n - 3]));

  auto ident = from_moments(RatMatrix::identity(2), LinearFunctional::trace());
  CHECK(std::get<Rational>(ident.coeffs[0]) == 2);
  CHECK(std::get<Rational>(ident.coeffs[1]) == -1);
  for (unsigned long n = 1; n <= 6; ++n) CHECK(std::get<Rational>(term(ident, n)) == 2);

  auto d23 = from_moments(rat_matrix(2, {2, 0, 0, 3}), LinearFunctional::trace());
  CHECK(std::get<Rational>(d23.coeffs[0]) == 5);
  CHECK(std::get<Rational>(d23.coeffs[1]) == -6);
  CHECK(std::get<Rational>(d23.initial[0]) == 5);
  CHECK(std::get<Rational>(d23.initial[1]) == 13);
  CHECK(std::get<Rational>(term(d23, 3)) == 35);
}

TEST_CASE("round trip: companion bridge reproduces terms (Lemma 2.3)") {
  std::mt19937 rng(46);
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  for (int t = 0; t < 30; ++t) {
    int s = 1 + static_cast<int>(rng() % 4);
    LRSSpec spec;
    for (int i = 0; i < s; ++i) {
      Rational a(num(rng), den(rng)), u(num(rng), den(rng));
      a.canonicalize();
      u.canonicalize();
      spec.coeffs.emplace_back(a);
      spec.initial.emplace_back(u);
    }
    auto br = companion(spec);
    auto bil = LinearFunctional::bilinear(br.v, br.w);
    for (unsigned long n = s + 1; n <= static_cast<unsigned long>(3 * s + 10); ++n)
      CHECK(std::get<Rational>(term(spec, n)) == moment(br.a, bil, n - s));
  }
}

TEST_CASE("round trip: from_moments reproduces moments (Lemma 2.2)") {
  std::mt19937 rng(47);
  for (int t = 0; t < 30; ++t) {
    int s = 1 + static_cast<int>(rng() % 4);
    RatMatrix a = random_matrix(rng, s);
    for (const auto& phi :
         {LinearFunctional::trace(), LinearFunctional::trace_form(random_matrix(rng, s))}) {
      LRSSpec spec = from_moments(a, phi);
      for (unsigned long n = 1; n <= static_cast<unsigned long>(4 * s); ++n)
        CHECK(std::get<Rational>(term(spec, n)) == moment(a, phi, n));
    }
  }
}
