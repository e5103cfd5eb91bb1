#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "momkit/winding.hpp"

using namespace momkit;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("winding number counts roots with multiplicity") {
  // z: simple root at 0
  CHECK(winding_number(IntPoly{0, 1}, {q(-1), q(1)}, {q(-1), q(1)}) == 1);
  // z^2: double root at 0
  CHECK(winding_number(IntPoly{0, 0, 1}, {q(-1), q(1)}, {q(-1), q(1)}) == 2);
  // z^2+1: roots ±i
  CHECK(winding_number(IntPoly{1, 0, 1}, {q(-2), q(2)}, {q(-2), q(2)}) == 2);
  CHECK(winding_number(IntPoly{1, 0, 1}, {q(-2), q(2)}, {q(1, 2), q(2)}) == 1);
  CHECK(winding_number(IntPoly{1, 0, 1}, {q(-2), q(2)}, {q(-1, 3), q(1, 2)}) == 0);
  // (z-1)(z-i): box around 1 only
  // (x-1)(x-i) = x^2 - (1+i)x + i has non-rational coefficients; use
  // (z^2-2z+2) = (z-(1+i))(z-(1-i)) instead
  CHECK(winding_number(IntPoly{2, -2, 1}, {q(1, 2), q(3, 2)}, {q(1, 2), q(3, 2)}) == 1);
  CHECK(winding_number(IntPoly{2, -2, 1}, {q(0), q(2)}, {q(-2), q(-1, 2)}) == 1);
  CHECK(winding_number(IntPoly{2, -2, 1}, {q(2), q(3)}, {q(2), q(3)}) == 0);
}

TEST_CASE("winding on cyclotomic roots") {
  // Phi_5: four roots on the unit circle, two in the upper half plane
  IntPoly phi5{1, 1, 1, 1, 1};
  CHECK(winding_number(phi5, {q(-2), q(2)}, {q(1, 100), q(2)}) == 2);
  CHECK(winding_number(phi5, {q(-2), q(0)}, {q(1, 100), q(2)}) == 1);
  CHECK(winding_number(phi5, {q(-2), q(2)}, {q(-2), q(2)}) == 4);
}

TEST_CASE("winding detects roots on boundary") {
  // root at 1 lies on the right edge
  CHECK_THROWS_AS(winding_number(IntPoly{-1, 1}, {q(0), q(1)}, {q(-1), q(1)}),
                  EdgeRootError);
  // root i on corner
  CHECK_THROWS_AS(winding_number(IntPoly{1, 0, 1}, {q(-1), q(0)}, {q(0), q(1)}),
                  EdgeRootError);
}

TEST_CASE("isolate_complex_upper basic") {
  // z^2+1: one conjugate pair, box around i
  auto boxes = isolate_complex_upper(IntPoly{1, 0, 1});
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[0].im.lo > 0);
  CHECK(icontains(boxes[0].re, q(0)));
  CHECK(icontains(boxes[0].im, q(1)));

  // all-real polynomial: none
  CHECK(isolate_complex_upper(IntPoly{-2, 0, 1}).empty());

  // Phi_5: two upper boxes
  auto b5 = isolate_complex_upper(IntPoly{1, 1, 1, 1, 1});
  REQUIRE(b5.size() == 2);
  for (const auto& b : b5) CHECK(b.im.lo > 0);

  // mixed: (x^2+1)(x-1)(x^2-2x+2): pairs i and 1+i
  IntPoly f = IntPoly{1, 0, 1} * IntPoly{-1, 1} * IntPoly{2, -2, 1};
  auto bm = isolate_complex_upper(f);
  REQUIRE(bm.size() == 2);
}

TEST_CASE("refine_box shrinks isolating boxes") {
  IntPoly f{2, -2, 1};  // roots 1±i
  auto boxes = isolate_complex_upper(f);
  REQUIRE(boxes.size() == 1);
  BoxC b = boxes[0];
  refine_box(f, b, q(1, 1000));
  CHECK(b.width() <= q(1, 1000));
  CHECK(icontains(b.re, q(1)));
  CHECK(icontains(b.im, q(1)));
}

TEST_CASE("random products of known factors isolate correctly") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int trial = 0; trial < 12; ++trial) {
    // build f as a product of random real-rooted linears and complex quadratics
    IntPoly f = IntPoly::constant(1);
    int pairs = 1 + static_cast<int>(rng() % 2);
    int linears = static_cast<int>(rng() % 3);
    std::vector<std::pair<int, int>> used;  // (a,b): root a+bi of x^2-2ax+(a^2+b^2)
    bool dup = false;
    for (int i = 0; i < pairs; ++i) {
      int a = small(rng), b = 1 + static_cast<int>(rng() % 3);
      for (auto& u : used)
        if (u.first == a && u.second == b) dup = true;
      used.push_back({a, b});
      f = f * IntPoly{a * a + b * b, -2 * a, 1};
    }
    std::vector<int> roots_used;
    for (int i = 0; i < linears; ++i) {
      int r = small(rng);
      if (std::find(roots_used.begin(), roots_used.end(), r) != roots_used.end()) {
        dup = true;
      }
      roots_used.push_back(r);
      f = f * IntPoly{-r, 1};
    }
    if (dup) continue;  // keep squarefree
    auto boxes = isolate_complex_upper(f);
    REQUIRE(boxes.size() == static_cast<size_t>(pairs));
    // each planted root a+bi must be inside exactly one box
    for (auto& [a, b] : used) {
      int hits = 0;
      for (const auto& box : boxes)
        if (icontains(box.re, q(a)) && icontains(box.im, q(b))) ++hits;
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("boxed_value_is_zero") {
  // value = root of x^2+1 at i, shifted by -i: candidates (x+i)(x-i)... build
  // the difference value i - i = 0 presented through shrinking boxes
  IntPoly f{1, 0, 1};
  auto boxes = isolate_complex_upper(f);
  REQUIRE(boxes.size() == 1);
  BoxC bi = boxes[0];
  // delta = lambda - lambda (trivially zero); candidates: composed difference
  IntPoly cand = composed_difference(f, f);
  BoxC cur = bsub(bi, bi);
  BoxC working = bi;
  auto refine = [&]() -> BoxC {
    refine_box(f, working, working.width() / 4);
    return bsub(working, working);
  };
  CHECK(boxed_value_is_zero(cand, cur, refine));

  // nonzero value: lambda - conj(lambda) = 2i
  BoxC working2 = bi;
  BoxC cur2 = bsub(working2, bconj(working2));
  auto refine2 = [&]() -> BoxC {
    refine_box(f, working2, working2.width() / 4);
    return bsub(working2, bconj(working2));
  };
  CHECK(!boxed_value_is_zero(cand, cur2, refine2));
}

TEST_CASE("boxed_roots_equal") {
  IntPoly phi5{1, 1, 1, 1, 1};
  auto boxes = isolate_complex_upper(phi5);
  REQUIRE(boxes.size() == 2);
  BoxC a = boxes[0], b = boxes[1];
  auto mk = [&phi5](BoxC& x) {
    return std::tuple{[&x, &phi5]() { refine_box(phi5, x, x.width() / 4); },
                      [&x]() -> BoxC { return x; }};
  };
  auto [ra, ga] = mk(a);
  auto [rb, gb] = mk(b);
  BoxC a2 = a;
  auto [ra2, ga2] = mk(a2);
  CHECK(!boxed_roots_equal(phi5, a, b, ra, rb, ga, gb));
  CHECK(boxed_roots_equal(phi5, a, a2, ra, ra2, ga, ga2));
}
