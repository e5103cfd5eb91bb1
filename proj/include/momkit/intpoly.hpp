#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "momkit/rational.hpp"

namespace momkit {

// Dense univariate polynomial over Z, coefficients stored low degree first.
// Invariant: no trailing zero coefficients (the zero polynomial is the empty vector).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static IntPoly zero() { return IntPoly(); }
  static IntPoly constant(Integer v) { return IntPoly(std::vector<Integer>{std::move(v)}); }
  static IntPoly x() { return IntPoly({0, 1}); }
  // (x - r) for rational r = p/q, cleared to (q x - p)
  static IntPoly linear_from_root(const Rational& r);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
  const Integer& coeff(int k) const;
  const Integer& leading() const;
  const std::vector<Integer>& coeffs() const { return c_; }

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator-() const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  IntPoly mul_scalar(const Integer& s) const;
  IntPoly shift_up(int k) const;  // multiply by x^k
  IntPoly derivative() const;

  Integer eval(const Integer& x) const;
  Rational eval(const Rational& x) const;
  GaussQ eval(const GaussQ& x) const;
  int sign_at(const Rational& x) const;

  Integer content() const;          // gcd of coefficients, >= 0 (0 for zero poly)
  IntPoly primitive_part() const;   // keeps leading sign
  IntPoly canonical() const;        // primitive with positive leading coefficient

  // p(x) -> p(-x)
  IntPoly negate_variable() const;
  // p(x) -> x^deg * p(1/x) (coefficient reversal)
  IntPoly reverse() const;
  // p(x) -> p(x^2)
  IntPoly square_variable() const;
  // p(x) -> numerator of p(a*x) for rational a (integer-cleared)
  IntPoly scale_variable(const Rational& a) const;
  // p(x) -> p(x + a), integer-cleared for rational a
  IntPoly shift_variable(const Rational& a) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Integer> c_;
};

// Exact division; throws if not divisible over Z.
IntPoly divide_exact(const IntPoly& num, const IntPoly& den);
// Divisibility test over Q (equivalently over Z up to content).
bool divides(const IntPoly& den, const IntPoly& num);

// gcd over Z, canonical (primitive, positive leading); gcd(0,0) = 0.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

IntPoly squarefree_part(const IntPoly& p);
// Yun decomposition: list of (factor, multiplicity), factors squarefree and
// pairwise coprime, product of factor^mult = p up to a rational constant.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p);

// Sylvester-determinant resultant (rows of p first).  res(x-a, x-b) = a-b.
Integer resultant(const IntPoly& p, const IntPoly& q);

// Discriminant-free separation lower bound helpers
Rational cauchy_root_bound(const IntPoly& p);  // all complex roots have |z| < bound

// n-th cyclotomic polynomial.
IntPoly cyclotomic(unsigned n);
// Spec operation: n if p is the n-th cyclotomic polynomial, NONE otherwise.
// Throws std::invalid_argument("requires irreducible polynomial") on detected
// reducible input.
std::optional<unsigned> cyclotomic_order(const IntPoly& p);

// All n with Euler totient phi(n) = d.
std::vector<unsigned> totient_preimage(unsigned d);
unsigned euler_phi(unsigned n);

// Power sums s_k = sum of roots^k (over C, with multiplicity), k = 1..n.
std::vector<Rational> power_sums(const IntPoly& p, int n);
// Monic polynomial of given degree from power sums s_1..s_deg, cleared to IntPoly.
IntPoly poly_from_power_sums(const std::vector<Rational>& s, int deg);

// Roots are all products a*b over roots a of p, b of q (with multiplicity).
IntPoly composed_product(const IntPoly& p, const IntPoly& q);
// Roots are a^k over roots a of p.
IntPoly composed_power(const IntPoly& p, unsigned k);
// Roots are all sums a+b.  (Resultant-based, evaluation/interpolation.)
IntPoly composed_sum(const IntPoly& p, const IntPoly& q);
// Roots are all differences a-b.
IntPoly composed_difference(const IntPoly& p, const IntPoly& q);

// Proof attempt that p is irreducible over Q by exhibiting a prime p0 modulo
// which p stays squarefree, degree-preserved and irreducible. Returns true on
// success; false is inconclusive.
bool irreducible_mod_prime_proof(const IntPoly& p);

// ---- Sturm machinery ------------------------------------------------------

// Sturm chain of a squarefree polynomial; counts real roots exactly.
class SturmChain {
 public:
  explicit SturmChain(const IntPoly& squarefree);
  // number of real roots in the open interval (lo, hi); endpoints must not be roots
  int count_open(const Rational& lo, const Rational& hi) const;
  int count_all() const;  // all real roots
  int variations_at(const Rational& x) const;
  int variations_at_minus_inf() const;
  int variations_at_plus_inf() const;

 private:
  std::vector<IntPoly> seq_;
};

struct QInterval {
  Rational lo, hi;
  bool is_point() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
};

// Isolating intervals for all real roots of a squarefree polynomial, sorted
// ascending.  Rational roots come back as point intervals; otherwise endpoints
// are not roots and each interval contains exactly one root.
std::vector<QInterval> isolate_real_roots_squarefree(const IntPoly& f);

}  // namespace momkit
