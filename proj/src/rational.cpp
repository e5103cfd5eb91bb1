#include "momkit/rational.hpp"

#include <cctype>

namespace momkit {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer parse_integer(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  Integer z;
  if (z.set_str(s, 10) != 0) throw std::invalid_argument("bad integer literal: " + s);
  return z;
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  Rational r;
  if (slash == std::string::npos) {
    r = Rational(parse_integer(s));
  } else {
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    r = Rational(num);
    r /= Rational(den);
  }
  r.canonicalize();
  return r;
}

Integer gcd_int(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm_int(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer floor_int(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

Integer ceil_int(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

void sqrt_bounds(const Rational& q, unsigned prec_bits, Rational& lo, Rational& hi) {
  if (q < 0) throw std::domain_error("sqrt_bounds of negative rational");
  if (q == 0) { lo = 0; hi = 0; return; }
  // scale so that floor-sqrt of the scaled integer gives 2^-prec precision:
  // q = n/d, sqrt(q) = sqrt(n*d)/d.  Let t = n*d*4^k; s = isqrt(t) => s <= sqrt(t) < s+1.
  Integer n = q.get_num(), d = q.get_den();
  Integer t = n * d;
  Integer scale(1);
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), 2 * prec_bits);
  t *= scale;
  Integer s;
  mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
  Integer two_k(1);
  mpz_mul_2exp(two_k.get_mpz_t(), two_k.get_mpz_t(), prec_bits);
  lo = Rational(s) / Rational(two_k * d);
  hi = Rational(s + 1) / Rational(two_k * d);
  lo.canonicalize();
  hi.canonicalize();
}

namespace {

// Bounds for ln(x) with x in (0, 2]: uses atanh series
// ln(x) = 2 * sum_{j>=0} y^(2j+1)/(2j+1), y = (x-1)/(x+1), |y| < 1.
// Partial sums alternate around nothing in general, so we bound the tail by
// the geometric series |y|^(2J+1)/(1-y^2).
void log_bounds_small(const Rational& x, unsigned prec_bits, Rational& lo, Rational& hi) {
  Rational y = (x - 1) / (x + 1);
  Rational y2 = y * y;
  Rational term = y;
  Rational sum = 0;
  Rational eps(1);
  Rational half(1, 2);
  for (unsigned i = 0; i < prec_bits; ++i) eps *= half;
  unsigned j = 0;
  while (true) {
    sum += term / Rational(2 * j + 1);
    term *= y2;
    ++j;
    // tail bound: |term|/(2j+1) * 1/(1-y2)
    Rational tail = abs(term) / ((1 - y2) * Rational(2 * j + 1));
    if (tail < eps / 4) {
      Rational res = 2 * sum;
      Rational t2 = 2 * tail;
      lo = res - t2;
      hi = res + t2;
      return;
    }
  }
}

}  // namespace

void log_bounds(const Rational& q, unsigned prec_bits, Rational& lo, Rational& hi) {
  if (q <= 0) throw std::domain_error("log_bounds of nonpositive rational");
  // reduce to (1/2, 2] by powers of 2: q = m * 2^e with m in (1/2, 1].
  Rational m = q;
  long e = 0;
  while (m > 2) { m /= 2; ++e; }
  while (m <= Rational(1, 2)) { m *= 2; --e; }
  Rational mlo, mhi;
  log_bounds_small(m, prec_bits + 8, mlo, mhi);
  if (e == 0) { lo = mlo; hi = mhi; return; }
  // ln 2 enclosure at required precision
  Rational l2lo, l2hi;
  log_bounds_small(Rational(2), prec_bits + 16, l2lo, l2hi);
  Rational elo, ehi;
  if (e > 0) { elo = Rational(e) * l2lo; ehi = Rational(e) * l2hi; }
  else       { elo = Rational(e) * l2hi; ehi = Rational(e) * l2lo; }
  lo = mlo + elo;
  hi = mhi + ehi;
}

std::string to_string(const GaussQ& z) {
  if (z.im == 0) return to_string(z.re);
  std::string s = to_string(z.re);
  if (z.im > 0) s += "+";
  s += to_string(z.im) + "i";
  return s;
}

}  // namespace momkit
