#pragma once

#include <algorithm>

#include "momkit/intpoly.hpp"

namespace momkit {

// Exact rational interval arithmetic (no rounding anywhere).
inline QInterval iadd(const QInterval& a, const QInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}
inline QInterval isub(const QInterval& a, const QInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}
inline QInterval ineg(const QInterval& a) { return {Rational(-a.hi), Rational(-a.lo)}; }
inline QInterval imul(const QInterval& a, const QInterval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min(std::min(p1, p2), std::min(p3, p4)),
          std::max(std::max(p1, p2), std::max(p3, p4))};
}
inline QInterval iscale(const QInterval& a, const Rational& c) {
  if (c >= 0) return {a.lo * c, a.hi * c};
  return {a.hi * c, a.lo * c};
}
inline QInterval ipoint(const Rational& r) { return {r, r}; }
inline bool icontains(const QInterval& a, const Rational& r) { return a.lo <= r && r <= a.hi; }
inline bool icontains_zero(const QInterval& a) { return a.lo <= 0 && 0 <= a.hi; }
// interval of 1/a for an interval not containing 0
inline QInterval iinv(const QInterval& a) {
  if (icontains_zero(a)) throw std::domain_error("interval inverse across zero");
  return {Rational(1) / a.hi, Rational(1) / a.lo};
}
inline QInterval idiv(const QInterval& a, const QInterval& b) { return imul(a, iinv(b)); }

// Complex box with exact rational bounds.
struct BoxC {
  QInterval re, im;

  Rational width() const { return std::max(re.hi - re.lo, im.hi - im.lo); }
  bool contains_zero() const { return icontains_zero(re) && icontains_zero(im); }
  bool strictly_contains_zero() const {
    return re.lo < 0 && 0 < re.hi && im.lo < 0 && 0 < im.hi;
  }
};

inline BoxC badd(const BoxC& a, const BoxC& b) { return {iadd(a.re, b.re), iadd(a.im, b.im)}; }
inline BoxC bsub(const BoxC& a, const BoxC& b) { return {isub(a.re, b.re), isub(a.im, b.im)}; }
inline BoxC bneg(const BoxC& a) { return {ineg(a.re), ineg(a.im)}; }
inline BoxC bconj(const BoxC& a) { return {a.re, ineg(a.im)}; }
inline BoxC bmul(const BoxC& a, const BoxC& b) {
  return {isub(imul(a.re, b.re), imul(a.im, b.im)),
          iadd(imul(a.re, b.im), imul(a.im, b.re))};
}
inline BoxC bpoint(const Rational& re, const Rational& im) {
  return {ipoint(re), ipoint(im)};
}
inline BoxC bfrom_gauss(const GaussQ& z) { return bpoint(z.re, z.im); }
inline QInterval bnorm2(const BoxC& a) {
  // |z|^2 enclosure; squares are evaluated sign-aware for tightness
  auto sq = [](const QInterval& t) -> QInterval {
    Rational a2 = t.lo * t.lo, b2 = t.hi * t.hi;
    Rational hi = std::max(a2, b2);
    Rational lo = icontains_zero(t) ? Rational(0) : std::min(a2, b2);
    return {lo, hi};
  };
  return iadd(sq(a.re), sq(a.im));
}
inline BoxC bpow(const BoxC& a, long e) {
  // negative exponents only for values on the unit circle: z^-1 = conj(z)
  BoxC base = e < 0 ? bconj(a) : a;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  BoxC acc = bpoint(Rational(1), Rational(0));
  while (k > 0) {
    if (k & 1) acc = bmul(acc, base);
    base = bmul(base, base);
    k >>= 1;
  }
  return acc;
}
// interval evaluation of an integer polynomial on a box
inline BoxC beval(const IntPoly& f, const BoxC& z) {
  BoxC acc = bpoint(Rational(0), Rational(0));
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    acc = bmul(acc, z);
    acc.re = iadd(acc.re, ipoint(Rational(*it)));
  }
  return acc;
}

// outward rounding to the dyadic grid 2^-bits, keeping operand sizes bounded
inline Rational round_down(const Rational& x, unsigned bits) {
  Integer scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), x.get_num().get_mpz_t(), bits);
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
  Rational r(q);
  Integer den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  r /= Rational(den);
  r.canonicalize();
  return r;
}
inline Rational round_up(const Rational& x, unsigned bits) {
  Integer scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), x.get_num().get_mpz_t(), bits);
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
  Rational r(q);
  Integer den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  r /= Rational(den);
  r.canonicalize();
  return r;
}
inline QInterval iround(const QInterval& a, unsigned bits) {
  return {round_down(a.lo, bits), round_up(a.hi, bits)};
}
inline BoxC bround(const BoxC& a, unsigned bits) {
  return {iround(a.re, bits), iround(a.im, bits)};
}
// power with per-step outward rounding (for long scans); exponent sign as bpow
inline BoxC bpow_rounded(const BoxC& a, long e, unsigned bits) {
  BoxC base = e < 0 ? bconj(a) : a;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  BoxC acc = bpoint(Rational(1), Rational(0));
  while (k > 0) {
    if (k & 1) acc = bround(bmul(acc, base), bits);
    base = bround(bmul(base, base), bits);
    k >>= 1;
  }
  return acc;
}

}  // namespace momkit
