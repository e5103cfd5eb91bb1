#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace momkit {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonical text forms: "p/q" with q > 0 and gcd(|p|,q)=1, or "p" when q = 1.
std::string to_string(const Integer& z);
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);
Integer parse_integer(const std::string& s);

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(const Integer& z) { return sgn(z); }

inline Rational rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer gcd_int(const Integer& a, const Integer& b);
Integer lcm_int(const Integer& a, const Integer& b);

// floor/ceil of a rational as integers
Integer floor_int(const Rational& q);
Integer ceil_int(const Rational& q);

// Outward rational bounds for sqrt(q), q >= 0: lo*lo <= q <= hi*hi,
// hi - lo <= 2^-prec_bits * max(1, hi).
void sqrt_bounds(const Rational& q, unsigned prec_bits, Rational& lo, Rational& hi);

// Outward rational bounds for ln(q), q > 0.
void log_bounds(const Rational& q, unsigned prec_bits, Rational& lo, Rational& hi);

// Gaussian rational a + bi over Q.
struct GaussQ {
  Rational re, im;

  GaussQ() : re(0), im(0) {}
  GaussQ(Rational r) : re(std::move(r)), im(0) {}
  GaussQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussQ(int n) : re(n), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussQ conj() const { return GaussQ(re, Rational(-im)); }
  Rational norm() const { return re * re + im * im; }  // |z|^2

  GaussQ operator+(const GaussQ& o) const { return GaussQ(re + o.re, im + o.im); }
  GaussQ operator-(const GaussQ& o) const { return GaussQ(re - o.re, im - o.im); }
  GaussQ operator-() const { return GaussQ(Rational(-re), Rational(-im)); }
  GaussQ operator*(const GaussQ& o) const {
    return GaussQ(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  GaussQ operator/(const GaussQ& o) const {
    Rational n = o.norm();
    if (n == 0) throw std::domain_error("division by zero Gaussian rational");
    GaussQ t = *this * o.conj();
    return GaussQ(t.re / n, t.im / n);
  }
  GaussQ& operator+=(const GaussQ& o) { re += o.re; im += o.im; return *this; }
  GaussQ& operator*=(const GaussQ& o) { *this = *this * o; return *this; }
  bool operator==(const GaussQ& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussQ& o) const { return !(*this == o); }
};

std::string to_string(const GaussQ& z);

}  // namespace momkit
