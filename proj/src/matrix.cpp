#include "momkit/matrix.hpp"

namespace momkit {

void LinearFunctional::check_dimension(int s) const {
  switch (kind) {
    case Kind::Trace:
      return;
    case Kind::TraceForm:
      if (form.size() != s) throw std::invalid_argument("trace-form dimension mismatch");
      return;
    case Kind::Bilinear:
      if (static_cast<int>(v.size()) != s || static_cast<int>(w.size()) != s)
        throw std::invalid_argument("bilinear functional dimension mismatch");
      return;
  }
}

Rational LinearFunctional::apply(const RatMatrix& x) const {
  check_dimension(x.size());
  switch (kind) {
    case Kind::Trace:
      return x.trace();
    case Kind::TraceForm:
      return (x * form).trace();
    case Kind::Bilinear: {
      Rational acc(0);
      int s = x.size();
      for (int i = 0; i < s; ++i) {
        if (v[i] == 0) continue;
        Rational row(0);
        for (int j = 0; j < s; ++j) row += x.at(i, j) * w[j];
        acc += v[i] * row;
      }
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

Rational moment(const RatMatrix& a, const LinearFunctional& phi, unsigned long n) {
  phi.check_dimension(a.size());
  return phi.apply(a.pow(n));
}

Integer least_common_denominator(const RatMatrix& a) {
  Integer l(1);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) l = lcm_int(l, a.at(i, j).get_den());
  return l;
}

IntMatrix scale_to_integer(const RatMatrix& a, const Integer& scale) {
  IntMatrix m(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      Rational t = a.at(i, j) * Rational(scale);
      t.canonicalize();
      if (t.get_den() != 1) throw std::logic_error("scale does not clear denominators");
      m.at(i, j) = t.get_num();
    }
  return m;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix m(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) m.at(i, j) = Rational(a.at(i, j));
  return m;
}

CharPolyResult char_poly(const RatMatrix& a) {
  int s = a.size();
  Integer c = least_common_denominator(a);
  IntMatrix b = scale_to_integer(a, c);
  // Faddeev–LeVerrier over Z: p(x) = x^s + a_1 x^{s-1} + ... + a_s,
  // M_1 = I, a_k = -tr(B M_k)/k, M_{k+1} = B M_k + a_k I.  Divisions are exact.
  std::vector<Integer> coeff(s + 1, Integer(0));
  coeff[s] = 1;
  IntMatrix m = IntMatrix::identity(s);
  std::vector<Integer> as(s + 1, Integer(0));
  for (int k = 1; k <= s; ++k) {
    IntMatrix bm = (k == 1) ? b : b * m;
    Integer t = bm.trace();
    Integer ak, kk(static_cast<long>(k));
    mpz_divexact(ak.get_mpz_t(), t.get_mpz_t(), kk.get_mpz_t());
    ak = -ak;
    as[k] = ak;
    m = bm;
    for (int i = 0; i < s; ++i) m.at(i, i) += ak;
  }
  for (int k = 1; k <= s; ++k) coeff[s - k] = as[k];
  return {IntPoly(std::move(coeff)), c};
}

std::vector<Rational> char_poly_rational(const RatMatrix& a) {
  CharPolyResult cp = char_poly(a);
  int s = a.size();
  // p_A(x) = p_int(c x) / c^s: coefficient of x^k is p_int_k / c^{s-k}
  std::vector<Rational> out(s + 1);
  Integer cpow(1);
  for (int k = s; k >= 0; --k) {
    Rational t(cp.poly.coeff(k));
    t /= Rational(cpow);
    t.canonicalize();
    out[k] = t;
    cpow *= cp.scale;
  }
  return out;
}

bool verify_cayley_hamilton(const RatMatrix& a) {
  int s = a.size();
  std::vector<Rational> p = char_poly_rational(a);
  RatMatrix acc(s);
  for (int k = s; k >= 0; --k) {
    acc = acc * a;
    for (int i = 0; i < s; ++i) acc.at(i, i) += p[k];
  }
  return acc.is_zero();
}

GaussMatrix conj_transpose(const GaussMatrix& u) {
  GaussMatrix r(u.size());
  for (int i = 0; i < u.size(); ++i)
    for (int j = 0; j < u.size(); ++j) r.at(j, i) = u.at(i, j).conj();
  return r;
}

bool is_unitary(const GaussMatrix& u) {
  return conj_transpose(u) * u == GaussMatrix::identity(u.size());
}

bool is_orthogonal(const RatMatrix& a) {
  return a.transpose() * a == RatMatrix::identity(a.size());
}

RatMatrix psi_embed(const GaussMatrix& u) {
  if (!is_unitary(u)) throw std::invalid_argument("psi_embed requires a unitary matrix");
  int s = u.size();
  RatMatrix r(2 * s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      const GaussQ& z = u.at(i, j);
      r.at(i, j) = z.re;
      r.at(i, j + s) = -z.im;
      r.at(i + s, j) = z.im;
      r.at(i + s, j + s) = z.re;
    }
  return r;
}

std::vector<GaussQ> char_poly_gauss(const GaussMatrix& u) {
  int s = u.size();
  std::vector<GaussQ> out(s + 1);
  out[s] = GaussQ(Rational(1));
  GaussMatrix m = GaussMatrix::identity(s);
  for (int k = 1; k <= s; ++k) {
    GaussMatrix bm = (k == 1) ? u : u * m;
    GaussQ t = bm.trace();
    GaussQ ak = GaussQ(Rational(-1)) * (t / GaussQ(Rational(k)));
    out[s - k] = ak;
    m = bm;
    for (int i = 0; i < s; ++i) m.at(i, i) += ak;
  }
  return out;
}

GaussQ gauss_trace_power(const GaussMatrix& u, unsigned long n) {
  return u.pow(n).trace();
}

Integer determinant(const IntMatrix& m_in) {
  int n = m_in.size();
  if (n == 0) return Integer(1);
  IntMatrix m = m_in;
  Integer prev(1);
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) { piv = i; break; }
      if (piv < 0) return Integer(0);
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Integer t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  Integer d = m.at(n - 1, n - 1);
  return sign > 0 ? d : Integer(-d);
}

Rational determinant(const RatMatrix& m) {
  Integer c = least_common_denominator(m);
  Integer d = determinant(scale_to_integer(m, c));
  Integer cn;
  mpz_pow_ui(cn.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(m.size()));
  Rational r(d);
  r /= Rational(cn);
  r.canonicalize();
  return r;
}

}  // namespace momkit
