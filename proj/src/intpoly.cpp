#include "momkit/intpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

namespace momkit {

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Integer& IntPoly::coeff(int k) const {
  static const Integer kZero(0);
  if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
  return c_[k];
}

const Integer& IntPoly::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

IntPoly IntPoly::linear_from_root(const Rational& r) {
  std::vector<Integer> c{-r.get_num(), r.get_den()};
  return IntPoly(std::move(c));
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<Integer> r(std::max(c_.size(), o.c_.size()), Integer(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<Integer> r(std::max(c_.size(), o.c_.size()), Integer(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  std::vector<Integer> r(c_.size() + o.c_.size() - 1, Integer(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const {
  std::vector<Integer> r(c_);
  for (auto& x : r) x = -x;
  return IntPoly(std::move(r));
}

IntPoly IntPoly::mul_scalar(const Integer& s) const {
  if (s == 0) return IntPoly();
  std::vector<Integer> r(c_);
  for (auto& x : r) x *= s;
  return IntPoly(std::move(r));
}

IntPoly IntPoly::shift_up(int k) const {
  if (is_zero()) return IntPoly();
  std::vector<Integer> r(c_.size() + k, Integer(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return IntPoly();
  std::vector<Integer> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Integer(static_cast<long>(i));
  return IntPoly(std::move(r));
}

Integer IntPoly::eval(const Integer& x) const {
  Integer acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

GaussQ IntPoly::eval(const GaussQ& x) const {
  GaussQ acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + GaussQ(Rational(*it));
  return acc;
}

int IntPoly::sign_at(const Rational& x) const { return sgn(eval(x)); }

Integer IntPoly::content() const {
  Integer g(0);
  for (const auto& x : c_) g = gcd_int(g, x);
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return IntPoly();
  Integer g = content();
  std::vector<Integer> r(c_);
  for (auto& x : r) x /= g;
  return IntPoly(std::move(r));
}

IntPoly IntPoly::canonical() const {
  if (is_zero()) return IntPoly();
  IntPoly p = primitive_part();
  if (p.leading() < 0) p = -p;
  return p;
}

IntPoly IntPoly::negate_variable() const {
  std::vector<Integer> r(c_);
  for (size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::reverse() const {
  std::vector<Integer> r(c_.rbegin(), c_.rend());
  return IntPoly(std::move(r));
}

IntPoly IntPoly::square_variable() const {
  if (is_zero()) return IntPoly();
  std::vector<Integer> r(2 * c_.size() - 1, Integer(0));
  for (size_t i = 0; i < c_.size(); ++i) r[2 * i] = c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::scale_variable(const Rational& a) const {
  if (is_zero()) return IntPoly();
  const Integer& u = a.get_num();
  const Integer& v = a.get_den();
  int d = degree();
  std::vector<Integer> r(c_.size());
  Integer upow(1);
  for (int k = 0; k <= d; ++k) {
    Integer vpow;
    mpz_pow_ui(vpow.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(d - k));
    r[k] = c_[k] * upow * vpow;
    upow *= u;
  }
  return IntPoly(std::move(r)).primitive_part();
}

IntPoly IntPoly::shift_variable(const Rational& a) const {
  if (is_zero()) return IntPoly();
  // Horner expansion of p(x + a) over Q, then clear denominators.
  std::vector<Rational> acc;  // polynomial in x, low first
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    // acc = acc * (x + a) + coeff
    std::vector<Rational> next(acc.size() + 1, Rational(0));
    for (size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] += acc[i];
      next[i] += acc[i] * a;
    }
    if (next.empty()) next.emplace_back(0);
    next[0] += Rational(*it);
    acc = std::move(next);
  }
  Integer den(1);
  for (const auto& q : acc) den = lcm_int(den, q.get_den());
  std::vector<Integer> r(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) {
    Rational t = acc[i] * Rational(den);
    t.canonicalize();
    r[i] = t.get_num();
  }
  return IntPoly(std::move(r));
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Integer& a = coeff(k);
    if (a == 0) continue;
    if (!first) os << (a > 0 ? " + " : " - ");
    else if (a < 0) os << "-";
    Integer mag = abs(a);
    if (mag != 1 || k == 0) os << mag.get_str();
    if (k >= 1) {
      os << var;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

// ---- rational-coefficient helpers ------------------------------------------

namespace {

using QVec = std::vector<Rational>;  // low degree first, trailing zeros trimmed

void qtrim(QVec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

QVec to_q(const IntPoly& p) {
  QVec v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.emplace_back(c);
  return v;
}

IntPoly from_q_cleared(const QVec& v) {
  Integer den(1);
  for (const auto& q : v) den = lcm_int(den, q.get_den());
  std::vector<Integer> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rational t = v[i] * Rational(den);
    t.canonicalize();
    r[i] = t.get_num();
  }
  return IntPoly(std::move(r));
}

// remainder of a by b over Q; b nonzero
QVec qrem(QVec a, const QVec& b) {
  qtrim(a);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  while (a.size() >= b.size()) {
    Rational f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a.pop_back();
    qtrim(a);
    if (a.empty()) break;
  }
  return a;
}

QVec qquot(QVec a, const QVec& b) {
  qtrim(a);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  if (a.size() < b.size()) return {};
  QVec q(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size()) {
    Rational f = a.back() / b.back();
    size_t off = a.size() - b.size();
    q[off] = f;
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a.pop_back();
    qtrim(a);
    if (a.empty()) break;
  }
  return q;
}

}  // namespace

IntPoly divide_exact(const IntPoly& num, const IntPoly& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  if (num.is_zero()) return IntPoly();
  QVec q = qquot(to_q(num), to_q(den));
  // verify exactness over Z
  IntPoly qi = from_q_cleared(q);
  for (const auto& r : q)
    if (r.get_den() != 1) throw std::domain_error("inexact polynomial division");
  (void)qi;
  std::vector<Integer> out(q.size());
  for (size_t i = 0; i < q.size(); ++i) out[i] = q[i].get_num();
  IntPoly res{std::move(out)};
  if (!(res * den == num)) throw std::domain_error("inexact polynomial division");
  return res;
}

bool divides(const IntPoly& den, const IntPoly& num) {
  if (den.is_zero()) return num.is_zero();
  if (num.is_zero()) return true;
  if (num.degree() < den.degree()) return false;
  QVec r = qrem(to_q(num), to_q(den));
  return r.empty();
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  QVec x = to_q(a), y = to_q(b);
  qtrim(x);
  qtrim(y);
  while (!y.empty()) {
    QVec r = qrem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return IntPoly();
  return from_q_cleared(x).canonical();
}

namespace {

QVec qderiv(const QVec& f) {
  if (f.size() <= 1) return {};
  QVec r(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * Rational(static_cast<long>(i));
  return r;
}

QVec qsub(const QVec& a, const QVec& b) {
  QVec r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  qtrim(r);
  return r;
}

QVec qmonic(QVec f) {
  qtrim(f);
  if (f.empty()) return f;
  Rational lc = f.back();
  for (auto& c : f) c /= lc;
  return f;
}

QVec qgcd_monic(QVec a, QVec b) {
  qtrim(a);
  qtrim(b);
  while (!b.empty()) {
    QVec r = qrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return qmonic(a);
}

}  // namespace

IntPoly squarefree_part(const IntPoly& p) {
  if (p.is_zero()) throw std::domain_error("squarefree part of zero polynomial");
  if (p.degree() == 0) return IntPoly::constant(1);
  QVec f = to_q(p);
  QVec g = qgcd_monic(f, qderiv(f));
  if (g.size() == 1) return p.canonical();
  return from_q_cleared(qquot(f, g)).canonical();
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
  if (p.is_zero()) throw std::domain_error("squarefree decomposition of zero polynomial");
  std::vector<std::pair<IntPoly, int>> out;
  if (p.degree() == 0) return out;
  // Yun's algorithm over Q
  QVec f = qmonic(to_q(p));
  QVec fp = qderiv(f);
  QVec g = qgcd_monic(f, fp);
  QVec c = qquot(f, g);
  QVec d = qsub(qquot(fp, g), qderiv(c));
  int i = 1;
  while (c.size() >= 2) {
    QVec a = qgcd_monic(c, d);
    if (a.size() >= 2) out.emplace_back(from_q_cleared(a).canonical(), i);
    c = qquot(c, a);
    d = qsub(qquot(d, a), qderiv(c));
    ++i;
  }
  return out;
}

Integer resultant(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero() || q.is_zero()) return Integer(0);
  int m = p.degree(), n = q.degree();
  if (m == 0 && n == 0) return Integer(1);
  if (m == 0) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), p.leading().get_mpz_t(), static_cast<unsigned long>(n));
    return r;
  }
  if (n == 0) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), q.leading().get_mpz_t(), static_cast<unsigned long>(m));
    return r;
  }
  // Sylvester matrix: n rows of p's coefficients, then m rows of q's (high degree first).
  int N = m + n;
  std::vector<std::vector<Integer>> M(N, std::vector<Integer>(N, Integer(0)));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) M[r][r + k] = p.coeff(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) M[n + r][r + k] = q.coeff(n - k);
  // Bareiss fraction-free elimination
  Integer prev(1);
  int sign = 1;
  for (int k = 0; k + 1 < N; ++k) {
    if (M[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < N; ++i)
        if (M[i][k] != 0) { piv = i; break; }
      if (piv < 0) return Integer(0);
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        Integer t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  return sign > 0 ? M[N - 1][N - 1] : Integer(-M[N - 1][N - 1]);
}

Rational cauchy_root_bound(const IntPoly& p) {
  if (p.is_zero()) throw std::domain_error("root bound of zero polynomial");
  Rational mx(0);
  for (int k = 0; k < p.degree(); ++k) {
    Rational t = abs(Rational(p.coeff(k)) / Rational(p.leading()));
    if (t > mx) mx = t;
  }
  return mx + 1;
}

IntPoly cyclotomic(unsigned n) {
  static std::map<unsigned, IntPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n == 0) throw std::domain_error("cyclotomic(0)");
  // x^n - 1 divided by all proper-divisor cyclotomics
  std::vector<Integer> xn(n + 1, Integer(0));
  xn[0] = -1;
  xn[n] = 1;
  IntPoly num{std::move(xn)};
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) num = divide_exact(num, cyclotomic(d));
  cache[n] = num;
  return num;
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<unsigned> totient_preimage(unsigned d) {
  // phi(n) >= sqrt(n/2), so n <= 2 d^2 (and n <= 2 for d = 1).
  std::vector<unsigned> out;
  unsigned bound = 2 * d * d + 2;
  for (unsigned n = 1; n <= bound; ++n)
    if (euler_phi(n) == d) out.push_back(n);
  return out;
}

std::optional<unsigned> cyclotomic_order(const IntPoly& p_in) {
  if (p_in.is_zero() || p_in.degree() == 0)
    throw std::invalid_argument("requires irreducible polynomial");
  IntPoly p = p_in.canonical();
  unsigned d = static_cast<unsigned>(p.degree());
  if (abs(p.leading()) == 1) {
    for (unsigned n : totient_preimage(d)) {
      if (p == cyclotomic(n)) return n;
    }
  }
  // Best-effort precondition checks (see ledger): detect obviously reducible input.
  if (gcd(p, p.derivative()).degree() >= 1)
    throw std::invalid_argument("requires irreducible polynomial");
  if (d >= 2 && p.coeff(0) == 0)
    throw std::invalid_argument("requires irreducible polynomial");
  if (d >= 2) {
    for (long r : {1L, -1L}) {
      if (p.eval(Integer(r)) == 0) throw std::invalid_argument("requires irreducible polynomial");
    }
    for (unsigned n = 1; n <= 2 * d * d + 2; ++n) {
      IntPoly phi = cyclotomic(n);
      if (phi.degree() >= 1 && phi.degree() < p.degree() && divides(phi, p))
        throw std::invalid_argument("requires irreducible polynomial");
    }
  }
  return std::nullopt;
}

std::vector<Rational> power_sums(const IntPoly& p, int n) {
  if (p.is_zero()) throw std::domain_error("power sums of zero polynomial");
  int d = p.degree();
  // monic normalization over Q: e_k = (-1)^k a_{d-k}/a_d
  std::vector<Rational> e(d + 1, Rational(0));
  e[0] = 1;
  for (int k = 1; k <= d; ++k) {
    e[k] = Rational(p.coeff(d - k)) / Rational(p.leading());
    if (k % 2 == 1) e[k] = -e[k];
  }
  std::vector<Rational> s(n + 1, Rational(0));  // s[0] unused, by convention s_0 = d
  for (int k = 1; k <= n; ++k) {
    Rational acc(0);
    int top = std::min(k - 1, d);
    for (int i = 1; i <= top; ++i) {
      Rational t = e[i] * s[k - i];
      if (i % 2 == 0) acc -= t;
      else acc += t;
    }
    if (k <= d) {
      Rational t = Rational(k) * e[k];
      if (k % 2 == 0) acc -= t;
      else acc += t;
    }
    s[k] = acc;
  }
  s.erase(s.begin());
  return s;  // s[0] = p_1, ..., s[n-1] = p_n
}

IntPoly poly_from_power_sums(const std::vector<Rational>& s, int deg) {
  // e_k = (1/k) sum_{i=1}^{k} (-1)^{i-1} e_{k-i} s_i ; monic poly with these elementaries
  std::vector<Rational> e(deg + 1, Rational(0));
  e[0] = 1;
  for (int k = 1; k <= deg; ++k) {
    Rational acc(0);
    for (int i = 1; i <= k; ++i) {
      Rational t = e[k - i] * s[i - 1];
      if (i % 2 == 0) acc -= t;
      else acc += t;
    }
    e[k] = acc / Rational(k);
  }
  QVec coeffs(deg + 1, Rational(0));
  for (int k = 0; k <= deg; ++k) {
    Rational c = e[k];
    if (k % 2 == 1) c = -c;
    coeffs[deg - k] = c;
  }
  return from_q_cleared(coeffs);
}

IntPoly composed_product(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero() || q.is_zero()) throw std::domain_error("composed product of zero polynomial");
  int dp = p.degree(), dq = q.degree();
  int d = dp * dq;
  if (d == 0) return IntPoly::constant(1);
  std::vector<Rational> sp = power_sums(p, d);
  std::vector<Rational> sq = power_sums(q, d);
  std::vector<Rational> s(d);
  for (int i = 0; i < d; ++i) s[i] = sp[i] * sq[i];
  return poly_from_power_sums(s, d);
}

IntPoly composed_power(const IntPoly& p, unsigned k) {
  if (p.is_zero()) throw std::domain_error("composed power of zero polynomial");
  int d = p.degree();
  if (d == 0) return IntPoly::constant(1);
  if (k == 0) {
    // all roots become 1
    IntPoly r{-1, 1};
    IntPoly acc = IntPoly::constant(1);
    for (int i = 0; i < d; ++i) acc = acc * r;
    return acc;
  }
  std::vector<Rational> sp = power_sums(p, static_cast<int>(k) * d);
  std::vector<Rational> s(d);
  for (int i = 1; i <= d; ++i) s[i - 1] = sp[static_cast<size_t>(i) * k - 1];
  return poly_from_power_sums(s, d);
}

namespace {

// q(a + b*x) over Z for integer a, b
IntPoly compose_linear(const IntPoly& q, const Integer& a, const Integer& b) {
  IntPoly acc;
  IntPoly lin{std::vector<Integer>{a, b}};
  for (auto it = q.coeffs().rbegin(); it != q.coeffs().rend(); ++it)
    acc = acc * lin + IntPoly::constant(*it);
  return acc;
}

// exact polynomial interpolation through integer nodes with integer values
IntPoly interpolate(const std::vector<Integer>& nodes, const std::vector<Integer>& values) {
  size_t n = nodes.size();
  // Newton divided differences over Q
  std::vector<Rational> dd(n);
  for (size_t i = 0; i < n; ++i) dd[i] = Rational(values[i]);
  std::vector<std::vector<Rational>> table(n);
  table[0] = dd;
  for (size_t lvl = 1; lvl < n; ++lvl) {
    table[lvl].resize(n - lvl);
    for (size_t i = 0; i + lvl < n; ++i) {
      table[lvl][i] = (table[lvl - 1][i + 1] - table[lvl - 1][i]) /
                      Rational(nodes[i + lvl] - nodes[i]);
    }
  }
  // expand Newton form
  QVec poly{table[n - 1][0]};
  for (size_t lvl = n - 1; lvl-- > 0;) {
    // poly = poly*(x - nodes[lvl]) + table[lvl][0]
    QVec next(poly.size() + 1, Rational(0));
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * Rational(nodes[lvl]);
    }
    next[0] += table[lvl][0];
    poly = std::move(next);
  }
  qtrim(poly);
  return from_q_cleared(poly);
}

}  // namespace

IntPoly composed_sum(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero() || q.is_zero()) throw std::domain_error("composed sum of zero polynomial");
  int dp = p.degree(), dq = q.degree();
  int d = dp * dq;
  if (d == 0) return IntPoly::constant(1);
  // R(x) = Res_y(p(y), q(x - y)); evaluate at integer nodes and interpolate.
  std::vector<Integer> nodes, values;
  long t = 0;
  while (static_cast<int>(nodes.size()) < d + 1) {
    Integer node(t);
    IntPoly qt = compose_linear(q, node, Integer(-1));  // q(t - y) as poly in y
    values.push_back(resultant(p, qt));
    nodes.push_back(node);
    t = (t > 0) ? -t : -t + 1;  // 0, 1, -1, 2, -2, ...
  }
  return interpolate(nodes, values);
}

IntPoly composed_difference(const IntPoly& p, const IntPoly& q) {
  return composed_sum(p, q.negate_variable());
}

// ---- mod-p irreducibility proof ---------------------------------------------

namespace {

using FpPoly = std::vector<uint64_t>;  // low first, trimmed

void fptrim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fpmulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  // reduce mod `mod` (monic)
  while (r.size() >= mod.size()) {
    uint64_t f = r.back();
    if (f != 0) {
      size_t off = r.size() - mod.size();
      for (size_t i = 0; i < mod.size(); ++i) {
        uint64_t sub = (f * mod[i]) % p;
        r[off + i] = (r[off + i] + p - sub) % p;
      }
    }
    r.pop_back();
  }
  fptrim(r);
  return r;
}

FpPoly fppowmod(FpPoly base, uint64_t e, const FpPoly& mod, uint64_t p) {
  FpPoly result{1};
  while (e > 0) {
    if (e & 1) result = fpmulmod(result, base, mod, p);
    base = fpmulmod(base, base, mod, p);
    e >>= 1;
  }
  return result;
}

FpPoly fpgcd(FpPoly a, FpPoly b, uint64_t p) {
  auto inv = [p](uint64_t x) {
    // Fermat
    uint64_t r = 1, e = p - 2, base = x % p;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  fptrim(a);
  fptrim(b);
  while (!b.empty()) {
    // a mod b
    uint64_t lcinv = inv(b.back());
    while (a.size() >= b.size()) {
      uint64_t f = a.back() * lcinv % p;
      if (f != 0) {
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
          uint64_t sub = f * b[i] % p;
          a[off + i] = (a[off + i] + p - sub) % p;
        }
      }
      a.pop_back();
      fptrim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

FpPoly fpderiv(const FpPoly& f, uint64_t p) {
  if (f.size() <= 1) return {};
  FpPoly r(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * (i % p) % p;
  fptrim(r);
  return r;
}

}  // namespace

bool irreducible_mod_prime_proof(const IntPoly& poly) {
  static const uint64_t primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                    41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
                                    97, 101, 103, 107, 109, 113, 127, 131, 137, 139};
  if (poly.is_zero() || poly.degree() == 0) return false;
  if (poly.degree() == 1) return true;
  int d = poly.degree();
  for (uint64_t p : primes) {
    if (mpz_fdiv_ui(poly.leading().get_mpz_t(), static_cast<unsigned long>(p)) == 0) continue;
    FpPoly f(poly.coeffs().size());
    for (size_t i = 0; i < poly.coeffs().size(); ++i) {
      unsigned long m = mpz_fdiv_ui(poly.coeffs()[i].get_mpz_t(), static_cast<unsigned long>(p));
      f[i] = m;
    }
    fptrim(f);
    if (static_cast<int>(f.size()) - 1 != d) continue;
    // monicize
    {
      uint64_t lc = f.back(), inv = 1, e = p - 2, base = lc % p;
      while (e) {
        if (e & 1) inv = inv * base % p;
        base = base * base % p;
        e >>= 1;
      }
      for (auto& c : f) c = c * inv % p;
    }
    FpPoly g = fpgcd(f, fpderiv(f, p), p);
    if (g.size() != 1) continue;  // not squarefree mod p
    // f irreducible over F_p iff no factor of degree <= d/2:
    // h_i = x^{p^i} mod f; require gcd(h_i - x, f) = 1 for i = 1..d/2
    FpPoly h{0, 1};
    bool ok = true;
    for (int i = 1; i <= d / 2; ++i) {
      h = fppowmod(h, p, f, p);
      FpPoly hx = h;
      if (hx.size() < 2) hx.resize(2, 0);
      hx[1] = (hx[1] + p - 1) % p;
      fptrim(hx);
      FpPoly g2 = fpgcd(hx, f, p);
      if (g2.size() != 1) { ok = false; break; }
    }
    if (ok) return true;
  }
  return false;
}

// ---- Sturm ------------------------------------------------------------------

SturmChain::SturmChain(const IntPoly& f) {
  if (f.is_zero()) throw std::domain_error("Sturm chain of zero polynomial");
  seq_.push_back(f.primitive_part());
  if (f.degree() == 0) return;
  seq_.push_back(f.derivative().primitive_part());
  while (seq_.back().degree() >= 0 && !seq_.back().is_zero()) {
    const IntPoly& a = seq_[seq_.size() - 2];
    const IntPoly& b = seq_.back();
    if (b.degree() == 0) break;
    QVec r = qrem(to_q(a), to_q(b));
    if (r.empty()) break;  // gcd reached (input not squarefree) — chain still valid for sign counts of distinct roots
    IntPoly rem = from_q_cleared(r);
    rem = rem.primitive_part();
    // negate remainder; primitive_part keeps sign of leading, so negate explicitly
    seq_.push_back(-rem);
  }
}

int SturmChain::variations_at(const Rational& x) const {
  int var = 0, prev = 0;
  for (const auto& f : seq_) {
    int s = f.sign_at(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int SturmChain::variations_at_minus_inf() const {
  int var = 0, prev = 0;
  for (const auto& f : seq_) {
    if (f.is_zero()) continue;
    int s = sgn(f.leading());
    if (f.degree() % 2 == 1) s = -s;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int SturmChain::variations_at_plus_inf() const {
  int var = 0, prev = 0;
  for (const auto& f : seq_) {
    if (f.is_zero()) continue;
    int s = sgn(f.leading());
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int SturmChain::count_open(const Rational& lo, const Rational& hi) const {
  if (!(lo < hi)) return 0;
  return variations_at(lo) - variations_at(hi);
}

int SturmChain::count_all() const {
  return variations_at_minus_inf() - variations_at_plus_inf();
}

std::vector<QInterval> isolate_real_roots_squarefree(const IntPoly& f) {
  std::vector<QInterval> out;
  if (f.is_zero()) throw std::domain_error("root isolation of zero polynomial");
  if (f.degree() == 0) return out;
  if (f.degree() == 1) {
    Rational r = Rational(-f.coeff(0)) / Rational(f.coeff(1));
    r.canonicalize();
    out.push_back({r, r});
    return out;
  }
  SturmChain chain(f);
  Rational B = cauchy_root_bound(f);
  struct Node { Rational lo, hi; int cnt; };
  std::vector<Node> stack;
  int total = chain.count_open(-B, B);
  if (total > 0) stack.push_back({-B, B, total});
  while (!stack.empty()) {
    Node nd = stack.back();
    stack.pop_back();
    if (nd.cnt == 0) continue;
    if (nd.cnt == 1) {
      out.push_back({nd.lo, nd.hi});
      continue;
    }
    Rational m = (nd.lo + nd.hi) / 2;
    if (f.sign_at(m) == 0) {
      out.push_back({m, m});
      // carve out a root-free neighborhood of m before recursing
      Rational delta = (nd.hi - nd.lo) / 16;
      while (true) {
        Rational a = m - delta, b = m + delta;
        if (f.sign_at(a) != 0 && f.sign_at(b) != 0 && chain.count_open(a, b) == 1) {
          int left = chain.count_open(nd.lo, a);
          int right = chain.count_open(b, nd.hi);
          if (left > 0) stack.push_back({nd.lo, a, left});
          if (right > 0) stack.push_back({b, nd.hi, right});
          break;
        }
        delta /= 3;
      }
    } else {
      int left = chain.count_open(nd.lo, m);
      int right = nd.cnt - left - 0;
      // m is not a root, so counts partition exactly
      if (left > 0) stack.push_back({nd.lo, m, left});
      if (right > 0) stack.push_back({m, nd.hi, right});
    }
  }
  std::sort(out.begin(), out.end(), [](const QInterval& a, const QInterval& b) {
    return a.lo < b.lo;
  });
  return out;
}

}  // namespace momkit
