#include "momkit/algebraic.hpp"

#include <algorithm>
#include <sstream>

namespace momkit {

AlgebraicReal AlgebraicReal::from_rational(const Rational& r) {
  return AlgebraicReal(IntPoly::linear_from_root(r), r, r);
}

AlgebraicReal AlgebraicReal::from_root(const IntPoly& f, const QInterval& iv) {
  IntPoly def = squarefree_part(f).canonical();
  if (iv.is_point()) {
    if (def.sign_at(iv.lo) != 0)
      throw std::invalid_argument("point interval is not a root");
    return from_rational(iv.lo);
  }
  if (def.sign_at(iv.lo) == 0 || def.sign_at(iv.hi) == 0)
    throw std::invalid_argument("isolating interval endpoints must not be roots");
  if (def.sign_at(iv.lo) * def.sign_at(iv.hi) >= 0)
    throw std::invalid_argument("interval does not isolate a single simple root");
  // rational root detection for linear defining polynomials
  if (def.degree() == 1) {
    Rational r = Rational(-def.coeff(0)) / Rational(def.coeff(1));
    r.canonicalize();
    return from_rational(r);
  }
  return AlgebraicReal(std::move(def), iv.lo, iv.hi);
}

Rational AlgebraicReal::rational_value() const {
  if (!is_rational_point()) throw std::logic_error("not a rational point");
  return lo_;
}

void AlgebraicReal::refine() {
  if (is_rational_point()) return;
  Rational m = (lo_ + hi_) / 2;
  int sm = def_.sign_at(m);
  if (sm == 0) {
    // rational root hit: collapse and renormalize the representation
    *this = from_rational(m);
    return;
  }
  if (def_.sign_at(lo_) * sm < 0) hi_ = m;
  else lo_ = m;
}

void AlgebraicReal::refine_to_width(const Rational& w) {
  while (!is_rational_point() && hi_ - lo_ > w) refine();
}

int AlgebraicReal::sign() const {
  if (is_rational_point()) return sgn(lo_);
  AlgebraicReal t = *this;
  while (true) {
    if (t.lo_ > 0) return 1;
    if (t.hi_ < 0) return -1;
    // interval straddles 0: maybe the root *is* 0
    if (t.def_.coeff(0) == 0 && t.lo_ < 0 && t.hi_ > 0) return 0;
    t.refine();
    if (t.is_rational_point()) return sgn(t.lo_);
  }
}

AlgebraicReal AlgebraicReal::negated() const {
  if (is_rational_point()) return from_rational(Rational(-lo_));
  return AlgebraicReal(def_.negate_variable().canonical(), Rational(-hi_), Rational(-lo_));
}

AlgebraicReal AlgebraicReal::abs_value() const {
  int s = sign();
  if (s >= 0) {
    AlgebraicReal t = *this;
    // ensure the stored interval is nonnegative-presentable
    while (!t.is_rational_point() && t.lo_ < 0) t.refine();
    return t;
  }
  AlgebraicReal t = negated();
  while (!t.is_rational_point() && t.lo_ < 0) t.refine();
  return t;
}

namespace {

// interval product [a1,a2] * [b1,b2]
QInterval interval_mul(const QInterval& a, const QInterval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  Rational lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Rational hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return {lo, hi};
}

AlgebraicReal locate_in(const IntPoly& candidates, const std::function<void()>& refine_sources,
                        const std::function<QInterval()>& current_interval) {
  return locate_real_root(candidates, current_interval, refine_sources);
}

}  // namespace

AlgebraicReal locate_real_root(const IntPoly& candidates,
                               const std::function<QInterval()>& interval,
                               const std::function<void()>& refine) {
  IntPoly def = squarefree_part(candidates).canonical();
  SturmChain chain(def);
  while (true) {
    QInterval iv = interval();
    if (iv.is_point() && def.sign_at(iv.lo) == 0) return AlgebraicReal::from_rational(iv.lo);
    if (!iv.is_point() && def.sign_at(iv.lo) != 0 && def.sign_at(iv.hi) != 0 &&
        chain.count_open(iv.lo, iv.hi) == 1) {
      return AlgebraicReal::from_root(def, iv);
    }
    refine();
  }
}

AlgebraicReal AlgebraicReal::squared() const {
  if (is_rational_point()) return from_rational(Rational(lo_ * lo_));
  // Graeffe: f(x) f(-x) = G(x^2), roots of G are squares of roots of f.
  const IntPoly& f = def_;
  std::vector<Integer> even, odd;
  for (int k = 0; k <= f.degree(); ++k) {
    if (k % 2 == 0) even.push_back(f.coeff(k));
    else odd.push_back(f.coeff(k));
  }
  IntPoly E{std::move(even)}, O{std::move(odd)};
  IntPoly G = E * E - (O * O).shift_up(1);
  AlgebraicReal src = *this;
  // ensure sign-definite interval so squaring is monotone
  while (!src.is_rational_point() && src.lo_ < 0 && src.hi_ > 0) src.refine();
  return locate_in(
      G, [&src] { src.refine(); },
      [&src]() -> QInterval {
        if (src.is_rational_point()) {
          Rational v = src.lo_ * src.lo_;
          return {v, v};
        }
        Rational a = src.lo_ * src.lo_, b = src.hi_ * src.hi_;
        if (a > b) std::swap(a, b);
        if (src.lo_ < 0 && src.hi_ > 0) a = 0;
        return {a, b};
      });
}

AlgebraicReal AlgebraicReal::sqrt_nonneg() const {
  int s = sign();
  if (s < 0) throw std::domain_error("sqrt of negative algebraic number");
  if (s == 0) return from_rational(Rational(0));
  if (is_rational_point()) {
    // exact rational square root if it exists, else fall through to algebraic
    Rational v = lo_;
    Integer num = v.get_num(), den = v.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
      Integer rn, rd;
      mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
      Rational r(rn);
      r /= Rational(rd);
      return from_rational(r);
    }
  }
  IntPoly W = def_.square_variable();  // W(x) = f(x^2)
  AlgebraicReal src = *this;
  while (!src.is_rational_point() && src.lo_ <= 0) src.refine();
  unsigned prec = 32;
  return locate_in(
      W,
      [&src, &prec] {
        src.refine();
        prec += 16;
      },
      [&src, &prec]() -> QInterval {
        Rational llo, lhi, hlo, hhi;
        sqrt_bounds(src.lo_ < 0 ? Rational(0) : src.lo_, prec, llo, lhi);
        sqrt_bounds(src.hi_, prec, hlo, hhi);
        return {llo, hhi};
      });
}

AlgebraicReal AlgebraicReal::scaled(const Rational& c) const {
  if (c == 0) return from_rational(Rational(0));
  if (is_rational_point()) return from_rational(Rational(lo_ * c));
  Rational inv = Rational(1) / c;
  IntPoly g = def_.scale_variable(inv).canonical();  // g(x) = f(x/c) cleared
  Rational a = lo_ * c, b = hi_ * c;
  if (a > b) std::swap(a, b);
  return AlgebraicReal::from_root(g, {a, b});
}

double AlgebraicReal::approx() const {
  AlgebraicReal t = *this;
  Rational w(1, 1);
  for (int i = 0; i < 60; ++i) w /= 2;
  t.refine_to_width(w);
  Rational m = (t.lo_ + t.hi_) / 2;
  return m.get_d();
}

std::string AlgebraicReal::decimal_approx(int digits) const {
  AlgebraicReal t = *this;
  Rational w(1);
  for (int i = 0; i < digits + 2; ++i) w /= 10;
  t.refine_to_width(w);
  Rational m = (t.lo_ + t.hi_) / 2;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = m * Rational(scale);
  Integer rounded = floor_int(scaled + Rational(1, 2));
  bool neg = rounded < 0;
  Integer mag = abs(rounded);
  std::string s = mag.get_str();
  if (static_cast<int>(s.size()) <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
  s.insert(s.size() - digits, ".");
  if (neg) s = "-" + s;
  return s;
}

int compare_to_rational(const AlgebraicReal& a, const Rational& r) {
  if (a.is_rational_point()) return cmp(a.rational_value(), r) > 0 ? 1 : (a.rational_value() == r ? 0 : -1);
  AlgebraicReal t = a;
  while (true) {
    if (t.is_rational_point()) {
      Rational v = t.rational_value();
      return v > r ? 1 : (v == r ? 0 : -1);
    }
    if (t.lo() >= r) {
      // endpoints are never roots, so lo == r still means the value is > r
      return 1;
    }
    if (t.hi() <= r) return -1;
    // r strictly inside: equal iff r is the unique root
    if (t.defining().sign_at(r) == 0) return 0;
    t.refine();
  }
}

Ordering compare_algebraic(const AlgebraicReal& a_in, const AlgebraicReal& b_in) {
  AlgebraicReal a = a_in, b = b_in;
  auto as_ordering = [](int c) { return c < 0 ? Ordering::LT : (c == 0 ? Ordering::EQ : Ordering::GT); };
  if (a.is_rational_point()) return as_ordering(-compare_to_rational(b, a.rational_value()));
  if (b.is_rational_point()) return as_ordering(compare_to_rational(a, b.rational_value()));

  IntPoly g = gcd(a.defining(), b.defining());
  bool may_be_equal = g.degree() >= 1;
  std::optional<SturmChain> chain;
  if (may_be_equal) chain.emplace(g);

  while (true) {
    if (a.is_rational_point()) return as_ordering(-compare_to_rational(b, a.rational_value()));
    if (b.is_rational_point()) return as_ordering(compare_to_rational(a, b.rational_value()));
    if (a.hi() <= b.lo()) return Ordering::LT;  // endpoints non-roots => strict
    if (b.hi() <= a.lo()) return Ordering::GT;
    if (may_be_equal) {
      // roots(g) are roots of both defining polynomials; the isolating interval
      // of a contains exactly one root of a's defining polynomial, hence at most
      // one root of g — and if one, it *is* a.
      int ca = chain->count_open(a.lo(), a.hi());
      int cb = chain->count_open(b.lo(), b.hi());
      if (ca == 0 || cb == 0) {
        may_be_equal = false;
      } else {
        Rational hl = std::min(a.lo(), b.lo()), hh = std::max(a.hi(), b.hi());
        if (chain->count_open(hl, hh) == 1) return Ordering::EQ;
      }
    }
    a.refine();
    b.refine();
  }
}

AlgebraicReal mul(const AlgebraicReal& a_in, const AlgebraicReal& b_in) {
  if (a_in.is_rational_point()) return b_in.scaled(a_in.rational_value());
  if (b_in.is_rational_point()) return a_in.scaled(b_in.rational_value());
  IntPoly prod = composed_product(a_in.defining(), b_in.defining());
  AlgebraicReal a = a_in, b = b_in;
  return locate_in(
      prod,
      [&a, &b] {
        a.refine();
        b.refine();
      },
      [&a, &b]() -> QInterval { return interval_mul(a.interval(), b.interval()); });
}

AlgebraicReal pow(const AlgebraicReal& a_in, unsigned k) {
  if (k == 0) return AlgebraicReal::from_rational(Rational(1));
  if (k == 1) return a_in;
  if (a_in.is_rational_point()) {
    Rational v = a_in.rational_value();
    Rational acc(1);
    for (unsigned i = 0; i < k; ++i) acc *= v;
    return AlgebraicReal::from_rational(acc);
  }
  IntPoly target = composed_power(a_in.defining(), k);
  AlgebraicReal a = a_in;
  // keep the interval sign-definite so the power interval is easy
  while (!a.is_rational_point() && a.lo() < 0 && a.hi() > 0) a.refine();
  return locate_in(
      target, [&a] { a.refine(); },
      [&a, k]() -> QInterval {
        QInterval r{Rational(1), Rational(1)};
        for (unsigned i = 0; i < k; ++i) r = interval_mul(r, a.interval());
        return r;
      });
}

std::vector<RootWithMult> isolate_real_roots(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial has no root set");
  std::vector<RootWithMult> out;
  for (const auto& [factor, mult] : squarefree_decomposition(p)) {
    for (const auto& iv : isolate_real_roots_squarefree(factor)) {
      out.push_back({AlgebraicReal::from_root(factor, iv), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const RootWithMult& x, const RootWithMult& y) {
    return compare_algebraic(x.value, y.value) == Ordering::LT;
  });
  return out;
}

}  // namespace momkit
