#include "momkit/lrs.hpp"

#include <sstream>

namespace momkit {

std::string CommPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Integer mag = abs(c);
    bool has_vars = false;
    for (unsigned x : e) has_vars = has_vars || x > 0;
    if (mag != 1 || !has_vars) os << mag.get_str();
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
    first = false;
  }
  return os.str();
}

namespace {

struct AddVisitor {
  RingElement operator()(const Rational& a, const Rational& b) const { return Rational(a + b); }
  RingElement operator()(const GaussQ& a, const GaussQ& b) const { return a + b; }
  RingElement operator()(const CommPoly& a, const CommPoly& b) const { return a + b; }
  template <typename A, typename B>
  RingElement operator()(const A&, const B&) const {
    throw std::invalid_argument("mixed-ring arithmetic");
  }
};

struct MulVisitor {
  RingElement operator()(const Rational& a, const Rational& b) const { return Rational(a * b); }
  RingElement operator()(const GaussQ& a, const GaussQ& b) const { return a * b; }
  RingElement operator()(const CommPoly& a, const CommPoly& b) const { return a * b; }
  template <typename A, typename B>
  RingElement operator()(const A&, const B&) const {
    throw std::invalid_argument("mixed-ring arithmetic");
  }
};

}  // namespace

RingElement ring_add(const RingElement& a, const RingElement& b) {
  return std::visit(AddVisitor{}, a, b);
}

RingElement ring_mul(const RingElement& a, const RingElement& b) {
  return std::visit(MulVisitor{}, a, b);
}

bool ring_eq(const RingElement& a, const RingElement& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [](const auto& x, const auto& y) -> bool {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::decay_t<decltype(y)>>)
          return x == y;
        else
          return false;
      },
      a, b);
}

std::string to_string(const RingElement& e) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>) return to_string(x);
        else if constexpr (std::is_same_v<T, GaussQ>) return to_string(x);
        else return x.to_string();
      },
      e);
}

void LRSSpec::validate() const {
  if (coeffs.empty() || coeffs.size() != initial.size())
    throw std::invalid_argument("LRS spec needs order = #coefficients = #initial values >= 1");
  auto tag_ok = [this](const RingElement& e) {
    switch (ring) {
      case RingTag::Rational: return std::holds_alternative<Rational>(e);
      case RingTag::GaussianRational: return std::holds_alternative<GaussQ>(e);
      case RingTag::IntPolyRing: return std::holds_alternative<CommPoly>(e);
    }
    return false;
  };
  for (const auto& e : coeffs)
    if (!tag_ok(e)) throw std::invalid_argument("LRS coefficient ring mismatch");
  for (const auto& e : initial)
    if (!tag_ok(e)) throw std::invalid_argument("LRS initial-value ring mismatch");
}

RingElement term(const LRSSpec& spec, unsigned long n) {
  spec.validate();
  if (n == 0) throw std::invalid_argument("terms indexed from 1");
  size_t s = spec.coeffs.size();
  if (n <= s) return spec.initial[n - 1];
  // window holds u_{k-s+1}..u_k, most recent last
  std::vector<RingElement> window(spec.initial);
  for (unsigned long k = s + 1; k <= n; ++k) {
    RingElement next = ring_mul(spec.coeffs[0], window[s - 1]);
    for (size_t i = 1; i < s; ++i)
      next = ring_add(next, ring_mul(spec.coeffs[i], window[s - 1 - i]));
    window.erase(window.begin());
    window.push_back(std::move(next));
  }
  return window.back();
}

std::vector<Rational> rational_terms(const LRSSpec& spec, unsigned long n) {
  spec.validate();
  if (spec.ring != RingTag::Rational) throw std::invalid_argument("rational_terms needs a rational LRS");
  size_t s = spec.coeffs.size();
  std::vector<Rational> a(s), out;
  for (size_t i = 0; i < s; ++i) a[i] = std::get<Rational>(spec.coeffs[i]);
  out.reserve(n);
  for (size_t i = 0; i < std::min<size_t>(s, n); ++i)
    out.push_back(std::get<Rational>(spec.initial[i]));
  for (unsigned long k = s + 1; k <= n; ++k) {
    Rational next(0);
    for (size_t i = 0; i < s; ++i) next += a[i] * out[out.size() - 1 - i];
    out.push_back(next);
  }
  return out;
}

CompanionBridge companion(const LRSSpec& spec) {
  spec.validate();
  if (spec.ring != RingTag::Rational)
    throw std::invalid_argument("companion bridge over Q needs a rational LRS");
  int s = spec.order();
  CompanionBridge br;
  br.a = RatMatrix(s);
  for (int i = 0; i < s; ++i) {
    br.a.at(i, 0) = std::get<Rational>(spec.coeffs[i]);
    if (i + 1 < s) br.a.at(i, i + 1) = Rational(1);
  }
  br.v.resize(s);
  br.w.assign(s, Rational(0));
  for (int i = 0; i < s; ++i) br.v[i] = std::get<Rational>(spec.initial[s - 1 - i]);
  br.w[0] = Rational(1);
  return br;
}

GaussCompanionBridge companion_gauss(const LRSSpec& spec) {
  spec.validate();
  if (spec.ring != RingTag::GaussianRational)
    throw std::invalid_argument("companion bridge over Q[i] needs a Gaussian LRS");
  int s = spec.order();
  GaussCompanionBridge br;
  br.a = GaussMatrix(s);
  for (int i = 0; i < s; ++i) {
    br.a.at(i, 0) = std::get<GaussQ>(spec.coeffs[i]);
    if (i + 1 < s) br.a.at(i, i + 1) = GaussQ(Rational(1));
  }
  br.v.resize(s);
  br.w.assign(s, GaussQ());
  for (int i = 0; i < s; ++i) br.v[i] = std::get<GaussQ>(spec.initial[s - 1 - i]);
  br.w[0] = GaussQ(Rational(1));
  return br;
}

LRSSpec from_moments(const RatMatrix& a, const LinearFunctional& phi) {
  phi.check_dimension(a.size());
  int s = a.size();
  std::vector<Rational> p = char_poly_rational(a);  // monic, low first
  LRSSpec spec;
  spec.ring = RingTag::Rational;
  spec.coeffs.resize(s);
  // p(x) = x^s - a_1 x^{s-1} - ... - a_s  =>  a_i = -p[s-i]
  for (int i = 1; i <= s; ++i) spec.coeffs[i - 1] = Rational(-p[s - i]);
  spec.initial.resize(s);
  RatMatrix pw = RatMatrix::identity(s);
  for (int i = 1; i <= s; ++i) {
    pw = pw * a;
    spec.initial[i - 1] = phi.apply(pw);
  }
  return spec;
}

}  // namespace momkit
