#pragma once

#include <map>
#include <vector>

#include "momkit/rational.hpp"

namespace momkit {

// Multivariate polynomial over Z.  Exponent vectors are stored with trailing
// zeros trimmed, so the representation is independent of a nominal variable
// count; serialization pads to the instance arity.
class CommPoly {
 public:
  using Exponents = std::vector<unsigned>;

  CommPoly() = default;  // zero
  CommPoly(int c) : CommPoly(Integer(c)) {}
  explicit CommPoly(Integer c) {
    if (c != 0) terms_[Exponents{}] = std::move(c);
  }

  static CommPoly variable(int index, Integer coeff = Integer(1)) {
    CommPoly p;
    if (coeff != 0) {
      Exponents e(index + 1, 0);
      e[index] = 1;
      p.terms_[std::move(e)] = std::move(coeff);
    }
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Integer>& terms() const { return terms_; }

  int vars() const {
    size_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.size());
    return static_cast<int>(d);
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int t = 0;
      for (unsigned x : e) t += static_cast<int>(x);
      d = std::max(d, t);
    }
    return d;
  }

  Integer coeff(Exponents e) const {
    trim(e);
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add_term(Exponents e, const Integer& c) {
    if (c == 0) return;
    trim(e);
    auto [it, fresh] = terms_.emplace(std::move(e), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  CommPoly operator+(const CommPoly& o) const {
    CommPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  CommPoly operator-(const CommPoly& o) const {
    CommPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, Integer(-c));
    return r;
  }
  CommPoly operator-() const { return CommPoly() - *this; }
  CommPoly operator*(const CommPoly& o) const {
    CommPoly r;
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        Exponents e(std::max(e1.size(), e2.size()), 0);
        for (size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
        for (size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
        r.add_term(std::move(e), c1 * c2);
      }
    return r;
  }
  CommPoly& operator+=(const CommPoly& o) { *this = *this + o; return *this; }
  CommPoly& operator-=(const CommPoly& o) { *this = *this - o; return *this; }
  CommPoly& operator*=(const CommPoly& o) { *this = *this * o; return *this; }

  bool operator==(const CommPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const CommPoly& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  static void trim(Exponents& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
  }
  std::map<Exponents, Integer> terms_;
};

}  // namespace momkit
