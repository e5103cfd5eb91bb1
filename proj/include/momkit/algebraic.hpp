#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "momkit/intpoly.hpp"

namespace momkit {

enum class Ordering { LT, EQ, GT };

// A real algebraic number: squarefree primitive defining polynomial with
// positive leading coefficient, plus an isolating interval.  Either lo == hi
// (a rational point) or lo < hi with non-root endpoints and exactly one root
// of the defining polynomial inside.
class AlgebraicReal {
 public:
  AlgebraicReal() : AlgebraicReal(from_rational(Rational(0))) {}

  static AlgebraicReal from_rational(const Rational& r);
  // f need not be canonical; it is squarefree-d and canonicalized here.
  // The interval must isolate exactly one real root of f.
  static AlgebraicReal from_root(const IntPoly& f, const QInterval& iv);

  const IntPoly& defining() const { return def_; }
  QInterval interval() const { return {lo_, hi_}; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

  bool is_rational_point() const { return lo_ == hi_; }
  Rational rational_value() const;  // requires is_rational_point()

  void refine();  // one bisection step (no-op on points)
  void refine_to_width(const Rational& w);

  int sign() const;  // exact sign of the number (refines a cached copy)

  AlgebraicReal negated() const;
  AlgebraicReal abs_value() const;
  AlgebraicReal squared() const;
  AlgebraicReal sqrt_nonneg() const;  // requires the number >= 0
  AlgebraicReal scaled(const Rational& c) const;

  double approx() const;
  std::string decimal_approx(int digits) const;

 private:
  AlgebraicReal(IntPoly def, Rational lo, Rational hi)
      : def_(std::move(def)), lo_(std::move(lo)), hi_(std::move(hi)) {}

  IntPoly def_;
  Rational lo_, hi_;
};

// Exact total order.  EQ only when the two numbers coincide as algebraic
// numbers (decided via gcd of defining polynomials plus interval refinement).
Ordering compare_algebraic(const AlgebraicReal& a, const AlgebraicReal& b);
int compare_to_rational(const AlgebraicReal& a, const Rational& r);  // sign of a - r

AlgebraicReal mul(const AlgebraicReal& a, const AlgebraicReal& b);
AlgebraicReal pow(const AlgebraicReal& a, unsigned k);

struct RootWithMult {
  AlgebraicReal value;
  int multiplicity;
};

// Locate a real value known to be a root of `candidates`, presented through a
// shrinking rational enclosure: `interval()` returns the current enclosure and
// `refine()` tightens it towards the value.
AlgebraicReal locate_real_root(const IntPoly& candidates,
                               const std::function<QInterval()>& interval,
                               const std::function<void()>& refine);

// Spec operation: all distinct real roots of p with multiplicities, ascending.
std::vector<RootWithMult> isolate_real_roots(const IntPoly& p);

}  // namespace momkit
