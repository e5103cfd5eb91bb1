#pragma once

#include <variant>
#include <vector>

#include "momkit/matrix.hpp"
#include "momkit/multipoly.hpp"

namespace momkit {

enum class RingTag { Rational, GaussianRational, IntPolyRing };

// Element of one of the supported coefficient rings.
using RingElement = std::variant<Rational, GaussQ, CommPoly>;

RingElement ring_add(const RingElement& a, const RingElement& b);
RingElement ring_mul(const RingElement& a, const RingElement& b);
bool ring_eq(const RingElement& a, const RingElement& b);
std::string to_string(const RingElement& e);

// u_n = a_1 u_{n-1} + ... + a_s u_{n-s}, with initial values u_1..u_s.
struct LRSSpec {
  RingTag ring = RingTag::Rational;
  int poly_vars = 0;  // for IntPolyRing instances (serialization arity)
  std::vector<RingElement> coeffs;   // a_1..a_s
  std::vector<RingElement> initial;  // u_1..u_s

  int order() const { return static_cast<int>(coeffs.size()); }
  void validate() const;
};

// Exact n-th term (indexed from 1; n <= order returns initial values).
RingElement term(const LRSSpec& spec, unsigned long n);

// Companion bridge of Lemma-2.3 shape: A with first column (a_1..a_s)^t and
// superdiagonal ones, v = (u_s, ..., u_1)^t, w = (1, 0, ..., 0)^t, so that
// v^t A^{n-s} w = u_n for all n > s.
struct CompanionBridge {
  RatMatrix a;
  std::vector<Rational> v, w;
};
struct GaussCompanionBridge {
  GaussMatrix a;
  std::vector<GaussQ> v, w;
};

CompanionBridge companion(const LRSSpec& spec);         // RATIONAL ring
GaussCompanionBridge companion_gauss(const LRSSpec& spec);  // GAUSSIAN ring

// Lemma-2.2 bridge: the generalized moment sequence phi(A^n) as an LRS whose
// coefficients come from the characteristic polynomial and whose initial
// values are phi(A^1)..phi(A^s).
LRSSpec from_moments(const RatMatrix& a, const LinearFunctional& phi);

// Exact scan helper: u_1..u_n for a rational LRS.
std::vector<Rational> rational_terms(const LRSSpec& spec, unsigned long n);

}  // namespace momkit
