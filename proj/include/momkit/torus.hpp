#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "momkit/interval.hpp"
#include "momkit/winding.hpp"

namespace momkit {

// One unit-circle coordinate of the closure superset: a value w with |w| = 1,
// a refinable complex enclosure, and an integer polynomial whose root set
// contains it (used to verify candidate multiplicative relations exactly).
struct TorusPosition {
  BoxC coeff;                         // objective coefficient enclosure c_j
  IntPoly candidates;                 // real-coefficient poly with w among its roots
  std::function<BoxC()> current;      // current enclosure of w
  std::function<void()> refine;       // tighten the enclosure
  std::optional<unsigned> finite_order;  // known exact order (w^o = 1)
};

struct TorusOutcome {
  bool certified = false;     // objective >= target over the whole superset
  Rational bound{0};          // certified lower bound when certified
  std::vector<std::vector<long>> relations;  // verified relation exponent vectors
  long nodes_expanded = 0;
  long relation_bound_used = 0;
};

// Certify  constant + sum_j Re(c_j w_j) >= target  over the closed subgroup
// superset cut out by all exactly-verified multiplicative relations
// prod_j w_j^{z_j} = 1 with |z_j| <= relation_exponent_bound.  Missing true
// relations only enlarge the feasible set, so a certified bound stays valid.
TorusOutcome torus_certify_min(std::vector<TorusPosition>& positions, const QInterval& constant,
                               const Rational& target, long relation_exponent_bound,
                               long max_nodes);

// Exact verification of prod_j pos[j]^{z_j} = 1 (positions on the unit circle;
// negative exponents via conjugation).  Shared with the relation search.
bool verify_unit_relation(std::vector<TorusPosition>& positions, const std::vector<long>& z,
                          long degree_cap = 5000);

}  // namespace momkit
