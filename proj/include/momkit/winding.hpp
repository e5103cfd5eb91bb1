#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "momkit/interval.hpp"

namespace momkit {

// Raised when a root of the polynomial lies on the rectangle boundary (or a
// boundary edge degenerates for the crossing count); callers shift the
// offending line and retry.
struct EdgeRootError : std::runtime_error {
  EdgeRootError() : std::runtime_error("root on rectangle boundary") {}
};

// Number of roots of f (with multiplicity) strictly inside the rectangle
// re x im, computed exactly from boundary crossing counts.  Requires f != 0
// and no roots on the boundary (throws EdgeRootError otherwise).
int winding_number(const IntPoly& f, const QInterval& re, const QInterval& im);
// Same for polynomials with Gaussian-rational coefficients (low degree first).
int winding_number(const std::vector<GaussQ>& f, const QInterval& re, const QInterval& im);

// Isolating boxes for the roots of a squarefree polynomial in the open upper
// half plane (one box per root, strictly positive imaginary part).
std::vector<BoxC> isolate_complex_upper(const IntPoly& f_squarefree);

// Shrink an isolating box (exactly one root of f inside) to width <= w.
void refine_box(const IntPoly& f, BoxC& box, const Rational& w);

// Exact zero test for an algebraic value presented as a shrinking box.
// Invariants: the value is a root of `candidates`, always inside the current
// box; `refine` returns ever-smaller boxes around it.
bool boxed_value_is_zero(const IntPoly& candidates, BoxC box,
                         const std::function<BoxC()>& refine);

// Exact equality test for two boxed roots of the *same* squarefree polynomial.
bool boxed_roots_equal(const IntPoly& f_squarefree, BoxC a, BoxC b,
                       const std::function<void()>& refine_a,
                       const std::function<void()>& refine_b,
                       const std::function<BoxC()>& get_a, const std::function<BoxC()>& get_b);

}  // namespace momkit
