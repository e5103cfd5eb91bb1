#pragma once

#include <optional>

#include "momkit/algebraic.hpp"
#include "momkit/matrix.hpp"
#include "momkit/winding.hpp"

namespace momkit {

// Distinct real eigenvalue of the scaled integer matrix cA.
struct EigenReal {
  AlgebraicReal value;  // eigenvalue of cA
  int sign = 0;         // nonzero inside classes (zero eigenvalues are kept apart)
  int multiplicity = 1;
  IntPoly factor;       // squarefree factor of the scaled characteristic polynomial
  bool is_rou = false;  // the A-eigenvalue (value/c) is ±1
  unsigned rou_order = 0;
};

// Conjugate pair of non-real eigenvalues of cA (the box holds the upper one).
struct EigenPair {
  IntPoly factor;
  BoxC box;
  int multiplicity = 1;
  bool factor_is_cyclotomic = false;  // factor = Phi_n scaled; order n below
  bool is_rou = false;                // normalized value lambda/|lambda| is a root of unity
  unsigned rou_order = 0;
  bool factor_complete_in_class = false;  // every root of `factor` shares this modulus
};

// Eigenvalues of one common modulus (of cA), in scaled modulus-squared key form.
struct ModulusClass {
  AlgebraicReal key;  // |lambda_scaled|^2, exact
  std::vector<EigenReal> reals;
  std::vector<EigenPair> pairs;
  int total_multiplicity = 0;  // pairs counted twice
  bool all_rou = false;        // every normalized member is a root of unity
  unsigned period = 1;         // lcm of member orders when all_rou

  int distinct_members() const {
    return static_cast<int>(reals.size()) + 2 * static_cast<int>(pairs.size());
  }
};

struct SpectrumReport {
  int size = 0;
  Integer scale{1};       // c > 0 with cA integer
  IntPoly char_scaled;    // characteristic polynomial of cA
  int zero_multiplicity = 0;
  bool nilpotent = false;
  std::vector<ModulusClass> classes;  // strictly decreasing modulus, nonzero moduli only

  bool unique_dominant = false;  // one distinct (hence real) eigenvalue tops the moduli
  int dominant_sign = 0;
  int dominant_multiplicity = 0;  // k

  bool all_real = false;
  bool all_unit_modulus = false;
  bool all_roots_of_unity = false;
  unsigned group_order = 1;  // lcm of cyclotomic orders when all_roots_of_unity

  // |lambda| of A itself for class i (0-based), as an exact algebraic number.
  AlgebraicReal class_modulus_of_a(size_t i) const;
  // modulus-squared of A-eigenvalues in class i: key / c^2
  AlgebraicReal class_modulus_sq_of_a(size_t i) const;
};

SpectrumReport analyze(const RatMatrix& a);

// Exact test used by the root-of-unity detector: (lambda/|lambda|)^q = 1 for
// the boxed root lambda of f.  Equivalent to lambda^q being real and positive.
bool normalized_power_is_one(const IntPoly& factor, const BoxC& root_box, unsigned q);

}  // namespace momkit
