#pragma once

#include <variant>

#include "momkit/lrs.hpp"
#include "momkit/multipoly.hpp"
#include "momkit/spectra.hpp"
#include "momkit/torus.hpp"

namespace momkit {

enum class Verdict { Yes, No, Unknown };

struct Budget {
  unsigned long max_moment_index = 10000;
  int max_invariant_degree = 4;
  long relation_exponent_bound = 20;
  long minimization_nodes = 20000;
  Rational tolerance = Rational(Integer(1), Integer(1) << 40);
};

// Certificates are the machine-checkable side of every verdict; exact values
// are carried as canonical strings so an independent checker can re-derive
// them without this library's internal types.
struct WitnessCert {
  unsigned long n = 0;
  std::string value;  // exact rational (or "a+bi" Gaussian) moment/term value
};
struct DominanceCert {
  unsigned long bound = 0;  // all indices n <= bound were checked exactly
  std::string note;
  std::vector<std::pair<unsigned long, std::string>> checked;
};
struct FiniteGroupCert {
  unsigned long order = 0;
  std::vector<std::string> table;  // values at n = 0..order-1
};
struct TorusCert {
  std::vector<std::vector<long>> relations;
  std::string lower_bound;
  long nodes = 0;
  std::string note;
};
struct EvalTableCert {
  std::string note;
  std::vector<std::pair<std::string, std::string>> entries;
};
using Certificate =
    std::variant<std::monostate, WitnessCert, DominanceCert, FiniteGroupCert, TorusCert,
                 EvalTableCert>;

struct BudgetSpent {
  unsigned long moment_index_reached = 0;
  int invariant_degree_reached = 0;
  long relation_bound_used = 0;
  long minimization_nodes = 0;
};

struct Decision {
  Verdict verdict = Verdict::Unknown;
  Certificate certificate;
  BudgetSpent spent;
  std::string detail;
};

// Test hook: force the torus strand even when the finite-group path applies.
struct StrandControl {
  bool disable_finite_group = false;
};

// Theorem 3.3(i): unique dominant eigenvalue, trace moments.
Decision decide_dominant(const RatMatrix& a, const LinearFunctional& phi);
// Theorem 3.3(ii): real spectrum, trace moments.
Decision decide_real_spectrum(const RatMatrix& a);
// Theorem 3.2: orthogonal instances; three strands (finite group / scan / torus).
Decision decide_orthogonal(const RatMatrix& a, const Budget& budget,
                           const StrandControl& strands = {});
// Corollary 3.4 via the block embedding; positivity over Q[i] read as
// "imaginary part exactly zero and real part nonnegative".
Decision decide_unitary(const GaussMatrix& u, const Budget& budget);
// Lemma 3.5 subroutines on the peripheral classes (1-based index; indices
// beyond the class list are the declared-empty classes).
Decision eta_ge(const RatMatrix& a, int class_index, const Rational& c, const Budget& budget);
Decision gamma_le(const RatMatrix& a, int class_index, const Rational& c, unsigned long p,
                  unsigned long q, const Budget& budget);
// Theorem 3.6 classifier.
Decision classify_general(const RatMatrix& a, const Rational& epsilon, unsigned long p,
                          unsigned long q, const Budget& budget);
// Corollary 3.5 and the LRS dispatch.
Decision decide_lrs(const LRSSpec& spec, const Budget& budget);
// Mode "auto": finite-group > dominant > real > general (see CLI design notes).
Decision decide_auto(const RatMatrix& a, const Rational& epsilon, unsigned long p,
                     unsigned long q, const Budget& budget);

// Lemma 3.1: basis of {p : deg p <= D, p(I) = 0, p(A_i X) = p(X)} in the s^2
// matrix-entry variables X_11..X_ss (row-major variable order), returned as
// integer-cleared polynomials in a deterministic reduced echelon form.
std::vector<CommPoly> invariant_polys(const std::vector<RatMatrix>& generators, int degree);

std::string to_string(Verdict v);

}  // namespace momkit
