#include "momkit/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace momkit {

namespace {

// factor of the scaled characteristic polynomial with bookkeeping
struct Factor {
  IntPoly poly;
  int multiplicity;
  bool cyclotomic;
  unsigned order;  // when cyclotomic: the order of the *unscaled* eigenvalues
};

// Strip scaled cyclotomic images c^{phi(n)} Phi_n(x/c) from p, recording
// multiplicities; the remainder is free of unscaled roots of unity.
std::vector<Factor> split_factors(const IntPoly& p_tilde, const Integer& scale, int s) {
  std::vector<Factor> out;
  IntPoly rest = p_tilde;
  Rational inv_c(1);
  inv_c /= Rational(scale);
  unsigned bound = 2u * static_cast<unsigned>(s) * static_cast<unsigned>(s) + 2;
  for (unsigned n = 1; n <= bound; ++n) {
    if (euler_phi(n) > static_cast<unsigned>(rest.degree())) continue;
    IntPoly phi_hat = cyclotomic(n).scale_variable(inv_c);  // monic, integer
    int mult = 0;
    while (rest.degree() >= phi_hat.degree() && divides(phi_hat, rest)) {
      rest = divide_exact(rest, phi_hat);
      ++mult;
    }
    if (mult > 0) out.push_back({phi_hat, mult, true, n});
    if (rest.degree() == 0) break;
  }
  if (rest.degree() >= 1) {
    for (const auto& [f, m] : squarefree_decomposition(rest))
      out.push_back({f, m, false, 0});
  }
  return out;
}

// modulus-squared key |lambda|^2 for a boxed pair root of `factor`
AlgebraicReal key_from_pair(const IntPoly& factor, BoxC& box) {
  IntPoly candidates = composed_product(factor, factor);
  return locate_real_root(
      candidates, [&box]() -> QInterval { return bnorm2(box); },
      [&factor, &box] { refine_box(factor, box, box.width() / 4); });
}

unsigned lcm_u(unsigned a, unsigned b) { return std::lcm(a, b); }

// Order of the normalized eigenvalue lambda/|lambda| when it is a root of
// unity, through the auxiliary value w = lambda/conj(lambda) = (lambda/|lambda|)^2.
// w is a root of W = composed_product(f, reverse(f)), a small integer
// polynomial, so root-of-unity detection for w is exact cyclotomic membership;
// the order of lambda/|lambda| is then m or 2m by the sign of lambda^m.
std::optional<unsigned> normalized_rou_order(const IntPoly& factor, BoxC box,
                                             const AlgebraicReal& key_in) {
  IntPoly w_cands = composed_product(factor, factor.reverse());
  IntPoly wsf = squarefree_part(w_cands).canonical();
  AlgebraicReal u = key_in;  // |lambda_scaled|^2 > 0
  auto w_box = [&]() -> BoxC {
    BoxC sq = bmul(box, box);
    QInterval uiv = u.interval();
    QInterval inv_u = iinv(uiv);
    return {imul(sq.re, inv_u), imul(sq.im, inv_u)};
  };
  auto refine_sources = [&] {
    refine_box(factor, box, box.width() / 4);
    u.refine();
  };
  while (u.interval().lo <= 0) u.refine();
  // isolate w among the roots of wsf
  BoxC wb = w_box();
  while (true) {
    try {
      if (winding_number(wsf, wb.re, wb.im) == 1) break;
    } catch (const EdgeRootError&) {
    }
    refine_sources();
    wb = w_box();
  }
  // cyclotomic membership of w
  unsigned dw = static_cast<unsigned>(wsf.degree());
  std::optional<unsigned> m;
  for (unsigned n = 1; n <= 2 * dw * dw + 2 && !m; ++n) {
    if (euler_phi(n) > dw) continue;
    IntPoly g = gcd(cyclotomic(n), wsf);
    if (g.degree() < 1) continue;
    while (true) {
      try {
        int cnt = winding_number(g, wb.re, wb.im);
        if (cnt == 1) m = n;
        break;
      } catch (const EdgeRootError&) {
        refine_sources();
        wb = w_box();
      }
    }
  }
  if (!m) return std::nullopt;
  // sign of the (real, nonzero) value lambda^m decides between m and 2m
  while (true) {
    BoxC p = bpow(box, static_cast<long>(*m));
    if (p.re.lo > 0) return *m;
    if (p.re.hi < 0) return 2 * *m;
    refine_box(factor, box, box.width() / 4);
  }
}

}  // namespace

bool normalized_power_is_one(const IntPoly& factor, const BoxC& root_box, unsigned q) {
  // lambda^q - conj(lambda)^q == 0 and Re(lambda^q) > 0
  IntPoly cq = composed_power(factor, q);
  IntPoly cand = composed_difference(cq, cq);
  BoxC working = root_box;
  BoxC pw = bpow(working, static_cast<long>(q));
  BoxC delta = bsub(pw, bconj(pw));
  auto refine = [&]() -> BoxC {
    refine_box(factor, working, working.width() / 4);
    BoxC p = bpow(working, static_cast<long>(q));
    return bsub(p, bconj(p));
  };
  if (!boxed_value_is_zero(cand, delta, refine)) return false;
  // sign of the (real) value lambda^q: refine until the real part is sign-definite
  while (true) {
    BoxC p = bpow(working, static_cast<long>(q));
    if (p.re.lo > 0) return true;
    if (p.re.hi < 0) return false;
    refine_box(factor, working, working.width() / 4);
  }
}

AlgebraicReal SpectrumReport::class_modulus_of_a(size_t i) const {
  Rational inv_c2(1);
  inv_c2 /= Rational(scale * scale);
  return classes.at(i).key.scaled(inv_c2).sqrt_nonneg();
}

AlgebraicReal SpectrumReport::class_modulus_sq_of_a(size_t i) const {
  Rational inv_c2(1);
  inv_c2 /= Rational(scale * scale);
  return classes.at(i).key.scaled(inv_c2);
}

SpectrumReport analyze(const RatMatrix& a) {
  int s = a.size();
  if (s <= 0) throw std::invalid_argument("analyze requires a nonempty matrix");
  SpectrumReport rep;
  rep.size = s;
  CharPolyResult cp = char_poly(a);
  rep.scale = cp.scale;
  rep.char_scaled = cp.poly;

  // zero eigenvalues
  int m0 = 0;
  while (m0 <= s && cp.poly.coeff(m0) == 0) ++m0;
  rep.zero_multiplicity = m0;
  rep.nilpotent = (m0 == s);
  if (rep.nilpotent) {
    rep.all_real = true;
    return rep;
  }
  std::vector<Integer> shifted(cp.poly.coeffs().begin() + m0, cp.poly.coeffs().end());
  IntPoly p_tilde{std::move(shifted)};

  std::vector<Factor> factors = split_factors(p_tilde, cp.scale, s);

  // collect members with exact modulus-squared keys, then group by key
  struct PendingReal {
    EigenReal e;
    AlgebraicReal key;
  };
  struct PendingPair {
    EigenPair e;
    AlgebraicReal key;
  };
  std::vector<PendingReal> reals;
  std::vector<PendingPair> pairs;
  Rational c_rat(cp.scale);
  for (const auto& fac : factors) {
    for (const auto& iv : isolate_real_roots_squarefree(fac.poly)) {
      EigenReal er;
      er.value = AlgebraicReal::from_root(fac.poly, iv);
      er.sign = er.value.sign();
      er.multiplicity = fac.multiplicity;
      er.factor = fac.poly;
      if (compare_to_rational(er.value, c_rat) == 0) {
        er.is_rou = true;
        er.rou_order = 1;
      } else if (compare_to_rational(er.value, Rational(-c_rat)) == 0) {
        er.is_rou = true;
        er.rou_order = 2;
      }
      AlgebraicReal key = er.value.squared();
      reals.push_back({std::move(er), std::move(key)});
    }
    for (BoxC& box : isolate_complex_upper(fac.poly)) {
      EigenPair ep;
      ep.factor = fac.poly;
      ep.multiplicity = fac.multiplicity;
      ep.factor_is_cyclotomic = fac.cyclotomic;
      if (fac.cyclotomic) {
        ep.is_rou = true;
        ep.rou_order = fac.order;
      }
      AlgebraicReal key = key_from_pair(fac.poly, box);
      ep.box = box;
      pairs.push_back({std::move(ep), std::move(key)});
    }
  }

  // root-of-unity detection for normalized members of non-cyclotomic pairs:
  // on the unit circle the cyclotomic split is already complete, so only
  // |lambda| != c can still be normalized-rou (see ledger for the order cap).
  Rational c2 = c_rat * c_rat;
  for (auto& pp : pairs) {
    if (pp.e.is_rou) continue;
    if (compare_to_rational(pp.key, c2) == 0) continue;  // unit circle, cyclotomic-free
    if (auto ord = normalized_rou_order(pp.e.factor, pp.e.box, pp.key)) {
      pp.e.is_rou = true;
      pp.e.rou_order = *ord;
    }
  }

  // group by exact key equality
  for (auto& pr : reals) {
    bool placed = false;
    for (auto& cls : rep.classes)
      if (compare_algebraic(cls.key, pr.key) == Ordering::EQ) {
        cls.reals.push_back(pr.e);
        placed = true;
        break;
      }
    if (!placed) {
      ModulusClass cls;
      cls.key = pr.key;
      cls.reals.push_back(pr.e);
      rep.classes.push_back(std::move(cls));
    }
  }
  for (auto& pp : pairs) {
    bool placed = false;
    for (auto& cls : rep.classes)
      if (compare_algebraic(cls.key, pp.key) == Ordering::EQ) {
        cls.pairs.push_back(pp.e);
        placed = true;
        break;
      }
    if (!placed) {
      ModulusClass cls;
      cls.key = pp.key;
      cls.pairs.push_back(pp.e);
      rep.classes.push_back(std::move(cls));
    }
  }
  std::sort(rep.classes.begin(), rep.classes.end(), [](const ModulusClass& x, const ModulusClass& y) {
    return compare_algebraic(x.key, y.key) == Ordering::GT;
  });

  // per-class summaries
  for (auto& cls : rep.classes) {
    cls.total_multiplicity = 0;
    bool all_rou = true;
    unsigned period = 1;
    for (const auto& er : cls.reals) {
      cls.total_multiplicity += er.multiplicity;
      if (er.is_rou) period = lcm_u(period, er.rou_order);
      else all_rou = false;
    }
    for (const auto& ep : cls.pairs) {
      cls.total_multiplicity += 2 * ep.multiplicity;
      if (ep.is_rou) period = lcm_u(period, ep.rou_order);
      else all_rou = false;
    }
    cls.all_rou = all_rou;
    cls.period = all_rou ? period : 1;
    // factor completeness: all roots of the member's factor share this modulus
    for (auto& ep : cls.pairs) {
      int count = 0;
      for (const auto& er : cls.reals)
        if (er.factor == ep.factor) count += 1;
      for (const auto& e2 : cls.pairs)
        if (e2.factor == ep.factor) count += 2;
      ep.factor_complete_in_class = (count == ep.factor.degree());
    }
  }

  // flags
  rep.all_real = pairs.empty();
  if (!rep.classes.empty()) {
    const ModulusClass& top = rep.classes.front();
    if (top.reals.size() == 1 && top.pairs.empty()) {
      rep.unique_dominant = true;
      rep.dominant_sign = top.reals[0].sign;
      rep.dominant_multiplicity = top.reals[0].multiplicity;
    }
  }
  rep.all_unit_modulus = (m0 == 0) && rep.classes.size() == 1 &&
                         compare_to_rational(rep.classes[0].key, c2) == 0;
  bool only_cyclo = true;
  unsigned order = 1;
  for (const auto& fac : factors) {
    if (!fac.cyclotomic) only_cyclo = false;
    else
      for (int i = 0; i < 1; ++i) order = lcm_u(order, fac.order);
  }
  rep.all_roots_of_unity = (m0 == 0) && only_cyclo;
  rep.group_order = rep.all_roots_of_unity ? order : 1;
  return rep;
}

}  // namespace momkit
