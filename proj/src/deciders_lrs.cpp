#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>

#include "momkit/deciders.hpp"

namespace momkit {

namespace {

std::string q_str(const Rational& r) { return to_string(r); }

// ---- Berlekamp–Massey over a field -----------------------------------------------
// minimal connection coefficients: u_n = a_1 u_{n-1} + ... + a_L u_{n-L}
template <typename F>
std::vector<F> berlekamp_massey(const std::vector<F>& s) {
  std::vector<F> C{F(1)}, B{F(1)};
  int L = 0;
  int m = 1;
  F b = F(1);
  for (size_t n = 0; n < s.size(); ++n) {
    F d = s[n];
    for (int i = 1; i <= L; ++i) d += C[static_cast<size_t>(i)] * s[n - static_cast<size_t>(i)];
    if (d == F(0)) {
      ++m;
    } else if (2 * L <= static_cast<int>(n)) {
      std::vector<F> T = C;
      F coef = d / b;
      if (C.size() < B.size() + static_cast<size_t>(m)) C.resize(B.size() + m, F(0));
      for (size_t i = 0; i < B.size(); ++i) C[i + m] = C[i + m] - coef * B[i];
      L = static_cast<int>(n) + 1 - L;
      B = std::move(T);
      b = d;
      m = 1;
    } else {
      F coef = d / b;
      if (C.size() < B.size() + static_cast<size_t>(m)) C.resize(B.size() + m, F(0));
      for (size_t i = 0; i < B.size(); ++i) C[i + m] = C[i + m] - coef * B[i];
      ++m;
    }
  }
  std::vector<F> out;
  out.reserve(L);
  for (int i = 1; i <= L; ++i) out.push_back(F(0) - C[static_cast<size_t>(i)]);
  return out;
}

// ---- complex interval linear solve (for spectral coefficients) ---------------------
BoxC binv(const BoxC& z) {
  QInterval n2 = bnorm2(z);
  if (icontains_zero(n2)) throw std::domain_error("interval inverse across zero");
  QInterval inv = iinv(n2);
  BoxC c = bconj(z);
  return {imul(c.re, inv), imul(c.im, inv)};
}

// Solve V x = rhs with V_{n,j} = roots[j]^{n+1}; throws if a pivot straddles 0.
std::vector<BoxC> vandermonde_solve(const std::vector<BoxC>& roots, const std::vector<BoxC>& rhs) {
  size_t t = roots.size();
  std::vector<std::vector<BoxC>> m(t, std::vector<BoxC>(t + 1));
  for (size_t n = 0; n < t; ++n) {
    for (size_t j = 0; j < t; ++j) m[n][j] = bpow_rounded(roots[j], static_cast<long>(n + 1), 192);
    m[n][t] = rhs[n];
  }
  for (size_t col = 0; col < t; ++col) {
    size_t piv = col;
    // prefer a pivot whose norm interval is farthest from zero
    Rational best(-1);
    for (size_t r = col; r < t; ++r) {
      QInterval n2 = bnorm2(m[r][col]);
      if (n2.lo > best) {
        best = n2.lo;
        piv = r;
      }
    }
    std::swap(m[col], m[piv]);
    BoxC inv = binv(m[col][col]);
    for (size_t cc = col; cc <= t; ++cc) m[col][cc] = bround(bmul(m[col][cc], inv), 192);
    for (size_t r = 0; r < t; ++r) {
      if (r == col) continue;
      BoxC f = m[r][col];
      if (f.re.lo == 0 && f.re.hi == 0 && f.im.lo == 0 && f.im.hi == 0) continue;
      for (size_t cc = col; cc <= t; ++cc)
        m[r][cc] = bround(bsub(m[r][cc], bmul(f, m[col][cc])), 192);
    }
  }
  std::vector<BoxC> x(t);
  for (size_t r = 0; r < t; ++r) x[r] = m[r][t];
  return x;
}

Rational box_abs_upper(const BoxC& z) {
  Rational re = std::max(abs(z.re.lo), abs(z.re.hi));
  Rational im = std::max(abs(z.im.lo), abs(z.im.hi));
  return re + im;  // |z| <= |Re| + |Im|
}

unsigned long ratio_log_bound_rat(const Rational& num, AlgebraicReal big, AlgebraicReal small_abs,
                                  bool& ok, unsigned long cap) {
  ok = true;
  if (num <= 1) return 0;
  int guard = 0;
  while (!(big.lo() > 0) || !(big.lo() > small_abs.hi())) {
    big.refine();
    small_abs.refine();
    if (++guard > 100000) throw std::logic_error("ratio bound: separation failed");
  }
  unsigned prec = 32;
  while (true) {
    Rational dlo, dhi, nlo, nhi;
    log_bounds(big.lo() / small_abs.hi(), prec, dlo, dhi);
    log_bounds(num, prec, nlo, nhi);
    if (dlo > 0) {
      Integer b = ceil_int(nhi / dlo);
      if (b < 0) return 0;
      if (b > Integer(static_cast<long>(cap))) {
        ok = false;
        return cap;
      }
      return b.get_ui();
    }
    prec *= 2;
    big.refine();
    small_abs.refine();
  }
}

// ---- shared helpers over terms ------------------------------------------------------

bool gauss_nonneg(const GaussQ& v) { return v.im == 0 && v.re >= 0; }

struct RatSequence {
  const LRSSpec* spec;
  mutable std::vector<Rational> cache;
  const Rational& term_at(unsigned long n) const {  // 1-based
    while (cache.size() < n) {
      size_t k = cache.size();
      size_t s = spec->coeffs.size();
      if (k < s) {
        cache.push_back(std::get<Rational>(spec->initial[k]));
      } else {
        Rational acc(0);
        for (size_t i = 0; i < s; ++i)
          acc += std::get<Rational>(spec->coeffs[i]) * cache[k - 1 - i];
        cache.push_back(acc);
      }
    }
    return cache[n - 1];
  }
};

struct GaussSequence {
  const LRSSpec* spec;
  mutable std::vector<GaussQ> cache;
  const GaussQ& term_at(unsigned long n) const {
    while (cache.size() < n) {
      size_t k = cache.size();
      size_t s = spec->coeffs.size();
      if (k < s) {
        cache.push_back(std::get<GaussQ>(spec->initial[k]));
      } else {
        GaussQ acc;
        for (size_t i = 0; i < s; ++i)
          acc += std::get<GaussQ>(spec->coeffs[i]) * cache[k - 1 - i];
        cache.push_back(acc);
      }
    }
    return cache[n - 1];
  }
};

// positions/boxes for all nonzero roots of the minimal polynomial (via the
// companion-matrix spectrum); returns per root: enclosure + candidate factor.
struct RootSystem {
  std::vector<BoxC> boxes;                 // one per distinct nonzero root (conjugates separate)
  std::vector<IntPoly> factors;            // A-side factor polynomial per root
  std::vector<std::optional<unsigned>> rou;  // order of the *normalized* root if known
  std::vector<int> pair_of;                // index of the conjugate partner (-1 for reals)
  std::vector<std::shared_ptr<BoxC>> state;  // refinable storage
  std::vector<std::function<void()>> refiners;
  int zero_mult = 0;
  SpectrumReport rep;
};

RootSystem root_system(const RatMatrix& companion) {
  RootSystem rs;
  rs.rep = analyze(companion);
  Rational inv_c(1);
  inv_c /= Rational(rs.rep.scale);
  rs.zero_mult = rs.rep.zero_multiplicity;
  for (const auto& cls : rs.rep.classes) {
    for (const auto& er : cls.reals) {
      AlgebraicReal v = er.value;  // scaled
      auto st = std::make_shared<BoxC>();
      auto val = std::make_shared<AlgebraicReal>(v);
      *st = BoxC{{val->lo() * inv_c, val->hi() * inv_c}, {Rational(0), Rational(0)}};
      rs.boxes.push_back(*st);
      rs.factors.push_back(er.factor.scale_variable(Rational(rs.rep.scale)).canonical());
      rs.rou.push_back(er.is_rou ? std::optional<unsigned>(er.rou_order) : std::nullopt);
      rs.pair_of.push_back(-1);
      rs.state.push_back(st);
      rs.refiners.push_back([st, val, inv_c]() {
        val->refine();
        *st = BoxC{{val->lo() * inv_c, val->hi() * inv_c}, {Rational(0), Rational(0)}};
      });
    }
    for (const auto& ep : cls.pairs) {
      auto base = std::make_shared<BoxC>(ep.box);
      IntPoly fac = ep.factor;
      auto mk = [&](bool conj) {
        auto st = std::make_shared<BoxC>();
        BoxC b = conj ? bconj(*base) : *base;
        *st = BoxC{iscale(b.re, inv_c), iscale(b.im, inv_c)};
        rs.boxes.push_back(*st);
        rs.factors.push_back(fac.scale_variable(Rational(rs.rep.scale)).canonical());
        rs.rou.push_back(ep.is_rou ? std::optional<unsigned>(ep.rou_order) : std::nullopt);
        rs.state.push_back(st);
        rs.refiners.push_back([st, base, fac, inv_c, conj]() {
          refine_box(fac, *base, base->width() / 4);
          BoxC b2 = conj ? bconj(*base) : *base;
          *st = BoxC{iscale(b2.re, inv_c), iscale(b2.im, inv_c)};
        });
      };
      size_t first = rs.boxes.size();
      mk(false);
      mk(true);
      rs.pair_of.push_back(static_cast<int>(first + 1));
      rs.pair_of.push_back(static_cast<int>(first));
      // fix ordering of pair_of entries pushed by mk (they pushed nothing)
    }
  }
  return rs;
}

}  // namespace

// ---- Corollary 3.4: unitary matrices -------------------------------------------------

Decision decide_unitary(const GaussMatrix& u, const Budget& budget) {
  if (!is_unitary(u)) throw std::invalid_argument("non-unitary input");
  int s = u.size();
  Decision dec;

  // no-strand: exact Gaussian trace recurrence scan
  {
    std::vector<GaussQ> cp = char_poly_gauss(u);  // monic, low first
    std::vector<GaussQ> window;
    GaussMatrix pw = GaussMatrix::identity(s);
    std::optional<std::pair<unsigned long, GaussQ>> witness;
    // traces for n = 0..s via powers, then the recurrence
    std::vector<GaussQ> tr;
    for (int n = 0; n <= s; ++n) {
      tr.push_back(pw.trace());
      pw = pw * u;
    }
    if (!gauss_nonneg(GaussQ(Rational(s)))) {
    }
    for (unsigned long n = 0; n <= budget.max_moment_index; ++n) {
      GaussQ v;
      if (n <= static_cast<unsigned long>(s)) {
        v = tr[n];
        if (n >= 1) window.push_back(v);
      } else {
        v = GaussQ();
        for (int i = 1; i <= s; ++i)
          v = v - cp[static_cast<size_t>(s - i)] * window[window.size() - static_cast<size_t>(i)];
        window.push_back(v);
        if (static_cast<int>(window.size()) > s + 1) window.erase(window.begin());
      }
      dec.spent.moment_index_reached = n;
      if (!gauss_nonneg(v)) {
        witness = std::make_pair(n, v);
        break;
      }
    }
    if (witness)
      return [&] {
        Decision d;
        d.verdict = Verdict::No;
        d.certificate = WitnessCert{witness->first, to_string(witness->second)};
        d.spent = dec.spent;
        d.detail = "trace not real-nonnegative";
        return d;
      }();
  }

  // finite-group strand via the orthogonal embedding
  RatMatrix psi = psi_embed(u);
  SpectrumReport rep = analyze(psi);
  if (rep.all_roots_of_unity) {
    unsigned long o = rep.group_order;
    if (u.pow(o) == GaussMatrix::identity(s)) {
      FiniteGroupCert cert;
      cert.order = o;
      GaussMatrix pw = GaussMatrix::identity(s);
      std::optional<std::pair<unsigned long, GaussQ>> witness;
      for (unsigned long n = 0; n < o; ++n) {
        GaussQ t = pw.trace();
        cert.table.push_back(to_string(t));
        if (!witness && !gauss_nonneg(t)) witness = std::make_pair(n, t);
        pw = pw * u;
      }
      dec.spent.moment_index_reached = std::max<unsigned long>(dec.spent.moment_index_reached,
                                                               o - 1);
      if (witness) {
        dec.verdict = Verdict::No;
        dec.certificate = WitnessCert{witness->first, to_string(witness->second)};
        dec.detail = "finite unitary group of order " + std::to_string(o);
        return dec;
      }
      dec.verdict = Verdict::Yes;
      dec.certificate = std::move(cert);
      return dec;
    }
  }

  // torus strand: positions are the eigenvalues of U located inside spec(Psi)
  std::vector<GaussQ> cu = char_poly_gauss(u);
  IntPoly whole = squarefree_part(rep.char_scaled).canonical();
  Rational inv_c(1);
  inv_c /= Rational(rep.scale);
  IntPoly whole_a = whole.scale_variable(Rational(rep.scale)).canonical();  // roots of A-side

  struct UPos {
    std::shared_ptr<BoxC> base;   // scaled-side box of the underlying pair root (upper half)
    IntPoly factor;               // scaled-side factor
    bool conj;
    bool real_unit;               // box is the exact +-1 point
    Rational real_value;
    int mult;                     // multiplicity in char_U
  };
  std::vector<UPos> upos;
  auto a_side_box = [&](const UPos& p) -> BoxC {
    if (p.real_unit) return bpoint(p.real_value, Rational(0));
    BoxC b = p.conj ? bconj(*p.base) : *p.base;
    return BoxC{iscale(b.re, inv_c), iscale(b.im, inv_c)};
  };
  auto count_in_u = [&](const BoxC& abox) -> int {
    // multiplicity of the isolated root as an eigenvalue of U
    return winding_number(cu, abox.re, abox.im);
  };
  for (const auto& cls : rep.classes) {
    for (const auto& er : cls.reals) {
      // real eigenvalues of an orthogonal embedding are +-1
      Rational v = compare_to_rational(er.value, Rational(rep.scale)) == 0 ? Rational(1)
                                                                            : Rational(-1);
      UPos p;
      p.real_unit = true;
      p.real_value = v;
      p.factor = er.factor;
      p.conj = false;
      p.mult = 0;
      upos.push_back(p);
    }
    for (const auto& ep : cls.pairs) {
      auto base = std::make_shared<BoxC>(ep.box);
      // isolate within the whole spectrum so winding over char_U counts only this root
      while (true) {
        try {
          if (winding_number(whole, base->re, base->im) == 1) break;
        } catch (const EdgeRootError&) {
        }
        refine_box(ep.factor, *base, base->width() / 4);
      }
      for (bool conj : {false, true}) {
        UPos p;
        p.base = base;
        p.factor = ep.factor;
        p.conj = conj;
        p.real_unit = false;
        p.mult = 0;
        upos.push_back(p);
      }
    }
  }
  // multiplicities in char_U (with robust retries while shrinking boxes)
  for (auto& p : upos) {
    if (p.real_unit) {
      // shrink a box around +-1 until it isolates within spec(Psi)
      Rational w(1, 8);
      while (true) {
        BoxC box{{p.real_value - w, p.real_value + w}, {-w, w}};
        try {
          if (winding_number(whole_a, box.re, box.im) == 1) {
            p.mult = count_in_u(box);
            break;
          }
        } catch (const EdgeRootError&) {
        }
        w /= 3;
      }
    } else {
      while (true) {
        BoxC abox = a_side_box(p);
        try {
          p.mult = count_in_u(abox);
          break;
        } catch (const EdgeRootError&) {
          refine_box(p.factor, *p.base, p.base->width() / 4);
        }
      }
    }
  }

  // three objectives: Re >= 0, Im >= 0, -Im >= 0
  bool all_certified = true;
  TorusCert combined;
  combined.note = "unitary torus strand: Re(tr) >= 0 and Im(tr) = 0 certified";
  long nodes_total = 0;
  for (int obj = 0; obj < 3 && all_certified; ++obj) {
    std::vector<TorusPosition> positions;
    Rational constant(0);
    for (auto& p : upos) {
      if (p.mult == 0) continue;
      if (p.real_unit) {
        GaussQ coeff = obj == 0 ? GaussQ(Rational(p.mult)) : GaussQ();
        if (p.real_value == 1) {
          if (obj == 0) constant += Rational(p.mult);
          continue;
        }
        TorusPosition tp;
        tp.coeff = obj == 0 ? bpoint(Rational(p.mult), Rational(0))
                            : bpoint(Rational(0), Rational(0));
        tp.candidates = IntPoly{1, 1};
        tp.current = []() { return bpoint(Rational(-1), Rational(0)); };
        tp.refine = []() {};
        tp.finite_order = 2;
        positions.push_back(std::move(tp));
        continue;
      }
      TorusPosition tp;
      // Re(tr) = sum m Re(w); Im(tr) = sum m Im(w) = Re(-i m w)
      switch (obj) {
        case 0: tp.coeff = bpoint(Rational(p.mult), Rational(0)); break;
        case 1: tp.coeff = bpoint(Rational(0), Rational(-p.mult)); break;
        case 2: tp.coeff = bpoint(Rational(0), Rational(p.mult)); break;
      }
      tp.candidates = p.factor.scale_variable(Rational(rep.scale)).canonical();
      auto base = p.base;
      bool conj = p.conj;
      IntPoly fac = p.factor;
      Rational ic = inv_c;
      tp.current = [base, conj, ic]() {
        BoxC b = conj ? bconj(*base) : *base;
        return BoxC{iscale(b.re, ic), iscale(b.im, ic)};
      };
      tp.refine = [base, fac]() { refine_box(fac, *base, base->width() / 4); };
      positions.push_back(std::move(tp));
    }
    TorusOutcome outcome =
        torus_certify_min(positions, ipoint(constant), Rational(0),
                          budget.relation_exponent_bound, budget.minimization_nodes);
    nodes_total += outcome.nodes_expanded;
    dec.spent.relation_bound_used = outcome.relation_bound_used;
    if (!outcome.certified) {
      all_certified = false;
      break;
    }
    if (obj == 0) {
      combined.relations = outcome.relations;
      combined.lower_bound = q_str(outcome.bound);
    }
  }
  dec.spent.minimization_nodes = nodes_total;
  if (all_certified) {
    combined.nodes = nodes_total;
    dec.verdict = Verdict::Yes;
    dec.certificate = std::move(combined);
    return dec;
  }
  dec.verdict = Verdict::Unknown;
  dec.detail = "budget exhausted: no witness and no torus certificate for all objectives";
  return dec;
}

// ---- Corollary 3.5 and LRS dispatch ---------------------------------------------------

namespace {

// dominant-root path for a rational LRS with squarefree minimal polynomial
Decision lrs_dominant_path(const LRSSpec& minimal, const RatSequence& seq,
                           const RootSystem& rs, const Budget& budget,
                           unsigned long index_stride, unsigned long index_offset,
                           Decision base) {
  Decision dec = std::move(base);
  const SpectrumReport& rep = rs.rep;
  size_t t = minimal.coeffs.size();
  int zero_mult = rs.zero_mult;
  // shifted sequence v_n = u_{n + zero_mult} = sum c_j lambda_j^n for n >= 1
  auto original_index = [&](unsigned long n) {  // v-index -> u-index of the *original* spec
    return index_offset + index_stride * (n + static_cast<unsigned long>(zero_mult) - 1) +
           (index_stride == 1 ? 0 : 0);
  };
  // rhs for the Vandermonde solve
  size_t roots = rs.boxes.size();
  if (roots == 0) {
    // all roots zero: v identically zero beyond the transient
    dec.verdict = Verdict::Yes;
    dec.certificate = EvalTableCert{"minimal polynomial is a power of x: tail is zero", {}};
    return dec;
  }
  std::vector<BoxC> rhs(roots);
  for (size_t n = 0; n < roots; ++n) {
    Rational v = seq.term_at(static_cast<unsigned long>(n + 1 + zero_mult));
    rhs[n] = bpoint(v, Rational(0));
  }
  // identify the dominant root (first class, single real member)
  AlgebraicReal lam1_abs = rep.classes[0].reals[0].value.abs_value();  // scaled
  int lam1_sign = rep.dominant_sign;
  // locate the dominant root's position among rs.boxes (first class real)
  size_t dom_index = 0;  // rs fills classes in order: first entry of class 0
  std::vector<BoxC> coeffs;
  int rounds = 0;
  while (true) {
    try {
      coeffs = vandermonde_solve(rs.boxes, rhs);
    } catch (const std::domain_error&) {
      for (auto& rf : rs.refiners) rf();
      if (++rounds > 200) throw std::logic_error("vandermonde refinement stalled");
      continue;
    }
    // need sign-definite Re(c_1) and Im(c_1) enclosing 0 (c_1 is real)
    const BoxC& c1 = coeffs[dom_index];
    if (c1.re.lo > 0 || c1.re.hi < 0) break;
    for (auto& rf : rs.refiners) rf();
    if (++rounds > 200) {
      dec.verdict = Verdict::Unknown;
      dec.detail = "dominant coefficient enclosure did not separate from zero";
      return dec;
    }
  }
  int c1_sign = coeffs[dom_index].re.lo > 0 ? 1 : -1;
  Rational c1_abs_lo =
      c1_sign > 0 ? coeffs[dom_index].re.lo : Rational(-coeffs[dom_index].re.hi);
  Rational c_rest(0);
  for (size_t j = 0; j < roots; ++j) {
    if (j == dom_index) continue;
    c_rest += box_abs_upper(coeffs[j]);
  }
  bool positive_tail = (lam1_sign > 0 && c1_sign > 0);
  unsigned long bound = 0;
  if (roots > 1 && rep.classes.size() > 1) {
    AlgebraicReal lam2_abs = rep.classes[1].key.sqrt_nonneg();
    bool ok = true;
    bound = ratio_log_bound_rat(c_rest / c1_abs_lo, lam1_abs, lam2_abs, ok, 2'000'000);
    if (!ok) {
      dec.verdict = Verdict::Unknown;
      dec.detail = "LRS dominance bound exceeds the scan cap";
      return dec;
    }
  } else if (roots > 1) {
    // all nonzero roots share the dominant modulus but dominance is unique, so
    // roots = 1; defensive
    bound = 0;
  }
  if (!positive_tail) {
    // eventually negative on some parity; scan the original sequence for a witness
    unsigned long cap = std::max<unsigned long>(2 * bound + 2 * t + 4 + zero_mult,
                                                budget.max_moment_index);
    for (unsigned long n = 1; n <= cap; ++n) {
      unsigned long in = index_offset + index_stride * (n - 1) + 1 * 0;
      (void)in;
      Rational v = seq.term_at(n);
      dec.spent.moment_index_reached = std::max(dec.spent.moment_index_reached, n);
      if (v < 0) {
        dec.verdict = Verdict::No;
        dec.certificate = WitnessCert{n, q_str(v)};
        dec.detail = "dominant term eventually negative";
        return dec;
      }
    }
    throw std::logic_error("lrs dominant path: guaranteed witness missing");
  }
  // check v_n >= 0 for n <= bound plus the transient prefix
  DominanceCert cert;
  cert.bound = bound;
  cert.note = "|u - c_1 lambda_1^n| <= C |lambda_2|^n with certified C, c_1";
  unsigned long check_to = bound + static_cast<unsigned long>(zero_mult);
  for (unsigned long n = 1; n <= std::max<unsigned long>(check_to, t); ++n) {
    Rational v = seq.term_at(n);
    dec.spent.moment_index_reached = std::max(dec.spent.moment_index_reached, n);
    if (v < 0) {
      dec.verdict = Verdict::No;
      dec.certificate = WitnessCert{n, q_str(v)};
      dec.detail = "finite check found a negative term";
      return dec;
    }
    if (n <= 64) cert.checked.emplace_back(n, q_str(v));
  }
  (void)original_index;
  dec.verdict = Verdict::Yes;
  dec.certificate = std::move(cert);
  return dec;
}

// decide positivity of the subsequence u_{stride n + off} (n >= 0 gives the
// first index off + stride... indices are 1-based via index = off + stride*(k-1)).
Decision lrs_decide_parity(const LRSSpec& original, unsigned long stride, unsigned long offset,
                           const Budget& budget);

Decision decide_lrs_rational(const LRSSpec& spec, const Budget& budget) {
  Decision dec;
  size_t s = spec.coeffs.size();
  RatSequence seq{&spec, {}};
  // minimal recurrence from 2s terms
  std::vector<Rational> prefix;
  for (unsigned long n = 1; n <= 2 * s; ++n) prefix.push_back(seq.term_at(n));
  std::vector<Rational> min_coeffs = berlekamp_massey(prefix);
  size_t t = min_coeffs.size();
  if (t == 0) {
    bool all_zero = true;
    for (const auto& v : prefix) all_zero = all_zero && v == 0;
    if (all_zero) {
      dec.verdict = Verdict::Yes;
      dec.certificate = EvalTableCert{"zero sequence", {}};
      return dec;
    }
    // constant-like degenerate: fall through to scan
  }
  LRSSpec minimal;
  minimal.ring = RingTag::Rational;
  for (const auto& a : min_coeffs) minimal.coeffs.emplace_back(a);
  for (size_t i = 1; i <= t; ++i) minimal.initial.emplace_back(seq.term_at(i));

  if (t >= 1) {
    CompanionBridge br = companion(minimal);
    RootSystem rs = root_system(br.a);
    const SpectrumReport& rep = rs.rep;
    bool squarefree = true;
    for (const auto& cls : rep.classes) {
      for (const auto& er : cls.reals) squarefree = squarefree && er.multiplicity == 1;
      for (const auto& ep : cls.pairs) squarefree = squarefree && ep.multiplicity == 1;
    }
    squarefree = squarefree && rs.zero_mult <= 1;
    if (squarefree && rep.unique_dominant) {
      return lrs_dominant_path(minimal, seq, rs, budget, 1, 0, dec);
    }
    if (squarefree && rep.all_real && !rep.classes.empty()) {
      // split into even and odd subsequences; both have positive real spectra
      Decision odd = lrs_decide_parity(spec, 2, 1, budget);
      if (odd.verdict == Verdict::No) return odd;
      Decision even = lrs_decide_parity(spec, 2, 2, budget);
      if (even.verdict == Verdict::No) return even;
      if (odd.verdict == Verdict::Yes && even.verdict == Verdict::Yes) {
        EvalTableCert cert;
        cert.note = "real spectrum: even and odd subsequences certified separately";
        dec.verdict = Verdict::Yes;
        dec.certificate = std::move(cert);
        return dec;
      }
      dec.verdict = Verdict::Unknown;
      dec.detail = "real-spectrum subsequence check exhausted its budget";
      return dec;
    }
    if (squarefree && rep.all_unit_modulus) {
      if (rep.all_roots_of_unity) {
        unsigned long o = rep.group_order;
        // terms are periodic with period o; verify and tabulate
        bool periodic = true;
        for (size_t i = 1; i <= t && periodic; ++i)
          periodic = seq.term_at(i + o) == seq.term_at(i);
        if (periodic) {
          FiniteGroupCert cert;
          cert.order = o;
          std::optional<std::pair<unsigned long, Rational>> witness;
          for (unsigned long n = 1; n <= o; ++n) {
            Rational v = seq.term_at(n);
            cert.table.push_back(q_str(v));
            if (!witness && v < 0) witness = std::make_pair(n, v);
          }
          dec.spent.moment_index_reached = o + t;
          if (witness) {
            dec.verdict = Verdict::No;
            dec.certificate = WitnessCert{witness->first, q_str(witness->second)};
            dec.detail = "periodic unit-root sequence";
            return dec;
          }
          dec.verdict = Verdict::Yes;
          dec.certificate = std::move(cert);
          return dec;
        }
      } else {
        // simple unit-modulus roots: torus certification with coefficient boxes
        RootSystem rs2 = root_system(br.a);
        size_t roots = rs2.boxes.size();
        std::vector<BoxC> rhs(roots);
        for (size_t n = 0; n < roots; ++n)
          rhs[n] = bpoint(seq.term_at(static_cast<unsigned long>(n + 1)), Rational(0));
        std::vector<BoxC> coeffs;
        int rounds = 0;
        while (true) {
          try {
            coeffs = vandermonde_solve(rs2.boxes, rhs);
            break;
          } catch (const std::domain_error&) {
            for (auto& rf : rs2.refiners) rf();
            if (++rounds > 200) throw std::logic_error("vandermonde refinement stalled");
          }
        }
        std::vector<TorusPosition> positions;
        for (size_t j = 0; j < roots; ++j) {
          TorusPosition tp;
          tp.coeff = coeffs[j];
          tp.candidates = rs2.factors[j];
          auto st = rs2.state[j];
          tp.current = [st]() { return *st; };
          auto rf = rs2.refiners[j];
          tp.refine = [rf]() { rf(); };
          if (rs2.rou[j]) tp.finite_order = rs2.rou[j];
          positions.push_back(std::move(tp));
        }
        // also certify the small explicit prefix exactly
        for (unsigned long n = 1; n <= t + 2; ++n) {
          Rational v = seq.term_at(n);
          if (v < 0) {
            dec.verdict = Verdict::No;
            dec.certificate = WitnessCert{n, q_str(v)};
            return dec;
          }
        }
        TorusOutcome outcome =
            torus_certify_min(positions, ipoint(Rational(0)), Rational(0),
                              budget.relation_exponent_bound, budget.minimization_nodes);
        dec.spent.relation_bound_used = outcome.relation_bound_used;
        dec.spent.minimization_nodes = outcome.nodes_expanded;
        if (outcome.certified) {
          dec.verdict = Verdict::Yes;
          dec.certificate =
              TorusCert{outcome.relations, q_str(outcome.bound), outcome.nodes_expanded,
                        "certified lower bound for the unit-root expansion"};
          return dec;
        }
      }
    }
  }
  // fallback: exact scan
  for (unsigned long n = 1; n <= budget.max_moment_index; ++n) {
    Rational v = seq.term_at(n);
    dec.spent.moment_index_reached = n;
    if (v < 0) {
      dec.verdict = Verdict::No;
      dec.certificate = WitnessCert{n, q_str(v)};
      return dec;
    }
  }
  dec.verdict = Verdict::Unknown;
  dec.detail = "no structural path applies and the scan found no witness";
  return dec;
}

Decision lrs_decide_parity(const LRSSpec& original, unsigned long stride, unsigned long offset,
                           const Budget& budget) {
  // subsequence w_k = u_{offset + stride (k-1)} as its own LRS (via BM)
  RatSequence seq{&original, {}};
  size_t s = original.coeffs.size();
  std::vector<Rational> terms;
  for (size_t k = 0; k < 2 * s + 4; ++k)
    terms.push_back(seq.term_at(offset + stride * k));
  std::vector<Rational> cs = berlekamp_massey(terms);
  LRSSpec sub;
  sub.ring = RingTag::Rational;
  for (const auto& a : cs) sub.coeffs.emplace_back(a);
  for (size_t i = 0; i < cs.size(); ++i) sub.initial.emplace_back(terms[i]);
  Decision d = decide_lrs_rational(sub, budget);
  // remap witness indices back to the original sequence
  if (d.verdict == Verdict::No) {
    if (auto* w = std::get_if<WitnessCert>(&d.certificate)) {
      unsigned long k = w->n;
      w->n = offset + stride * (k - 1);
    }
  }
  return d;
}

Decision decide_lrs_gauss(const LRSSpec& spec, const Budget& budget) {
  Decision dec;
  size_t s = spec.coeffs.size();
  GaussSequence seq{&spec, {}};
  // scan strand
  unsigned long precheck = std::min<unsigned long>(budget.max_moment_index, 4 * s + 16);
  for (unsigned long n = 1; n <= precheck; ++n) {
    const GaussQ& v = seq.term_at(n);
    dec.spent.moment_index_reached = n;
    if (!gauss_nonneg(v)) {
      dec.verdict = Verdict::No;
      dec.certificate = WitnessCert{n, to_string(v)};
      return dec;
    }
  }
  std::vector<GaussQ> prefix;
  for (unsigned long n = 1; n <= 2 * s; ++n) prefix.push_back(seq.term_at(n));
  std::vector<GaussQ> cs = berlekamp_massey(prefix);
  size_t t = cs.size();
  if (t == 0) {
    dec.verdict = Verdict::Yes;
    dec.certificate = EvalTableCert{"zero sequence", {}};
    return dec;
  }
  // minimal polynomial x^t - c_1 x^{t-1} - ... - c_t over Q[i]; build the real
  // norm polynomial N = p * conj(p) to locate the roots
  std::vector<GaussQ> pmin(t + 1);
  pmin[t] = GaussQ(Rational(1));
  for (size_t i = 1; i <= t; ++i) pmin[t - i] = GaussQ() - cs[i - 1];
  // N(x) with rational coefficients
  std::vector<Rational> ncoef(2 * t + 1, Rational(0));
  for (size_t i = 0; i <= t; ++i)
    for (size_t j = 0; j <= t; ++j) {
      GaussQ prod = pmin[i] * pmin[j].conj();
      ncoef[i + j] += prod.re;  // imaginary parts cancel in the symmetrized sum
    }
  Integer den(1);
  for (const auto& cval : ncoef) den = lcm_int(den, cval.get_den());
  std::vector<Integer> nint(ncoef.size());
  for (size_t i = 0; i < ncoef.size(); ++i) {
    Rational tmp = ncoef[i] * Rational(den);
    tmp.canonicalize();
    nint[i] = tmp.get_num();
  }
  IntPoly npoly{std::move(nint)};
  IntPoly nsf = squarefree_part(npoly).canonical();
  // gather boxes of all roots of N, keep those that are roots of pmin
  struct GRoot {
    std::shared_ptr<BoxC> box;
    IntPoly factor;
    int mult;  // multiplicity in pmin
  };
  std::vector<GRoot> groots;
  auto add_root = [&](std::shared_ptr<BoxC> box, const IntPoly& fac) {
    // isolate within nsf, then count in pmin
    while (true) {
      try {
        if (winding_number(nsf, box->re, box->im) == 1) break;
      } catch (const EdgeRootError&) {
      }
      refine_box(fac, *box, box->width() / 4);
    }
    int m = 0;
    while (true) {
      try {
        m = winding_number(pmin, box->re, box->im);
        break;
      } catch (const EdgeRootError&) {
        refine_box(fac, *box, box->width() / 4);
      }
    }
    if (m > 0) groots.push_back({box, fac, m});
  };
  for (const auto& [fac, mult] : squarefree_decomposition(npoly)) {
    for (const auto& iv : isolate_real_roots_squarefree(fac)) {
      AlgebraicReal r = AlgebraicReal::from_root(fac, iv);
      Rational w(1, 1024);
      r.refine_to_width(w);
      auto box = std::make_shared<BoxC>(BoxC{{r.lo() - w, r.hi() + w}, {-w, w}});
      add_root(box, fac);
    }
    for (const BoxC& b : isolate_complex_upper(fac)) {
      auto box = std::make_shared<BoxC>(b);
      add_root(box, fac);
      auto cbox = std::make_shared<BoxC>(bconj(b));
      // conjugate boxes refine through the same underlying machinery
      add_root(cbox, fac);
    }
  }
  // simple & unit-modulus check: every pmin-root simple and |root| = 1
  bool simple_unit = true;
  int mult_total = 0;
  for (const auto& gr : groots) {
    mult_total += gr.mult;
    if (gr.mult != 1) simple_unit = false;
  }
  if (mult_total != static_cast<int>(t)) simple_unit = false;
  if (simple_unit) {
    // unit modulus: |root|^2 = 1 exactly, via the modulus keys of each factor
    for (const auto& gr : groots) {
      BoxC b = *gr.box;
      IntPoly fac = gr.factor;
      AlgebraicReal key = locate_real_root(
          composed_product(fac, fac), [&b]() -> QInterval { return bnorm2(b); },
          [&fac, &b] { refine_box(fac, b, b.width() / 4); });
      if (compare_to_rational(key, Rational(1)) != 0) {
        simple_unit = false;
        break;
      }
    }
  }
  if (simple_unit) {
    // roots of unity? strip cyclotomics from nsf
    IntPoly rest = nsf;
    unsigned order = 1;
    for (unsigned n = 1; n <= 2 * static_cast<unsigned>(nsf.degree() * nsf.degree()) + 2; ++n) {
      if (euler_phi(n) > static_cast<unsigned>(rest.degree())) continue;
      IntPoly phi = cyclotomic(n);
      while (rest.degree() >= phi.degree() && divides(phi, rest)) {
        rest = divide_exact(rest, phi);
        order = std::lcm(order, n);
      }
      if (rest.degree() == 0) break;
    }
    if (rest.degree() == 0) {
      // periodic with period = order
      bool periodic = true;
      for (size_t i = 1; i <= t && periodic; ++i)
        periodic = seq.term_at(i + order) == seq.term_at(i);
      if (periodic) {
        FiniteGroupCert cert;
        cert.order = order;
        std::optional<std::pair<unsigned long, GaussQ>> witness;
        for (unsigned long n = 1; n <= order; ++n) {
          const GaussQ& v = seq.term_at(n);
          cert.table.push_back(to_string(v));
          if (!witness && !gauss_nonneg(v)) witness = std::make_pair(n, v);
        }
        dec.spent.moment_index_reached = order + t;
        if (witness) {
          dec.verdict = Verdict::No;
          dec.certificate = WitnessCert{witness->first, to_string(witness->second)};
          dec.detail = "periodic unit-root Gaussian sequence";
          return dec;
        }
        dec.verdict = Verdict::Yes;
        dec.certificate = std::move(cert);
        return dec;
      }
    } else {
      // torus strand with Gaussian rhs and three objectives
      std::vector<BoxC> boxes;
      std::vector<IntPoly> factors;
      for (const auto& gr : groots) {
        boxes.push_back(*gr.box);
        factors.push_back(gr.factor);
      }
      std::vector<BoxC> rhs(boxes.size());
      for (size_t n = 0; n < boxes.size(); ++n) {
        const GaussQ& v = seq.term_at(static_cast<unsigned long>(n + 1));
        rhs[n] = bpoint(v.re, v.im);
      }
      std::vector<BoxC> coeffs;
      int rounds = 0;
      while (true) {
        try {
          std::vector<BoxC> cur;
          cur.reserve(groots.size());
          for (const auto& gr : groots) cur.push_back(*gr.box);
          coeffs = vandermonde_solve(cur, rhs);
          break;
        } catch (const std::domain_error&) {
          for (auto& gr : groots) refine_box(gr.factor, *gr.box, gr.box->width() / 4);
          if (++rounds > 200) throw std::logic_error("vandermonde refinement stalled");
        }
      }
      bool all_cert = true;
      TorusOutcome last;
      long nodes_total = 0;
      for (int obj = 0; obj < 3 && all_cert; ++obj) {
        std::vector<TorusPosition> positions;
        for (size_t j = 0; j < groots.size(); ++j) {
          TorusPosition tp;
          switch (obj) {
            case 0: tp.coeff = coeffs[j]; break;
            case 1: tp.coeff = bmul(bpoint(Rational(0), Rational(-1)), coeffs[j]); break;
            case 2: tp.coeff = bmul(bpoint(Rational(0), Rational(1)), coeffs[j]); break;
          }
          tp.candidates = groots[j].factor;
          auto st = groots[j].box;
          IntPoly fac = groots[j].factor;
          tp.current = [st]() { return *st; };
          tp.refine = [st, fac]() { refine_box(fac, *st, st->width() / 4); };
          positions.push_back(std::move(tp));
        }
        TorusOutcome outcome =
            torus_certify_min(positions, ipoint(Rational(0)), Rational(0),
                              budget.relation_exponent_bound, budget.minimization_nodes);
        nodes_total += outcome.nodes_expanded;
        dec.spent.relation_bound_used = outcome.relation_bound_used;
        if (!outcome.certified) all_cert = false;
        else last = outcome;
      }
      dec.spent.minimization_nodes = nodes_total;
      if (all_cert) {
        dec.verdict = Verdict::Yes;
        dec.certificate = TorusCert{last.relations, q_str(last.bound), nodes_total,
                                    "certified: real part bounded below, imaginary part pinched"};
        return dec;
      }
    }
  }
  // fallback scan
  for (unsigned long n = 1; n <= budget.max_moment_index; ++n) {
    const GaussQ& v = seq.term_at(n);
    dec.spent.moment_index_reached = n;
    if (!gauss_nonneg(v)) {
      dec.verdict = Verdict::No;
      dec.certificate = WitnessCert{n, to_string(v)};
      return dec;
    }
  }
  dec.verdict = Verdict::Unknown;
  dec.detail = "no structural path applies and the scan found no witness";
  return dec;
}

}  // namespace

Decision decide_lrs(const LRSSpec& spec, const Budget& budget) {
  spec.validate();
  switch (spec.ring) {
    case RingTag::Rational:
      return decide_lrs_rational(spec, budget);
    case RingTag::GaussianRational:
      return decide_lrs_gauss(spec, budget);
    case RingTag::IntPolyRing:
      throw std::invalid_argument("positivity over polynomial rings is outside the decidable cases");
  }
  throw std::logic_error("unreachable");
}

}  // namespace momkit
