#include "momkit/deciders.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>

namespace momkit {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

// ---- integer power-sum scan ----------------------------------------------------
// Traces of the scaled integer matrix via Newton's identities on the monic
// characteristic polynomial; ascending iterator with an s-wide window.
class TraceScan {
 public:
  explicit TraceScan(const IntPoly& char_monic) : p_(char_monic), s_(char_monic.degree()) {}

  // power sum of the roots at the next index (0, 1, 2, ... ascending)
  const Integer& next() {
    unsigned long n = produced_++;
    if (n == 0) {
      current_ = Integer(s_);
      return current_;
    }
    Integer acc(0);
    if (n <= static_cast<unsigned long>(s_)) {
      for (unsigned long i = 1; i < n; ++i) acc -= p_.coeff(s_ - static_cast<int>(i)) * window_[n - 1 - i];
      acc -= Integer(static_cast<long>(n)) * p_.coeff(s_ - static_cast<int>(n));
    } else {
      for (int i = 1; i <= s_; ++i) acc -= p_.coeff(s_ - i) * window_[window_.size() - i];
    }
    window_.push_back(acc);
    if (static_cast<int>(window_.size()) > s_ + 1) window_.erase(window_.begin());
    current_ = window_.back();
    return current_;
  }

 private:
  IntPoly p_;
  int s_;
  unsigned long produced_ = 0;
  std::vector<Integer> window_;  // p_1 .. most recent
  Integer current_;
};

Rational unscale_moment(const Integer& scaled_value, const Integer& c, unsigned long n) {
  Integer cn;
  mpz_pow_ui(cn.get_mpz_t(), c.get_mpz_t(), n);
  Rational r(scaled_value);
  r /= Rational(cn);
  r.canonicalize();
  return r;
}

// first n <= cap with a negative trace moment (exact integer scan of cA)
std::optional<std::pair<unsigned long, Rational>> scan_for_negative(const SpectrumReport& rep,
                                                                    unsigned long cap,
                                                                    unsigned long& reached) {
  TraceScan scan(rep.char_scaled);
  for (unsigned long n = 0; n <= cap; ++n) {
    const Integer& v = scan.next();
    reached = n;
    if (v < 0) return std::make_pair(n, unscale_moment(v, rep.scale, n));
  }
  return std::nullopt;
}

// ---- outward-rounded bound  ceil( log(num) / log(big/small) ) -------------------
unsigned long ratio_log_bound(const Rational& num, AlgebraicReal big, AlgebraicReal small_abs,
                              bool& ok, unsigned long cap) {
  ok = true;
  if (num <= 1) return 0;
  int guard = 0;
  while (!(big.lo() > 0) || !(big.lo() > small_abs.hi())) {
    big.refine();
    small_abs.refine();
    if (++guard > 100000) throw std::logic_error("ratio_log_bound: separation failed");
  }
  unsigned prec = 32;
  while (true) {
    Rational ratio = big.lo() / small_abs.hi();
    Rational dlo, dhi, nlo, nhi;
    log_bounds(ratio, prec, dlo, dhi);
    log_bounds(num, prec, nlo, nhi);
    if (dlo > 0) {
      Rational bound = nhi / dlo;
      Integer b = ceil_int(bound);
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
    if (prec > (1u << 16)) throw std::logic_error("ratio_log_bound: log precision stall");
  }
}

std::string q_str(const Rational& r) { return to_string(r); }

// ---- per-class normalized power-sum evaluator ------------------------------------
// mu_n^{(i)} = sum over class members of (lambda/|lambda|)^n, with multiplicity.
class ClassSequence {
 public:
  ClassSequence(const SpectrumReport& rep, size_t idx) : key_(rep.classes.at(idx).key) {
    const ModulusClass& cls = rep.classes[idx];
    all_rou_ = cls.all_rou;
    period_ = cls.period;
    Rational c2 = Rational(rep.scale * rep.scale);
    unit_ = compare_to_rational(key_, c2) == 0;
    if (unit_) unit_rho_ = Rational(rep.scale);
    else rho_ = key_.sqrt_nonneg();
    std::vector<IntPoly> factors;
    auto note_factor = [&factors](const IntPoly& f) {
      for (const auto& g : factors)
        if (g == f) return;
      factors.push_back(f);
    };
    for (const auto& er : cls.reals) note_factor(er.factor);
    for (const auto& ep : cls.pairs) note_factor(ep.factor);
    for (const auto& f : factors) {
      int count = 0, mult = 1;
      for (const auto& er : cls.reals)
        if (er.factor == f) {
          count += 1;
          mult = er.multiplicity;
        }
      for (const auto& ep : cls.pairs)
        if (ep.factor == f) {
          count += 2;
          mult = ep.multiplicity;
        }
      if (count == f.degree()) {
        complete_.push_back({f, mult, {}});
      } else {
        for (const auto& er : cls.reals)
          if (er.factor == f) (er.sign > 0 ? p_plus_ : p_minus_) += er.multiplicity;
        for (const auto& ep : cls.pairs)
          if (ep.factor == f) partial_.push_back({f, ep.box, ep.box, ep.multiplicity});
      }
    }
    rebuild(96);
  }

  bool all_rou() const { return all_rou_; }
  unsigned period() const { return period_; }

  QInterval enclosure(unsigned long n) {
    QInterval acc = ipoint(Rational(p_plus_) + Rational((n % 2 == 0) ? p_minus_ : -p_minus_));
    QInterval rho_pow = rho_power(n);
    for (auto& cf : complete_) {
      const Rational& sn = psum(cf, n);
      acc = iadd(acc, idiv(iscale(ipoint(sn), Rational(cf.mult)), rho_pow));
    }
    for (auto& pp : partial_) {
      BoxC wn = bpow_rounded(pp.w, static_cast<long>(n), bits_);
      acc = iadd(acc, iscale(wn.re, Rational(2 * pp.mult)));
    }
    return acc;
  }

  std::optional<int> cmp_certified(unsigned long n, const Rational& c, const Rational& tol) {
    while (true) {
      QInterval e = enclosure(n);
      if (e.lo > c) return 1;
      if (e.hi < c) return -1;
      if (e.width() < tol) return std::nullopt;
      rebuild(bits_ * 2);
    }
  }

  // exact sign of mu_n^{(i)} - c for root-of-unity classes (periodic values);
  // nullopt only on the documented degree cap for deeply nested partial pairs.
  std::optional<int> cmp_exact(unsigned long n, const Rational& c) {
    if (!all_rou_) throw std::logic_error("cmp_exact requires a root-of-unity class");
    n = ((n - 1) % period_) + 1;
    Rational b(p_plus_);
    b += (n % 2 == 0) ? Rational(p_minus_) : Rational(-p_minus_);
    Rational t = b - c;
    Rational q_sum(0);
    for (auto& cf : complete_) q_sum += Rational(cf.mult) * psum(cf, n);
    if (partial_.empty()) {
      if (unit_) {
        Rational rp(1);
        for (unsigned long i = 0; i < n; ++i) rp *= unit_rho_;
        return sign_of(Rational(t + q_sum / rp));
      }
      if (q_sum == 0) return sign_of(t);
      if (t == 0) return sign_of(q_sum);
      AlgebraicReal rp = pow(rho_, static_cast<unsigned>(n));
      Rational pivot = -q_sum / t;
      int cmp = compare_to_rational(rp, pivot);
      return sign_of(t) * cmp;
    }
    // generic: D = value * rho^n = t rho^n + q_sum + sum_j m_j (lambda_j^n + conj^n)
    const long degree_cap = 20000;
    IntPoly cand = IntPoly::linear_from_root(q_sum);
    long deg = 1;
    if (t != 0) {
      IntPoly rp_poly;
      if (unit_) {
        Rational rp(1);
        for (unsigned long i = 0; i < n; ++i) rp *= unit_rho_;
        rp_poly = IntPoly::linear_from_root(rp * t);
      } else {
        rp_poly = composed_power(rho_.defining(), static_cast<unsigned>(n))
                      .scale_variable(Rational(1) / t);
      }
      deg *= std::max(1, rp_poly.degree());
      if (deg > degree_cap) return std::nullopt;
      cand = composed_sum(cand, rp_poly);
    }
    for (auto& pp : partial_) {
      IntPoly cn = composed_power(pp.factor, static_cast<unsigned>(n));
      IntPoly pair_sum = composed_sum(cn, cn);
      if (pp.mult != 1) pair_sum = pair_sum.scale_variable(Rational(1, pp.mult));
      deg *= std::max(1, pair_sum.degree());
      if (deg > degree_cap) return std::nullopt;
      cand = composed_sum(cand, pair_sum);
    }
    auto d_box = [&]() -> QInterval {
      QInterval acc = ipoint(q_sum);
      acc = iadd(acc, iscale(rho_power(n), t));
      for (auto& pp : partial_) {
        BoxC ln = bpow_rounded(pp.base, static_cast<long>(n), bits_);
        acc = iadd(acc, iscale(ln.re, Rational(2 * pp.mult)));
      }
      return acc;
    };
    while (true) {
      QInterval e = d_box();
      if (e.lo > 0) return 1;
      if (e.hi < 0) return -1;
      BoxC db{e, {Rational(0), Rational(0)}};
      bool is_zero = boxed_value_is_zero(cand, db, [&]() -> BoxC {
        rebuild(bits_ * 2);
        return BoxC{d_box(), {Rational(0), Rational(0)}};
      });
      if (is_zero) return 0;
      while (true) {
        QInterval e2 = d_box();
        if (e2.lo > 0) return 1;
        if (e2.hi < 0) return -1;
        rebuild(bits_ * 2);
      }
    }
  }

 private:
  void rebuild(unsigned bits) {
    bits_ = bits;
    Rational w(1);
    Integer den(1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), std::min(bits_, 512u));
    w /= Rational(den);
    if (!unit_) {
      rho_.refine_to_width(w);
      while (rho_.lo() <= 0) rho_.refine();
      rho_lo_ = rho_.lo();
      rho_hi_ = rho_.hi();
    }
    for (auto& pp : partial_) {
      refine_box(pp.factor, pp.base, w);
      QInterval inv = unit_ ? ipoint(Rational(1) / unit_rho_)
                            : QInterval{Rational(1) / rho_hi_, Rational(1) / rho_lo_};
      pp.w = BoxC{iround(imul(pp.base.re, inv), bits_), iround(imul(pp.base.im, inv), bits_)};
    }
  }

  QInterval rho_power(unsigned long n) {
    if (unit_) {
      Rational rp(1);
      for (unsigned long i = 0; i < n; ++i) rp *= unit_rho_;
      return ipoint(rp);
    }
    QInterval acc = ipoint(Rational(1));
    QInterval base{rho_lo_, rho_hi_};
    unsigned long k = n;
    while (k > 0) {
      if (k & 1) acc = iround({acc.lo * base.lo, acc.hi * base.hi}, bits_);
      base = iround({base.lo * base.lo, base.hi * base.hi}, bits_);
      k >>= 1;
    }
    return acc;
  }

  struct CompleteFactor {
    IntPoly poly;
    int mult;
    std::vector<Rational> psums;
  };
  struct PartialPair {
    IntPoly factor;
    BoxC base;
    BoxC w;
    int mult;
  };

  const Rational& psum(CompleteFactor& cf, unsigned long n) {
    while (cf.psums.size() < n) {
      size_t k = cf.psums.size() + 1;
      int d = cf.poly.degree();
      Rational lc(cf.poly.leading());
      Rational acc(0);
      if (k <= static_cast<size_t>(d)) {
        for (size_t i = 1; i < k; ++i)
          acc -= Rational(cf.poly.coeff(d - static_cast<int>(i))) / lc * cf.psums[k - 1 - i];
        acc -= Rational(static_cast<long>(k)) *
               Rational(cf.poly.coeff(d - static_cast<int>(k))) / lc;
      } else {
        for (int i = 1; i <= d; ++i)
          acc -= Rational(cf.poly.coeff(d - i)) / lc * cf.psums[cf.psums.size() - i];
      }
      cf.psums.push_back(acc);
    }
    return cf.psums[n - 1];
  }

  long p_plus_ = 0, p_minus_ = 0;
  std::vector<CompleteFactor> complete_;
  std::vector<PartialPair> partial_;
  bool unit_ = false;
  Rational unit_rho_;
  AlgebraicReal key_;
  AlgebraicReal rho_;
  Rational rho_lo_, rho_hi_;
  unsigned bits_ = 96;
  bool all_rou_ = false;
  unsigned period_ = 1;
};

// ---- torus positions for a peripheral class ---------------------------------------
struct PositionState {
  IntPoly factor;
  BoxC box;
  AlgebraicReal u;
  bool unit = false;
  Rational unit_rho;
  unsigned sqrt_prec = 48;

  BoxC normalized() {
    if (unit)
      return {iscale(box.re, Rational(1) / unit_rho), iscale(box.im, Rational(1) / unit_rho)};
    Rational llo, lhi, hlo, hhi;
    sqrt_bounds(u.lo() < 0 ? Rational(0) : u.lo(), sqrt_prec, llo, lhi);
    sqrt_bounds(u.hi(), sqrt_prec, hlo, hhi);
    QInterval inv{Rational(1) / hhi, llo > 0 ? Rational(1) / llo : Rational(1) / lhi};
    return {imul(box.re, inv), imul(box.im, inv)};
  }
  void refine() {
    refine_box(factor, box, box.width() / 4);
    u.refine();
    sqrt_prec += 16;
  }
};

struct ClassPositions {
  std::vector<TorusPosition> positions;
  std::vector<std::shared_ptr<PositionState>> states;
  long plus_units = 0;
};

ClassPositions build_class_positions(const SpectrumReport& rep, size_t idx,
                                     const Rational& coeff_scale) {
  ClassPositions out;
  const ModulusClass& cls = rep.classes.at(idx);
  Rational c2 = Rational(rep.scale * rep.scale);
  bool unit = compare_to_rational(cls.key, c2) == 0;
  for (const auto& er : cls.reals) {
    if (er.sign > 0) {
      out.plus_units += er.multiplicity;
      continue;
    }
    TorusPosition p;
    p.coeff = bpoint(coeff_scale * er.multiplicity, Rational(0));
    p.candidates = IntPoly{1, 1};
    p.current = []() { return bpoint(Rational(-1), Rational(0)); };
    p.refine = []() {};
    p.finite_order = 2;
    out.positions.push_back(std::move(p));
  }
  for (const auto& ep : cls.pairs) {
    auto st = std::make_shared<PositionState>();
    st->factor = ep.factor;
    st->box = ep.box;
    st->u = cls.key;
    st->unit = unit;
    if (unit) st->unit_rho = Rational(rep.scale);
    TorusPosition p;
    p.coeff = bpoint(coeff_scale * 2 * ep.multiplicity, Rational(0));
    if (unit) {
      p.candidates = ep.factor.scale_variable(Rational(rep.scale)).canonical();
    } else {
      IntPoly v = cls.key.defining().square_variable();
      p.candidates = composed_product(ep.factor, v.reverse()).canonical();
    }
    p.current = [st]() { return st->normalized(); };
    p.refine = [st]() { st->refine(); };
    if (ep.is_rou) p.finite_order = ep.rou_order;
    out.positions.push_back(std::move(p));
    out.states.push_back(st);
  }
  return out;
}

Decision make_witness(Verdict v, unsigned long n, const std::string& value, BudgetSpent spent,
                      std::string detail = {}) {
  Decision d;
  d.verdict = v;
  d.certificate = WitnessCert{n, value};
  d.spent = spent;
  d.detail = std::move(detail);
  return d;
}

// finite-group decision for any matrix with verified A^o = I
std::optional<Decision> finite_group_path(const RatMatrix& a, const SpectrumReport& rep) {
  if (!rep.all_roots_of_unity) return std::nullopt;
  unsigned long o = rep.group_order;
  if (!(a.pow(o) == RatMatrix::identity(a.size()))) return std::nullopt;
  FiniteGroupCert cert;
  cert.order = o;
  RatMatrix pw = RatMatrix::identity(a.size());
  std::optional<std::pair<unsigned long, Rational>> witness;
  for (unsigned long n = 0; n < o; ++n) {
    Rational t = pw.trace();
    cert.table.push_back(q_str(t));
    if (!witness && t < 0) witness = std::make_pair(n, t);
    pw = pw * a;
  }
  Decision dec;
  dec.spent.moment_index_reached = o - 1;
  if (witness) {
    dec.verdict = Verdict::No;
    dec.certificate = WitnessCert{witness->first, q_str(witness->second)};
    dec.detail = "finite group of order " + std::to_string(o);
  } else {
    dec.verdict = Verdict::Yes;
    dec.certificate = std::move(cert);
  }
  return dec;
}

}  // namespace

// ---- Theorem 3.3(i) ----------------------------------------------------------------

Decision decide_dominant(const RatMatrix& a, const LinearFunctional& phi) {
  if (phi.kind != LinearFunctional::Kind::Trace)
    throw std::invalid_argument("decide_dominant requires the trace functional");
  SpectrumReport rep = analyze(a);
  Decision dec;
  int s = rep.size;
  if (rep.nilpotent) {
    dec.verdict = Verdict::Yes;
    dec.certificate =
        DominanceCert{0, "nilpotent: traces vanish for n >= 1", {{0, q_str(Rational(s))}}};
    return dec;
  }
  if (!rep.unique_dominant) throw std::invalid_argument("no unique dominant eigenvalue");
  int k = rep.dominant_multiplicity;
  int sign = rep.dominant_sign;
  AlgebraicReal lam1_abs = rep.classes[0].reals[0].value.abs_value();

  if (rep.classes.size() == 1) {
    if (sign > 0) {
      dec.verdict = Verdict::Yes;
      dec.certificate = DominanceCert{
          0, "single nonzero modulus class: mu_n = k lambda_1^n", {{0, q_str(Rational(s))}}};
      return dec;
    }
    dec.spent.moment_index_reached = 1;
    return make_witness(Verdict::No, 1, q_str(a.trace()), dec.spent);
  }

  AlgebraicReal lam2_abs = rep.classes[1].key.sqrt_nonneg();
  Rational num = Rational(s - k) / Rational(k);
  bool ok = true;
  unsigned long bound = ratio_log_bound(num, lam1_abs, lam2_abs, ok, 2'000'000);
  if (!ok) {
    dec.verdict = Verdict::Unknown;
    dec.detail = "dominance bound exceeds the scan cap";
    return dec;
  }
  unsigned long reached = 0;
  if (sign < 0) {
    auto w = scan_for_negative(rep, bound + 2, reached);
    dec.spent.moment_index_reached = reached;
    if (!w) throw std::logic_error("dominant decider: guaranteed witness missing");
    return make_witness(Verdict::No, w->first, q_str(w->second), dec.spent);
  }
  auto w = scan_for_negative(rep, bound, reached);
  dec.spent.moment_index_reached = reached;
  if (w) return make_witness(Verdict::No, w->first, q_str(w->second), dec.spent);
  DominanceCert cert;
  cert.bound = bound;
  cert.note = "|mu_n - k lambda_1^n| <= (s-k)|lambda_2|^n with k=" + std::to_string(k) +
              "; scaled lambda_1 ~ " + lam1_abs.decimal_approx(8) + ", scaled |lambda_2| ~ " +
              lam2_abs.decimal_approx(8);
  TraceScan scan(rep.char_scaled);
  for (unsigned long n = 0; n <= bound; ++n)
    cert.checked.emplace_back(n, q_str(unscale_moment(scan.next(), rep.scale, n)));
  dec.verdict = Verdict::Yes;
  dec.certificate = std::move(cert);
  return dec;
}

// ---- Theorem 3.3(ii) ---------------------------------------------------------------

Decision decide_real_spectrum(const RatMatrix& a) {
  SpectrumReport rep = analyze(a);
  if (!rep.all_real) throw std::invalid_argument("decide_real_spectrum requires a real spectrum");
  Decision dec;
  if (rep.nilpotent || rep.classes.empty()) {
    dec.verdict = Verdict::Yes;
    dec.certificate = EvalTableCert{"nilpotent: traces vanish for n >= 1", {}};
    return dec;
  }
  std::vector<long> eff(rep.classes.size(), 0);
  for (size_t i = 0; i < rep.classes.size(); ++i)
    for (const auto& er : rep.classes[i].reals)
      eff[i] += er.sign > 0 ? er.multiplicity : -er.multiplicity;
  size_t star = rep.classes.size();
  for (size_t i = 0; i < rep.classes.size(); ++i)
    if (eff[i] != 0) {
      star = i;
      break;
    }
  if (star == rep.classes.size()) {
    EvalTableCert cert;
    cert.note = "all odd-moment weights cancel; even moments are sums of even powers";
    for (size_t i = 0; i < rep.classes.size(); ++i)
      cert.entries.emplace_back("class_" + std::to_string(i + 1) + "_effective_weight", "0");
    dec.verdict = Verdict::Yes;
    dec.certificate = std::move(cert);
    return dec;
  }
  AlgebraicReal r_star = rep.classes[star].key.sqrt_nonneg();
  long e_star = eff[star];
  long tail = 0;
  size_t next = rep.classes.size();
  for (size_t i = star + 1; i < rep.classes.size(); ++i)
    if (eff[i] != 0) {
      tail += std::labs(eff[i]);
      if (next == rep.classes.size()) next = i;
    }
  unsigned long reached = 0;
  if (tail == 0) {
    if (e_star > 0) {
      dec.verdict = Verdict::Yes;
      dec.certificate =
          DominanceCert{0, "odd moments equal e(r*) r*^n with e(r*) > 0; even moments structural",
                        {{0, q_str(Rational(rep.size))}}};
      return dec;
    }
    dec.spent.moment_index_reached = 1;
    return make_witness(Verdict::No, 1, q_str(a.trace()), dec.spent);
  }
  AlgebraicReal r_next = rep.classes[next].key.sqrt_nonneg();
  Rational num = Rational(tail) / Rational(std::labs(e_star));
  bool ok = true;
  unsigned long bound = ratio_log_bound(num, r_star, r_next, ok, 2'000'000);
  if (!ok) {
    dec.verdict = Verdict::Unknown;
    dec.detail = "cancellation bound exceeds the scan cap";
    return dec;
  }
  if (e_star < 0) {
    auto w = scan_for_negative(rep, bound + 2, reached);
    dec.spent.moment_index_reached = reached;
    if (!w) throw std::logic_error("real-spectrum decider: guaranteed witness missing");
    return make_witness(Verdict::No, w->first, q_str(w->second), dec.spent);
  }
  auto w = scan_for_negative(rep, bound, reached);
  dec.spent.moment_index_reached = reached;
  if (w) return make_witness(Verdict::No, w->first, q_str(w->second), dec.spent);
  DominanceCert cert;
  cert.bound = bound;
  cert.note = "odd-moment dominance: |tail| <= " + std::to_string(tail) +
              " r_next^n against e(r*) = " + std::to_string(e_star);
  TraceScan scan(rep.char_scaled);
  for (unsigned long n = 0; n <= bound; ++n)
    cert.checked.emplace_back(n, q_str(unscale_moment(scan.next(), rep.scale, n)));
  dec.verdict = Verdict::Yes;
  dec.certificate = std::move(cert);
  return dec;
}

// ---- Theorem 3.2 -------------------------------------------------------------------

Decision decide_orthogonal(const RatMatrix& a, const Budget& budget, const StrandControl& strands) {
  if (!is_orthogonal(a)) throw std::invalid_argument("non-orthogonal input");
  SpectrumReport rep = analyze(a);
  Decision dec;
  if (!strands.disable_finite_group) {
    if (auto fg = finite_group_path(a, rep)) return *fg;
  }
  unsigned long reached = 0;
  if (auto w = scan_for_negative(rep, budget.max_moment_index, reached)) {
    dec.spent.moment_index_reached = reached;
    return make_witness(Verdict::No, w->first, q_str(w->second), dec.spent);
  }
  dec.spent.moment_index_reached = reached;
  if (rep.classes.size() != 1)
    throw std::logic_error("orthogonal spectrum must form a single unit class");
  ClassPositions cp = build_class_positions(rep, 0, Rational(1));
  QInterval constant = ipoint(Rational(cp.plus_units));
  TorusOutcome outcome = torus_certify_min(cp.positions, constant, Rational(0),
                                           budget.relation_exponent_bound,
                                           budget.minimization_nodes);
  dec.spent.relation_bound_used = outcome.relation_bound_used;
  dec.spent.minimization_nodes = outcome.nodes_expanded;
  if (outcome.certified) {
    dec.verdict = Verdict::Yes;
    dec.certificate = TorusCert{outcome.relations, q_str(outcome.bound), outcome.nodes_expanded,
                                "certified lower bound of the trace over the closure superset"};
    return dec;
  }
  dec.verdict = Verdict::Unknown;
  dec.detail = "budget exhausted: no negative moment found and no torus certificate";
  return dec;
}

// ---- Lemma 3.5 subroutines -----------------------------------------------------------

namespace {

Decision eta_ge_impl(const SpectrumReport& rep, int class_index, const Rational& c,
                     const Budget& budget) {
  Decision dec;
  if (class_index < 1) throw std::invalid_argument("class indices start at 1");
  if (static_cast<size_t>(class_index) > rep.classes.size()) {
    dec.verdict = Verdict::Yes;
    dec.certificate = EvalTableCert{"empty peripheral class: eta = +infinity", {}};
    return dec;
  }
  ClassSequence seq(rep, static_cast<size_t>(class_index - 1));
  if (seq.all_rou()) {
    unsigned N = seq.period();
    EvalTableCert cert;
    cert.note = "root-of-unity class: normalized power sums have period " + std::to_string(N);
    bool capped = false;
    for (unsigned long n = 1; n <= N; ++n) {
      auto s = seq.cmp_exact(n, c);
      if (!s) {
        capped = true;
        break;
      }
      cert.entries.emplace_back("n=" + std::to_string(n),
                                *s < 0 ? "< c" : (*s == 0 ? "= c" : "> c"));
      if (*s < 0) {
        QInterval e = seq.enclosure(n);
        dec.verdict = Verdict::No;
        dec.certificate = WitnessCert{n, q_str((e.lo + e.hi) / 2)};
        dec.detail = "exact periodic evaluation certifies mu_n^{(i)} < c";
        return dec;
      }
    }
    if (!capped) {
      dec.verdict = Verdict::Yes;
      dec.certificate = std::move(cert);
      return dec;
    }
  }
  unsigned long cap = std::min<unsigned long>(budget.max_moment_index, 4096);
  for (unsigned long n = 1; n <= cap; ++n) {
    dec.spent.moment_index_reached = n;
    auto s = seq.cmp_certified(n, c, budget.tolerance);
    if (s && *s < 0) {
      QInterval e = seq.enclosure(n);
      return make_witness(Verdict::No, n, q_str((e.lo + e.hi) / 2), dec.spent,
                          "certified interval evaluation below c");
    }
  }
  ClassPositions cp = build_class_positions(rep, static_cast<size_t>(class_index - 1), Rational(1));
  QInterval constant = ipoint(Rational(cp.plus_units));
  TorusOutcome outcome = torus_certify_min(cp.positions, constant, c,
                                           budget.relation_exponent_bound,
                                           budget.minimization_nodes);
  dec.spent.relation_bound_used = outcome.relation_bound_used;
  dec.spent.minimization_nodes = outcome.nodes_expanded;
  if (outcome.certified) {
    dec.verdict = Verdict::Yes;
    dec.certificate = TorusCert{outcome.relations, q_str(outcome.bound), outcome.nodes_expanded,
                                "certified lower bound for the normalized class power sums"};
    return dec;
  }
  dec.verdict = Verdict::Unknown;
  dec.detail = "budget exhausted in both eta strands";
  return dec;
}

Decision gamma_le_impl(const SpectrumReport& rep, int class_index, const Rational& c,
                       unsigned long p, unsigned long q, const Budget& budget) {
  Decision dec;
  if (class_index < 1) throw std::invalid_argument("class indices start at 1");
  if (p < 1 || q < 1) throw std::invalid_argument("progression parameters must satisfy p, q >= 1");
  if (static_cast<size_t>(class_index) > rep.classes.size()) {
    dec.verdict = Verdict::Yes;
    dec.certificate = EvalTableCert{"empty peripheral class: gamma = -infinity", {}};
    return dec;
  }
  ClassSequence seq(rep, static_cast<size_t>(class_index - 1));
  if (seq.all_rou()) {
    unsigned N = seq.period();
    EvalTableCert cert;
    cert.note = "root-of-unity class: values along pn+q, period " + std::to_string(N);
    bool capped = false;
    for (unsigned long k = 0; k < N; ++k) {
      unsigned long e = p * k + q;
      auto s = seq.cmp_exact(e, c);
      if (!s) {
        capped = true;
        break;
      }
      cert.entries.emplace_back("n=" + std::to_string(e),
                                *s > 0 ? "> c" : (*s == 0 ? "= c" : "< c"));
      if (*s > 0) {
        QInterval en = seq.enclosure(e);
        dec.verdict = Verdict::No;
        dec.certificate = WitnessCert{e, q_str((en.lo + en.hi) / 2)};
        dec.detail = "exact periodic evaluation certifies mu_{pn+q}^{(i)} > c";
        return dec;
      }
    }
    if (!capped) {
      dec.verdict = Verdict::Yes;
      dec.certificate = std::move(cert);
      return dec;
    }
  }
  unsigned long cap = std::min<unsigned long>(budget.max_moment_index, 4096);
  for (unsigned long k = 0; p * k + q <= cap; ++k) {
    unsigned long e = p * k + q;
    dec.spent.moment_index_reached = e;
    auto s = seq.cmp_certified(e, c, budget.tolerance);
    if (s && *s > 0) {
      QInterval en = seq.enclosure(e);
      return make_witness(Verdict::No, e, q_str((en.lo + en.hi) / 2), dec.spent,
                          "certified interval evaluation above c");
    }
  }
  // yes-strand: certify  -(shifted objective) >= -c  over the closure of the
  // p-th powers; coefficients pick up the fixed factor w^q.
  ClassPositions cp = build_class_positions(rep, static_cast<size_t>(class_index - 1), Rational(1));
  QInterval constant = ipoint(Rational(-cp.plus_units));
  std::vector<TorusPosition> shifted;
  for (auto& pos : cp.positions) {
    TorusPosition np;
    Rational wtarget(1, 1u << 30);
    int guard = 0;
    while (pos.current().width() > wtarget && guard++ < 2000) pos.refine();
    BoxC wq = bpow_rounded(pos.current(), static_cast<long>(q), 160);
    np.coeff = bmul(bneg(pos.coeff), wq);
    np.candidates = composed_power(pos.candidates, static_cast<unsigned>(p)).canonical();
    auto base_current = pos.current;
    unsigned long pl = p;
    np.current = [base_current, pl]() {
      return bpow_rounded(base_current(), static_cast<long>(pl), 192);
    };
    np.refine = pos.refine;
    if (pos.finite_order) {
      unsigned long o = *pos.finite_order;
      np.finite_order = static_cast<unsigned>(o / std::gcd(o, p));
    }
    shifted.push_back(std::move(np));
  }
  TorusOutcome outcome = torus_certify_min(shifted, constant, Rational(-c),
                                           budget.relation_exponent_bound,
                                           budget.minimization_nodes);
  dec.spent.relation_bound_used = outcome.relation_bound_used;
  dec.spent.minimization_nodes = outcome.nodes_expanded;
  if (outcome.certified) {
    dec.verdict = Verdict::Yes;
    dec.certificate = TorusCert{outcome.relations, q_str(outcome.bound), outcome.nodes_expanded,
                                "certified upper bound along the arithmetic progression"};
    return dec;
  }
  dec.verdict = Verdict::Unknown;
  dec.detail = "budget exhausted in both gamma strands";
  return dec;
}

}  // namespace

Decision eta_ge(const RatMatrix& a, int class_index, const Rational& c, const Budget& budget) {
  return eta_ge_impl(analyze(a), class_index, c, budget);
}

Decision gamma_le(const RatMatrix& a, int class_index, const Rational& c, unsigned long p,
                  unsigned long q, const Budget& budget) {
  return gamma_le_impl(analyze(a), class_index, c, p, q, budget);
}

// ---- Theorem 3.6 ---------------------------------------------------------------------

Decision classify_general(const RatMatrix& a, const Rational& epsilon, unsigned long p,
                          unsigned long q, const Budget& budget) {
  if (a.is_zero()) throw std::invalid_argument("classify_general requires a non-zero matrix");
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  SpectrumReport rep = analyze(a);
  Decision dec;
  if (rep.nilpotent) {
    dec.verdict = Verdict::Yes;
    dec.certificate = EvalTableCert{"nilpotent: traces vanish for n >= 1", {}};
    dec.detail = "criterion (i), degenerate spectrum";
    return dec;
  }
  size_t d = rep.classes.size();
  std::string status;

  auto scan_negative_all = [&]() -> std::optional<std::pair<unsigned long, Rational>> {
    unsigned long reached = 0;
    auto w = scan_for_negative(rep, budget.max_moment_index, reached);
    dec.spent.moment_index_reached = std::max(dec.spent.moment_index_reached, reached);
    return w;
  };

  // criterion (iii): eta_1 < 0
  Decision eta1 = eta_ge_impl(rep, 1, Rational(0), budget);
  status += "eta_1>=0:" + to_string(eta1.verdict) + ";";
  if (eta1.verdict == Verdict::No) {
    if (auto w = scan_negative_all())
      return make_witness(Verdict::No, w->first, q_str(w->second), dec.spent,
                          "criterion (iii): eta_1 < 0");
    dec.verdict = Verdict::Unknown;
    dec.detail = "criterion (iii) holds but no witness within the moment budget";
    return dec;
  }

  // criterion (ii)
  for (size_t k = 0; k < d; ++k) {
    bool all_ok = true;
    for (size_t i = 1; i <= k && all_ok; ++i) {
      Decision gi = gamma_le_impl(rep, static_cast<int>(i), Rational(0), p, q, budget);
      if (gi.verdict != Verdict::Yes) all_ok = false;
    }
    if (!all_ok) continue;
    Decision gk = gamma_le_impl(rep, static_cast<int>(k + 1), Rational(-epsilon), p, q, budget);
    if (gk.verdict == Verdict::Yes) {
      if (auto w = scan_negative_all())
        return make_witness(Verdict::No, w->first, q_str(w->second), dec.spent,
                            "criterion (ii) with k=" + std::to_string(k));
      dec.verdict = Verdict::Unknown;
      dec.detail = "criterion (ii) certified but no exact witness within the moment budget";
      return dec;
    }
  }
  status += "criterion(ii):none;";

  // criterion (i)
  for (size_t k = 0; k <= d; ++k) {
    bool all_ok = true;
    for (size_t i = 1; i <= k && all_ok; ++i) {
      Decision ei = eta_ge_impl(rep, static_cast<int>(i), Rational(0), budget);
      if (ei.verdict != Verdict::Yes) all_ok = false;
    }
    if (!all_ok) continue;
    if (k == d) {
      EvalTableCert cert;
      cert.note = "criterion (i) with k equal to the class count: every eta_i >= 0";
      dec.verdict = Verdict::Yes;
      dec.certificate = std::move(cert);
      dec.detail = "criterion (i), trivial tail (eta_{k+1} = +infinity)";
      return dec;
    }
    Decision ek = eta_ge_impl(rep, static_cast<int>(k + 1), epsilon, budget);
    if (ek.verdict != Verdict::Yes) continue;
    unsigned long bound = 0;
    if (k + 2 <= d) {
      AlgebraicReal lam_k1 = rep.classes[k].key.sqrt_nonneg();
      AlgebraicReal lam_k2 = rep.classes[k + 1].key.sqrt_nonneg();
      Rational num = Rational(rep.size) * Rational(static_cast<long>(d)) / epsilon;
      bool okb = true;
      bound = ratio_log_bound(num, lam_k1, lam_k2, okb, 2'000'000);
      if (!okb) {
        dec.verdict = Verdict::Unknown;
        dec.detail = "criterion (i) bound exceeds the scan cap";
        return dec;
      }
    }
    TraceScan scan(rep.char_scaled);
    EvalTableCert cert;
    cert.note =
        "criterion (i) with k=" + std::to_string(k) + "; exact check to n=" + std::to_string(bound);
    for (unsigned long n = 0; n <= bound; ++n) {
      const Integer& v = scan.next();
      dec.spent.moment_index_reached = std::max(dec.spent.moment_index_reached, n);
      if (v < 0)
        return make_witness(Verdict::No, n, q_str(unscale_moment(v, rep.scale, n)), dec.spent,
                            "criterion (i) finite check found a negative moment");
      cert.entries.emplace_back("mu_" + std::to_string(n), q_str(unscale_moment(v, rep.scale, n)));
    }
    dec.verdict = Verdict::Yes;
    dec.certificate = std::move(cert);
    dec.detail = "criterion (i) with k=" + std::to_string(k);
    return dec;
  }

  dec.verdict = Verdict::Unknown;
  dec.detail = "no criterion certifiable within budget [" + status + "]";
  return dec;
}

// ---- auto dispatch ---------------------------------------------------------------------

Decision decide_auto(const RatMatrix& a, const Rational& epsilon, unsigned long p,
                     unsigned long q, const Budget& budget) {
  SpectrumReport rep = analyze(a);
  if (auto fg = finite_group_path(a, rep)) {
    fg->detail = "auto: finite-group path; " + fg->detail;
    return *fg;
  }
  if (rep.unique_dominant) {
    Decision d = decide_dominant(a, LinearFunctional::trace());
    d.detail = "auto: dominant path; " + d.detail;
    return d;
  }
  if (rep.all_real) {
    Decision d = decide_real_spectrum(a);
    d.detail = "auto: real-spectrum path; " + d.detail;
    return d;
  }
  Decision d = classify_general(a, epsilon, p, q, budget);
  d.detail = "auto: general path; " + d.detail;
  return d;
}

// ---- Lemma 3.1 invariant polynomials ------------------------------------------------------

std::vector<CommPoly> invariant_polys(const std::vector<RatMatrix>& generators, int degree) {
  if (degree < 1) throw std::invalid_argument("invariant basis needs degree >= 1");
  if (generators.empty()) throw std::invalid_argument("invariant basis needs generators");
  int s = generators[0].size();
  for (const auto& g : generators) {
    if (g.size() != s) throw std::invalid_argument("generator size mismatch");
    if (!is_orthogonal(g)) throw std::invalid_argument("generators must be orthogonal");
  }
  int nvars = s * s;
  std::vector<std::vector<unsigned>> monomials;
  std::vector<unsigned> cur(nvars, 0);
  std::function<void(int, int)> gen = [&](int var, int remaining) {
    if (var == nvars) {
      monomials.push_back(cur);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      cur[var] = static_cast<unsigned>(e);
      gen(var + 1, remaining - e);
    }
    cur[var] = 0;
  };
  gen(0, degree);
  auto deg_of = [](const std::vector<unsigned>& e) {
    int t = 0;
    for (unsigned x : e) t += static_cast<int>(x);
    return t;
  };
  std::sort(monomials.begin(), monomials.end(),
            [&](const std::vector<unsigned>& x, const std::vector<unsigned>& y) {
              int dx = deg_of(x), dy = deg_of(y);
              if (dx != dy) return dx < dy;
              return x < y;
            });
  std::map<std::vector<unsigned>, size_t> index;
  for (size_t i = 0; i < monomials.size(); ++i) index[monomials[i]] = i;
  size_t M = monomials.size();

  using MapPoly = std::map<std::vector<unsigned>, Rational>;
  auto mp_mul = [](const MapPoly& a, const MapPoly& b) {
    MapPoly r;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        std::vector<unsigned> e(ea.size());
        for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        Rational v = ca * cb;
        auto [it, fresh] = r.emplace(std::move(e), v);
        if (!fresh) {
          it->second += v;
          if (it->second == 0) r.erase(it);
        }
      }
    return r;
  };

  std::vector<std::vector<Rational>> rows;
  {
    std::vector<Rational> row(M, Rational(0));
    for (size_t m = 0; m < M; ++m) {
      bool diag_only = true;
      for (int i = 0; i < s && diag_only; ++i)
        for (int j = 0; j < s && diag_only; ++j)
          if (i != j && monomials[m][static_cast<size_t>(i) * s + j] > 0) diag_only = false;
      row[m] = diag_only ? Rational(1) : Rational(0);
    }
    rows.push_back(std::move(row));
  }
  for (const auto& g : generators) {
    std::vector<MapPoly> subst(static_cast<size_t>(nvars));
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) {
        MapPoly lin;
        for (int k = 0; k < s; ++k) {
          if (g.at(i, k) == 0) continue;
          std::vector<unsigned> e(static_cast<size_t>(nvars), 0);
          e[static_cast<size_t>(k) * s + j] = 1;
          lin[std::move(e)] = g.at(i, k);
        }
        subst[static_cast<size_t>(i) * s + j] = std::move(lin);
      }
    std::vector<std::vector<Rational>> block(M, std::vector<Rational>(M, Rational(0)));
    for (size_t m = 0; m < M; ++m) {
      MapPoly image;
      image[std::vector<unsigned>(static_cast<size_t>(nvars), 0)] = Rational(1);
      for (int v = 0; v < nvars; ++v)
        for (unsigned e = 0; e < monomials[m][static_cast<size_t>(v)]; ++e)
          image = mp_mul(image, subst[static_cast<size_t>(v)]);
      for (const auto& [e, cval] : image) {
        auto it = index.find(e);
        if (it == index.end()) throw std::logic_error("substitution left the monomial space");
        block[it->second][m] += cval;
      }
      block[m][m] -= 1;
    }
    for (auto& r : block) {
      bool nz = false;
      for (const auto& v : r) nz = nz || v != 0;
      if (nz) rows.push_back(std::move(r));
    }
  }

  size_t R = rows.size();
  std::vector<int> pivot_col_of_row;
  size_t rank = 0;
  for (size_t col = 0; col < M && rank < R; ++col) {
    size_t piv = R;
    for (size_t r = rank; r < R; ++r)
      if (rows[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv == R) continue;
    std::swap(rows[rank], rows[piv]);
    Rational inv = Rational(1) / rows[rank][col];
    for (size_t cc = col; cc < M; ++cc) rows[rank][cc] *= inv;
    for (size_t r = 0; r < R; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col];
      for (size_t cc = col; cc < M; ++cc) rows[r][cc] -= f * rows[rank][cc];
    }
    pivot_col_of_row.push_back(static_cast<int>(col));
    ++rank;
  }
  std::vector<bool> is_pivot(M, false);
  for (int pc : pivot_col_of_row) is_pivot[static_cast<size_t>(pc)] = true;

  std::vector<CommPoly> basis;
  for (size_t free_col = 0; free_col < M; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rational> x(M, Rational(0));
    x[free_col] = 1;
    for (size_t r = 0; r < rank; ++r)
      x[static_cast<size_t>(pivot_col_of_row[r])] = -rows[r][free_col];
    Integer den(1);
    for (const auto& v : x) den = lcm_int(den, v.get_den());
    CommPoly poly;
    for (size_t m = 0; m < M; ++m) {
      if (x[m] == 0) continue;
      Rational t = x[m] * Rational(den);
      t.canonicalize();
      poly.add_term(monomials[m], t.get_num());
    }
    if (poly.is_zero()) continue;
    Integer content(0);
    for (const auto& [e, cv] : poly.terms()) content = gcd_int(content, cv);
    CommPoly norm;
    int lead_sign = sign_of(poly.terms().rbegin()->second);
    for (const auto& [e, cv] : poly.terms()) {
      Integer v = cv / content;
      if (lead_sign < 0) v = -v;
      norm.add_term(e, v);
    }
    basis.push_back(std::move(norm));
  }
  return basis;
}

}  // namespace momkit
