#include "momkit/winding.hpp"

#include <algorithm>

#include "momkit/algebraic.hpp"

namespace momkit {

namespace {

// f(z0 + t*delta) as P(t) + i Q(t), integer-cleared with positive factors.
struct EdgeCurve {
  IntPoly p, q;  // real and imaginary part polynomials in t
};

EdgeCurve edge_curve(const std::vector<GaussQ>& f, const GaussQ& z0, const GaussQ& delta) {
  // complex Horner over Q[i][t]
  std::vector<GaussQ> acc;  // low degree first
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    // acc = acc * (z0 + delta t) + c
    std::vector<GaussQ> next(acc.size() + 1, GaussQ());
    for (size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i] * z0;
      next[i + 1] += acc[i] * delta;
    }
    next[0] += *it;
    while (!next.empty() && next.back().is_zero()) next.pop_back();
    acc = std::move(next);
  }
  Integer den(1);
  for (const auto& z : acc) {
    den = lcm_int(den, z.re.get_den());
    den = lcm_int(den, z.im.get_den());
  }
  std::vector<Integer> pc(acc.size()), qc(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) {
    Rational r = acc[i].re * Rational(den);
    Rational m = acc[i].im * Rational(den);
    r.canonicalize();
    m.canonicalize();
    pc[i] = r.get_num();
    qc[i] = m.get_num();
  }
  return {IntPoly(std::move(pc)), IntPoly(std::move(qc))};
}

// Sign of s at the unique root of csf inside (lo, hi); s has no root there.
int sign_at_isolated_root(const IntPoly& csf, const IntPoly& s, Rational lo, Rational hi) {
  SturmChain schain(squarefree_part(s));
  while (true) {
    if (s.sign_at(lo) != 0 && s.sign_at(hi) != 0 && schain.count_open(lo, hi) == 0)
      return s.sign_at((lo + hi) / 2) != 0 ? s.sign_at((lo + hi) / 2) : s.sign_at(lo);
    Rational m = (lo + hi) / 2;
    int sm = csf.sign_at(m);
    if (sm == 0) {
      int v = s.sign_at(m);
      if (v == 0) throw EdgeRootError();
      return v;
    }
    if (csf.sign_at(lo) * sm < 0) hi = m;
    else lo = m;
  }
}

// Signed crossings of one ray over the closed rectangle boundary.
// cross/side are the perpendicular/along coordinates per edge; an event at
// cross=0 with side>0 contributes +1 when cross passes -..+ and -1 for +..-.
int ray_crossings(const std::vector<IntPoly>& cross, const std::vector<IntPoly>& side) {
  int total = 0;
  struct EdgeData {
    std::vector<QInterval> roots;  // interior crossing roots, isolated
    IntPoly csf;
    bool cross_zero = false;
  };
  std::vector<EdgeData> data(4);
  for (int e = 0; e < 4; ++e) {
    const IntPoly& c = cross[e];
    const IntPoly& s = side[e];
    if (c.is_zero()) {
      if (s.is_zero()) throw EdgeRootError();
      SturmChain sch(squarefree_part(s));
      if (s.sign_at(Rational(0)) == 0 || s.sign_at(Rational(1)) == 0 ||
          sch.count_open(Rational(0), Rational(1)) > 0)
        throw EdgeRootError();  // f vanishes somewhere on the edge
      if (s.sign_at(Rational(1, 2)) > 0) throw EdgeRootError();  // edge rides the ray
      data[e].cross_zero = true;
      continue;
    }
    // roots of f on the closed edge = common roots of cross and side
    IntPoly g = gcd(c, s);
    if (g.degree() >= 1) {
      if (g.sign_at(Rational(0)) == 0 || g.sign_at(Rational(1)) == 0) throw EdgeRootError();
      SturmChain gch(squarefree_part(g));
      if (gch.count_open(Rational(0), Rational(1)) > 0) throw EdgeRootError();
    }
    data[e].csf = squarefree_part(c);
    SturmChain cch(data[e].csf);
    for (const auto& iv : isolate_real_roots_squarefree(data[e].csf)) {
      if (iv.hi <= 0 || iv.lo >= 1) continue;
      if (iv.is_point()) {
        if (iv.lo <= 0 || iv.lo >= 1) continue;
        data[e].roots.push_back(iv);
        continue;
      }
      // a root exactly at a corner parameter belongs to the corner events
      if (data[e].csf.sign_at(Rational(0)) == 0 && iv.lo < 0 && 0 < iv.hi) continue;
      if (data[e].csf.sign_at(Rational(1)) == 0 && iv.lo < 1 && 1 < iv.hi) continue;
      // shrink the interval strictly inside (0,1) when it pokes out
      AlgebraicReal root = AlgebraicReal::from_root(data[e].csf, iv);
      while (!root.is_rational_point() &&
             !(root.lo() > 0 && root.hi() < 1) &&
             !(root.hi() <= 0 || root.lo() >= 1))
        root.refine();
      if (root.is_rational_point()) {
        Rational v = root.rational_value();
        if (v > 0 && v < 1) data[e].roots.push_back({v, v});
        continue;
      }
      if (root.hi() <= 0 || root.lo() >= 1) continue;
      data[e].roots.push_back(root.interval());
    }
    std::sort(data[e].roots.begin(), data[e].roots.end(),
              [](const QInterval& x, const QInterval& y) { return x.lo < y.lo; });
  }

  // interior events
  for (int e = 0; e < 4; ++e) {
    if (data[e].cross_zero) continue;
    const IntPoly& c = cross[e];
    for (const auto& iv : data[e].roots) {
      int before, after;
      if (iv.is_point()) {
        Rational d(1, 64);
        SturmChain cch(data[e].csf);
        while (true) {
          Rational a = iv.lo - d, b = iv.lo + d;
          if (a > 0 && b < 1 && c.sign_at(a) != 0 && c.sign_at(b) != 0 &&
              cch.count_open(a, b) == 1) {
            before = c.sign_at(a);
            after = c.sign_at(b);
            break;
          }
          d /= 3;
        }
      } else {
        before = c.sign_at(iv.lo);
        after = c.sign_at(iv.hi);
      }
      if (before == after || before == 0 || after == 0) continue;  // even multiplicity
      int sside = sign_at_isolated_root(data[e].csf, side[e], iv.lo, iv.hi);
      if (sside > 0) total += (after > 0) ? 1 : -1;
    }
  }

  // corner events: corner k joins edge (k+3)%4 at t=1 with edge k at t=0
  for (int k = 0; k < 4; ++k) {
    int in = (k + 3) % 4, out = k;
    if (data[in].cross_zero || data[out].cross_zero) continue;  // validated above
    const IntPoly& cin = cross[in];
    const IntPoly& cout = cross[out];
    if (cout.sign_at(Rational(0)) != 0) continue;  // corner off the ray line
    int sside = side[out].sign_at(Rational(0));
    if (sside == 0) throw EdgeRootError();
    if (sside < 0) continue;
    auto sign_near = [](const IntPoly& c, const IntPoly& csf, bool near_one) -> int {
      Rational d(1, 64);
      SturmChain chain(csf);
      while (true) {
        Rational a = near_one ? Rational(1) - d : d;
        if (c.sign_at(a) != 0) {
          bool clear = near_one ? chain.count_open(a, Rational(1)) == 0
                                : chain.count_open(Rational(0), a) == 0;
          if (csf.sign_at(a) != 0 && clear) return c.sign_at(a);
        }
        d /= 3;
      }
    };
    int before = sign_near(cin, data[in].csf, true);
    int after = sign_near(cout, data[out].csf, false);
    if (before == after || before == 0 || after == 0) continue;
    total += (after > 0) ? 1 : -1;
  }
  return total;
}

}  // namespace

int winding_number(const std::vector<GaussQ>& f, const QInterval& re, const QInterval& im) {
  bool all_zero = true;
  for (const auto& c : f) all_zero = all_zero && c.is_zero();
  if (all_zero) throw std::domain_error("winding number of zero polynomial");
  if (!(re.lo < re.hi) || !(im.lo < im.hi))
    throw std::invalid_argument("winding rectangle must have positive area");
  GaussQ bl(re.lo, im.lo), br(re.hi, im.lo), tr(re.hi, im.hi), tl(re.lo, im.hi);
  struct Seg { GaussQ z0, dz; };
  Seg segs[4] = {{bl, br - bl}, {br, tr - br}, {tr, tl - tr}, {tl, bl - tl}};
  std::vector<IntPoly> p(4), q(4);
  for (int e = 0; e < 4; ++e) {
    EdgeCurve ec = edge_curve(f, segs[e].z0, segs[e].dz);
    p[e] = ec.p;
    q[e] = ec.q;
  }
  for (int ray = 0; ray < 4; ++ray) {
    std::vector<IntPoly> cross(4), side(4);
    for (int e = 0; e < 4; ++e) {
      switch (ray) {
        case 0: cross[e] = q[e]; side[e] = p[e]; break;    // +x
        case 1: cross[e] = -q[e]; side[e] = -p[e]; break;  // -x
        case 2: cross[e] = -p[e]; side[e] = q[e]; break;   // +y
        case 3: cross[e] = p[e]; side[e] = -q[e]; break;   // -y
      }
    }
    try {
      return ray_crossings(cross, side);
    } catch (const EdgeRootError&) {
      if (ray == 3) throw;
    }
  }
  throw EdgeRootError();
}

int winding_number(const IntPoly& f, const QInterval& re, const QInterval& im) {
  if (f.is_zero()) throw std::domain_error("winding number of zero polynomial");
  std::vector<GaussQ> g;
  g.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) g.emplace_back(Rational(c));
  return winding_number(g, re, im);
}

namespace {

int winding_robust(const IntPoly& f, BoxC box, const Rational& max_inflate) {
  Rational w = box.width();
  for (int k = 0; k < 12; ++k) {
    try {
      return winding_number(f, box.re, box.im);
    } catch (const EdgeRootError&) {
      Rational bump = w * Rational(k + 1, 113);
      if (bump > max_inflate) bump = max_inflate;
      box.re.lo -= bump;
      box.re.hi += bump;
      box.im.lo -= bump;
      box.im.hi += bump;
    }
  }
  throw EdgeRootError();
}

}  // namespace

std::vector<BoxC> isolate_complex_upper(const IntPoly& f_in) {
  IntPoly f = f_in.canonical();
  if (f.is_zero() || f.degree() == 0) return {};
  int d = f.degree();
  SturmChain chain(f);
  int real_roots = chain.count_all();
  int m = (d - real_roots) / 2;
  if (m == 0) return {};

  // Imaginary parts of non-real roots are bounded below via the Mahler root
  // separation bound sep(f) > sqrt(3 |disc|) / (d^{(d+2)/2} ||f||_2^{d-1}),
  // using |disc| >= |res(f, f')|/|lc| >= 1/|lc| for squarefree integer input.
  Integer res = resultant(f, f.derivative());
  if (res == 0) throw std::invalid_argument("isolate_complex_upper requires squarefree input");
  Rational a3 = Rational(3) / abs(Rational(f.leading()));
  Rational la, ua;
  for (unsigned prec = 24; ; prec *= 2) {
    sqrt_bounds(a3, prec, la, ua);
    if (la > 0) break;
  }
  Rational norm2(0);
  for (const auto& c : f.coeffs()) norm2 += Rational(c) * Rational(c);
  Rational nlo, nhi;
  sqrt_bounds(norm2, 24, nlo, nhi);
  Integer dpow;
  mpz_ui_pow_ui(dpow.get_mpz_t(), static_cast<unsigned long>(d),
                static_cast<unsigned long>(d + 2));
  Rational dlo, dhi;
  sqrt_bounds(Rational(dpow), 24, dlo, dhi);
  Rational denom = dhi;
  for (int i = 0; i < d - 1; ++i) denom *= nhi;
  Rational delta = (la / denom) / 4;

  Rational bound = cauchy_root_bound(f) + 1;
  struct Node {
    BoxC box;
    int count;
  };
  std::vector<Node> work;
  std::vector<BoxC> out;
  BoxC initial{{-bound, bound}, {delta, bound}};
  int w0 = winding_number(f, initial.re, initial.im);
  if (w0 != m) throw std::logic_error("complex isolation: initial count mismatch");
  work.push_back({initial, w0});
  while (!work.empty()) {
    Node nd = work.back();
    work.pop_back();
    if (nd.count == 0) continue;
    if (nd.count == 1) {
      out.push_back(nd.box);
      continue;
    }
    bool horizontal = (nd.box.re.hi - nd.box.re.lo) >= (nd.box.im.hi - nd.box.im.lo);
    const QInterval& axis = horizontal ? nd.box.re : nd.box.im;
    Rational width = axis.hi - axis.lo;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 40) throw std::logic_error("complex isolation: splitting failed");
      Rational frac = Rational(1, 2) + Rational((attempt % 2 ? 1 : -1) * ((attempt + 1) / 2), 101);
      Rational cut = axis.lo + width * frac;
      BoxC left = nd.box, right = nd.box;
      if (horizontal) {
        left.re.hi = cut;
        right.re.lo = cut;
      } else {
        left.im.hi = cut;
        right.im.lo = cut;
      }
      try {
        int wl = winding_number(f, left.re, left.im);
        int wr = winding_number(f, right.re, right.im);
        if (wl + wr != nd.count) throw std::logic_error("complex isolation: count leak");
        work.push_back({left, wl});
        work.push_back({right, wr});
        break;
      } catch (const EdgeRootError&) {
        continue;
      }
    }
  }
  if (static_cast<int>(out.size()) != m)
    throw std::logic_error("complex isolation: box count mismatch");
  return out;
}

void refine_box(const IntPoly& f, BoxC& box, const Rational& w) {
  while (box.width() > w) {
    bool horizontal = (box.re.hi - box.re.lo) >= (box.im.hi - box.im.lo);
    const QInterval& axis = horizontal ? box.re : box.im;
    Rational width = axis.hi - axis.lo;
    bool done = false;
    for (int attempt = 0; attempt <= 40 && !done; ++attempt) {
      Rational frac = Rational(1, 2) + Rational((attempt % 2 ? 1 : -1) * ((attempt + 1) / 2), 101);
      Rational cut = axis.lo + width * frac;
      BoxC left = box, right = box;
      if (horizontal) {
        left.re.hi = cut;
        right.re.lo = cut;
      } else {
        left.im.hi = cut;
        right.im.lo = cut;
      }
      try {
        int wl = winding_number(f, left.re, left.im);
        box = (wl == 1) ? left : right;
        done = true;
      } catch (const EdgeRootError&) {
        continue;
      }
    }
    if (!done) throw std::logic_error("refine_box: splitting failed");
  }
}

bool boxed_value_is_zero(const IntPoly& candidates, BoxC box,
                         const std::function<BoxC()>& refine) {
  IntPoly d = squarefree_part(candidates).canonical();
  bool zero_is_root = (d.coeff(0) == 0);
  while (true) {
    if (!box.contains_zero()) return false;
    if (box.re.lo == box.re.hi && box.im.lo == box.im.hi)
      return box.re.lo == 0 && box.im.lo == 0;  // exact point pins the value
    if (zero_is_root && box.strictly_contains_zero()) {
      try {
        if (winding_robust(d, box, box.width() / 4) == 1) return true;
      } catch (const EdgeRootError&) {
        // shrink further and retry
      }
    }
    box = refine();
  }
}

bool boxed_roots_equal(const IntPoly& f_squarefree, BoxC a, BoxC b,
                       const std::function<void()>& refine_a,
                       const std::function<void()>& refine_b,
                       const std::function<BoxC()>& get_a, const std::function<BoxC()>& get_b) {
  while (true) {
    bool overlap_re = !(a.re.hi < b.re.lo || b.re.hi < a.re.lo);
    bool overlap_im = !(a.im.hi < b.im.lo || b.im.hi < a.im.lo);
    if (!overlap_re || !overlap_im) return false;
    BoxC hull{{std::min(a.re.lo, b.re.lo), std::max(a.re.hi, b.re.hi)},
              {std::min(a.im.lo, b.im.lo), std::max(a.im.hi, b.im.hi)}};
    try {
      if (winding_number(f_squarefree, hull.re, hull.im) == 1) return true;
    } catch (const EdgeRootError&) {
      // refine and retry
    }
    refine_a();
    refine_b();
    a = get_a();
    b = get_b();
  }
}

}  // namespace momkit
