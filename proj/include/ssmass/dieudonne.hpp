#pragma once

// Brute-force Dieudonne module computations over W(F_{p^(2m)}) / p^prec,
// used as an independent oracle for the classification invariants.
//
// The ambient module is N = R^4 with F e1 = e2, F e2 = -p e1, F e3 = e4,
// F e4 = -p e3 and V = p F^{-1}; F is sigma-semilinear, V is
// sigma^{-1}-semilinear. The lattice attached to xi = [a : b] is
// M = < p e1, p e3, e2, e4, a' e1 + b' e3 > with a', b' canonical lifts.
//
// Lengths of subquotients are computed by Smith-style reduction over the
// local ring R; the a-number and the endomorphism membership tests reduce
// to length comparisons. Precision 2 suffices for both (the criteria only
// need p^2 N inside the compared modules); higher precision must agree.

#include <array>
#include <random>
#include <string>
#include <vector>

#include "ssmass/padic.hpp"
#include "ssmass/xi.hpp"

namespace ssmass {

struct WTowerCtx {
  uint64_t p = 0;
  unsigned m = 1;
  unsigned prec = 0;
  uint64_t ps = 0;  // p^prec
  UnramCtx pair;    // x-part ring (Z/p^prec)[x]/(f)
  FieldCtx K;       // residue field tower
  std::vector<std::array<uint64_t, 2>> G;  // lift of the y-modulus
  // Frobenius lift as a (2m x 2m)-matrix on coefficient vectors, plus its
  // inverse (sigma has order dividing 2m).
  std::vector<std::vector<uint64_t>> sig, sig_inv;

  friend bool operator==(const WTowerCtx& a, const WTowerCtx& b) {
    return a.p == b.p && a.m == b.m && a.prec == b.prec;
  }
};

struct WElem {
  const WTowerCtx* R = nullptr;
  std::vector<UnramElem> c;  // y-coefficients, size m

  WElem() = default;
  explicit WElem(const WTowerCtx* ctx) : R(ctx), c(ctx->m, UnramElem::zero(&ctx->pair)) {}

  static WElem zero(const WTowerCtx* R) { return WElem(R); }
  static WElem one(const WTowerCtx* R) {
    WElem e(R);
    e.c[0] = UnramElem::one(&R->pair);
    return e;
  }
  static WElem scalar(const WTowerCtx* R, int64_t v) {
    WElem e(R);
    e.c[0] = UnramElem::scalar(&R->pair, v);
    return e;
  }
  // Canonical lift: every digit in [0, p).
  static WElem lift(const WTowerCtx* R, const FFElem& v) {
    detail::check(R->K == *v.K, "WElem::lift: residue mismatch");
    WElem e(R);
    for (unsigned j = 0; j < R->m; ++j) {
      Fp2 cj = v.ycoeff(j);
      e.c[j] = UnramElem(&R->pair, cj.c0, cj.c1);
    }
    return e;
  }
  static WElem lift_fp2(const WTowerCtx* R, const Fp2& v) {
    detail::check(R->K.base == *v.k, "WElem::lift_fp2: residue mismatch");
    WElem e(R);
    e.c[0] = UnramElem(&R->pair, v.c0, v.c1);
    return e;
  }

  bool is_zero() const {
    for (const auto& v : c)
      if (!v.is_zero()) return false;
    return true;
  }

  friend bool operator==(const WElem& a, const WElem& b) {
    detail::check(*a.R == *b.R, "WElem: mixed contexts");
    return a.c == b.c;
  }

  friend WElem operator+(const WElem& a, const WElem& b) {
    detail::check(*a.R == *b.R, "WElem: mixed contexts");
    WElem r(a.R);
    for (unsigned j = 0; j < a.R->m; ++j) r.c[j] = a.c[j] + b.c[j];
    return r;
  }
  friend WElem operator-(const WElem& a, const WElem& b) {
    detail::check(*a.R == *b.R, "WElem: mixed contexts");
    WElem r(a.R);
    for (unsigned j = 0; j < a.R->m; ++j) r.c[j] = a.c[j] - b.c[j];
    return r;
  }
  WElem operator-() const {
    WElem r(R);
    for (unsigned j = 0; j < R->m; ++j) r.c[j] = -c[j];
    return r;
  }

  friend WElem operator*(const WElem& a, const WElem& b) {
    detail::check(*a.R == *b.R, "WElem: mixed contexts");
    const WTowerCtx* R = a.R;
    unsigned m = R->m;
    std::vector<UnramElem> conv(2 * m - 1, UnramElem::zero(&R->pair));
    for (unsigned i = 0; i < m; ++i)
      for (unsigned j = 0; j < m; ++j) conv[i + j] = conv[i + j] + a.c[i] * b.c[j];
    for (unsigned t = 2 * m - 2; t >= m && t < 2 * m; --t) {
      UnramElem lead = conv[t];
      if (lead.is_zero()) continue;
      conv[t] = UnramElem::zero(&R->pair);
      for (unsigned j = 0; j < m; ++j) {
        UnramElem gj(&R->pair, R->G[j][0], R->G[j][1]);
        conv[t - m + j] = conv[t - m + j] - lead * gj;
      }
    }
    WElem r(R);
    for (unsigned j = 0; j < m; ++j) r.c[j] = conv[j];
    return r;
  }

  FFElem reduce() const {
    FFElem e(&R->K);
    for (unsigned j = 0; j < R->m; ++j) {
      e.c[2 * j] = c[j].a0 % R->p;
      e.c[2 * j + 1] = c[j].a1 % R->p;
    }
    return e;
  }

  unsigned vp() const {
    unsigned v = R->prec;
    for (const auto& x : c) {
      unsigned xv = x.vp();
      if (xv < v) v = xv;
    }
    return v;
  }

  WElem div_p() const {
    WElem r(R);
    for (unsigned j = 0; j < R->m; ++j) r.c[j] = c[j].div_p();
    return r;
  }

  bool is_unit() const { return !reduce().is_zero(); }

  WElem inv() const {
    if (!is_unit()) throw std::domain_error("WElem: inverse of non-unit");
    WElem z = lift(R, reduce().inv());
    unsigned iters = 1;
    for (unsigned t = R->prec; t > 1; t = (t + 1) / 2) ++iters;
    WElem two = scalar(R, 2);
    for (unsigned i = 0; i < iters; ++i) z = z * (two - *this * z);
    detail::check((*this * z) == one(R), "WElem: Newton inversion failed");
    return z;
  }

  std::vector<uint64_t> flatten() const {
    std::vector<uint64_t> out(2 * R->m);
    for (unsigned j = 0; j < R->m; ++j) {
      out[2 * j] = c[j].a0;
      out[2 * j + 1] = c[j].a1;
    }
    return out;
  }
  static WElem unflatten(const WTowerCtx* R, const std::vector<uint64_t>& v) {
    WElem e(R);
    for (unsigned j = 0; j < R->m; ++j) e.c[j] = UnramElem(&R->pair, v[2 * j], v[2 * j + 1]);
    return e;
  }

  WElem apply_matrix(const std::vector<std::vector<uint64_t>>& mat) const {
    std::vector<uint64_t> in = flatten(), out(in.size(), 0);
    for (size_t r = 0; r < out.size(); ++r) {
      uint64_t acc = 0;
      for (size_t col = 0; col < in.size(); ++col)
        acc = detail::addmod(acc, detail::mulmod(mat[r][col], in[col], R->ps), R->ps);
      out[r] = acc;
    }
    return unflatten(R, out);
  }

  WElem frob() const { return apply_matrix(R->sig); }
  WElem frob_inv() const { return apply_matrix(R->sig_inv); }
};

inline WTowerCtx make_wtower(const FieldCtx& K, unsigned prec) {
  if (prec < 1) throw std::invalid_argument("make_wtower: prec must be >= 1");
  WTowerCtx R;
  R.p = K.p;
  R.m = K.m;
  R.prec = prec;
  R.pair = make_unram(K.p, prec);
  detail::check(R.pair.residue == K.base, "make_wtower: residue model mismatch");
  R.ps = R.pair.pm;
  R.K = K;
  R.G = K.glow;  // digits already in [0, p)

  unsigned m = K.m;
  const UnramCtx* P = &R.pair;

  // sigma(y): Newton root of G^sigma starting from the lift of ybar^p.
  std::vector<UnramElem> gs(m);  // sigma of the lifted y-modulus coefficients
  for (unsigned j = 0; j < m; ++j) gs[j] = UnramElem(P, R.G[j][0], R.G[j][1]).frob();

  FFElem ybar = m >= 2 ? FFElem::gen_y(&R.K) : -FFElem::embed_fp2(&R.K, Fp2(&R.K.base, K.glow[0][0], K.glow[0][1]));
  WElem t = WElem::lift(&R, ybar.pow(K.p));

  auto eval_gs = [&](const WElem& z) {  // G^sigma(z), monic of degree m
    WElem acc = WElem::one(&R);
    for (unsigned j = m; j-- > 0;) {
      WElem gj(&R);
      gj.c[0] = gs[j];
      acc = acc * z + gj;
    }
    return acc;
  };
  auto eval_gs_deriv = [&](const WElem& z) {
    WElem acc = WElem::scalar(&R, static_cast<int64_t>(m));
    for (unsigned j = m; j-- > 1;) {
      WElem gj(&R);
      gj.c[0] = gs[j];
      acc = acc * z + WElem::scalar(&R, static_cast<int64_t>(j)) * gj;
    }
    return acc;
  };

  unsigned iters = 1;
  for (unsigned s = prec; s > 1; s = (s + 1) / 2) ++iters;
  for (unsigned i = 0; i < iters; ++i) t = t - eval_gs(t) * eval_gs_deriv(t).inv();
  detail::check(eval_gs(t).is_zero(), "make_wtower: sigma(y) is not a root");
  detail::check(t.reduce() == ybar.pow(K.p), "make_wtower: sigma(y) has wrong residue");

  // Assemble sigma as a matrix on the monomial basis x^i y^j.
  WElem sx(&R);
  sx.c[0] = UnramElem(P, P->sx0, P->sx1);
  std::vector<std::vector<uint64_t>> mat(2 * m, std::vector<uint64_t>(2 * m, 0));
  WElem tpow = WElem::one(&R);
  for (unsigned j = 0; j < m; ++j) {
    WElem col0 = tpow;        // sigma(y^j)
    WElem col1 = sx * tpow;   // sigma(x y^j)
    auto f0 = col0.flatten(), f1 = col1.flatten();
    for (unsigned r = 0; r < 2 * m; ++r) {
      mat[r][2 * j] = f0[r];
      mat[r][2 * j + 1] = f1[r];
    }
    tpow = tpow * t;
  }
  R.sig = mat;

  // sigma^(2m) = id; the inverse is sigma^(2m - 1).
  auto matmul = [&](const std::vector<std::vector<uint64_t>>& A, const std::vector<std::vector<uint64_t>>& B) {
    std::vector<std::vector<uint64_t>> C(2 * m, std::vector<uint64_t>(2 * m, 0));
    for (unsigned i = 0; i < 2 * m; ++i)
      for (unsigned kx = 0; kx < 2 * m; ++kx) {
        if (A[i][kx] == 0) continue;
        for (unsigned j = 0; j < 2 * m; ++j)
          C[i][j] = detail::addmod(C[i][j], detail::mulmod(A[i][kx], B[kx][j], R.ps), R.ps);
      }
    return C;
  };
  std::vector<std::vector<uint64_t>> acc(2 * m, std::vector<uint64_t>(2 * m, 0));
  for (unsigned i = 0; i < 2 * m; ++i) acc[i][i] = 1 % R.ps;
  for (unsigned i = 0; i < 2 * m - 1; ++i) acc = matmul(acc, mat);
  R.sig_inv = acc;
  auto full = matmul(acc, mat);
  for (unsigned i = 0; i < 2 * m; ++i)
    for (unsigned j = 0; j < 2 * m; ++j)
      detail::check(full[i][j] == (i == j ? 1 % R.ps : 0), "make_wtower: sigma order is not 2m");

  return R;
}

// ---------------------------------------------------------------------------
// The rank-4 module N, the operators F and V, and the lattice of xi.

using WVec = std::array<WElem, 4>;

inline WVec apply_F(const WVec& v) {
  const WTowerCtx* R = v[0].R;
  WElem pe = WElem::scalar(R, static_cast<int64_t>(R->p));
  return {-(pe * v[1].frob()), v[0].frob(), -(pe * v[3].frob()), v[2].frob()};
}

inline WVec apply_V(const WVec& v) {
  const WTowerCtx* R = v[0].R;
  WElem pe = WElem::scalar(R, static_cast<int64_t>(R->p));
  return {pe * v[1].frob_inv(), -v[0].frob_inv(), pe * v[3].frob_inv(), -v[2].frob_inv()};
}

inline std::vector<WVec> dieu_lattice_gens(const WTowerCtx& R, const XiPoint& xi) {
  detail::check(R.K == *xi.a.K, "dieu_lattice_gens: field mismatch");
  WElem z = WElem::zero(&R), pe = WElem::scalar(&R, static_cast<int64_t>(R.p));
  std::vector<WVec> gens;
  gens.push_back({pe, z, z, z});                           // p e1
  gens.push_back({z, z, pe, z});                           // p e3
  gens.push_back({z, WElem::one(&R), z, z});               // e2
  gens.push_back({z, z, z, WElem::one(&R)});               // e4
  gens.push_back({WElem::lift(&R, xi.a), z, WElem::lift(&R, xi.b), z});  // a' e1 + b' e3
  return gens;
}

// Length of the column span of gens inside (R/p^prec)^4, by Smith-style
// reduction: repeatedly pick a minimal-valuation entry p^v u, clear its row
// and column (exact divisions), and add prec - v.
inline unsigned span_length(const WTowerCtx& R, std::vector<WVec> gens) {
  unsigned len = 0;
  std::vector<bool> row_done(4, false);
  std::vector<bool> col_done(gens.size(), false);
  for (;;) {
    unsigned best_v = R.prec;
    int bi = -1, bj = -1;
    for (unsigned j = 0; j < gens.size(); ++j) {
      if (col_done[j]) continue;
      for (unsigned i = 0; i < 4; ++i) {
        if (row_done[i]) continue;
        unsigned v = gens[j][i].vp();
        if (v < best_v) {
          best_v = v;
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
        }
      }
    }
    if (bi < 0) return len;
    len += R.prec - best_v;

    WElem piv = gens[bj][bi];
    for (unsigned s = 0; s < best_v; ++s) piv = piv.div_p();
    WElem piv_unit_inv = piv.inv();

    // Column ops: clear row bi in the other columns.
    for (unsigned j = 0; j < gens.size(); ++j) {
      if (col_done[j] || static_cast<int>(j) == bj) continue;
      WElem entry = gens[j][bi];
      if (entry.is_zero()) continue;
      WElem f = entry;
      for (unsigned s = 0; s < best_v; ++s) f = f.div_p();
      f = f * piv_unit_inv;
      for (unsigned i = 0; i < 4; ++i) gens[j][i] = gens[j][i] - f * gens[bj][i];
    }
    // Row ops: clear column bj in the other rows.
    for (unsigned i = 0; i < 4; ++i) {
      if (row_done[i] || static_cast<int>(i) == bi) continue;
      WElem entry = gens[bj][i];
      if (entry.is_zero()) continue;
      WElem f = entry;
      for (unsigned s = 0; s < best_v; ++s) f = f.div_p();
      f = f * piv_unit_inv;
      for (unsigned j = 0; j < gens.size(); ++j) {
        if (col_done[j]) continue;
        gens[j][i] = gens[j][i] - f * gens[j][bi];
      }
    }
    row_done[bi] = true;
    col_done[bj] = true;
  }
}

inline bool span_contains(const WTowerCtx& R, const std::vector<WVec>& gens, const WVec& x,
                          unsigned base_len) {
  std::vector<WVec> ext = gens;
  ext.push_back(x);
  return span_length(R, ext) == base_len;
}

// a(M) = dim_k M / (F M + V M), computed as a length difference mod p^prec.
// Needs prec >= 2 so that p^prec N sits inside F M + V M.
inline unsigned a_number(const WTowerCtx& R, const XiPoint& xi) {
  detail::check(R.prec >= 2, "a_number: need precision >= 2");
  std::vector<WVec> gens = dieu_lattice_gens(R, xi);
  std::vector<WVec> fv;
  for (const auto& g : gens) {
    fv.push_back(apply_F(g));
    fv.push_back(apply_V(g));
  }
  unsigned lm = span_length(R, gens);
  unsigned lfv = span_length(R, fv);
  detail::check(lfv <= lm, "a_number: F M + V M escapes M");
  return lm - lfv;
}

// ---------------------------------------------------------------------------
// Endomorphism criterion oracle: T mod Pi^2 preserves the lattice of xi
// iff its reduction lies in the residue algebra B0'. Verified sample by
// sample; disagreements are returned as witnesses.

struct EndoWitness {
  std::string tbar;
  bool lattice_ok = false, algebra_ok = false;
};

struct EndoAgreementReport {
  uint64_t p = 0;
  unsigned degree = 1;
  std::string xi_case;
  unsigned checked = 0, agreed = 0;
  std::vector<EndoWitness> mismatches;
};

// Action of T = (abar_ij + bbar_ij Pi) on N: the (I, J) block of the 4x4
// matrix is (a, -p sigma(b); b, sigma(a)) with a, b the canonical
// (sigma^2-fixed) lifts of the F_{p^2} entries. This is the commutant-of-F
// form: each block satisfies s12 = -p sigma(s21), s22 = sigma(s11), which is
// exactly what commuting with (F e1 = e2, F e2 = -p e1) forces. Composition
// reverses order, as it must for endomorphisms acting opposite the module
// structure; single-endomorphism questions are unaffected.
inline std::vector<std::vector<WElem>> endo_action_matrix(const WTowerCtx& R, const FMat& abar,
                                                          const FMat& bbar) {
  detail::check(R.K.base == *abar.k && R.K.base == *bbar.k, "endo_action_matrix: base mismatch");
  WElem pe = WElem::scalar(&R, static_cast<int64_t>(R.p));
  std::vector<std::vector<WElem>> S(4, std::vector<WElem>(4, WElem::zero(&R)));
  for (unsigned I = 0; I < 2; ++I)
    for (unsigned J = 0; J < 2; ++J) {
      WElem a = WElem::lift_fp2(&R, abar.at(I, J));
      WElem b = WElem::lift_fp2(&R, bbar.at(I, J));
      S[2 * I][2 * J] = a;
      S[2 * I][2 * J + 1] = -(pe * b.frob());
      S[2 * I + 1][2 * J] = b;
      S[2 * I + 1][2 * J + 1] = a.frob();
    }
  return S;
}

inline bool endo_preserves_lattice(const WTowerCtx& R, const XiPoint& xi, const FMat& abar,
                                   const FMat& bbar) {
  auto S = endo_action_matrix(R, abar, bbar);
  std::vector<WVec> gens = dieu_lattice_gens(R, xi);
  unsigned base_len = span_length(R, gens);
  for (const auto& g : gens) {
    WVec img{WElem::zero(&R), WElem::zero(&R), WElem::zero(&R), WElem::zero(&R)};
    for (unsigned r = 0; r < 4; ++r)
      for (unsigned cidx = 0; cidx < 4; ++cidx) img[r] = img[r] + S[r][cidx] * g[cidx];
    if (!span_contains(R, gens, img, base_len)) return false;
  }
  return true;
}

inline EndoAgreementReport endo_agreement_report(const WTowerCtx& R, const XiPoint& xi,
                                                 unsigned samples, std::mt19937_64& rng) {
  XiClass xc = classify(xi);
  EndoOrderDesc desc = residue_algebra(xc);
  const Fp2Ctx* k = &R.K.base;
  uint64_t q = R.p * R.p;

  EndoAgreementReport rep;
  rep.p = R.p;
  rep.degree = xc.degree;
  rep.xi_case = xicase_name(xc.tag);

  std::vector<FMat> basis = desc.basis(k);
  for (unsigned s = 0; s < samples; ++s) {
    FMat abar(k, 2, 2);
    if (s % 2 == 0) {
      for (auto& v : abar.a) v = Fp2::from_index(k, rng() % q);
    } else {  // force a member of B0' so both outcomes are exercised
      for (const auto& bm : basis) {
        Fp2 t = Fp2::from_index(k, rng() % q);
        abar = abar + t * bm;
      }
    }
    FMat bbar(k, 2, 2);
    for (auto& v : bbar.a) v = Fp2::from_index(k, rng() % q);

    bool lat = endo_preserves_lattice(R, xi, abar, bbar);
    bool alg = desc.contains(abar);
    ++rep.checked;
    if (lat == alg) {
      ++rep.agreed;
    } else {
      EndoWitness w;
      w.tbar = "a=" + detail::fmat_witness(abar) + " b=" + detail::fmat_witness(bbar);
      w.lattice_ok = lat;
      w.algebra_ok = alg;
      rep.mismatches.push_back(std::move(w));
    }
  }
  return rep;
}

}  // namespace ssmass
