#pragma once

// Lifting phi in SL_2(F_{p^2}) to a matrix T over the truncated quaternion
// order with (T*)^(1) w T = w mod Pi^N, by defect correction one Pi-digit at
// a time.
//
// Invariants maintained per step n (checked, not assumed):
//   - the defect X - w is divisible by Pi^(n+1) (exact Pi divisions verify),
//   - X* = -X^(1) for X = (T*)^(1) w T, which forces the parity symmetry of
//     the digit C_n: C^t = C^(1) for even n and C^t = -C for odd n.
//
// Odd steps in characteristic 2 can hit a genuine obstruction: the digit
// equation C + Y - Y^t = 0 needs a zero diagonal, and no choice of Y can fix
// a non-zero one. When that happens the previous digit's lift is perturbed
// through a deterministic sweep of Pi-part corrections; if every candidate
// still leaves a non-zero diagonal the lift aborts and reports the witness.

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ssmass/matrix.hpp"
#include "ssmass/quaternion.hpp"

namespace ssmass {

// Raised when C + Y - Y^t = 0 is unsolvable (char 2, non-zero diagonal).
struct ObstructionError : std::runtime_error {
  unsigned row;
  explicit ObstructionError(unsigned r)
      : std::runtime_error("digit equation obstructed on the diagonal"), row(r) {}
};

// Parity symmetry forced on the n-th defect digit.
inline bool defect_parity_ok(const FMat& C, unsigned n) {
  detail::check(C.rows == C.cols, "defect_parity_ok: need a square matrix");
  return (n & 1) ? (C.transpose() == -C) : (C.transpose() == C.frob());
}

// Solve C + Y + (Y^t)^(1) = 0 given C^t = C^(1). Upper triangular solution;
// diagonal entries solve the trace equation y + sigma(y) = -c.
inline FMat solve_twisted_symmetric(const FMat& C) {
  detail::check(C.rows == C.cols, "solve_twisted_symmetric: need a square matrix");
  if (!(C.transpose() == C.frob()))
    throw std::invalid_argument("solve_twisted_symmetric: C^t != C^(1)");
  const Fp2Ctx* k = C.k;
  FMat Y(k, C.rows, C.cols);
  for (unsigned i = 0; i < C.rows; ++i)
    for (unsigned j = i + 1; j < C.cols; ++j) Y.at(i, j) = -C.at(i, j);
  for (unsigned i = 0; i < C.rows; ++i) {
    detail::check(C.at(i, i).is_scalar(), "solve_twisted_symmetric: diagonal escapes F_p");
    Y.at(i, i) = trace_solve(k, -C.at(i, i));
  }
  detail::check((C + Y + Y.transpose().frob()).is_zero(), "solve_twisted_symmetric: residual");
  return Y;
}

// Solve C + Y - Y^t = 0 given C^t = -C. In odd characteristic the diagonal
// of C vanishes automatically; in characteristic 2 a non-zero diagonal entry
// is a hard obstruction since Y - Y^t always has zero diagonal.
inline FMat solve_alternating(const FMat& C) {
  detail::check(C.rows == C.cols, "solve_alternating: need a square matrix");
  if (!(C.transpose() == -C)) throw std::invalid_argument("solve_alternating: C^t != -C");
  for (unsigned i = 0; i < C.rows; ++i)
    if (!C.at(i, i).is_zero()) throw ObstructionError(i);
  FMat Y(C.k, C.rows, C.cols);
  for (unsigned i = 0; i < C.rows; ++i)
    for (unsigned j = i + 1; j < C.cols; ++j) Y.at(i, j) = -C.at(i, j);
  detail::check((C + Y - Y.transpose()).is_zero(), "solve_alternating: residual");
  return Y;
}

struct LiftObstruction {
  unsigned step = 0;       // Pi-digit at which the obstruction appeared
  std::string witness;     // offending digit C_n
  bool resolved = false;   // true if a perturbation of the previous digit fixed it
  unsigned retries = 0;    // perturbation candidates tried
};

struct LiftResult {
  bool ok = false;
  std::shared_ptr<const QuatCtx> ctx;  // owns the context T points into
  QuatMat T;
  unsigned pi_prec = 0;
  unsigned defect_valuation = 0;
  unsigned steps = 0;
  std::vector<LiftObstruction> obstructions;
};

namespace detail {

// Digit n of the defect: divide every entry by Pi exactly (n+1) times and
// reduce mod Pi. The exact divisions double as the valuation check.
inline FMat defect_digit(const QuatMat& D, unsigned n) {
  FMat C(&D.C->w.residue, D.rows, D.cols);
  for (unsigned i = 0; i < D.rows; ++i)
    for (unsigned j = 0; j < D.cols; ++j) {
      QuatElem t = D.at(i, j);
      for (unsigned s = 0; s <= n; ++s) t = t.div_pi();
      C.at(i, j) = t.reduce_mod_pi();
    }
  return C;
}

}  // namespace detail

inline LiftResult lift_sl2(const FMat& phibar, unsigned N) {
  detail::check(phibar.rows == 2 && phibar.cols == 2, "lift_sl2: need a 2x2 matrix");
  if (!(phibar.det2() == Fp2::one(phibar.k)))
    throw std::invalid_argument("lift_sl2: determinant must be 1");
  if (N < 1) throw std::invalid_argument("lift_sl2: precision must be >= 1");

  uint64_t p = phibar.k->p;
  // One spare Pi-digit so the final defect valuation is measured at N, not
  // drowned by truncation.
  auto work = std::make_shared<QuatCtx>(make_quat(p, N + 1));
  const QuatCtx* W = work.get();
  const Fp2Ctx* k = &W->w.residue;

  FMat phik(k, 2, 2);  // phibar re-based onto the working residue context
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j) phik.at(i, j) = Fp2(k, phibar.at(i, j).c0, phibar.at(i, j).c1);

  FMat wbar_inv = FMat::wmat(k).inv2();
  FMat phit_inv = phik.transpose().inv2();

  LiftResult res;
  res.pi_prec = N;
  QuatMat T = QuatMat::lift(W, phik);
  uint64_t q = p * p;

  auto defect_of = [&](const QuatMat& M) {
    QuatMat X = M.star().twist(1) * QuatMat::wmat(W) * M;
    detail::check(X.star() == -X.twist(1), "lift_sl2: X* != -X^(1)");
    return X - QuatMat::wmat(W);
  };

  for (unsigned n = 0; n + 1 < N; ++n) {
    ++res.steps;
    FMat C = detail::defect_digit(defect_of(T), n);
    detail::check(defect_parity_ok(C, n), "lift_sl2: digit parity violated");
    if (C.is_zero()) continue;

    FMat Y;
    if (n % 2 == 0) {
      Y = solve_twisted_symmetric(C);
    } else {
      try {
        Y = solve_alternating(C);
      } catch (const ObstructionError&) {
        // Perturb the previous digit: replace B_{n-1} by B_{n-1} + E Pi and
        // sweep E over all of M_2(F_{p^2}) deterministically.
        LiftObstruction ob;
        ob.step = n;
        ob.witness = detail::fmat_witness(C);
        bool fixed = false;
        for (uint64_t code = 1; code < q * q * q * q && !fixed; ++code) {
          ++ob.retries;
          uint64_t rest = code;
          FMat E(k, 2, 2);
          for (unsigned t = 0; t < 4; ++t) {
            E.a[t] = Fp2::from_index(k, rest % q);
            rest /= q;
          }
          QuatMat T2 = T + QuatMat::lift_pi(W, E).mul_pi_right(n);
          FMat C2 = detail::defect_digit(defect_of(T2), n);
          if (!defect_parity_ok(C2, n)) continue;
          bool diag_ok = true;
          for (unsigned i = 0; i < 2; ++i)
            if (!C2.at(i, i).is_zero()) diag_ok = false;
          if (!diag_ok) continue;
          T = T2;
          C = C2;
          Y = solve_alternating(C);
          ob.resolved = true;
          fixed = true;
        }
        res.obstructions.push_back(ob);
        if (!fixed) {
          res.ok = false;
          res.ctx = work;
          res.T = T;
          res.defect_valuation = n + 1;
          return res;
        }
        if (C.is_zero()) continue;
      }
    }

    FMat B = wbar_inv * (phit_inv * Y);
    detail::check(phik.transpose() * FMat::wmat(k) * B == Y, "lift_sl2: digit equation unsolved");
    T = T + QuatMat::lift(W, B).mul_pi_right(n + 1);
  }

  // Final defect valuation, measured with the spare digit in hand.
  unsigned dv = defect_of(T).min_valuation();
  detail::check(dv >= N, "lift_sl2: defect valuation below target");

  // Truncate to the public precision N.
  auto pub = std::make_shared<QuatCtx>(make_quat(p, N));
  QuatMat Tp(pub.get(), 2, 2);
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j) {
      const QuatElem& s = T.at(i, j);
      Tp.at(i, j) = QuatElem(pub.get(), UnramElem(&pub->w, s.a.a0 % pub->w.pm, s.a.a1 % pub->w.pm),
                             UnramElem(&pub->w, s.b.a0 % pub->w.pm, s.b.a1 % pub->w.pm));
    }
  detail::check(Tp.reduce_mod_pi() == phik, "lift_sl2: reduction drifted from input");

  res.ok = true;
  res.ctx = pub;
  res.T = Tp;
  res.defect_valuation = hermitian_defect(Tp).min_valuation();
  return res;
}

}  // namespace ssmass
