#pragma once

// Dense matrices over F_{p^2}, plus SL_2 sampling and enumeration helpers.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ssmass/finite_field.hpp"

namespace ssmass {

struct FMat {
  const Fp2Ctx* k = nullptr;
  unsigned rows = 0, cols = 0;
  std::vector<Fp2> a;

  FMat() = default;
  FMat(const Fp2Ctx* ctx, unsigned r, unsigned c)
      : k(ctx), rows(r), cols(c), a(r * c, Fp2::zero(ctx)) {}

  Fp2& at(unsigned i, unsigned j) { return a[i * cols + j]; }
  const Fp2& at(unsigned i, unsigned j) const { return a[i * cols + j]; }

  static FMat identity(const Fp2Ctx* ctx, unsigned n) {
    FMat m(ctx, n, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = Fp2::one(ctx);
    return m;
  }
  static FMat zero(const Fp2Ctx* ctx, unsigned r, unsigned c) { return FMat(ctx, r, c); }

  // 2x2 symplectic form (0, -1; 1, 0).
  static FMat wmat(const Fp2Ctx* ctx) {
    FMat m(ctx, 2, 2);
    m.at(0, 1) = -Fp2::one(ctx);
    m.at(1, 0) = Fp2::one(ctx);
    return m;
  }

  bool is_zero() const {
    for (const auto& v : a)
      if (!v.is_zero()) return false;
    return true;
  }

  friend bool operator==(const FMat& x, const FMat& y) {
    detail::check(*x.k == *y.k, "FMat: mixed contexts");
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  friend FMat operator+(const FMat& x, const FMat& y) {
    detail::check(*x.k == *y.k && x.rows == y.rows && x.cols == y.cols, "FMat: shape mismatch");
    FMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
    return r;
  }
  friend FMat operator-(const FMat& x, const FMat& y) {
    detail::check(*x.k == *y.k && x.rows == y.rows && x.cols == y.cols, "FMat: shape mismatch");
    FMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
    return r;
  }
  FMat operator-() const {
    FMat r = *this;
    for (auto& v : r.a) v = -v;
    return r;
  }

  friend FMat operator*(const FMat& x, const FMat& y) {
    detail::check(*x.k == *y.k, "FMat: mixed contexts");
    detail::check(x.cols == y.rows, "FMat: inner dimension mismatch");
    FMat r(x.k, x.rows, y.cols);
    for (unsigned i = 0; i < x.rows; ++i)
      for (unsigned t = 0; t < x.cols; ++t) {
        const Fp2& xv = x.at(i, t);
        if (xv.is_zero()) continue;
        for (unsigned j = 0; j < y.cols; ++j) r.at(i, j) = r.at(i, j) + xv * y.at(t, j);
      }
    return r;
  }

  friend FMat operator*(const Fp2& s, const FMat& y) {
    FMat r = y;
    for (auto& v : r.a) v = s * v;
    return r;
  }

  FMat transpose() const {
    FMat r(k, cols, rows);
    for (unsigned i = 0; i < rows; ++i)
      for (unsigned j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  FMat frob() const {
    FMat r = *this;
    for (auto& v : r.a) v = v.frob();
    return r;
  }

  // Twist by the n-th power of Frobenius: identity for even n, entrywise
  // sigma for odd n.
  FMat twist(unsigned n) const { return (n & 1) ? frob() : *this; }

  Fp2 trace() const {
    detail::check(rows == cols, "FMat: trace of non-square");
    Fp2 t = Fp2::zero(k);
    for (unsigned i = 0; i < rows; ++i) t = t + at(i, i);
    return t;
  }

  Fp2 det2() const {
    detail::check(rows == 2 && cols == 2, "FMat: det2 needs a 2x2 matrix");
    return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
  }

  FMat inv2() const {
    Fp2 d = det2();
    if (d.is_zero()) throw std::domain_error("FMat: singular 2x2 matrix");
    Fp2 di = d.inv();
    FMat r(k, 2, 2);
    r.at(0, 0) = di * at(1, 1);
    r.at(0, 1) = -(di * at(0, 1));
    r.at(1, 0) = -(di * at(1, 0));
    r.at(1, 1) = di * at(0, 0);
    return r;
  }
};

namespace detail {

inline std::string fmat_witness(const FMat& m) {
  std::ostringstream os;
  os << "[";
  for (unsigned i = 0; i < m.rows; ++i) {
    if (i) os << ";";
    for (unsigned j = 0; j < m.cols; ++j) {
      if (j) os << ",";
      os << "[" << m.at(i, j).c0 << "," << m.at(i, j).c1 << "]";
    }
  }
  os << "]";
  return os.str();
}

}  // namespace detail

inline FMat random_fmat(const Fp2Ctx* k, unsigned n, std::mt19937_64& rng) {
  uint64_t q = k->p * k->p;
  FMat m(k, n, n);
  for (auto& v : m.a) v = Fp2::from_index(k, rng() % q);
  return m;
}

// Uniform element of SL_2(F_{p^2}): rejection-sample GL_2, then scale the
// first row by det^{-1}. Each SL_2 element has the same number (q - 1) of
// GL_2 preimages, so the result is uniform.
inline FMat random_sl2(const Fp2Ctx* k, std::mt19937_64& rng) {
  for (;;) {
    FMat m = random_fmat(k, 2, rng);
    Fp2 d = m.det2();
    if (d.is_zero()) continue;
    Fp2 di = d.inv();
    m.at(0, 0) = di * m.at(0, 0);
    m.at(0, 1) = di * m.at(0, 1);
    return m;
  }
}

inline std::vector<FMat> enumerate_sl2(const Fp2Ctx* k) {
  uint64_t q = k->p * k->p;
  detail::check(q <= 16, "enumerate_sl2: field too large to enumerate");
  std::vector<FMat> out;
  out.reserve(static_cast<size_t>(q * q * q));
  for (uint64_t i0 = 0; i0 < q; ++i0)
    for (uint64_t i1 = 0; i1 < q; ++i1)
      for (uint64_t i2 = 0; i2 < q; ++i2)
        for (uint64_t i3 = 0; i3 < q; ++i3) {
          FMat m(k, 2, 2);
          m.at(0, 0) = Fp2::from_index(k, i0);
          m.at(0, 1) = Fp2::from_index(k, i1);
          m.at(1, 0) = Fp2::from_index(k, i2);
          m.at(1, 1) = Fp2::from_index(k, i3);
          if (m.det2() == Fp2::one(k)) out.push_back(std::move(m));
        }
  return out;
}

}  // namespace ssmass
