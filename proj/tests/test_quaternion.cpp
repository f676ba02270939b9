#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ssmass/quaternion.hpp"

using namespace ssmass;

namespace {

QuatElem random_elem(const QuatCtx* C, std::mt19937_64& rng) {
  uint64_t pm = C->w.pm;
  return {C, UnramElem(&C->w, rng() % pm, rng() % pm), UnramElem(&C->w, rng() % pm, rng() % pm)};
}

}  // namespace

TEST_CASE("Pi squares to -p and twists scalars through sigma") {
  for (uint64_t p : {2, 3, 5}) {
    QuatCtx C = make_quat(p, 8);
    QuatElem pi = QuatElem::pi(&C);
    CHECK(pi * pi == QuatElem::scalar(&C, -static_cast<int64_t>(p)));
    // Pi a = sigma(a) Pi for a in the coefficient ring.
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
      UnramElem a(&C.w, rng() % C.w.pm, rng() % C.w.pm);
      QuatElem qa{&C, a, UnramElem::zero(&C.w)};
      QuatElem qas{&C, a.frob(), UnramElem::zero(&C.w)};
      CHECK(pi * qa == qas * pi);
    }
  }
}

TEST_CASE("ring axioms at several precisions") {
  std::mt19937_64 rng(31);
  for (uint64_t p : {2, 3}) {
    for (unsigned N : {3u, 4u, 7u, 8u}) {
      QuatCtx C = make_quat(p, N);
      for (int t = 0; t < 150; ++t) {
        QuatElem a = random_elem(&C, rng), b = random_elem(&C, rng), c = random_elem(&C, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * QuatElem::one(&C) == a);
        CHECK(QuatElem::one(&C) * a == a);
      }
    }
  }
}

TEST_CASE("star is an anti-involution") {
  std::mt19937_64 rng(41);
  QuatCtx C = make_quat(3, 7);
  QuatElem pi = QuatElem::pi(&C);
  CHECK(pi.star() == -pi);
  QuatElem onepi = QuatElem::one(&C) + pi;
  CHECK(onepi.star() == QuatElem::one(&C) - pi);
  for (int t = 0; t < 200; ++t) {
    QuatElem a = random_elem(&C, rng), b = random_elem(&C, rng);
    CHECK((a * b).star() == b.star() * a.star());
    CHECK(a.star().star() == a);
    // Involution and twist commute.
    CHECK(a.star().twist(1) == a.twist(1).star());
    CHECK(a.twist(2) == a);
    CHECK(a.twist(1).twist(1) == a);
  }
}

TEST_CASE("valuation saturates at the Pi precision") {
  QuatCtx C = make_quat(3, 5);  // coefficients mod 3^3
  CHECK(QuatElem::zero(&C).valuation() == 5);
  CHECK(QuatElem::one(&C).valuation() == 0);
  CHECK(QuatElem::pi(&C).valuation() == 1);
  CHECK(QuatElem::scalar(&C, 3).valuation() == 2);
  CHECK((QuatElem::pi(&C) * QuatElem::scalar(&C, 3)).valuation() == 3);
  std::mt19937_64 rng(53);
  for (int t = 0; t < 200; ++t) {
    QuatElem a = random_elem(&C, rng), b = random_elem(&C, rng);
    unsigned va = a.valuation(), vb = b.valuation();
    if (va + vb < 5) CHECK((a * b).valuation() == va + vb);
  }
}

TEST_CASE("Pi division truncation contract") {
  std::mt19937_64 rng(67);
  QuatCtx C = make_quat(2, 9);
  for (int t = 0; t < 200; ++t) {
    // Valuation >= 1 by construction, so div_pi applies and is exact.
    QuatElem x = random_elem(&C, rng).mul_pi_right();
    CHECK(x.div_pi().mul_pi_right() == x);
    // The other order loses the top stored digit of one coordinate.
    QuatElem a = random_elem(&C, rng);
    CHECK((a.mul_pi_right().div_pi() - a).valuation() >= C.pi_prec - 1);
  }
  CHECK_THROWS_AS(QuatElem::one(&C).div_pi(), std::logic_error);
}

TEST_CASE("reduction mod Pi is multiplicative on residues") {
  std::mt19937_64 rng(71);
  QuatCtx C = make_quat(3, 6);
  for (int t = 0; t < 200; ++t) {
    QuatElem a = random_elem(&C, rng), b = random_elem(&C, rng);
    CHECK((a * b).reduce_mod_pi() == a.reduce_mod_pi() * b.reduce_mod_pi());
    CHECK((a + b).reduce_mod_pi() == a.reduce_mod_pi() + b.reduce_mod_pi());
  }
}

TEST_CASE("matrix star and twist") {
  std::mt19937_64 rng(83);
  QuatCtx C = make_quat(3, 6);
  QuatMat I = QuatMat::identity(&C, 2), w = QuatMat::wmat(&C);
  CHECK(I.star() == I);
  CHECK(w.star() == -w);
  CHECK(w * w == -I);
  CHECK(w.twist(1) == w);
  auto random_mat = [&]() {
    QuatMat m(&C, 2, 2);
    for (auto& v : m.e) v = random_elem(&C, rng);
    return m;
  };
  for (int t = 0; t < 100; ++t) {
    QuatMat S = random_mat(), T = random_mat();
    CHECK((S * T).star() == T.star() * S.star());
    CHECK(S.star().star() == S);
    CHECK((S * T).twist(1) == S.twist(1) * T.twist(1));
    CHECK(S.star().twist(1) == S.twist(1).star());
  }
}

TEST_CASE("hermitian defect of symplectic constants") {
  for (uint64_t p : {2, 3, 5}) {
    QuatCtx C = make_quat(p, 6);
    CHECK(hermitian_defect(QuatMat::identity(&C, 2)).is_zero());
    CHECK(hermitian_defect(QuatMat::wmat(&C)).is_zero());
    // diag(1 + Pi, 1) distorts the form at valuation exactly 1.
    QuatMat D = QuatMat::identity(&C, 2);
    D.at(0, 0) = QuatElem::one(&C) + QuatElem::pi(&C);
    CHECK(hermitian_defect(D).min_valuation() == 1);
  }
}

TEST_CASE("embedding into 2x2 matrices over W") {
  std::mt19937_64 rng(97);
  for (uint64_t p : {2, 3}) {
    QuatCtx C = make_quat(p, 8);
    auto embed = [&](const QuatElem& x) { return x.embed_mat2(); };
    auto one = embed(QuatElem::one(&C));
    CHECK(one[0] == UnramElem::one(&C.w));
    CHECK(one[1].is_zero());
    CHECK(one[2].is_zero());
    CHECK(one[3] == UnramElem::one(&C.w));
    auto pi = embed(QuatElem::pi(&C));
    CHECK(pi[0].is_zero());
    CHECK(pi[1] == UnramElem::scalar(&C.w, -static_cast<int64_t>(p)));
    CHECK(pi[2] == UnramElem::one(&C.w));
    CHECK(pi[3].is_zero());
    // Multiplicative: M(xy) = M(x) M(y) with rows (0,1; 2,3).
    for (int t = 0; t < 200; ++t) {
      QuatElem x = random_elem(&C, rng), y = random_elem(&C, rng);
      auto mx = embed(x), my = embed(y), mxy = embed(x * y);
      CHECK(mxy[0] == mx[0] * my[0] + mx[1] * my[2]);
      CHECK(mxy[1] == mx[0] * my[1] + mx[1] * my[3]);
      CHECK(mxy[2] == mx[2] * my[0] + mx[3] * my[2]);
      CHECK(mxy[3] == mx[2] * my[1] + mx[3] * my[3]);
      // Injectivity: distinct elements embed distinctly.
      if (!(x == y)) CHECK(!(mx[0] == my[0] && mx[1] == my[1] && mx[2] == my[2] && mx[3] == my[3]));
    }
  }
}
