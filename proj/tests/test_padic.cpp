#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ssmass/padic.hpp"

using namespace ssmass;

TEST_CASE("context construction and bounds") {
  UnramCtx R = make_unram(3, 2);
  CHECK(R.pm == 9);
  CHECK(R.f0 == 1);  // lift of x^2 + 1
  CHECK(R.f1 == 0);
  CHECK_THROWS_AS(make_unram(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_unram(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_unram(2, 63), std::invalid_argument);
}

TEST_CASE("Frobenius lift solves the modulus exactly") {
  for (uint64_t p : {2, 3, 5, 13}) {
    for (unsigned prec : {1u, 2u, 5u, 12u}) {
      if (p == 13 && prec == 12) continue;  // 13^12 > 2^62
      UnramCtx R = make_unram(p, prec);
      UnramElem sx(&R, R.sx0, R.sx1);
      UnramElem f1e = UnramElem::scalar(&R, static_cast<int64_t>(R.f1));
      UnramElem f0e = UnramElem::scalar(&R, static_cast<int64_t>(R.f0));
      CHECK((sx * sx + f1e * sx + f0e).is_zero());
      CHECK(sx.reduce() == Fp2::gen(&R.residue).frob());
      // Involution on the generator and scalars fixed.
      CHECK(UnramElem(&R, 0, 1).frob().frob() == UnramElem(&R, 0, 1));
      CHECK(UnramElem::scalar(&R, 7).frob() == UnramElem::scalar(&R, 7));
    }
  }
}

TEST_CASE("sigma(x) = -x when the modulus is x^2 + 1") {
  UnramCtx R = make_unram(3, 2);
  CHECK(R.sx0 == 0);
  CHECK(R.sx1 == 8);  // -1 mod 9
}

TEST_CASE("Frobenius is a ring homomorphism") {
  std::mt19937_64 rng(5);
  for (uint64_t p : {2, 3, 5}) {
    UnramCtx R = make_unram(p, 6);
    for (int t = 0; t < 300; ++t) {
      UnramElem a(&R, rng() % R.pm, rng() % R.pm);
      UnramElem b(&R, rng() % R.pm, rng() % R.pm);
      CHECK((a * b).frob() == a.frob() * b.frob());
      CHECK((a + b).frob() == a.frob() + b.frob());
      CHECK(a.frob().frob() == a);
      CHECK((a * b).reduce() == a.reduce() * b.reduce());
      CHECK(a.frob().reduce() == a.reduce().frob());
    }
  }
}

TEST_CASE("Newton inversion") {
  UnramCtx R = make_unram(3, 2);
  UnramElem two = UnramElem::scalar(&R, 2);
  CHECK(two.inv() == UnramElem::scalar(&R, 5));  // 2 * 5 = 10 = 1 mod 9
  CHECK(UnramElem::one(&R).inv() == UnramElem::one(&R));
  CHECK_THROWS_AS(UnramElem::scalar(&R, 3).inv(), std::domain_error);
  CHECK_THROWS_AS(UnramElem::zero(&R).inv(), std::domain_error);

  std::mt19937_64 rng(11);
  for (uint64_t p : {2, 3, 5}) {
    UnramCtx S = make_unram(p, 9);
    for (int t = 0; t < 200; ++t) {
      UnramElem a(&S, rng() % S.pm, rng() % S.pm);
      if (!a.is_unit()) continue;
      CHECK(a * a.inv() == UnramElem::one(&S));
    }
  }
}

TEST_CASE("valuation and exact division") {
  UnramCtx R = make_unram(3, 4);  // mod 81
  CHECK(UnramElem::zero(&R).vp() == 4);
  CHECK(UnramElem::one(&R).vp() == 0);
  CHECK(UnramElem::scalar(&R, 9).vp() == 2);
  CHECK(UnramElem(&R, 27, 9).vp() == 2);
  CHECK(UnramElem(&R, 27, 9).div_p() == UnramElem(&R, 9, 3));
  CHECK_THROWS_AS(UnramElem(&R, 1, 3).div_p(), std::logic_error);
  // v(ab) = v(a) + v(b) below saturation.
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    UnramElem a(&R, rng() % R.pm, rng() % R.pm);
    UnramElem b(&R, rng() % R.pm, rng() % R.pm);
    if (a.vp() + b.vp() < 4) CHECK((a * b).vp() == a.vp() + b.vp());
  }
}

TEST_CASE("reduction is a ring map onto the residue field") {
  UnramCtx R = make_unram(3, 2);
  CHECK(UnramElem::scalar(&R, 3).reduce().is_zero());
  CHECK(UnramElem::scalar(&R, 4).reduce() == Fp2::one(&R.residue));
  CHECK(UnramElem::from_fp2_lift(&R, Fp2(&R.residue, 2, 1)) == UnramElem(&R, 2, 1));
}
