#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ssmass/mass.hpp"

using namespace ssmass;

TEST_CASE("genus 1 mass is the Eichler value (p - 1) / 24") {
  for (uint64_t p : detail::primes_upto(100))
    CHECK(mass_superspecial(1, p).value == Rational(p - 1, 24));
}

TEST_CASE("genus 2 principal mass") {
  CHECK(mass_superspecial(2, 2).value == Rational(5, 5760));  // = 1/1152
  CHECK(mass_superspecial(2, 2).value == Rational(1, 1152));
  CHECK(mass_superspecial(2, 3).value == Rational(2 * 10, 5760));
  for (uint64_t p : detail::primes_upto(1000)) {
    Rational expect = Rational(Int(p - 1) * (Int(p) * p + 1), 5760);
    CHECK(mass_superspecial(2, p).value == expect);
  }
  CHECK_THROWS_AS(mass_superspecial(3, 5), std::invalid_argument);
  CHECK_THROWS_AS(mass_superspecial(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(mass_superspecial(2, 6), std::invalid_argument);
}

TEST_CASE("genus 2 F-kernel mass") {
  CHECK(mass_superspecial_fkernel(2, 2).value == Rational(3, 5760));  // = 1/1920
  CHECK(mass_superspecial_fkernel(2, 2).value == Rational(1, 1920));
  for (uint64_t p : detail::primes_upto(1000))
    CHECK(mass_superspecial_fkernel(2, p).value == Rational(Int(p) * p - 1, 5760));
  CHECK_THROWS_AS(mass_superspecial_fkernel(3, 5), std::invalid_argument);
}

TEST_CASE("stratum masses and their scaled numerators") {
  CHECK(mass_supersingular(3, XiCase::I).value == Rational(20, 5760));
  CHECK(mass_supersingular(2, XiCase::III).value == Rational(3 * 60, 5760));  // |PSL_2(F_4)| = 60
  for (uint64_t p : detail::primes_upto(200)) {
    for (XiCase tag : {XiCase::I, XiCase::II, XiCase::III}) {
      Rational v = mass_supersingular(p, tag).value;
      CHECK(rat_den(v * 5760) == 1);  // L_p is an integer
      CHECK(v > 0);
    }
  }
}

TEST_CASE("case I stratum equals the principal superspecial mass") {
  for (uint64_t p : detail::primes_upto(1000))
    CHECK(mass_supersingular(p, XiCase::I).value == mass_superspecial(2, p).value);
}

TEST_CASE("case II and III masses factor through the F-kernel baseline") {
  for (uint64_t p : detail::primes_upto(1000)) {
    Int P(p);
    Rational base = mass_superspecial_fkernel(2, p).value;
    CHECK(mass_supersingular(p, XiCase::II).value == base * Rational(P * P * P * P - P * P));
    CHECK(mass_supersingular(p, XiCase::III).value == base * Rational(psl2_order(p)));
  }
}

TEST_CASE("relative indices") {
  for (uint64_t p : {2, 3, 5, 7, 11, 97}) {
    Int P(p);
    CHECK(relative_index(MassStratum::CaseI, MassStratum::CaseI, p) == 1);
    CHECK(relative_index(MassStratum::FKernel, MassStratum::CaseII, p) ==
          Rational(P * P * P * P - P * P));
    CHECK(relative_index(MassStratum::FKernel, MassStratum::CaseIII, p) ==
          Rational(psl2_order(p)));
    // Composition: index(a -> b) * index(b -> c) = index(a -> c).
    Rational ab = relative_index(MassStratum::FKernel, MassStratum::CaseI, p);
    Rational bc = relative_index(MassStratum::CaseI, MassStratum::CaseIII, p);
    CHECK(ab * bc == relative_index(MassStratum::FKernel, MassStratum::CaseIII, p));
  }
  XiClass a = xi_generic(5, 2), b = xi_generic(5, 3);
  CHECK(relative_index(a, b, 5) == relative_index(MassStratum::CaseII, MassStratum::CaseIII, 5));
}

TEST_CASE("symplectic group orders") {
  // Genus 1 reduces to SL_2; compare with enumeration.
  CHECK(sp_group_order(1, 3) == 24);
  CHECK(sp_group_order(1, 4) == 48);
  for (uint64_t N : {2, 3, 4, 5, 6, 7, 8, 9}) CHECK(sp_group_order(1, N) == oracle::sl2_znz_count(N));
  // Genus 2 anchor.
  CHECK(sp_group_order(2, 3) == 51840);
  // Multiplicativity over coprime levels.
  CHECK(sp_group_order(2, 15) == sp_group_order(2, 3) * sp_group_order(2, 5));
  CHECK_THROWS_AS(sp_group_order(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(sp_group_order(2, 1), std::invalid_argument);
}

TEST_CASE("hecke orbit sizes") {
  CHECK(hecke_orbit_size(2, 3, XiCase::I) == 45);  // 51840 / 1152
  CHECK_THROWS_AS(hecke_orbit_size(2, 2, XiCase::I), std::invalid_argument);
  CHECK_THROWS_AS(hecke_orbit_size(3, 6, XiCase::I), std::invalid_argument);
  CHECK_THROWS_AS(hecke_orbit_size(2, 1, XiCase::I), std::invalid_argument);
  // Integrality (checked internally) across primes and levels.
  for (uint64_t p : detail::primes_upto(50))
    for (uint64_t N : {3, 4, 5, 7})
      if (std::gcd(N, p) == 1)
        for (XiCase tag : {XiCase::I, XiCase::II, XiCase::III})
          CHECK(hecke_orbit_size(p, N, tag) > 0);
}

TEST_CASE("census counts match brute force") {
  for (uint64_t p : {2, 3}) {
    for (unsigned m : {1u, 2u, 3u}) {
      auto rows = census(p, m);
      auto ref = oracle::census_bruteforce(p, m);
      REQUIRE(rows.size() == detail::divisors(m).size());
      Int total = 0;
      for (const auto& r : rows) {
        CHECK(r.count == Int(ref[r.degree]));
        CHECK(r.count >= 0);
        total += r.count;
      }
      Int expect = 1;
      for (unsigned i = 0; i < 2 * m; ++i) expect *= p;
      CHECK(total == expect + 1);  // all of P^1(F_{p^(2m)})
    }
  }
}

TEST_CASE("census pinned values at p = 2") {
  CHECK(census_count(2, 1) == 5);
  CHECK(census_count(2, 2) == 12);
  CHECK(census_count(2, 3) == 60);
  auto rows = census(2, 3, 3);
  REQUIRE(rows.size() == 2);  // divisors 1 and 3
  CHECK(rows[0].degree == 1);
  CHECK(rows[0].count == 5);
  CHECK(rows[0].mass == Rational(1, 1152));
  REQUIRE(rows[0].orbit_size.has_value());
  CHECK(*rows[0].orbit_size == 45);
  CHECK(rows[1].degree == 3);
  CHECK(rows[1].count == 60);
}

TEST_CASE("census rejects bad parameters") {
  CHECK_THROWS_AS(census(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(census(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(census(3, 2, 2), std::invalid_argument);  // level below 3
  CHECK_THROWS_AS(census(3, 2, 6), std::invalid_argument);  // level not prime to p
}
