#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tlchan/qalg.hpp"

using namespace tlchan;

TEST_CASE("quantum integers", "[qalg]") {
  const GroupSpec g3 = GroupSpec::onplus(3);

  SECTION("base values") {
    CHECK(quantum_integer(0, g3.q) == 0.0);
    CHECK(quantum_integer(1, g3.q) == 1.0);
    CHECK(quantum_integer(1, 1.0) == 1.0);
  }
  SECTION("dimension recursion oracle at N=3") {
    // d_{k+1} = N d_k - d_{k-1}, d_0 = 1, d_1 = 3 gives d_2 = 8
    CHECK(quantum_integer(3, g3.q) == Catch::Approx(8.0).margin(1e-9));
  }
  SECTION("q -> 1 limit is n") {
    CHECK(quantum_integer(5, 1.0) == Catch::Approx(5.0).margin(1e-12));
  }
  SECTION("three-term recursion, both groups, k <= 20") {
    for (const GroupSpec& g : {GroupSpec::onplus(3), GroupSpec::onplus(7), GroupSpec::su2()}) {
      const double two = quantum_integer(2, g.q);
      for (int k = 1; k <= 20; ++k) {
        const double lhs = two * quantum_integer(k, g.q);
        const double rhs = quantum_integer(k + 1, g.q) + quantum_integer(k - 1, g.q);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
  SECTION("integrality for O_N^+") {
    for (int N = 2; N <= 10; ++N) {
      const GroupSpec g = GroupSpec::onplus(N);
      for (int k = 0; k <= 12; ++k) {
        const double v = quantum_integer(k + 1, g.q);
        CHECK(std::abs(v - std::round(v)) <= 1e-6);
      }
    }
  }
}

TEST_CASE("quantum factorial log", "[qalg]") {
  const GroupSpec g3 = GroupSpec::onplus(3);
  CHECK(quantum_factorial_log(0, g3.q) == 0.0);
  CHECK(quantum_factorial_log(2, 1.0) == Catch::Approx(std::log(2.0)).margin(1e-12));
  // [4]_q! = 1 * 3 * 8 * 21 = 504 from the dimension recursion
  CHECK(quantum_factorial_log(4, g3.q) == Catch::Approx(std::log(504.0)).epsilon(1e-10));
}

TEST_CASE("admissibility", "[qalg]") {
  CHECK(is_admissible(3, 3, 2));
  CHECK_FALSE(is_admissible(2, 1, 0));
  CHECK_FALSE(is_admissible(1, 2, 2));
  CHECK(admissibility_violation(1, 2, 2).find("parity") != std::string::npos);
  CHECK(admissibility_violation(4, 1, 1).find("triangle") != std::string::npos);
  CHECK_THROWS_AS(AdmissibleTriple::make(1, 2, 2), AdmissibilityError);
  CHECK(AdmissibleTriple::make(3, 3, 2).r == 1);
}

TEST_CASE("theta nets", "[qalg]") {
  const GroupSpec g3 = GroupSpec::onplus(3);

  SECTION("r = 0 collapse: theta(l+m, l, m) = [l+m+1]_q") {
    for (int l = 0; l <= 4; ++l)
      for (int m = 0; m <= 4; ++m)
        CHECK(theta_net(l + m, l, m, g3.q) ==
              Catch::Approx(quantum_integer(l + m + 1, g3.q)).epsilon(1e-10));
  }
  SECTION("theta(0, l, l) = [l+1]_q") {
    for (int l = 0; l <= 5; ++l)
      CHECK(theta_net(0, l, l, g3.q) ==
            Catch::Approx(quantum_integer(l + 1, g3.q)).epsilon(1e-10));
  }
  SECTION("permutation invariance, entries <= 6") {
    for (const GroupSpec& g : {GroupSpec::onplus(3), GroupSpec::su2()}) {
      for (int k = 0; k <= 6; ++k)
        for (int l = 0; l <= 6; ++l)
          for (int m = 0; m <= 6; ++m) {
            if (!is_admissible(k, l, m)) continue;
            const double ref = theta_net(k, l, m, g.q);
            const int perms[6][3] = {{k, l, m}, {k, m, l}, {l, k, m},
                                     {l, m, k}, {m, k, l}, {m, l, k}};
            for (const auto& p : perms) {
              REQUIRE(is_admissible(p[0], p[1], p[2]));
              CHECK(theta_net(p[0], p[1], p[2], g.q) == Catch::Approx(ref).epsilon(1e-10));
            }
          }
    }
  }
  SECTION("non-admissible triple is an error") {
    CHECK_THROWS_AS(theta_net(1, 2, 2, g3.q), AdmissibilityError);
  }
}

TEST_CASE("asymptotic ratio N^r [k+1]_q / theta", "[qalg]") {
  // fixed admissible triple, ratio approaches 1 like 1/N^2
  const int k = 1, l = 2, m = 1, r = 1;
  double prev = 1e100;
  for (int N : {5, 10, 20, 40}) {
    const GroupSpec g = GroupSpec::onplus(N);
    const double ratio = std::pow(static_cast<double>(N), r) *
                         quantum_integer(k + 1, g.q) / theta_net(k, l, m, g.q);
    const double dev = std::abs(ratio - 1.0);
    CHECK(dev < prev);
    prev = dev;
    if (N == 40) CHECK(dev <= 4.0 / (static_cast<double>(N) * N));
  }
}

TEST_CASE("irrep dimensions", "[qalg]") {
  CHECK(dim_irrep(0, GroupSpec::su2()) == 1);
  CHECK(dim_irrep(0, GroupSpec::onplus(5)) == 1);
  CHECK(dim_irrep(2, GroupSpec::onplus(3)) == 8);
  CHECK(dim_irrep(3, GroupSpec::su2()) == 4);
  // exact integer chain for a larger N
  const GroupSpec g10 = GroupSpec::onplus(10);
  long long a = 1, b = 10;
  for (int k = 2; k <= 12; ++k) {
    const long long c = 10 * b - a;
    a = b;
    b = c;
    CHECK(dim_irrep(k, g10) == c);
  }
}

TEST_CASE("group specs", "[qalg]") {
  const GroupSpec g2 = GroupSpec::onplus(2);
  CHECK(g2.q == Catch::Approx(1.0).margin(1e-14));
  CHECK(GroupSpec::su2().q == 1.0);
  CHECK(GroupSpec::su2().loop_value == 2.0);
  for (int N : {3, 5, 17}) {
    const GroupSpec g = GroupSpec::onplus(N);
    CHECK(g.q + 1.0 / g.q == Catch::Approx(static_cast<double>(N)).margin(1e-12));
    CHECK(g.loop_value == static_cast<double>(N));
  }
  CHECK(GroupSpec::onplus(4).name() == "onplus:4");
  CHECK(GroupSpec::su2().name() == "su2");
  CHECK_THROWS_AS(GroupSpec::onplus(1), InvalidInputError);
}
