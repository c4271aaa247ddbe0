#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tlchan/infoquant.hpp"
#include "tlchan/structure.hpp"

using namespace tlchan;

namespace {

Matrix diag3(double a, double b, double c) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

}  // namespace

TEST_CASE("von Neumann entropy", "[infoquant]") {
  SECTION("maximally mixed state") {
    for (int d : {2, 3, 7}) {
      const Matrix rho = Matrix::Identity(d, d) / double(d);
      CHECK(von_neumann_entropy(rho) == Catch::Approx(std::log(double(d))).margin(1e-12));
    }
  }
  SECTION("pure state") {
    Matrix rho = Matrix::Zero(4, 4);
    rho(2, 2) = 1.0;
    CHECK(von_neumann_entropy(rho) == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("the 0.0192 example fixes the natural-log convention") {
    Matrix a = diag3(0.5, 0.2, 0.3);
    Matrix b = Matrix::Zero(4, 4);
    b(0, 0) = 0.45;
    b(1, 1) = 0.15;
    b(2, 2) = 0.4;
    CHECK(von_neumann_entropy(a) - von_neumann_entropy(b) ==
          Catch::Approx(0.0192).margin(5e-5));
  }
  SECTION("unitary invariance") {
    auto gen = rng_stream(31, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix a(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = cplx(normal(gen), normal(gen));
    Matrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    Eigen::HouseholderQR<Matrix> qr(a);
    const Matrix u = qr.householderQ();
    CHECK(von_neumann_entropy(Matrix(u * rho * u.adjoint())) ==
          Catch::Approx(von_neumann_entropy(rho)).margin(1e-10));
  }
  SECTION("hard error beyond the negative tolerance") {
    Matrix rho = diag3(1.2, -0.1, -0.1);
    CHECK_THROWS_AS(von_neumann_entropy(rho), NumericalError);
  }
}

TEST_CASE("moe witness state", "[infoquant]") {
  SECTION("k = 1 is |1><1|") {
    TLContext ctx(GroupSpec::onplus(3));
    const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(1, 2, 1), Traced::Left);
    const DensityMatrix w = moe_witness_state(ctx, ch);
    Matrix expect = Matrix::Zero(3, 3);
    expect(0, 0) = 1.0;
    CHECK((w.rho - expect).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SECTION("top-weight channels have zero output entropy at the witness") {
    for (int N : {3, 4}) {
      TLContext ctx(GroupSpec::onplus(N));
      for (auto [l, m] : {std::pair{1, 1}, std::pair{2, 1}}) {
        for (Traced tr : {Traced::Left, Traced::Right}) {
          const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(l + m, l, m), tr);
          const DensityMatrix w = moe_witness_state(ctx, ch);
          CHECK(von_neumann_entropy(apply_channel(ch, w.rho)) ==
                Catch::Approx(0.0).margin(1e-8));
        }
      }
    }
  }
  SECTION("witness entropy approaches r ln N") {
    // (k,l,m) = (1,2,1): witness output entropy within 0.5 of ln N at N = 20
    TLContext ctx(GroupSpec::onplus(20));
    const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(1, 2, 1), Traced::Left);
    const DensityMatrix w = moe_witness_state(ctx, ch);
    const double h = von_neumann_entropy(apply_channel(ch, w.rho));
    CHECK(std::abs(h - std::log(20.0)) <= 0.5);
  }
  SECTION("unsupported for SU(2)") {
    TLContext ctx(GroupSpec::su2());
    const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(2, 1, 1), Traced::Left);
    CHECK_THROWS_AS(moe_witness_state(ctx, ch), InvalidInputError);
  }
}

TEST_CASE("q1 witness ensemble", "[infoquant]") {
  SECTION("term count (N-1)^{l-r}") {
    TLContext ctx(GroupSpec::onplus(3));
    const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(2, 1, 1), Traced::Right);
    CHECK(q1_witness_vectors(ctx, ch).size() == 2);  // (N-1)^{l-r} = 2
    const DensityMatrix rho = q1_witness_ensemble(ctx, ch);
    CHECK(rho.rho.trace().real() == Catch::Approx(1.0).margin(1e-10));
  }
  SECTION("coherent information reaches m ln(N-1) at the top weight") {
    for (int N : {3, 4}) {
      TLContext ctx(GroupSpec::onplus(N));
      for (auto [l, m] : {std::pair{1, 1}, std::pair{2, 1}}) {
        const TLChannel ch =
            build_channel(ctx, AdmissibleTriple::make(l + m, l, m), Traced::Left);
        const DensityMatrix rho = q1_witness_ensemble(ctx, ch);
        CHECK(coherent_information(ch, rho) >= m * std::log(double(N - 1)) - 1e-8);
        const TLChannel chr =
            build_channel(ctx, AdmissibleTriple::make(l + m, l, m), Traced::Right);
        const DensityMatrix rhor = q1_witness_ensemble(ctx, chr);
        CHECK(coherent_information(chr, rhor) >= l * std::log(double(N - 1)) - 1e-8);
      }
    }
  }
}

TEST_CASE("minimum output entropy search", "[infoquant]") {
  TLContext ctx(GroupSpec::onplus(3));
  SECTION("paper witness certifies zero at the top weight") {
    const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(3, 2, 1), Traced::Left);
    const MOEReport rep = min_output_entropy(ctx, ch, MOEStrategy::witness());
    CHECK(rep.best_entropy == Catch::Approx(0.0).margin(1e-8));
    CHECK(rep.theory_lower <= rep.best_entropy + 1e-8);
  }
  SECTION("theory lower bound value") {
    const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(1, 2, 1), Traced::Left);
    const MOEReport rep = min_output_entropy(ctx, ch, MOEStrategy::witness());
    const double expect =
        std::log(theta_net(1, 2, 1, ctx.group().q) / quantum_integer(2, ctx.group().q));
    CHECK(rep.theory_lower == Catch::Approx(expect).margin(1e-12));
  }
  SECTION("random search and descent stay above the certified bound") {
    for (const GroupSpec& g : {GroupSpec::onplus(3), GroupSpec::su2()}) {
      TLContext c2(g);
      for (auto [k, l, m] : {std::tuple{1, 2, 1}, std::tuple{2, 2, 2}, std::tuple{3, 3, 2}}) {
        const TLChannel ch = build_channel(c2, AdmissibleTriple::make(k, l, m), Traced::Left);
        const MOEReport r1 = min_output_entropy(c2, ch, MOEStrategy::random_pure(300, 7));
        const MOEReport r2 = min_output_entropy(c2, ch, MOEStrategy::descent(300, 7, 120));
        CHECK(r1.best_entropy >= r1.theory_lower - 1e-8);
        CHECK(r1.best_entropy <= std::log(double(ch.dB)) + 1e-8);
        CHECK(r2.best_entropy <= r1.best_entropy + 1e-12);  // descent refines
        r2.argmin.validate();
      }
    }
  }
  SECTION("deterministic under reruns") {
    const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(2, 2, 2), Traced::Right);
    const MOEReport a = min_output_entropy(ctx, ch, MOEStrategy::random_pure(200, 99));
    const MOEReport b = min_output_entropy(ctx, ch, MOEStrategy::random_pure(200, 99));
    CHECK(a.best_entropy == b.best_entropy);
  }
  SECTION("paper witness falls back to random search for SU(2)") {
    TLContext su(GroupSpec::su2());
    const TLChannel ch = build_channel(su, AdmissibleTriple::make(2, 2, 2), Traced::Left);
    MOEStrategy s = MOEStrategy::witness();
    s.samples = 200;
    s.seed = 5;
    const MOEReport rep = min_output_entropy(su, ch, s);
    CHECK(rep.best_entropy >= rep.theory_lower - 1e-8);
    CHECK(rep.best_entropy <= std::log(double(ch.dB)) + 1e-8);
  }
}

TEST_CASE("coherent information", "[infoquant]") {
  SECTION("vanishes on pure inputs") {
    TLContext ctx(GroupSpec::su2());
    const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(2, 2, 2), Traced::Right);
    Matrix rho = Matrix::Zero(3, 3);
    rho(1, 1) = 1.0;
    CHECK(coherent_information(ch, DensityMatrix{rho, {3}}) ==
          Catch::Approx(0.0).margin(1e-10));
  }
  SECTION("maximally mixed input gives at least ln(dB/dE)") {
    TLContext ctx(GroupSpec::onplus(3));
    const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(1, 2, 1), Traced::Left);
    const Matrix mixed = Matrix::Identity(ch.dA, ch.dA) / double(ch.dA);
    CHECK(coherent_information(ch, DensityMatrix{mixed, {ch.dA}}) >=
          std::log(double(ch.dB) / double(ch.dE)) - 1e-8);
  }
  SECTION("the 0.0192 example") {
    TLContext ctx(GroupSpec::su2());
    const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(3, 3, 2), Traced::Left);
    Matrix rho = Matrix::Zero(4, 4);
    rho(0, 0) = 0.25;
    rho(1, 1) = 0.75;
    CHECK(coherent_information(ch, DensityMatrix{rho, {4}}) ==
          Catch::Approx(0.0192).margin(5e-5));
  }
}

TEST_CASE("holevo quantity", "[infoquant]") {
  TLContext ctx(GroupSpec::onplus(3));
  const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(2, 1, 1), Traced::Right);
  SECTION("single-element ensemble gives zero") {
    Ensemble e;
    const Matrix mixed = Matrix::Identity(ch.dA, ch.dA) / double(ch.dA);
    e.items.push_back({1.0, DensityMatrix{mixed, {ch.dA}}});
    CHECK(holevo_of_ensemble(ch, e) == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("witness-index ensemble approaches ln dB as N grows") {
    double prev_gap = 1e100;
    for (int N : {5, 10, 20}) {
      TLContext c(GroupSpec::onplus(N));
      const TLChannel top = build_channel(c, AdmissibleTriple::make(2, 1, 1), Traced::Right);
      Ensemble e;
      const auto vs = q1_witness_vectors(c, top);
      for (const Vector& v : vs)
        e.items.push_back({1.0 / double(vs.size()), DensityMatrix{v * v.adjoint(), {top.dA}}});
      const double chi = holevo_of_ensemble(top, e);
      CHECK(chi == Catch::Approx(std::log(double(N - 1))).margin(1e-8));
      const double gap = std::log(double(top.dB)) - chi;
      CHECK(gap >= -1e-8);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
  }
  SECTION("bounded by ln dB minus the certified minimum output entropy") {
    const MOEReport rep = min_output_entropy(ctx, ch, MOEStrategy::witness());
    REQUIRE(rep.best_entropy == Catch::Approx(rep.theory_lower).margin(1e-8));
    Ensemble e;
    const auto vs = q1_witness_vectors(ctx, ch);
    for (const Vector& v : vs)
      e.items.push_back({1.0 / double(vs.size()), DensityMatrix{v * v.adjoint(), {ch.dA}}});
    CHECK(holevo_of_ensemble(ch, e) <= std::log(double(ch.dB)) - rep.best_entropy + 1e-6);
  }
}

TEST_CASE("capacity bounds", "[infoquant]") {
  SECTION("l = m gives zero lower bound") {
    TLContext ctx(GroupSpec::onplus(3));
    const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(2, 1, 1), Traced::Left);
    CHECK(capacity_bounds(ch).q1_lower == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("SU(2) (3,3,2) traced left") {
    TLContext ctx(GroupSpec::su2());
    const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(3, 3, 2), Traced::Left);
    const CapacityBounds b = capacity_bounds(ch);
    CHECK(b.q1_lower == Catch::Approx(std::log(3.0 / 4.0)).margin(1e-12));
    CHECK(b.c_upper[0] == Catch::Approx(std::log(4.0)).margin(1e-12));
    CHECK(b.c_upper[1] == Catch::Approx(std::log(3.0)).margin(1e-12));
    CHECK(b.c_upper[2] == Catch::Approx(std::log(3.0)).margin(1e-12));
  }
  SECTION("upper bounds dominate the lower bound") {
    TLContext ctx(GroupSpec::onplus(3));
    for (auto [k, l, m] : {std::tuple{1, 2, 1}, std::tuple{3, 2, 1}, std::tuple{2, 2, 2}}) {
      for (Traced tr : {Traced::Left, Traced::Right}) {
        const CapacityBounds b =
            capacity_bounds(build_channel(ctx, AdmissibleTriple::make(k, l, m), tr));
        for (double u : b.c_upper) CHECK(u >= b.q1_lower - 1e-12);
      }
    }
  }
}
