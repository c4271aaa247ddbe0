// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "tlchan/recoupling.hpp"
#include "tlchan/structure.hpp"
#include "tlchan/verify.hpp"

using namespace tlchan;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
  double time_budget_s;  // 0 = no budget
};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

RealVector sorted_eigs(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Outcome criterion_example_reproduction() {
  Outcome out;
  TLContext ctx(GroupSpec::su2());
  const AdmissibleTriple t = AdmissibleTriple::make(3, 3, 2);
  const TLChannel left = build_channel(ctx, t, Traced::Left);    // output on H_2
  const TLChannel right = build_channel(ctx, t, Traced::Right);  // output on H_3
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = 0.25;
  rho(1, 1) = 0.75;
  const Matrix out_left = apply_channel(left, rho);
  const Matrix out_right = apply_channel(right, rho);

  const RealVector e1 = sorted_eigs(out_left);
  const RealVector e2 = sorted_eigs(out_right);
  const double expect1[3] = {0.2, 0.3, 0.5};
  const double expect2[4] = {0.0, 0.15, 0.4, 0.45};
  double dev = 0.0;
  for (int i = 0; i < 3; ++i) dev = std::max(dev, std::abs(e1(i) - expect1[i]));
  for (int i = 0; i < 4; ++i) dev = std::max(dev, std::abs(e2(i) - expect2[i]));
  const double diff = von_neumann_entropy(out_left) - von_neumann_entropy(out_right);
  out.pass = dev <= 1e-8 && close(diff, 0.0192, 5e-4);
  out.detail = "entropy difference " + fmt(diff) + " nats, spectra deviation " + fmt(dev);
  return out;
}

Outcome criterion_section6_vectors() {
  Outcome out;
  TLContext ctx(GroupSpec::su2());
  const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(1, 2, 1), Traced::Left);
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  const Matrix image = apply_channel(ch, rho);
  Matrix expect(2, 2);
  expect << cplx(1.0 / 3.0), cplx(0.0), cplx(0.0), cplx(2.0 / 3.0);
  const double dev = (image - expect).cwiseAbs().maxCoeff();
  const double pur = purity(image);
  const int range = range_dimension(ch);
  out.pass = dev <= 1e-10 && close(pur, 5.0 / 9.0, 1e-10) && range == 4;
  out.detail = "output deviation " + fmt(dev) + ", purity " + fmt(pur) + ", range " +
               std::to_string(range);
  return out;
}

Outcome criterion_choi_theorem() {
  Outcome out;
  double worst = 0.0;
  int count = 0, rank_bad = 0;
  std::vector<GroupSpec> groups = {GroupSpec::onplus(2), GroupSpec::onplus(3),
                                   GroupSpec::onplus(4), GroupSpec::su2()};
  for (const GroupSpec& g : groups) {
    TLContext ctx(g, 1 << 21);  // the comparison vertex needs up to m+k = 10 legs
    for (int l = 0; l <= 5; ++l)
      for (int m = 0; m + l <= 5; ++m)
        for (int k = std::abs(l - m); k <= l + m; k += 2) {
          const AdmissibleTriple t = AdmissibleTriple::make(k, l, m);
          for (Traced tr : {Traced::Left, Traced::Right}) {
            const TLChannel ch = build_channel(ctx, t, tr);
            const ChoiTheoremCheck res = choi_theorem_check(ctx, ch);
            worst = std::max(worst, res.frobenius_deviation);
            if (res.rank != ch.dE) ++rank_bad;
            ++count;
          }
        }
  }
  out.pass = worst <= 1e-8 && rank_bad == 0;
  out.detail = std::to_string(count) + " channels, worst Frobenius deviation " + fmt(worst) +
               ", rank mismatches " + std::to_string(rank_bad);
  return out;
}

Outcome criterion_moe_exact() {
  Outcome out;
  double worst = 0.0;
  for (int N : {3, 4, 5}) {
    TLContext ctx(GroupSpec::onplus(N));
    for (auto [l, m] : {std::pair{1, 1}, std::pair{2, 1}}) {
      for (Traced tr : {Traced::Left, Traced::Right}) {
        const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(l + m, l, m), tr);
        const DensityMatrix w = moe_witness_state(ctx, ch);
        worst = std::max(worst, std::abs(von_neumann_entropy(apply_channel(ch, w.rho))));
      }
    }
  }
  out.pass = worst <= 1e-8;
  out.detail = "worst witness output entropy " + fmt(worst);
  return out;
}

Outcome criterion_q1_exact() {
  Outcome out;
  double worst_slack = 1e300;
  for (int N : {3, 4, 5}) {
    TLContext ctx(GroupSpec::onplus(N));
    for (auto [l, m] : {std::pair{1, 1}, std::pair{2, 1}}) {
      const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(l + m, l, m), Traced::Left);
      const DensityMatrix rho = q1_witness_ensemble(ctx, ch);
      const double ic = coherent_information(ch, rho);
      worst_slack = std::min(worst_slack, ic - m * std::log(double(N - 1)));
    }
  }
  out.pass = worst_slack >= -1e-8;
  out.detail = "worst coherent-information slack " + fmt(worst_slack);
  return out;
}

Outcome criterion_moe_asymptotics() {
  Outcome out;
  std::vector<double> devs;
  for (int N : {5, 10, 20}) {
    TLContext ctx(GroupSpec::onplus(N));
    const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(1, 2, 1), Traced::Left);
    const DensityMatrix w = moe_witness_state(ctx, ch);
    const double h = von_neumann_entropy(apply_channel(ch, w.rho));
    devs.push_back(std::abs(h - std::log(double(N))));
  }
  const bool decreasing = devs[0] > devs[1] && devs[1] > devs[2];
  const bool small = devs[2] <= 0.5;
  const GroupSpec g40 = GroupSpec::onplus(40);
  const double ratio =
      40.0 * quantum_integer(2, g40.q) / theta_net(1, 2, 1, g40.q);
  const bool lemma = std::abs(ratio - 1.0) <= 4.0 / (40.0 * 40.0);
  out.pass = decreasing && small && lemma;
  out.detail = "witness deviations " + fmt(devs[0]) + " > " + fmt(devs[1]) + " > " +
               fmt(devs[2]) + ", lemma ratio gap " + fmt(std::abs(ratio - 1.0));
  return out;
}

Outcome criterion_ppt() {
  Outcome out;
  int indeterminate = 0, wrong = 0, count = 0;
  TLContext su(GroupSpec::su2());
  for (int l = 0; l <= 5; ++l)
    for (int m = 0; m <= l; ++m)
      for (int k = l - m; k <= std::min(l + m, 5); k += 2) {
        if (l > 5 || m > 5 || k > 5) continue;
        const AdmissibleTriple t = AdmissibleTriple::make(k, l, m);
        const PPTClass right =
            classify_ppt(ppt_check(build_channel(su, t, Traced::Right)).min_eigenvalue);
        const PPTClass left =
            classify_ppt(ppt_check(build_channel(su, t, Traced::Left)).min_eigenvalue);
        count += 2;
        if (right == PPTClass::Indeterminate || left == PPTClass::Indeterminate) ++indeterminate;
        if ((right == PPTClass::PPT) != (k == 0)) ++wrong;
        if ((left == PPTClass::PPT) != (k == l - m)) ++wrong;
      }
  for (int N : {3, 4}) {
    TLContext ctx(GroupSpec::onplus(N));
    for (auto [l, m] : {std::pair{1, 1}, std::pair{2, 1}}) {
      for (Traced tr : {Traced::Left, Traced::Right}) {
        const TLChannel ch = build_channel(ctx, AdmissibleTriple::make(l + m, l, m), tr);
        ++count;
        if (classify_ppt(ppt_check(ch).min_eigenvalue) != PPTClass::NotPPT) ++wrong;
      }
    }
  }
  out.pass = indeterminate == 0 && wrong == 0;
  out.detail = std::to_string(count) + " channels, " + std::to_string(wrong) +
               " misclassified, " + std::to_string(indeterminate) + " indeterminate";
  return out;
}

Outcome criterion_degrading() {
  Outcome out;
  TLContext ctx(GroupSpec::su2());
  double worst = 0.0;
  for (auto [l, m] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 2}})
    worst = std::max(worst, verify_degrading_identity(ctx, l, m));
  out.pass = worst <= 1e-8;
  out.detail = "worst Choi deviation " + fmt(worst);
  return out;
}

Outcome criterion_recoupling() {
  Outcome out;
  double worst = 0.0;
  int mult_bad = 0, count = 0;
  for (const GroupSpec& g : {GroupSpec::su2(), GroupSpec::onplus(3)}) {
    TLContext ctx(g);
    for (int k1 = 0; k1 <= 2; ++k1)
      for (int k2 = 0; k2 <= 2; ++k2)
        for (int l1 = 0; l1 <= 2; ++l1)
          for (int m1 = 0; m1 <= 2; ++m1)
            for (int l2 = 0; l2 <= 2; ++l2)
              for (int m2 = 0; m2 <= 2; ++m2) {
                if (!is_admissible(k1, l1, m1) || !is_admissible(k2, l2, m2)) continue;
                if (l1 + m1 == 0 || l2 + m2 == 0) continue;
                const AdmissibleTriple t1 = AdmissibleTriple::make(k1, l1, m1);
                const AdmissibleTriple t2 = AdmissibleTriple::make(k2, l2, m2);
                for (int i = std::abs(k1 - k2); i <= k1 + k2; i += 2) {
                  const SpectrumReport f = tensor_output_spectrum_formula(ctx, i, t1, t2);
                  const SpectrumReport b = tensor_output_spectrum_bruteforce(ctx, i, t1, t2);
                  ++count;
                  std::vector<double> va, vb;
                  long long total_f = 0;
                  for (const auto& e : f.entries) {
                    if (e.multiplicity != dim_irrep(e.l, g)) ++mult_bad;
                    total_f += e.multiplicity;
                    for (long long r = 0; r < e.multiplicity; ++r) va.push_back(e.eigenvalue);
                  }
                  long long total_b = 0;
                  for (const auto& e : b.entries) {
                    total_b += e.multiplicity;
                    for (long long r = 0; r < e.multiplicity; ++r) vb.push_back(e.eigenvalue);
                  }
                  if (total_f != total_b) {
                    ++mult_bad;
                    continue;
                  }
                  std::sort(va.begin(), va.end());
                  std::sort(vb.begin(), vb.end());
                  for (std::size_t s = 0; s < va.size(); ++s)
                    worst = std::max(worst, std::abs(va[s] - vb[s]));
                }
              }
  }
  out.pass = worst <= 1e-8 && mult_bad == 0;
  out.detail = std::to_string(count) + " spectra, worst eigenvalue deviation " + fmt(worst) +
               ", multiplicity mismatches " + std::to_string(mult_bad);
  return out;
}

Outcome criterion_haar() {
  Outcome out;
  double worst = 0.0;
  bool trend = true;
  for (auto [l, m] : {std::pair{1, 1}, std::pair{2, 1}}) {
    TLContext ctx(GroupSpec::su2());
    const HaarAverageResult small = haar_average_state(ctx, l, m, 100, 2026);
    const HaarAverageResult big = haar_average_state(ctx, l, m, 10000, 2026);
    worst = std::max(worst, big.distance);
    if (!(big.distance < small.distance)) trend = false;
  }
  out.pass = worst <= 5.0 / std::sqrt(10000.0) && trend;
  out.detail = "worst MC distance " + fmt(worst) + " (bound 0.05), trend " +
               (trend ? "ok" : "violated");
  return out;
}

Outcome criterion_categorical() {
  Outcome out;
  int failed = 0, passed = 0, skipped = 0;
  const char* suites[] = {"snake", "loop", "projector", "jwcups",
                          "adjacent", "isometry", "bistochastic"};
  const std::pair<GroupSpec, std::size_t> setups[] = {
      {GroupSpec::su2(), 250000},
      {GroupSpec::onplus(2), 250000},
      {GroupSpec::onplus(3), 250000},
      {GroupSpec::onplus(4), 1024},  // keeps the k = 6 dense checks skipped
  };
  for (const auto& [g, cap] : setups) {
    TLContext ctx(g, cap);
    for (const char* s : suites)
      for (const CheckResult& r : run_suite(ctx, s)) {
        if (r.status == CheckResult::Status::Fail) ++failed;
        else if (r.status == CheckResult::Status::Pass) ++passed;
        else ++skipped;
      }
  }
  out.pass = failed == 0 && passed > 0;
  out.detail = std::to_string(passed) + " checks passed, " + std::to_string(failed) +
               " failed, " + std::to_string(skipped) + " skipped (over budget)";
  return out;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "example reproduction (3,3,2)", criterion_example_reproduction, 1.0},
      {2, "range and purity test vectors", criterion_section6_vectors, 0.0},
      {3, "Choi covariant-projector theorem", criterion_choi_theorem, 30.0},
      {4, "exact highest-weight minimum output entropy", criterion_moe_exact, 0.0},
      {5, "exact highest-weight one-shot capacity witness", criterion_q1_exact, 0.0},
      {6, "asymptotic witness-entropy trend", criterion_moe_asymptotics, 0.0},
      {7, "PPT characterization grids", criterion_ppt, 120.0},
      {8, "highest-weight degrading identity", criterion_degrading, 0.0},
      {9, "recoupling formula vs brute force", criterion_recoupling, 120.0},
      {10, "Haar-average separability statistics", criterion_haar, 0.0},
      {11, "categorical invariant suite", criterion_categorical, 60.0},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = c.time_budget_s <= 0.0 || secs < c.time_budget_s;
    const bool pass = out.pass && in_budget;
    if (!pass) ++failures;
    std::printf("%s criterion %2d: %s (%s)%s [%.2f s]\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), out.detail.c_str(),
                in_budget ? "" : " [over time budget]", secs);
    std::fflush(stdout);
  }
  if (failures == 0) {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
