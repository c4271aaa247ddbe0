#include "tlchan/verify.hpp"

#include <cmath>
#include <sstream>

namespace tlchan {

namespace {

using Status = CheckResult::Status;

std::string triple_name(const AdmissibleTriple& t) {
  std::ostringstream os;
  os << "(" << t.k << "," << t.l << "," << t.m << ")";
  return os.str();
}

CheckResult check(const std::string& suite, const std::string& name, double value,
                  double threshold) {
  std::ostringstream os;
  os << "deviation " << value << ", tolerance " << threshold;
  return CheckResult{suite, name, value <= threshold ? Status::Pass : Status::Fail, value,
                     os.str()};
}

CheckResult skip(const std::string& suite, const std::string& name, const std::string& why) {
  return CheckResult{suite, name, Status::Skip, 0.0, why};
}

int max_buildable_legs(const TLContext& ctx, int hard_cap) {
  int legs = 0;
  while (legs < hard_cap &&
         static_cast<std::size_t>(ctx.ambient_dim(legs + 1)) <= ctx.max_ambient())
    ++legs;
  return legs;
}

std::vector<CheckResult> snake_suite(const TLContext& ctx) {
  const int N = ctx.group().N;
  const Vector cup = ctx.cup_vector();
  const double sgn = ctx.group().kind == GroupKind::SU2 ? -1.0 : 1.0;
  Matrix snake1(N, N), snake2(N, N);
  for (int p = 0; p < N; ++p)
    for (int j = 0; j < N; ++j) {
      cplx acc1 = 0.0, acc2 = 0.0;
      for (int qq = 0; qq < N; ++qq) {
        acc1 += cup(static_cast<Eigen::Index>(p) * N + qq) *
                std::conj(cup(static_cast<Eigen::Index>(qq) * N + j));
        acc2 += std::conj(cup(static_cast<Eigen::Index>(j) * N + qq)) *
                cup(static_cast<Eigen::Index>(qq) * N + p);
      }
      snake1(p, j) = acc1;
      snake2(p, j) = acc2;
    }
  const Matrix target = sgn * Matrix::Identity(N, N);
  std::vector<CheckResult> out;
  out.push_back(check("snake", "(i x cap)(cup x i) = sgn(d) i",
                      (snake1 - target).cwiseAbs().maxCoeff(), 1e-12));
  out.push_back(check("snake", "(cap x i)(i x cup) = sgn(d) i",
                      (snake2 - target).cwiseAbs().maxCoeff(), 1e-12));
  return out;
}

std::vector<CheckResult> loop_suite(const TLContext& ctx) {
  const Vector cup = ctx.cup_vector();
  const double loop = cup.squaredNorm();
  return {check("loop", "cap o cup = loop value",
                std::abs(loop - ctx.group().loop_value), 1e-12)};
}

std::vector<CheckResult> projector_suite(const TLContext& ctx) {
  std::vector<CheckResult> out;
  const int legs = max_buildable_legs(ctx, 6);
  for (int k = 1; k <= 6; ++k) {
    std::ostringstream nm;
    nm << "p_" << k;
    if (k > legs || ctx.ambient_dim(k) > 4096) {
      out.push_back(skip("projector", nm.str(), "ambient dimension over budget"));
      continue;
    }
    const Matrix p = ctx.jones_wenzl_projector(k);
    const double dev_idem = (p * p - p).cwiseAbs().maxCoeff();
    const double dev_adj = (p - p.adjoint()).cwiseAbs().maxCoeff();
    out.push_back(check("projector", nm.str() + " idempotent", dev_idem, 1e-8));
    out.push_back(check("projector", nm.str() + " self-adjoint", dev_adj, 1e-8));
  }
  return out;
}

std::vector<CheckResult> jwcups_suite(const TLContext& ctx) {
  std::vector<CheckResult> out;
  const int legs = max_buildable_legs(ctx, 6);
  for (int k = 2; k <= 6; ++k) {
    std::ostringstream nm;
    nm << "p_" << k << " kills cups";
    if (k > legs) {
      out.push_back(skip("jwcups", nm.str(), "ambient dimension over budget"));
      continue;
    }
    const Matrix& B = ctx.basis(k).B;
    const long long sub = ctx.ambient_dim(k - 2);
    double worst = 0.0;
    for (int i = 1; i <= k - 1; ++i) {
      for (long long idx = 0; idx < sub; ++idx) {
        Vector e = Vector::Zero(sub);
        e(idx) = 1.0;
        const Vector amb = ctx.insert_nested_cups(e, i - 1, 1, k - 1 - i);
        worst = std::max(worst, (B.adjoint() * amb).norm());
      }
    }
    out.push_back(check("jwcups", nm.str(), worst, 1e-8));
  }
  return out;
}

std::vector<CheckResult> adjacent_suite(const TLContext& ctx) {
  if (ctx.group().kind != GroupKind::ONPlus || ctx.group().N < 3)
    return {skip("adjacent", "adjacent-distinct fixed points",
                 "stated for O_N^+ with N >= 3 only")};
  std::vector<CheckResult> out;
  const int N = ctx.group().N;
  const int legs = std::min(4, max_buildable_legs(ctx, 4));
  for (int k = 2; k <= legs; ++k) {
    const Matrix& B = ctx.basis(k).B;
    double worst = 0.0;
    // enumerate adjacent-distinct strings; check p_k |i> = |i>
    std::vector<int> digits(k, 0);
    const long long total = ctx.ambient_dim(k);
    for (long long idx = 0; idx < total; ++idx) {
      long long rest = idx;
      bool ok = true;
      int prev = -1;
      for (int pos = k - 1; pos >= 0; --pos) {
        digits[pos] = static_cast<int>(rest % N);
        rest /= N;
      }
      for (int pos = 0; pos + 1 < k; ++pos)
        if (digits[pos] == digits[pos + 1]) ok = false;
      (void)prev;
      if (!ok) continue;
      const Vector coords = B.row(idx).conjugate().transpose();
      Vector reconstructed = B * coords;
      reconstructed(idx) -= 1.0;
      worst = std::max(worst, reconstructed.norm());
    }
    std::ostringstream nm;
    nm << "p_" << k << " fixes adjacent-distinct strings";
    out.push_back(check("adjacent", nm.str(), worst, 1e-8));
  }
  return out;
}

std::vector<CheckResult> isometry_suite(const TLContext& ctx) {
  std::vector<CheckResult> out;
  for (const AdmissibleTriple& t : triple_grid(ctx, 5)) {
    const Matrix a = ctx.cg_isometry(t).matrix;
    const double dev =
        (a.adjoint() * a - Matrix::Identity(a.cols(), a.cols())).cwiseAbs().maxCoeff();
    out.push_back(check("isometry", "alpha" + triple_name(t), dev, 1e-8));
  }
  return out;
}

std::vector<CheckResult> bistochastic_suite(const TLContext& ctx) {
  std::vector<CheckResult> out;
  for (const AdmissibleTriple& t : triple_grid(ctx, 5)) {
    for (Traced traced : {Traced::Left, Traced::Right}) {
      const TLChannel ch = build_channel(ctx, t, traced);
      const Matrix outB =
          apply_channel(ch, Matrix::Identity(ch.dA, ch.dA) / static_cast<double>(ch.dA));
      const double dev =
          (outB - Matrix::Identity(ch.dB, ch.dB) / static_cast<double>(ch.dB))
              .cwiseAbs()
              .maxCoeff();
      const std::string nm = std::string("Phi") + triple_name(t) +
                             (traced == Traced::Left ? " traced left" : " traced right");
      out.push_back(check("bistochastic", nm, dev, 1e-10));
    }
  }
  return out;
}

std::vector<CheckResult> choi_suite(const TLContext& ctx) {
  std::vector<CheckResult> out;
  for (const AdmissibleTriple& t : triple_grid(ctx, 5)) {
    for (Traced traced : {Traced::Left, Traced::Right}) {
      const std::string nm = std::string("Choi Phi") + triple_name(t) +
                             (traced == Traced::Left ? " traced left" : " traced right");
      const int vertex_legs = (traced == Traced::Left ? t.m : t.l) + t.k;
      if (static_cast<std::size_t>(ctx.ambient_dim(vertex_legs)) > ctx.max_ambient() ||
          static_cast<std::size_t>(ctx.ambient_dim(2 * t.k)) > ctx.max_ambient()) {
        out.push_back(skip("choi", nm, "comparison isometry over ambient budget"));
        continue;
      }
      const TLChannel ch = build_channel(ctx, t, traced);
      const ChoiTheoremCheck res = choi_theorem_check(ctx, ch);
      if (res.rank != ch.dE) {
        std::ostringstream os;
        os << "Choi rank " << res.rank << " differs from dim_irrep = " << ch.dE;
        out.push_back(
            CheckResult{"choi", nm, Status::Fail, static_cast<double>(res.rank), os.str()});
      } else {
        out.push_back(check("choi", nm, res.frobenius_deviation, 1e-8));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<AdmissibleTriple> triple_grid(const TLContext& ctx, int max_lm) {
  std::vector<AdmissibleTriple> grid;
  for (int l = 0; l <= max_lm; ++l)
    for (int m = 0; m + l <= max_lm; ++m) {
      if (static_cast<std::size_t>(ctx.ambient_dim(l + m)) > ctx.max_ambient()) continue;
      for (int k = std::abs(l - m); k <= l + m; k += 2) {
        if (k == 0 && l == 0 && m == 0) continue;
        grid.push_back(AdmissibleTriple::make(k, l, m));
      }
    }
  return grid;
}

std::vector<std::string> available_suites() {
  return {"snake", "loop", "projector", "jwcups", "adjacent", "isometry", "bistochastic", "choi"};
}

std::vector<CheckResult> run_suite(const TLContext& ctx, const std::string& suite) {
  if (suite == "snake") return snake_suite(ctx);
  if (suite == "loop") return loop_suite(ctx);
  if (suite == "projector") return projector_suite(ctx);
  if (suite == "jwcups") return jwcups_suite(ctx);
  if (suite == "adjacent") return adjacent_suite(ctx);
  if (suite == "isometry") return isometry_suite(ctx);
  if (suite == "bistochastic") return bistochastic_suite(ctx);
  if (suite == "choi") return choi_suite(ctx);
  throw InvalidInputError("unknown suite: " + suite);
}

std::vector<CheckResult> run_all_suites(const TLContext& ctx) {
  std::vector<CheckResult> out;
  for (const std::string& s : available_suites()) {
    auto part = run_suite(ctx, s);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace tlchan
