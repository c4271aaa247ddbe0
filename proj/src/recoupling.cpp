#include "tlchan/recoupling.hpp"

#include <algorithm>
#include <cmath>

namespace tlchan {

namespace {

int dim_of(const TLContext& ctx, int k) {
  return static_cast<int>(dim_irrep(k, ctx.group()));
}

// Y = (iota_b (x) cup_j^* (x) iota_c) (A_a^{b,j} (x) A_d^{j,c}):
// the middle rung of the tetrahedral diagram, as a (d_b d_c) x (d_a d_d) matrix.
Matrix middle_rung(const TLContext& ctx, int a, int b, int c, int d, int j) {
  const Matrix A1 = ctx.three_vertex(AdmissibleTriple::make(a, b, j)).matrix;  // (d_b d_j) x d_a
  const Matrix A2 = ctx.three_vertex(AdmissibleTriple::make(d, j, c)).matrix;  // (d_j d_c) x d_d
  const Matrix cup = ctx.three_vertex(AdmissibleTriple::make(0, j, j)).matrix; // (d_j d_j) x 1
  const int da = dim_of(ctx, a), db = dim_of(ctx, b), dc = dim_of(ctx, c), dd = dim_of(ctx, d),
            dj = dim_of(ctx, j);

  Matrix q(dj, dj);
  for (int j1 = 0; j1 < dj; ++j1)
    for (int j2 = 0; j2 < dj; ++j2) q(j1, j2) = cup(static_cast<Eigen::Index>(j1) * dj + j2, 0);

  // contract the first vertex with the conjugated cup over its j leg
  Matrix a1p(static_cast<Eigen::Index>(db) * dj, da);
  for (int beta = 0; beta < db; ++beta) {
    const Matrix blk = A1.middleRows(static_cast<Eigen::Index>(beta) * dj, dj);  // d_j x d_a
    a1p.middleRows(static_cast<Eigen::Index>(beta) * dj, dj) = q.adjoint() * blk;
  }

  Matrix y(static_cast<Eigen::Index>(db) * dc, static_cast<Eigen::Index>(da) * dd);
  for (int beta = 0; beta < db; ++beta)
    for (int gamma = 0; gamma < dc; ++gamma)
      for (int alpha = 0; alpha < da; ++alpha)
        for (int delta = 0; delta < dd; ++delta) {
          cplx acc = 0.0;
          for (int j2 = 0; j2 < dj; ++j2)
            acc += a1p(static_cast<Eigen::Index>(beta) * dj + j2, alpha) *
                   A2(static_cast<Eigen::Index>(j2) * dc + gamma, delta);
          y(static_cast<Eigen::Index>(beta) * dc + gamma,
            static_cast<Eigen::Index>(alpha) * dd + delta) = acc;
        }
  return y;
}

}  // namespace

bool tet_admissible(int a, int b, int i, int c, int d, int j) {
  return is_admissible(a, d, i) && is_admissible(b, c, i) && is_admissible(a, b, j) &&
         is_admissible(d, c, j);
}

Matrix tet_composite(const TLContext& ctx, int a, int b, int i, int c, int d, int j) {
  if (!tet_admissible(a, b, i, c, d, j))
    throw AdmissibilityError("tet_composite: sextuple outside the admissible set");
  const Matrix bottom = ctx.three_vertex(AdmissibleTriple::make(i, a, d)).matrix;
  return middle_rung(ctx, a, b, c, d, j) * bottom;  // (d_b d_c) x d_i
}

double tet_net(const TLContext& ctx, int a, int b, int i, int c, int d, int j) {
  if (!tet_admissible(a, b, i, c, d, j))
    throw AdmissibilityError("tet_net: sextuple outside the admissible set");
  const Matrix top = ctx.three_vertex(AdmissibleTriple::make(i, b, c)).matrix;  // (d_b d_c) x d_i
  const Matrix m = top.adjoint() * tet_composite(ctx, a, b, i, c, d, j);        // d_i x d_i
  const cplx tr = m.trace();
  if (std::abs(tr.imag()) > 1e-8 * std::max(1.0, std::abs(tr.real())))
    throw NumericalError("tet_net: trace has a non-negligible imaginary part");
  return tr.real();
}

double six_j(const TLContext& ctx, int a, int b, int i, int c, int d, int j) {
  const double q = ctx.group().q;
  const double tet = tet_net(ctx, a, b, i, c, d, j);
  const double scale = std::log(quantum_integer(i + 1, q)) - theta_net_log(a, d, i, q) -
                       theta_net_log(b, c, i, q);
  return tet * std::exp(scale);
}

Matrix hom_basis_vertical(const TLContext& ctx, int a, int b, int c, int d, int i) {
  const Matrix top = ctx.three_vertex(AdmissibleTriple::make(i, b, c)).matrix;
  const Matrix bottom = ctx.three_vertex(AdmissibleTriple::make(i, a, d)).matrix;
  return top * bottom.adjoint();  // (d_b d_c) x (d_a d_d)
}

Matrix hom_basis_horizontal(const TLContext& ctx, int a, int b, int c, int d, int j) {
  const Matrix A1 = ctx.three_vertex(AdmissibleTriple::make(a, b, j)).matrix;  // (d_b d_j) x d_a
  const Matrix A2 = ctx.three_vertex(AdmissibleTriple::make(c, j, d)).matrix;  // (d_j d_d) x d_c
  const int da = dim_of(ctx, a), db = dim_of(ctx, b), dc = dim_of(ctx, c), dd = dim_of(ctx, d),
            dj = dim_of(ctx, j);
  Matrix w(static_cast<Eigen::Index>(db) * dc, static_cast<Eigen::Index>(da) * dd);
  for (int beta = 0; beta < db; ++beta)
    for (int gamma = 0; gamma < dc; ++gamma)
      for (int alpha = 0; alpha < da; ++alpha)
        for (int delta = 0; delta < dd; ++delta) {
          cplx acc = 0.0;
          for (int jj = 0; jj < dj; ++jj)
            acc += A1(static_cast<Eigen::Index>(beta) * dj + jj, alpha) *
                   std::conj(A2(static_cast<Eigen::Index>(jj) * dd + delta, gamma));
          w(static_cast<Eigen::Index>(beta) * dc + gamma,
            static_cast<Eigen::Index>(alpha) * dd + delta) = acc;
        }
  return w;
}

SpectrumReport tensor_output_spectrum_formula(const TLContext& ctx, int i,
                                              const AdmissibleTriple& t1,
                                              const AdmissibleTriple& t2) {
  if (!is_admissible(i, t1.k, t2.k))
    throw AdmissibilityError("tensor_output_spectrum: (i, k1, k2) not admissible");
  const double q = ctx.group().q;
  const int k1 = t1.k, l1 = t1.l, m1 = t1.m;
  const int k2 = t2.k, l2 = t2.l, m2 = t2.m;

  SpectrumReport report;
  report.source = SpectrumSource::Formula;
  report.total_trace = 0.0;

  // For the antisymmetric F the snake equation carries sgn(d) = -1, and the
  // recoupling moves pick up cap-orientation signs relative to the planar
  // calculus in which the closed-form expression is derived: a factor
  // (-1)^{j/2} inside the j-sum and a global (-1)^{m1+m2+r_i+r_1+r_2}.
  // Both are trivial for O_N^+ and were pinned against the brute-force
  // oracle over the full small-label grid.
  const bool twisted = ctx.group().kind == GroupKind::SU2;
  const int global_exp = m1 + m2 + (k1 + k2 - i) / 2 + t1.r + t2.r;
  const double global_sign = (twisted && global_exp % 2 == 1) ? -1.0 : 1.0;

  for (int l = std::abs(m1 - l2); l <= m1 + l2; l += 2) {
    if (!is_admissible(l, m1, l2)) continue;
    // The [i+1]_q in the published prefactor cancels against the covariant
    // state normalization rho_i = alpha alpha^*/[i+1]_q; the brute-force
    // oracle pins the prefactor without it.
    const double pref_log =
        std::log(quantum_integer(k1 + 1, q)) + std::log(quantum_integer(k2 + 1, q)) +
        theta_net_log(l, m1, l2, q) - std::log(quantum_integer(l + 1, q)) -
        theta_net_log(k1, l1, m1, q) - theta_net_log(k2, l2, m2, q) -
        theta_net_log(i, k1, k2, q);
    double sum = 0.0;
    for (int j = 0; j <= 2 * std::min(k1, k2); j += 2) {
      if (!is_admissible(j, m1, m1) || !is_admissible(j, l2, l2)) continue;
      if (!tet_admissible(k1, k2, j, k2, k1, i)) continue;
      if (!tet_admissible(l1, m1, m1, j, k1, k1)) continue;
      if (!tet_admissible(k2, j, l2, l2, m2, k2)) continue;
      if (!tet_admissible(m1, m1, l, l2, l2, j)) continue;
      const double sign = (twisted && (j / 2) % 2 == 1) ? -1.0 : 1.0;
      const double term = sign * six_j(ctx, k1, k2, j, k2, k1, i) *
                          tet_net(ctx, l1, m1, m1, j, k1, k1) *
                          tet_net(ctx, k2, j, l2, l2, m2, k2) *
                          six_j(ctx, m1, m1, l, l2, l2, j) /
                          (theta_net(m1, m1, j, q) * theta_net(l2, j, l2, q));
      sum += term;
    }
    const double lambda = global_sign * std::exp(pref_log) * sum;
    const long long mult = dim_irrep(l, ctx.group());
    report.entries.push_back(SpectrumEntry{l, lambda, mult});
    report.total_trace += lambda * static_cast<double>(mult);
  }
  return report;
}

Matrix tensor_output_state(const TLContext& ctx, int i, const AdmissibleTriple& t1,
                           const AdmissibleTriple& t2) {
  const DensityMatrix rho = covariant_state(ctx, i, t1.k, t2.k);
  const TLChannel ch1 = build_channel(ctx, t1, Traced::Left);
  const TLChannel ch2 = build_channel(ctx, t2, Traced::Right);
  return apply_channel(tensor(ch1, ch2), rho.rho);
}

SpectrumReport tensor_output_spectrum_bruteforce(const TLContext& ctx, int i,
                                                 const AdmissibleTriple& t1,
                                                 const AdmissibleTriple& t2) {
  const Matrix x = tensor_output_state(ctx, i, t1, t2);
  Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
  RealVector lam = es.eigenvalues();
  std::vector<double> vals(lam.data(), lam.data() + lam.size());
  std::sort(vals.begin(), vals.end(), std::greater<double>());

  SpectrumReport report;
  report.source = SpectrumSource::BruteForce;
  report.total_trace = 0.0;
  const double gap = 1e-7;

  std::vector<std::pair<double, long long>> clusters;  // (mean, count)
  std::size_t start = 0;
  for (std::size_t t = 1; t <= vals.size(); ++t) {
    if (t == vals.size() || vals[t - 1] - vals[t] > gap) {
      double mean = 0.0;
      for (std::size_t s = start; s < t; ++s) mean += vals[s];
      mean /= static_cast<double>(t - start);
      clusters.emplace_back(mean, static_cast<long long>(t - start));
      start = t;
    }
  }
  // relative gap check: adjacent cluster means must be clearly separated
  for (std::size_t c = 1; c < clusters.size(); ++c)
    if (clusters[c - 1].first - clusters[c].first < 10 * gap) report.ambiguous = true;

  // assign irrep labels by multiplicity where unambiguous
  for (const auto& [mean, count] : clusters) {
    int label = -1;
    for (int l = std::abs(t1.m - t2.l); l <= t1.m + t2.l; l += 2) {
      if (!is_admissible(l, t1.m, t2.l)) continue;
      if (dim_irrep(l, ctx.group()) == count) {
        label = l;
        break;
      }
    }
    report.entries.push_back(SpectrumEntry{label, mean, count});
    report.total_trace += mean * static_cast<double>(count);
  }
  return report;
}

AdditivityProbe additivity_probe(const TLContext& ctx, int i, const AdmissibleTriple& t1,
                                 const AdmissibleTriple& t2, const MOEStrategy& strategy) {
  const Matrix x = tensor_output_state(ctx, i, t1, t2);
  const double h = von_neumann_entropy(x);
  const TLChannel ch1 = build_channel(ctx, t1, Traced::Left);
  const TLChannel ch2 = build_channel(ctx, t2, Traced::Right);
  const double moe1 = min_output_entropy(ctx, ch1, strategy).best_entropy;
  const double moe2 = min_output_entropy(ctx, ch2, strategy).best_entropy;
  return AdditivityProbe{h, moe1, moe2, h - moe1 - moe2};
}

}  // namespace tlchan
