#include "tlchan/structure.hpp"

#include <cmath>

namespace tlchan {

PPTClass classify_ppt(double min_eigenvalue, double accept_tol, double reject_tol) {
  if (min_eigenvalue >= -accept_tol) return PPTClass::PPT;
  if (min_eigenvalue < -reject_tol) return PPTClass::NotPPT;
  return PPTClass::Indeterminate;
}

Matrix partial_transpose(const Matrix& m, int d_first, int d_second, PTFactor factor) {
  if (m.rows() != static_cast<Eigen::Index>(d_first) * d_second || m.cols() != m.rows())
    throw DimensionError("partial_transpose: dimension mismatch");
  Matrix out(m.rows(), m.cols());
  for (int a = 0; a < d_first; ++a)
    for (int b = 0; b < d_second; ++b)
      for (int c = 0; c < d_first; ++c)
        for (int d = 0; d < d_second; ++d) {
          if (factor == PTFactor::First)
            out(c * d_second + b, a * d_second + d) = m(a * d_second + b, c * d_second + d);
          else
            out(a * d_second + d, c * d_second + b) = m(a * d_second + b, c * d_second + d);
        }
  return out;
}

PPTReport ppt_check(const TLChannel& ch, double tol) {
  const Matrix c = choi(ch, true);
  const Matrix pt = partial_transpose(c, ch.dB, ch.dA, PTFactor::First);
  Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
  const double mn = es.eigenvalues().minCoeff();
  return PPTReport{mn, mn >= -tol, tol};
}

double ebt_submatrix_witness(const TLChannel& ch, const Vector& v1, const Vector& v2) {
  const Eigen::Index d = static_cast<Eigen::Index>(ch.dB) * ch.dA;
  if (v1.size() != d || v2.size() != d)
    throw DimensionError("ebt_submatrix_witness: vectors have wrong dimension");
  if (std::abs(v1.norm() - 1.0) > 1e-8 || std::abs(v2.norm() - 1.0) > 1e-8 ||
      std::abs(v1.dot(v2)) > 1e-8)
    throw InvalidInputError("ebt_submatrix_witness: v1, v2 must be orthonormal");
  const Matrix c = choi(ch, true);
  const Matrix pt = partial_transpose(c, ch.dB, ch.dA, PTFactor::First);
  const double a = (v1.dot(pt * v1)).real();
  const double cc = (v2.dot(pt * v2)).real();
  const cplx b = v1.dot(pt * v2);
  return a * cc - std::norm(b);
}

std::pair<Vector, Vector> ebt_witness_pair(const TLChannel& ch) {
  if (ch.group.kind != GroupKind::SU2)
    throw InvalidInputError("ebt_witness_pair: SU(2) case analysis only");
  const int k = ch.triple.k, l = ch.triple.l, m = ch.triple.m;
  const int dA = ch.dA, dB = ch.dB;
  auto basis_vec = [&](int ib, int ia) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dB) * dA);
    v(static_cast<Eigen::Index>(ib) * dA + ia) = 1.0;
    return v;
  };
  if (ch.traced == Traced::Right) {
    // Choi on H_l (x) H_k
    if (k > l) return {basis_vec(l, 0), basis_vec(0, l)};
    return {basis_vec(l, 0), basis_vec(l - k, k)};
  }
  // traced Left: Choi on H_m (x) H_k
  if (k > l - m && k <= m) return {basis_vec(m, 0), basis_vec(m - k, k)};
  return {basis_vec(m, 0), basis_vec(0, m)};
}

Matrix random_su2(std::uint64_t seed, std::uint64_t index) {
  auto gen = rng_stream(seed, index);
  std::normal_distribution<double> normal(0.0, 1.0);
  double a = normal(gen), b = normal(gen), c = normal(gen), d = normal(gen);
  const double nrm = std::sqrt(a * a + b * b + c * c + d * d);
  a /= nrm;
  b /= nrm;
  c /= nrm;
  d /= nrm;
  Matrix g(2, 2);
  g(0, 0) = cplx(a, b);
  g(0, 1) = cplx(c, d);
  g(1, 0) = cplx(-c, d);
  g(1, 1) = cplx(a, -b);
  return g;
}

HaarAverageResult haar_average_state(const TLContext& ctx, int l, int m, int samples,
                                     std::uint64_t seed) {
  if (ctx.group().kind != GroupKind::SU2)
    throw InvalidInputError("haar_average_state: SU(2) only");
  if (l < m) throw InvalidInputError("haar_average_state: requires l >= m");
  if (samples <= 0) throw InvalidInputError("haar_average_state: samples must be positive");
  const AdmissibleTriple t = AdmissibleTriple::make(l, m, l - m);
  const LabeledOperator alpha = ctx.cg_isometry(t);  // H_l -> H_m (x) H_{l-m}
  const int dm = static_cast<int>(dim_irrep(m, ctx.group()));
  const int dlm = static_cast<int>(dim_irrep(l - m, ctx.group()));

  // Product vector e (x) f inside H_l: the image of the top reduced basis
  // vector; must have Schmidt rank 1.
  const Vector top = alpha.matrix.col(0);
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> topm(
      top.data(), dm, dlm);
  Eigen::JacobiSVD<Matrix> svd(topm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues().size() > 1 && svd.singularValues()(1) > 1e-8)
    throw NumericalError("haar_average_state: top vector is not a product vector");
  const Vector e = svd.matrixU().col(0);
  const Vector f = svd.matrixV().col(0).conjugate() * svd.singularValues()(0);

  std::vector<Matrix> terms(samples);
  parallel_for(samples, [&](std::int64_t s) {
    const Matrix g = random_su2(seed, s);
    const Matrix um = ctx.su2_rep(m, g);
    const Matrix ul = ctx.su2_rep(l - m, g);
    const Vector ve = um.adjoint() * e;  // pi_m(g^{-1}) e
    const Vector vf = ul.adjoint() * f;
    terms[s] = kron(ve * ve.adjoint(), vf * vf.adjoint());
  });
  Matrix avg = Matrix::Zero(static_cast<Eigen::Index>(dm) * dlm, static_cast<Eigen::Index>(dm) * dlm);
  for (const Matrix& t_s : terms) avg += t_s;
  avg /= static_cast<double>(samples);

  const double dl = static_cast<double>(dim_irrep(l, ctx.group()));
  const Matrix target = alpha.matrix * alpha.matrix.adjoint() / dl;
  const double distance = (avg - target).norm();
  return HaarAverageResult{std::move(avg), distance};
}

double verify_degrading_identity(const TLContext& ctx, int l, int m) {
  if (ctx.group().kind != GroupKind::SU2)
    throw InvalidInputError("verify_degrading_identity: SU(2) only");
  if (l < m) throw InvalidInputError("verify_degrading_identity: requires l >= m");
  const TLChannel top = build_channel(ctx, AdmissibleTriple::make(l + m, l, m), Traced::Right);
  const TLChannel degrading =
      build_channel(ctx, AdmissibleTriple::make(l, m, l - m), Traced::Right);
  const TLChannel target = build_channel(ctx, AdmissibleTriple::make(l + m, m, l), Traced::Right);
  const std::vector<Matrix> composed = compose(kraus_operators(degrading), top);
  const Matrix lhs = choi_of_kraus(composed, top.dA, true);
  const Matrix rhs = choi(target, true);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

int range_dimension(const TLChannel& ch, double tol) {
  Matrix super(static_cast<Eigen::Index>(ch.dB) * ch.dB, static_cast<Eigen::Index>(ch.dA) * ch.dA);
  Matrix eij = Matrix::Zero(ch.dA, ch.dA);
  for (int i = 0; i < ch.dA; ++i)
    for (int j = 0; j < ch.dA; ++j) {
      eij(i, j) = 1.0;
      const Matrix out = apply_channel(ch, eij);
      eij(i, j) = 0.0;
      for (int a = 0; a < ch.dB; ++a)
        for (int b = 0; b < ch.dB; ++b)
          super(static_cast<Eigen::Index>(a) * ch.dB + b, static_cast<Eigen::Index>(i) * ch.dA + j) =
              out(a, b);
    }
  Eigen::JacobiSVD<Matrix> svd(super);
  const RealVector sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cut = tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return rank;
}

double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

}  // namespace tlchan
