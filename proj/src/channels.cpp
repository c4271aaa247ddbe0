#include "tlchan/channels.hpp"

#include <sstream>

namespace tlchan {

void DensityMatrix::validate(double tol) const {
  if (rho.rows() != rho.cols()) throw DimensionError("DensityMatrix: not square");
  long long d = 1;
  for (int f : dims) d *= f;
  if (d != rho.rows()) throw DimensionError("DensityMatrix: factor dims do not match size");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw NumericalError("DensityMatrix: not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > tol)
    throw NumericalError("DensityMatrix: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw NumericalError("DensityMatrix: negative eigenvalue beyond tolerance");
}

DensityMatrix DensityMatrix::checked(Matrix rho, std::vector<int> dims, double tol) {
  DensityMatrix out{std::move(rho), std::move(dims)};
  out.validate(tol);
  return out;
}

TLChannel build_channel(const TLContext& ctx, const AdmissibleTriple& t, Traced traced) {
  LabeledOperator alpha = ctx.cg_isometry(t);
  const int dk = static_cast<int>(alpha.matrix.cols());
  const int dl = static_cast<int>(dim_irrep(t.l, ctx.group()));
  const int dm = static_cast<int>(dim_irrep(t.m, ctx.group()));

  TLChannel ch;
  ch.group = ctx.group();
  ch.triple = t;
  ch.traced = traced;
  ch.dA = dk;
  if (traced == Traced::Right) {
    // environment = m factor; alpha already ordered (l, m) = (B, E)
    ch.dB = dl;
    ch.dE = dm;
    ch.V = std::move(alpha.matrix);
  } else {
    // environment = l factor; reorder codomain to (m, l)
    ch.dB = dm;
    ch.dE = dl;
    ch.V.resize(static_cast<Eigen::Index>(dl) * dm, dk);
    for (int b = 0; b < dm; ++b)
      for (int e = 0; e < dl; ++e)
        ch.V.row(static_cast<Eigen::Index>(b) * dl + e) =
            alpha.matrix.row(static_cast<Eigen::Index>(e) * dm + b);
  }
  return ch;
}

TLChannel complementary(const TLChannel& ch) {
  TLChannel out = ch;
  out.traced = ch.traced == Traced::Right ? Traced::Left : Traced::Right;
  out.dB = ch.dE;
  out.dE = ch.dB;
  out.V.resize(static_cast<Eigen::Index>(ch.dB) * ch.dE, ch.dA);
  for (int b = 0; b < ch.dB; ++b)
    for (int e = 0; e < ch.dE; ++e)
      out.V.row(static_cast<Eigen::Index>(e) * ch.dB + b) =
          ch.V.row(static_cast<Eigen::Index>(b) * ch.dE + e);
  return out;
}

std::vector<Matrix> kraus_operators(const TLChannel& ch) {
  std::vector<Matrix> ks(ch.dE);
  for (int e = 0; e < ch.dE; ++e) {
    Matrix k(ch.dB, ch.dA);
    for (int b = 0; b < ch.dB; ++b) k.row(b) = ch.V.row(static_cast<Eigen::Index>(b) * ch.dE + e);
    ks[e] = std::move(k);
  }
  return ks;
}

Matrix apply_channel(const TLChannel& ch, const Matrix& rho) {
  if (rho.rows() != ch.dA || rho.cols() != ch.dA)
    throw DimensionError("apply: input state has wrong dimension");
  Matrix out = Matrix::Zero(ch.dB, ch.dB);
  for (int e = 0; e < ch.dE; ++e) {
    Matrix k(ch.dB, ch.dA);
    for (int b = 0; b < ch.dB; ++b) k.row(b) = ch.V.row(static_cast<Eigen::Index>(b) * ch.dE + e);
    out.noalias() += k * rho * k.adjoint();
  }
  return out;
}

DensityMatrix apply_channel(const TLChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix{apply_channel(ch, rho.rho), {ch.dB}};
}

Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& rho) {
  if (kraus.empty()) throw InvalidInputError("apply_kraus: empty Kraus list");
  Matrix out = Matrix::Zero(kraus[0].rows(), kraus[0].rows());
  for (const Matrix& k : kraus) {
    if (k.cols() != rho.rows()) throw DimensionError("apply_kraus: dimension mismatch");
    out.noalias() += k * rho * k.adjoint();
  }
  return out;
}

std::vector<Matrix> compose(const std::vector<Matrix>& second, const TLChannel& first) {
  if (second.empty()) throw InvalidInputError("compose: empty Kraus list");
  if (second[0].cols() != first.dB)
    throw DimensionError("compose: inner dimensions do not match");
  std::vector<Matrix> ks;
  ks.reserve(second.size() * first.dE);
  for (const Matrix& k1 : kraus_operators(first))
    for (const Matrix& k2 : second) ks.push_back(k2 * k1);
  Matrix comp = Matrix::Zero(first.dA, first.dA);
  for (const Matrix& k : ks) comp.noalias() += k.adjoint() * k;
  if ((comp - Matrix::Identity(first.dA, first.dA)).cwiseAbs().maxCoeff() > 1e-8)
    throw NumericalError("compose: Kraus completeness violated");
  return ks;
}

ProductChannel tensor(const TLChannel& ch1, const TLChannel& ch2) {
  const long long din = static_cast<long long>(ch1.dA) * ch2.dA;
  const long long dmid = static_cast<long long>(ch1.dB) * ch2.dA;
  const long long dout = static_cast<long long>(ch1.dB) * ch2.dB;
  if (din > 4096 || dmid > 4096 || dout > 4096)
    throw ResourceCapError("tensor: product dimensions exceed cap");
  return ProductChannel{ch1, ch2};
}

Matrix apply_channel(const ProductChannel& ch, const Matrix& rho) {
  const int a1 = ch.first.dA, a2 = ch.second.dA;
  const int b1 = ch.first.dB, b2 = ch.second.dB;
  if (rho.rows() != static_cast<Eigen::Index>(a1) * a2 || rho.cols() != rho.rows())
    throw DimensionError("apply: product input state has wrong dimension");
  // factor 1
  Matrix mid = Matrix::Zero(static_cast<Eigen::Index>(b1) * a2, static_cast<Eigen::Index>(b1) * a2);
  const Matrix id2 = Matrix::Identity(a2, a2);
  for (const Matrix& k : kraus_operators(ch.first)) {
    const Matrix ke = kron(k, id2);
    mid.noalias() += ke * rho * ke.adjoint();
  }
  // factor 2
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(b1) * b2, static_cast<Eigen::Index>(b1) * b2);
  const Matrix id1 = Matrix::Identity(b1, b1);
  for (const Matrix& k : kraus_operators(ch.second)) {
    const Matrix ke = kron(id1, k);
    out.noalias() += ke * mid * ke.adjoint();
  }
  return out;
}

DensityMatrix apply_channel(const ProductChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix{apply_channel(ch, rho.rho), {ch.first.dB, ch.second.dB}};
}

Matrix choi_factor(const TLChannel& ch, bool normalized) {
  Matrix t(static_cast<Eigen::Index>(ch.dB) * ch.dA, ch.dE);
  for (int b = 0; b < ch.dB; ++b)
    for (int i = 0; i < ch.dA; ++i)
      for (int e = 0; e < ch.dE; ++e)
        t(static_cast<Eigen::Index>(b) * ch.dA + i, e) =
            ch.V(static_cast<Eigen::Index>(b) * ch.dE + e, i);
  if (normalized) t /= std::sqrt(static_cast<double>(ch.dA));
  return t;
}

Matrix choi(const TLChannel& ch, bool normalized) {
  const long long d = static_cast<long long>(ch.dB) * ch.dA;
  if (d > 4096) throw ResourceCapError("choi: dense Choi matrix too large; use choi_factor");
  const Matrix t = choi_factor(ch, normalized);
  return t * t.adjoint();
}

Matrix choi_of_kraus(const std::vector<Matrix>& kraus, int dA, bool normalized) {
  if (kraus.empty()) throw InvalidInputError("choi_of_kraus: empty Kraus list");
  const int dB = static_cast<int>(kraus[0].rows());
  const long long d = static_cast<long long>(dB) * dA;
  if (d > 4096) throw ResourceCapError("choi_of_kraus: dense Choi matrix too large");
  Matrix c = Matrix::Zero(d, d);
  for (const Matrix& k : kraus) {
    // contribution of sum_ij (K e_ij K^*) (x) e_ij as a Gram term
    Matrix t(d, 1);
    for (int b = 0; b < dB; ++b)
      for (int i = 0; i < dA; ++i) t(static_cast<Eigen::Index>(b) * dA + i, 0) = k(b, i);
    c.noalias() += t * t.adjoint();
  }
  if (normalized) c /= static_cast<double>(dA);
  return c;
}

Matrix duality_unitary(const TLContext& ctx, int k) {
  const Matrix cup = ctx.three_vertex(AdmissibleTriple::make(0, k, k)).matrix;
  const int d = static_cast<int>(dim_irrep(k, ctx.group()));
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cup(static_cast<Eigen::Index>(i) * d + j, 0);
  const double dev = (m * m.adjoint() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > 1e-8)
    throw NumericalError("duality_unitary: covariant cup matrix is not unitary");
  return m;
}

Matrix covariant_choi_projector(const TLContext& ctx, const TLChannel& ch) {
  const AdmissibleTriple& t = ch.triple;
  // Left-traced: projector of alpha_l^{m,k} on H_m (x) H_k.
  // Right-traced: projector of alpha_m^{k,l} on H_k (x) H_l.
  const AdmissibleTriple vertex = ch.traced == Traced::Left
                                      ? AdmissibleTriple::make(t.l, t.m, t.k)
                                      : AdmissibleTriple::make(t.m, t.k, t.l);
  const Matrix a = ctx.cg_isometry(vertex).matrix;
  return a * a.adjoint() / static_cast<double>(ch.dE);
}

Matrix choi_covariant_form(const TLContext& ctx, const TLChannel& ch) {
  const Matrix c = choi(ch, true);
  const Matrix m = duality_unitary(ctx, ch.triple.k);
  if (ch.traced == Traced::Left) {
    // (1 (x) M^T) C (1 (x) M^T)^* on H_B (x) H_A
    const Matrix tw = kron(Matrix::Identity(ch.dB, ch.dB), m.transpose());
    return tw * c * tw.adjoint();
  }
  // bend to the left: (M (x) 1) swap(C) (M (x) 1)^* on H_A (x) H_B
  const Matrix swapped = swap_factors(c, ch.dB, ch.dA);
  const Matrix tw = kron(m, Matrix::Identity(ch.dB, ch.dB));
  return tw * swapped * tw.adjoint();
}

ChoiTheoremCheck choi_theorem_check(const TLContext& ctx, const TLChannel& ch) {
  const Matrix t = choi_factor(ch, true);  // (dB dA) x dE
  const Matrix m = duality_unitary(ctx, ch.triple.k);
  Matrix tw(t.rows(), t.cols());
  using RowMajorMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  for (int e = 0; e < ch.dE; ++e) {
    Eigen::Map<const RowMajorMat> te(t.col(e).data(), ch.dB, ch.dA);
    if (ch.traced == Traced::Left) {
      // rows stay (b, j): tw[(b,j),e] = sum_i t[(b,i),e] M[i,j]
      Eigen::Map<RowMajorMat> twe(tw.col(e).data(), ch.dB, ch.dA);
      twe = te * m;
    } else {
      // rows become (j, b): tw[(j,b),e] = sum_i M[j,i] t[(b,i),e]
      Eigen::Map<RowMajorMat> twe(tw.col(e).data(), ch.dA, ch.dB);
      twe = m * te.transpose();
    }
  }
  const AdmissibleTriple vertex =
      ch.traced == Traced::Left
          ? AdmissibleTriple::make(ch.triple.l, ch.triple.m, ch.triple.k)
          : AdmissibleTriple::make(ch.triple.m, ch.triple.k, ch.triple.l);
  const Matrix b = ctx.cg_isometry(vertex).matrix / std::sqrt(static_cast<double>(ch.dE));
  // || tw tw^* - b b^* ||_F: either directly when the ambient side is small,
  // or through a joint QR factor [tw b] = Q R so the difference lives on the
  // 2dE-dimensional column space. Both avoid the cancellation of the naive
  // Gram expansion.
  double dist;
  if (2 * ch.dE >= tw.rows()) {
    dist = (tw * tw.adjoint() - b * b.adjoint()).norm();
  } else {
    Matrix stacked(tw.rows(), 2 * ch.dE);
    stacked.leftCols(ch.dE) = tw;
    stacked.rightCols(ch.dE) = b;
    Eigen::HouseholderQR<Matrix> qr(stacked);
    const Matrix r = qr.matrixQR().topRows(2 * ch.dE).triangularView<Eigen::Upper>();
    const Matrix r1 = r.leftCols(ch.dE);
    const Matrix r2 = r.rightCols(ch.dE);
    dist = (r1 * r1.adjoint() - r2 * r2.adjoint()).norm();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(t.adjoint() * t, Eigen::EigenvaluesOnly);
  int rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 1e-12) ++rank;
  return ChoiTheoremCheck{dist, rank};
}

DensityMatrix covariant_state(const TLContext& ctx, int i, int k1, int k2) {
  const AdmissibleTriple t = AdmissibleTriple::make(i, k1, k2);
  LabeledOperator alpha = ctx.cg_isometry(t);
  const double di = quantum_integer(i + 1, ctx.group().q);
  Matrix rho = alpha.matrix * alpha.matrix.adjoint() / di;
  return DensityMatrix{std::move(rho),
                       {static_cast<int>(dim_irrep(k1, ctx.group())),
                        static_cast<int>(dim_irrep(k2, ctx.group()))}};
}

}  // namespace tlchan
