#include "tlchan/tlrep.hpp"

#include <cmath>
#include <sstream>

namespace tlchan {

namespace {

int as_int(long long v, const char* what) {
  if (v < 0 || v > (1LL << 30)) throw ResourceCapError(std::string(what) + ": dimension too large");
  return static_cast<int>(v);
}

long long ipow(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (1LL << 50) / base) throw ResourceCapError("ambient dimension overflow");
    out *= base;
  }
  return out;
}

// g acting on one leg of an ambient vector over N^legs.
void apply_on_leg(Vector& v, const Matrix& g, int leg, int legs, int N) {
  const long long post = ipow(N, legs - leg - 1);
  const long long pre = ipow(N, leg);
  Vector tmp(N);
  for (long long p = 0; p < pre; ++p) {
    for (long long s = 0; s < post; ++s) {
      const long long base = p * N * post + s;
      for (int a = 0; a < N; ++a) tmp(a) = v(base + a * post);
      for (int a = 0; a < N; ++a) {
        cplx acc = 0.0;
        for (int b = 0; b < N; ++b) acc += g(a, b) * tmp(b);
        v(base + a * post) = acc;
      }
    }
  }
}

}  // namespace

long long SpaceDescriptor::dim(const GroupSpec& group) const {
  if (kind == Kind::Ambient) return ipow(N, legs);
  long long d = 1;
  for (int k : labels) d *= dim_irrep(k, group);
  return d;
}

TLContext::TLContext(GroupSpec group, std::size_t max_ambient)
    : group_(group), max_ambient_(max_ambient) {
  const int N = group_.N;
  f_.perm.resize(N);
  f_.sign.assign(N, 1.0);
  if (group_.kind == GroupKind::ONPlus) {
    for (int i = 0; i < N; ++i) f_.perm[i] = i;
  } else {
    // F = [[0,1],[-1,0]]: F e_0 = -e_1, F e_1 = e_0.
    f_.perm = {1, 0};
    f_.sign = {-1.0, 1.0};
  }
}

long long TLContext::ambient_dim(int legs) const { return ipow(group_.N, legs); }

void TLContext::check_ambient(int legs, const char* what) const {
  if (static_cast<std::size_t>(ambient_dim(legs)) > max_ambient_) {
    std::ostringstream os;
    os << what << ": ambient dimension N^" << legs << " = " << ambient_dim(legs)
       << " exceeds max_ambient = " << max_ambient_;
    throw ResourceCapError(os.str());
  }
}

Vector TLContext::cup_vector() const {
  const int N = group_.N;
  Vector v = Vector::Zero(static_cast<Eigen::Index>(N) * N);
  for (int i = 0; i < N; ++i) v(static_cast<Eigen::Index>(i) * N + f_.perm[i]) = f_.sign[i];
  return v;
}

Vector TLContext::insert_nested_cups(const Vector& in, int left_legs, int r,
                                     int right_legs) const {
  const int N = group_.N;
  const long long nl = ipow(N, left_legs);
  const long long nr = ipow(N, right_legs);
  const long long ncup = ipow(N, r);
  if (in.size() != nl * nr) throw DimensionError("insert_nested_cups: input size mismatch");
  if (r == 0) return in;

  // cup^r = sum_i e_{i_1}..e_{i_r} (x) F e_{i_r}..F e_{i_1}; precompute the
  // mirrored index and sign for every cup multi-index.
  std::vector<long long> mirrored(ncup);
  std::vector<double> sign(ncup);
  for (long long i = 0; i < ncup; ++i) {
    long long rest = i, rev = 0;
    double s = 1.0;
    for (int t = 0; t < r; ++t) {
      const int digit = static_cast<int>(rest % N);  // digit t counted from the right
      rest /= N;
      // right-side legs carry F e applied in reversed order
      rev = rev * N + f_.perm[digit];
      s *= f_.sign[digit];
    }
    mirrored[i] = rev;
    sign[i] = s;
  }

  Vector out = Vector::Zero(nl * ncup * ncup * nr);
  for (long long x = 0; x < nl; ++x) {
    for (long long y = 0; y < nr; ++y) {
      const cplx val = in(x * nr + y);
      if (val == cplx(0.0)) continue;
      const long long xb = ((x * ncup) * ncup) * nr;
      for (long long i = 0; i < ncup; ++i) {
        out(xb + (i * ncup + mirrored[i]) * nr + y) += sign[i] * val;
      }
    }
  }
  return out;
}

const IrrepBasis& TLContext::basis(int k) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(k);
    if (it != cache_.end()) return *it->second;
  }
  auto built = build_basis(k);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = cache_.emplace(k, std::move(built));
  return *it->second;
}

std::shared_ptr<const IrrepBasis> TLContext::build_basis(int k) const {
  if (k < 0) throw InvalidInputError("basis: k must be >= 0");
  const int N = group_.N;
  if (k == 0) {
    Matrix b = Matrix::Ones(1, 1);
    return std::make_shared<IrrepBasis>(IrrepBasis{0, std::move(b)});
  }
  if (k == 1) {
    return std::make_shared<IrrepBasis>(IrrepBasis{1, Matrix::Identity(N, N)});
  }
  check_ambient(k, "jones_wenzl_basis");

  const Matrix& B1 = basis(k - 1).B;
  const Matrix& B2 = basis(k - 2).B;
  const int dk = as_int(dim_irrep(k, group_), "dim_irrep");
  const int dk1 = static_cast<int>(B1.cols());
  const int dk2 = static_cast<int>(B2.cols());
  const long long amb1 = ambient_dim(k - 1);
  const int dmid = dk1 * N;  // dim of H_{k-1} (x) H_1 in reduced coordinates
  if (dk != dmid - dk2)
    throw NumericalError("jones_wenzl_basis: fusion dimension mismatch");

  // Reduced embedding of H_{k-2} into H_{k-1} (x) H_1 via the cup on the
  // last two legs.
  Matrix W(dmid, dk2);
  for (int c = 0; c < dk2; ++c) {
    Vector amb = insert_nested_cups(B2.col(c), k - 2, 1, 0);
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mat(
        amb.data(), amb1, N);
    Matrix red = B1.adjoint() * mat;  // dk1 x N
    for (int s = 0; s < dk1; ++s)
      for (int t = 0; t < N; ++t) W(s * N + t, c) = red(s, t);
  }

  // Orthonormal basis of the complement (the H_k part) inside H_{k-1} (x) H_1.
  Eigen::HouseholderQR<Matrix> qr(W);
  Matrix Qfull = qr.householderQ() * Matrix::Identity(dmid, dmid);
  Matrix C = Qfull.rightCols(dk);

  // Canonical orthonormal basis: two-pass modified Gram-Schmidt over the
  // projections of ambient basis vectors taken in lexicographic order. This
  // pins the basis (up to roundoff phases) and, for SU(2), reproduces the
  // standard weight-ordered Clebsch-Gordan conventions. Candidates are
  // processed in blocks so the bulk projection runs as matrix products.
  Matrix U(dk, dk);
  int found = 0;
  const long long ambk = ambient_dim(k);
  const int block = 128;
  for (long long i0 = 0; i0 < ambk && found < dk; i0 += block) {
    const int bsize = static_cast<int>(std::min<long long>(block, ambk - i0));
    Matrix V(dk, bsize);
    for (int bcol = 0; bcol < bsize; ++bcol) {
      const long long i = i0 + bcol;
      const long long iprime = i / N;
      const int t = static_cast<int>(i % N);
      Vector x = B1.row(iprime).conjugate().transpose();  // B_{k-1}^* e_{i'}
      Eigen::Map<const Matrix, 0, Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>> slice(
          C.data() + t, dk1, dk,
          Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>(dmid, N));
      V.col(bcol) = slice.adjoint() * x;
    }
    const int base = found;
    if (base > 0)
      for (int pass = 0; pass < 2; ++pass)
        V.noalias() -= U.leftCols(base) * (U.leftCols(base).adjoint() * V);
    for (int bcol = 0; bcol < bsize && found < dk; ++bcol) {
      Vector v = V.col(bcol);
      for (int pass = 0; pass < 2; ++pass)
        for (int j = base; j < found; ++j) v -= U.col(j).dot(v) * U.col(j);
      const double nrm = v.norm();
      if (nrm > 1e-6) {
        U.col(found++) = v / nrm;
      }
    }
  }
  if (found != dk)
    throw NumericalError("jones_wenzl_basis: extracted rank differs from dim_irrep(k)");

  Matrix M = C * U;  // dmid x dk, columns = basis of H_k in reduced coords
  Matrix B(ambk, dk);
  for (int t = 0; t < N; ++t) {
    Matrix Mt(dk1, dk);
    for (int s = 0; s < dk1; ++s) Mt.row(s) = M.row(s * N + t);
    Matrix Bt = B1 * Mt;  // amb1 x dk
    for (long long ip = 0; ip < amb1; ++ip) B.row(ip * N + t) = Bt.row(ip);
  }
  return std::make_shared<IrrepBasis>(IrrepBasis{k, std::move(B)});
}

Matrix TLContext::jones_wenzl_projector(int k) const {
  const long long amb = ambient_dim(k);
  if (amb > 4096)
    throw ResourceCapError("jones_wenzl_projector: dense projector too large to materialize");
  const Matrix& B = basis(k).B;
  return B * B.adjoint();
}

Matrix TLContext::build_three_vertex(const AdmissibleTriple& t) const {
  check_ambient(t.l + t.m, "three_vertex");
  const Matrix& Bk = basis(t.k).B;
  const Matrix& Bl = basis(t.l).B;
  const Matrix& Bm = basis(t.m).B;
  const int dk = static_cast<int>(Bk.cols());
  const int dl = static_cast<int>(Bl.cols());
  const int dm = static_cast<int>(Bm.cols());
  const int N = group_.N;
  // r = 0 with a trivial leg reduces to a plain basis change
  if (t.r == 0 && t.l == 0) return Bm.adjoint() * Bk;
  if (t.r == 0 && t.m == 0) return Bl.adjoint() * Bk;
  const long long ambl = ambient_dim(t.l);
  const long long nl = ambient_dim(t.l - t.r);
  const long long nr = ambient_dim(t.m - t.r);
  const long long ncup = ambient_dim(t.r);

  // cup multi-index bookkeeping as in insert_nested_cups
  std::vector<long long> mirrored(ncup);
  std::vector<double> sign(ncup);
  for (long long i = 0; i < ncup; ++i) {
    long long rest = i, rev = 0;
    double s = 1.0;
    for (int step = 0; step < t.r; ++step) {
      const int digit = static_cast<int>(rest % N);
      rest /= N;
      rev = rev * N + f_.perm[digit];
      s *= f_.sign[digit];
    }
    mirrored[i] = rev;
    sign[i] = s;
  }
  Matrix A(static_cast<Eigen::Index>(dl) * dm, dk);
  Matrix gathered(ambl, dm);  // rows indexed by the l-side ambient index
  for (int c = 0; c < dk; ++c) {
    // (i^{l-r} (x) cup^r (x) i^{m-r}) applied to the basis column, kept as
    // nonzeros (l-row, m-row, value); at most N^{k+r} of them
    gathered.setZero();
    for (long long x = 0; x < nl; ++x) {
      for (long long y = 0; y < nr; ++y) {
        const cplx val = Bk(x * nr + y, c);
        if (val == cplx(0.0)) continue;
        for (long long i = 0; i < ncup; ++i) {
          const long long row_l = x * ncup + i;
          const long long row_m = mirrored[i] * nr + y;
          gathered.row(row_l) += (sign[i] * val) * Bm.row(row_m).conjugate();
        }
      }
    }
    Matrix red = Bl.adjoint() * gathered;  // dl x dm
    for (int a = 0; a < dl; ++a)
      for (int b = 0; b < dm; ++b) A(static_cast<Eigen::Index>(a) * dm + b, c) = red(a, b);
  }
  if (A.norm() < 1e-10)
    throw NumericalError("three_vertex: vanishing intertwiner (degenerate basis)");
  return A;
}

LabeledOperator TLContext::three_vertex(const AdmissibleTriple& t) const {
  const std::array<int, 3> key{t.k, t.l, t.m};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = vertex_cache_.find(key);
    if (it != vertex_cache_.end())
      return LabeledOperator{*it->second, SpaceDescriptor::irrep(t.k),
                             SpaceDescriptor::irreps({t.l, t.m})};
  }
  auto built = std::make_shared<const Matrix>(build_three_vertex(t));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = vertex_cache_.emplace(key, std::move(built));
  return LabeledOperator{*it->second, SpaceDescriptor::irrep(t.k),
                         SpaceDescriptor::irreps({t.l, t.m})};
}

LabeledOperator TLContext::cg_isometry(const AdmissibleTriple& t) const {
  LabeledOperator op = three_vertex(t);
  const double scale_log =
      0.5 * (std::log(quantum_integer(t.k + 1, group_.q)) - theta_net_log(t, group_.q));
  op.matrix *= std::exp(scale_log);
  const std::array<int, 3> key{t.k, t.l, t.m};
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (isometry_checked_.count(key)) return op;
  }
  const int dk = static_cast<int>(op.matrix.cols());
  const Matrix gram = op.matrix.adjoint() * op.matrix;
  const double dev = (gram - Matrix::Identity(dk, dk)).cwiseAbs().maxCoeff();
  if (dev > 1e-8) {
    std::ostringstream os;
    os << "cg_isometry: isometry check failed, deviation " << dev;
    throw NumericalError(os.str());
  }
  std::lock_guard<std::mutex> lock(mu_);
  isometry_checked_.insert(key);
  return op;
}

Matrix TLContext::su2_rep(int m, const Matrix& g) const {
  if (group_.kind != GroupKind::SU2)
    throw InvalidInputError("su2_rep: requires the SU2 group");
  if (g.rows() != 2 || g.cols() != 2) throw DimensionError("su2_rep: g must be 2x2");
  if ((g * g.adjoint() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidInputError("su2_rep: g is not unitary");
  const cplx det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  if (std::abs(det - cplx(1.0)) > 1e-10)
    throw InvalidInputError("su2_rep: g must have determinant 1");

  const Matrix& B = basis(m).B;
  if (m == 0) return Matrix::Ones(1, 1);
  Matrix W(B.rows(), B.cols());
  for (int c = 0; c < B.cols(); ++c) {
    Vector v = B.col(c);
    for (int leg = 0; leg < m; ++leg) apply_on_leg(v, g, leg, m, 2);
    W.col(c) = v;
  }
  return B.adjoint() * W;
}

}  // namespace tlchan
