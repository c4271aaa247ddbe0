#include "tlchan/infoquant.hpp"

#include <cmath>
#include <numeric>

namespace tlchan {

namespace {

double entropy_of_weights(const RealVector& w) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double lam = w(i);
    if (lam < -1e-10) throw NumericalError("entropy: negative eigenvalue beyond tolerance");
    if (lam > 1e-12) h -= lam * std::log(lam);
  }
  return h;
}

// Alternating index string (1,2,1,...) of the given length, 0-indexed digits.
std::vector<int> alternating_string(int len) {
  std::vector<int> s(len);
  for (int i = 0; i < len; ++i) s[i] = i % 2;
  return s;
}

long long string_to_ambient_index(const std::vector<int>& digits, int N) {
  long long idx = 0;
  for (int d : digits) idx = idx * N + d;
  return idx;
}

Vector reduced_basis_vector(const TLContext& ctx, int k, const std::vector<int>& digits) {
  const Matrix& B = ctx.basis(k).B;
  const long long amb = string_to_ambient_index(digits, ctx.group().N);
  Vector v = B.row(amb).conjugate().transpose();  // B^* |digits>
  const double nrm = v.norm();
  if (std::abs(nrm - 1.0) > 1e-8)
    throw NumericalError(
        "witness index vector does not lie in the irrep subspace (norm deviates from 1)");
  return v / nrm;
}

// All adjacent-distinct strings of the given length over {0..N-1}, subject
// to optional constraints on the first and last digit.
void enumerate_adjacent_distinct(int len, int N, int forbid_first, int forbid_last,
                                 std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == len) {
    if (len > 0 && forbid_last >= 0 && cur.back() == forbid_last) return;
    out.push_back(cur);
    return;
  }
  for (int d = 0; d < N; ++d) {
    if (cur.empty()) {
      if (forbid_first >= 0 && d == forbid_first) continue;
    } else if (cur.back() == d) {
      continue;
    }
    cur.push_back(d);
    enumerate_adjacent_distinct(len, N, forbid_first, forbid_last, cur, out);
    cur.pop_back();
  }
}

}  // namespace

void Ensemble::validate(double tol) const {
  if (items.empty()) throw InvalidInputError("ensemble must be nonempty");
  double total = 0.0;
  for (const auto& [p, state] : items) {
    if (p < -tol || p > 1.0 + tol) throw InvalidInputError("ensemble probability out of range");
    state.validate();
    total += p;
  }
  if (std::abs(total - 1.0) > tol)
    throw InvalidInputError("ensemble probabilities do not sum to 1");
}

DensityMatrix Ensemble::average() const {
  if (items.empty()) throw InvalidInputError("ensemble must be nonempty");
  Matrix acc = Matrix::Zero(items[0].second.dim(), items[0].second.dim());
  for (const auto& [p, state] : items) acc += p * state.rho;
  return DensityMatrix{std::move(acc), items[0].second.dims};
}

double von_neumann_entropy(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  return entropy_of_weights(es.eigenvalues());
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.rho); }

double output_entropy_pure(const TLChannel& ch, const Vector& psi) {
  if (psi.size() != ch.dA) throw DimensionError("output_entropy_pure: wrong input dimension");
  const Vector w = ch.V * psi;
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mat(
      w.data(), ch.dB, ch.dE);
  Eigen::JacobiSVD<Matrix> svd(mat);
  RealVector lam = svd.singularValues().array().square();
  return entropy_of_weights(lam);
}

DensityMatrix moe_witness_state(const TLContext& ctx, const TLChannel& ch) {
  if (ctx.group().kind != GroupKind::ONPlus || ctx.group().N < 3)
    throw InvalidInputError("moe_witness_state: defined for O_N^+ with N >= 3");
  const int k = ch.triple.k;
  const Vector v = reduced_basis_vector(ctx, k, alternating_string(k));
  return DensityMatrix{v * v.adjoint(), {ch.dA}};
}

std::vector<Vector> q1_witness_vectors(const TLContext& ctx, const TLChannel& ch) {
  if (ctx.group().kind != GroupKind::ONPlus || ctx.group().N < 3)
    throw InvalidInputError("q1_witness_ensemble: defined for O_N^+ with N >= 3");
  const int N = ctx.group().N;
  const AdmissibleTriple& t = ch.triple;
  const int out_legs = (ch.traced == Traced::Right ? t.l : t.m) - t.r;
  const int env_legs = (ch.traced == Traced::Right ? t.m : t.l) - t.r;
  const std::vector<int> fixed = alternating_string(env_legs);

  // Mixture runs over the output-side legs; the junction digit must differ
  // from the adjacent digit of the fixed alternating string.
  std::vector<std::vector<int>> strings;
  std::vector<int> cur;
  if (ch.traced == Traced::Right) {
    // |j n>: j of length l-r with last digit != first digit of n (= 0)
    const int forbid_last = env_legs > 0 ? fixed.front() : -1;
    enumerate_adjacent_distinct(out_legs, N, -1, forbid_last, cur, strings);
  } else {
    // |n j>: j of length m-r with first digit != last digit of n
    const int forbid_first = env_legs > 0 ? fixed.back() : -1;
    enumerate_adjacent_distinct(out_legs, N, forbid_first, -1, cur, strings);
  }

  std::vector<Vector> vs;
  vs.reserve(strings.size());
  for (const auto& s : strings) {
    std::vector<int> digits;
    if (ch.traced == Traced::Right) {
      digits = s;
      digits.insert(digits.end(), fixed.begin(), fixed.end());
    } else {
      digits = fixed;
      digits.insert(digits.end(), s.begin(), s.end());
    }
    vs.push_back(reduced_basis_vector(ctx, t.k, digits));
  }
  return vs;
}

DensityMatrix q1_witness_ensemble(const TLContext& ctx, const TLChannel& ch) {
  const std::vector<Vector> vs = q1_witness_vectors(ctx, ch);
  if (vs.empty()) throw NumericalError("q1_witness_ensemble: empty witness family");
  Matrix rho = Matrix::Zero(ch.dA, ch.dA);
  for (const Vector& v : vs) rho.noalias() += v * v.adjoint();
  rho /= static_cast<double>(vs.size());
  return DensityMatrix{std::move(rho), {ch.dA}};
}

namespace {

Vector random_pure_state(int dim, std::uint64_t seed, std::uint64_t index) {
  auto gen = rng_stream(seed, index);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(gen);
    const double im = normal(gen);
    v(i) = cplx(re, im);
  }
  return v / v.norm();
}

// Wirtinger gradient of H(Phi(|v><v|)) with respect to conj(v).
Vector entropy_gradient(const TLChannel& ch, const Vector& v) {
  const Vector w = ch.V * v;
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> wm(
      w.data(), ch.dB, ch.dE);
  Matrix sigma = wm * wm.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
  RealVector lam = es.eigenvalues();
  RealVector loglam(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    loglam(i) = std::log(std::max(lam(i), 1e-18)) + 1.0;
  const Matrix gprime =
      es.eigenvectors() * loglam.asDiagonal() * es.eigenvectors().adjoint();
  const Matrix gw = gprime * wm;  // dB x dE
  Vector flat(static_cast<Eigen::Index>(ch.dB) * ch.dE);
  for (int b = 0; b < ch.dB; ++b)
    for (int e = 0; e < ch.dE; ++e) flat(static_cast<Eigen::Index>(b) * ch.dE + e) = gw(b, e);
  return -(ch.V.adjoint() * flat);
}

}  // namespace

MOEReport min_output_entropy(const TLContext& ctx, const TLChannel& ch, const MOEStrategy& s) {
  const double q = ctx.group().q;
  const AdmissibleTriple& t = ch.triple;
  const double lower = theta_net_log(t, q) - std::log(quantum_integer(t.k + 1, q));
  double upper_hint;
  if (ctx.group().kind == GroupKind::ONPlus && ctx.group().N >= 3) {
    upper_hint = std::min(t.r * std::log(static_cast<double>(ctx.group().N)),
                          std::log(static_cast<double>(ch.dB)));
  } else {
    upper_hint = std::log(static_cast<double>(ch.dB));
  }

  const bool witness_applicable =
      ctx.group().kind == GroupKind::ONPlus && ctx.group().N >= 3;
  MOEStrategy used = s;

  if (s.kind == MOEStrategy::Kind::Witness && witness_applicable) {
    DensityMatrix w = moe_witness_state(ctx, ch);
    const double h = von_neumann_entropy(apply_channel(ch, w.rho));
    return MOEReport{h, std::move(w), used, lower, upper_hint};
  }

  // Random search (also the Witness fallback when no witness exists).
  const int samples = std::max(1, s.samples);
  std::vector<double> entropies(samples);
  parallel_for(samples, [&](std::int64_t i) {
    entropies[i] = output_entropy_pure(ch, random_pure_state(ch.dA, s.seed, i));
  });
  int best = 0;
  for (int i = 1; i < samples; ++i)
    if (entropies[i] < entropies[best]) best = i;
  Vector v = random_pure_state(ch.dA, s.seed, best);
  double h_best = entropies[best];

  if (s.kind == MOEStrategy::Kind::Descent) {
    double step = 0.1;
    for (int it = 0; it < s.iters && step > 1e-12; ++it) {
      const Vector g = entropy_gradient(ch, v);
      Vector cand = v - step * g;
      cand /= cand.norm();
      const double h = output_entropy_pure(ch, cand);
      if (h < h_best - 1e-15) {
        v = cand;
        h_best = h;
      } else {
        step *= 0.5;
      }
    }
  }

  return MOEReport{h_best, DensityMatrix{v * v.adjoint(), {ch.dA}}, used, lower, upper_hint};
}

double coherent_information(const TLChannel& ch, const DensityMatrix& rho) {
  const double hb = von_neumann_entropy(apply_channel(ch, rho.rho));
  const double he = von_neumann_entropy(apply_channel(complementary(ch), rho.rho));
  return hb - he;
}

double holevo_of_ensemble(const TLChannel& ch, const Ensemble& ensemble) {
  ensemble.validate();
  Matrix avg = Matrix::Zero(ch.dA, ch.dA);
  double mean_h = 0.0;
  for (const auto& [p, state] : ensemble.items) {
    avg += p * state.rho;
    mean_h += p * von_neumann_entropy(apply_channel(ch, state.rho));
  }
  return von_neumann_entropy(apply_channel(ch, avg)) - mean_h;
}

CapacityBounds capacity_bounds(const TLChannel& ch) {
  const Matrix mixed = Matrix::Identity(ch.dA, ch.dA) / static_cast<double>(ch.dA);
  const Matrix outB = apply_channel(ch, mixed);
  const Matrix outE = apply_channel(complementary(ch), mixed);
  const double devB =
      (outB - Matrix::Identity(ch.dB, ch.dB) / static_cast<double>(ch.dB)).cwiseAbs().maxCoeff();
  const double devE =
      (outE - Matrix::Identity(ch.dE, ch.dE) / static_cast<double>(ch.dE)).cwiseAbs().maxCoeff();
  if (devB > 1e-10 || devE > 1e-10)
    throw NumericalError("capacity_bounds: channel or complement is not bistochastic");
  const double la = std::log(static_cast<double>(ch.dA));
  const double lb = std::log(static_cast<double>(ch.dB));
  const double le = std::log(static_cast<double>(ch.dE));
  return CapacityBounds{lb - le, {la, lb, la + lb - le}};
}

}  // namespace tlchan
