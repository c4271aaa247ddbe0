#pragma once

#include <vector>

#include "tlchan/tlrep.hpp"

namespace tlchan {

// Which tensor factor of H_l (x) H_m is traced out (becomes the environment).
enum class Traced { Left, Right };

// CPTP map packaged as a reduced-basis Stinespring isometry. The codomain of
// V is always ordered output (x) environment; partial-trace code relies on it.
struct TLChannel {
  GroupSpec group;
  AdmissibleTriple triple;
  Traced traced;
  Matrix V;  // (dB*dE) x dA
  int dA, dB, dE;
};

struct DensityMatrix {
  Matrix rho;
  std::vector<int> dims;  // tensor factor dimensions

  int dim() const { return static_cast<int>(rho.rows()); }
  // Hermiticity/trace/positivity checks; throws NumericalError on violation.
  void validate(double tol = 1e-10) const;
  static DensityMatrix checked(Matrix rho, std::vector<int> dims, double tol = 1e-10);
};

TLChannel build_channel(const TLContext& ctx, const AdmissibleTriple& t, Traced traced);

// Same isometry, roles of output and environment swapped.
TLChannel complementary(const TLChannel& ch);

// Environment-basis slices of V; no canonicalization.
std::vector<Matrix> kraus_operators(const TLChannel& ch);

Matrix apply_channel(const TLChannel& ch, const Matrix& rho);
DensityMatrix apply_channel(const TLChannel& ch, const DensityMatrix& rho);

Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& rho);

// Kraus list of (second o first), with completeness check.
std::vector<Matrix> compose(const std::vector<Matrix>& second, const TLChannel& first);

// Tensor product channel; factors are applied sequentially so intermediate
// objects never exceed (dB1*dA2)^2.
struct ProductChannel {
  TLChannel first;   // acts on factor 1
  TLChannel second;  // acts on factor 2
  int dA() const { return first.dA * second.dA; }
  int dB() const { return first.dB * second.dB; }
};

ProductChannel tensor(const TLChannel& ch1, const TLChannel& ch2);
Matrix apply_channel(const ProductChannel& ch, const Matrix& rho);
DensityMatrix apply_channel(const ProductChannel& ch, const DensityMatrix& rho);

// Choi matrix on C^{dB} (x) C^{dA}; normalized divides by dA (trace 1).
Matrix choi(const TLChannel& ch, bool normalized);
Matrix choi_of_kraus(const std::vector<Matrix>& kraus, int dA, bool normalized);

// Low-rank factor T with choi = T T^*; T is (dB*dA) x dE. Lets large Choi
// matrices be compared without materializing them.
Matrix choi_factor(const TLChannel& ch, bool normalized);

// rho_i^{k1,k2} = alpha_i^{k1,k2} (alpha_i^{k1,k2})^* / [i+1]_q.
DensityMatrix covariant_state(const TLContext& ctx, int i, int k1, int k2);

// Matrix of the covariant vector A_0^{k,k} in H_k (x) H_k. In the Kac case
// it is unitary; it implements the self-duality identification of H_k with
// its conjugate that the Choi-matrix statements rely on.
Matrix duality_unitary(const TLContext& ctx, int k);

// The trace-normalized covariant projector the Choi theorem names:
// alpha_l^{m,k} for a left-traced channel, alpha_m^{l,k} for a right-traced
// one, divided by the environment dimension. The actual Choi matrix equals
// this projector conjugated by (1 (x) conj(duality_unitary(k))) on the
// input factor.
Matrix covariant_choi_projector(const TLContext& ctx, const TLChannel& ch);

// choi(ch, true) expressed in the weight conventions of the covariant
// projector, i.e. with the input-factor duality twist undone.
Matrix choi_covariant_form(const TLContext& ctx, const TLChannel& ch);

// Frobenius distance between the normalized Choi and the covariant
// projector, plus the numerical Choi rank. Works through low-rank factors,
// so it stays cheap when dB*dA is far too large for a dense Choi.
struct ChoiTheoremCheck {
  double frobenius_deviation;
  int rank;
};
ChoiTheoremCheck choi_theorem_check(const TLContext& ctx, const TLChannel& ch);

}  // namespace tlchan
