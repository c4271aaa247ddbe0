#pragma once

#include <cstdint>
#include <utility>

#include "tlchan/infoquant.hpp"

namespace tlchan {

struct PPTReport {
  double min_eigenvalue;
  bool is_ppt;  // min_eigenvalue >= -tol
  double tol;
};

// Dead-band classification used by the grid scans: accept >= -1e-10,
// reject < -1e-8, anything in between is indeterminate and fails loudly.
enum class PPTClass { PPT, NotPPT, Indeterminate };
PPTClass classify_ppt(double min_eigenvalue, double accept_tol = 1e-10, double reject_tol = 1e-8);

enum class PTFactor { First, Second };

// Blockwise transpose on one tensor factor of an operator on
// C^{d_first} (x) C^{d_second}.
Matrix partial_transpose(const Matrix& m, int d_first, int d_second, PTFactor factor);

// Minimum eigenvalue of the partially transposed normalized Choi matrix
// (transpose acts on the output factor).
PPTReport ppt_check(const TLChannel& ch, double tol = 1e-10);

// Determinant a*c - |b|^2 of the 2x2 compression of the partially
// transposed normalized Choi onto span{v1, v2}; a negative value certifies
// non-PPT. For SU(2) the reduced bases coincide with the weight-ordered
// Clebsch-Gordan conventions, so the explicit basis-vector pairs of the
// case analysis apply verbatim.
double ebt_submatrix_witness(const TLChannel& ch, const Vector& v1, const Vector& v2);

// The standard orthonormal pair certifying non-PPT for SU(2), chosen per
// traced tag and weight regime; entries are 0-indexed weight labels on
// H_B (x) H_A.
std::pair<Vector, Vector> ebt_witness_pair(const TLChannel& ch);

struct HaarAverageResult {
  Matrix average;   // Monte-Carlo average over SU(2)
  double distance;  // Frobenius distance to the normalized Choi of Phi^{l-bar,m}_{l-m}
};

// Monte-Carlo check that the normalized Choi of the lowest-weight SU(2)
// channel is the Haar average of rotated product states. Sampling is exact
// Haar via uniform unit quaternions; per-sample streams are seeded from
// (seed, index).
HaarAverageResult haar_average_state(const TLContext& ctx, int l, int m, int samples,
                                     std::uint64_t seed);

// Max elementwise Choi deviation of
// Phi^{m, (l-m)-bar}_l o Phi^{l, m-bar}_{l+m} = Phi^{m, l-bar}_{l+m}  (SU(2), l >= m).
double verify_degrading_identity(const TLContext& ctx, int l, int m);

// Rank of rho -> Phi(rho) as a linear map, via singular values of the
// superoperator matrix (threshold tol relative to the largest).
int range_dimension(const TLChannel& ch, double tol = 1e-8);

double purity(const Matrix& rho);

// Haar-uniform SU(2) element from a unit quaternion.
Matrix random_su2(std::uint64_t seed, std::uint64_t index);

}  // namespace tlchan
