#pragma once

#include "tlchan/channels.hpp"
#include "tlchan/infoquant.hpp"

namespace tlchan {

struct SpectrumEntry {
  int l;  // irrep label of the eigenspace (-1 when unassigned)
  double eigenvalue;
  long long multiplicity;
};

enum class SpectrumSource { Formula, BruteForce };

struct SpectrumReport {
  std::vector<SpectrumEntry> entries;
  SpectrumSource source;
  double total_trace;
  bool ambiguous = false;  // eigenvalue clustering could not separate clusters
};

// The sextuple [a b i; c d j] lies in the admissible set when the four
// triples (a,d,i), (b,c,i), (a,b,j), (d,c,j) are admissible.
bool tet_admissible(int a, int b, int i, int c, int d, int j);

// Tetrahedral net Tet_q[a b i; c d j], evaluated by dense composition of
// three-vertices and the trace of the resulting H_i endomorphism.
double tet_net(const TLContext& ctx, int a, int b, int i, int c, int d, int j);

// {a b i; c d j}_q = Tet * [i+1]_q / (theta(a,d,i) theta(b,c,i)).
double six_j(const TLContext& ctx, int a, int b, int i, int c, int d, int j);

// The composite (iota_b (x) cup_j^* (x) iota_c)(A_a^{b,j} (x) A_d^{j,c}) A_i^{a,d},
// a (d_b d_c) x d_i matrix. It is a multiple of the three-vertex A_i^{b,c}
// with factor Tet / theta(i,b,c).
Matrix tet_composite(const TLContext& ctx, int a, int b, int i, int c, int d, int j);

// Basis diagrams of Hom(H_a (x) H_d, H_b (x) H_c): vertical edge i and
// horizontal rung j. Exposed for the basis-change identity checks.
Matrix hom_basis_vertical(const TLContext& ctx, int a, int b, int c, int d, int i);
Matrix hom_basis_horizontal(const TLContext& ctx, int a, int b, int c, int d, int j);

// X_i = (Phi_{k1}^{l1-bar, m1} (x) Phi_{k2}^{l2, m2-bar})(rho_i^{k1,k2});
// spectrum from the closed-form eigenvalue expression.
SpectrumReport tensor_output_spectrum_formula(const TLContext& ctx, int i,
                                              const AdmissibleTriple& t1,
                                              const AdmissibleTriple& t2);

// Same spectrum by building the state, applying the tensor channel densely
// and clustering the eigenvalues (gap threshold 1e-7).
SpectrumReport tensor_output_spectrum_bruteforce(const TLContext& ctx, int i,
                                                 const AdmissibleTriple& t1,
                                                 const AdmissibleTriple& t2);

// The brute-force output state itself (on H_{m1} (x) H_{l2}).
Matrix tensor_output_state(const TLContext& ctx, int i, const AdmissibleTriple& t1,
                           const AdmissibleTriple& t2);

struct AdditivityProbe {
  double H_Xi;
  double moe1;
  double moe2;
  double gap;  // H_Xi - moe1 - moe2
};

AdditivityProbe additivity_probe(const TLContext& ctx, int i, const AdmissibleTriple& t1,
                                 const AdmissibleTriple& t2, const MOEStrategy& strategy);

}  // namespace tlchan
