#pragma once

#include <array>
#include <map>
#include <set>
#include <memory>
#include <mutex>
#include <vector>

#include "tlchan/qalg.hpp"

namespace tlchan {

// Descriptor for the space an operator acts on: either an ambient leg space
// (C^N)^{(x) legs} or a tensor product of reduced irrep spaces.
struct SpaceDescriptor {
  enum class Kind { Ambient, Irreps };
  Kind kind = Kind::Ambient;
  int legs = 0;
  int N = 0;
  std::vector<int> labels;

  static SpaceDescriptor ambient(int legs, int N) {
    return SpaceDescriptor{Kind::Ambient, legs, N, {}};
  }
  static SpaceDescriptor irrep(int k) { return SpaceDescriptor{Kind::Irreps, 0, 0, {k}}; }
  static SpaceDescriptor irreps(std::vector<int> ks) {
    return SpaceDescriptor{Kind::Irreps, 0, 0, std::move(ks)};
  }

  long long dim(const GroupSpec& group) const;
};

struct LabeledOperator {
  Matrix matrix;
  SpaceDescriptor domain;
  SpaceDescriptor codomain;
};

// Orthonormal basis of H_k inside the ambient leg space: B is N^k x d_k with
// B^* B = I and B B^* = p_k (the Jones-Wenzl projector).
struct IrrepBasis {
  int k;
  Matrix B;
};

// Dense realization of Rep(O_F^+) for F = 1 (O_N^+) and the 2x2 symplectic F
// (SU(2)). Bases are built once per label and cached; distinct labels may be
// built concurrently and every cached object is immutable.
class TLContext {
 public:
  explicit TLContext(GroupSpec group, std::size_t max_ambient = 250000);

  const GroupSpec& group() const { return group_; }
  std::size_t max_ambient() const { return max_ambient_; }

  // cup_F = sum_i e_i (x) F e_i, as a vector in C^{N^2}.
  Vector cup_vector() const;

  // Basis of H_k. Errors: resource cap if N^k exceeds max_ambient,
  // rank mismatch if the extracted rank differs from dim_irrep(k).
  const IrrepBasis& basis(int k) const;

  // Dense N^k x N^k Jones-Wenzl projector (B_k B_k^*); capped separately
  // since it squares the ambient dimension.
  Matrix jones_wenzl_projector(int k) const;

  // Unnormalized three-vertex A_k^{l,m} = (p_l (x) p_m)(i (x) cup^r (x) i) p_k
  // in reduced bases: a (d_l * d_m) x d_k matrix.
  LabeledOperator three_vertex(const AdmissibleTriple& t) const;

  // Normalized intertwining isometry alpha_k^{l,m} = sqrt([k+1]_q / theta) A_k^{l,m}.
  LabeledOperator cg_isometry(const AdmissibleTriple& t) const;

  // pi_m(g) = B_m^* g^{(x) m} B_m for g in SU(2); requires the SU2 group.
  Matrix su2_rep(int m, const Matrix& g) const;

  // Applies (i^{left} (x) cup^r (x) i^{right}) to a vector on left+right legs.
  Vector insert_nested_cups(const Vector& in, int left_legs, int r, int right_legs) const;

  long long ambient_dim(int legs) const;

 private:
  struct FAction {
    std::vector<int> perm;     // F e_i = sign[i] * e_{perm[i]}
    std::vector<double> sign;
  };

  std::shared_ptr<const IrrepBasis> build_basis(int k) const;
  Matrix build_three_vertex(const AdmissibleTriple& t) const;
  void check_ambient(int legs, const char* what) const;

  GroupSpec group_;
  std::size_t max_ambient_;
  FAction f_;
  mutable std::mutex mu_;
  mutable std::map<int, std::shared_ptr<const IrrepBasis>> cache_;
  mutable std::map<std::array<int, 3>, std::shared_ptr<const Matrix>> vertex_cache_;
  mutable std::set<std::array<int, 3>> isometry_checked_;
};

}  // namespace tlchan
