#pragma once

#include <array>
#include <cstdint>

#include "tlchan/channels.hpp"

namespace tlchan {

struct Ensemble {
  std::vector<std::pair<double, DensityMatrix>> items;
  void validate(double tol = 1e-10) const;
  DensityMatrix average() const;
};

// Von Neumann entropy in nats; eigenvalues below 1e-12 are treated as zero,
// negatives beyond -1e-10 are a hard error.
double von_neumann_entropy(const Matrix& rho);
double von_neumann_entropy(const DensityMatrix& rho);

// Output entropy of a pure input, via the Schmidt spectrum of reshape(V psi).
double output_entropy_pure(const TLChannel& ch, const Vector& psi);

// |m><m| with m = (1,2,1,...) of length k, in reduced H_k coordinates.
// Defined for O_N^+ with N >= 3 (adjacent-distinct vectors lie in H_k).
DensityMatrix moe_witness_state(const TLContext& ctx, const TLChannel& ch);

// The uniform mixture over adjacent-distinct index strings used to witness
// one-shot quantum capacity: the mixture runs over the output-factor legs,
// the environment-factor legs carry the fixed alternating string.
DensityMatrix q1_witness_ensemble(const TLContext& ctx, const TLChannel& ch);
std::vector<Vector> q1_witness_vectors(const TLContext& ctx, const TLChannel& ch);

struct MOEStrategy {
  enum class Kind { Witness, RandomPure, Descent };
  Kind kind = Kind::Witness;
  int samples = 2000;
  std::uint64_t seed = 0;
  int iters = 200;

  static MOEStrategy witness() { return {}; }
  static MOEStrategy random_pure(int samples, std::uint64_t seed) {
    return MOEStrategy{Kind::RandomPure, samples, seed, 200};
  }
  static MOEStrategy descent(int samples, std::uint64_t seed, int iters = 200) {
    return MOEStrategy{Kind::Descent, samples, seed, iters};
  }
};

// Reports are best-effort upper bounds on H_min; theory_lower is the
// certified lower bound ln(theta_q / [k+1]_q).
struct MOEReport {
  double best_entropy;
  DensityMatrix argmin;
  MOEStrategy strategy;
  double theory_lower;
  double theory_upper_hint;
};

MOEReport min_output_entropy(const TLContext& ctx, const TLChannel& ch, const MOEStrategy& s);

double coherent_information(const TLChannel& ch, const DensityMatrix& rho);

double holevo_of_ensemble(const TLChannel& ch, const Ensemble& ensemble);

// log(dB/dE) <= Q^(1) <= C <= min{log dA, log dB, log(dA dB / dE)};
// requires the channel and its complement to be bistochastic (asserted).
struct CapacityBounds {
  double q1_lower;
  std::array<double, 3> c_upper;  // ln dA, ln dB, ln(dA dB / dE)
};

CapacityBounds capacity_bounds(const TLChannel& ch);

}  // namespace tlchan
