#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace tlchan {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Error taxonomy; the CLI maps these onto exit codes
// (invalid input -> 1, numerical failure -> 2, resource cap -> 3).
class TlError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInputError : public TlError {
 public:
  using TlError::TlError;
};

class AdmissibilityError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

class DimensionError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

class ResourceCapError : public TlError {
 public:
  using TlError::TlError;
};

class NumericalError : public TlError {
 public:
  using TlError::TlError;
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Trace over the second tensor factor of an operator on C^{d1} (x) C^{d2}.
inline Matrix partial_trace_second(const Matrix& m, int d1, int d2) {
  if (m.rows() != static_cast<Eigen::Index>(d1) * d2 || m.cols() != m.rows())
    throw DimensionError("partial_trace_second: dimension mismatch");
  Matrix out = Matrix::Zero(d1, d1);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d1; ++b)
      for (int e = 0; e < d2; ++e) out(a, b) += m(a * d2 + e, b * d2 + e);
  return out;
}

// Trace over the first tensor factor.
inline Matrix partial_trace_first(const Matrix& m, int d1, int d2) {
  if (m.rows() != static_cast<Eigen::Index>(d1) * d2 || m.cols() != m.rows())
    throw DimensionError("partial_trace_first: dimension mismatch");
  Matrix out = Matrix::Zero(d2, d2);
  for (int a = 0; a < d2; ++a)
    for (int b = 0; b < d2; ++b)
      for (int e = 0; e < d1; ++e) out(a, b) += m(e * d2 + a, e * d2 + b);
  return out;
}

// Conjugation by the flip C^{d1} (x) C^{d2} -> C^{d2} (x) C^{d1}.
inline Matrix swap_factors(const Matrix& m, int d1, int d2) {
  if (m.rows() != static_cast<Eigen::Index>(d1) * d2 || m.cols() != m.rows())
    throw DimensionError("swap_factors: dimension mismatch");
  Matrix out(m.rows(), m.cols());
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d2; ++b)
      for (int c = 0; c < d1; ++c)
        for (int d = 0; d < d2; ++d)
          out(b * d1 + a, d * d1 + c) = m(a * d2 + b, c * d2 + d);
  return out;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-task generator derived from (seed, index): results do not depend on
// how work is scheduled across threads.
inline std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index + 1)));
}

std::atomic<int>& thread_count_slot();

inline void set_thread_count(int n) { thread_count_slot() = n > 0 ? n : 1; }
inline int thread_count() { return thread_count_slot().load(); }

// Runs fn(i) for i in [0, n); partitions across the configured thread count.
// Callers must make fn(i) independent of execution order.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace tlchan
