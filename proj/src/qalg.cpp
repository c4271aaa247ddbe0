#include "tlchan/qalg.hpp"

#include <cmath>
#include <sstream>

namespace tlchan {

GroupSpec GroupSpec::onplus(int N) {
  if (N < 2) throw InvalidInputError("onplus: N must be >= 2");
  // q0 = (1/N) * 2 / (1 + sqrt(1 - 4/N^2)); stable for large N.
  const double q =
      2.0 / (static_cast<double>(N) * (1.0 + std::sqrt(1.0 - 4.0 / (static_cast<double>(N) * N))));
  return GroupSpec{GroupKind::ONPlus, N, q, static_cast<double>(N)};
}

GroupSpec GroupSpec::su2() { return GroupSpec{GroupKind::SU2, 2, 1.0, 2.0}; }

std::string GroupSpec::name() const {
  if (kind == GroupKind::SU2) return "su2";
  std::ostringstream os;
  os << "onplus:" << N;
  return os.str();
}

namespace {

double recursion_coefficient(double q) {
  if (q <= 0.0 || q > 1.0) throw InvalidInputError("quantum parameter must lie in (0,1]");
  double c = q + 1.0 / q;
  const double cr = std::round(c);
  // Snap to the integer loop value when q was derived from one; the
  // recursion then stays exact up to 2^53.
  if (cr >= 2.0 && std::abs(c - cr) < 1e-9) c = cr;
  return c;
}

}  // namespace

double quantum_integer(int n, double q) {
  if (n < 0) throw InvalidInputError("quantum_integer: n must be >= 0");
  if (n == 0) return 0.0;
  if (n == 1) return 1.0;
  const double c = recursion_coefficient(q);
  double prev = 0.0, cur = 1.0;
  for (int j = 1; j < n; ++j) {
    const double next = c * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double quantum_factorial_log(int n, double q) {
  if (n < 0) throw InvalidInputError("quantum_factorial_log: n must be >= 0");
  if (n <= 1) return 0.0;
  const double c = recursion_coefficient(q);
  double prev = 0.0, cur = 1.0, offset = 0.0, acc = 0.0;
  for (int j = 2; j <= n; ++j) {
    const double next = c * cur - prev;
    prev = cur;
    cur = next;
    acc += offset + std::log(cur);
    if (cur > 1e250) {  // rescale both recursion states, track the log offset
      prev /= cur;
      offset += std::log(cur);
      cur = 1.0;
    }
  }
  return acc;
}

bool is_admissible(int k, int l, int m) {
  if (k < 0 || l < 0 || m < 0) return false;
  if ((l + m - k) % 2 != 0) return false;
  return k >= std::abs(l - m) && k <= l + m;
}

std::string admissibility_violation(int k, int l, int m) {
  std::ostringstream os;
  if (k < 0 || l < 0 || m < 0) {
    os << "labels must be nonnegative, got (" << k << "," << l << "," << m << ")";
    return os.str();
  }
  if (((l + m - k) % 2 + 2) % 2 != 0) {
    os << "parity violation: l+m-k = " << (l + m - k) << " is odd for (" << k << "," << l << ","
       << m << ")";
    return os.str();
  }
  if (k > l + m || k < std::abs(l - m)) {
    os << "triangle violation: need |l-m| <= k <= l+m, got (" << k << "," << l << "," << m << ")";
    return os.str();
  }
  return {};
}

AdmissibleTriple AdmissibleTriple::make(int k, int l, int m) {
  const std::string why = admissibility_violation(k, l, m);
  if (!why.empty()) throw AdmissibilityError("triple not admissible: " + why);
  return AdmissibleTriple{k, l, m, (l + m - k) / 2};
}

double theta_net_log(const AdmissibleTriple& t, double q) {
  return quantum_factorial_log(t.r, q) + quantum_factorial_log(t.l - t.r, q) +
         quantum_factorial_log(t.m - t.r, q) + quantum_factorial_log(t.k + t.r + 1, q) -
         quantum_factorial_log(t.l, q) - quantum_factorial_log(t.m, q) -
         quantum_factorial_log(t.k, q);
}

double theta_net_log(int k, int l, int m, double q) {
  return theta_net_log(AdmissibleTriple::make(k, l, m), q);
}

double theta_net(const AdmissibleTriple& t, double q) { return std::exp(theta_net_log(t, q)); }

double theta_net(int k, int l, int m, double q) {
  return theta_net(AdmissibleTriple::make(k, l, m), q);
}

long long dim_irrep(int k, const GroupSpec& group) {
  if (k < 0) throw InvalidInputError("dim_irrep: k must be >= 0");
  if (group.kind == GroupKind::SU2) return k + 1;
  const double v = quantum_integer(k + 1, group.q);
  const double rounded = std::round(v);
  if (std::abs(v - rounded) > 1e-6)
    throw NumericalError("dim_irrep: [k+1]_q deviates from an integer; quantum parameter broken");
  return static_cast<long long>(rounded);
}

}  // namespace tlchan
