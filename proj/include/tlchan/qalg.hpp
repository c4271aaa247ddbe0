#pragma once

#include <string>

#include "tlchan/common.hpp"

namespace tlchan {

enum class GroupKind { ONPlus, SU2 };

// Which Kac-type category is in play. Fixes the ambient dimension N, the
// quantum parameter q (q + 1/q = N) and the loop value Tr(F*F).
struct GroupSpec {
  GroupKind kind;
  int N;
  double q;
  double loop_value;

  static GroupSpec onplus(int N);
  static GroupSpec su2();

  std::string name() const;
  bool operator==(const GroupSpec& o) const {
    return kind == o.kind && N == o.N;
  }
};

// Quantum integer [n]_q = q^{-(n-1)} (1 - q^{2n}) / (1 - q^2); equals n at q = 1.
// Evaluated through the three-term recursion [n+1] = (q + 1/q)[n] - [n-1],
// which is exact integer arithmetic whenever q + 1/q is an integer.
double quantum_integer(int n, double q);

// ln([n]_q!) accumulated in the log domain; [0]_q! = 1.
double quantum_factorial_log(int n, double q);

bool is_admissible(int k, int l, int m);

// Human-readable reason why (k,l,m) fails admissibility; empty if admissible.
std::string admissibility_violation(int k, int l, int m);

struct AdmissibleTriple {
  int k, l, m;
  int r;  // r = (l + m - k) / 2

  static AdmissibleTriple make(int k, int l, int m);
};

// ln theta_q(k,l,m) = ln( [r]! [l-r]! [m-r]! [k+r+1]! / ([l]! [m]! [k]!) ).
double theta_net_log(const AdmissibleTriple& t, double q);
double theta_net_log(int k, int l, int m, double q);

double theta_net(const AdmissibleTriple& t, double q);
double theta_net(int k, int l, int m, double q);

// dim H_k = [k+1]_q, rounded to the nearest integer. A deviation beyond
// 1e-6 from an integer is a hard error (it signals a broken q).
long long dim_irrep(int k, const GroupSpec& group);

}  // namespace tlchan
