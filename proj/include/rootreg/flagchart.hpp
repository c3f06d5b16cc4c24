#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rootreg/matrix.hpp"
#include "rootreg/rng.hpp"

namespace rootreg {

// Chart algebra for the SL(n,R) flag variety attached to an ordered block
// partition: Q = block upper triangular with invertible diagonal blocks,
// V = block lower unipotent.  Q /\ V = {1}; matrices whose trailing
// principal block minors are invertible factor uniquely as q*v.
template <class T>
struct FlagChartContext {
  int n = 0;
  std::vector<int> blocks;       // positive, summing to n
  std::vector<int> offsets;      // block start indices
  double minor_threshold = 1e-8; // float mode: |det| cutoff on pivot blocks

  FlagChartContext(int n_, std::vector<int> blocks_);

  bool in_q(const Matrix<T>& m) const;
  bool in_v(const Matrix<T>& m) const;
};

template <class T>
struct QvFactorization {
  bool defined = false;
  std::string error;  // "not in Q*V cell" diagnostic when !defined
  Matrix<T> q, v;
};

// M = q * v by block elimination from the trailing block upward; no
// pivoting (pivoting would leave the cell).
template <class T>
QvFactorization<T> qv_factor(const FlagChartContext<T>& ctx, const Matrix<T>& m);

// M = v * q (leading-minor variant, same elimination run top-down).
template <class T>
QvFactorization<T> vq_factor(const FlagChartContext<T>& ctx, const Matrix<T>& m);

template <class T>
struct TauResult {
  bool defined = false;
  Matrix<T> tau_v;  // tau_1(v, q)
  Matrix<T> qbar;   // tau_2(v, q):  tau_v * q = qbar * q * v
};

// Change-of-chart map: factor q v q^{-1} = qhat * vhat; tau_v = vhat and
// qbar = qhat^{-1}.  defined = false off the cell (v outside V(q)).
template <class T>
TauResult<T> tau(const FlagChartContext<T>& ctx, const Matrix<T>& q, const Matrix<T>& v);

struct IdentityViolation {
  int identity = 0;  // 1..4
  std::uint64_t sample = 0;
  double residual = 0;
};

struct IdentityReport {
  int samples = 0;
  int skipped = 0;  // undefined compositions (off-cell draws)
  double max_residual = 0;
  std::vector<IdentityViolation> violations;

  std::string to_json() const;
};

// Randomized check of the four change-of-chart identities
//  (1) (tau_q(v))^-1 = tau_qb(v^-1)          with qb from tau_q(v) q = qb v
//  (2) tau_{qb^-1}((tau_q(v))^-1) = v^-1
//  (3) tau_q'(tau_q(v)) = tau_{q'q}(v)
//  (4) tau_qb(u) tau_q(v) = tau_q(u v)
// at the given residual tolerance (ignored in rational mode: exact).
template <class T>
IdentityReport check_tau_identities(const FlagChartContext<T>& ctx, int samples,
                                    std::uint64_t seed, double tolerance = 1e-10);

// Deterministic in-cell samples used by the identity fuzzer.
template <class T>
Matrix<T> random_q(const FlagChartContext<T>& ctx, Rng& rng);
template <class T>
Matrix<T> random_v(const FlagChartContext<T>& ctx, Rng& rng);

}  // namespace rootreg
