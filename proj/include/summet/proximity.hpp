#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "summet/lp.hpp"
#include "summet/metric_space.hpp"
#include "summet/util.hpp"

namespace summet {

// dhat_S(x1,x2) = max_{y in subset} |d(x1,y) - d(x2,y)|, over all point pairs.
Matrix eccentric_pseudometric(const FiniteMetricSpace& s,
                              const std::vector<std::size_t>& subset);

// Weighted absolute proximity (sum_i a_i d(x1_i,x2_i)^p)^(1/p).
double d_ac(const FiniteMetricSpace& s, const PairSequence& seq, double p);

struct DccResult {
  double value = 0.0;
  std::size_t witness = 0;  // element of the subset attaining the supremum
};

// Weighted eccentric proximity sup_{y in subset} (sum_i a_i |d(x1_i,y)-d(x2_i,y)|^p)^(1/p).
DccResult d_cc(const FiniteMetricSpace& s, const PairSequence& seq, double p,
               const std::vector<std::size_t>& subset);

struct AeNormResult {
  double value = 0.0;
  LipschitzFunctional witness;  // optimal 1-Lipschitz function, zero at the base point
};

// Molecule norm by duality: sup { sum_x m(x) f(x) : Lip(f) <= 1, f(base) = 0 },
// as an LP over the values of f.
AeNormResult ae_norm(const FiniteMetricSpace& s, const Molecule& m,
                     const ToleranceConfig& tol = {});

// Dual pairing <m, f> = sum_x m(x) f(x).
double pairing(const Molecule& m, const LipschitzFunctional& f);

enum class WcMode { Exact, Bracket };

struct WcResult {
  WcMode method = WcMode::Exact;
  double lower = 0.0;
  double upper = 0.0;

  bool exact() const { return method == WcMode::Exact; }
  double value() const { return lower; }  // for Exact results lower == upper
};

struct WcOptions {
  WcMode mode = WcMode::Exact;
  std::size_t exact_limit = 16;  // max pair count for sign enumeration
  int starts = 32;               // multi-start count for the bracket heuristic
  std::uint64_t seed = 20240;
  ExecPolicy policy = ExecPolicy::Parallel;
};

// Weak proximity sup_{f in ball of M#} (sum_i a_i |f(x1_i)-f(x2_i)|^p)^(1/p).
// Exact mode (p = 1): enumerates sign vectors, exact because the extreme
// points of the l-infinity ball are signs. Bracket mode (any p): certified
// [lower, upper] with lower from d_cc and projected ascent, upper = d_ac.
WcResult d_wc(const FiniteMetricSpace& s, const PairSequence& seq, double p,
              const WcOptions& opts = {}, const ToleranceConfig& tol = {});

}  // namespace summet
