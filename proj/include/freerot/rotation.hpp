#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "freerot/cumulants.hpp"
#include "freerot/free_algebra.hpp"
#include "freerot/partition.hpp"

namespace freerot {

/// Y_j b, one argument of an operator-valued moment.
struct OpLetter {
  int j = 1;
  FreePolynomial b;  // the unit when left default-constructed
};

/// Y_{j_1} b_1 Y_{j_2} b_2 ... Y_{j_n} b_n.
using OpWord = std::vector<OpLetter>;

/// Letters with every b equal to the unit.
OpWord op_word(std::span<const int> columns);

/// Y_j = sum_i X_i (x) u_ij over the free algebra with d x d generators.
class RotatedFamily {
 public:
  /// Throws std::invalid_argument unless the family has exactly d variables.
  RotatedFamily(FreeFamilySpec x, int d);

  const FreeFamilySpec& x() const { return x_; }
  int d() const { return d_; }

  /// joint_free_moment of x(), memoized per variable word. Thread-safe.
  Scalar moment(std::span<const int> rows) const;

 private:
  struct MomentCache {
    std::mutex mutex;
    std::map<std::vector<int>, Scalar> values;
  };

  FreeFamilySpec x_;
  int d_;
  std::shared_ptr<MomentCache> cache_ = std::make_shared<MomentCache>();
};

/// E(Y_{j_1} b_1 ... Y_{j_n} b_n) = sum_i phi(X_{i_1} ... X_{i_n}) u_{i_1 j_1} b_1 ... u_{i_n j_n} b_n.
FreePolynomial opval_moment(const RotatedFamily& fam, const OpWord& w);

/// E_pi by collapsing interval blocks innermost-first into the b to their left.
FreePolynomial opval_moment_nested(const RotatedFamily& fam, const OpWord& w, const NCPartition& pi);

/// kappa^B_n = sum over NC(n) of E_pi * mu(pi, 1_n).
FreePolynomial opval_cumulant_mobius(const RotatedFamily& fam, const OpWord& w);

/// sum_i kappa_n(X_i) u_{i j_1} b_1 ... u_{i j_n} b_n.
FreePolynomial opval_cumulant_closed(const RotatedFamily& fam, const OpWord& w);

/// Parameter-free polynomials whose vanishing is equivalent to the vanishing
/// of the mixed cumulant for a non-constant column word: one per variable i,
/// or their sum when the family is identically distributed. `bs` holds b_1..b_n
/// (empty means all units).
std::vector<FreePolynomial> freeness_constraints(const RotatedFamily& fam, int n, std::span<const int> columns,
                                                 std::span<const FreePolynomial> bs = {});

}  // namespace freerot
