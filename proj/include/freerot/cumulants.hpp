#pragma once

#include <span>
#include <vector>

#include "freerot/scalar.hpp"

namespace freerot {

/// A law given by its free cumulants kappa_1..kappa_N; N is the truncation order.
class DistributionSpec {
 public:
  /// Throws std::invalid_argument when fewer than two cumulants are given.
  explicit DistributionSpec(std::vector<Scalar> kappa);

  /// Free cumulants of variable `var` as symbols k{n,var}, n = 1..order.
  static DistributionSpec symbolic(int order, int var);

  int order() const { return static_cast<int>(kappa_.size()); }
  /// kappa_n, 1-based; TruncationError past the order.
  const Scalar& kappa(int n) const;
  const std::vector<Scalar>& cumulants() const { return kappa_; }

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

 private:
  std::vector<Scalar> kappa_;
};

/// d free variables with the given marginals. Mixed free cumulants vanish.
class FreeFamilySpec {
 public:
  FreeFamilySpec(std::vector<DistributionSpec> specs, bool identical);
  static FreeFamilySpec identical(int d, const DistributionSpec& spec);
  /// Symbolic cumulants: k{n,i} per variable, or a shared k{n,1} when identical.
  static FreeFamilySpec symbolic(int d, int order, bool identical);

  int d() const { return static_cast<int>(specs_.size()); }
  bool is_identical() const { return identical_; }
  int order() const;
  const DistributionSpec& spec(int var) const;  // 1-based
  /// kappa_n(X_var); TruncationError past the order.
  const Scalar& kappa(int n, int var) const { return spec(var).kappa(n); }

 private:
  std::vector<DistributionSpec> specs_;
  bool identical_;
};

/// Moments m_1..m_m: m_k = sum over NC(k) of the product of kappa_{|B|}.
std::vector<Scalar> moments_from_cumulants(const DistributionSpec& spec, int m);

/// Inverse transform by Möbius inversion over NC(n).
DistributionSpec cumulants_from_moments(std::span<const Scalar> moments);

/// phi(X_{i_1} ... X_{i_n}) for 1-based variable indices.
Scalar joint_free_moment(const FreeFamilySpec& family, std::span<const int> word);

struct SemicircleCheck {
  bool semicircular = false;
  Scalar mean;
  Scalar variance;
};

/// Semicircular iff kappa_n = 0 for 3 <= n <= N. Requires N >= 3.
SemicircleCheck is_semicircular(const DistributionSpec& spec);

/// Cumulants of (a_1 + ... + a_count) / sqrt(count) for free copies of a
/// centred law. `count` must be a perfect square so the result stays rational.
DistributionSpec clt_scaled_spec(const DistributionSpec& spec, const Integer& count);

/// Moments of the semicircle law with variance 1: 0, 1, 0, 2, 0, 5, ...
std::vector<Rational> semicircle_moments(int m);

}  // namespace freerot
