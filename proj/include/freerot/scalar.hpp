#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "freerot/rational.hpp"

namespace freerot {

/// A commuting scalar symbol k{order,var}: the free cumulant of the given
/// order of variable `var`.
struct Param {
  int order = 0;
  int var = 0;

  std::string to_string() const;
  friend auto operator<=>(const Param&, const Param&) = default;
};

/// Product of parameter powers with nonzero integer exponents, sorted by Param.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(Param p, int exponent = 1);

  const std::vector<std::pair<Param, int>>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  bool has_negative_exponent() const;
  int exponent_of(const Param& p) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  Monomial inverse() const;

  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::pair<Param, int>> factors_;
};

/// Exact scalar: finite Q-linear combination of parameter monomials (a Laurent
/// polynomial in the declared parameters). Zero coefficients are never stored.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Rational& q);  // NOLINT: rationals embed implicitly
  Scalar(long v) : Scalar(Rational(v)) {}  // NOLINT
  Scalar(int v) : Scalar(Rational(v)) {}   // NOLINT
  static Scalar param(Param p, int exponent = 1);
  static Scalar term(const Rational& c, Monomial m);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Value of a parameter-free scalar; throws std::logic_error otherwise.
  Rational rational_value() const;
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  std::set<Param> params() const;
  bool has_negative_exponent() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator*=(const Rational& q);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar operator-() const;

  /// Substitutes rational values; throws std::invalid_argument for unassigned
  /// parameters or a zero value under a negative exponent.
  Rational evaluate(const std::map<Param, Rational>& values) const;

  std::string to_string() const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

}  // namespace freerot
