#pragma once

#include <string>
#include <vector>

#include "freerot/free_algebra.hpp"
#include "freerot/rational.hpp"

namespace freerot {

/// Univariate polynomial over Q; coeffs()[k] multiplies t^k. Trailing zeros
/// are stripped, so the zero polynomial has no coefficients.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly monomial(const Rational& c, int k);
  static UPoly constant(const Rational& c) { return monomial(c, 0); }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& leading() const;
  Rational coefficient(int k) const;

  Rational operator()(const Rational& t) const;
  UPoly derivative() const;
  UPoly monic() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly&, const UPoly&) = default;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct DivMod {
  UPoly quotient;
  UPoly remainder;
};

/// Euclidean division; throws std::invalid_argument on a zero divisor.
DivMod divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero only if both inputs are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
/// p / gcd(p, p'), made monic.
UPoly square_free_part(const UPoly& p);

/// Distinct real roots of a nonzero polynomial, by Sturm sequence.
int count_real_roots(const UPoly& p);
/// Distinct real roots in the half-open interval (a, b].
int count_real_roots(const UPoly& p, const Rational& a, const Rational& b);

/// Distinct rational roots (rational root theorem), ascending. Throws
/// std::range_error when a coefficient is too large to factor by trial division.
std::vector<Rational> rational_roots(const UPoly& p);

struct RealRootReport {
  std::vector<Rational> rational_roots;
  int irrational_roots = 0;  // distinct real roots that are not rational
};

RealRootReport real_roots(const UPoly& p);

/// p(g) as an element of the free algebra over d x d generators.
FreePolynomial evaluate_at(const UPoly& p, int d, Generator g);

}  // namespace freerot
