#pragma once

#include <map>
#include <string>
#include <vector>

#include "freerot/free_algebra.hpp"
#include "freerot/rational.hpp"

namespace freerot {

/// Dense matrix over Q, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols);
  /// Rows given as nested lists; all rows must have equal length.
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(int n);
  static RationalMatrix zero(int n) { return RationalMatrix(n, n); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  Rational& at(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const Rational& at(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

  bool is_zero() const;
  bool is_symmetric() const;
  RationalMatrix transpose() const;

  RationalMatrix& operator+=(const RationalMatrix& o);
  RationalMatrix& operator-=(const RationalMatrix& o);
  RationalMatrix& operator*=(const Rational& c);
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& c, RationalMatrix m) { return m *= c; }
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b);

using GeneratorAssignment = std::map<Generator, RationalMatrix>;

/// Homomorphic evaluation: generators to their matrices, parameters to their
/// values, the unit to the identity. Throws std::invalid_argument on missing
/// generators, dimension mismatch, or a zero value for an inverted parameter.
RationalMatrix eval_matrix(const FreePolynomial& p, const GeneratorAssignment& assignment,
                           const std::map<Param, Rational>& params = {});

}  // namespace freerot
