#include "freerot/matrix.hpp"

#include <stdexcept>

namespace freerot {

RationalMatrix::RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Rational(0));
}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int k = 0; k < n; ++k) m.at(k, k) = 1;
  return m;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool RationalMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = r + 1; c < cols_; ++c)
      if (at(r, c) != at(c, r)) return false;
  return true;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix dimension mismatch in sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix dimension mismatch in difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& c) {
  for (auto& x : data_) x *= c;
  return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch in product");
  RationalMatrix out(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r)
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& x = a.at(r, k);
      if (x == 0) continue;
      for (int c = 0; c < b.cols_; ++c)
        if (b.at(k, c) != 0) out.at(r, c) += x * b.at(k, c);
    }
  return out;
}

std::string RationalMatrix::to_string() const {
  std::string s = "[";
  for (int r = 0; r < rows_; ++r) {
    s += r ? ", [" : "[";
    for (int c = 0; c < cols_; ++c) {
      if (c) s += ", ";
      s += freerot::to_string(at(r, c));
    }
    s += "]";
  }
  return s + "]";
}

RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a.at(i, j) == 0) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
    }
  return out;
}

RationalMatrix eval_matrix(const FreePolynomial& p, const GeneratorAssignment& assignment,
                           const std::map<Param, Rational>& params) {
  if (assignment.empty()) throw std::invalid_argument("empty generator assignment");
  const int n = assignment.begin()->second.rows();
  for (const auto& [g, m] : assignment)
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("generator " + g.to_string() + " assigned a matrix of the wrong size");

  // Words arrive in degree order, so every proper prefix is cached first.
  std::map<Word, RationalMatrix, WordLess> cache;
  cache.emplace(Word{}, RationalMatrix::identity(n));
  auto word_value = [&](const Word& w) -> const RationalMatrix& {
    for (std::size_t len = 1; len <= w.size(); ++len) {
      Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
      if (cache.count(prefix)) continue;
      auto g = assignment.find(prefix.back());
      if (g == assignment.end()) throw std::invalid_argument("no matrix for generator " + prefix.back().to_string());
      Word shorter(prefix.begin(), prefix.end() - 1);
      RationalMatrix m = cache.at(shorter) * g->second;
      cache.emplace(std::move(prefix), std::move(m));
    }
    return cache.at(w);
  };

  RationalMatrix out(n, n);
  for (const auto& [w, c] : p.terms()) {
    const Rational coeff = c.evaluate(params);
    if (coeff == 0) continue;
    out += coeff * word_value(w);
  }
  return out;
}

}  // namespace freerot
