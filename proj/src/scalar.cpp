#include "freerot/scalar.hpp"

#include <stdexcept>

namespace freerot {

std::string Param::to_string() const {
  return "k{" + std::to_string(order) + "," + std::to_string(var) + "}";
}

Monomial::Monomial(Param p, int exponent) {
  if (exponent != 0) factors_.emplace_back(p, exponent);
}

bool Monomial::has_negative_exponent() const {
  for (const auto& [p, e] : factors_)
    if (e < 0) return true;
  return false;
}

int Monomial::exponent_of(const Param& p) const {
  for (const auto& [q, e] : factors_)
    if (q == p) return e;
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (ia != a.factors_.end() || ib != b.factors_.end()) {
    if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
      out.factors_.push_back(*ia++);
    } else if (ia == a.factors_.end() || ib->first < ia->first) {
      out.factors_.push_back(*ib++);
    } else {
      const int e = ia->second + ib->second;
      if (e != 0) out.factors_.emplace_back(ia->first, e);
      ++ia;
      ++ib;
    }
  }
  return out;
}

Monomial Monomial::inverse() const {
  Monomial out = *this;
  for (auto& f : out.factors_) f.second = -f.second;
  return out;
}

std::string Monomial::to_string() const {
  std::string s;
  for (const auto& [p, e] : factors_) {
    if (!s.empty()) s += " ";
    s += p.to_string();
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

Scalar::Scalar(const Rational& q) {
  if (q != 0) terms_.emplace(Monomial{}, q);
}

Scalar Scalar::param(Param p, int exponent) { return term(Rational(1), Monomial(p, exponent)); }

Scalar Scalar::term(const Rational& c, Monomial m) {
  Scalar s;
  if (c != 0) s.terms_.emplace(std::move(m), c);
  return s;
}

bool Scalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Scalar::rational_value() const {
  if (!is_rational()) throw std::logic_error("scalar " + to_string() + " depends on parameters");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

std::set<Param> Scalar::params() const {
  std::set<Param> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [p, e] : m.factors()) out.insert(p);
  return out;
}

bool Scalar::has_negative_exponent() const {
  for (const auto& [m, c] : terms_)
    if (m.has_negative_exponent()) return true;
  return false;
}

void Scalar::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  if (a.is_zero() || b.is_zero()) return out;
  if (a.is_rational()) {
    out = b;
    out *= a.terms_.begin()->second;
    return out;
  }
  if (b.is_rational()) {
    out = a;
    out *= b.terms_.begin()->second;
    return out;
  }
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar& Scalar::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= q;
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Rational Scalar::evaluate(const std::map<Param, Rational>& values) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (const auto& [p, e] : m.factors()) {
      auto it = values.find(p);
      if (it == values.end()) throw std::invalid_argument("no value for parameter " + p.to_string());
      if (e < 0 && it->second == 0)
        throw std::invalid_argument("parameter " + p.to_string() + " inverted at value 0");
      Rational base = e < 0 ? Rational(1 / it->second) : it->second;
      for (int k = 0; k < (e < 0 ? -e : e); ++k) v *= base;
    }
    total += v;
  }
  return total;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool neg = c < 0;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    s += freerot::to_string(Rational(abs(c)));
    if (!m.is_one()) s += " * " + m.to_string();
  }
  return s;
}

}  // namespace freerot
