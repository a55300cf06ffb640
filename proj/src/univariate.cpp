#include "freerot/univariate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace freerot {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(const Rational& c, int k) {
  if (k < 0) throw std::invalid_argument("negative exponent");
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
  v.back() = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& UPoly::leading() const {
  if (c_.empty()) throw std::logic_error("zero polynomial has no leading coefficient");
  return c_.back();
}

Rational UPoly::coefficient(int k) const {
  return k < 0 || k > degree() ? Rational(0) : c_[static_cast<std::size_t>(k)];
}

Rational UPoly::operator()(const Rational& t) const {
  Rational v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
  return v;
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  UPoly out = *this;
  const Rational lead = leading();
  for (auto& x : out.c_) x /= lead;
  return out;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(v));
}

std::string UPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = c_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    const Rational mag = abs(c);
    if (k == 0 || mag != 1) s += freerot::to_string(mag);
    if (k > 0) {
      if (mag != 1) s += "*";
      s += k == 1 ? "t" : "t^" + std::to_string(k);
    }
  }
  return s;
}

DivMod divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rational> q(static_cast<std::size_t>(std::max(a.degree() - b.degree() + 1, 0)), Rational(0));
  UPoly r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    const Rational f = r.leading() / b.leading();
    q[static_cast<std::size_t>(shift)] = f;
    r -= UPoly::monomial(f, shift) * b;
  }
  return {UPoly(std::move(q)), r};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UPoly square_free_part(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("square-free part of the zero polynomial");
  if (p.degree() == 0) return UPoly::constant(1);
  return divmod(p, gcd(p, p.derivative())).quotient.monic();
}

namespace {

std::vector<UPoly> sturm_chain(const UPoly& p) {
  std::vector<UPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    chain.push_back(UPoly() - divmod(chain[chain.size() - 2], chain.back()).remainder);
  }
  chain.pop_back();
  return chain;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sign_at_infinity(const UPoly& q, bool positive) {
  const int lead = sign(q.leading());
  return (positive || q.degree() % 2 == 0) ? lead : -lead;
}

int changes_at(const std::vector<UPoly>& chain, const Rational& t) {
  std::vector<int> s;
  for (const auto& q : chain) s.push_back(sign(q(t)));
  return sign_changes(s);
}

}  // namespace

int count_real_roots(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
  const UPoly sf = square_free_part(p);
  if (sf.degree() == 0) return 0;
  const auto chain = sturm_chain(sf);
  std::vector<int> neg, pos;
  for (const auto& q : chain) {
    neg.push_back(sign_at_infinity(q, false));
    pos.push_back(sign_at_infinity(q, true));
  }
  return sign_changes(neg) - sign_changes(pos);
}

int count_real_roots(const UPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
  if (!(a < b)) throw std::invalid_argument("empty interval");
  const UPoly sf = square_free_part(p);
  if (sf.degree() == 0) return 0;
  const auto chain = sturm_chain(sf);
  // Zero signs are skipped, so a root at b is counted and a root at a is not.
  return changes_at(chain, a) - changes_at(chain, b);
}

namespace {

constexpr unsigned long kTrialDivisionLimit = 1'000'000;

std::vector<Integer> positive_divisors(const Integer& n) {
  Integer m = abs(n);
  std::vector<std::pair<Integer, int>> factors;
  for (unsigned long p = 2; Integer(p) * p <= m; ++p) {
    if (p > kTrialDivisionLimit) throw std::range_error("coefficient too large for rational-root search");
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++e;
    }
    if (e) factors.emplace_back(Integer(p), e);
  }
  if (m > 1) factors.emplace_back(m, 1);
  std::vector<Integer> divs{Integer(1)};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t t = 0; t < base; ++t) divs.push_back(divs[t] * pk);
    }
  }
  return divs;
}

}  // namespace

std::vector<Rational> rational_roots(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  std::set<Rational> roots;
  // Strip factors of t.
  std::size_t low = 0;
  while (p.coeffs()[low] == 0) ++low;
  if (low > 0) roots.insert(Rational(0));
  std::vector<Rational> rest(p.coeffs().begin() + static_cast<std::ptrdiff_t>(low), p.coeffs().end());
  UPoly q(rest);
  if (q.degree() >= 1) {
    Integer lcm_den = 1;
    for (const auto& c : q.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    const Integer a0 = Rational(q.coeffs().front() * lcm_den).get_num();
    const Integer an = Rational(q.leading() * lcm_den).get_num();
    const auto num = positive_divisors(a0);
    const auto den = positive_divisors(an);
    for (const auto& n : num)
      for (const auto& m : den) {
        Rational r(n, m);
        r.canonicalize();
        for (const Rational& cand : {r, Rational(-r)})
          if (q(cand) == 0) roots.insert(cand);
      }
  }
  return {roots.begin(), roots.end()};
}

RealRootReport real_roots(const UPoly& p) {
  RealRootReport out;
  out.rational_roots = rational_roots(p);
  out.irrational_roots = count_real_roots(p) - static_cast<int>(out.rational_roots.size());
  return out;
}

FreePolynomial evaluate_at(const UPoly& p, int d, Generator g) {
  FreePolynomial out(d);
  for (int k = 0; k <= p.degree(); ++k) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c != 0) out.add_term(power(g, k), Scalar(c));
  }
  return out;
}

}  // namespace freerot
