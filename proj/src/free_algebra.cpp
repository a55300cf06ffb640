#include "freerot/free_algebra.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <stdexcept>

#include "freerot/errors.hpp"

namespace freerot {

namespace {
std::atomic<std::size_t> g_term_cap{kDefaultTermCap};
}

Generator::Generator(int i, int j) : row(static_cast<std::uint8_t>(i)), col(static_cast<std::uint8_t>(j)) {
  if (i < 1 || j < 1 || i > 255 || j > 255) throw std::invalid_argument("generator indices must be in 1..255");
}

std::string Generator::to_string() const {
  return "u[" + std::to_string(row) + "," + std::to_string(col) + "]";
}

Word power(Generator g, int k) { return Word(static_cast<std::size_t>(std::max(k, 0)), g); }

Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& g : w) {
    if (!s.empty()) s += " ";
    s += g.to_string();
  }
  return s;
}

FreePolynomial::FreePolynomial(int d) : d_(d) {
  if (d < 0) throw std::invalid_argument("negative matrix size");
}

FreePolynomial FreePolynomial::constant(const Scalar& c, int d) {
  FreePolynomial p(d);
  p.add_term({}, c);
  return p;
}

FreePolynomial FreePolynomial::generator(int d, int i, int j) {
  return monomial(d, {Generator(i, j)});
}

FreePolynomial FreePolynomial::monomial(int d, Word w, const Scalar& c) {
  for (const auto& g : w)
    if (g.row > d || g.col > d)
      throw std::invalid_argument(g.to_string() + " outside a " + std::to_string(d) + "x" + std::to_string(d) +
                                  " generator matrix");
  FreePolynomial p(d);
  p.add_term(w, c);
  return p;
}

int FreePolynomial::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size());
}

Scalar FreePolynomial::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar() : it->second;
}

bool FreePolynomial::is_parameter_free() const {
  for (const auto& [w, c] : terms_)
    if (!c.is_rational()) return false;
  return true;
}

std::set<Param> FreePolynomial::params() const {
  std::set<Param> out;
  for (const auto& [w, c] : terms_) {
    auto ps = c.params();
    out.insert(ps.begin(), ps.end());
  }
  return out;
}

bool FreePolynomial::has_negative_exponent() const {
  for (const auto& [w, c] : terms_)
    if (c.has_negative_exponent()) return true;
  return false;
}

void FreePolynomial::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void FreePolynomial::adopt_dim(int other) {
  if (other == 0) return;
  if (d_ == 0) {
    d_ = other;
  } else if (d_ != other) {
    throw std::invalid_argument("polynomials over different generator matrices (d=" + std::to_string(d_) +
                                " vs d=" + std::to_string(other) + ")");
  }
}

void FreePolynomial::check_cap() const {
  if (terms_.size() > g_term_cap.load())
    throw ResourceError("polynomial exceeds the term cap of " + std::to_string(g_term_cap.load()));
}

std::size_t FreePolynomial::term_cap() { return g_term_cap.load(); }
void FreePolynomial::set_term_cap(std::size_t cap) { g_term_cap.store(cap); }

FreePolynomial& FreePolynomial::operator+=(const FreePolynomial& o) {
  adopt_dim(o.d_);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  check_cap();
  return *this;
}

FreePolynomial& FreePolynomial::operator-=(const FreePolynomial& o) {
  adopt_dim(o.d_);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  check_cap();
  return *this;
}

FreePolynomial& FreePolynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

FreePolynomial operator*(const FreePolynomial& a, const FreePolynomial& b) {
  FreePolynomial out(a.d_);
  out.adopt_dim(b.d_);
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) {
      out.add_term(concat(wa, wb), ca * cb);
      if (out.terms_.size() > g_term_cap.load()) out.check_cap();
    }
  return out;
}

FreePolynomial FreePolynomial::operator-() const {
  FreePolynomial out = *this;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

FreePolynomial adjoint(const FreePolynomial& p) {
  FreePolynomial out(p.dim());
  for (const auto& [w, c] : p.terms()) {
    Word r(w.rbegin(), w.rend());
    out.add_term(r, c);
  }
  return out;
}

std::string to_text(const FreePolynomial& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    for (const auto& [m, q] : c.terms()) {
      const bool neg = q < 0;
      if (first)
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      first = false;
      s += to_string(Rational(abs(q)));
      if (!m.is_one()) s += " * " + m.to_string();
      if (!w.empty()) s += " * " + to_string(w);
    }
  }
  return s;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, int d) : s_(text), d_(d) {}

  FreePolynomial parse() {
    FreePolynomial out(d_);
    skip_ws();
    if (at_end()) fail("empty input");
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      first = false;
      parse_term(out, sign);
    }
    return out;
  }

 private:
  void parse_term(FreePolynomial& out, int sign) {
    Rational coeff(sign);
    Monomial mono;
    Word word;
    bool any = false;
    while (true) {
      skip_ws();
      if (at_end() || peek() == '+' || peek() == '-') break;
      if (peek() == '*') {
        if (!any) fail("factor expected before '*'");
        ++pos_;
        continue;
      }
      any = true;
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= parse_number();
      } else if (c == 'k') {
        ++pos_;
        expect('{');
        const int n = parse_int();
        expect(',');
        const int i = parse_int();
        expect('}');
        const int e = parse_exponent(true);
        mono = mono * Monomial(Param{n, i}, e);
      } else if (c == 'u') {
        ++pos_;
        expect('[');
        const int i = parse_int();
        expect(',');
        const int j = parse_int();
        expect(']');
        if (i < 1 || j < 1 || i > d_ || j > d_)
          fail("generator u[" + std::to_string(i) + "," + std::to_string(j) + "] outside d=" + std::to_string(d_));
        const int e = parse_exponent(false);
        for (int k = 0; k < e; ++k) word.emplace_back(i, j);
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
    if (!any) fail("empty term");
    out.add_term(word, Scalar::term(coeff, mono));
  }

  Rational parse_number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) ++pos_;
    return parse_rational(s_.substr(start, pos_ - start));
  }

  int parse_int() {
    skip_ws();
    bool neg = false;
    if (!at_end() && peek() == '-') {
      neg = true;
      ++pos_;
    }
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("integer expected");
    long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1'000'000) fail("integer too large");
      ++pos_;
    }
    skip_ws();
    return static_cast<int>(neg ? -v : v);
  }

  int parse_exponent(bool allow_negative) {
    if (at_end() || peek() != '^') return 1;
    ++pos_;
    const int e = parse_int();
    if (e == 0 || (!allow_negative && e < 0)) fail("invalid exponent");
    return e;
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view s_;
  int d_;
  std::size_t pos_ = 0;
};

}  // namespace

FreePolynomial parse_polynomial(std::string_view text, int d) {
  if (d < 1) throw std::invalid_argument("parse_polynomial needs d >= 1");
  return PolyParser(text, d).parse();
}

RewriteRule::RewriteRule(Word pat, int s, Word repl)
    : pattern(std::move(pat)), sign(s), replacement(std::move(repl)) {
  if (pattern.size() != 2) throw std::invalid_argument("rewrite patterns have exactly two letters");
  if (sign < -1 || sign > 1) throw std::invalid_argument("rewrite sign must be -1, 0 or 1");
  if (sign == 0) {
    replacement.clear();
  } else {
    if (replacement.size() != 2) throw std::invalid_argument("replacement must keep the degree");
    if (!WordLess{}(replacement, pattern))
      throw std::invalid_argument("replacement " + freerot::to_string(replacement) + " is not smaller than " +
                                  freerot::to_string(pattern));
  }
}

FreePolynomial RewriteRule::as_relation(int d) const {
  FreePolynomial p = FreePolynomial::monomial(d, pattern);
  if (sign != 0) p -= FreePolynomial::monomial(d, replacement, Scalar(sign));
  return p;
}

std::string RewriteRule::to_string() const {
  std::string rhs = sign == 0 ? "0" : (sign < 0 ? "-" : "") + freerot::to_string(replacement);
  return freerot::to_string(pattern) + " -> " + rhs;
}

RuleSet::RuleSet(std::vector<RewriteRule> rules) : rules_(std::move(rules)) {
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    auto key = std::make_pair(rules_[k].pattern[0], rules_[k].pattern[1]);
    if (!lookup_.emplace(key, static_cast<int>(k)).second)
      throw std::invalid_argument("two rules share the pattern " + freerot::to_string(rules_[k].pattern));
  }
}

const RewriteRule* RuleSet::find(Generator a, Generator b) const {
  const int k = index_of(a, b);
  return k < 0 ? nullptr : &rules_[static_cast<std::size_t>(k)];
}

int RuleSet::index_of(Generator a, Generator b) const {
  auto it = lookup_.find({a, b});
  return it == lookup_.end() ? -1 : it->second;
}

ReducedWord reduce_word(const Word& w, const RuleSet& rules) {
  ReducedWord out{1, w, {}};
  if (rules.empty()) return out;
  std::size_t k = 0;
  while (k + 1 < out.word.size()) {
    const int r = rules.index_of(out.word[k], out.word[k + 1]);
    if (r < 0) {
      ++k;
      continue;
    }
    const auto& rule = rules.rules()[static_cast<std::size_t>(r)];
    out.steps.push_back({k, r});
    if (rule.sign == 0) {
      out.sign = 0;
      out.word.clear();
      return out;
    }
    out.sign *= rule.sign;
    out.word[k] = rule.replacement[0];
    out.word[k + 1] = rule.replacement[1];
    // A rewrite can only create a new match with the letter on its left.
    k = k > 0 ? k - 1 : 0;
  }
  return out;
}

FreePolynomial monomial_reduce(const FreePolynomial& p, const RuleSet& rules) {
  FreePolynomial out(p.dim());
  for (const auto& [w, c] : p.terms()) {
    auto r = reduce_word(w, rules);
    if (r.sign == 0) continue;
    Scalar coeff = c;
    if (r.sign < 0) coeff = -coeff;
    out.add_term(r.word, coeff);
  }
  return out;
}

FreePolynomial gen(int d, int i, int j) { return FreePolynomial::generator(d, i, j); }

FreePolynomial gen_power(int d, int i, int j, int k) {
  return FreePolynomial::monomial(d, power(Generator(i, j), k));
}

}  // namespace freerot
