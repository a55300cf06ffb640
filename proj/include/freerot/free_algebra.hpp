#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "freerot/scalar.hpp"

namespace freerot {

/// Self-adjoint generator u[row,col] of the matrix algebra, 1-based.
struct Generator {
  std::uint8_t row = 1;
  std::uint8_t col = 1;

  Generator() = default;
  Generator(int i, int j);

  bool shares_line_with(const Generator& o) const { return row == o.row || col == o.col; }
  std::string to_string() const;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

using Word = std::vector<Generator>;

/// Degree first, then lexicographic on (row, col).
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

Word power(Generator g, int k);
Word concat(const Word& a, const Word& b);
std::string to_string(const Word& w);

inline constexpr std::size_t kDefaultTermCap = 1'000'000;

/// Element of the free *-algebra on {u_ij : 1 <= i,j <= d} with Scalar
/// coefficients. `dim() == 0` marks a polynomial not yet tied to a d (only
/// constants can be in that state).
class FreePolynomial {
 public:
  using TermMap = std::map<Word, Scalar, WordLess>;

  FreePolynomial() = default;
  explicit FreePolynomial(int d);

  static FreePolynomial constant(const Scalar& c, int d = 0);
  static FreePolynomial unit(int d = 0) { return constant(Scalar(1), d); }
  static FreePolynomial generator(int d, int i, int j);
  static FreePolynomial monomial(int d, Word w, const Scalar& c = Scalar(1));

  int dim() const { return d_; }
  bool is_zero() const { return terms_.empty(); }
  /// Length of the longest word, -1 for zero.
  int degree() const;
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  Scalar coefficient(const Word& w) const;
  bool is_parameter_free() const;
  std::set<Param> params() const;
  bool has_negative_exponent() const;

  void add_term(const Word& w, const Scalar& c);

  FreePolynomial& operator+=(const FreePolynomial& o);
  FreePolynomial& operator-=(const FreePolynomial& o);
  FreePolynomial& operator*=(const Scalar& c);
  friend FreePolynomial operator+(FreePolynomial a, const FreePolynomial& b) { return a += b; }
  friend FreePolynomial operator-(FreePolynomial a, const FreePolynomial& b) { return a -= b; }
  friend FreePolynomial operator*(const FreePolynomial& a, const FreePolynomial& b);
  friend FreePolynomial operator*(const Scalar& c, FreePolynomial p) { return p *= c; }
  FreePolynomial operator-() const;

  friend bool operator==(const FreePolynomial& a, const FreePolynomial& b) { return a.terms_ == b.terms_; }

  static std::size_t term_cap();
  static void set_term_cap(std::size_t cap);

 private:
  void adopt_dim(int other);
  void check_cap() const;

  int d_ = 0;
  TermMap terms_;
};

/// Reverses every word; coefficients are real so they are left alone.
FreePolynomial adjoint(const FreePolynomial& p);

/// Canonical text form: "0", or terms "c [* k{n,i}^e ...] [* u[i,j] u[k,l] ...]"
/// joined by " + " / " - ", ordered by word then parameter monomial.
std::string to_text(const FreePolynomial& p);

/// Parses the canonical form (and looser spellings: implicit coefficient 1,
/// powers u[i,j]^k). Generators must lie in 1..d. Throws std::invalid_argument.
FreePolynomial parse_polynomial(std::string_view text, int d);

/// Length-2 pattern rewritten to zero or to +/- a smaller word of length 2.
struct RewriteRule {
  Word pattern;
  int sign = 0;  // 0: pattern -> 0
  Word replacement;

  /// Throws std::invalid_argument unless the rule strictly decreases words.
  RewriteRule(Word pattern, int sign, Word replacement);
  /// pattern - sign * replacement, the relation this rule orients.
  FreePolynomial as_relation(int d) const;
  std::string to_string() const;
};

class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::vector<RewriteRule> rules);

  const std::vector<RewriteRule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }
  /// Rule whose pattern is (a, b), if any.
  const RewriteRule* find(Generator a, Generator b) const;
  /// Index in rules() of the rule for (a, b), or -1.
  int index_of(Generator a, Generator b) const;

 private:
  std::vector<RewriteRule> rules_;
  std::map<std::pair<Generator, Generator>, int> lookup_;
};

/// One rewrite step at `position` of a word with rule `rule`.
struct RewriteStep {
  std::size_t position;
  int rule;
};

/// Normal form of a single word: sign (0 when the word vanishes) and word.
struct ReducedWord {
  int sign = 1;
  Word word;
  std::vector<RewriteStep> steps;
};

/// Applies rules leftmost-first until no pattern occurs.
ReducedWord reduce_word(const Word& w, const RuleSet& rules);
FreePolynomial monomial_reduce(const FreePolynomial& p, const RuleSet& rules);

// Letter shorthands used by the presets and scenario pipelines.
FreePolynomial gen(int d, int i, int j);
FreePolynomial gen_power(int d, int i, int j, int k);

}  // namespace freerot
