#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "freerot/free_algebra.hpp"
#include "freerot/presentation.hpp"
#include "freerot/univariate.hpp"

namespace freerot {

enum class FactOrigin { Preset, Assumed, Derived };

/// A polynomial that vanishes in every *-representation of the session's
/// presentation and assumptions, for all parameter values (declared-nonzero
/// parameters nonzero).
struct Fact {
  FreePolynomial poly;
  FactOrigin origin = FactOrigin::Preset;
  std::string rule;   // "preset", "assume", or the deriving rule
  std::string label;
  std::vector<std::size_t> inputs;
};

/// One summand left * fact * right, or left * fact^* * right when `adjoint`.
struct CertificateTerm {
  FreePolynomial left;
  std::size_t fact = 0;
  FreePolynomial right;
  bool adjoint = false;
};

/// Claims target - sum_k left_k fact_k right_k = 0 in the free algebra.
struct Certificate {
  FreePolynomial target;
  std::vector<CertificateTerm> terms;

  void add(const FreePolynomial& left, std::size_t fact, const FreePolynomial& right, bool adjoint = false) {
    terms.push_back({left, fact, right, adjoint});
  }
};

class CertificateInvalid : public std::runtime_error {
 public:
  CertificateInvalid(const std::string& what, FreePolynomial residual)
      : std::runtime_error(what), residual_(std::move(residual)) {}
  const FreePolynomial& residual() const { return residual_; }

 private:
  FreePolynomial residual_;
};

enum class PositiveForm {
  Unit,            // q^* q
  Square,          // q^* g^2 q      -> g q = 0
  OneMinusSquare,  // q^* (1 - g^2) q -> (1 - g^2) q = 0, g a contraction
};

struct PositiveTerm {
  FreePolynomial q;
  Generator g;
  PositiveForm form = PositiveForm::Unit;
};

struct SearchOptions {
  std::size_t max_rows = 10'000'000;
  /// Include left*fact^*right rows for facts whose adjoint is not itself a fact.
  bool use_adjoints = true;
};

struct MembershipResult {
  bool member = false;
  std::optional<Certificate> certificate;
  std::optional<std::size_t> fact;  // index of the target once certified
  int degree_bound = 0;
  std::size_t rows = 0;
  std::size_t rank = 0;
};

std::string to_string(FactOrigin o);
std::string to_string(PositiveForm f);

/// Expands target - sum left*fact*right against a fact list.
FreePolynomial certificate_residual(const Certificate& c, const std::vector<Fact>& facts);

/// Sequential, single-owner proof state. Every rule application is logged, and
/// `replay` rebuilds an identical fact store from the log.
class Session {
 public:
  explicit Session(Presentation presentation);

  const Presentation& presentation() const { return pres_; }
  int d() const { return pres_.d(); }
  const std::vector<Fact>& facts() const { return facts_; }
  const Fact& fact(std::size_t k) const { return facts_.at(k); }
  std::size_t fact_count() const { return facts_.size(); }
  /// Index of a fact equal to p, if any.
  std::optional<std::size_t> find(const FreePolynomial& p) const;
  /// Index of the first fact with this label; throws std::out_of_range.
  std::size_t index_of(const std::string& label) const;

  const std::set<Param>& nonzero_params() const { return nonzero_; }
  void declare_nonzero(Param p);

  /// Appends p as an assumption. Zero is rejected as trivial (nullopt); a
  /// duplicate returns the existing index.
  std::optional<std::size_t> assume(const FreePolynomial& p, const std::string& label = {});

  /// Accepts the target as a fact when the certificate expands to zero.
  /// Throws CertificateInvalid carrying the residual otherwise.
  std::size_t check_certificate(const Certificate& c, const std::string& label = {});

  /// From a certified sum_k q_k^* h_k q_k = 0 derives each h'_k q_k = 0.
  /// Returns the new fact indices (terms whose output is identically zero are skipped).
  std::vector<std::size_t> positivity_split(const std::vector<PositiveTerm>& terms, const Certificate& witness,
                                            const std::string& label = {});

  /// From a certified p p^* = 0 derives p = 0.
  std::size_t star_cancel(const FreePolynomial& p, const Certificate& witness, const std::string& label = {});

  /// From a certified p(g) = 0 derives q(g) = 0 when every real root of p is a
  /// root of q. Throws SpectralRefusal if p may have irrational real roots,
  /// RuleNotApplicable if root containment fails.
  std::size_t spectral_shrink(Generator g, const UPoly& p, const UPoly& q, const Certificate& witness,
                              const std::string& label = {});

  /// Bounded ideal-membership search over the parameter-free facts. A member
  /// answer is certified into the fact store before returning.
  MembershipResult search_membership(const FreePolynomial& p, int degree_bound, const SearchOptions& opts = {},
                                     const std::string& label = {});

  const nlohmann::json& log() const { return log_; }
  /// {"format", "presentation", "entries"}.
  nlohmann::json transcript() const;
  /// SHA-256 (hex) of the compact transcript dump.
  std::string transcript_hash() const;
  /// Facts as {"poly", "origin", "rule", "label", "inputs"} records.
  nlohmann::json fact_store() const;

  /// Re-executes every logged entry. Throws std::runtime_error if any entry's
  /// recorded outcome is not reproduced.
  static Session replay(const nlohmann::json& transcript);

 private:
  std::size_t add_fact(FreePolynomial p, FactOrigin origin, std::string rule, std::string label,
                       std::vector<std::size_t> inputs);
  void validate_certificate(const Certificate& c) const;
  void check_scalars(const FreePolynomial& p, const char* what) const;
  std::vector<std::size_t> inputs_of(const Certificate& c) const;

  Presentation pres_;
  std::vector<Fact> facts_;
  std::map<std::string, std::size_t> by_text_;
  std::set<Param> nonzero_;
  nlohmann::json log_ = nlohmann::json::array();
};

nlohmann::json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const nlohmann::json& j);
nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j, int d);

/// Hex SHA-256 of a string.
std::string sha256_hex(const std::string& data);

/// Certificate that p reduces to `reduced` under the presentation's monomial
/// rules: p - reduced = sum of coeff * L * rel * R over rewrite steps. Fact
/// indices refer to the preset facts (relation k is fact k).
Certificate rewrite_certificate(const Presentation& pres, const FreePolynomial& p, FreePolynomial* reduced = nullptr);

}  // namespace freerot
