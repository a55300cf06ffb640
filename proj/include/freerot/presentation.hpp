#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "freerot/free_algebra.hpp"

namespace freerot {

enum class PresetKind { OPlus, HPlus, OMinusOne };

std::string to_string(PresetKind kind);
/// Accepts "O+", "H+", "O-1". Throws std::invalid_argument otherwise.
PresetKind parse_preset_kind(std::string_view s);

struct Relation {
  std::string label;
  FreePolynomial poly;
};

/// A finitely presented quotient of the free *-algebra on u_ij.
///
/// Labels of the preset relations:
///   normone.col(j)        sum_i u_ij^2 - 1
///   normone.row(i)        sum_j u_ij^2 - 1
///   ortho.col(j,j')       sum_i u_ij u_ij'            (j != j')
///   ortho.row(i,i')       sum_j u_ij u_i'j            (i != i')
///   hplus.row(i;j,j')     u_ij u_ij'                  (j != j')
///   hplus.col(j;i,i')     u_ij u_i'j                  (i != i')
///   anti(i,j;k,l)         u_ij u_kl + u_kl u_ij       (same row or column, (i,j) < (k,l))
///   comm(i,j;k,l)         u_ij u_kl - u_kl u_ij       (disjoint, (i,j) < (k,l))
class Presentation {
 public:
  /// Throws std::invalid_argument when a rule does not orient a listed
  /// relation (up to a rational multiple) or labels repeat.
  Presentation(std::string name, int d, std::vector<Relation> relations, RuleSet rules,
               std::vector<Generator> contractions, std::string contraction_note,
               std::optional<PresetKind> preset = std::nullopt);

  /// Throws std::invalid_argument for d < 2.
  static Presentation preset(PresetKind kind, int d);

  const std::string& name() const { return name_; }
  int d() const { return d_; }
  std::optional<PresetKind> preset_kind() const { return preset_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const RuleSet& rules() const { return rules_; }
  /// Index into relations() of the relation oriented by rules().rules()[k], and
  /// the rational c with pattern - sign*replacement = c * relation.
  std::size_t rule_relation(std::size_t k) const { return rule_relation_[k]; }
  const Rational& rule_scale(std::size_t k) const { return rule_scale_[k]; }

  const std::vector<Generator>& contractions() const { return contractions_; }
  const std::string& contraction_note() const { return contraction_note_; }
  bool is_contraction(Generator g) const;

  /// Index of the relation with this label; throws std::out_of_range.
  std::size_t index_of(std::string_view label) const;
  bool has_relation(std::string_view label) const;

  /// Copy without the relations whose labels start with `prefix`; rules that
  /// oriented them are dropped, and so is the contraction set when the
  /// normone relations go.
  Presentation without(std::string_view prefix, std::string name) const;

 private:
  std::string name_;
  int d_;
  std::vector<Relation> relations_;
  RuleSet rules_;
  std::vector<std::size_t> rule_relation_;
  std::vector<Rational> rule_scale_;
  std::vector<Generator> contractions_;
  std::string contraction_note_;
  std::optional<PresetKind> preset_;
};

std::string normone_col(int j);
std::string normone_row(int i);
std::string ortho_col(int j, int jp);
std::string ortho_row(int i, int ip);
std::string hplus_row(int i, int j, int jp);
std::string hplus_col(int j, int i, int ip);
/// "anti(i,j;k,l)" and "comm(i,j;k,l)" for generators a < b.
std::string anti_label(Generator a, Generator b);
std::string comm_label(Generator a, Generator b);

/// All generators u_ij of a d x d matrix in canonical order.
std::vector<Generator> all_generators(int d);

}  // namespace freerot
