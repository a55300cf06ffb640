#include "freerot/presentation.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace freerot {

std::string to_string(PresetKind kind) {
  switch (kind) {
    case PresetKind::OPlus:
      return "O+";
    case PresetKind::HPlus:
      return "H+";
    case PresetKind::OMinusOne:
      return "O-1";
  }
  return "?";
}

PresetKind parse_preset_kind(std::string_view s) {
  if (s == "O+") return PresetKind::OPlus;
  if (s == "H+") return PresetKind::HPlus;
  if (s == "O-1") return PresetKind::OMinusOne;
  throw std::invalid_argument("unknown preset '" + std::string(s) + "' (expected O+, H+ or O-1)");
}

std::string normone_col(int j) { return "normone.col(" + std::to_string(j) + ")"; }
std::string normone_row(int i) { return "normone.row(" + std::to_string(i) + ")"; }
std::string ortho_col(int j, int jp) { return "ortho.col(" + std::to_string(j) + "," + std::to_string(jp) + ")"; }
std::string ortho_row(int i, int ip) { return "ortho.row(" + std::to_string(i) + "," + std::to_string(ip) + ")"; }
std::string hplus_row(int i, int j, int jp) {
  return "hplus.row(" + std::to_string(i) + ";" + std::to_string(j) + "," + std::to_string(jp) + ")";
}
std::string hplus_col(int j, int i, int ip) {
  return "hplus.col(" + std::to_string(j) + ";" + std::to_string(i) + "," + std::to_string(ip) + ")";
}

std::vector<Generator> all_generators(int d) {
  std::vector<Generator> out;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) out.emplace_back(i, j);
  return out;
}

namespace {

// Scale so that the leading coefficient is 1; parameter-free input only.
std::pair<FreePolynomial, Rational> normalized(const FreePolynomial& p) {
  const Rational lead = p.terms().rbegin()->second.rational_value();
  FreePolynomial q = p;
  q *= Scalar(Rational(1 / lead));
  return {q, lead};
}

std::string pair_label(const char* kind, Generator a, Generator b) {
  return std::string(kind) + "(" + std::to_string(a.row) + "," + std::to_string(a.col) + ";" +
         std::to_string(b.row) + "," + std::to_string(b.col) + ")";
}

}  // namespace

std::string anti_label(Generator a, Generator b) { return pair_label("anti", a, b); }
std::string comm_label(Generator a, Generator b) { return pair_label("comm", a, b); }

Presentation::Presentation(std::string name, int d, std::vector<Relation> relations, RuleSet rules,
                           std::vector<Generator> contractions, std::string contraction_note,
                           std::optional<PresetKind> preset)
    : name_(std::move(name)),
      d_(d),
      relations_(std::move(relations)),
      rules_(std::move(rules)),
      contractions_(std::move(contractions)),
      contraction_note_(std::move(contraction_note)),
      preset_(preset) {
  if (d_ < 1) throw std::invalid_argument("presentation needs d >= 1");
  std::set<std::string> labels;
  std::map<std::string, std::size_t> by_shape;
  for (std::size_t k = 0; k < relations_.size(); ++k) {
    auto& r = relations_[k];
    if (!labels.insert(r.label).second) throw std::invalid_argument("duplicate relation label " + r.label);
    if (r.poly.is_zero()) throw std::invalid_argument("relation " + r.label + " is zero");
    if (r.poly.dim() != d_) throw std::invalid_argument("relation " + r.label + " has the wrong d");
    if (r.poly.is_parameter_free()) by_shape.emplace(to_text(normalized(r.poly).first), k);
  }
  for (const auto& rule : rules_.rules()) {
    for (const auto& g : rule.pattern)
      if (g.row > d_ || g.col > d_) throw std::invalid_argument("rule " + rule.to_string() + " leaves 1.." + std::to_string(d_));
    auto [shape, lead] = normalized(rule.as_relation(d_));
    auto it = by_shape.find(to_text(shape));
    if (it == by_shape.end())
      throw std::invalid_argument("rule " + rule.to_string() + " does not orient any listed relation");
    const auto [rel_shape, rel_lead] = normalized(relations_[it->second].poly);
    rule_relation_.push_back(it->second);
    rule_scale_.push_back(lead / rel_lead);
  }
  for (const auto& g : contractions_)
    if (g.row > d_ || g.col > d_) throw std::invalid_argument("contraction generator outside the matrix");
}

Presentation Presentation::preset(PresetKind kind, int d) {
  if (d < 2) throw std::invalid_argument("preset presentations need d >= 2");
  if (d > 255) throw std::invalid_argument("d too large");
  std::vector<Relation> rels;
  for (int j = 1; j <= d; ++j) {
    FreePolynomial p = -FreePolynomial::unit(d);
    for (int i = 1; i <= d; ++i) p += gen_power(d, i, j, 2);
    rels.push_back({normone_col(j), p});
  }
  for (int i = 1; i <= d; ++i) {
    FreePolynomial p = -FreePolynomial::unit(d);
    for (int j = 1; j <= d; ++j) p += gen_power(d, i, j, 2);
    rels.push_back({normone_row(i), p});
  }
  for (int j = 1; j <= d; ++j)
    for (int jp = 1; jp <= d; ++jp) {
      if (j == jp) continue;
      FreePolynomial p(d);
      for (int i = 1; i <= d; ++i) p += gen(d, i, j) * gen(d, i, jp);
      rels.push_back({ortho_col(j, jp), p});
    }
  for (int i = 1; i <= d; ++i)
    for (int ip = 1; ip <= d; ++ip) {
      if (i == ip) continue;
      FreePolynomial p(d);
      for (int j = 1; j <= d; ++j) p += gen(d, i, j) * gen(d, ip, j);
      rels.push_back({ortho_row(i, ip), p});
    }

  std::vector<RewriteRule> rules;
  std::string name = "O+(" + std::to_string(d) + ")";
  if (kind == PresetKind::HPlus) {
    name = "H+(" + std::to_string(d) + ")";
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j)
        for (int jp = 1; jp <= d; ++jp) {
          if (j == jp) continue;
          rels.push_back({hplus_row(i, j, jp), gen(d, i, j) * gen(d, i, jp)});
          rules.emplace_back(Word{Generator(i, j), Generator(i, jp)}, 0, Word{});
        }
    for (int j = 1; j <= d; ++j)
      for (int i = 1; i <= d; ++i)
        for (int ip = 1; ip <= d; ++ip) {
          if (i == ip) continue;
          rels.push_back({hplus_col(j, i, ip), gen(d, i, j) * gen(d, ip, j)});
          rules.emplace_back(Word{Generator(i, j), Generator(ip, j)}, 0, Word{});
        }
  } else if (kind == PresetKind::OMinusOne) {
    name = "O-1(" + std::to_string(d) + ")";
    const auto gens = all_generators(d);
    for (std::size_t x = 0; x < gens.size(); ++x)
      for (std::size_t y = x + 1; y < gens.size(); ++y) {
        const Generator a = gens[x], b = gens[y];
        const auto ab = FreePolynomial::monomial(d, {a, b});
        const auto ba = FreePolynomial::monomial(d, {b, a});
        if (a.shares_line_with(b)) {
          rels.push_back({pair_label("anti", a, b), ab + ba});
          rules.emplace_back(Word{b, a}, -1, Word{a, b});
        }
      }
    for (std::size_t x = 0; x < gens.size(); ++x)
      for (std::size_t y = x + 1; y < gens.size(); ++y) {
        const Generator a = gens[x], b = gens[y];
        if (a.shares_line_with(b)) continue;
        rels.push_back({pair_label("comm", a, b), FreePolynomial::monomial(d, {a, b}) - FreePolynomial::monomial(d, {b, a})});
        rules.emplace_back(Word{b, a}, 1, Word{a, b});
      }
  }
  return Presentation(std::move(name), d, std::move(rels), RuleSet(std::move(rules)), all_generators(d),
                      "u_ij^2 <= sum_i u_ij^2 = 1 (normone)", kind);
}

bool Presentation::is_contraction(Generator g) const {
  for (const auto& c : contractions_)
    if (c == g) return true;
  return false;
}

std::size_t Presentation::index_of(std::string_view label) const {
  for (std::size_t k = 0; k < relations_.size(); ++k)
    if (relations_[k].label == label) return k;
  throw std::out_of_range("no relation labelled " + std::string(label) + " in " + name_);
}

bool Presentation::has_relation(std::string_view label) const {
  for (const auto& r : relations_)
    if (r.label == label) return true;
  return false;
}

Presentation Presentation::without(std::string_view prefix, std::string name) const {
  std::vector<Relation> rels;
  for (const auto& r : relations_)
    if (r.label.rfind(prefix, 0) != 0) rels.push_back(r);
  std::vector<RewriteRule> rules;
  for (std::size_t k = 0; k < rules_.rules().size(); ++k)
    if (relations_[rule_relation_[k]].label.rfind(prefix, 0) != 0) rules.push_back(rules_.rules()[k]);
  const bool drops_normone = std::string_view("normone").rfind(prefix, 0) == 0 || prefix.rfind("normone", 0) == 0;
  return Presentation(std::move(name), d_, std::move(rels), RuleSet(std::move(rules)),
                      drops_normone ? std::vector<Generator>{} : contractions_,
                      drops_normone ? std::string{} : contraction_note_, std::nullopt);
}

}  // namespace freerot
