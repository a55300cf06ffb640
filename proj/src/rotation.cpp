#include "freerot/rotation.hpp"

#include <functional>
#include <stdexcept>
#include <string>

#include "freerot/errors.hpp"

namespace freerot {

OpWord op_word(std::span<const int> columns) {
  OpWord w;
  for (int j : columns) w.push_back({j, {}});
  return w;
}

RotatedFamily::RotatedFamily(FreeFamilySpec x, int d) : x_(std::move(x)), d_(d) {
  if (x_.d() != d_)
    throw std::invalid_argument("rotating " + std::to_string(x_.d()) + " variables by a " + std::to_string(d_) + "x" +
                                std::to_string(d_) + " matrix");
}

Scalar RotatedFamily::moment(std::span<const int> rows) const {
  std::vector<int> key(rows.begin(), rows.end());
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->values.find(key); it != cache_->values.end()) return it->second;
  }
  Scalar m = joint_free_moment(x_, rows);
  std::lock_guard lock(cache_->mutex);
  return cache_->values.emplace(std::move(key), std::move(m)).first->second;
}

namespace {

void check_word(const RotatedFamily& fam, const OpWord& w) {
  if (w.empty()) throw std::invalid_argument("operator-valued word must be nonempty");
  for (const auto& l : w)
    if (l.j < 1 || l.j > fam.d()) throw std::invalid_argument("column index " + std::to_string(l.j) + " out of range");
  if (static_cast<int>(w.size()) > fam.x().order())
    throw TruncationError("word of length " + std::to_string(w.size()) + " exceeds truncation order " +
                          std::to_string(fam.x().order()));
}

FreePolynomial b_of(const OpLetter& l, int d) { return l.b.is_zero() && l.b.dim() == 0 ? FreePolynomial::unit(d) : l.b; }

// u_{i_1 j_1} b_1 ... u_{i_n j_n} b_n
FreePolynomial rotated_word(const RotatedFamily& fam, const OpWord& w, std::span<const int> rows) {
  const int d = fam.d();
  FreePolynomial out = FreePolynomial::unit(d);
  for (std::size_t k = 0; k < w.size(); ++k) {
    out = out * gen(d, rows[k], w[k].j);
    const FreePolynomial b = b_of(w[k], d);
    if (!(b == FreePolynomial::unit(d))) out = out * b;
  }
  return out;
}

}  // namespace

FreePolynomial opval_moment(const RotatedFamily& fam, const OpWord& w) {
  check_word(fam, w);
  const int d = fam.d();
  const std::size_t n = w.size();
  // letter[k][i - 1] = u_{i j_k} b_k; prefix products are shared across row tuples.
  std::vector<std::vector<FreePolynomial>> letter(n);
  for (std::size_t k = 0; k < n; ++k)
    for (int i = 1; i <= d; ++i) {
      const FreePolynomial b = b_of(w[k], d);
      letter[k].push_back(b == FreePolynomial::unit(d) ? gen(d, i, w[k].j) : gen(d, i, w[k].j) * b);
    }
  FreePolynomial out(d);
  std::vector<int> rows(n, 1);
  std::vector<FreePolynomial> prefix(n + 1);
  prefix[0] = FreePolynomial::unit(d);
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == n) {
      const Scalar m = fam.moment(rows);
      if (!m.is_zero()) out += m * prefix[n];
      return;
    }
    for (int i = 1; i <= d; ++i) {
      rows[k] = i;
      prefix[k + 1] = prefix[k] * letter[k][static_cast<std::size_t>(i - 1)];
      go(k + 1);
    }
  };
  go(0);
  return out;
}

FreePolynomial opval_moment_nested(const RotatedFamily& fam, const OpWord& w, const NCPartition& pi) {
  check_word(fam, w);
  if (pi.size() != static_cast<int>(w.size()))
    throw std::invalid_argument("partition of " + std::to_string(pi.size()) + " elements for a word of length " +
                                std::to_string(w.size()));
  const int d = fam.d();
  // Remaining letters keep their original positions so blocks stay addressable.
  struct Slot {
    int pos;
    OpLetter letter;
  };
  std::vector<Slot> slots;
  for (std::size_t k = 0; k < w.size(); ++k) slots.push_back({static_cast<int>(k) + 1, {w[k].j, b_of(w[k], d)}});
  std::vector<std::vector<int>> blocks = pi.partition().blocks();
  FreePolynomial prefix = FreePolynomial::unit(d);

  while (!blocks.empty()) {
    // A block is an interval of the remaining letters iff its members are consecutive slots.
    std::size_t chosen = blocks.size();
    std::size_t first_slot = 0;
    for (std::size_t b = 0; b < blocks.size() && chosen == blocks.size(); ++b) {
      std::size_t s = 0;
      while (slots[s].pos != blocks[b].front()) ++s;
      bool interval = s + blocks[b].size() <= slots.size();
      for (std::size_t k = 0; interval && k < blocks[b].size(); ++k)
        interval = slots[s + k].pos == blocks[b][k];
      if (interval) {
        chosen = b;
        first_slot = s;
      }
    }
    if (chosen == blocks.size()) throw std::logic_error("no interval block in a non-crossing partition");
    OpWord inner;
    for (std::size_t k = 0; k < blocks[chosen].size(); ++k) inner.push_back(slots[first_slot + k].letter);
    const FreePolynomial value = opval_moment(fam, inner);
    if (first_slot == 0)
      prefix = prefix * value;
    else
      slots[first_slot - 1].letter.b = slots[first_slot - 1].letter.b * value;
    slots.erase(slots.begin() + static_cast<std::ptrdiff_t>(first_slot),
                slots.begin() + static_cast<std::ptrdiff_t>(first_slot + blocks[chosen].size()));
    blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(chosen));
  }
  return prefix;
}

FreePolynomial opval_cumulant_mobius(const RotatedFamily& fam, const OpWord& w) {
  check_word(fam, w);
  auto lattice = NCLattice::get(static_cast<int>(w.size()));
  FreePolynomial out(fam.d());
  const auto& parts = lattice->partitions();
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const std::int64_t mu = lattice->mobius(k);
    if (mu == 0) continue;
    FreePolynomial e = opval_moment_nested(fam, w, parts[k]);
    e *= Scalar(Rational(mu));
    out += e;
  }
  return out;
}

FreePolynomial opval_cumulant_closed(const RotatedFamily& fam, const OpWord& w) {
  check_word(fam, w);
  const int n = static_cast<int>(w.size());
  FreePolynomial out(fam.d());
  for (int i = 1; i <= fam.d(); ++i) {
    const Scalar& k = fam.x().kappa(n, i);
    if (k.is_zero()) continue;
    const std::vector<int> rows(w.size(), i);
    out += k * rotated_word(fam, w, rows);
  }
  return out;
}

std::vector<FreePolynomial> freeness_constraints(const RotatedFamily& fam, int n, std::span<const int> columns,
                                                 std::span<const FreePolynomial> bs) {
  if (n < 2 || static_cast<int>(columns.size()) != n)
    throw std::invalid_argument("freeness constraints need a column word of length n >= 2");
  bool constant = true;
  for (int j : columns) constant = constant && j == columns[0];
  if (constant) throw std::invalid_argument("column word is constant; the cumulant is not mixed");
  if (!bs.empty() && static_cast<int>(bs.size()) != n) throw std::invalid_argument("need one b per letter");
  OpWord w = op_word(columns);
  for (std::size_t k = 0; k < bs.size(); ++k) w[k].b = bs[k];
  check_word(fam, w);
  std::vector<FreePolynomial> out;
  for (int i = 1; i <= fam.d(); ++i) out.push_back(rotated_word(fam, w, std::vector<int>(w.size(), i)));
  if (fam.x().is_identical()) {
    FreePolynomial sum(fam.d());
    for (const auto& p : out) sum += p;
    return {sum};
  }
  return out;
}

}  // namespace freerot
