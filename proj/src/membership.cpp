#include <algorithm>
#include <unordered_map>

#include "freerot/errors.hpp"
#include "freerot/kernel.hpp"

namespace freerot {

using nlohmann::json;

namespace {

using Key = std::uint64_t;
using SparseRow = std::vector<std::pair<Key, Rational>>;  // ascending keys, no zeros
using Combo = std::vector<std::pair<std::uint32_t, Rational>>;

// Words of length <= D ranked in canonical order: shorter first, then base-d^2
// digits with u_ij as digit (i-1)d + (j-1).
class WordIndex {
 public:
  WordIndex(int d, int max_len) : base_(static_cast<Key>(d) * static_cast<Key>(d)), d_(d) {
    Key pw = 1, off = 0;
    for (int len = 0; len <= max_len; ++len) {
      pow_.push_back(pw);
      offset_.push_back(off);
      if (pw > (Key(1) << 40) / base_) throw ResourceError("word space too large for the membership search");
      off += pw;
      pw *= base_;
    }
  }

  Key base() const { return base_; }
  Key count(int len) const { return pow_[static_cast<std::size_t>(len)]; }
  Key pow(int len) const { return pow_[static_cast<std::size_t>(len)]; }
  Key offset(int len) const { return offset_[static_cast<std::size_t>(len)]; }

  Key digits(const Word& w) const {
    Key v = 0;
    for (const auto& g : w) v = v * base_ + static_cast<Key>((g.row - 1) * d_ + (g.col - 1));
    return v;
  }

  Word word(int len, Key digits) const {
    Word w(static_cast<std::size_t>(len));
    for (int k = len - 1; k >= 0; --k) {
      const int g = static_cast<int>(digits % base_);
      digits /= base_;
      w[static_cast<std::size_t>(k)] = Generator(g / d_ + 1, g % d_ + 1);
    }
    return w;
  }

 private:
  Key base_;
  int d_;
  std::vector<Key> pow_;
  std::vector<Key> offset_;
};

struct RowSpec {
  std::size_t fact;
  bool adjoint;
  int left_len;
  Key left;
  int right_len;
  Key right;
};

template <class Vec, class Scale>
Vec axpy(const Vec& a, const Scale& f, const Vec& b) {
  // a - f * b, merging ascending keys.
  Vec out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, -(f * ib->second));
      ++ib;
    } else {
      Rational v = ia->second - f * ib->second;
      if (v != 0) out.emplace_back(ia->first, std::move(v));
      ++ia;
      ++ib;
    }
  }
  return out;
}

struct TermList {
  std::vector<std::pair<int, Key>> words;  // (length, digits)
  std::vector<Rational> coeffs;
};

TermList term_list(const FreePolynomial& p, const WordIndex& idx) {
  TermList t;
  for (const auto& [w, c] : p.terms()) {
    t.words.emplace_back(static_cast<int>(w.size()), idx.digits(w));
    t.coeffs.push_back(c.rational_value());
  }
  return t;
}

SparseRow expand(const TermList& f, const RowSpec& r, const WordIndex& idx) {
  SparseRow row;
  row.reserve(f.words.size());
  for (std::size_t k = 0; k < f.words.size(); ++k) {
    const auto [len, dig] = f.words[k];
    const int total = r.left_len + len + r.right_len;
    const Key key = idx.offset(total) + r.left * idx.pow(len + r.right_len) + dig * idx.pow(r.right_len) + r.right;
    row.emplace_back(key, f.coeffs[k]);
  }
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

class Eliminator {
 public:
  explicit Eliminator(bool track) : track_(track) {}

  // Reduces by the current basis; returns true if the row joined the basis.
  bool insert(SparseRow row, std::uint32_t id) {
    Combo combo;
    if (track_) combo.emplace_back(id, Rational(1));
    reduce(row, combo);
    if (row.empty()) return false;
    const Rational lead = row.back().second;
    for (auto& [k, v] : row) v /= lead;
    for (auto& [k, v] : combo) v /= lead;
    pivots_.emplace(row.back().first, basis_.size());
    basis_.push_back(std::move(row));
    combos_.push_back(std::move(combo));
    return true;
  }

  void reduce(SparseRow& row, Combo& combo) const {
    while (!row.empty()) {
      auto it = pivots_.find(row.back().first);
      if (it == pivots_.end()) return;
      const Rational f = row.back().second;
      row = axpy(row, f, basis_[it->second]);
      if (track_) combo = axpy(combo, f, combos_[it->second]);
    }
  }

  std::size_t rank() const { return basis_.size(); }

 private:
  bool track_;
  std::vector<SparseRow> basis_;
  std::vector<Combo> combos_;
  std::unordered_map<Key, std::size_t> pivots_;
};

}  // namespace

MembershipResult Session::search_membership(const FreePolynomial& p, int degree_bound, const SearchOptions& opts,
                                            const std::string& label) {
  json entry = {{"rule", "search"},
                {"label", label},
                {"target", to_text(p)},
                {"degree_bound", degree_bound},
                {"max_rows", opts.max_rows},
                {"use_adjoints", opts.use_adjoints}};
  MembershipResult res;
  res.degree_bound = degree_bound;
  auto reject = [&](const std::string& why) {
    entry["outcome"] = "rejected";
    entry["reason"] = why;
    log_.push_back(entry);
    throw std::invalid_argument(why);
  };
  if (p.is_zero()) reject("search target is zero");
  if (p.dim() != 0 && p.dim() != d()) reject("search target over the wrong d");
  if (!p.is_parameter_free()) reject("search targets must be parameter-free; split by parameter monomial first");
  if (degree_bound < p.degree()) reject("degree bound below the target degree");

  if (auto k = find(p)) {
    Certificate c;
    c.target = p;
    c.add(FreePolynomial::unit(d()), *k, FreePolynomial::unit(d()));
    res.member = true;
    res.certificate = c;
    res.fact = *k;
    entry["outcome"] = "member";
    entry["certificate"] = certificate_to_json(c);
    entry["fact"] = *k;
    entry["rows"] = 0;
    entry["rank"] = 0;
    log_.push_back(entry);
    return res;
  }

  try {
    const WordIndex idx(d(), degree_bound);

    // Row generators: left-word * fact * right-word within the degree bound.
    std::vector<TermList> lists;
    std::vector<std::pair<std::size_t, bool>> sources;
    for (std::size_t k = 0; k < facts_.size(); ++k) {
      const auto& f = facts_[k].poly;
      if (!f.is_parameter_free() || f.degree() > degree_bound) continue;
      lists.push_back(term_list(f, idx));
      sources.emplace_back(k, false);
      if (opts.use_adjoints) {
        const FreePolynomial fa = adjoint(f);
        if (!(fa == f) && !find(fa)) {
          lists.push_back(term_list(fa, idx));
          sources.emplace_back(k, true);
        }
      }
    }
    std::vector<RowSpec> specs;
    for (std::size_t s = 0; s < lists.size(); ++s) {
      const int slack = degree_bound - facts_[sources[s].first].poly.degree();
      for (int ll = 0; ll <= slack; ++ll)
        for (int rl = 0; ll + rl <= slack; ++rl) {
          const Key count = idx.count(ll) * idx.count(rl);
          if (specs.size() + count > opts.max_rows)
            throw ResourceError("membership search needs more than " + std::to_string(opts.max_rows) + " rows");
          for (Key a = 0; a < idx.count(ll); ++a)
            for (Key b = 0; b < idx.count(rl); ++b)
              specs.push_back({s, sources[s].second, ll, a, rl, b});
        }
    }
    res.rows = specs.size();

    const TermList target = term_list(p, idx);
    const RowSpec target_spec{0, false, 0, 0, 0, 0};

    Eliminator plain(false);
    std::vector<std::uint32_t> contributing;
    for (std::size_t r = 0; r < specs.size(); ++r)
      if (plain.insert(expand(lists[specs[r].fact], specs[r], idx), static_cast<std::uint32_t>(r)))
        contributing.push_back(static_cast<std::uint32_t>(r));
    res.rank = plain.rank();

    SparseRow t = expand(target, target_spec, idx);
    Combo none;
    plain.reduce(t, none);
    entry["rows"] = res.rows;
    entry["rank"] = res.rank;
    if (!t.empty()) {
      entry["outcome"] = "inconclusive";
      log_.push_back(entry);
      return res;
    }

    // Member: redo the elimination on the independent rows, tracking combinations.
    Eliminator tracked(true);
    for (std::uint32_t r : contributing) tracked.insert(expand(lists[specs[r].fact], specs[r], idx), r);
    SparseRow t2 = expand(target, target_spec, idx);
    Combo combo;
    tracked.reduce(t2, combo);
    // combo now holds -(coefficients) of the rows that sum to the target.
    Certificate c;
    c.target = p;
    for (const auto& [r, v] : combo) {
      const RowSpec& s = specs[r];
      const std::size_t fact = sources[s.fact].first;
      c.add(FreePolynomial::monomial(d(), idx.word(s.left_len, s.left), Scalar(Rational(-v))), fact,
            FreePolynomial::monomial(d(), idx.word(s.right_len, s.right)), s.adjoint);
    }
    if (!certificate_residual(c, facts_).is_zero())
      throw std::logic_error("membership search extracted an invalid certificate");
    const std::size_t k = add_fact(p, FactOrigin::Derived, "search", label, inputs_of(c));
    res.member = true;
    res.certificate = c;
    res.fact = k;
    entry["outcome"] = "member";
    entry["certificate"] = certificate_to_json(c);
    entry["fact"] = k;
    log_.push_back(entry);
    return res;
  } catch (const ResourceError& e) {
    entry["outcome"] = "resource";
    entry["reason"] = e.what();
    log_.push_back(entry);
    throw;
  }
}

}  // namespace freerot
