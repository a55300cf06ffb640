#include "freerot/partition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "freerot/errors.hpp"

namespace freerot {

namespace {

constexpr int kMaxGround = 255;

void check_ground_size(std::size_t n) {
  if (n == 0) throw std::invalid_argument("partition of an empty set");
  if (n > kMaxGround) throw SizeLimitError("ground set larger than 255 elements");
}

}  // namespace

SetPartition::SetPartition(std::vector<std::uint8_t> rgs) : labels_(std::move(rgs)) {
  int top = -1;
  for (auto l : labels_) top = std::max(top, static_cast<int>(l));
  block_count_ = top + 1;
}

SetPartition SetPartition::from_labels(std::span<const int> labels) {
  check_ground_size(labels.size());
  std::map<int, std::uint8_t> relabel;
  std::vector<std::uint8_t> rgs;
  rgs.reserve(labels.size());
  for (int l : labels) {
    auto [it, fresh] = relabel.try_emplace(l, static_cast<std::uint8_t>(relabel.size()));
    rgs.push_back(it->second);
  }
  return SetPartition(std::move(rgs));
}

SetPartition SetPartition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
  if (n <= 0) throw std::invalid_argument("ground set size must be positive");
  check_ground_size(static_cast<std::size_t>(n));
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("empty block");
    for (int e : blocks[b]) {
      if (e < 1 || e > n) throw std::invalid_argument("block element out of range");
      auto& o = owner[static_cast<std::size_t>(e - 1)];
      if (o != -1) throw std::invalid_argument("blocks are not disjoint");
      o = static_cast<int>(b);
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end())
    throw std::invalid_argument("blocks do not cover the ground set");
  return from_labels(owner);
}

SetPartition SetPartition::singletons(int n) {
  check_ground_size(static_cast<std::size_t>(std::max(n, 0)));
  std::vector<std::uint8_t> rgs(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) rgs[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(k);
  return SetPartition(std::move(rgs));
}

SetPartition SetPartition::single_block(int n) {
  check_ground_size(static_cast<std::size_t>(std::max(n, 0)));
  return SetPartition(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0));
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(block_count_));
  for (std::size_t k = 0; k < labels_.size(); ++k) out[labels_[k]].push_back(static_cast<int>(k) + 1);
  return out;
}

std::vector<int> SetPartition::block_sizes() const {
  std::vector<int> out(static_cast<std::size_t>(block_count_), 0);
  for (auto l : labels_) ++out[l];
  return out;
}

std::string SetPartition::to_string() const {
  std::string s = "{";
  bool first_block = true;
  for (const auto& b : blocks()) {
    if (!first_block) s += ",";
    first_block = false;
    s += "{";
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(b[k]);
    }
    s += "}";
  }
  return s + "}";
}

bool is_noncrossing(const SetPartition& p) {
  // Arcs join consecutive elements of a block; the partition is non-crossing
  // iff no two arcs from different blocks interleave.
  struct Arc {
    int from, to, block;
  };
  std::vector<Arc> arcs;
  std::vector<int> last(static_cast<std::size_t>(p.block_count()), -1);
  const auto& lab = p.labels();
  for (int k = 0; k < static_cast<int>(lab.size()); ++k) {
    auto& l = last[lab[static_cast<std::size_t>(k)]];
    if (l >= 0) arcs.push_back({l, k, lab[static_cast<std::size_t>(k)]});
    l = k;
  }
  for (std::size_t a = 0; a < arcs.size(); ++a)
    for (std::size_t b = 0; b < arcs.size(); ++b) {
      if (arcs[a].block == arcs[b].block) continue;
      if (arcs[a].from < arcs[b].from && arcs[b].from < arcs[a].to && arcs[a].to < arcs[b].to) return false;
    }
  return true;
}

NCPartition::NCPartition(SetPartition p) : p_(std::move(p)) {
  if (!is_noncrossing(p_)) throw std::invalid_argument("partition " + p_.to_string() + " is crossing");
}

namespace {

using Rgs = std::vector<std::uint8_t>;

// NC partitions of intervals of every length up to n, as canonical label strings.
class IntervalTable {
 public:
  explicit IntervalTable(int n) : table_(static_cast<std::size_t>(n) + 1) {
    table_[0].emplace_back();
    for (int m = 1; m <= n; ++m) {
      Rgs cur(static_cast<std::size_t>(m), 0);
      extend(cur, m, 0, 1, table_[static_cast<std::size_t>(m)]);
    }
  }

  std::vector<Rgs>& get(int m) { return table_[static_cast<std::size_t>(m)]; }

 private:
  // `x` is the last element placed in the first block; the gap after it is
  // an independent sub-interval.
  void extend(Rgs& cur, int m, int x, int next_label, std::vector<Rgs>& out) {
    for (int g = 0; x + 1 + g <= m; ++g) {
      const bool final_gap = (x + 1 + g == m);
      for (const auto& sub : table_[static_cast<std::size_t>(g)]) {
        int top = -1;
        for (std::size_t k = 0; k < sub.size(); ++k) {
          cur[static_cast<std::size_t>(x + 1) + k] = static_cast<std::uint8_t>(next_label + sub[k]);
          top = std::max(top, static_cast<int>(sub[k]));
        }
        if (final_gap) {
          out.push_back(cur);
        } else {
          cur[static_cast<std::size_t>(x + 1 + g)] = 0;
          extend(cur, m, x + 1 + g, next_label + top + 1, out);
        }
      }
    }
  }

  std::vector<std::vector<Rgs>> table_;
};

}  // namespace

std::vector<NCPartition> enumerate_nc(int n, int limit) {
  if (n < 1) throw std::invalid_argument("enumerate_nc requires n >= 1");
  if (n > limit) throw SizeLimitError("NC(" + std::to_string(n) + ") exceeds limit " + std::to_string(limit));
  check_ground_size(static_cast<std::size_t>(n));
  IntervalTable table(n);
  std::vector<Rgs> all = std::move(table.get(n));
  std::sort(all.begin(), all.end());
  std::vector<NCPartition> out;
  out.reserve(all.size());
  for (auto& r : all) out.push_back(NCPartition(SetPartition(std::move(r)), NCPartition::Trusted{}));
  return out;
}

bool refines(const SetPartition& p, const SetPartition& q) {
  if (p.size() != q.size()) throw std::invalid_argument("refines: partitions of different ground sets");
  std::vector<int> image(static_cast<std::size_t>(p.block_count()), -1);
  for (std::size_t k = 0; k < p.labels().size(); ++k) {
    auto& img = image[p.labels()[k]];
    const int target = q.labels()[k];
    if (img == -1)
      img = target;
    else if (img != target)
      return false;
  }
  return true;
}

SetPartition kernel_partition(std::span<const int> indices) { return SetPartition::from_labels(indices); }

NCLattice::NCLattice(int n) : n_(n) {
  if (n > 32) throw SizeLimitError("NC lattice Möbius tables support n <= 32");
  parts_ = enumerate_nc(n, n);
}

std::shared_ptr<const NCLattice> NCLattice::get(int n, int limit) {
  if (n > limit) throw SizeLimitError("NC(" + std::to_string(n) + ") exceeds limit " + std::to_string(limit));
  if (n < 1) throw std::invalid_argument("NC lattice requires n >= 1");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const NCLattice>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const NCLattice>(n);
  return slot;
}

std::ptrdiff_t NCLattice::index_of(const SetPartition& p) const {
  auto it = std::lower_bound(parts_.begin(), parts_.end(), p,
                             [](const NCPartition& a, const SetPartition& b) { return a.partition() < b; });
  if (it == parts_.end() || it->partition() != p) return -1;
  return it - parts_.begin();
}

const std::vector<std::int64_t>& NCLattice::mobius_table() const {
  std::call_once(mobius_once_, [this] {
    const std::size_t count = parts_.size();
    // Per-element block masks make refinement a subset test.
    std::vector<std::vector<std::uint32_t>> masks(count);
    for (std::size_t k = 0; k < count; ++k) {
      const auto& lab = parts_[k].partition().labels();
      std::vector<std::uint32_t> by_block(static_cast<std::size_t>(parts_[k].partition().block_count()), 0);
      for (std::size_t e = 0; e < lab.size(); ++e) by_block[lab[e]] |= (1u << e);
      masks[k].resize(lab.size());
      for (std::size_t e = 0; e < lab.size(); ++e) masks[k][e] = by_block[lab[e]];
    }
    auto below = [&](std::size_t a, std::size_t b) {
      for (std::size_t e = 0; e < masks[a].size(); ++e)
        if ((masks[a][e] & ~masks[b][e]) != 0) return false;
      return true;
    };
    // Coarser partitions first: every strict upper bound of p has fewer blocks.
    std::vector<std::size_t> order(count);
    for (std::size_t k = 0; k < count; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return parts_[a].partition().block_count() < parts_[b].partition().block_count();
    });
    mobius_.assign(count, 0);
    for (std::size_t pos = 0; pos < count; ++pos) {
      const std::size_t p = order[pos];
      if (parts_[p].partition().block_count() == 1) {
        mobius_[p] = 1;
        continue;
      }
      std::int64_t sum = 0;
      for (std::size_t prev = 0; prev < pos; ++prev) {
        const std::size_t s = order[prev];
        if (parts_[s].partition().block_count() < parts_[p].partition().block_count() && below(p, s))
          sum += mobius_[s];
      }
      mobius_[p] = -sum;
    }
  });
  return mobius_;
}

std::int64_t NCLattice::mobius(std::size_t k) const { return mobius_table().at(k); }

std::int64_t mobius_to_top(const NCPartition& p, int limit) {
  auto lattice = NCLattice::get(p.size(), limit);
  const auto idx = lattice->index_of(p.partition());
  return lattice->mobius(static_cast<std::size_t>(idx));
}

}  // namespace freerot
