#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace freerot {

inline constexpr int kDefaultNCLimit = 14;

class NCPartition;

/// A set partition of {1..n}, stored as its restricted growth string: element k
/// carries the index of its block, blocks numbered in order of their minima.
/// That encoding is canonical, so partitions compare and hash structurally.
class SetPartition {
 public:
  SetPartition() = default;

  /// Blocks are 1-based element lists in any order; validated and canonicalized.
  static SetPartition from_blocks(int n, const std::vector<std::vector<int>>& blocks);
  /// Arbitrary block labels per element; relabelled by first appearance.
  static SetPartition from_labels(std::span<const int> labels);
  static SetPartition singletons(int n);
  static SetPartition single_block(int n);

  int size() const { return static_cast<int>(labels_.size()); }
  int block_count() const { return block_count_; }
  /// Block index (0-based) of a 1-based element.
  int block_of(int element) const { return labels_[static_cast<std::size_t>(element - 1)]; }
  const std::vector<std::uint8_t>& labels() const { return labels_; }

  /// Blocks in canonical order, elements ascending, 1-based.
  std::vector<std::vector<int>> blocks() const;
  std::vector<int> block_sizes() const;

  std::string to_string() const;

  friend bool operator==(const SetPartition& a, const SetPartition& b) { return a.labels_ == b.labels_; }
  friend std::strong_ordering operator<=>(const SetPartition& a, const SetPartition& b) {
    return a.labels_ <=> b.labels_;
  }

 private:
  friend class NCLattice;
  friend std::vector<NCPartition> enumerate_nc(int n, int limit);
  explicit SetPartition(std::vector<std::uint8_t> rgs);

  std::vector<std::uint8_t> labels_;
  int block_count_ = 0;
};

bool is_noncrossing(const SetPartition& p);

/// A set partition known to be non-crossing.
class NCPartition {
 public:
  /// Throws std::invalid_argument if p has a crossing.
  explicit NCPartition(SetPartition p);

  const SetPartition& partition() const { return p_; }
  int size() const { return p_.size(); }
  std::string to_string() const { return p_.to_string(); }

  friend bool operator==(const NCPartition&, const NCPartition&) = default;
  friend auto operator<=>(const NCPartition&, const NCPartition&) = default;

 private:
  struct Trusted {};
  NCPartition(SetPartition p, Trusted) : p_(std::move(p)) {}
  friend class NCLattice;
  friend std::vector<NCPartition> enumerate_nc(int n, int limit);

  SetPartition p_;
};

/// All of NC(n), canonically ordered (lexicographic on restricted growth strings).
/// Throws SizeLimitError when n exceeds `limit`.
std::vector<NCPartition> enumerate_nc(int n, int limit = kDefaultNCLimit);

/// True iff every block of p lies inside a block of q. Throws on size mismatch.
bool refines(const SetPartition& p, const SetPartition& q);
inline bool refines(const NCPartition& p, const NCPartition& q) { return refines(p.partition(), q.partition()); }

/// Möbius function mu(p, 1_n) on NC(n).
std::int64_t mobius_to_top(const NCPartition& p, int limit = kDefaultNCLimit);

/// Positions carrying equal values share a block.
SetPartition kernel_partition(std::span<const int> indices);

/// Shared, immutable view of NC(n) with lazily computed Möbius values.
/// Instances are cached per n and safe to use from several threads.
class NCLattice {
 public:
  static std::shared_ptr<const NCLattice> get(int n, int limit = kDefaultNCLimit);

  int size() const { return n_; }
  const std::vector<NCPartition>& partitions() const { return parts_; }
  /// Index in partitions(), or -1 if absent.
  std::ptrdiff_t index_of(const SetPartition& p) const;
  /// mu(partitions()[k], 1_n).
  std::int64_t mobius(std::size_t k) const;
  const std::vector<std::int64_t>& mobius_table() const;

  explicit NCLattice(int n);

 private:
  int n_;
  std::vector<NCPartition> parts_;
  mutable std::once_flag mobius_once_;
  mutable std::vector<std::int64_t> mobius_;
};

}  // namespace freerot
