#pragma once

// The lattice P(k) of set partitions of {1..k}.
//
// A partition is stored as its restricted growth string: label[p] is the
// index of the block containing position p (0-based), blocks numbered in
// order of their least element. This is the canonical form, so equality,
// ordering and hashing are structural.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wgcalc/error.hpp"
#include "wgcalc/exact.hpp"

namespace wgcalc {

inline constexpr int kDefaultBellCap = 12;

class SetPartition {
 public:
  static constexpr int kMaxGround = 16;

  // 0_k: all singletons.
  static SetPartition finest(int k);
  // 1_k: a single block.
  static SetPartition coarsest(int k);
  // Blocks are 1-based element lists; must cover {1..k} disjointly.
  static SetPartition from_blocks(int k, const std::vector<std::vector<int>>& blocks);
  // Any labelling of positions 0..k-1; equal labels share a block.
  static SetPartition from_labels(std::span<const int> labels);
  // "1,3|2|4"; "0_k" / "1_k" (with or without explicit k) need k from context when k_hint > 0.
  static SetPartition parse(std::string_view text, int k_hint = 0);

  int size() const { return k_; }
  int block_count() const { return blocks_; }
  int label(int position) const { return labels_[static_cast<std::size_t>(position)]; }
  std::vector<std::vector<int>> blocks() const;
  std::vector<int> block_sizes() const;

  std::string to_string() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
  friend auto operator<=>(const SetPartition&, const SetPartition&) = default;

 private:
  friend class PartitionFactory;
  // Declaration order makes the defaulted <=> the RGS lexicographic order within one k.
  std::uint8_t k_ = 0;
  std::array<std::uint8_t, kMaxGround> labels_{};
  std::uint8_t blocks_ = 0;
};

struct SetPartitionHash {
  std::size_t operator()(const SetPartition& p) const noexcept;
};

// Order relation and lattice operations. All throw Error{GroundSetMismatch}
// when the two ground sets differ.
bool leq(const SetPartition& a, const SetPartition& b);
SetPartition meet(const SetPartition& a, const SetPartition& b);
SetPartition join(const SetPartition& a, const SetPartition& b);

// 0 if a is not below b, otherwise prod over blocks of b of (-1)^(l-1)(l-1)!
// where l is the number of blocks of a inside that block.
Rational mobius(const SetPartition& a, const SetPartition& b);
Rational zeta(const SetPartition& a, const SetPartition& b);

// Fixed-width variant of mobius() for inner loops; assumes a <= b and k <= 16.
Int128 mobius_below(const SetPartition& a, const SetPartition& b);

// Positions (1-based) whose singleton is a block.
std::vector<int> singleton_set(const SetPartition& p);

// Intersect with the (1-based, non-empty) subset and relabel order-preservingly.
SetPartition restrict(const SetPartition& p, const std::vector<int>& subset);

class MultiIndex {
 public:
  MultiIndex(std::vector<long> entries, long dimension);

  int size() const { return static_cast<int>(entries_.size()); }
  long dimension() const { return dimension_; }
  const std::vector<long>& entries() const { return entries_; }

 private:
  std::vector<long> entries_;
  long dimension_;
};

// Positions l, m share a block iff the entries agree.
SetPartition level_partition(const MultiIndex& idx);
SetPartition level_partition(std::span<const long> entries);

BigInt bell_number(int k);

// All of P(k) in restricted-growth-string lexicographic order.
// Throws Error{EnumerationTooLarge} when k exceeds the cap.
std::vector<SetPartition> enumerate_partitions(int k, int cap = kDefaultBellCap);

// Visits every pi <= upper exactly once, in RGS lexicographic order,
// without materializing the interval.
void for_each_below(const SetPartition& upper, const std::function<void(const SetPartition&)>& visit);
std::vector<SetPartition> interval_below(const SetPartition& upper);

// Element of the incidence algebra of P(k). Only comparable pairs carry
// values; everything else reads as zero.
class IncidenceFunction {
 public:
  explicit IncidenceFunction(int k) : k_(k) {}

  static IncidenceFunction delta(int k, int cap = kDefaultBellCap);
  static IncidenceFunction zeta(int k, int cap = kDefaultBellCap);
  static IncidenceFunction mobius(int k, int cap = kDefaultBellCap);

  int size() const { return k_; }
  // Throws Error{InvalidArgument} for an incomparable pair with a non-zero value.
  void set(const SetPartition& a, const SetPartition& b, const Rational& value);
  Rational at(const SetPartition& a, const SetPartition& b) const;
  const std::map<std::pair<SetPartition, SetPartition>, Rational>& values() const { return values_; }

  friend bool operator==(const IncidenceFunction&, const IncidenceFunction&) = default;

 private:
  int k_;
  std::map<std::pair<SetPartition, SetPartition>, Rational> values_;  // non-zero entries only
};

IncidenceFunction convolve(const IncidenceFunction& f, const IncidenceFunction& g);

}  // namespace wgcalc
