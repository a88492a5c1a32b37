#pragma once

// Reference implementations for tests. These deliberately avoid the engine's
// algorithms: partitions are built by element insertion, Mobius values come
// from the defining recursion, and moments come from averaging over S_N.

#include <map>
#include <vector>

#include "wgcalc/exact.hpp"
#include "wgcalc/partitions.hpp"

namespace oracle {

using wgcalc::Rational;
using wgcalc::SetPartition;

// Blocks are 1-based element lists.
using Blocks = std::vector<std::vector<int>>;

// Every partition of {1..k}, generated by inserting k into the partitions of {1..k-1}.
std::vector<Blocks> all_block_lists(int k);
std::vector<SetPartition> all_partitions(int k);

// a <= b iff every block of a lies inside some block of b.
bool refines(const SetPartition& a, const SetPartition& b);

// mu(a,a) = 1, mu(a,b) = -sum_{a <= c < b} mu(a,c). Memoized per k.
class MobiusTable {
 public:
  explicit MobiusTable(int k);
  Rational operator()(const SetPartition& a, const SetPartition& b) const;

 private:
  std::vector<SetPartition> parts_;
  std::map<std::pair<SetPartition, SetPartition>, Rational> mu_;
};

// Average over all N! permutations of prod_l f_l(g), computed in exact
// rationals with no scaling tricks. Each factor is (row, col, centered).
struct Entry {
  long row;
  long col;
  bool centered;
};
Rational sn_average(long n, const std::vector<Entry>& factors);

// Spec with level partitions (pi, rho): row index of position l is the block
// label of l in pi plus one, and likewise for columns.
std::vector<Entry> realize(const SetPartition& pi, const SetPartition& rho, bool centered);

// Wg or cWg at integer N >= k, by double Mobius inversion of the S_N moment
// table over all pairs of level partitions.
class InversionOracle {
 public:
  InversionOracle(int k, long n, bool centered);
  Rational operator()(const SetPartition& sigma, const SetPartition& tau) const;

 private:
  MobiusTable mu_;
  std::vector<SetPartition> parts_;
  std::map<std::pair<SetPartition, SetPartition>, Rational> moments_;
};

}  // namespace oracle
