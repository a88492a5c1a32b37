#include "wgcalc/partitions.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace wgcalc {

class PartitionFactory {
 public:
  // labels must already be a restricted growth string.
  static SetPartition from_rgs(int k, const std::uint8_t* labels, int blocks) {
    SetPartition p;
    p.k_ = static_cast<std::uint8_t>(k);
    p.blocks_ = static_cast<std::uint8_t>(blocks);
    std::copy(labels, labels + k, p.labels_.begin());
    return p;
  }
};

namespace {

void check_ground(int k) {
  if (k < 1 || k > SetPartition::kMaxGround) {
    throw Error(ErrorKind::InvalidArgument, "ground set size must be in 1.." +
                                                std::to_string(SetPartition::kMaxGround) + ", got " +
                                                std::to_string(k));
  }
}

void check_same_ground(const SetPartition& a, const SetPartition& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::GroundSetMismatch, "partitions of different ground sets: " + a.to_string() +
                                                  " (k=" + std::to_string(a.size()) + ") vs " + b.to_string() +
                                                  " (k=" + std::to_string(b.size()) + ")");
  }
}

constexpr std::array<std::int64_t, 16> kFactorials = [] {
  std::array<std::int64_t, 16> f{};
  f[0] = 1;
  for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * static_cast<std::int64_t>(i);
  return f;
}();

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::InvalidArgument, "malformed partition '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

SetPartition SetPartition::finest(int k) {
  check_ground(k);
  std::array<std::uint8_t, kMaxGround> lab{};
  std::iota(lab.begin(), lab.begin() + k, std::uint8_t{0});
  return PartitionFactory::from_rgs(k, lab.data(), k);
}

SetPartition SetPartition::coarsest(int k) {
  check_ground(k);
  std::array<std::uint8_t, kMaxGround> lab{};
  return PartitionFactory::from_rgs(k, lab.data(), 1);
}

SetPartition SetPartition::from_labels(std::span<const int> labels) {
  const int k = static_cast<int>(labels.size());
  check_ground(k);
  std::array<std::uint8_t, kMaxGround> lab{};
  std::vector<std::pair<int, int>> seen;  // original label -> canonical
  int next = 0;
  for (int p = 0; p < k; ++p) {
    const int l = labels[static_cast<std::size_t>(p)];
    auto it = std::find_if(seen.begin(), seen.end(), [l](const auto& e) { return e.first == l; });
    if (it == seen.end()) {
      seen.emplace_back(l, next);
      lab[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(next++);
    } else {
      lab[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(it->second);
    }
  }
  return PartitionFactory::from_rgs(k, lab.data(), next);
}

SetPartition SetPartition::from_blocks(int k, const std::vector<std::vector<int>>& blocks) {
  check_ground(k);
  std::vector<int> labels(static_cast<std::size_t>(k), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw Error(ErrorKind::InvalidArgument, "partition with an empty block");
    for (int e : blocks[b]) {
      if (e < 1 || e > k) {
        throw Error(ErrorKind::InvalidArgument,
                    "element " + std::to_string(e) + " outside ground set {1.." + std::to_string(k) + "}");
      }
      auto& slot = labels[static_cast<std::size_t>(e - 1)];
      if (slot != -1) throw Error(ErrorKind::InvalidArgument, "element " + std::to_string(e) + " in two blocks");
      slot = static_cast<int>(b);
    }
  }
  for (int p = 0; p < k; ++p) {
    if (labels[static_cast<std::size_t>(p)] == -1) {
      throw Error(ErrorKind::InvalidArgument, "element " + std::to_string(p + 1) + " not covered");
    }
  }
  return from_labels(labels);
}

SetPartition SetPartition::parse(std::string_view text, int k_hint) {
  const std::string_view whole = text;
  text = trim(text);
  if (text.size() >= 2 && (text[0] == '0' || text[0] == '1') && text[1] == '_') {
    const std::string_view rest = text.substr(2);
    int k = 0;
    if (rest == "k") {
      if (k_hint <= 0) throw Error(ErrorKind::InvalidArgument, "'" + std::string(whole) + "' needs k from context");
      k = k_hint;
    } else {
      k = parse_int(rest, whole);
      if (k_hint > 0 && k != k_hint) {
        throw Error(ErrorKind::GroundSetMismatch,
                    "'" + std::string(whole) + "' does not match k=" + std::to_string(k_hint));
      }
    }
    return text[0] == '0' ? finest(k) : coarsest(k);
  }
  if (text.empty()) throw Error(ErrorKind::InvalidArgument, "empty partition text");
  std::vector<std::vector<int>> blocks;
  int max_elem = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t bar = std::min(text.find('|', start), text.size());
    const std::string_view block_text = text.substr(start, bar - start);
    std::vector<int> block;
    std::size_t s = 0;
    while (s <= block_text.size()) {
      const std::size_t comma = std::min(block_text.find(',', s), block_text.size());
      block.push_back(parse_int(block_text.substr(s, comma - s), whole));
      max_elem = std::max(max_elem, block.back());
      s = comma + 1;
    }
    blocks.push_back(std::move(block));
    start = bar + 1;
  }
  const int k = k_hint > 0 ? k_hint : max_elem;
  return from_blocks(k, blocks);
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(blocks_);
  for (int p = 0; p < k_; ++p) out[label(p)].push_back(p + 1);
  return out;
}

std::vector<int> SetPartition::block_sizes() const {
  std::vector<int> out(blocks_, 0);
  for (int p = 0; p < k_; ++p) ++out[static_cast<std::size_t>(label(p))];
  return out;
}

std::string SetPartition::to_string() const {
  std::string out;
  for (const auto& block : blocks()) {
    if (!out.empty()) out += '|';
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(block[i]);
    }
  }
  return out;
}

std::size_t SetPartitionHash::operator()(const SetPartition& p) const noexcept {
  std::size_t h = static_cast<std::size_t>(p.size());
  for (int i = 0; i < p.size(); ++i) h = h * 31 + static_cast<std::size_t>(p.label(i));
  return h;
}

bool leq(const SetPartition& a, const SetPartition& b) {
  check_same_ground(a, b);
  std::array<int, SetPartition::kMaxGround> rep;
  rep.fill(-1);
  for (int p = 0; p < a.size(); ++p) {
    int& r = rep[static_cast<std::size_t>(a.label(p))];
    if (r == -1) {
      r = b.label(p);
    } else if (r != b.label(p)) {
      return false;
    }
  }
  return true;
}

SetPartition meet(const SetPartition& a, const SetPartition& b) {
  check_same_ground(a, b);
  std::vector<int> labels(static_cast<std::size_t>(a.size()));
  for (int p = 0; p < a.size(); ++p) labels[static_cast<std::size_t>(p)] = a.label(p) * SetPartition::kMaxGround + b.label(p);
  return SetPartition::from_labels(labels);
}

SetPartition join(const SetPartition& a, const SetPartition& b) {
  check_same_ground(a, b);
  const int k = a.size();
  std::vector<int> parent(static_cast<std::size_t>(k));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int x, int y) { parent[static_cast<std::size_t>(find(x))] = find(y); };
  std::array<int, SetPartition::kMaxGround> first_a;
  std::array<int, SetPartition::kMaxGround> first_b;
  first_a.fill(-1);
  first_b.fill(-1);
  for (int p = 0; p < k; ++p) {
    int& fa = first_a[static_cast<std::size_t>(a.label(p))];
    int& fb = first_b[static_cast<std::size_t>(b.label(p))];
    if (fa == -1) fa = p; else unite(p, fa);
    if (fb == -1) fb = p; else unite(p, fb);
  }
  std::vector<int> labels(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) labels[static_cast<std::size_t>(p)] = find(p);
  return SetPartition::from_labels(labels);
}

Int128 mobius_below(const SetPartition& a, const SetPartition& b) {
  std::array<int, SetPartition::kMaxGround> inner{};  // blocks of a inside each block of b
  std::array<bool, SetPartition::kMaxGround> seen{};
  for (int p = 0; p < a.size(); ++p) {
    const auto la = static_cast<std::size_t>(a.label(p));
    if (!seen[la]) {
      seen[la] = true;
      ++inner[static_cast<std::size_t>(b.label(p))];
    }
  }
  Int128 out = 1;
  for (int blk = 0; blk < b.block_count(); ++blk) {
    const int l = inner[static_cast<std::size_t>(blk)];
    out *= kFactorials[static_cast<std::size_t>(l - 1)];
    if ((l - 1) % 2 == 1) out = -out;
  }
  return out;
}

Rational mobius(const SetPartition& a, const SetPartition& b) {
  if (!leq(a, b)) return Rational(0);
  return Rational(to_bigint(mobius_below(a, b)));
}

Rational zeta(const SetPartition& a, const SetPartition& b) { return Rational(leq(a, b) ? 1 : 0); }

std::vector<int> singleton_set(const SetPartition& p) {
  const auto sizes = p.block_sizes();
  std::vector<int> out;
  for (int pos = 0; pos < p.size(); ++pos) {
    if (sizes[static_cast<std::size_t>(p.label(pos))] == 1) out.push_back(pos + 1);
  }
  return out;
}

SetPartition restrict(const SetPartition& p, const std::vector<int>& subset) {
  std::vector<int> m = subset;
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  if (m.empty()) throw Error(ErrorKind::InvalidArgument, "restriction to the empty set");
  std::vector<int> labels;
  labels.reserve(m.size());
  for (int e : m) {
    if (e < 1 || e > p.size()) {
      throw Error(ErrorKind::InvalidArgument, "restriction element " + std::to_string(e) + " outside ground set");
    }
    labels.push_back(p.label(e - 1));
  }
  return SetPartition::from_labels(labels);
}

MultiIndex::MultiIndex(std::vector<long> entries, long dimension)
    : entries_(std::move(entries)), dimension_(dimension) {
  if (entries_.empty()) throw Error(ErrorKind::InvalidArgument, "empty multi-index");
  for (long e : entries_) {
    if (e < 1 || e > dimension_) {
      throw Error(ErrorKind::InvalidArgument,
                  "index " + std::to_string(e) + " outside 1.." + std::to_string(dimension_));
    }
  }
}

SetPartition level_partition(std::span<const long> entries) {
  std::vector<int> labels(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::size_t j = 0;
    while (entries[j] != entries[i]) ++j;
    labels[i] = static_cast<int>(j);
  }
  return SetPartition::from_labels(labels);
}

SetPartition level_partition(const MultiIndex& idx) { return level_partition(idx.entries()); }

BigInt bell_number(int k) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "Bell number of a negative size");
  // Bell triangle.
  std::vector<BigInt> row{1};
  for (int i = 0; i < k; ++i) {
    std::vector<BigInt> next{row.back()};
    for (const auto& x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

namespace {

struct BelowWalker {
  const SetPartition& upper;
  const std::function<void(const SetPartition&)>& visit;
  int k;
  std::array<std::uint8_t, SetPartition::kMaxGround> lab{};
  std::array<int, SetPartition::kMaxGround> block_upper{};

  void run(int pos, int blocks) {
    if (pos == k) {
      visit(PartitionFactory::from_rgs(k, lab.data(), blocks));
      return;
    }
    const int u = upper.label(pos);
    for (int b = 0; b < blocks; ++b) {
      if (block_upper[static_cast<std::size_t>(b)] != u) continue;
      lab[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(b);
      run(pos + 1, blocks);
    }
    lab[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(blocks);
    block_upper[static_cast<std::size_t>(blocks)] = u;
    run(pos + 1, blocks + 1);
  }
};

}  // namespace

void for_each_below(const SetPartition& upper, const std::function<void(const SetPartition&)>& visit) {
  BelowWalker walker{upper, visit, upper.size()};
  walker.run(0, 0);
}

std::vector<SetPartition> interval_below(const SetPartition& upper) {
  std::vector<SetPartition> out;
  for_each_below(upper, [&](const SetPartition& p) { out.push_back(p); });
  return out;
}

std::vector<SetPartition> enumerate_partitions(int k, int cap) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "enumeration needs k >= 1");
  if (k > cap || k > SetPartition::kMaxGround) {
    throw Error(ErrorKind::EnumerationTooLarge, "enumeration too large: Bell(" + std::to_string(k) +
                                                    ") = " + bell_number(k).get_str() + " exceeds cap k <= " +
                                                    std::to_string(std::min(cap, SetPartition::kMaxGround)));
  }
  std::vector<SetPartition> out;
  out.reserve(bell_number(k).get_ui());
  for_each_below(SetPartition::coarsest(k), [&](const SetPartition& p) { out.push_back(p); });
  return out;
}

// ------------------------------------------------------ incidence algebra

IncidenceFunction IncidenceFunction::delta(int k, int cap) {
  IncidenceFunction f(k);
  for (const auto& p : enumerate_partitions(k, cap)) f.values_.emplace(std::make_pair(p, p), Rational(1));
  return f;
}

IncidenceFunction IncidenceFunction::zeta(int k, int cap) {
  IncidenceFunction f(k);
  for (const auto& top : enumerate_partitions(k, cap)) {
    for_each_below(top, [&](const SetPartition& p) { f.values_.emplace(std::make_pair(p, top), Rational(1)); });
  }
  return f;
}

IncidenceFunction IncidenceFunction::mobius(int k, int cap) {
  IncidenceFunction f(k);
  for (const auto& top : enumerate_partitions(k, cap)) {
    for_each_below(top, [&](const SetPartition& p) {
      f.values_.emplace(std::make_pair(p, top), wgcalc::mobius(p, top));
    });
  }
  return f;
}

void IncidenceFunction::set(const SetPartition& a, const SetPartition& b, const Rational& value) {
  if (a.size() != k_ || b.size() != k_) {
    throw Error(ErrorKind::GroundSetMismatch, "incidence function on P(" + std::to_string(k_) + ")");
  }
  if (value.is_zero()) {
    values_.erase({a, b});
    return;
  }
  if (!leq(a, b)) {
    throw Error(ErrorKind::InvalidArgument,
                "incidence value on incomparable pair (" + a.to_string() + ", " + b.to_string() + ")");
  }
  values_[{a, b}] = value;
}

Rational IncidenceFunction::at(const SetPartition& a, const SetPartition& b) const {
  const auto it = values_.find({a, b});
  return it == values_.end() ? Rational(0) : it->second;
}

IncidenceFunction convolve(const IncidenceFunction& f, const IncidenceFunction& g) {
  if (f.size() != g.size()) {
    throw Error(ErrorKind::GroundSetMismatch, "convolution of incidence functions on P(" +
                                                  std::to_string(f.size()) + ") and P(" + std::to_string(g.size()) +
                                                  ")");
  }
  std::map<SetPartition, std::vector<std::pair<SetPartition, Rational>>> rows;
  for (const auto& [key, v] : g.values()) rows[key.first].emplace_back(key.second, v);
  std::map<std::pair<SetPartition, SetPartition>, Rational> acc;
  for (const auto& [key, fv] : f.values()) {
    const auto it = rows.find(key.second);
    if (it == rows.end()) continue;
    for (const auto& [top, gv] : it->second) acc[{key.first, top}] += fv * gv;
  }
  IncidenceFunction out(f.size());
  for (const auto& [key, v] : acc) out.set(key.first, key.second, v);
  return out;
}

}  // namespace wgcalc
