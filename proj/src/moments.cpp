#include "wgcalc/moments.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace wgcalc {

// ------------------------------------------------------------- MomentSpec

MomentSpec::MomentSpec(long n, std::vector<Factor> factors) : n_(n), factors_(std::move(factors)) {
  if (n_ < 1) throw Error(ErrorKind::InvalidArgument, "dimension N must be positive, got " + std::to_string(n_));
  if (factors_.empty()) throw Error(ErrorKind::InvalidArgument, "moment spec needs at least one factor");
  if (static_cast<int>(factors_.size()) > SetPartition::kMaxGround) {
    throw Error(ErrorKind::InvalidArgument,
                "moment spec supports at most " + std::to_string(SetPartition::kMaxGround) + " factors");
  }
  for (const auto& f : factors_) {
    if (f.row < 1 || f.row > n_ || f.col < 1 || f.col > n_) {
      throw Error(ErrorKind::InvalidArgument, "factor (" + std::to_string(f.row) + "," + std::to_string(f.col) +
                                                  ") outside 1.." + std::to_string(n_));
    }
  }
}

MomentSpec MomentSpec::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed moment spec JSON: ") + e.what());
  }
  try {
    const long n = doc.at("N").get<long>();
    std::vector<Factor> factors;
    for (const auto& f : doc.at("factors")) {
      factors.push_back({f.at("i").get<long>(), f.at("j").get<long>(), f.value("centered", false)});
    }
    return MomentSpec(n, std::move(factors));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("invalid moment spec: ") + e.what());
  }
}

MomentSpec MomentSpec::parse_inline(const std::string& text, long n) {
  std::istringstream in(text);
  std::string token;
  std::vector<Factor> factors;
  while (in >> token) {
    Factor f;
    std::string body = token;
    if (body.rfind("c:", 0) == 0) {
      f.centered = true;
      body = body.substr(2);
    } else if (body.rfind("p:", 0) == 0) {
      body = body.substr(2);
    }
    const auto comma = body.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("missing comma");
      std::size_t used = 0;
      f.row = std::stol(body.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("row");
      const std::string col = body.substr(comma + 1);
      f.col = std::stol(col, &used);
      if (used != col.size()) throw std::invalid_argument("col");
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "malformed factor '" + token + "' (expected [c:]i,j)");
    }
    factors.push_back(f);
  }
  return MomentSpec(n, std::move(factors));
}

bool MomentSpec::all_centered() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.centered; });
}

bool MomentSpec::all_plain() const {
  return std::none_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.centered; });
}

long MomentSpec::max_index() const {
  long m = 0;
  for (const auto& f : factors_) m = std::max({m, f.row, f.col});
  return m;
}

std::string MomentSpec::to_json() const {
  nlohmann::json doc;
  doc["N"] = n_;
  doc["factors"] = nlohmann::json::array();
  for (const auto& f : factors_) doc["factors"].push_back({{"i", f.row}, {"j", f.col}, {"centered", f.centered}});
  return doc.dump();
}

std::string MomentSpec::to_inline() const {
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += ' ';
    if (f.centered) out += "c:";
    out += std::to_string(f.row) + "," + std::to_string(f.col);
  }
  return out;
}

// --------------------------------------------------------------- helpers

namespace {

void require(int k, NumericN d) { require_dimension(k, d.n); }
void require(int, SymbolicN) {}

SetPartition rows_partition(const std::vector<Factor>& fs) {
  std::vector<long> v;
  for (const auto& f : fs) v.push_back(f.row);
  return level_partition(v);
}

SetPartition cols_partition(const std::vector<Factor>& fs) {
  std::vector<long> v;
  for (const auto& f : fs) v.push_back(f.col);
  return level_partition(v);
}

template <class D>
ScalarOf<D> entry(const SetPartition& s, const SetPartition& t, bool centered, WgFormula cf, D d) {
  if (!centered) return wg_value(s, t, d);
  if (cf == WgFormula::SignedCentered) return centered_signed_value(s, t, d);
  return centered_value(s, t, d);
}

// The sum depends only on (Pi_i, Pi_j), so results are shared across specs.
using SumKey = std::tuple<SetPartition, SetPartition, long, bool, int>;

template <class S>
class SumCache {
 public:
  std::optional<S> find(const SumKey& key) const {
    std::shared_lock lock(mu_);
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }
  void insert(const SumKey& key, const S& value) {
    std::unique_lock lock(mu_);
    values_.emplace(key, value);
  }

 private:
  mutable std::shared_mutex mu_;
  std::map<SumKey, S> values_;
};

SumCache<Rational>& sum_cache(NumericN) {
  static SumCache<Rational> cache;
  return cache;
}
SumCache<RationalFunction>& sum_cache(SymbolicN) {
  static SumCache<RationalFunction> cache;
  return cache;
}
long cache_n(NumericN d) { return d.n; }
long cache_n(SymbolicN) { return 0; }

// sum_{s <= Pi_i, t <= Pi_j} W(s, t) for factors that are all plain or all centered.
// Stats requests bypass the cache so every read is counted.
template <class D>
ScalarOf<D> zeta_zeta(const std::vector<Factor>& fs, bool centered, D d, ZetaSumStats* stats, WgFormula cf) {
  using S = ScalarOf<D>;
  if (fs.empty()) return S(1);
  const int k = static_cast<int>(fs.size());
  require(k, d);
  const SetPartition pi_i = rows_partition(fs);
  const SetPartition pi_j = cols_partition(fs);
  if (!centered) cf = WgFormula::Closed;
  const SumKey key{pi_i, pi_j, cache_n(d), centered, static_cast<int>(cf)};
  if (!stats) {
    if (auto hit = sum_cache(d).find(key)) return *hit;
  }
  const auto lower_i = interval_below(pi_i);
  const auto lower_j = interval_below(pi_j);
  S acc(0);
  for (const auto& s : lower_i) {
    for (const auto& t : lower_j) {
      if (stats) {
        ++stats->entries;
        if (meet(s, t).block_count() != k) ++stats->nontrivial_meet;
      }
      acc += entry(s, t, centered, cf, d);
    }
  }
  sum_cache(d).insert(key, acc);
  return acc;
}

template <class D>
ScalarOf<D> weingarten_impl(const MomentSpec& spec, D d, ZetaSumStats* stats, WgFormula cf) {
  using S = ScalarOf<D>;
  const auto& fs = spec.factors();
  require(spec.size(), d);
  if (spec.all_centered()) return zeta_zeta(fs, true, d, stats, cf);
  if (spec.all_plain()) return zeta_zeta(fs, false, d, stats, cf);
  // Mixed: [g] = g - 1/N on each centered factor, then plain moments.
  std::vector<int> centered;
  std::vector<Factor> plain;
  for (int l = 0; l < spec.size(); ++l) {
    if (fs[static_cast<std::size_t>(l)].centered) {
      centered.push_back(l);
    } else {
      plain.push_back(fs[static_cast<std::size_t>(l)]);
    }
  }
  const int c = static_cast<int>(centered.size());
  const S minus_inv_n = S(-1) * inverse_power(d, 1);
  S acc(0);
  for (unsigned mask = 0; mask < (1u << c); ++mask) {
    std::vector<Factor> kept = plain;
    int dropped = 0;
    for (int b = 0; b < c; ++b) {
      if (mask & (1u << b)) {
        Factor f = fs[static_cast<std::size_t>(centered[static_cast<std::size_t>(b)])];
        f.centered = false;
        kept.push_back(f);
      } else {
        ++dropped;
      }
    }
    S weight(1);
    for (int i = 0; i < dropped; ++i) weight *= minus_inv_n;
    acc += weight * zeta_zeta(kept, false, d, stats, cf);
  }
  return acc;
}

template <class D>
std::pair<ScalarOf<D>, ScalarOf<D>> alpha_beta_impl(int l, D d) {
  using S = ScalarOf<D>;
  if (l < 1) throw Error(ErrorKind::InvalidArgument, "alpha_l, beta_l need l >= 1");
  const S inv_n = inverse_power(d, 1);
  const S hit = S(1) - inv_n;  // (N-1)/N
  const S miss = S(-1) * inv_n;  // -1/N
  S hit_l(1);
  S miss_l(1);
  for (int i = 0; i < l; ++i) {
    hit_l *= hit;
    miss_l *= miss;
  }
  return {hit_l - miss_l, inv_n * hit_l + hit * miss_l};
}

template <class D>
ScalarOf<D> reduced_impl(const ReducedSpec& reduced, D d, ZetaSumStats* stats) {
  using S = ScalarOf<D>;
  const int r = static_cast<int>(reduced.blocks.size());
  std::vector<std::pair<S, S>> ab;
  for (const auto& b : reduced.blocks) ab.push_back(alpha_beta_impl(b.multiplicity, d));
  S acc(0);
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    S weight(1);
    std::vector<Factor> kept;
    for (int s = 0; s < r; ++s) {
      const bool in = (mask & (1u << s)) != 0;
      weight *= in ? ab[static_cast<std::size_t>(s)].first : ab[static_cast<std::size_t>(s)].second;
      if (in) kept.push_back(reduced.residual.factors()[static_cast<std::size_t>(s)]);
    }
    if (weight.is_zero()) continue;
    acc += weight * zeta_zeta(kept, true, d, stats, WgFormula::ReformulatedCentered);
  }
  return acc;
}

template <class D>
ScalarOf<D> power_moment_impl(int k, int p, D d) {
  using S = ScalarOf<D>;
  if (k < 1 || p < 1) throw Error(ErrorKind::InvalidArgument, "centered power moment needs k >= 1 and p >= 1");
  require(k, d);
  const auto [alpha, beta] = alpha_beta_impl(p, d);
  S acc(0);
  for (int l = 0; l <= k; ++l) {
    S term(Rational(binomial(k, l)));
    for (int i = 0; i < l; ++i) term *= alpha;
    for (int i = l; i < k; ++i) term *= beta;
    if (term.is_zero()) continue;
    acc += term * a_explicit(l, d);
  }
  return acc;
}

}  // namespace

// ------------------------------------------------------------ operations

Rational plain_moment_direct(const MomentSpec& spec) {
  if (!spec.all_plain()) throw Error(ErrorKind::InvalidArgument, "direct formula needs plain factors only");
  const SetPartition pi = rows_partition(spec.factors());
  if (pi != cols_partition(spec.factors())) return Rational(0);
  return inverse_falling(NumericN{spec.dimension()}, pi.block_count());
}

Rational moment_via_weingarten(const MomentSpec& spec, ZetaSumStats* stats, WgFormula centered_formula) {
  return weingarten_impl(spec, NumericN{spec.dimension()}, stats, centered_formula);
}

RationalFunction moment_via_weingarten_symbolic(const MomentSpec& spec, ZetaSumStats* stats) {
  return weingarten_impl(spec, SymbolicN{}, stats, WgFormula::ReformulatedCentered);
}

std::pair<Rational, Rational> alpha_beta(int l, NumericN n) { return alpha_beta_impl(l, n); }
std::pair<RationalFunction, RationalFunction> alpha_beta(int l, SymbolicN n) { return alpha_beta_impl(l, n); }

ReducedSpec reduce(const MomentSpec& spec) {
  if (!spec.all_centered()) throw Error(ErrorKind::InvalidArgument, "reduction needs an all-centered spec");
  require_dimension(spec.size(), spec.dimension());
  std::vector<ReducedBlock> blocks;
  for (int l = 0; l < spec.size(); ++l) {
    const Factor& f = spec.factors()[static_cast<std::size_t>(l)];
    auto it = std::find_if(blocks.begin(), blocks.end(), [&](const ReducedBlock& b) {
      return b.pair.row == f.row && b.pair.col == f.col;
    });
    if (it == blocks.end()) {
      blocks.push_back({f, 0, {}, Rational(0), Rational(0)});
      it = std::prev(blocks.end());
    }
    ++it->multiplicity;
    it->positions.push_back(l + 1);
  }
  // Blocks were created in order of least position, so a stable sort keeps that as the tie-break.
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const ReducedBlock& a, const ReducedBlock& b) { return a.multiplicity > b.multiplicity; });
  std::vector<Factor> residual;
  for (auto& b : blocks) {
    std::tie(b.alpha, b.beta) = alpha_beta(b.multiplicity, NumericN{spec.dimension()});
    residual.push_back(b.pair);
  }
  return {std::move(blocks), MomentSpec(spec.dimension(), std::move(residual))};
}

std::vector<ReductionTerm> reduction_terms(const ReducedSpec& reduced, ZetaSumStats* stats) {
  const NumericN d{reduced.residual.dimension()};
  const int r = static_cast<int>(reduced.blocks.size());
  std::vector<ReductionTerm> out;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    ReductionTerm term;
    term.weight = Rational(1);
    std::vector<Factor> kept;
    for (int s = 0; s < r; ++s) {
      const auto& b = reduced.blocks[static_cast<std::size_t>(s)];
      if (mask & (1u << s)) {
        term.subset.push_back(s + 1);
        term.weight *= b.alpha;
        kept.push_back(reduced.residual.factors()[static_cast<std::size_t>(s)]);
      } else {
        term.weight *= b.beta;
      }
    }
    term.integral = zeta_zeta(kept, true, d, stats, WgFormula::ReformulatedCentered);
    out.push_back(std::move(term));
  }
  return out;
}

Rational evaluate_reduced(const ReducedSpec& reduced, ZetaSumStats* stats) {
  return reduced_impl(reduced, NumericN{reduced.residual.dimension()}, stats);
}

RationalFunction evaluate_reduced_symbolic(const ReducedSpec& reduced, ZetaSumStats* stats) {
  return reduced_impl(reduced, SymbolicN{}, stats);
}

Rational centered_power_moment(int k, int p, long n) { return power_moment_impl(k, p, NumericN{n}); }
RationalFunction centered_power_moment_symbolic(int k, int p) { return power_moment_impl(k, p, SymbolicN{}); }

Rational oracle_moment(const MomentSpec& spec, int cap) {
  const long n = spec.dimension();
  if (n > cap) {
    throw Error(ErrorKind::OracleTooLarge, "oracle too large: N=" + std::to_string(n) + " exceeds cap " +
                                               std::to_string(cap) + " (" + factorial(n).get_str() +
                                               " permutations)");
  }
  // Work with N*[g] in {N-1, -1} so every per-permutation product is an integer.
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Int128 total = 0;
  int centered = 0;
  for (const auto& f : spec.factors()) centered += f.centered ? 1 : 0;
  do {
    std::int64_t prod = 1;
    for (const auto& f : spec.factors()) {
      const bool hit = perm[static_cast<std::size_t>(f.row - 1)] == f.col - 1;
      if (f.centered) {
        prod *= hit ? n - 1 : -1;
      } else if (!hit) {
        prod = 0;
        break;
      }
    }
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const BigInt sum = to_bigint(total);
  BigInt scale = factorial(n);
  for (int i = 0; i < centered; ++i) scale *= n;
  return Rational(sum, scale);
}

std::string to_string(MomentMethod m) {
  switch (m) {
    case MomentMethod::Auto: return "auto";
    case MomentMethod::Direct: return "direct";
    case MomentMethod::Weingarten: return "weingarten";
    case MomentMethod::Reduce: return "reduce";
    case MomentMethod::Oracle: return "oracle";
  }
  return "unknown";
}

MomentMethod parse_moment_method(const std::string& text) {
  for (auto m : {MomentMethod::Auto, MomentMethod::Direct, MomentMethod::Weingarten, MomentMethod::Reduce,
                 MomentMethod::Oracle}) {
    if (to_string(m) == text) return m;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown method '" + text + "' (auto|direct|weingarten|reduce|oracle)");
}

MomentResult evaluate_moment(const MomentSpec& spec, const MomentOptions& options) {
  MomentMethod method = options.method;
  if (method == MomentMethod::Auto) {
    method = spec.all_plain() ? MomentMethod::Direct
             : spec.all_centered() ? MomentMethod::Reduce
                                   : MomentMethod::Weingarten;
  }
  MomentResult out;
  out.method = method;
  const bool want = options.symbolic;
  switch (method) {
    case MomentMethod::Direct: {
      out.value = plain_moment_direct(spec);
      if (want) {
        const SetPartition pi = rows_partition(spec.factors());
        out.symbolic = pi == cols_partition(spec.factors()) ? inverse_falling(SymbolicN{}, pi.block_count())
                                                            : RationalFunction(0);
      }
      break;
    }
    case MomentMethod::Weingarten:
      out.value = moment_via_weingarten(spec);
      if (want && spec.size() <= options.symbolic_k_cap) out.symbolic = moment_via_weingarten_symbolic(spec);
      break;
    case MomentMethod::Reduce: {
      const ReducedSpec reduced = reduce(spec);
      out.value = evaluate_reduced(reduced);
      if (want && reduced.residual.size() <= options.symbolic_k_cap) {
        out.symbolic = evaluate_reduced_symbolic(reduced);
      }
      break;
    }
    case MomentMethod::Oracle:
      out.value = oracle_moment(spec, options.oracle_cap);
      break;
    case MomentMethod::Auto:
      break;
  }
  if (out.symbolic) out.leading = leading_term(*out.symbolic);
  return out;
}

}  // namespace wgcalc
