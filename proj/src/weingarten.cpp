#include "wgcalc/weingarten.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace wgcalc {

namespace {

void check_pair(const SetPartition& sigma, const SetPartition& tau) {
  if (sigma.size() != tau.size()) {
    throw Error(ErrorKind::GroundSetMismatch, "sigma has k=" + std::to_string(sigma.size()) + " but tau has k=" +
                                                  std::to_string(tau.size()));
  }
}

// ---------------------------------------------------------- profile cache

struct PairKey {
  SetPartition a;
  SetPartition b;
  friend bool operator==(const PairKey&, const PairKey&) = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& key) const noexcept {
    const SetPartitionHash h;
    return h(key.a) * 1000003u ^ h(key.b);
  }
};

class ProfileCache {
 public:
  std::vector<BigInt> get(const SetPartition& sigma, const SetPartition& tau) {
    PairKey key = sigma <= tau ? PairKey{sigma, tau} : PairKey{tau, sigma};
    {
      std::shared_lock lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    std::vector<BigInt> profile = compute(sigma, tau);
    std::unique_lock lock(mutex_);
    map_.try_emplace(std::move(key), profile);
    return profile;
  }

 private:
  static std::vector<BigInt> compute(const SetPartition& sigma, const SetPartition& tau) {
    const int k = sigma.size();
    std::vector<Int128> acc(static_cast<std::size_t>(k) + 1, 0);
    for_each_below(meet(sigma, tau), [&](const SetPartition& p) {
      acc[static_cast<std::size_t>(p.block_count())] += mobius_below(p, sigma) * mobius_below(p, tau);
    });
    std::vector<BigInt> out;
    out.reserve(acc.size());
    for (const auto v : acc) out.push_back(to_bigint(v));
    return out;
  }

  std::shared_mutex mutex_;
  std::unordered_map<PairKey, std::vector<BigInt>, PairKeyHash> map_;
};

ProfileCache& profile_cache() {
  static ProfileCache cache;
  return cache;
}

// ------------------------------------------------------------ a_k prefixes

template <class D>
std::vector<ScalarOf<D>> recursion_prefix(int kmax, D d) {
  using S = ScalarOf<D>;
  std::vector<S> a;
  a.reserve(static_cast<std::size_t>(kmax) + 1);
  a.emplace_back(1);
  if (kmax >= 1) a.emplace_back(0);
  const S n = dim_value(d);
  for (int k = 2; k <= kmax; ++k) {
    const S shift = n - S(k - 1);  // N - k + 1
    const S first = S(2 * (k - 1)) / (n * shift);
    const S second = S(k - 1) / (n * n * shift);
    a.push_back(first * a[static_cast<std::size_t>(k - 1)] + second * a[static_cast<std::size_t>(k - 2)]);
  }
  return a;
}

class PrefixCache {
 public:
  using NumericTable = std::shared_ptr<const std::vector<Rational>>;
  using SymbolicTable = std::shared_ptr<const std::vector<RationalFunction>>;

  NumericTable numeric(int kmax, long n) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = numeric_.find(n); it != numeric_.end() && static_cast<int>(it->second->size()) > kmax) {
        return it->second;
      }
    }
    auto table = std::make_shared<const std::vector<Rational>>(a_recursive_prefix(kmax, NumericN{n}));
    std::unique_lock lock(mutex_);
    auto& slot = numeric_[n];
    if (!slot || slot->size() < table->size()) slot = table;
    return table;
  }

  SymbolicTable symbolic(int kmax) {
    {
      std::shared_lock lock(mutex_);
      if (symbolic_ && static_cast<int>(symbolic_->size()) > kmax) return symbolic_;
    }
    auto table = std::make_shared<const std::vector<RationalFunction>>(a_recursive_prefix(kmax, SymbolicN{}));
    std::unique_lock lock(mutex_);
    if (!symbolic_ || symbolic_->size() < table->size()) symbolic_ = table;
    return table;
  }

 private:
  std::shared_mutex mutex_;
  std::map<long, NumericTable> numeric_;
  SymbolicTable symbolic_;
};

PrefixCache& prefix_cache() {
  static PrefixCache cache;
  return cache;
}

PrefixCache::NumericTable cached_prefix(int kmax, NumericN d) { return prefix_cache().numeric(kmax, d.n); }
PrefixCache::SymbolicTable cached_prefix(int kmax, SymbolicN) { return prefix_cache().symbolic(kmax); }

void require(int k, NumericN d) { require_dimension(k, d.n); }
void require(int, SymbolicN) {}

// --------------------------------------------------------------- formulas

template <class D>
ScalarOf<D> closed_impl(const SetPartition& sigma, const SetPartition& tau, D d) {
  using S = ScalarOf<D>;
  check_pair(sigma, tau);
  require(sigma.size(), d);
  const auto profile = block_count_profile(sigma, tau);
  S acc(0);
  for (int j = 0; j < static_cast<int>(profile.size()); ++j) {
    const BigInt& c = profile[static_cast<std::size_t>(j)];
    if (c != 0) acc += S(Rational(c)) * inverse_falling(d, j);
  }
  return acc;
}

template <class D>
ScalarOf<D> signed_impl(const SetPartition& sigma, const SetPartition& tau, D d) {
  using S = ScalarOf<D>;
  check_pair(sigma, tau);
  const int k = sigma.size();
  require(k, d);
  const int singletons = static_cast<int>(singleton_set(join(sigma, tau)).size());
  const auto below = interval_below(meet(sigma, tau));

  // 1/(N)_m for m in [-k, k] and N^-i for i in [0, k].
  std::vector<S> inv_ff;
  for (int m = -k; m <= k; ++m) inv_ff.push_back(inverse_falling(d, m));
  std::vector<S> inv_pow;
  for (int i = 0; i <= k; ++i) inv_pow.push_back(inverse_power(d, i));

  S acc(0);
  for (int i = 0; i <= singletons; ++i) {
    S inner(0);
    for (const auto& p : below) {
      const Int128 mm = mobius_below(p, sigma) * mobius_below(p, tau);
      inner += S(Rational(to_bigint(mm))) * inv_pow[static_cast<std::size_t>(i)] *
               inv_ff[static_cast<std::size_t>(p.block_count() - i + k)];
    }
    BigInt coeff = binomial(singletons, i);
    if (i % 2 == 1) coeff = -coeff;
    acc += S(Rational(coeff)) * inner;
  }
  return acc;
}

template <class D>
ScalarOf<D> reformulated_impl(const SetPartition& sigma, const SetPartition& tau, D d) {
  using S = ScalarOf<D>;
  check_pair(sigma, tau);
  const int k = sigma.size();
  require(k, d);
  const int singletons = static_cast<int>(singleton_set(join(sigma, tau)).size());
  const auto profile = block_count_profile(sigma, tau);
  const auto prefix = cached_prefix(k, d);
  const auto& a = *prefix;
  std::vector<S> inv_pow;
  for (int i = 0; i <= k; ++i) inv_pow.push_back(inverse_power(d, i));

  S acc(0);
  for (int j = 0; j <= k; ++j) {
    const BigInt& c = profile[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    S inner(0);
    for (int i = 0; i <= j - singletons; ++i) {
      inner += S(Rational(binomial(j - singletons, i))) * inv_pow[static_cast<std::size_t>(i)] *
               a[static_cast<std::size_t>(j - i)];
    }
    acc += S(Rational(c)) * inner;
  }
  return acc;
}

template <class D>
ScalarOf<D> explicit_impl(int k, D d) {
  using S = ScalarOf<D>;
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "a_k needs k >= 0");
  require(k, d);
  S acc(0);
  for (int l = 0; l <= k; ++l) {
    BigInt c = binomial(k, l);
    if ((k - l) % 2 == 1) c = -c;
    acc += S(Rational(c)) * inverse_power(d, k - l) * inverse_falling(d, l);
  }
  return acc;
}

template <class F>
WgEntry make_entry(const SetPartition& sigma, const SetPartition& tau, Dimension n, bool centered,
                   WgFormula formula, F&& compute) {
  check_pair(sigma, tau);
  WgEntry e;
  e.k = sigma.size();
  e.sigma = sigma;
  e.tau = tau;
  e.centered = centered;
  e.formula = formula;
  e.dimension = n;
  if (n.is_symbolic()) {
    e.value = compute(SymbolicN{});
  } else {
    e.value = compute(NumericN{n.value()});
  }
  return e;
}

}  // namespace

void require_dimension(int k, long n) {
  if (n < k || n < 1) {
    throw Error(ErrorKind::DimensionTooSmall,
                "dimension too small: N=" + std::to_string(n) + " < k=" + std::to_string(k));
  }
}

std::string to_string(WgFormula f) {
  switch (f) {
    case WgFormula::Closed: return "closed";
    case WgFormula::SignedCentered: return "signed-centered";
    case WgFormula::ReformulatedCentered: return "reformulated-centered";
  }
  return "unknown";
}

WgFormula parse_wg_formula(const std::string& text) {
  if (text == "closed") return WgFormula::Closed;
  if (text == "signed" || text == "signed-centered") return WgFormula::SignedCentered;
  if (text == "reform" || text == "reformulated-centered") return WgFormula::ReformulatedCentered;
  throw Error(ErrorKind::InvalidArgument, "unknown formula '" + text + "' (closed|signed|reform)");
}

std::string to_string(AkRoute r) {
  switch (r) {
    case AkRoute::ExplicitSum: return "explicit-sum";
    case AkRoute::Recursion: return "recursion";
    case AkRoute::Kummer: return "kummer";
  }
  return "unknown";
}

std::vector<BigInt> block_count_profile(const SetPartition& sigma, const SetPartition& tau) {
  check_pair(sigma, tau);
  return profile_cache().get(sigma, tau);
}

Rational wg_value(const SetPartition& s, const SetPartition& t, NumericN n) { return closed_impl(s, t, n); }
RationalFunction wg_value(const SetPartition& s, const SetPartition& t, SymbolicN n) { return closed_impl(s, t, n); }
Rational centered_signed_value(const SetPartition& s, const SetPartition& t, NumericN n) { return signed_impl(s, t, n); }
RationalFunction centered_signed_value(const SetPartition& s, const SetPartition& t, SymbolicN n) {
  return signed_impl(s, t, n);
}
Rational centered_value(const SetPartition& s, const SetPartition& t, NumericN n) { return reformulated_impl(s, t, n); }
RationalFunction centered_value(const SetPartition& s, const SetPartition& t, SymbolicN n) {
  return reformulated_impl(s, t, n);
}

WgEntry wg(const SetPartition& sigma, const SetPartition& tau, Dimension n) {
  return make_entry(sigma, tau, n, false, WgFormula::Closed,
                    [&](auto d) -> Value { return wg_value(sigma, tau, d); });
}

WgEntry wg_centered_signed(const SetPartition& sigma, const SetPartition& tau, Dimension n) {
  return make_entry(sigma, tau, n, true, WgFormula::SignedCentered,
                    [&](auto d) -> Value { return centered_signed_value(sigma, tau, d); });
}

WgEntry wg_centered_reformulated(const SetPartition& sigma, const SetPartition& tau, Dimension n) {
  return make_entry(sigma, tau, n, true, WgFormula::ReformulatedCentered,
                    [&](auto d) -> Value { return centered_value(sigma, tau, d); });
}

WgEntry weingarten_entry(const SetPartition& sigma, const SetPartition& tau, Dimension n, WgFormula formula) {
  switch (formula) {
    case WgFormula::Closed: return wg(sigma, tau, n);
    case WgFormula::SignedCentered: return wg_centered_signed(sigma, tau, n);
    case WgFormula::ReformulatedCentered: return wg_centered_reformulated(sigma, tau, n);
  }
  throw std::logic_error("unhandled formula");
}

// -------------------------------------------------------------------- a_k

Rational a_explicit(int k, NumericN n) { return explicit_impl(k, n); }
RationalFunction a_explicit(int k, SymbolicN n) { return explicit_impl(k, n); }

std::vector<Rational> a_recursive_prefix(int kmax, NumericN n) {
  if (kmax < 0) throw Error(ErrorKind::InvalidArgument, "a_k needs k >= 0");
  if (n.n < 1) throw Error(ErrorKind::InvalidArgument, "dimension N must be positive");
  if (n.n <= kmax - 1) {
    throw Error(ErrorKind::RecursionPole, "recursion pole: N=" + std::to_string(n.n) +
                                              " <= k-1=" + std::to_string(kmax - 1));
  }
  return recursion_prefix(kmax, n);
}

std::vector<RationalFunction> a_recursive_prefix(int kmax, SymbolicN n) {
  if (kmax < 0) throw Error(ErrorKind::InvalidArgument, "a_k needs k >= 0");
  return recursion_prefix(kmax, n);
}

AkValue a_k_explicit(int k, Dimension n) {
  AkValue out{k, Rational(0), AkRoute::ExplicitSum};
  if (n.is_symbolic()) {
    out.value = a_explicit(k, SymbolicN{});
  } else {
    out.value = a_explicit(k, NumericN{n.value()});
  }
  return out;
}

AkValue a_k_recursive(int k, Dimension n) {
  AkValue out{k, Rational(0), AkRoute::Recursion};
  if (n.is_symbolic()) {
    out.value = a_recursive_prefix(k, SymbolicN{}).back();
  } else {
    out.value = a_recursive_prefix(k, NumericN{n.value()}).back();
  }
  return out;
}

std::vector<Value> a_k_table(int kmax, Dimension n) {
  std::vector<Value> out;
  if (n.is_symbolic()) {
    auto t = a_recursive_prefix(kmax, SymbolicN{});
    if (!(t.back() == a_explicit(kmax, SymbolicN{}))) throw std::logic_error("a_k recursion disagrees with explicit sum");
    out.assign(t.begin(), t.end());
  } else {
    const NumericN d{n.value()};
    auto t = a_recursive_prefix(kmax, d);
    if (!(t.back() == a_explicit(kmax, d))) throw std::logic_error("a_k recursion disagrees with explicit sum");
    out.assign(t.begin(), t.end());
  }
  return out;
}

AkValue a_k_kummer(int k, long n) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "a_k needs k >= 0");
  require_dimension(k, n);
  // M(a,b,z) = sum_m (a)^m/(b)^m z^m/m!, terminating at m = k for a = -k.
  const Rational a(-k);
  const Rational b(-n);
  const Rational z(-n);
  Rational term(1);
  Rational series(1);
  for (int m = 0; m < k; ++m) {
    term = term * (a + Rational(m)) / (b + Rational(m)) * z / Rational(m + 1);
    series += term;
  }
  return {k, Rational(-1, n).pow(k) * series, AkRoute::Kummer};
}

// --------------------------------------------------------- binomial lemma

BinomialIdentity binomial_identity(int k, int l, int m) {
  if (k < 0 || l < 0 || l > k || m < 0 || m > k) {
    throw Error(ErrorKind::InvalidArgument, "binomial identity needs 0 <= l, m <= k");
  }
  BinomialIdentity out;
  out.lhs = 0;
  for (int j = 0; j <= std::min(k - l, m); ++j) {
    BigInt term = binomial(k - l, j) * binomial(k - j, k - m);
    if (j % 2 == 1) term = -term;
    out.lhs += term;
  }
  out.rhs = l >= m ? binomial(l, l - m) : BigInt(0);
  return out;
}

bool binomial_identity_check(int k, int l, int m) { return binomial_identity(k, l, m).holds(); }

}  // namespace wgcalc
