#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "deconn/graph.hpp"

namespace deconn {

inline int ceil_log2(long long x) {
  if (x <= 1) return 0;
  return 64 - std::countl_zero(static_cast<std::uint64_t>(x - 1));
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based: value depends only on (key, index), so any draw can be
// recomputed without replaying earlier ones.
inline std::uint64_t hash_at(std::uint64_t key, std::uint64_t index) {
  return splitmix64(splitmix64(key) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

inline double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

// Stream tags; every consumer of randomness draws from its own stream.
enum class Stream : std::uint64_t {
  kLevelSample = 1,
  kBernoulliR = 2,
  kFingerprint = 3,
  kBucket = 4,
  kTreap = 5,
  kShuffle = 6,
  kGenerator = 7,
  kRetry = 8,
};

class MasterSeed {
 public:
  explicit MasterSeed(std::uint64_t seed = 0) : seed_(seed) {}
  std::uint64_t value() const { return seed_; }
  std::uint64_t derive(Stream s, std::uint64_t index = 0) const {
    return hash_at(hash_at(seed_, static_cast<std::uint64_t>(s)), index);
  }

 private:
  std::uint64_t seed_;
};

// Sequential generator over a counter-based stream. Satisfies
// UniformRandomBitGenerator, but callers use uniform() for portable results.
class CounterRng {
 public:
  using result_type = std::uint64_t;
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return hash_at(key_, counter_++); }

  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t uniform(std::uint64_t bound) {
    std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do x = (*this)(); while (x >= limit);
    return x % bound;
  }
  double unit() { return to_unit((*this)()); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform(i)]);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

inline bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

inline std::uint64_t smallest_prime_at_least(std::uint64_t x) {
  while (!is_prime(x)) ++x;
  return x;
}

// r(j) = ((a·j + b) mod P) mod m with P the smallest prime >= max(m, 2).
class PairwiseGen {
 public:
  static PairwiseGen from_seed(std::uint64_t seed, std::uint64_t m, std::uint64_t s) {
    if (m == 0) throw std::invalid_argument("pairwise generator: range m must be >= 1");
    std::uint64_t prime = smallest_prime_at_least(std::max<std::uint64_t>(m, 2));
    CounterRng rng(seed);
    std::uint64_t a = rng.uniform(prime);
    std::uint64_t b = rng.uniform(prime);
    return PairwiseGen(prime, a, b, m, s);
  }

  PairwiseGen(std::uint64_t prime, std::uint64_t a, std::uint64_t b, std::uint64_t m, std::uint64_t s)
      : prime_(prime), a_(a), b_(b), m_(m), s_(s) {
    if (m == 0) throw std::invalid_argument("pairwise generator: range m must be >= 1");
    if (a >= prime || b >= prime) throw std::invalid_argument("pairwise generator: coefficient out of range");
  }

  std::uint64_t operator()(std::uint64_t j) const {
    unsigned __int128 x = static_cast<unsigned __int128>(a_) * j + b_;
    return static_cast<std::uint64_t>(x % prime_) % m_;
  }

  std::vector<std::uint64_t> values() const {
    std::vector<std::uint64_t> out(s_);
    for (std::uint64_t j = 0; j < s_; ++j) out[j] = (*this)(j);
    return out;
  }

  std::uint64_t prime() const { return prime_; }
  std::uint64_t a() const { return a_; }
  std::uint64_t b() const { return b_; }
  std::uint64_t range() const { return m_; }
  std::uint64_t count() const { return s_; }

 private:
  std::uint64_t prime_, a_, b_, m_, s_;
};

// Each alive edge independently with probability q.
inline SubgraphMask bernoulli_mask(std::uint64_t seed, const DynamicGraph& g, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("bernoulli_mask: q must lie in (0, 1]");
  SubgraphMask mask(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.alive(e) && (q >= 1.0 || to_unit(hash_at(seed, static_cast<std::uint64_t>(e))) < q)) mask.set(e);
  return mask;
}

inline constexpr int kMaxFingerprintWords = 4;

struct Fingerprint {
  std::array<std::uint64_t, kMaxFingerprintWords> words{};
  int bits = 0;

  Fingerprint& operator^=(const Fingerprint& o) {
    for (int i = 0; i < kMaxFingerprintWords; ++i) words[i] ^= o.words[i];
    return *this;
  }
  friend Fingerprint operator^(Fingerprint a, const Fingerprint& b) { return a ^= b; }
  bool is_zero() const {
    for (auto w : words)
      if (w) return false;
    return true;
  }
  bool operator==(const Fingerprint& o) const { return words == o.words; }
};

inline int fingerprint_bits(int gamma, int n) { return gamma * std::max(1, ceil_log2(n)); }

// gamma·ceil(log2 n) uniform bits, stable per (seed, e).
inline Fingerprint fingerprint(std::uint64_t seed, EdgeId e, int gamma, int n) {
  if (gamma < 1) throw std::invalid_argument("fingerprint: gamma must be >= 1");
  Fingerprint fp;
  fp.bits = fingerprint_bits(gamma, n);
  if (fp.bits > 64 * kMaxFingerprintWords) throw std::invalid_argument("fingerprint: too many bits");
  int remaining = fp.bits;
  for (int w = 0; remaining > 0; ++w, remaining -= 64) {
    std::uint64_t x = hash_at(seed, static_cast<std::uint64_t>(e) * kMaxFingerprintWords + w);
    fp.words[w] = remaining >= 64 ? x : (x & ((1ULL << remaining) - 1));
  }
  return fp;
}

}  // namespace deconn
