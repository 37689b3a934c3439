#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace qseed {

// splitmix64 finalizer; good avalanche, cheap, stable across platforms.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d493bdb110eb1full;
  return x ^ (x >> 31);
}

// Folds a list of words into one seed. Order matters, so (a,b) and (b,a)
// give unrelated streams.
constexpr std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x8d02fc16f53a41c9ull;
  for (std::uint64_t w : words) h = splitmix64(h ^ w);
  return h;
}

// FNV-1a, used to fold short names (objective ids) into seeds.
constexpr std::uint64_t hash_name(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

// Deterministic uniform stream. Every stochastic component receives one of
// these explicitly; nothing in the project touches global RNG state. The
// [0,1) draw is implemented here rather than with
// std::uniform_real_distribution so the exact sequence is pinned by this
// code, not by the standard library vendor.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  // Uniform in [0,1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next_u64() { return gen_(); }

  std::uint64_t seed() const { return seed_; }

  // Child stream addressed by index rather than by draw order, so callers
  // may consume children in any order without perturbing each other.
  RngStream child(std::uint64_t index) const {
    return RngStream(mix_seed({seed_, index}));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace qseed
