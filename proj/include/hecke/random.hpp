#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hecke/pair.hpp"

namespace hecke {

/// Seeded generator with platform-independent draws (std distributions are
/// implementation-defined, so they are avoided).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  /// Integer in [lo, hi].
  long between(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 engine_;
};

/// Product of up to `max_len` samplers or their inverses.
inline GroupElement random_element(const Pair& pair, Rng& rng, std::size_t max_len) {
  const auto& g = pair.group();
  const auto& gens = pair.samplers();
  GroupElement x = g.identity();
  if (gens.empty()) return x;
  auto len = rng.below(max_len + 1);
  for (std::uint64_t i = 0; i < len; ++i) {
    const auto& s = gens[rng.below(gens.size())];
    x = g.mul(x, rng.below(2) == 0 ? s : g.inv(s));
  }
  return x;
}

/// Product of up to `max_len` generators of H or their inverses.
inline GroupElement random_subgroup_element(const Pair& pair, Rng& rng, std::size_t max_len) {
  const auto& g = pair.group();
  const auto& gens = pair.subgroup().generators;
  GroupElement x = g.identity();
  auto len = rng.below(max_len + 1);
  for (std::uint64_t i = 0; i < len; ++i) {
    const auto& s = gens[rng.below(gens.size())];
    x = g.mul(x, rng.below(2) == 0 ? s : g.inv(s));
  }
  return x;
}

}  // namespace hecke
