#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "hecke/pair.hpp"

namespace hecke {

/// Termination control for enumerations that may not close.
struct Budget {
  std::size_t max_cosets = 10000;
  std::size_t max_steps = 640000;

  /// Budget scaled from one positive integer: max_cosets = n, max_steps = 64 n.
  static Budget of(std::size_t n);
  /// Reads HECKE_BUDGET_DEFAULT when set and valid, else Budget{}.
  static Budget from_env();
};

/// Right cosets of H inside HxH, found by right multiplication with the
/// generators of H until one full sweep adds nothing.
class DoubleCosetDecomp {
 public:
  DoubleCosetDecomp(GroupElement rep, std::vector<GroupElement> reps, std::vector<CosetKey> keys,
                    std::size_t steps);

  const GroupElement& rep() const { return rep_; }
  const std::vector<GroupElement>& right_coset_reps() const { return reps_; }
  const std::vector<CosetKey>& keys() const { return keys_; }
  std::size_t r_value() const { return reps_.size(); }
  const DoubleCosetKey& key() const { return key_; }
  std::size_t steps() const { return steps_; }

  bool contains(const CosetKey& k) const;

 private:
  GroupElement rep_;
  std::vector<GroupElement> reps_;
  std::vector<CosetKey> keys_;
  std::vector<CosetKey> sorted_keys_;
  DoubleCosetKey key_;
  std::size_t steps_;
};

using DecompPtr = std::shared_ptr<const DoubleCosetDecomp>;

/// Hx = Hy, i.e. x y^-1 in H.
bool coset_eq(const Pair& pair, const GroupElement& x, const GroupElement& y);

/// Throws NoCanonicalizer when the pair has neither a canonicalizer nor the
/// bucket fallback.
CosetKey coset_key(const Pair& pair, const GroupElement& x);

/// Throws Diverged on budget exhaustion, never returns a partial result.
DecompPtr double_coset_decompose(const Pair& pair, const GroupElement& x, const Budget& budget);

std::size_t R(const Pair& pair, const GroupElement& x, const Budget& budget);
std::size_t L(const Pair& pair, const GroupElement& x, const Budget& budget);

/// L(x) / R(x).
Rational delta(const Pair& pair, const GroupElement& x, const Budget& budget);

struct CommensuratorResult {
  bool in_comm = false;
  std::size_t left = 0;
  std::size_t right = 0;
};

/// InComm with (L, R) when both enumerations close; Unknown otherwise.
CommensuratorResult commensurator_test(const Pair& pair, const GroupElement& x,
                                       const Budget& budget);

/// All double cosets of a finite pair, ordered by their first element in the
/// enumeration of G.
std::vector<DecompPtr> all_double_cosets(const Pair& pair, const Budget& budget);

}  // namespace hecke
