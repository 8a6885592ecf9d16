#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hecke/hecke_algebra.hpp"

namespace hecke {

struct CoreResult {
  enum class Mode { Exact, Bound };
  Mode mode = Mode::Exact;
  /// Exact: the core itself. Bound: the survivors.
  std::vector<GroupElement> elements;
  std::vector<GroupElement> conjugators;  // Bound only
  std::vector<GroupElement> test_set;     // Bound only
};

/// Intersection of all conjugates of H. Throws NotFinite.
CoreResult core_finite(const Pair& pair);

/// Elements t of the test set in H with x^-1 t x in H for every conjugator.
/// Contains the core intersected with the test set.
CoreResult core_bound(const Pair& pair, const std::vector<GroupElement>& conjugators,
                      const std::vector<GroupElement>& test_set);

/// [[1, 1/p], [0, 1]], [[1, 0], [1/p, 1]], and for n = 1, 2 the matrices
/// [[0, p^-n], [-p^n, 0]] and their transposes.
std::vector<GroupElement> sl2_core_conjugators(long p);

/// Elements of SL2(Z) of word length <= radius in S, T and their inverses,
/// in BFS order.
std::vector<GroupElement> sl2z_word_ball(std::size_t radius);

struct Reduction {
  PairPtr quotient;
  std::vector<GroupElement> core;
  /// projection[i] is the quotient index of the i-th element of G.
  std::vector<std::uint32_t> projection;
};

/// (G/K, H/K) as a fresh table group whose elements are the cosets gK,
/// numbered by first appearance in the enumeration of G. Throws NotFinite.
Reduction reduce_finite(const PairPtr& pair);

struct ReductionReport {
  std::size_t double_cosets = 0;
  std::size_t quotient_double_cosets = 0;
  bool well_defined = false;
  bool bijective = false;
  bool r_preserved = false;
  bool delta_preserved = false;
  bool tables_match = false;
  bool quotient_reduced = false;
  std::string detail;

  bool ok() const {
    return well_defined && bijective && r_preserved && delta_preserved && tables_match &&
           quotient_reduced;
  }
};

/// Compares H(G, H) with the Hecke algebra of the reduction through the
/// double-coset map HgH -> H'g'H'.
ReductionReport check_reduction_isomorphism(const PairPtr& pair, const Budget& budget);

}  // namespace hecke
