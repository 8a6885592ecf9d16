#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hecke/pair.hpp"

namespace hecke {

/// Closure of `generators` in a finite group, in BFS order from the identity.
std::vector<GroupElement> subgroup_closure(const Group& g,
                                           const std::vector<GroupElement>& generators);

/// Pair with finite G and H given by its generators; canonicalizer finite_min.
PairPtr make_finite_pair(std::string name, GroupPtr group, std::vector<GroupElement> generators,
                         std::string provenance = "");

/// Names accepted by builtin():
///   bost_connes, inversion(n), flip, gl2q_plus_sl2z, sl2_z_inv_p(p),
///   free_non_hecke, d4_center, cyclic(n,m)
/// Throws UnknownName, BadParameter.
PairPtr builtin(const std::string& name);

/// One instance of every builtin family, in a fixed order.
std::vector<std::string> catalog_names();

/// Finite builtins compared against brute force.
std::vector<std::string> finite_catalog_names();

/// Every subgroup, up to equality of element sets, generated by at most two
/// elements of the built-in small groups of order <= max_order: cyclic,
/// dihedral, (Z/2 x Z/2) x| Z/2, Z/2 x Z/4 x| Z/2, A4 and Q8.
std::vector<PairPtr> small_finite_pairs(std::size_t max_order);

struct SubgroupReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string first_violation;
  bool ok() const { return violations == 0; }
};

/// Identity and generators belong to H; for each sampled pair (a, b) with
/// both in H, so are a*b and a^-1.
SubgroupReport subgroup_check(const Pair& pair,
                              const std::vector<std::pair<GroupElement, GroupElement>>& samples);

/// Deterministic sample pairs: words in the generators of H, mixed with
/// products of H-words and samplers of G.
std::vector<std::pair<GroupElement, GroupElement>> subgroup_samples(const Pair& pair,
                                                                    std::size_t n,
                                                                    std::uint64_t seed);

/// Parsed configuration before validation.
struct PairSpec {
  std::string name;
  std::string provenance;
  std::string group_kind;
  std::vector<std::pair<std::string, std::string>> group_params;
  std::string generators;
  std::string membership;
  std::string canonicalizer;
  bool finite = false;
  std::size_t membership_budget = 10000;
};

/// Sectioned key=value text with [group], [subgroup], [meta]; '#' and ';'
/// start comments at the beginning of a line. Throws ParseError.
PairSpec parse_pair_spec(const std::string& text);

/// Throws ParseError, ValidationError.
PairPtr load_pair(const std::string& config_text);
PairPtr build_pair(const PairSpec& spec);

}  // namespace hecke
