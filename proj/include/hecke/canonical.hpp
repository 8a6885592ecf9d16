#pragma once

#include <memory>
#include <vector>

#include "hecke/pair.hpp"

namespace hecke::canonical {

/// Right cosets of the integer translations in AxB: H(a, b) -> (a, b mod a).
Canonicalizer axb_mod();

/// Right cosets of SL2(Z) in GL2(Q)+: the row Hermite normal form
/// [[p, q], [0, r]] with p, r > 0 and 0 <= q < r.
Canonicalizer hnf();

/// Right cosets of a finite H in a finite G: smallest enumeration index in Hx.
Canonicalizer finite_min(const GroupPtr& group, const std::vector<GroupElement>& h_elements);

/// Right cosets of <S> in a free group, S a set of free generators: strip
/// the maximal prefix made of letters of S.
Canonicalizer free_strip(std::vector<int> subgroup_letters);

/// Bucket by lcm of denominators and determinant; used only by the fallback.
Bucketizer denominator_profile();

}  // namespace hecke::canonical
