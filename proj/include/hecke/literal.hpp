#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hecke/hecke_algebra.hpp"

namespace hecke {

/// "fin K", "mat2 a b c d", "axb A B", "semi (v1,...,vk) s", "word abA".
/// Throws ParseError (line 1, column of the offending token).
GroupElement parse_element(std::string_view text);

/// Elements separated by ';'.
std::vector<GroupElement> parse_element_list(std::string_view text);

/// Terms "COEFF@ELEMENT" separated by ';'. A bare element means 1@ELEMENT.
HeckeElement parse_hecke(const PairPtr& pair, std::string_view text, const Budget& budget);

}  // namespace hecke
