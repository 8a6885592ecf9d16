#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "hecke/rational.hpp"

namespace hecke {

enum class ElementKind { Finite, Mat2, AxB, Semidirect, Word };

const char* kind_name(ElementKind k);

/// Index into the element list of a finite table group.
struct FiniteIdx {
  std::uint32_t index = 0;
  friend bool operator==(const FiniteIdx&, const FiniteIdx&) = default;
};

/// Invertible 2x2 rational matrix, row-major [a b; c d].
struct Mat2 {
  std::array<Rational, 4> m{Rational(1), Rational(0), Rational(0), Rational(1)};

  Rational det() const { return m[0] * m[3] - m[1] * m[2]; }
  bool has_integer_entries() const;
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// The matrix [[1, b], [0, a]] with a > 0.
struct AxB {
  Rational a{1};
  Rational b{0};
  friend bool operator==(const AxB&, const AxB&) = default;
};

/// (v, s) in N x| Z/2 where N is a product of cyclic groups and s = +1 or -1.
struct Semidirect {
  std::vector<int> normal;
  int acting = 1;
  friend bool operator==(const Semidirect&, const Semidirect&) = default;
};

/// Freely reduced word. Letter k > 0 is generator k-1; -k is its inverse.
struct Word {
  std::vector<int> letters;

  /// Free reduction by a single left-to-right stack pass.
  static Word reduced(const std::vector<int>& letters);
  bool is_reduced() const;
  friend bool operator==(const Word&, const Word&) = default;
};

class GroupElement {
 public:
  using Storage = std::variant<FiniteIdx, Mat2, AxB, Semidirect, Word>;

  GroupElement() : v_(FiniteIdx{}) {}
  GroupElement(FiniteIdx e) : v_(e) {}            // NOLINT(google-explicit-constructor)
  GroupElement(Mat2 e) : v_(std::move(e)) {}       // NOLINT(google-explicit-constructor)
  GroupElement(AxB e) : v_(std::move(e)) {}        // NOLINT(google-explicit-constructor)
  GroupElement(Semidirect e) : v_(std::move(e)) {} // NOLINT(google-explicit-constructor)
  GroupElement(Word e) : v_(std::move(e)) {}       // NOLINT(google-explicit-constructor)

  ElementKind kind() const { return static_cast<ElementKind>(v_.index()); }
  const Storage& storage() const { return v_; }

  template <class T>
  const T& as() const {
    return std::get<T>(v_);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(v_);
  }

  /// Literal form accepted by parse_element ("axb 2 1/3", "mat2 1 1 0 1", ...).
  std::string literal() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.v_ == b.v_; }

 private:
  Storage v_;
};

std::ostream& operator<<(std::ostream& os, const GroupElement& g);

// Convenience constructors used throughout tests and the catalog.
GroupElement axb(const Rational& a, const Rational& b);
GroupElement mat2(const Rational& a, const Rational& b, const Rational& c, const Rational& d);
GroupElement word(const std::string& letters);  // "abA": uppercase is inverse
GroupElement semi(std::vector<int> normal, int acting);
GroupElement fin(std::uint32_t index);

}  // namespace hecke

template <>
struct std::hash<hecke::GroupElement> {
  std::size_t operator()(const hecke::GroupElement& g) const {
    return std::hash<std::string>{}(g.literal());
  }
};
