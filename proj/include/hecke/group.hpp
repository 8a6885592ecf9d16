#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hecke/element.hpp"
#include "hecke/errors.hpp"

namespace hecke {

/// A group with decidable exact equality. Implementations are immutable
/// after construction and safe to share between threads.
class Group {
 public:
  virtual ~Group() = default;

  virtual ElementKind kind() const = 0;
  virtual std::string description() const = 0;
  virtual GroupElement identity() const = 0;

  /// Throws KindMismatch when an operand is of another kind.
  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inv(const GroupElement& a) const;

  /// Whether `a` is a well-formed element of this particular group.
  virtual bool contains(const GroupElement& a) const = 0;

  /// Full element list for finite groups, in a fixed order.
  virtual std::optional<std::vector<GroupElement>> elements() const { return std::nullopt; }
  bool is_finite() const { return elements().has_value(); }

  /// Declared generators (possibly empty). Used for sampling and coset balls.
  virtual std::vector<GroupElement> generators() const { return {}; }

 protected:
  virtual GroupElement mul_impl(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement inv_impl(const GroupElement& a) const = 0;

  void require_kind(const GroupElement& a) const;
};

using GroupPtr = std::shared_ptr<const Group>;

/// Finite group given by an explicit multiplication table on indices 0..n-1.
class FiniteGroup final : public Group {
 public:
  /// `table[i][j]` is the index of i*j. Validates the group axioms.
  FiniteGroup(std::vector<std::vector<std::uint32_t>> table, std::string description,
              std::vector<std::string> labels = {});

  /// Closure of permutations (images of 0..degree-1) under composition;
  /// element 0 is the identity, the rest in BFS order from the generators.
  static std::shared_ptr<FiniteGroup> from_permutations(
      const std::vector<std::vector<int>>& generators, std::string description);

  static std::shared_ptr<FiniteGroup> cyclic(std::uint32_t n);

  ElementKind kind() const override { return ElementKind::Finite; }
  std::string description() const override { return description_; }
  GroupElement identity() const override { return FiniteIdx{identity_}; }
  bool contains(const GroupElement& a) const override;
  std::optional<std::vector<GroupElement>> elements() const override;
  std::vector<GroupElement> generators() const override { return generators_; }

  std::uint32_t order() const { return static_cast<std::uint32_t>(table_.size()); }
  std::uint32_t product(std::uint32_t a, std::uint32_t b) const { return table_[a][b]; }
  const std::vector<std::string>& labels() const { return labels_; }

  void set_generators(std::vector<GroupElement> gens) { generators_ = std::move(gens); }

 protected:
  GroupElement mul_impl(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inv_impl(const GroupElement& a) const override;

 private:
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> inverse_;
  std::uint32_t identity_ = 0;
  std::string description_;
  std::vector<std::string> labels_;
  std::vector<GroupElement> generators_;
};

/// Groups of invertible 2x2 rational matrices.
class Mat2Group final : public Group {
 public:
  enum class Family {
    GL2QPlus,       // det > 0
    SL2ZInvP,       // det = 1, entries in Z[1/p]
    GL2Q,           // det != 0
  };

  explicit Mat2Group(Family family, long p = 0);

  ElementKind kind() const override { return ElementKind::Mat2; }
  std::string description() const override;
  GroupElement identity() const override { return Mat2{}; }
  bool contains(const GroupElement& a) const override;
  std::vector<GroupElement> generators() const override;

  Family family() const { return family_; }
  long prime() const { return p_; }

 protected:
  GroupElement mul_impl(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inv_impl(const GroupElement& a) const override;

 private:
  Family family_;
  long p_;
};

/// The affine group {[[1, b], [0, a]] : a in Q+, b in Q}.
class AxBGroup final : public Group {
 public:
  ElementKind kind() const override { return ElementKind::AxB; }
  std::string description() const override { return "AxB(Q+, Q)"; }
  GroupElement identity() const override { return AxB{}; }
  bool contains(const GroupElement& a) const override;
  std::vector<GroupElement> generators() const override;

 protected:
  GroupElement mul_impl(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inv_impl(const GroupElement& a) const override;
};

/// N x| Z/2 where N = Z/m1 x ... x Z/mk and -1 acts by a built-in action.
class SemidirectGroup final : public Group {
 public:
  enum class Action {
    Inversion,  // v -> -v
    Flip,       // (x, y) -> (y, x); requires two equal moduli
  };

  SemidirectGroup(std::vector<int> moduli, Action action);

  ElementKind kind() const override { return ElementKind::Semidirect; }
  std::string description() const override;
  GroupElement identity() const override;
  bool contains(const GroupElement& a) const override;
  std::optional<std::vector<GroupElement>> elements() const override;
  std::vector<GroupElement> generators() const override;

  const std::vector<int>& moduli() const { return moduli_; }
  Action action() const { return action_; }
  std::vector<int> act(int acting, const std::vector<int>& v) const;

 protected:
  GroupElement mul_impl(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inv_impl(const GroupElement& a) const override;

 private:
  std::vector<int> moduli_;
  Action action_;
};

/// Free group on `rank` generators named a, b, c, ...
class FreeGroup final : public Group {
 public:
  explicit FreeGroup(int rank);

  ElementKind kind() const override { return ElementKind::Word; }
  std::string description() const override;
  GroupElement identity() const override { return Word{}; }
  bool contains(const GroupElement& a) const override;
  std::vector<GroupElement> generators() const override;
  int rank() const { return rank_; }

 protected:
  GroupElement mul_impl(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inv_impl(const GroupElement& a) const override;

 private:
  int rank_;
};

/// Position of every element of a finite group in its enumeration order.
class ElementIndex {
 public:
  explicit ElementIndex(const Group& g);
  std::size_t size() const { return elements_.size(); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::size_t index_of(const GroupElement& e) const;

 private:
  std::vector<GroupElement> elements_;
  std::unordered_map<GroupElement, std::size_t> index_;
};

}  // namespace hecke
