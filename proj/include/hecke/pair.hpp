#pragma once

#include <atomic>
#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hecke/group.hpp"

namespace hecke {

/// Canonical byte string of a right coset Hx.
struct CosetKey {
  std::string bytes;
  friend auto operator<=>(const CosetKey&, const CosetKey&) = default;
  friend bool operator==(const CosetKey&, const CosetKey&) = default;
};

/// Canonical name of a double coset HxH: the smallest key among its right cosets.
struct DoubleCosetKey {
  std::string bytes;
  friend auto operator<=>(const DoubleCosetKey&, const DoubleCosetKey&) = default;
  friend bool operator==(const DoubleCosetKey&, const DoubleCosetKey&) = default;
};

using Membership = std::function<bool(const GroupElement&)>;
using Canonicalizer = std::function<CosetKey(const GroupElement&)>;
using Bucketizer = std::function<std::string(const GroupElement&)>;

struct Subgroup {
  Membership membership;
  std::vector<GroupElement> generators;
  bool is_finite = false;
  /// Element list when H is finite.
  std::optional<std::vector<GroupElement>> elements;
  std::string membership_id;

  /// Maps x to a canonical key of Hx. Optional.
  Canonicalizer canonicalizer;
  std::string canonicalizer_id;
  /// Coset invariant used to narrow pairwise comparisons when there is no
  /// canonicalizer.
  Bucketizer bucket;
  bool allow_fallback = true;

  bool contains(const GroupElement& g) const { return membership(g); }
};

class DoubleCosetDecomp;

/// A group G together with a subgroup H. Holds the memo of double-coset
/// decompositions; the memo behaves as if each decomposition ran once.
class Pair {
 public:
  Pair(std::string name, GroupPtr group, Subgroup subgroup, std::string provenance = "");

  Pair(const Pair&) = delete;
  Pair& operator=(const Pair&) = delete;

  const std::string& name() const { return name_; }
  const std::string& provenance() const { return provenance_; }
  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const Subgroup& subgroup() const { return sub_; }

  /// Both G and H are enumerable.
  bool is_finite() const { return group_->is_finite() && sub_.elements.has_value(); }

  /// Elements used to draw random samples of G (words in these).
  const std::vector<GroupElement>& samplers() const { return samplers_; }
  void set_samplers(std::vector<GroupElement> s) { samplers_ = std::move(s); }

  // Memo interface used by the cosets module.
  std::shared_ptr<const DoubleCosetDecomp> cached(const CosetKey& k) const;
  void remember(const std::shared_ptr<const DoubleCosetDecomp>& d) const;
  void add_steps(std::size_t n) const { steps_used_ += n; }
  std::size_t steps_used() const { return steps_used_.load(); }
  std::size_t cache_size() const;

  /// Fallback key assignment: first coset-equal representative seen in the
  /// element's bucket.
  CosetKey fallback_key(const GroupElement& x) const;

 private:
  std::string name_;
  std::string provenance_;
  GroupPtr group_;
  Subgroup sub_;
  std::vector<GroupElement> samplers_;

  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, std::shared_ptr<const DoubleCosetDecomp>> memo_;
  mutable std::map<std::string, std::vector<GroupElement>> fallback_reps_;
  mutable std::atomic<std::size_t> steps_used_{0};
};

using PairPtr = std::shared_ptr<const Pair>;

}  // namespace hecke
