#include "hecke/pair.hpp"

#include "hecke/cosets.hpp"

namespace hecke {

Pair::Pair(std::string name, GroupPtr group, Subgroup subgroup, std::string provenance)
    : name_(std::move(name)),
      provenance_(std::move(provenance)),
      group_(std::move(group)),
      sub_(std::move(subgroup)) {
  if (!group_) throw BadParameter("Pair: null group");
  if (!sub_.membership) throw BadParameter("Pair: subgroup without membership predicate");
  if (sub_.generators.empty()) sub_.generators.push_back(group_->identity());
  samplers_ = group_->generators();
}

std::shared_ptr<const DoubleCosetDecomp> Pair::cached(const CosetKey& k) const {
  std::lock_guard lock(mu_);
  auto it = memo_.find(k.bytes);
  return it == memo_.end() ? nullptr : it->second;
}

void Pair::remember(const std::shared_ptr<const DoubleCosetDecomp>& d) const {
  std::lock_guard lock(mu_);
  for (const auto& k : d->keys()) memo_.emplace(k.bytes, d);
}

std::size_t Pair::cache_size() const {
  std::lock_guard lock(mu_);
  return memo_.size();
}

CosetKey Pair::fallback_key(const GroupElement& x) const {
  std::string bucket = sub_.bucket ? sub_.bucket(x) : std::string();
  std::lock_guard lock(mu_);
  auto& reps = fallback_reps_[bucket];
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (sub_.membership(group_->mul(x, group_->inv(reps[i]))))
      return CosetKey{"fb:" + bucket + "#" + std::to_string(i)};
  }
  reps.push_back(x);
  return CosetKey{"fb:" + bucket + "#" + std::to_string(reps.size() - 1)};
}

}  // namespace hecke
