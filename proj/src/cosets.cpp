#include "hecke/cosets.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>
#include <unordered_set>

namespace hecke {

Budget Budget::of(std::size_t n) {
  if (n == 0) throw BadParameter("budget must be positive");
  return Budget{n, 64 * n};
}

Budget Budget::from_env() {
  const char* env = std::getenv("HECKE_BUDGET_DEFAULT");
  if (env == nullptr) return Budget{};
  if (*env < '0' || *env > '9') return Budget{};
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return Budget{};
  return of(static_cast<std::size_t>(v));
}

DoubleCosetDecomp::DoubleCosetDecomp(GroupElement rep, std::vector<GroupElement> reps,
                                     std::vector<CosetKey> keys, std::size_t steps)
    : rep_(std::move(rep)),
      reps_(std::move(reps)),
      keys_(std::move(keys)),
      sorted_keys_(keys_),
      steps_(steps) {
  std::sort(sorted_keys_.begin(), sorted_keys_.end());
  key_ = DoubleCosetKey{sorted_keys_.front().bytes};
}

bool DoubleCosetDecomp::contains(const CosetKey& k) const {
  return std::binary_search(sorted_keys_.begin(), sorted_keys_.end(), k);
}

bool coset_eq(const Pair& pair, const GroupElement& x, const GroupElement& y) {
  const auto& g = pair.group();
  return pair.subgroup().contains(g.mul(x, g.inv(y)));
}

CosetKey coset_key(const Pair& pair, const GroupElement& x) {
  const auto& sub = pair.subgroup();
  if (x.kind() != pair.group().kind())
    throw KindMismatch(std::string("element of kind ") + kind_name(x.kind()) + " in pair " +
                       pair.name());
  if (sub.canonicalizer) return sub.canonicalizer(x);
  if (sub.allow_fallback) return pair.fallback_key(x);
  throw NoCanonicalizer("pair " + pair.name() + " has no coset canonicalizer");
}

namespace {

void check_cached_budget(const DoubleCosetDecomp& d, const Budget& budget) {
  if (d.r_value() > budget.max_cosets || d.steps() > budget.max_steps)
    throw Diverged("double coset exceeds budget", budget.max_cosets);
}

}  // namespace

DecompPtr double_coset_decompose(const Pair& pair, const GroupElement& x, const Budget& budget) {
  const auto& g = pair.group();
  CosetKey k0 = coset_key(pair, x);
  if (auto hit = pair.cached(k0)) {
    check_cached_budget(*hit, budget);
    return hit;
  }
  const auto& gens = pair.subgroup().generators;
  std::vector<GroupElement> reps{x};
  std::vector<CosetKey> keys{k0};
  std::unordered_set<std::string> seen{k0.bytes};
  std::size_t steps = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const auto& h : gens) {
      if (steps >= budget.max_steps) {
        pair.add_steps(steps);
        throw Diverged("double coset of " + x.literal() + " did not close within " +
                           std::to_string(budget.max_steps) + " steps",
                       reps.size() - i);
      }
      ++steps;
      GroupElement p = g.mul(reps[i], h);
      CosetKey k = coset_key(pair, p);
      if (seen.insert(k.bytes).second) {
        if (reps.size() >= budget.max_cosets) {
          pair.add_steps(steps);
          throw Diverged("double coset of " + x.literal() + " has more than " +
                             std::to_string(budget.max_cosets) + " right cosets",
                         reps.size() - i);
        }
        reps.push_back(std::move(p));
        keys.push_back(std::move(k));
      }
    }
  }
  pair.add_steps(steps);
  auto d = std::make_shared<const DoubleCosetDecomp>(x, std::move(reps), std::move(keys), steps);
  pair.remember(d);
  return d;
}

std::size_t R(const Pair& pair, const GroupElement& x, const Budget& budget) {
  return double_coset_decompose(pair, x, budget)->r_value();
}

std::size_t L(const Pair& pair, const GroupElement& x, const Budget& budget) {
  return double_coset_decompose(pair, pair.group().inv(x), budget)->r_value();
}

Rational delta(const Pair& pair, const GroupElement& x, const Budget& budget) {
  auto left = static_cast<long>(L(pair, x, budget));
  auto right = static_cast<long>(R(pair, x, budget));
  return Rational(left, right);
}

CommensuratorResult commensurator_test(const Pair& pair, const GroupElement& x,
                                       const Budget& budget) {
  try {
    CommensuratorResult r;
    r.right = R(pair, x, budget);
    r.left = L(pair, x, budget);
    r.in_comm = true;
    return r;
  } catch (const Diverged&) {
    return {};
  }
}

std::vector<DecompPtr> all_double_cosets(const Pair& pair, const Budget& budget) {
  auto elems = pair.group().elements();
  if (!elems) throw NotFinite("pair " + pair.name() + " is not finite");
  std::vector<DecompPtr> out;
  std::set<DoubleCosetKey> found;
  for (const auto& e : *elems) {
    auto d = double_coset_decompose(pair, e, budget);
    if (found.insert(d->key()).second) out.push_back(d);
  }
  return out;
}

}  // namespace hecke
