#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>
#include <set>
#include <thread>

#include "hecke/canonical.hpp"
#include "hecke/catalog.hpp"
#include "hecke/random.hpp"
#include "hecke/reduction.hpp"
#include "oracle.hpp"

using namespace hecke;

namespace {

Rational q(const char* s) { return Rational::parse(s); }
const Budget kBudget{};

std::vector<GroupElement> samples(const Pair& p, std::size_t n, std::uint64_t seed, std::size_t len = 4) {
  Rng rng(seed);
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_element(p, rng, len));
  return out;
}

// GL2(Q)+ / SL2(Z) with only the bucketed pairwise fallback.
PairPtr gl2_fallback() {
  auto base = builtin("gl2q_plus_sl2z");
  Subgroup h = base->subgroup();
  h.canonicalizer = nullptr;
  h.canonicalizer_id = "none";
  return std::make_shared<Pair>("gl2_fallback", base->group_ptr(), h);
}

}  // namespace

TEST(CosetEq, BostConnes) {
  auto bc = builtin("bost_connes");
  EXPECT_TRUE(coset_eq(*bc, axb(1, q("1/2")), axb(1, q("3/2"))));
  EXPECT_TRUE(coset_eq(*bc, axb(q("2/3"), 5), axb(q("2/3"), 5)));
  EXPECT_FALSE(coset_eq(*bc, axb(2, 0), axb(3, 0)));
}

TEST(CosetEq, EquivalenceRelationOnSamples) {
  for (const char* name : {"bost_connes", "gl2q_plus_sl2z", "flip"}) {
    auto p = builtin(name);
    auto xs = samples(*p, 12, 21, 3);
    for (const auto& a : xs) {
      EXPECT_TRUE(coset_eq(*p, a, a));
      for (const auto& b : xs) {
        EXPECT_EQ(coset_eq(*p, a, b), coset_eq(*p, b, a));
        for (const auto& c : xs)
          if (coset_eq(*p, a, b) && coset_eq(*p, b, c)) EXPECT_TRUE(coset_eq(*p, a, c));
      }
    }
  }
}

TEST(CosetKey, BostConnesForm) {
  auto bc = builtin("bost_connes");
  EXPECT_EQ(coset_key(*bc, axb(q("2/3"), q("7/3"))).bytes, "axb:2/3,1/3");
  // Left translates by integers walk exactly through b + n a.
  GroupElement x = axb(q("3/2"), q("1/5"));
  for (int n = -4; n <= 4; ++n)
    EXPECT_EQ(coset_key(*bc, bc->group().mul(axb(1, n), x)), coset_key(*bc, x));
  EXPECT_NE(coset_key(*bc, axb(q("3/2"), q("1/5") + q("1/2"))), coset_key(*bc, x));
}

TEST(CosetKey, RespectsCosetEquality) {
  for (const auto& name : catalog_names()) {
    auto p = builtin(name);
    auto xs = samples(*p, 25, 8, 3);
    for (const auto& a : xs)
      for (const auto& b : xs)
        EXPECT_EQ(coset_key(*p, a) == coset_key(*p, b), coset_eq(*p, a, b))
            << name << " " << a << " " << b;
  }
}

TEST(CosetKey, FiniteIsMinimalIndex) {
  auto p = builtin("inversion(5)");
  oracle::Finite o(*p);
  for (std::size_t x = 0; x < o.n(); ++x) {
    auto c = o.right_coset(x);
    char buf[32];
    std::snprintf(buf, sizeof buf, "fin:%08zu", *c.begin());
    EXPECT_EQ(coset_key(*p, o.el(x)).bytes, buf);
  }
}

TEST(CosetKey, FlipPairExample) {
  auto p = builtin("flip");
  EXPECT_EQ(coset_key(*p, semi({1, 0}, 1)), coset_key(*p, semi({0, 1}, -1)));
}

TEST(CosetKey, NoCanonicalizerWithoutFallback) {
  auto base = builtin("gl2q_plus_sl2z");
  Subgroup h = base->subgroup();
  h.canonicalizer = nullptr;
  h.allow_fallback = false;
  Pair p("bare", base->group_ptr(), h);
  EXPECT_THROW(coset_key(p, mat2(1, 0, 0, 2)), NoCanonicalizer);
}

TEST(CosetKey, KindMismatch) {
  auto bc = builtin("bost_connes");
  EXPECT_THROW(coset_key(*bc, word("a")), KindMismatch);
}

TEST(Decompose, BostConnesTwo) {
  auto bc = builtin("bost_connes");
  auto d = double_coset_decompose(*bc, axb(2, 0), kBudget);
  EXPECT_EQ(d->r_value(), 2u);
  EXPECT_EQ(d->right_coset_reps()[0], axb(2, 0));
  EXPECT_EQ(d->right_coset_reps()[1], axb(2, 1));
  EXPECT_EQ(double_coset_decompose(*bc, axb(1, 0), kBudget)->r_value(), 1u);
}

TEST(Decompose, FreeGroupDiverges) {
  auto f = builtin("free_non_hecke");
  EXPECT_THROW(double_coset_decompose(*f, word("b"), Budget::of(1000)), Diverged);
  // The cosets <a> b a^k are pairwise distinct for k <= 10.
  std::set<CosetKey> keys;
  GroupElement x = word("b");
  for (int k = 0; k <= 10; ++k) {
    keys.insert(coset_key(*f, x));
    x = f->group().mul(x, word("a"));
  }
  EXPECT_EQ(keys.size(), 11u);
}

TEST(Decompose, CachedResultStillHonoursBudget) {
  auto bc = builtin("bost_connes");
  EXPECT_EQ(R(*bc, axb(7, 0), kBudget), 7u);
  EXPECT_THROW(R(*bc, axb(7, 0), Budget{3, 1000}), Diverged);
  EXPECT_EQ(R(*bc, axb(7, 0), kBudget), 7u);
}

TEST(Decompose, RepsDistinctAndClosed) {
  for (const auto& name : catalog_names()) {
    auto p = builtin(name);
    for (const auto& x : samples(*p, 6, 4, 3)) {
      DecompPtr d;
      try {
        d = double_coset_decompose(*p, x, Budget::of(2000));
      } catch (const Diverged&) {
        continue;
      }
      std::set<CosetKey> keys(d->keys().begin(), d->keys().end());
      EXPECT_EQ(keys.size(), d->r_value());
      for (const auto& r : d->right_coset_reps())
        for (const auto& h : p->subgroup().generators)
          EXPECT_TRUE(keys.count(coset_key(*p, p->group().mul(r, h))));
    }
  }
}

TEST(CountingFunctions, BostConnesFiveQuarters) {
  auto bc = builtin("bost_connes");
  EXPECT_EQ(L(*bc, axb(q("5/4"), 0), kBudget), 4u);
  EXPECT_EQ(R(*bc, axb(q("5/4"), 0), kBudget), 5u);
  EXPECT_EQ(delta(*bc, axb(q("2/3"), 0), kBudget), q("3/2"));
  EXPECT_EQ(delta(*bc, axb(1, 0), kBudget), Rational(1));
}

TEST(CountingFunctions, BostConnesAgainstEnumeration) {
  auto bc = builtin("bost_connes");
  for (long m = 1; m <= 7; ++m)
    for (long n = 1; n <= 7; ++n) {
      if (std::gcd(m, n) != 1) continue;
      for (const char* b : {"0", "1/3", "-5/2"}) {
        AxB x{Rational(m, n), q(b)};
        auto [r, l] = oracle::bc_counts(x);
        EXPECT_EQ(static_cast<long>(R(*bc, x, kBudget)), r);
        EXPECT_EQ(static_cast<long>(L(*bc, x, kBudget)), l);
      }
    }
}

TEST(CountingFunctions, FiniteAgainstOracle) {
  for (const auto& name : finite_catalog_names()) {
    auto p = builtin(name);
    oracle::Finite o(*p);
    for (std::size_t x = 0; x < o.n(); ++x) {
      EXPECT_EQ(R(*p, o.el(x), kBudget), o.R(x)) << name;
      EXPECT_EQ(L(*p, o.el(x), kBudget), o.L(x)) << name;
      EXPECT_EQ(L(*p, o.el(x), kBudget), o.double_coset(x).size() / o.hs.size());
      EXPECT_EQ(delta(*p, o.el(x), kBudget), Rational(1));
      // BFS output equals {Hxh : h in H}.
      auto d = double_coset_decompose(*p, o.el(x), kBudget);
      std::set<std::size_t> covered;
      for (const auto& r : d->right_coset_reps())
        for (auto y : o.right_coset(o.id(r))) covered.insert(y);
      EXPECT_EQ(covered, o.double_coset(x));
    }
  }
}

TEST(CountingFunctions, FlipAllOnes) {
  auto p = builtin("flip");
  auto xs = *p->group().elements();
  for (const auto& x : xs) EXPECT_EQ(delta(*p, x, kBudget), Rational(1));
}

TEST(CountingFunctions, SL2OverZHalfDiagonal) {
  auto p = builtin("sl2_z_inv_p(2)");
  GroupElement x = mat2(2, 0, 0, q("1/2"));
  // Enumeration oracle: x k over a word ball of SL2(Z), deduplicated by
  // pairwise coset equality only.
  std::vector<GroupElement> reps;
  for (const auto& k : sl2z_word_ball(6)) {
    GroupElement y = p->group().mul(x, k);
    bool fresh = true;
    for (const auto& r : reps)
      if (coset_eq(*p, y, r)) fresh = false;
    if (fresh) reps.push_back(y);
  }
  EXPECT_EQ(reps.size(), 6u);
  EXPECT_EQ(R(*p, x, kBudget), 6u);
  EXPECT_EQ(L(*p, x, kBudget), 6u);
}

TEST(CountingFunctions, HeckeOperatorCountsOnGL2) {
  auto p = builtin("gl2q_plus_sl2z");
  auto fb = gl2_fallback();
  for (long prime : {2L, 3L, 5L}) {
    GroupElement x = mat2(1, 0, 0, prime);
    EXPECT_EQ(R(*p, x, kBudget), static_cast<std::size_t>(prime + 1));
    // The bucketed fallback agrees with the normal-form keys.
    EXPECT_EQ(R(*fb, x, kBudget), static_cast<std::size_t>(prime + 1));
  }
}

TEST(CountingFunctions, RIsLOfInverse) {
  for (const auto& name : catalog_names()) {
    auto p = builtin(name);
    for (const auto& x : samples(*p, 10, 13, 3)) {
      try {
        EXPECT_EQ(R(*p, x, kBudget), L(*p, p->group().inv(x), kBudget)) << name;
      } catch (const Diverged&) {
      }
    }
  }
}

TEST(CountingFunctions, DeltaIsAHomomorphismKillingH) {
  for (const char* name : {"bost_connes", "sl2_z_inv_p(2)", "gl2q_plus_sl2z"}) {
    auto p = builtin(name);
    const auto& g = p->group();
    auto xs = samples(*p, 10, 17, 3);
    for (const auto& a : xs)
      for (const auto& b : xs)
        EXPECT_EQ(delta(*p, g.mul(a, b), kBudget),
                  delta(*p, a, kBudget) * delta(*p, b, kBudget)) << name;
    Rng rng(2);
    for (int i = 0; i < 10; ++i)
      EXPECT_EQ(delta(*p, random_subgroup_element(*p, rng, 5), kBudget), Rational(1));
    for (const auto& a : xs)
      EXPECT_EQ(delta(*p, a, kBudget), delta(*p, g.inv(a), kBudget).inverse());
  }
}

TEST(DoubleCosets, PartitionOnSamples) {
  for (const char* name : {"bost_connes", "gl2q_plus_sl2z", "inversion(6)"}) {
    auto p = builtin(name);
    auto xs = samples(*p, 12, 31, 3);
    for (const auto& a : xs)
      for (const auto& b : xs) {
        auto da = double_coset_decompose(*p, a, kBudget);
        auto db = double_coset_decompose(*p, b, kBudget);
        std::set<CosetKey> ka(da->keys().begin(), da->keys().end());
        std::set<CosetKey> kb(db->keys().begin(), db->keys().end());
        bool shared = false;
        for (const auto& k : ka) shared |= kb.count(k) > 0;
        if (shared) EXPECT_EQ(ka, kb);
      }
  }
}

TEST(Commensurator, Examples) {
  auto bc = builtin("bost_connes");
  auto r = commensurator_test(*bc, axb(q("3/5"), q("1/2")), kBudget);
  EXPECT_TRUE(r.in_comm);
  EXPECT_EQ(r.left, 5u);
  EXPECT_EQ(r.right, 3u);
  auto h = commensurator_test(*bc, axb(1, 4), kBudget);
  EXPECT_TRUE(h.in_comm);
  EXPECT_EQ(h.left, 1u);
  EXPECT_EQ(h.right, 1u);
  auto f = builtin("free_non_hecke");
  EXPECT_FALSE(commensurator_test(*f, word("b"), Budget::of(1000)).in_comm);
}

TEST(Budget, FromEnvironment) {
  setenv("HECKE_BUDGET_DEFAULT", "123", 1);
  Budget b = Budget::from_env();
  EXPECT_EQ(b.max_cosets, 123u);
  EXPECT_EQ(b.max_steps, 64u * 123u);
  setenv("HECKE_BUDGET_DEFAULT", "-4", 1);
  EXPECT_EQ(Budget::from_env().max_cosets, Budget{}.max_cosets);
  unsetenv("HECKE_BUDGET_DEFAULT");
  EXPECT_THROW(Budget::of(0), BadParameter);
}

TEST(Memo, ConcurrentFillsAgree) {
  auto bc = builtin("bost_connes");
  std::vector<std::thread> ts;
  std::vector<std::size_t> rs(8);
  for (int i = 0; i < 8; ++i)
    ts.emplace_back([&, i] { rs[i] = R(*bc, axb(Rational(11 + 2 * (i % 3), 2), 0), kBudget); });
  for (auto& t : ts) t.join();
  for (int i = 0; i < 8; ++i) EXPECT_EQ(rs[i], static_cast<std::size_t>(11 + 2 * (i % 3)));
}
