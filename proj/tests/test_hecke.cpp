#include <gtest/gtest.h>

#include "hecke/literal.hpp"
#include "hecke/random.hpp"
#include "oracle.hpp"

using namespace hecke;

namespace {

Rational q(const char* s) { return Rational::parse(s); }
const Budget kBudget{};

std::vector<GroupElement> samples(const Pair& p, std::size_t n, std::uint64_t seed,
                                  std::size_t len = 3) {
  Rng rng(seed);
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_element(p, rng, len));
  return out;
}

// Sum of chi's with small Gaussian-integer coefficients.
HeckeElement random_hecke(const PairPtr& p, Rng& rng, std::size_t terms, std::size_t len = 2) {
  HeckeElement f(p);
  for (std::size_t i = 0; i < terms; ++i) {
    CRational c(Rational(rng.between(-3, 3)), Rational(rng.between(-2, 2)));
    f += c * chi(p, random_element(*p, rng, len), kBudget);
  }
  return f;
}

std::vector<PairPtr> finite_pairs() {
  std::vector<PairPtr> out;
  for (const auto& n : finite_catalog_names()) out.push_back(builtin(n));
  for (auto& p : small_finite_pairs(12)) out.push_back(p);
  return out;
}

}  // namespace

TEST(HeckeElement, ChiAndValues) {
  auto bc = builtin("bost_connes");
  auto f = chi(bc, axb(2, 0), kBudget);
  EXPECT_EQ(f.support_size(), 1u);
  EXPECT_EQ(f.value_at(axb(2, 1)), CRational(1));
  EXPECT_EQ(f.value_at(axb(2, q("1/3"))), CRational(0));
  auto z = f - f;
  EXPECT_TRUE(z.is_zero());
  auto g = CRational(0) * f;
  EXPECT_TRUE(g.is_zero());
}

TEST(HeckeElement, DifferentPairsRejected) {
  auto a = chi(builtin("flip"), semi({1, 0}, 1), kBudget);
  auto b = chi(builtin("flip"), semi({1, 0}, 1), kBudget);
  EXPECT_THROW(a + b, KindMismatch);
}

TEST(Convolution, FiniteAgainstOracle) {
  for (const auto& p : finite_pairs()) {
    oracle::Finite o(*p);
    Rng rng(3);
    for (int t = 0; t < 4; ++t) {
      auto f1 = random_hecke(p, rng, 3);
      auto f2 = random_hecke(p, rng, 3);
      auto got = o.as_function(convolve(f1, f2, kBudget));
      auto want = o.convolve(o.as_function(f1), o.as_function(f2));
      ASSERT_EQ(got, want) << p->name();
      for (std::size_t x = 0; x < o.n(); x += 3)
        EXPECT_EQ(convolve_at(f1, f2, o.el(x)), want[x]) << p->name();
    }
  }
}

TEST(Convolution, StructureConstantsAgainstOracle) {
  for (const auto& p : finite_pairs()) {
    oracle::Finite o(*p);
    auto dcs = o.double_cosets();
    for (const auto& c : dcs)
      for (const auto& d : dcs) {
        auto sc = structure_constants(p, o.el(*c.begin()), o.el(*d.begin()), kBudget);
        long total = 0;
        for (const auto& e : dcs) {
          long want = o.structure_constant(*c.begin(), *d.begin(), *e.begin());
          auto key = double_coset_decompose(*p, o.el(*e.begin()), kBudget)->key();
          long got = sc.count(key) ? sc.at(key).multiplicity : 0;
          EXPECT_EQ(got, want) << p->name();
          total += got;
        }
        EXPECT_EQ(static_cast<std::size_t>(total) > 0, true);
      }
  }
}

TEST(Convolution, FlipTable) {
  auto p = builtin("flip");
  GroupElement v = semi({1, 0}, 1);
  GroupElement w = semi({1, 1}, 1);
  EXPECT_EQ(R(*p, v, kBudget), 2u);
  EXPECT_EQ(R(*p, w, kBudget), 1u);
  auto sc = structure_constants(p, v, v, kBudget);
  auto e0 = double_coset_decompose(*p, p->group().identity(), kBudget)->key();
  auto e1 = double_coset_decompose(*p, w, kBudget)->key();
  EXPECT_EQ(sc.at(e0).multiplicity, 2);
  EXPECT_EQ(sc.at(e1).multiplicity, 2);
  EXPECT_EQ(sc.size(), 2u);
  // chi_W is central of order two.
  auto cw = chi(p, w, kBudget);
  EXPECT_EQ(convolve(cw, cw, kBudget), chi(p, p->group().identity(), kBudget));
}

TEST(Convolution, HeckeOperatorSquare) {
  auto p = builtin("gl2q_plus_sl2z");
  auto t2 = chi(p, mat2(1, 0, 0, 2), kBudget);
  auto sq = convolve(t2, t2, kBudget);
  HeckeElement want = chi(p, mat2(1, 0, 0, 4), kBudget) +
                      CRational(3) * chi(p, mat2(2, 0, 0, 2), kBudget);
  EXPECT_EQ(sq, want);
  auto t3 = chi(p, mat2(1, 0, 0, 3), kBudget);
  EXPECT_EQ(convolve(t2, t3, kBudget), convolve(t3, t2, kBudget));
  EXPECT_EQ(convolve(t2, t3, kBudget), chi(p, mat2(1, 0, 0, 6), kBudget));
}

TEST(Convolution, BostConnesProducts) {
  auto bc = builtin("bost_connes");
  auto a = chi(bc, axb(2, 0), kBudget);
  auto b = chi(bc, axb(3, 0), kBudget);
  EXPECT_EQ(convolve(a, b, kBudget), chi(bc, axb(6, 0), kBudget));
  auto ai = chi(bc, axb(q("1/2"), 0), kBudget);
  // chi_(1/2) * chi_2 sums over two cosets landing in H.
  EXPECT_EQ(convolve(ai, a, kBudget), CRational(2) * chi(bc, axb(1, 0), kBudget));
}

TEST(Convolution, IdentityAndBilinearity) {
  for (const char* name : {"bost_connes", "gl2q_plus_sl2z", "inversion(5)", "sl2_z_inv_p(2)"}) {
    auto p = builtin(name);
    auto one = chi(p, p->group().identity(), kBudget);
    Rng rng(5);
    for (int t = 0; t < 4; ++t) {
      auto f = random_hecke(p, rng, 2);
      auto g = random_hecke(p, rng, 2);
      auto h = random_hecke(p, rng, 2);
      EXPECT_EQ(convolve(one, f, kBudget), f) << name;
      EXPECT_EQ(convolve(f, one, kBudget), f) << name;
      EXPECT_EQ(convolve(f, g + h, kBudget), convolve(f, g, kBudget) + convolve(f, h, kBudget));
      CRational c(Rational(2), Rational(-1));
      EXPECT_EQ(convolve(c * f, g, kBudget), c * convolve(f, g, kBudget));
    }
  }
}

TEST(Convolution, Associative) {
  for (const char* name : {"bost_connes", "gl2q_plus_sl2z", "sl2_z_inv_p(3)", "d4_center"}) {
    auto p = builtin(name);
    Rng rng(7);
    for (int t = 0; t < 3; ++t) {
      auto f = random_hecke(p, rng, 2);
      auto g = random_hecke(p, rng, 2);
      auto h = random_hecke(p, rng, 2);
      EXPECT_EQ(convolve(convolve(f, g, kBudget), h, kBudget),
                convolve(f, convolve(g, h, kBudget), kBudget)) << name;
    }
  }
}

TEST(Convolution, FreePairDivergesInsteadOfGuessing) {
  auto p = builtin("free_non_hecke");
  EXPECT_THROW(chi(p, word("b"), Budget::of(500)), Diverged);
  auto a = chi(p, word("a"), Budget::of(500));
  EXPECT_EQ(convolve(a, a, Budget::of(500)), a);
}

TEST(Involution, FlatProperties) {
  for (const char* name : {"bost_connes", "gl2q_plus_sl2z", "inversion(6)"}) {
    auto p = builtin(name);
    Rng rng(11);
    for (int t = 0; t < 4; ++t) {
      auto f = random_hecke(p, rng, 2);
      auto g = random_hecke(p, rng, 2);
      EXPECT_EQ(involution_flat(involution_flat(f, kBudget), kBudget), f);
      EXPECT_EQ(involution_flat(convolve(f, g, kBudget), kBudget),
                convolve(involution_flat(g, kBudget), involution_flat(f, kBudget), kBudget))
          << name;
    }
  }
}

TEST(Involution, SharpPreservesNormAndIsInvolutive) {
  for (const auto& name : catalog_names()) {
    if (name == "free_non_hecke") continue;
    auto p = builtin(name);
    Rng rng(13);
    for (int t = 0; t < 4; ++t) {
      auto f = random_hecke(p, rng, 3);
      auto s = involution_sharp(f, kBudget);
      auto ns = l1_norm(s), nf = l1_norm(f);
      if (nf.is_exact()) {
        EXPECT_TRUE(ns.is_exact()) << name;
        EXPECT_EQ(ns.lo, nf.lo) << name;
      } else {
        EXPECT_LE(ns.lo, nf.hi) << name;
        EXPECT_LE(nf.lo, ns.hi) << name;
      }
      EXPECT_EQ(involution_sharp(s, kBudget), f) << name;
    }
  }
}

TEST(Involution, SharpIsFlatWhenUnimodular) {
  for (const char* name : {"gl2q_plus_sl2z", "inversion(5)", "flip"}) {
    auto p = builtin(name);
    Rng rng(17);
    for (int t = 0; t < 4; ++t) {
      auto f = random_hecke(p, rng, 3);
      EXPECT_EQ(involution_sharp(f, kBudget), involution_flat(f, kBudget)) << name;
    }
  }
}

TEST(Involution, BostConnesWeights) {
  auto bc = builtin("bost_connes");
  auto f = chi(bc, axb(2, 0), kBudget);
  EXPECT_EQ(involution_flat(f, kBudget), chi(bc, axb(q("1/2"), 0), kBudget));
  EXPECT_EQ(involution_sharp(f, kBudget), CRational(2) * chi(bc, axb(q("1/2"), 0), kBudget));
  CRational i(Rational(0), Rational(1));
  auto g = i * f;
  EXPECT_EQ(involution_flat(g, kBudget).value_at(axb(q("1/2"), 0)), CRational(0) - i);
}

TEST(Norm, Examples) {
  auto bc = builtin("bost_connes");
  auto f = CRational(3) * chi(bc, axb(1, 0), kBudget) +
           CRational(Rational(0), Rational(4)) * chi(bc, axb(2, 0), kBudget);
  auto n = l1_norm(f);
  EXPECT_TRUE(n.is_exact());
  EXPECT_EQ(n.lo, Rational(11));
  // |1 + i| is irrational: the enclosure is tight but not exact.
  auto g = CRational(Rational(1), Rational(1)) * chi(bc, axb(3, 0), kBudget);
  auto m = l1_norm(g);
  EXPECT_FALSE(m.is_exact());
  EXPECT_LT(m.lo.to_double(), 3 * std::sqrt(2.0));
  EXPECT_GT(m.hi.to_double(), 3 * std::sqrt(2.0));
  EXPECT_LT(m.width().to_double(), 1e-11);
}

TEST(Norm, SubmultiplicativeAndExactOnCharacteristic) {
  for (const char* name : {"bost_connes", "gl2q_plus_sl2z", "d4_center"}) {
    auto p = builtin(name);
    auto xs = samples(*p, 6, 19, 2);
    for (const auto& a : xs)
      for (const auto& b : xs) {
        auto ca = chi(p, a, kBudget), cb = chi(p, b, kBudget);
        EXPECT_EQ(l1_norm(convolve(ca, cb, kBudget)).lo,
                  Rational(static_cast<long>(R(*p, a, kBudget) * R(*p, b, kBudget))));
      }
    Rng rng(23);
    for (int t = 0; t < 6; ++t) {
      auto f = random_hecke(p, rng, 2), g = random_hecke(p, rng, 2);
      EXPECT_LE(l1_norm(convolve(f, g, kBudget)).lo, l1_norm(f).hi * l1_norm(g).hi);
    }
  }
}

TEST(StructureConstants, RowSums) {
  for (const char* name : {"bost_connes", "gl2q_plus_sl2z", "sl2_z_inv_p(2)", "inversion(7)"}) {
    auto p = builtin(name);
    auto xs = samples(*p, 5, 29, 2);
    for (const auto& c : xs)
      for (const auto& d : xs) {
        auto sc = structure_constants(p, c, d, kBudget);
        long sr = 0, sl = 0;
        for (const auto& [k, e] : sc) {
          EXPECT_GT(e.multiplicity, 0);
          sr += e.multiplicity * static_cast<long>(e.coset->r_value());
          sl += e.multiplicity * static_cast<long>(L(*p, e.coset->rep(), kBudget));
        }
        EXPECT_EQ(sr, static_cast<long>(R(*p, c, kBudget) * R(*p, d, kBudget))) << name;
        EXPECT_EQ(sl, static_cast<long>(L(*p, c, kBudget) * L(*p, d, kBudget))) << name;
      }
  }
}

TEST(Verdicts, Unimodularity) {
  auto bc = builtin("bost_connes");
  auto v = is_relatively_unimodular(bc, {axb(1, 1), axb(2, 0)}, kBudget);
  EXPECT_EQ(v.truth, Truth::False);
  EXPECT_EQ(v.witness, "axb 2 0");
  auto gl = builtin("gl2q_plus_sl2z");
  EXPECT_EQ(is_relatively_unimodular(gl, samples(*gl, 10, 1), kBudget).truth,
            Truth::TrueOnSample);
  for (const auto& n : finite_catalog_names())
    EXPECT_EQ(is_relatively_unimodular(builtin(n), {}, kBudget).truth, Truth::True);
  auto fr = builtin("free_non_hecke");
  EXPECT_EQ(is_relatively_unimodular(fr, {word("b")}, Budget::of(500)).truth, Truth::Unknown);
}

TEST(Verdicts, BostConnesNotGelfand) {
  auto bc = builtin("bost_connes");
  auto v = is_gelfand(bc, {axb(2, 0), axb(1, q("1/2")), axb(q("1/2"), 0)}, kBudget);
  EXPECT_EQ(v.truth, Truth::False);
  EXPECT_FALSE(v.witness.empty());
  auto gl = builtin("gl2q_plus_sl2z");
  auto g = is_gelfand(gl, {mat2(1, 0, 0, 2), mat2(1, 0, 0, 3), mat2(2, 0, 0, 2),
                           mat2(1, 0, 0, 4)}, kBudget);
  EXPECT_EQ(g.truth, Truth::TrueOnSample);
}

TEST(Verdicts, GelfandAgainstOracle) {
  for (const auto& p : finite_pairs()) {
    oracle::Finite o(*p);
    auto dcs = o.double_cosets();
    bool commutative = true;
    for (const auto& c : dcs)
      for (const auto& d : dcs)
        for (const auto& e : dcs)
          if (o.structure_constant(*c.begin(), *d.begin(), *e.begin()) !=
              o.structure_constant(*d.begin(), *c.begin(), *e.begin()))
            commutative = false;
    auto v = is_gelfand(p, {}, kBudget);
    EXPECT_EQ(v.truth, commutative ? Truth::True : Truth::False) << p->name();
  }
}

TEST(Verdicts, ImplicationChainOnFinitePairs) {
  for (const auto& p : finite_pairs()) {
    const Budget b = kBudget;
    bool c31 = true;
    for (const auto& d : all_double_cosets(*p, b)) c31 &= check_condition_3_1(p, d->rep(), b);
    auto gel = is_gelfand(p, {}, b);
    auto lc = is_locally_commutative(p, {}, b);
    auto lch = is_locally_commutative_at_identity(p, {}, b);
    if (c31) EXPECT_TRUE(gel.holds()) << p->name();
    if (gel.holds()) EXPECT_TRUE(lc.holds()) << p->name();
    if (lc.holds()) EXPECT_TRUE(lch.holds()) << p->name();
    // On a finite pair both products at H equal R(x) = L(x).
    EXPECT_TRUE(lch.holds()) << p->name();
  }
}

TEST(Verdicts, Condition31Examples) {
  auto inv5 = builtin("inversion(5)");
  for (const auto& d : all_double_cosets(*inv5, kBudget))
    EXPECT_TRUE(check_condition_3_1(inv5, d->rep(), kBudget));
  auto flip = builtin("flip");
  auto elems = *flip->group().elements();
  for (const auto& x : elems) EXPECT_TRUE(check_condition_3_1(flip, x, kBudget)) << x;
  auto bc = builtin("bost_connes");
  EXPECT_FALSE(check_condition_3_1(bc, axb(2, 0), kBudget));
  EXPECT_TRUE(check_condition_3_1(bc, axb(1, q("1/2")), kBudget));
  auto gl = builtin("gl2q_plus_sl2z");
  EXPECT_TRUE(check_condition_3_1(gl, mat2(5, 0, 0, q("1/5")), kBudget));
  // The inverse of diag(1, 5) carries a scalar 1/5 that SL2(Z) cannot absorb.
  EXPECT_FALSE(check_condition_3_1(gl, mat2(1, 0, 0, 5), kBudget));
}

TEST(Verdicts, LocalCommutativityOnBostConnes) {
  auto bc = builtin("bost_connes");
  auto v = is_locally_commutative(bc, {axb(2, 0), axb(3, q("1/2"))}, kBudget);
  auto h = is_locally_commutative_at_identity(bc, {axb(2, 0), axb(3, q("1/2"))}, kBudget);
  EXPECT_EQ(v.truth, Truth::False);
  EXPECT_EQ(h.truth, Truth::False);
}

TEST(SupL, Samples) {
  auto bc = builtin("bost_connes");
  auto r = sup_L_sample(bc, {axb(q("3/7"), 0), axb(q("5/2"), 0), axb(1, 0)}, kBudget);
  EXPECT_EQ(r.max_l, 7u);
  EXPECT_EQ(r.argmax, "axb 3/7 0");
  EXPECT_EQ(r.evaluated, 3u);
  auto d4 = builtin("d4_center");
  auto elems = *d4->group().elements();
  EXPECT_EQ(sup_L_sample(d4, elems, kBudget).max_l, 1u);
}

TEST(LiteralHecke, ParsesTerms) {
  auto bc = builtin("bost_connes");
  auto f = parse_hecke(bc, "3@axb 1 0; 4i@axb 2 0", kBudget);
  EXPECT_EQ(l1_norm(f).lo, Rational(11));
  auto g = parse_hecke(bc, "axb 2 1", kBudget);
  EXPECT_EQ(g, chi(bc, axb(2, 0), kBudget));
  EXPECT_THROW(parse_hecke(bc, "1@mat2 1 0 0 1", kBudget), Error);
}
