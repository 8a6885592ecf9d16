#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "hecke/random.hpp"
#include "hecke/regrep.hpp"
#include "oracle.hpp"

using namespace hecke;

namespace {

Rational q(const char* s) { return Rational::parse(s); }
const Budget kBudget{};

HeckeElement random_hecke(const PairPtr& p, Rng& rng, std::size_t terms, std::size_t len = 2) {
  HeckeElement f(p);
  for (std::size_t i = 0; i < terms; ++i) {
    CRational c(Rational(rng.between(-3, 3)), Rational(rng.between(-2, 2)));
    f += c * chi(p, random_element(*p, rng, len), kBudget);
  }
  return f;
}

double svd_norm(const RepMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& z = m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      a(i, j) = {z.re.to_double(), z.im.to_double()};
    }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

// Right cosets H w for all words of length <= r, found by listing every word
// and deduplicating with coset_eq only. Returns (representative, length).
std::vector<std::pair<GroupElement, std::size_t>> word_ball_oracle(
    const Pair& p, const std::vector<GroupElement>& gens, std::size_t r) {
  std::vector<std::pair<GroupElement, std::size_t>> reps;
  std::vector<GroupElement> layer{p.group().identity()};
  auto note = [&](const GroupElement& x, std::size_t len) {
    for (const auto& [y, l] : reps)
      if (coset_eq(p, x, y)) return;
    reps.emplace_back(x, len);
  };
  note(layer[0], 0);
  for (std::size_t len = 1; len <= r; ++len) {
    std::vector<GroupElement> next;
    for (const auto& w : layer)
      for (const auto& s : gens) {
        next.push_back(p.group().mul(w, s));
        note(next.back(), len);
      }
    layer = std::move(next);
  }
  return reps;
}

}  // namespace

TEST(Act, BostConnesIndicator) {
  auto bc = builtin("bost_connes");
  auto f = chi(bc, axb(2, 0), kBudget);
  auto out = act(f, L2Vector::indicator(*bc, axb(1, 0)));
  EXPECT_EQ(out.support_size(), 2u);
  EXPECT_EQ(out.value(coset_key(*bc, axb(2, 0))), CRational(1));
  EXPECT_EQ(out.value(coset_key(*bc, axb(2, 1))), CRational(1));
  EXPECT_EQ(out.norm2_squared(), Rational(2));
}

TEST(Act, FiniteAgainstOracle) {
  for (const auto& name : finite_catalog_names()) {
    auto p = builtin(name);
    oracle::Finite o(*p);
    Rng rng(41);
    for (int t = 0; t < 4; ++t) {
      auto f = random_hecke(p, rng, 3);
      auto xi = random_vector(*p, rng.next());
      auto fv = o.as_function(f);
      std::vector<CRational> xv(o.n());
      for (std::size_t y = 0; y < o.n(); ++y) xv[y] = xi.value(coset_key(*p, o.el(y)));
      auto got = act(f, xi);
      for (std::size_t x = 0; x < o.n(); ++x) {
        CRational s;
        for (std::size_t y = 0; y < o.n(); ++y) s += fv[o.mul[x][o.inv[y]]] * xv[y];
        s = s * CRational(Rational(1, static_cast<long>(o.hs.size())));
        EXPECT_EQ(got.value(coset_key(*p, o.el(x))), s) << name;
      }
    }
  }
}

TEST(Act, IsARepresentation) {
  for (const char* name : {"bost_connes", "gl2q_plus_sl2z", "sl2_z_inv_p(2)", "inversion(6)"}) {
    auto p = builtin(name);
    Rng rng(43);
    for (int t = 0; t < 4; ++t) {
      auto f = random_hecke(p, rng, 2), g = random_hecke(p, rng, 2);
      auto xi = random_vector(*p, rng.next(), 4);
      EXPECT_EQ(act(convolve(f, g, kBudget), xi), act(f, act(g, xi))) << name;
      EXPECT_EQ(act(f + g, xi), [&] {
        auto a = act(f, xi);
        const auto b = act(g, xi);
        for (const auto& [k, e] : b.entries()) a.add(k, e.rep, e.value);
        return a;
      }()) << name;
    }
  }
}

TEST(Ball, BostConnesRadii) {
  auto bc = builtin("bost_connes");
  auto b2 = build_ball(*bc, bc->samplers(), 2, kBudget);
  auto b3 = build_ball(*bc, bc->samplers(), 3, kBudget);
  EXPECT_FALSE(b2.find(coset_key(*bc, axb(1, q("1/2")))));
  ASSERT_TRUE(b3.find(coset_key(*bc, axb(1, q("1/2")))));
  EXPECT_EQ(b3.entries()[*b3.find(coset_key(*bc, axb(1, q("1/2"))))].distance, 3u);
  EXPECT_EQ(b2.entries()[0].distance, 0u);
}

TEST(Ball, AgainstWordEnumeration) {
  for (const char* name : {"bost_connes", "gl2q_plus_sl2z", "sl2_z_inv_p(3)", "free_non_hecke",
                           "inversion(5)"}) {
    auto p = builtin(name);
    std::vector<GroupElement> gens;
    for (const auto& s : p->samplers()) {
      gens.push_back(s);
      gens.push_back(p->group().inv(s));
    }
    for (std::size_t r = 0; r <= 2; ++r) {
      auto ball = build_ball(*p, gens, r, kBudget);
      auto want = word_ball_oracle(*p, gens, r);
      ASSERT_EQ(ball.size(), want.size()) << name << " r=" << r;
      for (const auto& [x, len] : want) {
        auto pos = ball.find(coset_key(*p, x));
        ASSERT_TRUE(pos) << name;
        EXPECT_EQ(ball.entries()[*pos].distance, len) << name;
      }
    }
  }
}

TEST(Ball, FullBallAndBudget) {
  for (const auto& name : finite_catalog_names()) {
    auto p = builtin(name);
    auto ball = full_ball(*p, kBudget);
    EXPECT_EQ(ball.size(), p->group().elements()->size() / p->subgroup().elements->size());
  }
  auto bc = builtin("bost_connes");
  EXPECT_THROW(build_ball(*bc, bc->samplers(), 6, Budget{50, 3200}), BudgetExceeded);
  EXPECT_THROW(full_ball(*bc, kBudget), NotFinite);
}

TEST(RepMatrix, FlipExample) {
  auto p = builtin("flip");
  auto ball = full_ball(*p, kBudget);
  ASSERT_EQ(ball.size(), 4u);
  auto m = lambda_matrix(chi(p, semi({1, 0}, 1), kBudget), ball);
  for (std::size_t i = 0; i < 4; ++i) {
    CRational row, col;
    for (std::size_t j = 0; j < 4; ++j) {
      row += m.at(i, j);
      col += m.at(j, i);
      EXPECT_TRUE(m.at(i, j) == CRational(0) || m.at(i, j) == CRational(1));
    }
    EXPECT_EQ(row, CRational(2));
    EXPECT_EQ(col, CRational(2));
  }
}

TEST(RepMatrix, ColumnsAreActionOnIndicators) {
  auto bc = builtin("bost_connes");
  auto ball = build_ball(*bc, bc->samplers(), 3, kBudget);
  auto f = chi(bc, axb(2, 0), kBudget) + CRational(-1) * chi(bc, axb(1, q("1/2")), kBudget);
  auto m = lambda_matrix(f, ball);
  for (std::size_t j = 0; j < ball.size(); j += 7) {
    auto col = act(f, L2Vector::indicator(*bc, ball.entries()[j].rep));
    for (std::size_t i = 0; i < ball.size(); ++i)
      EXPECT_EQ(m.at(i, j), col.value(ball.entries()[i].key));
  }
}

TEST(RepMatrix, MultiplicativeAndInjectiveOnFinitePairs) {
  for (const auto& name : finite_catalog_names()) {
    auto p = builtin(name);
    auto ball = full_ball(*p, kBudget);
    Rng rng(47);
    for (int t = 0; t < 3; ++t) {
      auto f = random_hecke(p, rng, 3), g = random_hecke(p, rng, 3);
      EXPECT_EQ(lambda_matrix(convolve(f, g, kBudget), ball),
                lambda_matrix(f, ball) * lambda_matrix(g, ball)) << name;
      EXPECT_EQ(f.is_zero(), lambda_matrix(f, ball).is_zero()) << name;
    }
  }
}

TEST(L1Bound, BostConnesCounterexample) {
  auto bc = builtin("bost_connes");
  auto f = chi(bc, axb(q("1/2"), 0), kBudget);
  L2Vector xi;
  xi.add(coset_key(*bc, axb(2, 0)), axb(2, 0), CRational(1));
  xi.add(coset_key(*bc, axb(2, 1)), axb(2, 1), CRational(1));
  EXPECT_EQ(l1_norm(f).lo, Rational(1));
  EXPECT_EQ(act(f, xi).norm2_squared(), Rational(4));
  EXPECT_EQ(xi.norm2_squared(), Rational(2));
  EXPECT_EQ(compare_l1_bound(f, xi), 1);
}

TEST(L1Bound, HoldsOnUnimodularPairs) {
  for (const char* name : {"gl2q_plus_sl2z", "sl2_z_inv_p(2)", "inversion(5)", "flip"}) {
    auto p = builtin(name);
    Rng rng(53);
    for (int t = 0; t < 3; ++t) {
      auto rep = check_l1_bound(random_hecke(p, rng, 3), 40, rng.next());
      EXPECT_EQ(rep.violations, 0u) << name << " " << rep.first_violation;
      EXPECT_LE(rep.max_ratio, 1.0 + 1e-12);
    }
  }
}

TEST(L1Bound, DeterministicInSeed) {
  auto bc = builtin("bost_connes");
  auto f = chi(bc, axb(q("1/3"), 0), kBudget);
  auto a = check_l1_bound(f, 50, 9), b = check_l1_bound(f, 50, 9);
  EXPECT_EQ(a.violations, b.violations);
  EXPECT_EQ(a.first_violation, b.first_violation);
  EXPECT_EQ(a.max_ratio, b.max_ratio);
  EXPECT_EQ(random_vector(*bc, 5), random_vector(*bc, 5));
}

TEST(Adjoint, FullModeOnFinitePairs) {
  for (const auto& name : finite_catalog_names()) {
    auto p = builtin(name);
    auto ball = full_ball(*p, kBudget);
    Rng rng(59);
    auto f = random_hecke(p, rng, 3);
    if (f.is_zero()) continue;
    auto r = adjoint_check(f, ball, AdjointMode::Full, kBudget);
    EXPECT_TRUE(r.flat_is_adjoint) << name;
    EXPECT_TRUE(r.sharp_is_adjoint) << name;
    EXPECT_TRUE(r.delta_trivial);
    EXPECT_TRUE(r.consistent());
    EXPECT_EQ(r.compared_entries, ball.size() * ball.size());
  }
}

TEST(Adjoint, BostConnesInterior) {
  auto bc = builtin("bost_connes");
  auto ball = build_ball(*bc, bc->samplers(), 3, kBudget);
  auto r = adjoint_check(chi(bc, axb(2, 0), kBudget), ball, AdjointMode::Interior, kBudget);
  EXPECT_GT(r.interior_size, 0u);
  EXPECT_TRUE(r.flat_is_adjoint);
  EXPECT_FALSE(r.sharp_is_adjoint);
  EXPECT_FALSE(r.delta_trivial);
  ASSERT_TRUE(r.sharp_over_flat);
  EXPECT_EQ(*r.sharp_over_flat, Rational(2));
  EXPECT_TRUE(r.consistent());
  EXPECT_THROW(adjoint_check(chi(bc, axb(2, 0), kBudget), build_ball(*bc, bc->samplers(), 0, kBudget),
                             AdjointMode::Interior, kBudget),
               BallTooSmall);
  EXPECT_THROW(adjoint_check(chi(bc, axb(2, 0), kBudget), ball, AdjointMode::Full, kBudget),
               NotFinite);
}

TEST(Adjoint, GL2Interior) {
  auto p = builtin("gl2q_plus_sl2z");
  auto ball = build_ball(*p, p->samplers(), 2, kBudget);
  auto r = adjoint_check(chi(p, mat2(1, 0, 0, 2), kBudget), ball, AdjointMode::Interior, kBudget);
  EXPECT_TRUE(r.flat_is_adjoint);
  EXPECT_TRUE(r.sharp_is_adjoint);
  EXPECT_TRUE(r.consistent());
}

TEST(NormEstimate, MatchesSvd) {
  for (const char* name : {"flip", "inversion(7)", "bost_connes", "gl2q_plus_sl2z"}) {
    auto p = builtin(name);
    auto ball = p->is_finite() ? full_ball(*p, kBudget) : build_ball(*p, p->samplers(), 2, kBudget);
    Rng rng(61);
    for (int t = 0; t < 3; ++t) {
      auto f = random_hecke(p, rng, 2);
      double want = svd_norm(lambda_matrix(f, ball));
      EXPECT_NEAR(operator_norm_estimate(f, ball), want, 1e-6 * std::max(1.0, want)) << name;
    }
  }
}

TEST(NormEstimate, MonotoneInRadiusAndBoundedOnUnimodular) {
  auto p = builtin("gl2q_plus_sl2z");
  auto f = chi(p, mat2(1, 0, 0, 2), kBudget);
  double prev = 0.0;
  for (std::size_t r = 0; r <= 3; ++r) {
    double est = svd_norm(lambda_matrix(f, build_ball(*p, p->samplers(), r, kBudget)));
    EXPECT_GE(est, prev - 1e-9);
    EXPECT_LE(est, l1_norm(f).hi.to_double() + 1e-9);
    prev = est;
  }
}

TEST(NormEstimate, AllOnesInvariantSubspace) {
  // All-ones is an eigenvector of this circulant; the top one is (1,-1,-1,1).
  auto p = builtin("flip");
  auto ball = full_ball(*p, kBudget);
  auto f = CRational(Rational(-1), Rational(-1)) * chi(p, p->group().identity(), kBudget) +
           CRational(Rational(3), Rational(1)) * chi(p, semi({1, 0}, 1), kBudget);
  EXPECT_NEAR(operator_norm_estimate(f, ball), std::sqrt(58.0), 1e-7);
}
