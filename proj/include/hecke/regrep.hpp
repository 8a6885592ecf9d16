#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hecke/hecke_algebra.hpp"

namespace hecke {

struct L2Entry {
  GroupElement rep;
  CRational value;
};

/// Finitely supported function on H\G with counting measure.
class L2Vector {
 public:
  /// Indicator of the right coset Hx.
  static L2Vector indicator(const Pair& pair, const GroupElement& x);

  void add(const CosetKey& key, const GroupElement& rep, const CRational& value);
  CRational value(const CosetKey& key) const;
  const std::map<CosetKey, L2Entry>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  Rational norm2_squared() const;

  /// Same keys and values; representatives may differ.
  friend bool operator==(const L2Vector& a, const L2Vector& b);

 private:
  std::map<CosetKey, L2Entry> entries_;
};

/// lambda(f) xi = f * xi. Exact on the full support of the result.
L2Vector act(const HeckeElement& f, const L2Vector& xi);

/// Thrown by build_ball when the ball outgrows its budget.
class BudgetExceeded : public Diverged {
 public:
  using Diverged::Diverged;
};

struct BallEntry {
  CosetKey key;
  GroupElement rep;
  std::size_t distance = 0;
};

/// Right cosets H w for words w of length <= radius, in BFS order.
class CosetBall {
 public:
  CosetBall(std::vector<BallEntry> entries, std::vector<GroupElement> generators,
            std::size_t radius);

  const std::vector<BallEntry>& entries() const { return entries_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  std::size_t radius() const { return radius_; }
  std::size_t size() const { return entries_.size(); }
  std::optional<std::size_t> find(const CosetKey& k) const;

 private:
  std::vector<BallEntry> entries_;
  std::vector<GroupElement> generators_;
  std::size_t radius_;
  std::unordered_map<std::string, std::size_t> index_;
};

CosetBall build_ball(const Pair& pair, const std::vector<GroupElement>& generators,
                     std::size_t radius, const Budget& budget);

/// Every right coset of a finite pair, as a ball over the group's generators.
CosetBall full_ball(const Pair& pair, const Budget& budget);

/// Dense square matrix of complex rationals.
class RepMatrix {
 public:
  explicit RepMatrix(std::size_t n) : n_(n), a_(n * n) {}

  std::size_t size() const { return n_; }
  const CRational& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  CRational& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  RepMatrix adjoint() const;
  bool is_zero() const;
  friend RepMatrix operator*(const RepMatrix& x, const RepMatrix& y);
  friend bool operator==(const RepMatrix& x, const RepMatrix& y);

 private:
  std::size_t n_;
  std::vector<CRational> a_;
};

/// entry(Hx, Hy) = f(H x y^-1 H) on the basis of the ball.
RepMatrix lambda_matrix(const HeckeElement& f, const CosetBall& ball);

struct L1BoundTrial {
  Rational lhs;        // ||f * xi||^2
  Rational xi_norm2;   // ||xi||^2
};

struct L1BoundReport {
  std::size_t trials = 0;
  std::size_t violations = 0;      // lhs > hi(||f||_1)^2 ||xi||^2
  std::size_t indeterminate = 0;   // lo^2 ||xi||^2 < lhs <= hi^2 ||xi||^2
  std::size_t equalities = 0;
  double max_ratio = 0.0;          // max ||f*xi||^2 / (||f||_1^2 ||xi||^2)
  std::string first_violation;
};

/// Compares ||f * xi||_2^2 against ||f||_1^2 ||xi||_2^2 for one vector.
/// Returns +1 for a violation, 0 for indeterminate, -1 when the bound holds.
int compare_l1_bound(const HeckeElement& f, const L2Vector& xi, bool* equality = nullptr);

/// Random finitely supported xi (at most 8 cosets, words of length <= 3 in
/// the pair's samplers), deterministic in the seed.
L2Vector random_vector(const Pair& pair, std::uint64_t seed, std::size_t max_support = 8);

L1BoundReport check_l1_bound(const HeckeElement& f, std::size_t trials, std::uint64_t seed);

enum class AdjointMode { Full, Interior };

struct AdjointReport {
  AdjointMode mode = AdjointMode::Full;
  std::size_t basis_size = 0;
  std::size_t interior_size = 0;
  std::size_t compared_entries = 0;
  bool flat_is_adjoint = false;   // lambda(f^*) == lambda(f)^dagger
  bool sharp_is_adjoint = false;  // lambda(f^sharp) == lambda(f)^dagger
  bool delta_trivial = false;     // Delta == 1 on the support of f
  std::optional<Rational> sharp_over_flat;  // ratio on the first differing entry

  /// flat always matches; sharp matches exactly when Delta is trivial.
  bool consistent() const { return flat_is_adjoint && (sharp_is_adjoint == delta_trivial); }
};

/// Full mode needs a finite pair and uses every coset; interior mode only
/// compares entries deep enough inside the ball. Throws BallTooSmall.
AdjointReport adjoint_check(const HeckeElement& f, const CosetBall& ball, AdjointMode mode,
                            const Budget& budget);

/// Largest singular value of the truncated lambda(f) by power iteration on
/// lambda(f)^dagger lambda(f), from the all-ones vector and one fixed
/// asymmetric vector; the larger result wins.
double operator_norm_estimate(const HeckeElement& f, const CosetBall& ball,
                              std::size_t iterations = 10000);

}  // namespace hecke
