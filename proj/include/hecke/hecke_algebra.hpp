#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "hecke/cosets.hpp"

namespace hecke {

struct HeckeTerm {
  CRational coeff;
  DecompPtr coset;
};

/// Finitely supported function on double cosets, an element of H(G,H).
/// Never stores a zero coefficient.
class HeckeElement {
 public:
  explicit HeckeElement(PairPtr pair);

  const PairPtr& pair() const { return pair_; }
  const std::map<DoubleCosetKey, HeckeTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  CRational coefficient(const DoubleCosetKey& k) const;
  /// f(HxH). Only needs the coset key of x, never a decomposition.
  CRational value_at(const GroupElement& x) const;
  /// Value on the right coset with this key (bi-invariant extension of f).
  CRational value_on_coset(const CosetKey& k) const;

  /// Adds c * chi_D.
  void add(const DecompPtr& coset, const CRational& c);

  HeckeElement& operator+=(const HeckeElement& o);
  HeckeElement& operator-=(const HeckeElement& o);
  HeckeElement& operator*=(const CRational& c);
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  friend HeckeElement operator*(const CRational& c, HeckeElement f) { return f *= c; }

  /// Same pair and identical coefficients.
  friend bool operator==(const HeckeElement& a, const HeckeElement& b);

  std::string str() const;

 private:
  void require_same_pair(const HeckeElement& o) const;

  PairPtr pair_;
  std::map<DoubleCosetKey, HeckeTerm> terms_;
  std::unordered_map<std::string, DoubleCosetKey> coset_index_;
};

/// Characteristic function of HgH.
HeckeElement chi(const PairPtr& pair, const GroupElement& g, const Budget& budget);

/// f1 * f2 (HxH) = sum over Hy of f1(H x y^-1 H) f2(HyH). Candidate double
/// cosets come from products of stored right-coset representatives.
HeckeElement convolve(const HeckeElement& f1, const HeckeElement& f2, const Budget& budget);

/// (f1 * f2)(HxH) without enumerating the whole product support.
CRational convolve_at(const HeckeElement& f1, const HeckeElement& f2, const GroupElement& x);

/// f^*(HxH) = conj(f(Hx^-1H)).
HeckeElement involution_flat(const HeckeElement& f, const Budget& budget);

/// Delta-weighted involution: the coefficient of conj(f(HxH)) on Hx^-1H is
/// Delta(x^-1) = R(x) / L(x). Preserves the l1 norm.
HeckeElement involution_sharp(const HeckeElement& f, const Budget& budget);

/// sum_D |f(D)| R(D); exact unless some coefficient has irrational modulus,
/// then an enclosure of width <= 2^-40 per term.
RationalInterval l1_norm(const HeckeElement& f);

struct StructureConstant {
  DecompPtr coset;
  long multiplicity = 0;
};

/// chi_C * chi_D = sum_E m(C, D; E) chi_E.
std::map<DoubleCosetKey, StructureConstant> structure_constants(const PairPtr& pair,
                                                                const GroupElement& c,
                                                                const GroupElement& d,
                                                                const Budget& budget);

enum class Truth { True, TrueOnSample, False, Unknown };
const char* truth_name(Truth t);

struct Verdict {
  Truth truth = Truth::Unknown;
  std::string witness;
  std::string detail;
  std::size_t checked = 0;
  std::size_t skipped = 0;

  /// True for True and TrueOnSample.
  bool holds() const { return truth == Truth::True || truth == Truth::TrueOnSample; }
};

/// False with a witness when some Delta(g) != 1. On finite pairs every double
/// coset is checked. `elements_generate` declares that the test elements
/// generate G, which lifts a sample-level pass to True.
Verdict is_relatively_unimodular(const PairPtr& pair, const std::vector<GroupElement>& elements,
                                 const Budget& budget, bool elements_generate = false);

/// chi_g * chi_{g^-1} == chi_{g^-1} * chi_g for every test element, or for
/// every double coset on finite pairs.
Verdict is_locally_commutative(const PairPtr& pair, const std::vector<GroupElement>& elements,
                               const Budget& budget);

/// The weaker condition that the two products agree at H.
Verdict is_locally_commutative_at_identity(const PairPtr& pair,
                                           const std::vector<GroupElement>& elements,
                                           const Budget& budget);

/// HxH = Hx^-1H.
bool check_condition_3_1(const PairPtr& pair, const GroupElement& x, const Budget& budget);

/// Pairwise commutation of characteristic functions: all double cosets on
/// finite pairs, the double cosets of `sample` otherwise.
Verdict is_gelfand(const PairPtr& pair, const std::vector<GroupElement>& sample,
                   const Budget& budget);

struct SupLReport {
  std::size_t max_l = 0;
  std::string argmax;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
};

SupLReport sup_L_sample(const PairPtr& pair, const std::vector<GroupElement>& sample,
                        const Budget& budget);

}  // namespace hecke
