#include "hecke/hecke_algebra.hpp"

#include <sstream>

namespace hecke {

// ---------------------------------------------------------------------------
// HeckeElement

HeckeElement::HeckeElement(PairPtr pair) : pair_(std::move(pair)) {
  if (!pair_) throw BadParameter("HeckeElement: null pair");
}

CRational HeckeElement::coefficient(const DoubleCosetKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? CRational{} : it->second.coeff;
}

CRational HeckeElement::value_on_coset(const CosetKey& k) const {
  auto it = coset_index_.find(k.bytes);
  if (it == coset_index_.end()) return {};
  return terms_.at(it->second).coeff;
}

CRational HeckeElement::value_at(const GroupElement& x) const {
  if (terms_.empty()) return {};
  return value_on_coset(coset_key(*pair_, x));
}

void HeckeElement::add(const DecompPtr& coset, const CRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(coset->key());
  if (it == terms_.end()) {
    terms_.emplace(coset->key(), HeckeTerm{c, coset});
    for (const auto& k : coset->keys()) coset_index_.emplace(k.bytes, coset->key());
    return;
  }
  it->second.coeff += c;
  if (it->second.coeff.is_zero()) {
    for (const auto& k : it->second.coset->keys()) coset_index_.erase(k.bytes);
    terms_.erase(it);
  }
}

void HeckeElement::require_same_pair(const HeckeElement& o) const {
  if (pair_ != o.pair_) throw KindMismatch("Hecke elements of different pairs");
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& o) {
  require_same_pair(o);
  for (const auto& [k, t] : o.terms_) add(t.coset, t.coeff);
  return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& o) {
  require_same_pair(o);
  for (const auto& [k, t] : o.terms_) add(t.coset, -t.coeff);
  return *this;
}

HeckeElement& HeckeElement::operator*=(const CRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    coset_index_.clear();
    return *this;
  }
  for (auto& [k, t] : terms_) t.coeff *= c;
  return *this;
}

bool operator==(const HeckeElement& a, const HeckeElement& b) {
  if (a.pair_ != b.pair_ || a.terms_.size() != b.terms_.size()) return false;
  for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
    if (ia->first != ib->first || !(ia->second.coeff == ib->second.coeff)) return false;
  return true;
}

std::string HeckeElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, t] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff << ")*chi[" << t.coset->rep().literal() << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Algebra operations

HeckeElement chi(const PairPtr& pair, const GroupElement& g, const Budget& budget) {
  HeckeElement f(pair);
  f.add(double_coset_decompose(*pair, g, budget), CRational(1));
  return f;
}

HeckeElement convolve(const HeckeElement& f1, const HeckeElement& f2, const Budget& budget) {
  if (f1.pair() != f2.pair()) throw KindMismatch("convolve: elements of different pairs");
  const Pair& pair = *f1.pair();
  const Group& g = pair.group();
  HeckeElement out(f1.pair());
  if (f1.is_zero() || f2.is_zero()) return out;

  // HC H . HD H is the union of the right cosets H c_i y_j.
  std::map<DoubleCosetKey, DecompPtr> candidates;
  for (const auto& [k1, t1] : f1.terms())
    for (const auto& c : t1.coset->right_coset_reps())
      for (const auto& [k2, t2] : f2.terms())
        for (const auto& y : t2.coset->right_coset_reps()) {
          auto d = double_coset_decompose(pair, g.mul(c, y), budget);
          candidates.emplace(d->key(), d);
        }

  for (const auto& [key, e] : candidates) {
    CRational value;
    for (const auto& [k2, t2] : f2.terms()) {
      CRational inner;
      for (const auto& y : t2.coset->right_coset_reps())
        inner += f1.value_at(g.mul(e->rep(), g.inv(y)));
      value += inner * t2.coeff;
    }
    out.add(e, value);
  }
  return out;
}

CRational convolve_at(const HeckeElement& f1, const HeckeElement& f2, const GroupElement& x) {
  if (f1.pair() != f2.pair()) throw KindMismatch("convolve_at: elements of different pairs");
  const Group& g = f1.pair()->group();
  CRational value;
  for (const auto& [k2, t2] : f2.terms()) {
    CRational inner;
    for (const auto& y : t2.coset->right_coset_reps()) inner += f1.value_at(g.mul(x, g.inv(y)));
    value += inner * t2.coeff;
  }
  return value;
}

HeckeElement involution_flat(const HeckeElement& f, const Budget& budget) {
  const Pair& pair = *f.pair();
  HeckeElement out(f.pair());
  for (const auto& [k, t] : f.terms()) {
    auto inverse = double_coset_decompose(pair, pair.group().inv(t.coset->rep()), budget);
    out.add(inverse, t.coeff.conj());
  }
  return out;
}

HeckeElement involution_sharp(const HeckeElement& f, const Budget& budget) {
  const Pair& pair = *f.pair();
  HeckeElement out(f.pair());
  for (const auto& [k, t] : f.terms()) {
    auto inverse = double_coset_decompose(pair, pair.group().inv(t.coset->rep()), budget);
    // Delta at the new support point x = g^-1 is L(g^-1)/R(g^-1) = R(g)/L(g).
    Rational weight(static_cast<long>(t.coset->r_value()), static_cast<long>(inverse->r_value()));
    out.add(inverse, t.coeff.conj() * CRational(weight));
  }
  return out;
}

RationalInterval l1_norm(const HeckeElement& f) {
  RationalInterval total = RationalInterval::exact(Rational(0));
  for (const auto& [k, t] : f.terms())
    total += t.coeff.abs().scaled(Rational(static_cast<long>(t.coset->r_value())));
  return total;
}

std::map<DoubleCosetKey, StructureConstant> structure_constants(const PairPtr& pair,
                                                                const GroupElement& c,
                                                                const GroupElement& d,
                                                                const Budget& budget) {
  auto product = convolve(chi(pair, c, budget), chi(pair, d, budget), budget);
  std::map<DoubleCosetKey, StructureConstant> out;
  for (const auto& [k, t] : product.terms()) {
    if (!t.coeff.is_real() || !t.coeff.re.is_integer() || t.coeff.re.sign() < 0)
      throw Error("structure constant is not a nonnegative integer: " + t.coeff.str());
    out.emplace(k, StructureConstant{t.coset, t.coeff.re.num().get_si()});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Predicates

const char* truth_name(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::TrueOnSample: return "true-on-sample";
    case Truth::False: return "false";
    case Truth::Unknown: return "unknown";
  }
  return "?";
}

namespace {

std::vector<GroupElement> test_points(const PairPtr& pair, const std::vector<GroupElement>& elems,
                                      const Budget& budget, bool& exhaustive) {
  exhaustive = pair->is_finite();
  if (!exhaustive) return elems;
  std::vector<GroupElement> reps;
  for (const auto& d : all_double_cosets(*pair, budget)) reps.push_back(d->rep());
  return reps;
}

}  // namespace

Verdict is_relatively_unimodular(const PairPtr& pair, const std::vector<GroupElement>& elements,
                                 const Budget& budget, bool elements_generate) {
  bool exhaustive = false;
  auto points = test_points(pair, elements, budget, exhaustive);
  if (exhaustive) points.insert(points.end(), elements.begin(), elements.end());
  Verdict v;
  for (const auto& x : points) {
    try {
      Rational d = delta(*pair, x, budget);
      ++v.checked;
      if (d != Rational(1)) {
        v.truth = Truth::False;
        v.witness = x.literal();
        v.detail = "delta=" + d.str();
        return v;
      }
    } catch (const Diverged&) {
      ++v.skipped;
    }
  }
  if (v.skipped > 0)
    v.truth = Truth::Unknown;
  else if (exhaustive || elements_generate)
    v.truth = Truth::True;
  else
    v.truth = Truth::TrueOnSample;
  return v;
}

Verdict is_locally_commutative(const PairPtr& pair, const std::vector<GroupElement>& elements,
                               const Budget& budget) {
  bool exhaustive = false;
  auto points = test_points(pair, elements, budget, exhaustive);
  Verdict v;
  for (const auto& x : points) {
    try {
      auto a = chi(pair, x, budget);
      auto b = chi(pair, pair->group().inv(x), budget);
      ++v.checked;
      if (!(convolve(a, b, budget) == convolve(b, a, budget))) {
        v.truth = Truth::False;
        v.witness = x.literal();
        return v;
      }
    } catch (const Diverged&) {
      ++v.skipped;
    }
  }
  v.truth = v.skipped > 0 ? Truth::Unknown : (exhaustive ? Truth::True : Truth::TrueOnSample);
  return v;
}

Verdict is_locally_commutative_at_identity(const PairPtr& pair,
                                           const std::vector<GroupElement>& elements,
                                           const Budget& budget) {
  bool exhaustive = false;
  auto points = test_points(pair, elements, budget, exhaustive);
  const auto e = pair->group().identity();
  Verdict v;
  for (const auto& x : points) {
    try {
      auto a = chi(pair, x, budget);
      auto b = chi(pair, pair->group().inv(x), budget);
      ++v.checked;
      if (!(convolve_at(a, b, e) == convolve_at(b, a, e))) {
        v.truth = Truth::False;
        v.witness = x.literal();
        return v;
      }
    } catch (const Diverged&) {
      ++v.skipped;
    }
  }
  v.truth = v.skipped > 0 ? Truth::Unknown : (exhaustive ? Truth::True : Truth::TrueOnSample);
  return v;
}

bool check_condition_3_1(const PairPtr& pair, const GroupElement& x, const Budget& budget) {
  auto d = double_coset_decompose(*pair, x, budget);
  return d->contains(coset_key(*pair, pair->group().inv(x)));
}

Verdict is_gelfand(const PairPtr& pair, const std::vector<GroupElement>& sample,
                   const Budget& budget) {
  bool exhaustive = false;
  auto points = test_points(pair, sample, budget, exhaustive);
  std::vector<HeckeElement> chis;
  std::vector<GroupElement> reps;
  Verdict v;
  std::map<DoubleCosetKey, bool> seen;
  for (const auto& x : points) {
    try {
      auto c = chi(pair, x, budget);
      if (!seen.emplace(c.terms().begin()->first, true).second) continue;
      chis.push_back(std::move(c));
      reps.push_back(x);
    } catch (const Diverged&) {
      ++v.skipped;
    }
  }
  for (std::size_t i = 0; i < chis.size(); ++i) {
    for (std::size_t j = i + 1; j < chis.size(); ++j) {
      try {
        ++v.checked;
        if (!(convolve(chis[i], chis[j], budget) == convolve(chis[j], chis[i], budget))) {
          v.truth = Truth::False;
          v.witness = reps[i].literal() + " ; " + reps[j].literal();
          return v;
        }
      } catch (const Diverged&) {
        ++v.skipped;
      }
    }
  }
  if (v.skipped > 0)
    v.truth = Truth::Unknown;
  else
    v.truth = exhaustive ? Truth::True : Truth::TrueOnSample;
  return v;
}

SupLReport sup_L_sample(const PairPtr& pair, const std::vector<GroupElement>& sample,
                        const Budget& budget) {
  SupLReport r;
  for (const auto& x : sample) {
    try {
      std::size_t l = L(*pair, x, budget);
      ++r.evaluated;
      if (l > r.max_l) {
        r.max_l = l;
        r.argmax = x.literal();
      }
    } catch (const Diverged&) {
      ++r.skipped;
    }
  }
  return r;
}

}  // namespace hecke
