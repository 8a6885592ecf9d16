#include "hecke/group.hpp"

#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace hecke {

// ---------------------------------------------------------------------------
// Group

void Group::require_kind(const GroupElement& a) const {
  if (a.kind() != kind())
    throw KindMismatch(std::string("element of kind ") + kind_name(a.kind()) +
                       " used in group of kind " + kind_name(kind()));
}

GroupElement Group::mul(const GroupElement& a, const GroupElement& b) const {
  require_kind(a);
  require_kind(b);
  return mul_impl(a, b);
}

GroupElement Group::inv(const GroupElement& a) const {
  require_kind(a);
  return inv_impl(a);
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::vector<std::uint32_t>> table, std::string description,
                         std::vector<std::string> labels)
    : table_(std::move(table)), description_(std::move(description)), labels_(std::move(labels)) {
  const auto n = static_cast<std::uint32_t>(table_.size());
  if (n == 0) throw BadParameter("FiniteGroup: empty table");
  for (const auto& row : table_) {
    if (row.size() != n) throw BadParameter("FiniteGroup: table is not square");
    for (auto v : row)
      if (v >= n) throw BadParameter("FiniteGroup: table entry out of range");
  }
  bool found = false;
  for (std::uint32_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::uint32_t x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw BadParameter("FiniteGroup: no identity element");
  inverse_.assign(n, n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      if (table_[x][y] == identity_) inverse_[x] = y;
  for (auto v : inverse_)
    if (v == n) throw BadParameter("FiniteGroup: element without inverse");
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw BadParameter("FiniteGroup: table is not associative");
}

std::shared_ptr<FiniteGroup> FiniteGroup::from_permutations(
    const std::vector<std::vector<int>>& generators, std::string description) {
  if (generators.empty()) throw BadParameter("from_permutations: no generators");
  const std::size_t degree = generators.front().size();
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  auto compose = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) c[x] = b[a[x]];
    return c;
  };
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, std::uint32_t> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : generators) {
      if (g.size() != degree) throw BadParameter("from_permutations: mixed degrees");
      auto p = compose(elems[i], g);
      if (index.emplace(p, static_cast<std::uint32_t>(elems.size())).second) elems.push_back(p);
    }
  }
  const auto n = elems.size();
  std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
  auto group = std::make_shared<FiniteGroup>(std::move(table), std::move(description));
  std::vector<GroupElement> gens;
  for (const auto& g : generators) gens.push_back(FiniteIdx{index.at(g)});
  group->set_generators(std::move(gens));
  return group;
}

std::shared_ptr<FiniteGroup> FiniteGroup::cyclic(std::uint32_t n) {
  if (n == 0) throw BadParameter("cyclic: order must be positive");
  std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  auto group = std::make_shared<FiniteGroup>(std::move(table), "Z/" + std::to_string(n));
  group->set_generators({FiniteIdx{n > 1 ? 1u : 0u}});
  return group;
}

bool FiniteGroup::contains(const GroupElement& a) const {
  return a.is<FiniteIdx>() && a.as<FiniteIdx>().index < order();
}

std::optional<std::vector<GroupElement>> FiniteGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(order());
  for (std::uint32_t i = 0; i < order(); ++i) out.emplace_back(FiniteIdx{i});
  return out;
}

GroupElement FiniteGroup::mul_impl(const GroupElement& a, const GroupElement& b) const {
  auto i = a.as<FiniteIdx>().index, j = b.as<FiniteIdx>().index;
  if (i >= order() || j >= order()) throw KindMismatch("finite element out of range");
  return FiniteIdx{table_[i][j]};
}

GroupElement FiniteGroup::inv_impl(const GroupElement& a) const {
  auto i = a.as<FiniteIdx>().index;
  if (i >= order()) throw KindMismatch("finite element out of range");
  return FiniteIdx{inverse_[i]};
}

// ---------------------------------------------------------------------------
// Mat2Group

namespace {

bool is_p_power(mpz_class d, long p) {
  if (p <= 1) return d == 1;
  while (d % p == 0) d /= p;
  return d == 1;
}

}  // namespace

Mat2Group::Mat2Group(Family family, long p) : family_(family), p_(p) {
  if (family == Family::SL2ZInvP && p < 2) throw BadParameter("SL2(Z[1/p]) needs p >= 2");
}

std::string Mat2Group::description() const {
  switch (family_) {
    case Family::GL2QPlus: return "GL2(Q)+";
    case Family::SL2ZInvP: return "SL2(Z[1/" + std::to_string(p_) + "])";
    case Family::GL2Q: return "GL2(Q)";
  }
  return "mat2";
}

bool Mat2Group::contains(const GroupElement& a) const {
  if (!a.is<Mat2>()) return false;
  const auto& x = a.as<Mat2>();
  Rational d = x.det();
  switch (family_) {
    case Family::GL2QPlus: return d.sign() > 0;
    case Family::GL2Q: return !d.is_zero();
    case Family::SL2ZInvP:
      if (d != Rational(1)) return false;
      for (const auto& e : x.m)
        if (!is_p_power(e.den(), p_)) return false;
      return true;
  }
  return false;
}

std::vector<GroupElement> Mat2Group::generators() const {
  const GroupElement s = mat2(0, -1, 1, 0), t = mat2(1, 1, 0, 1);
  switch (family_) {
    case Family::GL2QPlus:
    case Family::GL2Q:
      return {s, t, mat2(1, 0, 0, 2), mat2(1, 0, 0, 3)};
    case Family::SL2ZInvP:
      return {s, t, mat2(Rational(p_), 0, 0, Rational(1, p_))};
  }
  return {};
}

GroupElement Mat2Group::mul_impl(const GroupElement& a, const GroupElement& b) const {
  const auto& x = a.as<Mat2>().m;
  const auto& y = b.as<Mat2>().m;
  return Mat2{{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
               x[2] * y[1] + x[3] * y[3]}};
}

GroupElement Mat2Group::inv_impl(const GroupElement& a) const {
  const auto& x = a.as<Mat2>();
  Rational d = x.det();
  if (d.is_zero()) throw KindMismatch("singular matrix has no inverse");
  return Mat2{{x.m[3] / d, -x.m[1] / d, -x.m[2] / d, x.m[0] / d}};
}

// ---------------------------------------------------------------------------
// AxBGroup

bool AxBGroup::contains(const GroupElement& a) const {
  return a.is<AxB>() && a.as<AxB>().a.sign() > 0;
}

std::vector<GroupElement> AxBGroup::generators() const {
  return {axb(1, 1), axb(2, 0), axb(Rational(1, 2), 0), axb(3, 0), axb(Rational(1, 3), 0)};
}

GroupElement AxBGroup::mul_impl(const GroupElement& a, const GroupElement& b) const {
  // [[1, b], [0, a]] [[1, b'], [0, a']] = [[1, b' + b a'], [0, a a']]
  const auto& x = a.as<AxB>();
  const auto& y = b.as<AxB>();
  return AxB{x.a * y.a, y.b + x.b * y.a};
}

GroupElement AxBGroup::inv_impl(const GroupElement& a) const {
  const auto& x = a.as<AxB>();
  if (x.a.sign() <= 0) throw KindMismatch("AxB element needs a > 0");
  Rational ainv = x.a.inverse();
  return AxB{ainv, -x.b * ainv};
}

// ---------------------------------------------------------------------------
// SemidirectGroup

SemidirectGroup::SemidirectGroup(std::vector<int> moduli, Action action)
    : moduli_(std::move(moduli)), action_(action) {
  if (moduli_.empty()) throw BadParameter("semidirect: at least one modulus required");
  for (int m : moduli_)
    if (m < 1) throw BadParameter("semidirect: moduli must be >= 1");
  if (action_ == Action::Flip && (moduli_.size() != 2 || moduli_[0] != moduli_[1]))
    throw BadParameter("semidirect: flip action needs two equal moduli");
}

std::string SemidirectGroup::description() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < moduli_.size(); ++i) os << (i ? " x " : "") << "Z/" << moduli_[i];
  os << ") x| Z/2 [" << (action_ == Action::Flip ? "flip" : "inversion") << "]";
  return os.str();
}

GroupElement SemidirectGroup::identity() const {
  return Semidirect{std::vector<int>(moduli_.size(), 0), 1};
}

bool SemidirectGroup::contains(const GroupElement& a) const {
  if (!a.is<Semidirect>()) return false;
  const auto& s = a.as<Semidirect>();
  if (s.normal.size() != moduli_.size() || (s.acting != 1 && s.acting != -1)) return false;
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    if (s.normal[i] < 0 || s.normal[i] >= moduli_[i]) return false;
  return true;
}

std::vector<int> SemidirectGroup::act(int acting, const std::vector<int>& v) const {
  if (acting == 1) return v;
  if (action_ == Action::Flip) return {v[1], v[0]};
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (moduli_[i] - v[i]) % moduli_[i];
  return out;
}

std::optional<std::vector<GroupElement>> SemidirectGroup::elements() const {
  std::size_t count = 1;
  for (int m : moduli_) count *= static_cast<std::size_t>(m);
  std::vector<GroupElement> out;
  out.reserve(2 * count);
  for (int acting : {1, -1}) {
    for (std::size_t code = 0; code < count; ++code) {
      // mixed radix, last coordinate fastest
      std::vector<int> v(moduli_.size());
      std::size_t rest = code;
      for (std::size_t i = moduli_.size(); i-- > 0;) {
        v[i] = static_cast<int>(rest % static_cast<std::size_t>(moduli_[i]));
        rest /= static_cast<std::size_t>(moduli_[i]);
      }
      out.emplace_back(Semidirect{std::move(v), acting});
    }
  }
  return out;
}

std::vector<GroupElement> SemidirectGroup::generators() const {
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    std::vector<int> v(moduli_.size(), 0);
    v[i] = moduli_[i] > 1 ? 1 : 0;
    gens.emplace_back(Semidirect{v, 1});
  }
  gens.emplace_back(Semidirect{std::vector<int>(moduli_.size(), 0), -1});
  return gens;
}

GroupElement SemidirectGroup::mul_impl(const GroupElement& a, const GroupElement& b) const {
  // (v, s)(w, t) = (v + s.w, st)
  const auto& x = a.as<Semidirect>();
  const auto& y = b.as<Semidirect>();
  if (x.normal.size() != moduli_.size() || y.normal.size() != moduli_.size())
    throw KindMismatch("semidirect element of wrong rank");
  auto w = act(x.acting, y.normal);
  std::vector<int> v(moduli_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (x.normal[i] + w[i]) % moduli_[i];
  return Semidirect{v, x.acting * y.acting};
}

GroupElement SemidirectGroup::inv_impl(const GroupElement& a) const {
  // (v, s)^-1 = (-(s.v), s) since s is an involution
  const auto& x = a.as<Semidirect>();
  if (x.normal.size() != moduli_.size()) throw KindMismatch("semidirect element of wrong rank");
  auto w = act(x.acting, x.normal);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = (moduli_[i] - w[i]) % moduli_[i];
  return Semidirect{w, x.acting};
}

// ---------------------------------------------------------------------------
// FreeGroup

FreeGroup::FreeGroup(int rank) : rank_(rank) {
  if (rank < 1 || rank > 26) throw BadParameter("free group rank must be in 1..26");
}

std::string FreeGroup::description() const { return "F" + std::to_string(rank_); }

bool FreeGroup::contains(const GroupElement& a) const {
  if (!a.is<Word>()) return false;
  const auto& w = a.as<Word>();
  for (int l : w.letters)
    if (l == 0 || l > rank_ || -l > rank_) return false;
  return w.is_reduced();
}

std::vector<GroupElement> FreeGroup::generators() const {
  std::vector<GroupElement> gens;
  for (int i = 1; i <= rank_; ++i) gens.emplace_back(Word{{i}});
  return gens;
}

GroupElement FreeGroup::mul_impl(const GroupElement& a, const GroupElement& b) const {
  std::vector<int> letters = a.as<Word>().letters;
  const auto& rhs = b.as<Word>().letters;
  letters.insert(letters.end(), rhs.begin(), rhs.end());
  return Word::reduced(letters);
}

GroupElement FreeGroup::inv_impl(const GroupElement& a) const {
  const auto& w = a.as<Word>().letters;
  Word out;
  out.letters.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.letters.push_back(-*it);
  return out;
}

// ---------------------------------------------------------------------------
// ElementIndex

ElementIndex::ElementIndex(const Group& g) {
  auto elems = g.elements();
  if (!elems) throw NotFinite("ElementIndex: group " + g.description() + " is not finite");
  elements_ = std::move(*elems);
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
}

std::size_t ElementIndex::index_of(const GroupElement& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw KindMismatch("element " + e.literal() + " not in group");
  return it->second;
}

}  // namespace hecke
