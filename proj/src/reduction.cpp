#include "hecke/reduction.hpp"

#include <map>
#include <set>
#include <unordered_set>

#include "hecke/catalog.hpp"

namespace hecke {

namespace {

bool conjugates_into(const Pair& pair, const GroupElement& t, const GroupElement& x) {
  const Group& g = pair.group();
  return pair.subgroup().contains(g.mul(g.mul(g.inv(x), t), x));
}

}  // namespace

CoreResult core_finite(const Pair& pair) {
  if (!pair.is_finite()) throw NotFinite("core_finite: pair " + pair.name() + " is not finite");
  auto elems = *pair.group().elements();
  CoreResult out;
  out.mode = CoreResult::Mode::Exact;
  for (const auto& t : *pair.subgroup().elements) {
    bool keep = true;
    for (const auto& x : elems)
      if (!conjugates_into(pair, t, x)) {
        keep = false;
        break;
      }
    if (keep) out.elements.push_back(t);
  }
  return out;
}

CoreResult core_bound(const Pair& pair, const std::vector<GroupElement>& conjugators,
                      const std::vector<GroupElement>& test_set) {
  const Group& g = pair.group();
  CoreResult out;
  out.mode = CoreResult::Mode::Bound;
  out.conjugators = conjugators;
  out.test_set = test_set;
  for (const auto& x : conjugators)
    if (x.kind() != g.kind()) throw KindMismatch("core_bound: conjugator of another kind");
  for (const auto& t : test_set) {
    if (t.kind() != g.kind()) throw KindMismatch("core_bound: test element of another kind");
    if (!pair.subgroup().contains(t)) continue;
    bool keep = true;
    for (const auto& x : conjugators)
      if (!conjugates_into(pair, t, x)) {
        keep = false;
        break;
      }
    if (keep) out.elements.push_back(t);
  }
  return out;
}

std::vector<GroupElement> sl2_core_conjugators(long p) {
  if (p < 2) throw BadParameter("sl2_core_conjugators: p must be >= 2");
  Rational inv_p(1, p);
  std::vector<GroupElement> out{mat2(1, inv_p, 0, 1), mat2(1, 0, inv_p, 1)};
  Rational pn(1);
  for (int n = 1; n <= 2; ++n) {
    pn *= Rational(p);
    out.push_back(mat2(0, pn.inverse(), -pn, 0));
    out.push_back(mat2(0, -pn, pn.inverse(), 0));
  }
  return out;
}

std::vector<GroupElement> sl2z_word_ball(std::size_t radius) {
  Mat2Group grp(Mat2Group::Family::GL2Q);
  GroupElement s = mat2(0, -1, 1, 0), t = mat2(1, 1, 0, 1);
  std::vector<GroupElement> gens{s, t, grp.inv(s), grp.inv(t)};
  std::vector<GroupElement> out{grp.identity()};
  std::unordered_set<GroupElement> seen{grp.identity()};
  std::size_t begin = 0;
  for (std::size_t r = 0; r < radius; ++r) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& gen : gens) {
        GroupElement x = grp.mul(out[i], gen);
        if (seen.insert(x).second) out.push_back(std::move(x));
      }
    begin = end;
  }
  return out;
}

Reduction reduce_finite(const PairPtr& pair) {
  if (!pair->is_finite()) throw NotFinite("reduce_finite: pair " + pair->name() + " is not finite");
  const Group& g = pair->group();
  ElementIndex index(g);
  const auto& elems = index.elements();
  Reduction red;
  red.core = core_finite(*pair).elements;

  // Number the cosets gK by first appearance.
  red.projection.assign(elems.size(), UINT32_MAX);
  std::vector<std::size_t> rep_of;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (red.projection[i] != UINT32_MAX) continue;
    auto c = static_cast<std::uint32_t>(rep_of.size());
    rep_of.push_back(i);
    for (const auto& k : red.core) red.projection[index.index_of(g.mul(elems[i], k))] = c;
  }
  const std::size_t n = rep_of.size();
  std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(elems[rep_of[a]].literal() + "K");
    for (std::size_t b = 0; b < n; ++b)
      table[a][b] = red.projection[index.index_of(g.mul(elems[rep_of[a]], elems[rep_of[b]]))];
  }
  auto quotient = std::make_shared<FiniteGroup>(
      std::move(table), "(" + g.description() + ")/K", std::move(labels));
  std::vector<GroupElement> qgens;
  for (const auto& x : g.generators()) qgens.push_back(fin(red.projection[index.index_of(x)]));
  quotient->set_generators(qgens);

  std::vector<GroupElement> hgens;
  for (const auto& h : pair->subgroup().generators)
    hgens.push_back(fin(red.projection[index.index_of(h)]));
  red.quotient = make_finite_pair(pair->name() + "/core", quotient, hgens,
                                  "reduction of " + pair->name());
  return red;
}

ReductionReport check_reduction_isomorphism(const PairPtr& pair, const Budget& budget) {
  Reduction red = reduce_finite(pair);
  const Pair& q = *red.quotient;
  ElementIndex index(pair->group());
  ReductionReport rep;

  auto ds = all_double_cosets(*pair, budget);
  auto qds = all_double_cosets(q, budget);
  rep.double_cosets = ds.size();
  rep.quotient_double_cosets = qds.size();

  auto image = [&](const GroupElement& x) { return fin(red.projection[index.index_of(x)]); };
  auto dkey = [&](const Pair& p, const GroupElement& x) {
    return double_coset_decompose(p, x, budget)->key();
  };

  // Every element of G, not only representatives, must land in one image.
  std::map<DoubleCosetKey, DoubleCosetKey> forward;
  rep.well_defined = true;
  for (const auto& x : index.elements()) {
    auto [it, fresh] = forward.emplace(dkey(*pair, x), dkey(q, image(x)));
    if (!fresh && it->second != dkey(q, image(x))) {
      rep.well_defined = false;
      rep.detail = "double coset of " + x.literal() + " has two images";
    }
  }
  std::set<DoubleCosetKey> hit;
  for (const auto& [k, v] : forward) hit.insert(v);
  rep.bijective = forward.size() == ds.size() && hit.size() == qds.size() &&
                  hit.size() == forward.size();
  if (!rep.bijective && rep.detail.empty()) rep.detail = "double-coset map is not bijective";

  rep.r_preserved = true;
  rep.delta_preserved = true;
  for (const auto& d : ds) {
    auto qx = image(d->rep());
    if (R(q, qx, budget) != d->r_value()) {
      rep.r_preserved = false;
      if (rep.detail.empty()) rep.detail = "R differs at " + d->rep().literal();
    }
    if (delta(q, qx, budget) != delta(*pair, d->rep(), budget)) rep.delta_preserved = false;
  }

  rep.tables_match = true;
  for (const auto& c : ds)
    for (const auto& d : ds) {
      auto mine = structure_constants(pair, c->rep(), d->rep(), budget);
      auto theirs = structure_constants(red.quotient, image(c->rep()), image(d->rep()), budget);
      std::map<DoubleCosetKey, long> mapped;
      for (const auto& [k, sc] : mine) mapped[forward.at(k)] = sc.multiplicity;
      std::map<DoubleCosetKey, long> other;
      for (const auto& [k, sc] : theirs) other[k] = sc.multiplicity;
      if (mapped != other) {
        rep.tables_match = false;
        if (rep.detail.empty())
          rep.detail = "structure constants differ for " + c->rep().literal() + ", " +
                       d->rep().literal();
      }
    }

  rep.quotient_reduced = core_finite(q).elements.size() == 1;
  return rep;
}

}  // namespace hecke
