#include "hecke/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_set>

#include "hecke/canonical.hpp"
#include "hecke/cosets.hpp"
#include "hecke/literal.hpp"
#include "hecke/random.hpp"

namespace hecke {

std::vector<GroupElement> subgroup_closure(const Group& g,
                                           const std::vector<GroupElement>& generators) {
  std::vector<GroupElement> out{g.identity()};
  std::unordered_set<GroupElement> seen{g.identity()};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& s : generators) {
      GroupElement x = g.mul(out[i], s);
      if (seen.insert(x).second) out.push_back(std::move(x));
    }
  return out;
}

PairPtr make_finite_pair(std::string name, GroupPtr group, std::vector<GroupElement> generators,
                         std::string provenance) {
  if (!group->is_finite()) throw NotFinite("make_finite_pair: " + group->description());
  auto elems = subgroup_closure(*group, generators);
  auto set = std::make_shared<std::unordered_set<GroupElement>>(elems.begin(), elems.end());
  Subgroup h;
  h.membership = [set](const GroupElement& x) { return set->count(x) > 0; };
  h.generators = std::move(generators);
  h.is_finite = true;
  h.elements = elems;
  h.membership_id = "enumerated";
  h.canonicalizer = canonical::finite_min(group, elems);
  h.canonicalizer_id = "finite_min";
  return std::make_shared<Pair>(std::move(name), std::move(group), std::move(h),
                                std::move(provenance));
}

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Membership integer_translations() {
  return [](const GroupElement& x) {
    if (!x.is<AxB>()) return false;
    const auto& e = x.as<AxB>();
    return e.a == Rational(1) && e.b.is_integer();
  };
}

Membership sl2z_membership() {
  return [](const GroupElement& x) {
    if (!x.is<Mat2>()) return false;
    const auto& m = x.as<Mat2>();
    return m.has_integer_entries() && m.det() == Rational(1);
  };
}

Subgroup sl2z_subgroup() {
  Subgroup h;
  h.membership = sl2z_membership();
  h.generators = {mat2(0, -1, 1, 0), mat2(1, 1, 0, 1)};
  h.membership_id = "integer-entries,det-one";
  h.canonicalizer = canonical::hnf();
  h.canonicalizer_id = "hnf";
  h.bucket = canonical::denominator_profile();
  return h;
}

PairPtr bost_connes() {
  Subgroup h;
  h.membership = integer_translations();
  h.generators = {axb(1, 1)};
  h.membership_id = "translation-integer";
  h.canonicalizer = canonical::axb_mod();
  h.canonicalizer_id = "axb_mod";
  return std::make_shared<Pair>("bost_connes", std::make_shared<AxBGroup>(), std::move(h),
                                "AxB(Q+, Q) with the integer translations");
}

PairPtr inversion(long n) {
  if (n < 1) throw BadParameter("inversion(n) needs n >= 1");
  auto g = std::make_shared<SemidirectGroup>(std::vector<int>{static_cast<int>(n)},
                                             SemidirectGroup::Action::Inversion);
  return make_finite_pair("inversion(" + std::to_string(n) + ")", g, {semi({0}, -1)},
                          "Z/" + std::to_string(n) + " x| Z/2 by inversion, H = Z/2");
}

PairPtr flip() {
  auto g = std::make_shared<SemidirectGroup>(std::vector<int>{2, 2},
                                             SemidirectGroup::Action::Flip);
  return make_finite_pair("flip", g, {semi({0, 0}, -1)},
                          "(Z/2 x Z/2) x| Z/2 flipping the components, H = Z/2");
}

PairPtr d4_center() {
  auto g = std::make_shared<SemidirectGroup>(std::vector<int>{4},
                                             SemidirectGroup::Action::Inversion);
  return make_finite_pair("d4_center", g, {semi({2}, 1)}, "D4 = Z/4 x| Z/2 with H its center");
}

PairPtr cyclic_pair(long n, long m) {
  if (n < 1 || m < 1 || n % m != 0) throw BadParameter("cyclic(n,m) needs m | n, m, n >= 1");
  auto g = FiniteGroup::cyclic(static_cast<std::uint32_t>(n));
  return make_finite_pair("cyclic(" + std::to_string(n) + "," + std::to_string(m) + ")", g,
                          {fin(static_cast<std::uint32_t>((n / m) % n))},
                          "Z/" + std::to_string(n) + " with its subgroup of order " +
                              std::to_string(m));
}

PairPtr gl2q_plus_sl2z() {
  return std::make_shared<Pair>("gl2q_plus_sl2z",
                                std::make_shared<Mat2Group>(Mat2Group::Family::GL2QPlus),
                                sl2z_subgroup(), "GL2(Q)+ with SL2(Z)");
}

PairPtr sl2_z_inv_p(long p) {
  if (!is_prime(p)) throw BadParameter("sl2_z_inv_p(p) needs p prime, got " + std::to_string(p));
  return std::make_shared<Pair>("sl2_z_inv_p(" + std::to_string(p) + ")",
                                std::make_shared<Mat2Group>(Mat2Group::Family::SL2ZInvP, p),
                                sl2z_subgroup(), "SL2(Z[1/p]) with SL2(Z)");
}

PairPtr free_non_hecke() {
  Subgroup h;
  h.membership = [](const GroupElement& x) {
    if (!x.is<Word>()) return false;
    for (int l : x.as<Word>().letters)
      if (l != 1 && l != -1) return false;
    return true;
  };
  h.generators = {word("a")};
  h.membership_id = "word-in-generators-with-budget";
  h.canonicalizer = canonical::free_strip({1});
  h.canonicalizer_id = "free_strip";
  return std::make_shared<Pair>("free_non_hecke", std::make_shared<FreeGroup>(2), std::move(h),
                                "F2 with the cyclic subgroup <a>");
}

long int_param(const std::string& s, const std::string& name) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw BadParameter(name + ": not an integer: '" + s + "'");
  return v;
}

}  // namespace

PairPtr builtin(const std::string& name) {
  static const std::regex form(R"(^([a-z0-9_]+)(?:\(([^)]*)\))?$)");
  std::smatch m;
  if (!std::regex_match(name, m, form)) throw UnknownName("unknown pair '" + name + "'");
  std::string base = m[1];
  std::vector<std::string> args;
  if (m[2].matched) {
    std::stringstream ss(m[2].str());
    std::string a;
    while (std::getline(ss, a, ',')) {
      a.erase(std::remove_if(a.begin(), a.end(), [](unsigned char c) { return std::isspace(c); }),
              a.end());
      args.push_back(a);
    }
  }
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw BadParameter(base + " takes " + std::to_string(n) + " parameter(s)");
  };
  if (base == "bost_connes") return need(0), bost_connes();
  if (base == "flip") return need(0), flip();
  if (base == "gl2q_plus_sl2z") return need(0), gl2q_plus_sl2z();
  if (base == "free_non_hecke") return need(0), free_non_hecke();
  if (base == "d4_center") return need(0), d4_center();
  if (base == "inversion") return need(1), inversion(int_param(args[0], base));
  if (base == "sl2_z_inv_p") return need(1), sl2_z_inv_p(int_param(args[0], base));
  if (base == "cyclic")
    return need(2), cyclic_pair(int_param(args[0], base), int_param(args[1], base));
  throw UnknownName("unknown pair '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"bost_connes", "inversion(5)",  "flip",           "gl2q_plus_sl2z",
          "sl2_z_inv_p(2)", "sl2_z_inv_p(3)", "free_non_hecke", "d4_center", "cyclic(6,3)"};
}

std::vector<std::string> finite_catalog_names() {
  return {"flip",         "inversion(3)", "inversion(4)", "inversion(5)", "inversion(6)",
          "inversion(7)", "inversion(8)", "d4_center",    "cyclic(6,3)",  "cyclic(4,2)"};
}

std::vector<PairPtr> small_finite_pairs(std::size_t max_order) {
  std::vector<std::pair<std::string, GroupPtr>> groups;
  for (std::uint32_t n = 1; n <= max_order; ++n)
    groups.emplace_back("Z/" + std::to_string(n), FiniteGroup::cyclic(n));
  for (int n = 3; 2 * static_cast<std::size_t>(n) <= max_order; ++n)
    groups.emplace_back("D" + std::to_string(n),
                        std::make_shared<SemidirectGroup>(std::vector<int>{n},
                                                          SemidirectGroup::Action::Inversion));
  if (max_order >= 8)
    groups.emplace_back("flip", std::make_shared<SemidirectGroup>(
                                    std::vector<int>{2, 2}, SemidirectGroup::Action::Flip));
  if (max_order >= 16)
    groups.emplace_back("Z2xZ4:2", std::make_shared<SemidirectGroup>(
                                       std::vector<int>{2, 4}, SemidirectGroup::Action::Inversion));
  if (max_order >= 12)
    groups.emplace_back("A4", FiniteGroup::from_permutations({{1, 2, 0, 3}, {1, 0, 3, 2}}, "A4"));
  if (max_order >= 8)
    groups.emplace_back("Q8", FiniteGroup::from_permutations(
                                  {{1, 4, 3, 6, 5, 0, 7, 2}, {2, 7, 4, 1, 6, 3, 0, 5}}, "Q8"));

  std::vector<PairPtr> out;
  for (const auto& [label, g] : groups) {
    ElementIndex index(*g);
    const auto& elems = index.elements();
    std::set<std::vector<std::size_t>> seen;
    auto consider = [&](std::vector<GroupElement> gens) {
      auto h = subgroup_closure(*g, gens);
      std::vector<std::size_t> ids;
      for (const auto& x : h) ids.push_back(index.index_of(x));
      std::sort(ids.begin(), ids.end());
      if (!seen.insert(ids).second) return;
      std::string name = label + " H=<";
      for (std::size_t i = 0; i < gens.size(); ++i) name += (i ? ", " : "") + gens[i].literal();
      out.push_back(make_finite_pair(name + ">", g, std::move(gens)));
    };
    for (std::size_t a = 0; a < elems.size(); ++a) consider({elems[a]});
    for (std::size_t a = 0; a < elems.size(); ++a)
      for (std::size_t b = a + 1; b < elems.size(); ++b) consider({elems[a], elems[b]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// subgroup_check

SubgroupReport subgroup_check(const Pair& pair,
                              const std::vector<std::pair<GroupElement, GroupElement>>& samples) {
  const Group& g = pair.group();
  const Subgroup& h = pair.subgroup();
  SubgroupReport rep;
  auto flag = [&](const std::string& what) {
    if (rep.violations++ == 0) rep.first_violation = what;
  };
  ++rep.checked;
  if (!h.contains(g.identity())) flag("identity not in H");
  for (const auto& s : h.generators) {
    ++rep.checked;
    if (!g.contains(s)) flag("generator " + s.literal() + " not in G");
    else if (!h.contains(s)) flag("generator " + s.literal() + " not in H");
  }
  for (const auto& [a, b] : samples) {
    if (!h.contains(a) || !h.contains(b)) continue;
    ++rep.checked;
    if (!h.contains(g.mul(a, b))) flag("product " + a.literal() + " * " + b.literal() + " leaves H");
    if (!h.contains(g.inv(a))) flag("inverse of " + a.literal() + " leaves H");
  }
  return rep;
}

std::vector<std::pair<GroupElement, GroupElement>> subgroup_samples(const Pair& pair,
                                                                    std::size_t n,
                                                                    std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<GroupElement, GroupElement>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    GroupElement a = random_subgroup_element(pair, rng, 4);
    GroupElement b = random_subgroup_element(pair, rng, 4);
    if (i % 4 == 3) {
      // Truly random elements exercise predicates that are not closed.
      GroupElement x = random_element(pair, rng, 3);
      b = pair.group().mul(b, x);
    }
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Config loading

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) {
    part = trim(part);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

struct Located {
  std::size_t line = 0;
  std::size_t column = 0;
};

}  // namespace

PairSpec parse_pair_spec(const std::string& text) {
  static const std::vector<std::string> group_keys{"kind", "cyclic", "table", "ring",
                                                   "p",    "moduli", "action", "rank"};
  static const std::vector<std::string> subgroup_keys{"generators", "membership", "finite",
                                                      "budget"};
  static const std::vector<std::string> meta_keys{"name", "canonicalizer", "provenance"};
  static const std::vector<std::string> kinds{"finite", "mat2", "axb", "semidirect", "free"};

  PairSpec spec;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool saw_kind = false;
  std::vector<std::string> seen;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t first = raw.find_first_not_of(" \t");
    if (first == std::string::npos || raw[first] == '#' || raw[first] == ';') continue;
    if (raw[first] == '[') {
      auto close = raw.find(']', first);
      if (close == std::string::npos) throw ParseError("unterminated section header", lineno, first + 1);
      section = trim(raw.substr(first + 1, close - first - 1));
      if (section != "group" && section != "subgroup" && section != "meta")
        throw ParseError("unknown section [" + section + "]", lineno, first + 2);
      if (!trim(raw.substr(close + 1)).empty())
        throw ParseError("text after section header", lineno, close + 2);
      continue;
    }
    auto eq = raw.find('=', first);
    if (eq == std::string::npos) throw ParseError("expected key=value", lineno, first + 1);
    std::string key = trim(raw.substr(first, eq - first));
    std::size_t vcol = raw.find_first_not_of(" \t", eq + 1);
    vcol = vcol == std::string::npos ? raw.size() + 1 : vcol + 1;
    std::string value = trim(raw.substr(eq + 1));
    if (section.empty()) throw ParseError("key outside of a section", lineno, first + 1);
    const auto& allowed =
        section == "group" ? group_keys : section == "subgroup" ? subgroup_keys : meta_keys;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ParseError("unknown key '" + key + "' in [" + section + "]", lineno, first + 1);
    std::string qualified = section + "." + key;
    if (std::find(seen.begin(), seen.end(), qualified) != seen.end())
      throw ParseError("duplicate key '" + key + "'", lineno, first + 1);
    seen.push_back(qualified);

    if (section == "group") {
      if (key == "kind") {
        if (std::find(kinds.begin(), kinds.end(), value) == kinds.end())
          throw ParseError("unknown group kind '" + value + "'", lineno, vcol);
        spec.group_kind = value;
        saw_kind = true;
      } else {
        spec.group_params.emplace_back(key, value);
      }
    } else if (section == "subgroup") {
      if (key == "generators") {
        spec.generators = value;
        try {
          parse_element_list(value);
        } catch (const ParseError& e) {
          throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(": ") + 2),
                           lineno, vcol + e.column() - 1);
        }
      } else if (key == "membership") {
        spec.membership = value;
      } else if (key == "finite") {
        if (value != "true" && value != "false")
          throw ParseError("finite must be true or false", lineno, vcol);
        spec.finite = value == "true";
      } else if (key == "budget") {
        try {
          std::size_t pos = 0;
          long v = std::stol(value, &pos);
          if (pos != value.size() || v <= 0) throw std::invalid_argument("budget");
          spec.membership_budget = static_cast<std::size_t>(v);
        } catch (const std::exception&) {
          throw ParseError("budget must be a positive integer", lineno, vcol);
        }
      }
    } else {
      if (key == "name") spec.name = value;
      if (key == "canonicalizer") spec.canonicalizer = value;
      if (key == "provenance") spec.provenance = value;
    }
  }
  if (!saw_kind) throw ParseError("missing [group] kind", lineno == 0 ? 1 : lineno, 1);
  if (spec.generators.empty()) throw ParseError("missing [subgroup] generators", lineno == 0 ? 1 : lineno, 1);
  if (spec.name.empty()) spec.name = "config";
  return spec;
}

namespace {

const std::string* param(const PairSpec& spec, const std::string& key) {
  for (const auto& [k, v] : spec.group_params)
    if (k == key) return &v;
  return nullptr;
}

long int_value(const PairSpec& spec, const std::string& key, long fallback) {
  const std::string* v = param(spec, key);
  if (!v) return fallback;
  try {
    return int_param(*v, key);
  } catch (const BadParameter& e) {
    throw ValidationError(e.what());
  }
}

GroupPtr build_group(const PairSpec& spec) {
  const std::string& kind = spec.group_kind;
  try {
    if (kind == "finite") {
      if (const std::string* n = param(spec, "cyclic")) {
        long v = int_param(*n, "cyclic");
        if (v < 1) throw ValidationError("cyclic order must be >= 1");
        return FiniteGroup::cyclic(static_cast<std::uint32_t>(v));
      }
      const std::string* t = param(spec, "table");
      if (!t) throw ValidationError("finite group needs cyclic= or table=");
      std::vector<std::vector<std::uint32_t>> table;
      for (const auto& row : split(*t, ';')) {
        std::vector<std::uint32_t> r;
        for (const auto& e : split(row, ',')) {
          long v = int_param(e, "table");
          if (v < 0) throw ValidationError("negative table entry");
          r.push_back(static_cast<std::uint32_t>(v));
        }
        table.push_back(std::move(r));
      }
      return std::make_shared<FiniteGroup>(std::move(table), "table group");
    }
    if (kind == "mat2") {
      const std::string* ring = param(spec, "ring");
      std::string r = ring ? *ring : "gl2q_plus";
      if (r == "gl2q_plus") return std::make_shared<Mat2Group>(Mat2Group::Family::GL2QPlus);
      if (r == "gl2q") return std::make_shared<Mat2Group>(Mat2Group::Family::GL2Q);
      if (r == "sl2_z_inv_p") {
        long p = int_value(spec, "p", 0);
        if (!is_prime(p)) throw ValidationError("sl2_z_inv_p needs a prime p");
        return std::make_shared<Mat2Group>(Mat2Group::Family::SL2ZInvP, p);
      }
      throw ValidationError("unknown ring '" + r + "'");
    }
    if (kind == "axb") return std::make_shared<AxBGroup>();
    if (kind == "semidirect") {
      const std::string* m = param(spec, "moduli");
      if (!m) throw ValidationError("semidirect needs moduli=");
      std::vector<int> moduli;
      for (const auto& e : split(*m, ',')) {
        long v = int_param(e, "moduli");
        if (v < 1) throw ValidationError("moduli must be >= 1");
        moduli.push_back(static_cast<int>(v));
      }
      const std::string* a = param(spec, "action");
      std::string act = a ? *a : "inversion";
      if (act == "inversion")
        return std::make_shared<SemidirectGroup>(moduli, SemidirectGroup::Action::Inversion);
      if (act == "flip")
        return std::make_shared<SemidirectGroup>(moduli, SemidirectGroup::Action::Flip);
      throw ValidationError("unknown action '" + act + "'");
    }
    if (kind == "free") {
      long rank = int_value(spec, "rank", 2);
      if (rank < 1 || rank > 26) throw ValidationError("free rank must be in 1..26");
      return std::make_shared<FreeGroup>(static_cast<int>(rank));
    }
  } catch (const BadParameter& e) {
    throw ValidationError(e.what());
  }
  throw ValidationError("unknown group kind '" + kind + "'");
}

bool single_letters(const std::vector<GroupElement>& gens) {
  for (const auto& g : gens)
    if (!g.is<Word>() || g.as<Word>().letters.size() != 1) return false;
  return true;
}

Membership word_membership(const GroupPtr& group, const std::vector<GroupElement>& gens,
                           std::size_t budget) {
  if (group->is_finite()) {
    auto elems = subgroup_closure(*group, gens);
    auto set = std::make_shared<std::unordered_set<GroupElement>>(elems.begin(), elems.end());
    return [set](const GroupElement& x) { return set->count(x) > 0; };
  }
  if (group->kind() == ElementKind::Word && single_letters(gens)) {
    std::vector<int> letters;
    for (const auto& g : gens) letters.push_back(std::abs(g.as<Word>().letters[0]));
    return [letters](const GroupElement& x) {
      if (!x.is<Word>()) return false;
      for (int l : x.as<Word>().letters)
        if (std::find(letters.begin(), letters.end(), std::abs(l)) == letters.end()) return false;
      return true;
    };
  }
  // Budgeted enumeration of words in the generators and their inverses.
  std::vector<GroupElement> both = gens;
  for (const auto& g : gens) both.push_back(group->inv(g));
  std::vector<GroupElement> ball{group->identity()};
  auto set = std::make_shared<std::unordered_set<GroupElement>>();
  set->insert(group->identity());
  for (std::size_t i = 0; i < ball.size() && ball.size() < budget; ++i)
    for (const auto& s : both) {
      GroupElement x = group->mul(ball[i], s);
      if (set->insert(x).second) ball.push_back(std::move(x));
      if (ball.size() >= budget) break;
    }
  return [set](const GroupElement& x) { return set->count(x) > 0; };
}

}  // namespace

PairPtr build_pair(const PairSpec& spec) {
  GroupPtr group = build_group(spec);
  std::vector<GroupElement> gens;
  try {
    gens = parse_element_list(spec.generators);
  } catch (const ParseError& e) {
    throw ValidationError(std::string("generators: ") + e.what());
  }
  for (const auto& g : gens)
    if (!group->contains(g))
      throw ValidationError("generator " + g.literal() + " is not in " + group->description());

  const ElementKind kind = group->kind();
  std::vector<std::string> rules = split(spec.membership, ',');
  if (rules.empty()) {
    if (!group->is_finite()) throw ValidationError("membership= is required for infinite groups");
    rules.push_back("word-in-generators-with-budget");
  }
  std::vector<Membership> preds;
  for (const auto& r : rules) {
    if (r == "integer-entries") {
      if (kind == ElementKind::Mat2)
        preds.push_back([](const GroupElement& x) { return x.as<Mat2>().has_integer_entries(); });
      else if (kind == ElementKind::AxB)
        preds.push_back([](const GroupElement& x) {
          return x.as<AxB>().a.is_integer() && x.as<AxB>().b.is_integer();
        });
      else
        throw ValidationError("integer-entries needs a mat2 or axb group");
    } else if (r == "det-one") {
      if (kind == ElementKind::Mat2)
        preds.push_back([](const GroupElement& x) { return x.as<Mat2>().det() == Rational(1); });
      else if (kind == ElementKind::AxB)
        preds.push_back([](const GroupElement& x) { return x.as<AxB>().a == Rational(1); });
      else
        throw ValidationError("det-one needs a mat2 or axb group");
    } else if (r == "translation-integer") {
      if (kind != ElementKind::AxB) throw ValidationError("translation-integer needs an axb group");
      preds.push_back(integer_translations());
    } else if (r == "word-in-generators-with-budget") {
      preds.push_back(word_membership(group, gens, spec.membership_budget));
    } else {
      throw ValidationError("unknown membership rule '" + r + "'");
    }
  }

  Subgroup h;
  h.membership = [preds, kind](const GroupElement& x) {
    if (x.kind() != kind) return false;
    for (const auto& p : preds)
      if (!p(x)) return false;
    return true;
  };
  h.generators = gens;
  h.membership_id = spec.membership.empty() ? "word-in-generators-with-budget" : spec.membership;
  h.is_finite = spec.finite;
  for (const auto& g : gens)
    if (!h.contains(g)) throw ValidationError("generator " + g.literal() + " fails membership");

  if (spec.finite) {
    if (group->is_finite()) {
      std::vector<GroupElement> elems;
      const auto all = *group->elements();
      for (const auto& x : all)
        if (h.contains(x)) elems.push_back(x);
      h.elements = std::move(elems);
    } else {
      std::vector<GroupElement> elems{group->identity()};
      std::unordered_set<GroupElement> seen{group->identity()};
      for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& s : gens) {
          GroupElement x = group->mul(elems[i], s);
          if (seen.insert(x).second) elems.push_back(std::move(x));
          if (elems.size() > spec.membership_budget)
            throw ValidationError("finite=true but H did not close within budget");
        }
      h.elements = std::move(elems);
    }
  } else if (group->is_finite()) {
    throw ValidationError("finite=false contradicts a finite group");
  }

  const std::string& canon = spec.canonicalizer;
  const bool is_sl2z =
      kind == ElementKind::Mat2 &&
      std::find(rules.begin(), rules.end(), "integer-entries") != rules.end() &&
      std::find(rules.begin(), rules.end(), "det-one") != rules.end();
  const bool is_translations =
      kind == ElementKind::AxB && rules.size() == 1 && rules[0] == "translation-integer";
  const bool is_free_letters = kind == ElementKind::Word && single_letters(gens) &&
                               rules.size() == 1 && rules[0] == "word-in-generators-with-budget";
  auto use = [&](const std::string& id) {
    if (id == "axb_mod") {
      if (!is_translations) throw ValidationError("axb_mod needs H = integer translations");
      h.canonicalizer = canonical::axb_mod();
    } else if (id == "hnf") {
      if (!is_sl2z) throw ValidationError("hnf needs H = SL2(Z)");
      h.canonicalizer = canonical::hnf();
    } else if (id == "finite_min") {
      if (!group->is_finite() || !h.elements) throw ValidationError("finite_min needs finite G and H");
      h.canonicalizer = canonical::finite_min(group, *h.elements);
    } else if (id == "free_strip") {
      if (!is_free_letters) throw ValidationError("free_strip needs H generated by letters");
      std::vector<int> letters;
      for (const auto& g : gens) letters.push_back(std::abs(g.as<Word>().letters[0]));
      h.canonicalizer = canonical::free_strip(letters);
    } else if (id != "none") {
      throw ValidationError("unknown canonicalizer '" + id + "'");
    }
    h.canonicalizer_id = id;
  };
  if (!canon.empty()) {
    use(canon);
  } else if (is_translations) {
    use("axb_mod");
  } else if (is_sl2z) {
    use("hnf");
  } else if (group->is_finite() && h.elements) {
    use("finite_min");
  } else if (is_free_letters) {
    use("free_strip");
  } else {
    use("none");
  }
  if (kind == ElementKind::Mat2) h.bucket = canonical::denominator_profile();

  auto pair = std::make_shared<Pair>(spec.name, group, std::move(h), spec.provenance);
  auto report = subgroup_check(*pair, subgroup_samples(*pair, 1000, 0));
  if (!report.ok()) throw ValidationError("subgroup check failed: " + report.first_violation);
  return pair;
}

PairPtr load_pair(const std::string& config_text) { return build_pair(parse_pair_spec(config_text)); }

}  // namespace hecke
