#include "hecke/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "hecke/catalog.hpp"
#include "hecke/literal.hpp"
#include "hecke/random.hpp"
#include "hecke/reduction.hpp"
#include "hecke/regrep.hpp"

namespace hecke::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string pair_name;
  std::string config;
  std::vector<std::string> elements;
  std::optional<std::size_t> budget;
  std::uint64_t seed = 0;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> radius;
  std::optional<std::size_t> samples;
  std::string mode;
  std::string generators;
  std::string conjugators;
  std::string at;
  std::size_t iterations = 10000;
  std::size_t max_order = 16;
  bool json_out = false;
};

/// Raised for bad input that is not a library error.
struct UsageError : Error {
  using Error::Error;
};

/// A verified property failed; the result is still printed.
struct Outcome {
  json result = json::object();
  bool failed = false;
  bool exact = true;
  bool diverged = false;
};

struct Context {
  Options opt;
  PairPtr pair;
  Budget budget;
  std::size_t extra_steps = 0;
};

std::string rat(const Rational& r) { return r.str(); }

std::string hecke_literal(const HeckeElement& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (const auto& [k, t] : f.terms()) {
    if (!s.empty()) s += "; ";
    s += t.coeff.str() + "@" + t.coset->rep().literal();
  }
  return s;
}

GroupElement element_in(const Context& ctx, const std::string& text) {
  GroupElement x = parse_element(text);
  if (!ctx.pair->group().contains(x))
    throw UsageError("element " + x.literal() + " is not in " + ctx.pair->group().description());
  return x;
}

std::vector<GroupElement> elements_in(const Context& ctx) {
  std::vector<GroupElement> out;
  for (const auto& e : ctx.opt.elements) out.push_back(element_in(ctx, e));
  return out;
}

const std::string& single(const Context& ctx, const char* what) {
  if (ctx.opt.elements.size() != 1)
    throw UsageError(std::string(what) + " needs exactly one --element");
  return ctx.opt.elements.front();
}

/// Given elements, every element of a finite G, or seeded samples.
std::vector<GroupElement> test_elements(const Context& ctx) {
  if (!ctx.opt.elements.empty()) return elements_in(ctx);
  if (auto all = ctx.pair->group().elements()) return *all;
  Rng rng(ctx.opt.seed);
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < ctx.opt.samples.value_or(20); ++i)
    out.push_back(random_element(*ctx.pair, rng, 4));
  return out;
}

std::vector<GroupElement> ball_generators(const Context& ctx) {
  if (!ctx.opt.generators.empty()) {
    auto gens = parse_element_list(ctx.opt.generators);
    for (const auto& g : gens)
      if (!ctx.pair->group().contains(g)) throw UsageError("generator " + g.literal() + " not in G");
    return gens;
  }
  return ctx.pair->samplers();
}

CosetBall make_ball(const Context& ctx, std::size_t default_radius) {
  if (ctx.pair->is_finite() && !ctx.opt.radius && ctx.opt.generators.empty())
    return full_ball(*ctx.pair, ctx.budget);
  return build_ball(*ctx.pair, ball_generators(ctx), ctx.opt.radius.value_or(default_radius),
                    ctx.budget);
}

json verdict_json(const char* property, const Verdict& v) {
  json j;
  j["property"] = property;
  j["truth"] = truth_name(v.truth);
  j["checked"] = v.checked;
  j["skipped"] = v.skipped;
  if (!v.witness.empty()) j["witness"] = v.witness;
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

void verdict_outcome(Outcome& o, const char* property, const Verdict& v) {
  o.result = verdict_json(property, v);
  if (v.truth == Truth::False) o.failed = true;
  if (v.truth == Truth::Unknown) o.diverged = true;
}

// ---------------------------------------------------------------------------
// Commands

Outcome cmd_analyze(Context& ctx) {
  GroupElement x = element_in(ctx, single(ctx, "analyze"));
  Outcome o;
  o.result["element"] = x.literal();
  o.result["L"] = L(*ctx.pair, x, ctx.budget);
  o.result["R"] = R(*ctx.pair, x, ctx.budget);
  o.result["delta"] = rat(delta(*ctx.pair, x, ctx.budget));
  o.result["double_coset"] = double_coset_decompose(*ctx.pair, x, ctx.budget)->key().bytes;
  o.result["condition_3_1"] = check_condition_3_1(ctx.pair, x, ctx.budget);
  return o;
}

Outcome cmd_decompose(Context& ctx) {
  GroupElement x = element_in(ctx, single(ctx, "decompose"));
  auto d = double_coset_decompose(*ctx.pair, x, ctx.budget);
  Outcome o;
  o.result["element"] = x.literal();
  o.result["R"] = d->r_value();
  o.result["double_coset"] = d->key().bytes;
  json cosets = json::array();
  for (std::size_t i = 0; i < d->r_value(); ++i)
    cosets.push_back({{"rep", d->right_coset_reps()[i].literal()}, {"key", d->keys()[i].bytes}});
  o.result["cosets"] = cosets;
  return o;
}

json terms_json(const HeckeElement& f) {
  json arr = json::array();
  for (const auto& [k, t] : f.terms())
    arr.push_back({{"coeff", t.coeff.str()},
                   {"rep", t.coset->rep().literal()},
                   {"double_coset", k.bytes},
                   {"R", t.coset->r_value()}});
  return arr;
}

Outcome cmd_convolve(Context& ctx) {
  if (ctx.opt.elements.size() != 2) throw UsageError("convolve needs exactly two --element");
  auto f1 = parse_hecke(ctx.pair, ctx.opt.elements[0], ctx.budget);
  auto f2 = parse_hecke(ctx.pair, ctx.opt.elements[1], ctx.budget);
  Outcome o;
  o.result["f1"] = hecke_literal(f1);
  o.result["f2"] = hecke_literal(f2);
  if (!ctx.opt.at.empty()) {
    GroupElement x = element_in(ctx, ctx.opt.at);
    o.result["at"] = x.literal();
    o.result["value"] = convolve_at(f1, f2, x).str();
    return o;
  }
  auto p = convolve(f1, f2, ctx.budget);
  auto norm = l1_norm(p);
  o.result["product"] = hecke_literal(p);
  o.result["l1_norm"] = norm.str();
  o.exact = norm.is_exact();
  o.result["terms"] = terms_json(p);
  return o;
}

Outcome cmd_table(Context& ctx) {
  std::vector<DecompPtr> cosets;
  if (ctx.opt.elements.empty()) {
    if (!ctx.pair->is_finite()) throw UsageError("table on an infinite pair needs --element");
    cosets = all_double_cosets(*ctx.pair, ctx.budget);
  } else {
    std::set<DoubleCosetKey> seen;
    for (const auto& x : elements_in(ctx)) {
      auto d = double_coset_decompose(*ctx.pair, x, ctx.budget);
      if (seen.insert(d->key()).second) cosets.push_back(d);
    }
  }
  std::map<DoubleCosetKey, std::size_t> name;
  for (const auto& d : cosets) name.emplace(d->key(), name.size());
  const std::size_t base = cosets.size();
  json products = json::array();
  for (std::size_t i = 0; i < base; ++i)
    for (std::size_t j = 0; j < base; ++j) {
      auto sc = structure_constants(ctx.pair, cosets[i]->rep(), cosets[j]->rep(), ctx.budget);
      std::string terms;
      for (const auto& [k, c] : sc) {
        if (name.emplace(k, name.size()).second) cosets.push_back(c.coset);
        if (!terms.empty()) terms += " + ";
        terms += std::to_string(c.multiplicity) + " D" + std::to_string(name.at(k));
      }
      products.push_back({{"left", "D" + std::to_string(i)},
                          {"right", "D" + std::to_string(j)},
                          {"product", terms.empty() ? "0" : terms}});
    }
  Outcome o;
  json legend = json::array();
  for (std::size_t i = 0; i < cosets.size(); ++i)
    legend.push_back({{"name", "D" + std::to_string(i)},
                      {"rep", cosets[i]->rep().literal()},
                      {"R", cosets[i]->r_value()}});
  o.result["double_cosets"] = legend;
  o.result["products"] = products;
  return o;
}

Outcome check_cond31(Context& ctx) {
  Outcome o;
  json rows = json::array();
  std::size_t holds = 0, total = 0, skipped = 0;
  for (const auto& x : test_elements(ctx)) {
    try {
      bool h = check_condition_3_1(ctx.pair, x, ctx.budget);
      rows.push_back({{"element", x.literal()}, {"holds", h}});
      ++total;
      if (h) ++holds;
    } catch (const Diverged&) {
      rows.push_back({{"element", x.literal()}, {"holds", "diverged"}});
      ++skipped;
    }
  }
  o.result["property"] = "condition_3_1";
  o.result["holds"] = holds;
  o.result["total"] = total;
  o.result["skipped"] = skipped;
  o.result["rows"] = rows;
  if (holds != total) o.failed = true;
  if (skipped > 0) o.diverged = total == 0;
  return o;
}

Outcome cmd_check(Context& ctx, const std::string& what) {
  Outcome o;
  if (what == "unimodular") {
    verdict_outcome(o, "relatively_unimodular",
                    is_relatively_unimodular(ctx.pair, test_elements(ctx), ctx.budget));
  } else if (what == "localcomm") {
    verdict_outcome(o, "locally_commutative",
                    is_locally_commutative(ctx.pair, test_elements(ctx), ctx.budget));
  } else if (what == "gelfand") {
    verdict_outcome(o, "gelfand", is_gelfand(ctx.pair, test_elements(ctx), ctx.budget));
  } else if (what == "cond31") {
    o = check_cond31(ctx);
  } else if (what == "l1bound") {
    auto f = parse_hecke(ctx.pair, single(ctx, "check l1bound"), ctx.budget);
    auto rep = check_l1_bound(f, ctx.opt.trials.value_or(100), ctx.opt.seed);
    o.result["property"] = "l1_bound";
    o.result["f"] = hecke_literal(f);
    o.result["l1_norm"] = l1_norm(f).str();
    o.result["trials"] = rep.trials;
    o.result["violations"] = rep.violations;
    o.result["indeterminate"] = rep.indeterminate;
    o.result["equalities"] = rep.equalities;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", rep.max_ratio);
    o.result["max_ratio"] = buf;
    if (!rep.first_violation.empty()) o.result["first_violation"] = rep.first_violation;
    o.failed = rep.violations > 0;
  } else if (what == "adjoint") {
    auto f = parse_hecke(ctx.pair, single(ctx, "check adjoint"), ctx.budget);
    std::string mode = ctx.opt.mode.empty() ? (ctx.pair->is_finite() ? "full" : "interior")
                                            : ctx.opt.mode;
    if (mode != "full" && mode != "interior") throw UsageError("--mode must be full or interior");
    CosetBall ball = mode == "full" && ctx.opt.generators.empty() && !ctx.opt.radius
                         ? full_ball(*ctx.pair, ctx.budget)
                         : make_ball(ctx, 3);
    auto rep = adjoint_check(f, ball, mode == "full" ? AdjointMode::Full : AdjointMode::Interior,
                             ctx.budget);
    o.result["property"] = "adjoint";
    o.result["mode"] = mode;
    o.result["basis_size"] = rep.basis_size;
    o.result["interior_size"] = rep.interior_size;
    o.result["compared_entries"] = rep.compared_entries;
    o.result["flat_is_adjoint"] = rep.flat_is_adjoint;
    o.result["sharp_is_adjoint"] = rep.sharp_is_adjoint;
    o.result["delta_trivial"] = rep.delta_trivial;
    if (rep.sharp_over_flat) o.result["sharp_over_flat"] = rat(*rep.sharp_over_flat);
    o.result["consistent"] = rep.consistent();
    o.failed = !rep.consistent();
  } else if (what == "subgroup") {
    auto rep = subgroup_check(*ctx.pair,
                              subgroup_samples(*ctx.pair, ctx.opt.trials.value_or(1000), ctx.opt.seed));
    o.result["property"] = "subgroup";
    o.result["checked"] = rep.checked;
    o.result["violations"] = rep.violations;
    if (!rep.first_violation.empty()) o.result["first_violation"] = rep.first_violation;
    o.failed = !rep.ok();
  } else {
    throw UsageError("unknown check '" + what + "'");
  }
  return o;
}

Outcome cmd_repmat(Context& ctx) {
  auto f = parse_hecke(ctx.pair, single(ctx, "repmat"), ctx.budget);
  CosetBall ball = make_ball(ctx, 2);
  RepMatrix m = lambda_matrix(f, ball);
  Outcome o;
  o.result["f"] = hecke_literal(f);
  o.result["radius"] = ball.radius();
  o.result["size"] = ball.size();
  json basis = json::array();
  for (std::size_t i = 0; i < ball.size(); ++i)
    basis.push_back({{"index", i},
                     {"key", ball.entries()[i].key.bytes},
                     {"rep", ball.entries()[i].rep.literal()},
                     {"distance", ball.entries()[i].distance}});
  o.result["basis"] = basis;
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::string row;
    for (std::size_t j = 0; j < m.size(); ++j) row += (j ? " " : "") + m.at(i, j).str();
    rows.push_back(row);
  }
  o.result["rows"] = rows;
  return o;
}

Outcome cmd_normbound(Context& ctx) {
  auto f = parse_hecke(ctx.pair, single(ctx, "normbound"), ctx.budget);
  CosetBall ball = make_ball(ctx, 3);
  double est = operator_norm_estimate(f, ball, ctx.opt.iterations);
  auto norm = l1_norm(f);
  Outcome o;
  o.exact = false;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", est);
  o.result["f"] = hecke_literal(f);
  o.result["radius"] = ball.radius();
  o.result["size"] = ball.size();
  o.result["estimate"] = buf;
  o.result["l1_norm"] = norm.str();
  o.result["within_l1"] = est <= norm.hi.to_double() + 1e-6;
  return o;
}

Outcome cmd_reduce(Context& ctx) {
  auto red = reduce_finite(ctx.pair);
  auto rep = check_reduction_isomorphism(ctx.pair, ctx.budget);
  Outcome o;
  json core = json::array();
  for (const auto& k : red.core) core.push_back(k.literal());
  o.result["core"] = core;
  o.result["quotient_order"] = red.quotient->group().elements()->size();
  o.result["quotient_subgroup_order"] = red.quotient->subgroup().elements->size();
  o.result["double_cosets"] = rep.double_cosets;
  o.result["quotient_double_cosets"] = rep.quotient_double_cosets;
  o.result["well_defined"] = rep.well_defined;
  o.result["bijective"] = rep.bijective;
  o.result["r_preserved"] = rep.r_preserved;
  o.result["delta_preserved"] = rep.delta_preserved;
  o.result["tables_match"] = rep.tables_match;
  o.result["quotient_reduced"] = rep.quotient_reduced;
  if (!rep.detail.empty()) o.result["detail"] = rep.detail;
  o.failed = !rep.ok();
  return o;
}

Outcome cmd_core(Context& ctx) {
  Outcome o;
  const Pair& p = *ctx.pair;
  json elems = json::array();
  if (p.is_finite()) {
    auto res = core_finite(p);
    const Group& g = p.group();
    bool normal = true;
    std::set<std::string> in_core;
    for (const auto& k : res.elements) in_core.insert(k.literal());
    const auto all = *g.elements();
    for (const auto& x : all)
      for (const auto& k : res.elements)
        if (!in_core.count(g.mul(g.mul(x, k), g.inv(x)).literal())) normal = false;
    for (const auto& k : res.elements) elems.push_back(k.literal());
    o.result["mode"] = "exact";
    o.result["size"] = res.elements.size();
    o.result["normal"] = normal;
    o.result["reduced"] = res.elements.size() == 1;
    o.result["core"] = elems;
    return o;
  }
  std::vector<GroupElement> conj, tests;
  if (!ctx.opt.conjugators.empty()) {
    conj = parse_element_list(ctx.opt.conjugators);
  } else if (p.group().kind() == ElementKind::Mat2) {
    const auto& mg = dynamic_cast<const Mat2Group&>(p.group());
    conj = sl2_core_conjugators(mg.family() == Mat2Group::Family::SL2ZInvP ? mg.prime() : 2);
  } else {
    throw UsageError("core on an infinite pair needs --conjugators");
  }
  if (!ctx.opt.elements.empty()) {
    tests = elements_in(ctx);
  } else if (p.group().kind() == ElementKind::Mat2) {
    tests = sl2z_word_ball(ctx.opt.radius.value_or(4));
  } else {
    throw UsageError("core on an infinite pair needs --element test elements");
  }
  auto res = core_bound(p, conj, tests);
  for (const auto& k : res.elements) elems.push_back(k.literal());
  o.result["mode"] = "bound";
  o.result["conjugators"] = conj.size();
  o.result["test_set"] = tests.size();
  o.result["survivors"] = elems;
  return o;
}

Outcome exp_local_comm(Context& ctx) {
  Outcome o;
  std::size_t examined = 0, at_identity = 0, full = 0;
  json separations = json::array();
  json non_commutative = json::array();
  for (const auto& p : small_finite_pairs(ctx.opt.max_order)) {
    ++examined;
    std::size_t before = p->steps_used();
    auto a = is_locally_commutative_at_identity(p, {}, ctx.budget);
    auto b = is_locally_commutative(p, {}, ctx.budget);
    ctx.extra_steps += p->steps_used() - before;
    if (a.holds()) ++at_identity;
    if (b.holds()) ++full;
    if (!b.holds()) non_commutative.push_back({{"pair", p->name()}, {"witness", b.witness}});
    if (a.holds() && !b.holds())
      separations.push_back({{"pair", p->name()}, {"witness", b.witness}});
  }
  o.result["experiment"] = "local_comm_at_H_vs_full";
  o.result["max_order"] = ctx.opt.max_order;
  o.result["pairs_examined"] = examined;
  o.result["at_identity_holds"] = at_identity;
  o.result["locally_commutative"] = full;
  o.result["conclusion"] = separations.empty() ? "no separation found within budget"
                                               : "separating example found";
  o.result["separations"] = separations;
  return o;
}

Outcome cmd_experiment(Context& ctx, const std::string& what) {
  if (what == "local_comm_at_H_vs_full") return exp_local_comm(ctx);
  if (what == "condition31_survey") {
    if (!ctx.pair) throw UsageError("condition31_survey needs --pair or --config");
    Outcome o = check_cond31(ctx);
    o.result["property"] = "condition_3_1";
    o.failed = false;
    return o;
  }
  throw UsageError("unknown experiment '" + what + "'");
}

// ---------------------------------------------------------------------------
// Output

std::string scalar_text(const json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find(' ') != std::string::npos || s.empty()) return "\"" + s + "\"";
    return s;
  }
  return v.dump();
}

void print_human(std::ostream& out, const json& result) {
  std::string line;
  for (const auto& [k, v] : result.items()) {
    if (v.is_structured()) continue;
    line += (line.empty() ? "" : " ") + k + "=" + scalar_text(v);
  }
  if (!line.empty()) out << line << '\n';
  for (const auto& [k, v] : result.items()) {
    if (!v.is_structured()) continue;
    out << k << ":\n";
    for (const auto& item : v) {
      if (item.is_object()) {
        std::string row;
        for (const auto& [ik, iv] : item.items()) row += (row.empty() ? "" : " ") + ik + "=" + scalar_text(iv);
        out << "  " << row << '\n';
      } else {
        out << "  " << (item.is_string() ? item.get<std::string>() : item.dump()) << '\n';
      }
    }
  }
}

json input_json(const Options& opt, const std::string& command) {
  json in;
  in["command"] = command;
  if (!opt.pair_name.empty()) in["pair"] = opt.pair_name;
  if (!opt.config.empty()) in["config"] = opt.config;
  if (!opt.elements.empty()) in["element"] = opt.elements;
  if (opt.budget) in["budget"] = *opt.budget;
  in["seed"] = opt.seed;
  if (opt.trials) in["trials"] = *opt.trials;
  if (opt.radius) in["radius"] = *opt.radius;
  if (opt.samples) in["samples"] = *opt.samples;
  if (!opt.mode.empty()) in["mode"] = opt.mode;
  if (!opt.generators.empty()) in["generators"] = opt.generators;
  if (!opt.conjugators.empty()) in["conjugators"] = opt.conjugators;
  if (!opt.at.empty()) in["at"] = opt.at;
  return in;
}

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--pair", opt.pair_name, "built-in pair name");
  sub->add_option("--config", opt.config, "pair config file");
  sub->add_option("--element", opt.elements, "element or Hecke-element literal (repeatable)");
  sub->add_option("--budget", opt.budget, "max cosets per enumeration (steps = 64x)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", opt.seed, "random seed");
  sub->add_option("--trials", opt.trials, "number of random trials")->check(CLI::PositiveNumber);
  sub->add_option("--radius", opt.radius, "coset ball radius");
  sub->add_option("--samples", opt.samples, "sampled elements on infinite pairs")
      ->check(CLI::PositiveNumber);
  sub->add_option("--mode", opt.mode, "adjoint mode: full | interior");
  sub->add_option("--generators", opt.generators, "ball generators, ';'-separated");
  sub->add_option("--conjugators", opt.conjugators, "core conjugators, ';'-separated");
  sub->add_option("--at", opt.at, "evaluate the product at this element");
  sub->add_option("--iterations", opt.iterations, "power iteration cap")->check(CLI::PositiveNumber);
  sub->add_option("--max-order", opt.max_order, "largest group order searched")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--json", opt.json_out, "one JSON object per line");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  std::string name;
  CLI::App app{"Hecke algebras of discrete Hecke pairs", "hecke"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> plain{
      {"analyze", "L, R, delta and double coset of an element"},
      {"decompose", "right cosets of a double coset"},
      {"convolve", "product of Hecke algebra elements"},
      {"table", "structure constants of a finite pair"},
      {"repmat", "matrix of lambda(f) on a coset ball"},
      {"normbound", "operator norm estimate against the l1 norm"},
      {"reduce", "reduction by the core"},
      {"core", "core of H, exact or bounded"}};
  for (const auto& [c, d] : plain) add_common(app.add_subcommand(c, d), opt);
  auto* check = app.add_subcommand("check", "verify a property");
  check->add_option("property", name, "unimodular|localcomm|gelfand|cond31|l1bound|adjoint|subgroup")
      ->required()
      ->check(CLI::IsMember(
          {"unimodular", "localcomm", "gelfand", "cond31", "l1bound", "adjoint", "subgroup"}));
  add_common(check, opt);
  auto* experiment = app.add_subcommand("experiment", "run an exploratory search");
  experiment->add_option("name", name, "local_comm_at_H_vs_full|condition31_survey")
      ->required()
      ->check(CLI::IsMember({"local_comm_at_H_vs_full", "condition31_survey"}));
  add_common(experiment, opt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return ExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  Context ctx;
  ctx.opt = opt;
  try {
    ctx.budget = opt.budget ? Budget::of(*opt.budget) : Budget::from_env();
    bool needs_pair = !(command == "experiment" && name == "local_comm_at_H_vs_full");
    if (!opt.pair_name.empty() && !opt.config.empty())
      throw UsageError("give either --pair or --config, not both");
    if (!opt.pair_name.empty()) {
      ctx.pair = builtin(opt.pair_name);
    } else if (!opt.config.empty()) {
      std::ifstream in(opt.config);
      if (!in) throw UsageError("cannot read config file " + opt.config);
      std::stringstream buf;
      buf << in.rdbuf();
      ctx.pair = load_pair(buf.str());
    } else if (needs_pair) {
      throw UsageError(command + " needs --pair or --config");
    }

    std::size_t before = ctx.pair ? ctx.pair->steps_used() : 0;
    Outcome o;
    if (command == "analyze") o = cmd_analyze(ctx);
    else if (command == "decompose") o = cmd_decompose(ctx);
    else if (command == "convolve") o = cmd_convolve(ctx);
    else if (command == "table") o = cmd_table(ctx);
    else if (command == "check") o = cmd_check(ctx, name);
    else if (command == "repmat") o = cmd_repmat(ctx);
    else if (command == "normbound") o = cmd_normbound(ctx);
    else if (command == "reduce") o = cmd_reduce(ctx);
    else if (command == "core") o = cmd_core(ctx);
    else o = cmd_experiment(ctx, name);
    std::size_t used = (ctx.pair ? ctx.pair->steps_used() - before : 0) + ctx.extra_steps;

    std::string full = command == "check" || command == "experiment" ? command + " " + name : command;
    if (opt.json_out) {
      json j;
      j["command"] = full;
      j["pair"] = ctx.pair ? json(ctx.pair->name()) : json(nullptr);
      j["input"] = input_json(opt, full);
      j["result"] = o.result;
      j["budget_used"] = used;
      j["exact"] = o.exact;
      out << j.dump() << '\n';
    } else {
      print_human(out, o.result);
    }
    if (o.diverged) return ExitDiverged;
    return o.failed ? ExitCheckFailed : ExitOk;
  } catch (const Diverged& e) {
    err << "diverged: " << e.what() << " (frontier " << e.frontier() << ")\n";
    return ExitDiverged;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitUsage;
  }
}

}  // namespace hecke::cli
