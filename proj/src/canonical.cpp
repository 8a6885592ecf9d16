#include "hecke/canonical.hpp"

#include <algorithm>
#include <cstdio>

namespace hecke::canonical {

Canonicalizer axb_mod() {
  return [](const GroupElement& x) {
    const auto& e = x.as<AxB>();
    return CosetKey{"axb:" + e.a.str() + "," + e.b.mod(e.a).str()};
  };
}

Canonicalizer hnf() {
  return [](const GroupElement& x) {
    const auto& m = x.as<Mat2>().m;
    mpz_class d = 1;
    for (const auto& e : m) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.den().get_mpz_t());
    std::array<mpz_class, 4> z;
    for (int i = 0; i < 4; ++i) z[i] = m[i].num() * (d / m[i].den());
    mpz_class det = z[0] * z[3] - z[1] * z[2];
    if (det <= 0) throw KindMismatch("hnf canonicalizer needs positive determinant");
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), z[0].get_mpz_t(), z[2].get_mpz_t());
    // U = [[s, t], [-z2/g, z0/g]] has determinant 1 and kills the lower-left entry.
    mpz_class top_right = s * z[1] + t * z[3];
    mpz_class bottom_right = det / g;
    mpz_class q;
    mpz_fdiv_r(q.get_mpz_t(), top_right.get_mpz_t(), bottom_right.get_mpz_t());
    return CosetKey{"hnf:" + Rational(g, d).str() + "," + Rational(q, d).str() + "," +
                    Rational(bottom_right, d).str()};
  };
}

Canonicalizer finite_min(const GroupPtr& group, const std::vector<GroupElement>& h_elements) {
  auto index = std::make_shared<ElementIndex>(*group);
  return [group, index, h_elements](const GroupElement& x) {
    std::size_t best = index->size();
    for (const auto& h : h_elements) best = std::min(best, index->index_of(group->mul(h, x)));
    char buf[32];
    std::snprintf(buf, sizeof buf, "fin:%08zu", best);
    return CosetKey{buf};
  };
}

Canonicalizer free_strip(std::vector<int> subgroup_letters) {
  return [letters = std::move(subgroup_letters)](const GroupElement& x) {
    const auto& w = x.as<Word>().letters;
    std::size_t i = 0;
    while (i < w.size() &&
           std::find(letters.begin(), letters.end(), w[i] > 0 ? w[i] : -w[i]) != letters.end())
      ++i;
    Word rest;
    rest.letters.assign(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    return CosetKey{"free:" + GroupElement(rest).literal().substr(5)};
  };
}

Bucketizer denominator_profile() {
  return [](const GroupElement& x) -> std::string {
    if (!x.is<Mat2>()) return "";
    const auto& m = x.as<Mat2>();
    mpz_class d = 1;
    for (const auto& e : m.m) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.den().get_mpz_t());
    return d.get_str() + "|" + m.det().str();
  };
}

}  // namespace hecke::canonical
