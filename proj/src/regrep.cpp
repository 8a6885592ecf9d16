#include "hecke/regrep.hpp"

#include <cmath>
#include <complex>
#include <unordered_set>

#include "hecke/random.hpp"

namespace hecke {

// ---------------------------------------------------------------------------
// L2Vector

L2Vector L2Vector::indicator(const Pair& pair, const GroupElement& x) {
  L2Vector v;
  v.add(coset_key(pair, x), x, CRational(1));
  return v;
}

void L2Vector::add(const CosetKey& key, const GroupElement& rep, const CRational& value) {
  if (value.is_zero()) return;
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, L2Entry{rep, value});
    return;
  }
  it->second.value += value;
  if (it->second.value.is_zero()) entries_.erase(it);
}

CRational L2Vector::value(const CosetKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? CRational{} : it->second.value;
}

Rational L2Vector::norm2_squared() const {
  Rational total(0);
  for (const auto& [k, e] : entries_) total += e.value.norm_squared();
  return total;
}

bool operator==(const L2Vector& a, const L2Vector& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (auto ia = a.entries_.begin(), ib = b.entries_.begin(); ia != a.entries_.end(); ++ia, ++ib)
    if (ia->first != ib->first || !(ia->second.value == ib->second.value)) return false;
  return true;
}

L2Vector act(const HeckeElement& f, const L2Vector& xi) {
  // For fixed y, the x with x y^-1 in D = U H c_i are exactly the cosets H c_i y.
  const Pair& pair = *f.pair();
  const Group& g = pair.group();
  L2Vector out;
  for (const auto& [ky, entry] : xi.entries())
    for (const auto& [kd, term] : f.terms()) {
      CRational contribution = term.coeff * entry.value;
      for (const auto& c : term.coset->right_coset_reps()) {
        GroupElement x = g.mul(c, entry.rep);
        out.add(coset_key(pair, x), x, contribution);
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// CosetBall

CosetBall::CosetBall(std::vector<BallEntry> entries, std::vector<GroupElement> generators,
                     std::size_t radius)
    : entries_(std::move(entries)), generators_(std::move(generators)), radius_(radius) {
  for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].key.bytes, i);
}

std::optional<std::size_t> CosetBall::find(const CosetKey& k) const {
  auto it = index_.find(k.bytes);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CosetBall build_ball(const Pair& pair, const std::vector<GroupElement>& generators,
                     std::size_t radius, const Budget& budget) {
  const Group& g = pair.group();
  std::vector<BallEntry> entries;
  std::unordered_set<std::string> seen;
  GroupElement e = g.identity();
  CosetKey k0 = coset_key(pair, e);
  entries.push_back({k0, e, 0});
  seen.insert(k0.bytes);
  std::size_t frontier_begin = 0;
  for (std::size_t r = 1; r <= radius; ++r) {
    std::size_t frontier_end = entries.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const auto& s : generators) {
        GroupElement x = g.mul(entries[i].rep, s);
        CosetKey k = coset_key(pair, x);
        if (!seen.insert(k.bytes).second) continue;
        if (entries.size() >= budget.max_cosets)
          throw BudgetExceeded("coset ball exceeds " + std::to_string(budget.max_cosets) +
                                   " cosets",
                               entries.size() - i);
        entries.push_back({std::move(k), std::move(x), r});
      }
    }
    if (frontier_end == entries.size()) break;
    frontier_begin = frontier_end;
  }
  return CosetBall(std::move(entries), generators, radius);
}

CosetBall full_ball(const Pair& pair, const Budget& budget) {
  auto elems = pair.group().elements();
  if (!elems) throw NotFinite("full_ball: pair " + pair.name() + " is not finite");
  auto gens = pair.group().generators();
  if (gens.empty()) gens = *elems;
  return build_ball(pair, gens, elems->size(), budget);
}

// ---------------------------------------------------------------------------
// RepMatrix

RepMatrix RepMatrix::adjoint() const {
  RepMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out.at(i, j) = at(j, i).conj();
  return out;
}

bool RepMatrix::is_zero() const {
  for (const auto& z : a_)
    if (!z.is_zero()) return false;
  return true;
}

RepMatrix operator*(const RepMatrix& x, const RepMatrix& y) {
  if (x.n_ != y.n_) throw BadParameter("RepMatrix: size mismatch");
  RepMatrix out(x.n_);
  for (std::size_t i = 0; i < x.n_; ++i)
    for (std::size_t k = 0; k < x.n_; ++k) {
      const auto& a = x.at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < x.n_; ++j)
        if (!y.at(k, j).is_zero()) out.at(i, j) += a * y.at(k, j);
    }
  return out;
}

bool operator==(const RepMatrix& x, const RepMatrix& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

RepMatrix lambda_matrix(const HeckeElement& f, const CosetBall& ball) {
  const Group& g = f.pair()->group();
  const auto& basis = ball.entries();
  RepMatrix m(basis.size());
  std::vector<GroupElement> inverses;
  inverses.reserve(basis.size());
  for (const auto& b : basis) inverses.push_back(g.inv(b.rep));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      m.at(i, j) = f.value_at(g.mul(basis[i].rep, inverses[j]));
  return m;
}

// ---------------------------------------------------------------------------
// l1 bound

int compare_l1_bound(const HeckeElement& f, const L2Vector& xi, bool* equality) {
  Rational lhs = act(f, xi).norm2_squared();
  Rational xi2 = xi.norm2_squared();
  // ||f||_1^2 expanded as sum R_i R_j sqrt(|c_i|^2 |c_j|^2), exact on perfect squares.
  std::vector<std::pair<Rational, Rational>> w;
  for (const auto& [k, t] : f.terms())
    w.emplace_back(Rational(static_cast<long>(t.coset->r_value())), t.coeff.norm_squared());
  RationalInterval norm2 = RationalInterval::exact(Rational(0));
  for (const auto& [ri, qi] : w)
    for (const auto& [rj, qj] : w) norm2 += sqrt_enclosure(qi * qj, 64).scaled(ri * rj);
  Rational upper = norm2.hi * xi2;
  Rational lower = norm2.lo * xi2;
  if (equality) *equality = norm2.is_exact() && lhs == upper;
  if (lhs > upper) return 1;
  if (lhs > lower) return 0;
  return -1;
}

L2Vector random_vector(const Pair& pair, std::uint64_t seed, std::size_t max_support) {
  Rng rng(seed);
  L2Vector xi;
  auto count = 1 + rng.below(max_support);
  for (std::uint64_t i = 0; i < count; ++i) {
    GroupElement x = random_element(pair, rng, 3);
    Rational re(rng.between(-4, 4), rng.between(1, 3));
    Rational im(rng.between(-4, 4), rng.between(1, 3));
    if (rng.below(2) == 0) im = Rational(0);
    xi.add(coset_key(pair, x), x, CRational(re, im));
  }
  if (xi.support_size() == 0) xi = L2Vector::indicator(pair, pair.group().identity());
  return xi;
}

L1BoundReport check_l1_bound(const HeckeElement& f, std::size_t trials, std::uint64_t seed) {
  L1BoundReport report;
  Rng seeds(seed);
  RationalInterval norm = l1_norm(f);
  for (std::size_t t = 0; t < trials; ++t) {
    L2Vector xi = random_vector(*f.pair(), seeds.next());
    bool eq = false;
    int verdict = compare_l1_bound(f, xi, &eq);
    ++report.trials;
    if (eq) ++report.equalities;
    Rational lhs = act(f, xi).norm2_squared();
    double denom = norm.hi.to_double() * norm.hi.to_double() * xi.norm2_squared().to_double();
    if (denom > 0) report.max_ratio = std::max(report.max_ratio, lhs.to_double() / denom);
    if (verdict == 1) {
      if (report.violations++ == 0) {
        report.first_violation = "trial " + std::to_string(t) + ": ||f*xi||^2=" + lhs.str() +
                                 " > ||f||_1^2 ||xi||^2=" +
                                 (norm.hi * norm.hi * xi.norm2_squared()).str();
      }
    } else if (verdict == 0) {
      ++report.indeterminate;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Adjoint check

AdjointReport adjoint_check(const HeckeElement& f, const CosetBall& ball, AdjointMode mode,
                            const Budget& budget) {
  const Pair& pair = *f.pair();
  AdjointReport report;
  report.mode = mode;
  report.basis_size = ball.size();
  if (mode == AdjointMode::Full && !pair.is_finite())
    throw NotFinite("adjoint_check full mode needs a finite pair");

  std::vector<std::size_t> interior;
  if (mode == AdjointMode::Full) {
    for (std::size_t i = 0; i < ball.size(); ++i) interior.push_back(i);
  } else {
    std::size_t margin = 0;
    for (const auto& [k, t] : f.terms())
      for (const auto& key : t.coset->keys()) {
        auto pos = ball.find(key);
        margin = std::max(margin, pos ? ball.entries()[*pos].distance : ball.radius() + 1);
      }
    if (margin <= ball.radius())
      for (std::size_t i = 0; i < ball.size(); ++i)
        if (ball.entries()[i].distance <= ball.radius() - margin) interior.push_back(i);
  }
  if (interior.empty()) throw BallTooSmall("adjoint_check: interior of the ball is empty");
  report.interior_size = interior.size();

  report.delta_trivial = true;
  for (const auto& [k, t] : f.terms())
    if (delta(pair, t.coset->rep(), budget) != Rational(1)) report.delta_trivial = false;

  RepMatrix m = lambda_matrix(f, ball);
  RepMatrix flat = lambda_matrix(involution_flat(f, budget), ball);
  RepMatrix sharp = lambda_matrix(involution_sharp(f, budget), ball);
  report.flat_is_adjoint = true;
  report.sharp_is_adjoint = true;
  for (auto i : interior)
    for (auto j : interior) {
      ++report.compared_entries;
      CRational dagger = m.at(j, i).conj();
      if (!(flat.at(i, j) == dagger)) report.flat_is_adjoint = false;
      if (!(sharp.at(i, j) == dagger)) report.sharp_is_adjoint = false;
      if (!report.sharp_over_flat && !(sharp.at(i, j) == flat.at(i, j)) &&
          !flat.at(i, j).is_zero()) {
        CRational ratio = sharp.at(i, j) / flat.at(i, j);
        if (ratio.is_real()) report.sharp_over_flat = ratio.re;
      }
    }
  return report;
}

// ---------------------------------------------------------------------------
// Operator norm

double operator_norm_estimate(const HeckeElement& f, const CosetBall& ball,
                              std::size_t iterations) {
  using C = std::complex<double>;
  RepMatrix exact = lambda_matrix(f, ball);
  const std::size_t n = exact.size();
  if (n == 0) return 0.0;
  std::vector<C> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i * n + j] = C(exact.at(i, j).re.to_double(), exact.at(i, j).im.to_double());

  // Rayleigh quotients never exceed the true value, so the better of two seeds
  // is kept: all-ones can sit in an invariant subspace missing the top vector.
  auto run = [&](std::vector<C> v) {
    std::vector<C> w(n), u(n);
    double lambda = 0.0;
    for (std::size_t it = 0; it < iterations; ++it) {
      // u = A v, w = A^dagger u
      for (std::size_t i = 0; i < n; ++i) {
        C s = 0;
        for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * v[j];
        u[i] = s;
      }
      for (std::size_t j = 0; j < n; ++j) {
        C s = 0;
        for (std::size_t i = 0; i < n; ++i) s += std::conj(a[i * n + j]) * u[i];
        w[j] = s;
      }
      double vnorm2 = 0.0, rayleigh = 0.0, wnorm = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        vnorm2 += std::norm(v[i]);
        rayleigh += std::norm(u[i]);
        wnorm += std::norm(w[i]);
      }
      if (wnorm == 0.0) return rayleigh / vnorm2;
      double next = rayleigh / vnorm2;
      wnorm = std::sqrt(wnorm);
      for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wnorm;
      bool converged = it > 0 && std::abs(next - lambda) <= 1e-9 * next;
      lambda = next;
      if (converged) break;
    }
    return lambda;
  };
  std::vector<C> ones(n, C(1.0, 0.0)), skew(n);
  Rng rng(0x5eed);
  auto unit = [&] { return static_cast<double>(rng.next() >> 11) * 0x1p-53; };
  for (auto& z : skew) z = C(0.5 + unit(), unit() - 0.5);
  double lambda = std::max(run(std::move(ones)), run(std::move(skew)));
  return std::sqrt(lambda);
}

}  // namespace hecke
