#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "braid.hpp"
#include "classify.hpp"
#include "error.hpp"
#include "sl2.hpp"

namespace braidmod {

// Braid-valued homomorphism of a genus-g surface group: images of the
// standard handle generators a_1, b_1, ..., a_g, b_g, all on n strands.
struct SurfaceHom {
  int strands = 1;
  int genus = 1;
  std::vector<BraidWord> images;  // 2*genus words: a_1, b_1, a_2, b_2, ...
};

inline void check_surface_hom(const SurfaceHom& h) {
  if (h.genus < 1) fail(Err::DegenerateSurface, "genus must be at least 1");
  if (static_cast<int>(h.images.size()) != 2 * h.genus)
    fail(Err::MalformedToken, "expected 2*genus generator images");
  for (const BraidWord& w : h.images)
    if (w.strands != h.strands) fail(Err::StrandMismatch, "image strand counts disagree");
}

// Orbits of {1..n} under the permutations of all generator images; each
// orbit ascending, orbits ordered by smallest element.
inline std::vector<std::vector<int>> orbit_partition(const SurfaceHom& h) {
  check_surface_hom(h);
  int n = h.strands;
  std::vector<int> parent(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) parent[static_cast<size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (const BraidWord& w : h.images) {
    Permutation p = permutation(w);
    for (int i = 1; i <= n; ++i) {
      int a = find(i), b = find(p(i));
      if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::vector<std::vector<int>> orbits;
  std::vector<int> where(static_cast<size_t>(n) + 1, -1);
  for (int i = 1; i <= n; ++i) {
    int r = find(i);
    if (where[static_cast<size_t>(r)] < 0) {
      where[static_cast<size_t>(r)] = static_cast<int>(orbits.size());
      orbits.emplace_back();
    }
    orbits[static_cast<size_t>(where[static_cast<size_t>(r)])].push_back(i);
  }
  return orbits;
}

// Image of the boundary loop: prod_j [phi(a_j), phi(b_j)].
inline BraidWord boundary_monodromy(const SurfaceHom& h) {
  check_surface_hom(h);
  BraidWord out;
  out.strands = h.strands;
  for (int j = 0; j < h.genus; ++j) {
    const BraidWord& a = h.images[static_cast<size_t>(2 * j)];
    const BraidWord& b = h.images[static_cast<size_t>(2 * j + 1)];
    out = compose(out, compose(compose(a, b), compose(inverse(a), inverse(b))));
  }
  return out;
}

// ---- commutator criterion on 3 strands ----

struct Cor81Verdict {
  enum class Kind { MustBeTrivial, HypothesisFails, Contradiction } kind;
  bool verified = false;  // MustBeTrivial: commutator confirmed trivial
  std::string which;      // HypothesisFails: first failing condition
  BraidWord commutator;
};

inline BraidWord commutator(const BraidWord& x, const BraidWord& y) {
  return compose(compose(x, y), compose(inverse(x), inverse(y)));
}

namespace detail {

inline bool zero_entropy_3(const BraidWord& b) {
  return !std::holds_alternative<Hyperbolic>(sl2_type(theta(b)));
}

}  // namespace detail

// If h(b1), h(b2), h([b1,b2]), h(b2 b1^-1), h(b2 b1^-2) all vanish -- or b2
// is pure and the first three vanish -- then [b1, b2] must be trivial.
// The verdict reports a verified instance, the first failing hypothesis, or
// a contradiction if the conclusion fails while the hypothesis holds.
inline Cor81Verdict corollary_8_1_check(const BraidWord& b1, const BraidWord& b2) {
  if (b1.strands != 3 || b2.strands != 3)
    fail(Err::NotThreeStrands, "commutator criterion is for 3-strand words");

  Cor81Verdict v;
  v.commutator = commutator(b1, b2);

  const BraidWord q1 = compose(b2, inverse_power(b1, -1));
  const BraidWord q2 = compose(b2, inverse_power(b1, -2));
  const BraidWord* five[] = {&b1, &b2, &v.commutator, &q1, &q2};
  const char* labels[] = {"h(b1)>0", "h(b2)>0", "h([b1,b2])>0", "h(b2*b1^-1)>0", "h(b2*b1^-2)>0"};

  bool zero[5];
  int first_fail = -1;
  for (int i = 0; i < 5; ++i) {
    zero[i] = detail::zero_entropy_3(*five[i]);
    if (!zero[i] && first_fail < 0) first_fail = i;
  }
  bool five_ok = first_fail < 0;
  bool pure_ok = permutation(b2).is_identity() && zero[0] && zero[1] && zero[2];

  if (!five_ok && !pure_ok) {
    v.kind = Cor81Verdict::Kind::HypothesisFails;
    v.which = labels[first_fail];
    return v;
  }
  v.verified = is_trivial_3(v.commutator);
  v.kind = v.verified ? Cor81Verdict::Kind::MustBeTrivial : Cor81Verdict::Kind::Contradiction;
  return v;
}

// ---- reducibility thresholds ----

inline bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long i = 2; i * i <= n; ++i)
    if (n % i == 0) return false;
  return true;
}

struct GorinLinVerdict {
  bool must_be_reducible;
  double threshold;  // n * 2*pi/log 2
};

// Reducibility threshold for an n-strand class (n prime) of conformal
// module m and exponent sum d: module above n*2pi/log2 together with n | d
// forces a reducible class.
inline GorinLinVerdict gorin_lin_check(long long n, double m, long long d) {
  if (!is_prime_ll(n)) fail(Err::NotPrime, "strand count must be prime");
  double threshold = static_cast<double>(n) * 2.0 * M_PI / std::log(2.0);
  return {m > threshold && d % n == 0, threshold};
}

// Lower bound log2/(4n-8) for the entropy of a pseudo-Anosov n-braid.
inline double penner_bound(int n) {
  if (4 * n - 8 <= 0) fail(Err::DegenerateSurface, "bound needs at least 3 strands");
  return std::log(2.0) / (4.0 * n - 8.0);
}

// Same bound on a genus-g surface with s punctures: log2/(12g-12+4s).
inline double penner_bound_gs(int g, int s) {
  if (g < 0 || s < 0) fail(Err::DegenerateSurface, "negative genus or puncture count");
  if (12 * g - 12 + 4 * s <= 0) fail(Err::DegenerateSurface, "surface carries no pseudo-Anosov map");
  return std::log(2.0) / (12.0 * g - 12.0 + 4.0 * s);
}

// ---- discriminant loops ----

using Cplx = std::complex<double>;

// Coefficient lists are low to high: p = z^n + c[n-1] z^{n-1} + ... + c[0].
struct PolyLoop {
  int degree = 0;
  std::vector<std::vector<Cplx>> samples;  // each of size degree; closed loop
};

// Discriminant of the monic polynomial via the Sylvester resultant of (p, p').
inline Cplx discriminant(const std::vector<Cplx>& coeffs) {
  int n = static_cast<int>(coeffs.size());
  if (n < 2) fail(Err::DegreeTooSmall, "discriminant needs degree at least 2");

  // Rows of p (high to low) and p'.
  std::vector<Cplx> prow(static_cast<size_t>(n) + 1);
  prow[0] = 1.0;
  for (int i = 1; i <= n; ++i) prow[static_cast<size_t>(i)] = coeffs[static_cast<size_t>(n - i)];
  std::vector<Cplx> qrow(static_cast<size_t>(n));
  qrow[0] = static_cast<double>(n);
  for (int i = 1; i < n; ++i)
    qrow[static_cast<size_t>(i)] = static_cast<double>(n - i) * coeffs[static_cast<size_t>(n - i)];

  int dim = 2 * n - 1;
  std::vector<std::vector<Cplx>> m(static_cast<size_t>(dim),
                                   std::vector<Cplx>(static_cast<size_t>(dim), Cplx(0.0)));
  for (int r = 0; r < n - 1; ++r)
    for (int c2 = 0; c2 <= n; ++c2) m[static_cast<size_t>(r)][static_cast<size_t>(r + c2)] = prow[static_cast<size_t>(c2)];
  for (int r = 0; r < n; ++r)
    for (int c2 = 0; c2 < n; ++c2)
      m[static_cast<size_t>(n - 1 + r)][static_cast<size_t>(r + c2)] = qrow[static_cast<size_t>(c2)];

  // LU determinant with partial pivoting.
  Cplx det(1.0);
  for (int col = 0; col < dim; ++col) {
    int piv = col;
    double best = std::abs(m[static_cast<size_t>(col)][static_cast<size_t>(col)]);
    for (int r = col + 1; r < dim; ++r) {
      double cand = std::abs(m[static_cast<size_t>(r)][static_cast<size_t>(col)]);
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best == 0.0) return Cplx(0.0);
    if (piv != col) {
      std::swap(m[static_cast<size_t>(piv)], m[static_cast<size_t>(col)]);
      det = -det;
    }
    Cplx p = m[static_cast<size_t>(col)][static_cast<size_t>(col)];
    det *= p;
    for (int r = col + 1; r < dim; ++r) {
      Cplx f = m[static_cast<size_t>(r)][static_cast<size_t>(col)] / p;
      if (f == Cplx(0.0)) continue;
      for (int c2 = col; c2 < dim; ++c2)
        m[static_cast<size_t>(r)][static_cast<size_t>(c2)] -= f * m[static_cast<size_t>(col)][static_cast<size_t>(c2)];
    }
  }
  bool flip = (static_cast<long long>(n) * (n - 1) / 2) % 2 != 0;
  return flip ? -det : det;
}

// Winding number of the discriminant along a closed loop of monic
// polynomials, by summing principal-value argument increments.
inline long long winding_index(const PolyLoop& loop) {
  if (loop.degree < 2) fail(Err::DegreeTooSmall, "winding needs degree at least 2");
  if (loop.samples.size() < 8) fail(Err::InsufficientSampling, "need at least 8 samples");
  if (loop.samples.front() != loop.samples.back())
    fail(Err::MalformedToken, "loop is not closed");
  for (const auto& s : loop.samples)
    if (static_cast<int>(s.size()) != loop.degree)
      fail(Err::MalformedToken, "sample has wrong coefficient count");

  std::vector<Cplx> vals;
  vals.reserve(loop.samples.size());
  for (const auto& s : loop.samples) {
    Cplx d = discriminant(s);
    if (std::abs(d) < 1e-300) fail(Err::DiscriminantVanishes, "discriminant vanishes on the loop");
    vals.push_back(d);
  }
  double total = 0.0;
  for (size_t i = 0; i + 1 < vals.size(); ++i) {
    double delta = std::arg(vals[i + 1] / vals[i]);
    if (std::abs(delta) >= M_PI * (1.0 - 1e-9))
      fail(Err::InsufficientSampling, "argument jump of at least pi between samples");
    total += delta;
  }
  double turns = total / (2.0 * M_PI);
  long long idx = std::llround(turns);
  if (std::abs(turns - static_cast<double>(idx)) > 1e-6)
    fail(Err::InsufficientSampling, "winding did not close up to an integer");
  return idx;
}

// ---- torus bundle monodromy ----

struct BundlePeriodic {
  int order;  // 1, 2, 3, 4 or 6
};
struct BundleParabolicTwist {
  int sign;
  Int k;
};
struct BundleAnosov {
  Int trace;
  ExtReal entropy;
  ExtReal module;
};
using BundleClass = std::variant<BundlePeriodic, BundleParabolicTwist, BundleAnosov>;

inline BundleClass bundle_classify(const SL2Matrix& m) {
  SL2Type t = sl2_type(m);
  if (std::holds_alternative<Identity>(t)) return BundlePeriodic{1};
  if (std::holds_alternative<MinusIdentity>(t)) return BundlePeriodic{2};
  if (auto* e = std::get_if<Elliptic>(&t)) return BundlePeriodic{e->order};
  if (auto* p = std::get_if<Parabolic>(&t)) return BundleParabolicTwist{p->sign, p->k};
  auto hy = std::get<Hyperbolic>(t);
  ExtReal h = ExtReal::from_trace(hy.trace, 1);
  return BundleAnosov{hy.trace, h, module_from_entropy(h)};
}

// A 3-strand word mapping to m under theta: R lifts to sigma_1, L to
// sigma_2^{-1}, and a leading minus to the full twist Delta^2.
inline BraidWord project_bundle(const SL2Matrix& m) {
  RLWord w = sl2_decompose(m);
  Int count = 0;
  for (const auto& [f, e] : w.factors) count += e < 0 ? -e : e;
  if (count > 2'000'000) fail(Err::LengthBoundExceeded, "matrix entries too large to lift");

  BraidWord out;
  out.strands = 3;
  for (const auto& [f, e] : w.factors) {
    long long reps = (e < 0 ? -e : e).convert_to<long long>();
    int letter = f == 'R' ? (e > 0 ? 1 : -1) : (e > 0 ? -2 : 2);
    for (long long i = 0; i < reps; ++i) out.letters.push_back(letter);
  }
  if (w.sign == -1) {
    static const int full_twist[6] = {1, 2, 1, 1, 2, 1};
    out.letters.insert(out.letters.end(), full_twist, full_twist + 6);
  }
  return out;
}

// ---- abelian transitive monodromy groups ----

struct AbelianTransitiveVerdict {
  enum class Kind { Verified, HypothesisFails, Contradiction } kind;
  std::string which;                     // HypothesisFails: "not_abelian" | "not_transitive"
  std::optional<Permutation> generator;  // Verified: n-cycle generating the group
};

// A transitive abelian permutation group of prime degree is cyclic of order
// n, generated by an n-cycle.  Verifies this on the given generators and
// returns the lexicographically least generating n-cycle as witness.
inline AbelianTransitiveVerdict abelian_transitive_check(const std::vector<Permutation>& gens,
                                                         int n) {
  if (!is_prime_ll(n)) fail(Err::NotPrime, "degree must be prime");
  for (const Permutation& g : gens)
    if (g.size() != n) fail(Err::StrandMismatch, "generator degree mismatch");

  AbelianTransitiveVerdict v;
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (!(compose(gens[i], gens[j]) == compose(gens[j], gens[i]))) {
        v.kind = AbelianTransitiveVerdict::Kind::HypothesisFails;
        v.which = "not_abelian";
        return v;
      }

  std::vector<int> root(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) root[static_cast<size_t>(i)] = i;
  auto find = [&](int x) {
    while (root[static_cast<size_t>(x)] != x) x = root[static_cast<size_t>(x)] = root[static_cast<size_t>(root[static_cast<size_t>(x)])];
    return x;
  };
  for (const Permutation& g : gens)
    for (int i = 1; i <= n; ++i) {
      int a = find(i), b = find(g(i));
      if (a != b) root[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
  for (int i = 2; i <= n; ++i)
    if (find(i) != find(1)) {
      v.kind = AbelianTransitiveVerdict::Kind::HypothesisFails;
      v.which = "not_transitive";
      return v;
    }

  // Closure under multiplication.
  std::set<std::vector<int>> seen;
  std::vector<Permutation> group{Permutation::identity(n)};
  seen.insert(group[0].images);
  for (size_t head = 0; head < group.size(); ++head) {
    for (const Permutation& g : gens) {
      Permutation nx = compose(group[head], g);
      if (seen.insert(nx.images).second) group.push_back(nx);
    }
    if (group.size() > 10000) fail(Err::InternalInconsistency, "closure grew past any abelian bound");
  }

  const Permutation* witness = nullptr;
  for (const Permutation& g : group) {
    if (g.cycles().size() != 1) continue;  // want a single n-cycle
    if (witness == nullptr || g.images < witness->images) witness = &g;
  }
  if (static_cast<int>(group.size()) != n || witness == nullptr) {
    v.kind = AbelianTransitiveVerdict::Kind::Contradiction;
    v.which = "group is not cyclic of prime order";
    return v;
  }
  v.kind = AbelianTransitiveVerdict::Kind::Verified;
  v.generator = *witness;
  return v;
}

}  // namespace braidmod
