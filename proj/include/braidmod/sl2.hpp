#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <utility>
#include <variant>
#include <vector>

#include "braid.hpp"
#include "error.hpp"

namespace braidmod {

using Int = boost::multiprecision::cpp_int;

struct SL2Matrix {
  Int a{1}, b{0}, c{0}, d{1};  // row major [[a,b],[c,d]]

  SL2Matrix() = default;
  SL2Matrix(Int a_, Int b_, Int c_, Int d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (a * d - b * c != 1) fail(Err::NotUnimodular, "matrix determinant is not 1");
  }

  static SL2Matrix identity() { return SL2Matrix(); }

  Int trace() const { return a + d; }
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
  bool is_minus_identity() const { return a == -1 && b == 0 && c == 0 && d == -1; }

  SL2Matrix inverse() const { return SL2Matrix(d, -b, -c, a); }
  SL2Matrix operator-() const { return SL2Matrix(-a, -b, -c, -d); }

  friend SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y) {
    return SL2Matrix(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                     x.c * y.b + x.d * y.d);
  }

  bool operator==(const SL2Matrix&) const = default;
};

inline SL2Matrix mat_R() { return SL2Matrix(1, 1, 0, 1); }   // = theta(sigma_1)
inline SL2Matrix mat_L() { return SL2Matrix(1, 0, 1, 1); }   // = theta(sigma_2)^{-1}
inline SL2Matrix mat_B() { return SL2Matrix(1, 0, -1, 1); }  // = theta(sigma_2)
inline SL2Matrix mat_S() { return SL2Matrix(0, -1, 1, 0); }
inline SL2Matrix mat_U() { return mat_S() * mat_R(); }       // [[0,-1],[1,1]], order 6

inline SL2Matrix mat_pow(SL2Matrix base, Int e) {
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  SL2Matrix acc;
  while (e > 0) {
    if ((e & 1) != 0) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

// The Burau-type representation B_3 -> SL(2,Z): sigma_1 -> [[1,1],[0,1]],
// sigma_2 -> [[1,0],[-1,1]].  Kernel is the center generated by the full
// twist squared, so the image plus the exponent sum decide the word problem.
inline SL2Matrix theta(const BraidWord& w) {
  if (w.strands != 3) fail(Err::NotThreeStrands, "theta is defined on 3-strand words");
  SL2Matrix m;
  for (int g : w.letters) {
    switch (g) {
      case 1: m = m * mat_R(); break;
      case -1: m = m * mat_R().inverse(); break;
      case 2: m = m * mat_B(); break;
      case -2: m = m * mat_B().inverse(); break;
      default: check_letter(g, 3, "theta");
    }
  }
  return m;
}

struct Identity {};
struct MinusIdentity {};
struct Elliptic {
  int order;  // 3, 4 or 6
};
struct Parabolic {
  int sign;  // trace = 2*sign
  Int k;     // conjugation-invariant twist, nonzero
};
struct Hyperbolic {
  Int trace;
};
using SL2Type = std::variant<Identity, MinusIdentity, Elliptic, Parabolic, Hyperbolic>;

// Twist invariant of a parabolic matrix (trace +-2, not +-I).  Returns
// (sign, k) where sign*M is unipotent and acts on the invariant lattice line
// as translation by k; two parabolics are conjugate iff the pairs match.
inline std::pair<int, Int> parabolic_invariant(const SL2Matrix& m) {
  Int t = m.trace();
  if ((t != 2 && t != -2) || m.is_identity() || m.is_minus_identity())
    fail(Err::NotParabolic, "matrix is not parabolic");
  int sign = t == 2 ? 1 : -1;
  SL2Matrix n = sign == 1 ? m : -m;  // unipotent, trace 2, not I

  // Primitive fixed vector v of n, first nonzero coordinate positive.
  Int p = n.b, q = 1 - n.a;
  if (p == 0 && q == 0) {
    p = 1 - n.d;
    q = n.c;
  }
  Int g = boost::multiprecision::gcd(p < 0 ? -p : p, q < 0 ? -q : q);
  p /= g;
  q /= g;
  if (p < 0 || (p == 0 && q < 0)) {
    p = -p;
    q = -q;
  }

  // Complete (p,q) to a basis: find (x,y) with p*y - q*x = 1.
  Int x = 0, y = 0;
  {
    Int old_r = p, r = q, old_s = 1, s = 0, old_t = 0, tt = 1;
    while (r != 0) {
      Int qq = old_r / r;
      Int tmp = old_r - qq * r; old_r = r; r = tmp;
      tmp = old_s - qq * s; old_s = s; s = tmp;
      tmp = old_t - qq * tt; old_t = tt; tt = tmp;
    }
    // old_s*p + old_t*q = old_r = +-gcd(p,q) = +-1
    Int u = old_s, v = old_t;
    if (old_r == -1) { u = -u; v = -v; }
    // p*y - q*x = 1 with y = u, x = -v
    y = u;
    x = -v;
  }

  // n*(x,y) - (x,y) = k*(p,q)
  Int wx = n.a * x + n.b * y - x;
  Int wy = n.c * x + n.d * y - y;
  Int k = p != 0 ? wx / p : wy / q;
  if ((p != 0 && k * p != wx) || k * q != wy)
    fail(Err::InternalInconsistency, "parabolic twist is not integral");
  if (k == 0) fail(Err::InternalInconsistency, "parabolic twist vanished");
  return {sign, k};
}

inline SL2Type sl2_type(const SL2Matrix& m) {
  if (m.is_identity()) return Identity{};
  if (m.is_minus_identity()) return MinusIdentity{};
  Int t = m.trace();
  Int at = t < 0 ? -t : t;
  if (at > 2) return Hyperbolic{t};
  if (at == 2) {
    auto [sign, k] = parabolic_invariant(m);
    return Parabolic{sign, k};
  }
  if (t == 0) return Elliptic{4};
  return Elliptic{t == 1 ? 6 : 3};
}

// ---- continued-fraction decomposition over R = [[1,1],[0,1]], L = [[1,0],[1,1]] ----

struct RLWord {
  std::vector<std::pair<char, Int>> factors;  // ('R'|'L', nonzero exponent), alternating
  int sign = 1;                               // m = sign * prod factors
};

namespace detail {

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

struct STToken {
  char f;  // 'T' with exponent e, or 'S'
  Int e;
};

// Euclidean reduction of the first column: m = prod(tokens) * sign with
// tokens in {T^q, S}.  Exact in SL(2,Z), not just up to sign.
inline std::pair<std::vector<STToken>, int> st_tokens(const SL2Matrix& m) {
  std::vector<STToken> toks;
  SL2Matrix cur = m;
  const SL2Matrix s_inv = mat_S().inverse();
  while (cur.c != 0) {
    Int q = floor_div(cur.a, cur.c);
    toks.push_back({'T', q});
    cur = SL2Matrix(1, -q, 0, 1) * cur;
    toks.push_back({'S', 1});
    cur = s_inv * cur;
  }
  int sign = cur.a > 0 ? 1 : -1;
  Int e = cur.b;
  if (sign == -1) e = -e;  // cur = -T^{-e} when the diagonal is -1
  if (e != 0) toks.push_back({'T', e});
  return {toks, sign};
}

}  // namespace detail

inline void rl_push(std::vector<std::pair<char, Int>>& fac, char f, const Int& e) {
  if (e == 0) return;
  if (!fac.empty() && fac.back().first == f) {
    fac.back().second += e;
    if (fac.back().second == 0) fac.pop_back();
  } else {
    fac.emplace_back(f, e);
  }
}

// Writes m as +-(R^{e1} L^{e2} R^{e3} ...) via S = R^{-1} L R^{-1}.
inline RLWord sl2_decompose(const SL2Matrix& m) {
  auto [toks, sign] = detail::st_tokens(m);
  RLWord w;
  w.sign = sign;
  for (const auto& t : toks) {
    if (t.f == 'T') {
      rl_push(w.factors, 'R', t.e);
    } else {
      rl_push(w.factors, 'R', -1);
      rl_push(w.factors, 'L', 1);
      rl_push(w.factors, 'R', -1);
    }
  }
  return w;
}

inline SL2Matrix recompose(const RLWord& w) {
  SL2Matrix m;
  for (const auto& [f, e] : w.factors) m = m * mat_pow(f == 'R' ? mat_R() : mat_L(), e);
  if (w.sign == -1) m = -m;
  return m;
}

// ---- conjugacy in SL(2,Z) via the PSL(2,Z) = Z/2 * Z/3 normal form ----

namespace detail {

struct PslLetter {
  char f;  // 's' (e = 1) or 'u' (e in {1,2}); s = [S], u = [S*R]
  int e;
  bool operator==(const PslLetter&) const = default;
};

inline void psl_push(std::vector<PslLetter>& w, char f, int e) {
  int mod = f == 's' ? 2 : 3;
  e %= mod;
  if (e < 0) e += mod;
  if (e == 0) return;
  if (!w.empty() && w.back().f == f) {
    int m2 = (w.back().e + e) % mod;
    w.pop_back();
    if (m2 != 0) w.push_back({f, m2});
  } else {
    w.push_back({f, e});
  }
}

// Alternating s/u word representing [m] in PSL(2,Z); T = su, T^{-1} = u^2 s.
inline std::vector<PslLetter> psl_word(const SL2Matrix& m) {
  auto [toks, sign] = st_tokens(m);
  (void)sign;
  std::vector<PslLetter> w;
  for (const auto& t : toks) {
    if (t.f == 'S') {
      psl_push(w, 's', 1);
    } else {
      Int q = t.e;
      if (q > 5'000'000 || q < -5'000'000)
        fail(Err::LengthBoundExceeded, "matrix entries too large for word-level conjugacy");
      long long n = q.convert_to<long long>();
      if (n >= 0) {
        for (long long i = 0; i < n; ++i) {
          psl_push(w, 's', 1);
          psl_push(w, 'u', 1);
        }
      } else {
        for (long long i = 0; i < -n; ++i) {
          psl_push(w, 'u', 2);
          psl_push(w, 's', 1);
        }
      }
    }
  }
  return w;
}

inline SL2Matrix psl_lift(const PslLetter& l) {
  if (l.f == 's') return mat_S();
  return l.e == 1 ? mat_U() : mat_U() * mat_U();
}

// Cyclic reduction: returns (w', C) with [C][w][C]^{-1} = [w'] and w' either
// of length <= 1 or with distinct first/last letter families.
inline std::pair<std::vector<PslLetter>, SL2Matrix> psl_cyc_reduce(std::vector<PslLetter> w) {
  SL2Matrix conj;
  while (w.size() >= 2 && w.front().f == w.back().f) {
    PslLetter x = w.back();
    w.pop_back();
    conj = psl_lift(x) * conj;
    // w -> x * w * x^{-1}: prepend x and merge with the old first letter
    int mod = x.f == 's' ? 2 : 3;
    int e = (x.e + w.front().e) % mod;
    if (e == 0) {
      w.erase(w.begin());
    } else {
      w.front().e = e;
    }
  }
  return {std::move(w), conj};
}

inline bool cyclic_equal(const std::vector<PslLetter>& a, const std::vector<PslLetter>& b) {
  if (a.size() != b.size()) return false;
  size_t n = a.size();
  if (n == 0) return true;
  for (size_t off = 0; off < n; ++off) {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) ok = a[i] == b[(i + off) % n];
    if (ok) return true;
  }
  return false;
}

// Exact conjugated representative of an elliptic (or +-I) matrix; lands in
// {+-I, +-S, +-U, +-U^2}, which are pairwise non-conjugate in SL(2,Z).
// In particular S and S^{-1} = -S stay distinct even though they share a
// trace and a PSL class.
inline SL2Matrix elliptic_canon(const SL2Matrix& m) {
  auto [w, conj] = psl_cyc_reduce(psl_word(m));
  if (w.size() > 1) fail(Err::InternalInconsistency, "elliptic matrix with long cyclic word");
  return conj * m * conj.inverse();
}

}  // namespace detail

inline bool sl2_conjugate(const SL2Matrix& m, const SL2Matrix& n) {
  if (m.trace() != n.trace()) return false;
  bool m_central = m.is_identity() || m.is_minus_identity();
  bool n_central = n.is_identity() || n.is_minus_identity();
  if (m_central || n_central) return m == n;
  Int at = m.trace() < 0 ? -m.trace() : m.trace();
  if (at < 2) return detail::elliptic_canon(m) == detail::elliptic_canon(n);
  if (at == 2) return parabolic_invariant(m) == parabolic_invariant(n);
  auto wm = detail::psl_cyc_reduce(detail::psl_word(m)).first;
  auto wn = detail::psl_cyc_reduce(detail::psl_word(n)).first;
  return detail::cyclic_equal(wm, wn);
}

}  // namespace braidmod
