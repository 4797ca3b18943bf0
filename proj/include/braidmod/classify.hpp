#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "braid.hpp"
#include "error.hpp"
#include "sl2.hpp"

namespace braidmod {

// Exact form of an entropy value: log of the spectral radius of an integer
// matrix with the given trace, divided by `divisor` (cycle length scaling).
struct TraceForm {
  Int trace;
  long long divisor = 1;
  bool operator==(const TraceForm&) const = default;
};

// log((t + sqrt(t^2-4))/2) for integer t = |trace| >= 3, robust to huge t.
inline double log_spectral(const Int& abs_trace) {
  if (abs_trace < 3) fail(Err::InternalInconsistency, "spectral log needs |trace| >= 3");
  size_t bits = boost::multiprecision::msb(abs_trace);
  if (bits > 300) {
    Int top = abs_trace >> (bits - 52);
    return std::log(top.convert_to<double>()) + static_cast<double>(bits - 52) * std::log(2.0);
  }
  double td = abs_trace.convert_to<double>();
  if (td > 1e100) return std::log(td);
  return std::log((td + std::sqrt(td * td - 4.0)) / 2.0);
}

// A nonnegative real that may be +infinity, carrying an exact certificate
// when the value is (1/divisor) * log of a quadratic unit.
struct ExtReal {
  bool infinite = false;
  double value = 0.0;  // ignored when infinite
  std::optional<TraceForm> exact;

  static ExtReal zero() { return ExtReal{}; }
  static ExtReal infinity() {
    ExtReal e;
    e.infinite = true;
    return e;
  }
  static ExtReal finite(double v) {
    ExtReal e;
    e.value = v;
    return e;
  }
  static ExtReal from_trace(const Int& t, long long divisor = 1) {
    ExtReal e;
    Int at = t < 0 ? -t : t;
    e.value = log_spectral(at) / static_cast<double>(divisor);
    e.exact = TraceForm{t, divisor};
    return e;
  }

  bool is_zero() const { return !infinite && value == 0.0; }
};

// Conformal module of the conjugacy class: pi/(2*entropy), infinite at
// entropy zero.  The product module*entropy is pi/2 whenever both are finite.
inline ExtReal module_from_entropy(const ExtReal& h) {
  if (h.infinite) return ExtReal::zero();
  if (h.value == 0.0) return ExtReal::infinity();
  return ExtReal::finite(M_PI / (2.0 * h.value));
}

struct Periodic {
  bool circular;    // true: class of (s1 s2)^power; false: class of Delta^power
  long long power;
};
struct ReducibleParabolic {
  Int k;    // twist of the preserved curve, nonzero
  Int ell;  // full-twist framing: class of sigma_1^k Delta^{2 ell}
};
struct PseudoAnosov {
  Int trace;
  double dilatation;  // exp(2*entropy)
  ExtReal entropy;
  ExtReal module;
};
using ThurstonClass3 = std::variant<Periodic, ReducibleParabolic, PseudoAnosov>;

inline SL2Matrix theta_circular() { return mat_R() * mat_B(); }          // theta(s1 s2)
inline SL2Matrix theta_halftwist() { return SL2Matrix(0, 1, -1, 0); }    // theta(Delta)

// Thurston type of a 3-strand class, decided exactly through the SL(2,Z)
// image plus the exponent sum.
inline ThurstonClass3 classify_3(const BraidWord& b) {
  SL2Matrix m = theta(b);
  long long d = exponent_sum(b);
  SL2Type t = sl2_type(m);

  if (auto* hy = std::get_if<Hyperbolic>(&t)) {
    PseudoAnosov pa;
    pa.trace = hy->trace;
    pa.entropy = ExtReal::from_trace(hy->trace, 1);
    pa.dilatation = std::exp(2.0 * pa.entropy.value);
    pa.module = module_from_entropy(pa.entropy);
    return pa;
  }

  if (auto* pb = std::get_if<Parabolic>(&t)) {
    Int num = Int(d) - pb->k;
    if (num % 6 != 0)
      fail(Err::InternalInconsistency, "parabolic twist does not match the exponent sum");
    Int ell = num / 6;
    int parity = ell % 2 == 0 ? 1 : -1;
    if (parity != pb->sign)
      fail(Err::InternalInconsistency, "parabolic sign does not match the framing parity");
    return ReducibleParabolic{pb->k, ell};
  }

  // Elliptic or central: the class is a power of the circular rotation or of
  // the half twist; the exponent sum pins the power, conjugacy pins which.
  if (d % 2 == 0 && sl2_conjugate(m, mat_pow(theta_circular(), Int(d / 2))))
    return Periodic{true, d / 2};
  if (d % 3 == 0 && sl2_conjugate(m, mat_pow(theta_halftwist(), Int(d / 3))))
    return Periodic{false, d / 3};
  fail(Err::InternalInconsistency, "finite-order image without a periodic normal form");
}

inline bool is_trivial_3(const BraidWord& b) {
  if (b.strands != 3) fail(Err::NotThreeStrands, "word problem solved for 3 strands only");
  return exponent_sum(b) == 0 && theta(b).is_identity();
}

inline bool equal_3(const BraidWord& u, const BraidWord& v) {
  if (u.strands != 3 || v.strands != 3)
    fail(Err::NotThreeStrands, "word problem solved for 3 strands only");
  return exponent_sum(u) == exponent_sum(v) && theta(u) == theta(v);
}

// Conjugacy of 3-strand classes: the center is detected by the exponent sum,
// everything else by conjugacy of the SL(2,Z) images.
inline bool conjugate_3(const BraidWord& u, const BraidWord& v) {
  if (u.strands != 3 || v.strands != 3)
    fail(Err::NotThreeStrands, "conjugacy solved for 3 strands only");
  return exponent_sum(u) == exponent_sum(v) && sl2_conjugate(theta(u), theta(v));
}

struct InvariantPair {
  ExtReal entropy;
  ExtReal module;
};

inline InvariantPair invariants_3(const BraidWord& b) {
  if (b.strands == 2) return {ExtReal::zero(), ExtReal::infinity()};
  if (b.strands != 3)
    fail(Err::UnsupportedStrandCount, "invariants defined for 2 or 3 strands");
  ThurstonClass3 c = classify_3(b);
  if (auto* pa = std::get_if<PseudoAnosov>(&c)) return {pa->entropy, pa->module};
  return {ExtReal::zero(), ExtReal::infinity()};
}

struct MinEntropySearch {
  std::optional<BraidWord> word;  // empty: no positive-entropy class in range
  ExtReal entropy;
};

namespace detail {

inline unsigned search_thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("BRAIDMOD_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) hw = static_cast<unsigned>(v);
  }
  return hw < 1u ? 1u : (hw > 4u ? 4u : hw);
}

struct SearchBest {
  long long abs_trace = 0;  // 0 = none
  std::vector<int> letters;
};

inline int letter_rank(int g) {
  switch (g) {
    case 1: return 0;
    case -1: return 1;
    case 2: return 2;
    default: return 3;
  }
}

// Candidate order: smaller |trace| first (smaller entropy), then shorter
// word, then rank-lexicographic with 1 < -1 < 2 < -2.
inline bool search_better(long long t, const std::vector<int>& w, const SearchBest& best) {
  if (best.abs_trace == 0) return true;
  if (t != best.abs_trace) return t < best.abs_trace;
  if (w.size() != best.letters.size()) return w.size() < best.letters.size();
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i] != best.letters[i]) return letter_rank(w[i]) < letter_rank(best.letters[i]);
  return false;
}

inline void search_subtree(int first_idx, int max_len, SearchBest& best) {
  static const int kLetters[4] = {1, -1, 2, -2};
  struct M64 {
    long long a, b, c, d;
  };
  auto apply = [](const M64& m, int g) -> M64 {
    switch (g) {
      case 1: return {m.a, m.a + m.b, m.c, m.c + m.d};
      case -1: return {m.a, m.b - m.a, m.c, m.d - m.c};
      case 2: return {m.a - m.b, m.b, m.c - m.d, m.d};
      default: return {m.a + m.b, m.b, m.c + m.d, m.d};
    }
  };
  std::vector<int> word;
  auto rec = [&](auto&& self, const M64& m) -> void {
    long long t = m.a + m.d;
    if (t < 0) t = -t;
    if (t > 2 && search_better(t, word, best)) best = {t, word};
    if (static_cast<int>(word.size()) >= max_len) return;
    for (int idx = 0; idx < 4; ++idx) {
      int g = kLetters[idx];
      if (!word.empty() && word.back() == -g) continue;
      word.push_back(g);
      self(self, apply(m, g));
      word.pop_back();
    }
  };
  int g0 = kLetters[first_idx];
  word.push_back(g0);
  rec(rec, apply(M64{1, 0, 0, 1}, g0));
}

}  // namespace detail

// Smallest positive entropy over all freely reduced 3-strand words of length
// at most max_len, with the lexicographically least witness.
inline MinEntropySearch min_entropy_search(int max_len) {
  if (max_len < 1 || max_len > 12)
    fail(Err::LengthBoundExceeded, "search length must be between 1 and 12");

  detail::SearchBest bests[4];
  unsigned threads = detail::search_thread_cap();
  if (threads <= 1) {
    for (int i = 0; i < 4; ++i) detail::search_subtree(i, max_len, bests[i]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned tid = 0; tid < threads; ++tid)
      pool.emplace_back([tid, threads, max_len, &bests] {
        for (int i = static_cast<int>(tid); i < 4; i += static_cast<int>(threads))
          detail::search_subtree(i, max_len, bests[i]);
      });
    for (auto& th : pool) th.join();
  }

  detail::SearchBest merged;
  for (const auto& cand : bests) {
    if (cand.abs_trace == 0) continue;
    if (detail::search_better(cand.abs_trace, cand.letters, merged)) merged = cand;
  }
  MinEntropySearch out;
  if (merged.abs_trace == 0) {
    out.entropy = ExtReal::zero();
    return out;
  }
  BraidWord w;
  w.strands = 3;
  w.letters = merged.letters;
  out.word = std::move(w);
  out.entropy = ExtReal::from_trace(Int(merged.abs_trace), 1);
  return out;
}

}  // namespace braidmod
