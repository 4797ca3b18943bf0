#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"

namespace braidmod {

// A word in the Artin generators of the braid group B_n.  Letters are nonzero
// integers: +i stands for sigma_i, -i for its inverse, 1 <= i <= strands-1.
// Words are kept verbatim; nothing is reduced unless asked for.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  bool operator==(const BraidWord&) const = default;
};

inline void check_letter(int g, int strands, const char* where) {
  if (g == 0) fail(Err::ZeroLetter, std::string(where) + ": letter 0 is not a generator");
  int idx = g < 0 ? -g : g;
  if (idx > strands - 1)
    fail(Err::GeneratorOutOfRange, std::string(where) + ": generator " + std::to_string(g) +
                                       " out of range for " + std::to_string(strands) + " strands");
}

// Permutation of {1..n}.  images[p-1] is the strand (named by its starting
// position) that occupies position p at the end of the braid, i.e. the map
// "end position -> start position".  With this convention
// permutation(compose(a,b)) == compose(permutation(a), permutation(b)).
struct Permutation {
  std::vector<int> images;

  static Permutation identity(int n) {
    Permutation p;
    p.images.resize(n);
    for (int i = 0; i < n; ++i) p.images[i] = i + 1;
    return p;
  }

  int size() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images[static_cast<size_t>(i) - 1]; }

  bool is_identity() const {
    for (int i = 1; i <= size(); ++i)
      if ((*this)(i) != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation r;
    r.images.resize(images.size());
    for (int i = 1; i <= size(); ++i) r.images[(*this)(i)-1] = i;
    return r;
  }

  // Cycle decomposition; each cycle starts at its smallest element, cycles
  // sorted by that element.  Fixed points appear as singletons.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images.size(), false);
    for (int s = 1; s <= size(); ++s) {
      if (seen[s - 1]) continue;
      std::vector<int> cyc;
      int cur = s;
      while (!seen[cur - 1]) {
        seen[cur - 1] = true;
        cyc.push_back(cur);
        cur = (*this)(cur);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  bool operator==(const Permutation&) const = default;
};

// compose(p, q) = p after q: result(i) = p(q(i)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) fail(Err::StrandMismatch, "permutations act on different strand counts");
  Permutation r;
  r.images.resize(p.images.size());
  for (int i = 1; i <= p.size(); ++i) r.images[i - 1] = p(q(i));
  return r;
}

// A cyclic orbit of strand positions, listed in travel order: the strand at
// positions[t] moves to positions[t+1] after one pass of the braid.
struct StrandOrbit {
  std::vector<int> positions;
};

namespace detail {

inline bool parse_int(const std::string& tok, long long& out) {
  const char* b = tok.data();
  const char* e = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e;
}

}  // namespace detail

// Accepts "B3: 1 -2", "1 -2" (strand count inferred as max index + 1), and
// the empty word "B3:".  Tokens are whitespace separated.
inline BraidWord parse_braid(const std::string& text) {
  std::vector<std::string> toks;
  std::string cur;
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) toks.push_back(std::move(cur));

  BraidWord b;
  size_t start = 0;
  bool have_header = false;
  if (!toks.empty() && toks[0].size() >= 2 && toks[0].front() == 'B' && toks[0].back() == ':') {
    std::string mid = toks[0].substr(1, toks[0].size() - 2);
    long long n = 0;
    if (mid.empty() || !detail::parse_int(mid, n) || n < 1)
      fail(Err::MalformedToken, "bad strand header '" + toks[0] + "'");
    if (n > 1'000'000) fail(Err::BadStrandCount, "strand count too large");
    b.strands = static_cast<int>(n);
    have_header = true;
    start = 1;
  }

  int maxgen = 0;
  for (size_t i = start; i < toks.size(); ++i) {
    long long v = 0;
    if (!detail::parse_int(toks[i], v))
      fail(Err::MalformedToken, "'" + toks[i] + "' is not an integer letter");
    if (v == 0) fail(Err::ZeroLetter, "letter 0 is not a generator");
    long long idx = v < 0 ? -v : v;
    if (idx > 1'000'000) fail(Err::GeneratorOutOfRange, "generator index too large");
    maxgen = std::max(maxgen, static_cast<int>(idx));
    b.letters.push_back(static_cast<int>(v));
  }

  if (have_header) {
    for (int g : b.letters) check_letter(g, b.strands, "parse_braid");
  } else {
    b.strands = maxgen + 1;
    if (b.letters.empty()) b.strands = 1;
  }
  return b;
}

inline std::string to_text(const BraidWord& b) {
  std::string s = "B" + std::to_string(b.strands) + ":";
  for (int g : b.letters) {
    s.push_back(' ');
    s += std::to_string(g);
  }
  return s;
}

inline BraidWord compose(const BraidWord& a, const BraidWord& b) {
  if (a.strands != b.strands)
    fail(Err::StrandMismatch, "cannot compose words on " + std::to_string(a.strands) + " and " +
                                  std::to_string(b.strands) + " strands");
  BraidWord r = a;
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  return r;
}

inline BraidWord inverse(const BraidWord& b) {
  BraidWord r;
  r.strands = b.strands;
  r.letters.reserve(b.letters.size());
  for (auto it = b.letters.rbegin(); it != b.letters.rend(); ++it) r.letters.push_back(-*it);
  return r;
}

inline BraidWord inverse_power(const BraidWord& b, long long ell) {
  BraidWord base = ell >= 0 ? b : inverse(b);
  long long reps = ell >= 0 ? ell : -ell;
  BraidWord r;
  r.strands = b.strands;
  r.letters.reserve(base.letters.size() * static_cast<size_t>(reps));
  for (long long i = 0; i < reps; ++i)
    r.letters.insert(r.letters.end(), base.letters.begin(), base.letters.end());
  return r;
}

inline BraidWord free_reduce(const BraidWord& b) {
  BraidWord r;
  r.strands = b.strands;
  for (int g : b.letters) {
    if (!r.letters.empty() && r.letters.back() == -g)
      r.letters.pop_back();
    else
      r.letters.push_back(g);
  }
  return r;
}

inline Permutation permutation(const BraidWord& b) {
  // occ[p-1] = strand currently at position p; sigma_j swaps positions j, j+1.
  Permutation occ = Permutation::identity(b.strands);
  for (int g : b.letters) {
    check_letter(g, b.strands, "permutation");
    int j = g < 0 ? -g : g;
    std::swap(occ.images[j - 1], occ.images[j]);
  }
  return occ;
}

inline long long exponent_sum(const BraidWord& b) {
  long long s = 0;
  for (int g : b.letters) s += g > 0 ? 1 : -1;
  return s;
}

// Garside half twist Delta_n = (s1)(s2 s1)...(s_{n-1} ... s1).
inline BraidWord garside(int n) {
  if (n < 2) fail(Err::BadStrandCount, "half twist needs at least 2 strands");
  BraidWord b;
  b.strands = n;
  for (int j = 1; j <= n - 1; ++j)
    for (int i = j; i >= 1; --i) b.letters.push_back(i);
  return b;
}

// Restriction of b to the sub-braid formed by the strands in `keep`.
// Crossings between two kept strands survive, renumbered by the count of kept
// strands to their left; everything else is forgotten.  `keep` must be
// setwise invariant under permutation(b).
inline BraidWord delete_strands(const BraidWord& b, const std::set<int>& keep) {
  if (keep.empty()) fail(Err::EmptyKeepSet, "keep set is empty");
  for (int s : keep)
    if (s < 1 || s > b.strands)
      fail(Err::GeneratorOutOfRange, "keep strand " + std::to_string(s) + " out of range");

  Permutation end = permutation(b);
  std::set<int> image;
  for (int p : keep) image.insert(end(p));
  if (image != keep) fail(Err::KeepNotInvariant, "keep set is not invariant under the braid");

  std::vector<bool> kept(static_cast<size_t>(b.strands) + 1, false);
  for (int s : keep) kept[static_cast<size_t>(s)] = true;

  std::vector<int> occ(static_cast<size_t>(b.strands));
  for (int i = 0; i < b.strands; ++i) occ[static_cast<size_t>(i)] = i + 1;

  BraidWord r;
  r.strands = static_cast<int>(keep.size());
  for (int g : b.letters) {
    int j = g < 0 ? -g : g;
    int u = occ[static_cast<size_t>(j - 1)];
    int v = occ[static_cast<size_t>(j)];
    if (kept[static_cast<size_t>(u)] && kept[static_cast<size_t>(v)]) {
      int rank = 1;
      for (int p = 1; p < j; ++p)
        if (kept[static_cast<size_t>(occ[static_cast<size_t>(p - 1)])]) ++rank;
      r.letters.push_back(g < 0 ? -rank : rank);
    }
    std::swap(occ[static_cast<size_t>(j - 1)], occ[static_cast<size_t>(j)]);
  }
  return r;
}

// Linking number of strands i and j; both must be fixed by permutation(b).
// Equals half the exponent sum of the 2-strand restriction.
inline long long linking_number(const BraidWord& b, int i, int j) {
  if (i == j) fail(Err::StrandsNotFixed, "need two distinct strands");
  if (i < 1 || i > b.strands || j < 1 || j > b.strands)
    fail(Err::GeneratorOutOfRange, "strand index out of range");
  Permutation p = permutation(b);
  if (p(i) != i || p(j) != j)
    fail(Err::StrandsNotFixed, "strands " + std::to_string(i) + "," + std::to_string(j) +
                                   " are not separately fixed");
  BraidWord two = delete_strands(b, std::set<int>{i, j});
  long long e = exponent_sum(two);
  if (e % 2 != 0) fail(Err::InternalInconsistency, "2-strand restriction has odd exponent sum");
  return e / 2;
}

}  // namespace braidmod
