#pragma once

#include <numeric>
#include <set>
#include <vector>

#include "braid.hpp"
#include "classify.hpp"
#include "error.hpp"
#include "sl2.hpp"

namespace braidmod {

struct Attachment;

// A reducible class presented as a tree: a base word whose permutation
// orbits may carry cabled child components.  Orbits of one node must be
// disjoint; each orbit is listed in travel order.
struct ComponentNode {
  BraidWord braid;
  std::vector<Attachment> attachments;
};

struct Attachment {
  StrandOrbit orbit;
  ComponentNode child;
};

struct ComponentTree {
  ComponentNode root;
};

namespace detail {

// Positive transposition of a width-a block over a width-b block sitting at
// positions base..base+a+b-1, all crossings positive, internal orders kept:
// prod_{j=1..b} (s_{a+j-1} s_{a+j-2} ... s_j), shifted by base-1.
inline void emit_block_swap(std::vector<int>& out, int base, int a, int b, bool positive) {
  std::vector<int> w;
  for (int j = 1; j <= b; ++j)
    for (int i = a + j - 1; i >= j; --i) w.push_back(base - 1 + i);
  if (positive) {
    out.insert(out.end(), w.begin(), w.end());
  } else {
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  }
}

// Checks the orbit is a cycle of the node permutation listed in travel
// order: the strand at positions[t] ends one pass at positions[t+1].
inline void check_orbit(const BraidWord& braid, const Permutation& end, const StrandOrbit& orbit,
                        std::set<int>& used) {
  if (orbit.positions.empty()) fail(Err::InvalidTree, "empty orbit");
  int n = braid.strands;
  for (int p : orbit.positions) {
    if (p < 1 || p > n) fail(Err::InvalidTree, "orbit position out of range");
    if (!used.insert(p).second) fail(Err::InvalidTree, "orbits overlap");
  }
  // end(p) = strand at position p, so strand s travels to end^{-1}(s).
  Permutation to = end.inverse();
  size_t len = orbit.positions.size();
  for (size_t t = 0; t < len; ++t) {
    if (to(orbit.positions[t]) != orbit.positions[(t + 1) % len])
      fail(Err::InvalidTree, "orbit is not listed in travel order");
  }
}

struct BlockInfo {
  const ComponentNode* node;
  int start;        // leftmost strand of the node's cable at time 0
  int span;         // number of strands of the expanded node
  long long cycle;  // product of orbit lengths on the path from the root
};

struct Expansion {
  BraidWord word;
  std::vector<BlockInfo> blocks;  // this node first, then descendants depth-first
};

inline Expansion expand_node(const ComponentNode& node) {
  const BraidWord& b = node.braid;
  int n = b.strands;
  Permutation end = permutation(b);

  std::set<int> used;
  std::vector<Expansion> kids;
  kids.reserve(node.attachments.size());
  for (const auto& att : node.attachments) {
    check_orbit(b, end, att.orbit, used);
    kids.push_back(expand_node(att.child));
  }

  // Cable widths per strand: strands of an orbit all carry a copy of the
  // attached child, everything else stays a single strand.
  std::vector<int> width(static_cast<size_t>(n) + 1, 1);
  for (size_t i = 0; i < node.attachments.size(); ++i)
    for (int p : node.attachments[i].orbit.positions)
      width[static_cast<size_t>(p)] = kids[i].word.strands;

  std::vector<int> start(static_cast<size_t>(n) + 1, 0);
  int total = 1;
  for (int s = 1; s <= n; ++s) {
    start[static_cast<size_t>(s)] = total;
    total += width[static_cast<size_t>(s)];
  }
  total -= 1;

  Expansion out;
  out.word.strands = total;
  out.blocks.push_back({&node, 1, total, 1});

  // Scan the base word, replacing each crossing by a block transposition of
  // the two cables currently at those positions.
  std::vector<int> occ(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) occ[static_cast<size_t>(i)] = i + 1;
  for (int g : b.letters) {
    int j = g < 0 ? -g : g;
    int wl = width[static_cast<size_t>(occ[static_cast<size_t>(j - 1)])];
    int wr = width[static_cast<size_t>(occ[static_cast<size_t>(j)])];
    int base = 1;
    for (int p = 1; p < j; ++p) base += width[static_cast<size_t>(occ[static_cast<size_t>(p - 1)])];
    if (g > 0)
      emit_block_swap(out.word.letters, base, wl, wr, true);
    else
      emit_block_swap(out.word.letters, base, wr, wl, false);
    std::swap(occ[static_cast<size_t>(j - 1)], occ[static_cast<size_t>(j)]);
  }

  // One copy of each child braid per orbit pass, inserted where the cable of
  // the orbit's first strand rests at the end of the base word.
  Permutation to = end.inverse();
  for (size_t i = 0; i < node.attachments.size(); ++i) {
    const StrandOrbit& orbit = node.attachments[i].orbit;
    int slot = to(orbit.positions[0]);
    int off = 1;
    for (int p = 1; p < slot; ++p) off += width[static_cast<size_t>(end(p))];
    for (int g : kids[i].word.letters)
      out.word.letters.push_back(g > 0 ? g + off - 1 : g - off + 1);

    // Time-0 blocks of the child and its descendants sit inside the cable of
    // the orbit's first strand.
    int shift = start[static_cast<size_t>(orbit.positions[0])] - 1;
    long long orbit_len = static_cast<long long>(orbit.positions.size());
    for (const BlockInfo& blk : kids[i].blocks)
      out.blocks.push_back({blk.node, blk.start + shift, blk.span, blk.cycle * orbit_len});
  }
  return out;
}

inline void validate_node(const ComponentNode& node) {
  Permutation end = permutation(node.braid);
  std::set<int> used;
  for (const auto& att : node.attachments) {
    check_orbit(node.braid, end, att.orbit, used);
    validate_node(att.child);
  }
}

}  // namespace detail

using detail::BlockInfo;
using detail::Expansion;

inline BraidWord synthesize(const ComponentTree& tree) { return detail::expand_node(tree.root).word; }

// Like synthesize, but also reports where each tree node's strands sit at
// time 0 of the composite word and its total cycle length.
inline Expansion synthesize_layout(const ComponentTree& tree) {
  return detail::expand_node(tree.root);
}

// Inverse of cabling at one edge: restrict b^k to the cable block.  The
// block must be invariant under the k-th power of the permutation; the
// result is the child word verbatim when b was produced by synthesize.
inline BraidWord extract_component(const BraidWord& b, const StrandOrbit& block, long long k) {
  if (k < 1) fail(Err::BadCycleLength, "cycle length must be at least 1");
  std::set<int> keep(block.positions.begin(), block.positions.end());
  return delete_strands(inverse_power(b, k), keep);
}

struct NodeEntropy {
  const ComponentNode* node;
  long long cycle;
  Int abs_trace;  // 0 when the node's class has zero entropy
};

struct ReducibleDetail {
  InvariantPair pair;
  const ComponentNode* winner;  // node attaining the extremes; null when none is hyperbolic
  std::vector<NodeEntropy> nodes;
};

namespace detail {

inline void collect_entropies(const ComponentNode& node, long long cycle,
                              std::vector<NodeEntropy>& out) {
  int n = node.braid.strands;
  if (n > 3) fail(Err::UnsupportedNodeArity, "tree nodes must have at most 3 strands");
  Int at = 0;
  if (n == 3) {
    SL2Type t = sl2_type(theta(node.braid));
    if (auto* hy = std::get_if<Hyperbolic>(&t)) at = hy->trace < 0 ? -hy->trace : hy->trace;
  }
  out.push_back({&node, cycle, at});
  for (const auto& att : node.attachments)
    collect_entropies(att.child, cycle * static_cast<long long>(att.orbit.positions.size()), out);
}

inline Int cheb_trace(const Int& t, long long m) {
  if (m == 0) return Int(2);
  Int prev = 2, cur = t;
  for (long long i = 1; i < m; ++i) {
    Int next = t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Decides log(lambda(t1))/k1 > log(lambda(t2))/k2 exactly: raise both to the
// lcm power and compare traces, since lambda(t)^m = lambda(trace(M^m)).
inline bool entropy_greater(const Int& t1, long long k1, const Int& t2, long long k2) {
  long long l = std::lcm(k1, k2);
  if (l / k1 <= 64 && l / k2 <= 64)
    return cheb_trace(t1, l / k1) > cheb_trace(t2, l / k2);
  return log_spectral(t1) / static_cast<double>(k1) > log_spectral(t2) / static_cast<double>(k2);
}

}  // namespace detail

// Entropy and conformal module of the whole reducible class: entropy is the
// max over tree nodes of the node entropy divided by its cycle length, the
// module is the min of the node module times the same factor; both extremes
// are attained at one node.
inline ReducibleDetail reducible_invariants_detail(const ComponentTree& tree) {
  detail::validate_node(tree.root);
  ReducibleDetail out;
  detail::collect_entropies(tree.root, 1, out.nodes);
  out.winner = nullptr;
  const NodeEntropy* best = nullptr;
  for (const NodeEntropy& ne : out.nodes) {
    if (ne.abs_trace == 0) continue;
    if (best == nullptr ||
        detail::entropy_greater(ne.abs_trace, ne.cycle, best->abs_trace, best->cycle))
      best = &ne;
  }
  if (best == nullptr) {
    out.pair = {ExtReal::zero(), ExtReal::infinity()};
    return out;
  }
  out.winner = best->node;
  out.pair.entropy = ExtReal::from_trace(best->abs_trace, best->cycle);
  out.pair.module = module_from_entropy(out.pair.entropy);
  return out;
}

inline InvariantPair reducible_invariants(const ComponentTree& tree) {
  return reducible_invariants_detail(tree).pair;
}

}  // namespace braidmod
