#pragma once

// Graph parameters: independence/clique/complex number, complex degree,
// matching numbers, similarity partition and neighbourhood diversity,
// VC-dimension in closed and open mode, and the constructive reduction
// from a closed-shattered set to an open-shattered one.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "hspeed/graph.hpp"

namespace hspeed {

// ---------------------------------------------------------------------------
// Independence and clique numbers

namespace detail {

inline int max_independent_rec(const Graph& g, VertexSet avail) {
  if (!avail) return 0;
  const int v = lowest_vertex(avail);
  // branch: v in the set, or v excluded
  const int with_v = 1 + max_independent_rec(g, avail & ~g.closed_neighbourhood(v));
  const int without_v = max_independent_rec(g, avail & ~bit(v));
  return with_v > without_v ? with_v : without_v;
}

/// Lexicographically least independent set of size exactly k, if any.
inline std::optional<VertexSet> independent_set_of_size(const Graph& g, VertexSet avail, int k) {
  if (k == 0) return VertexSet{0};
  if (popcount(avail) < k) return std::nullopt;
  const int v = lowest_vertex(avail);
  if (auto rest = independent_set_of_size(g, avail & ~g.closed_neighbourhood(v), k - 1))
    return bit(v) | *rest;
  return independent_set_of_size(g, avail & ~bit(v), k);
}

}  // namespace detail

inline int independence_number(const Graph& g) {
  return detail::max_independent_rec(g, full_set(g.size()));
}

inline int clique_number(const Graph& g) { return independence_number(complement(g)); }

inline int complex_number(const Graph& g) {
  const int a = independence_number(g);
  const int w = clique_number(g);
  return a < w ? a : w;
}

/// Lexicographically least maximum independent set.
inline VertexSet max_independent_set(const Graph& g) {
  const int a = independence_number(g);
  return *detail::independent_set_of_size(g, full_set(g.size()), a);
}

inline VertexSet max_clique(const Graph& g) { return max_independent_set(complement(g)); }

/// Lexicographically least clique of size k, or absent.
inline std::optional<VertexSet> clique_of_size(const Graph& g, int k) {
  return detail::independent_set_of_size(complement(g), full_set(g.size()), k);
}

inline std::optional<VertexSet> independent_set_of_size(const Graph& g, int k) {
  return detail::independent_set_of_size(g, full_set(g.size()), k);
}

// ---------------------------------------------------------------------------
// Complex degree

inline int c_degree(const Graph& g, int v) {
  const int d = g.degree(v);
  const int cd = g.codegree(v);
  return d < cd ? d : cd;
}

inline int complex_degree(const Graph& g) {
  int best = 0;
  for (int v = 0; v < g.size(); ++v) best = std::max(best, c_degree(g, v));
  return best;
}

// ---------------------------------------------------------------------------
// Matching numbers (exact, memoized branch-and-bound over the lowest
// incident vertex; no blossom machinery needed at desk scale)

namespace detail {

inline int matching_rec(const Graph& g, VertexSet avail,
                        std::unordered_map<VertexSet, int>& memo) {
  // skip vertices with no available neighbour
  while (avail) {
    const int v = lowest_vertex(avail);
    if (g.neighbours(v) & avail) break;
    avail &= ~bit(v);
  }
  if (!avail) return 0;
  if (auto it = memo.find(avail); it != memo.end()) return it->second;

  const int v = lowest_vertex(avail);
  int best = matching_rec(g, avail & ~bit(v), memo);  // v stays unmatched
  for (VertexSet nb = g.neighbours(v) & avail; nb;) {
    const int u = lowest_vertex(nb);
    nb &= nb - 1;
    best = std::max(best, 1 + matching_rec(g, avail & ~(bit(v) | bit(u)), memo));
    if (best == popcount(avail) / 2) break;  // cannot improve
  }
  memo.emplace(avail, best);
  return best;
}

}  // namespace detail

inline int matching_number(const Graph& g) {
  std::unordered_map<VertexSet, int> memo;
  return detail::matching_rec(g, full_set(g.size()), memo);
}

inline int co_matching_number(const Graph& g) { return matching_number(complement(g)); }

inline int c_matching_number(const Graph& g) {
  const int m = matching_number(g);
  const int cm = co_matching_number(g);
  return m < cm ? m : cm;
}

/// A maximum matching as a list of vertex pairs (deterministic: each edge
/// picks the lowest-index extension found by the exact search).
inline std::vector<std::pair<int, int>> max_matching_edges(const Graph& g) {
  std::unordered_map<VertexSet, int> memo;
  std::vector<std::pair<int, int>> out;
  VertexSet avail = full_set(g.size());
  int target = detail::matching_rec(g, avail, memo);
  while (target > 0) {
    // find the lowest edge that keeps the optimum reachable
    bool advanced = false;
    for (int v = 0; v < g.size() && !advanced; ++v) {
      if (!(avail & bit(v))) continue;
      for (VertexSet nb = g.neighbours(v) & avail; nb && !advanced;) {
        const int u = lowest_vertex(nb);
        nb &= nb - 1;
        const VertexSet next = avail & ~(bit(v) | bit(u));
        if (1 + detail::matching_rec(g, next, memo) == target) {
          out.emplace_back(v, u);
          avail = next;
          --target;
          advanced = true;
        }
      }
    }
    if (!advanced) break;  // unreachable for a correct solver
  }
  return out;
}

// ---------------------------------------------------------------------------
// Similarity partition and neighbourhood diversity

/// x and y are similar iff N(x)\{y} = N(y)\{x}; every class induces a
/// clique or an independent set.
inline bool similar(const Graph& g, int x, int y) {
  return (g.neighbours(x) & ~bit(y)) == (g.neighbours(y) & ~bit(x));
}

/// The unique partition into maximal similarity classes, ordered by
/// lowest member.
inline std::vector<VertexSet> similarity_partition(const Graph& g) {
  std::vector<VertexSet> classes;
  VertexSet seen = 0;
  for (int v = 0; v < g.size(); ++v) {
    if (seen & bit(v)) continue;
    VertexSet cls = bit(v);
    for (int u = v + 1; u < g.size(); ++u)
      if (!(seen & bit(u)) && similar(g, v, u)) cls |= bit(u);
    seen |= cls;
    classes.push_back(cls);
  }
  return classes;
}

inline int neighbourhood_diversity(const Graph& g) {
  return static_cast<int>(similarity_partition(g).size());
}

inline int largest_similarity_class(const Graph& g) {
  int best = 0;
  for (VertexSet c : similarity_partition(g)) best = std::max(best, popcount(c));
  return best;
}

inline int smallest_similarity_class(const Graph& g) {
  if (g.size() == 0) return 0;
  int best = g.size();
  for (VertexSet c : similarity_partition(g)) best = std::min(best, popcount(c));
  return best;
}

inline int similarity_difference(const Graph& g) {
  if (g.size() == 0) return 0;
  return largest_similarity_class(g) - smallest_similarity_class(g);
}

// ---------------------------------------------------------------------------
// VC-dimension (closed and open mode)

/// A shattered set with one witness per subset. `witnesses[mask]` realizes
/// the subset of `shattered` selected by `mask` (bit i <-> shattered[i]).
/// In open mode all witnesses lie outside the shattered set and realize
/// N(v) ∩ A; in closed mode they realize N[v] ∩ A.
struct ShatterWitness {
  std::vector<int> shattered;
  bool open = false;
  std::vector<int> witnesses;
};

inline bool witness_valid(const Graph& g, const ShatterWitness& w) {
  const int k = static_cast<int>(w.shattered.size());
  if (g.size() == 0) return w.shattered.empty() && w.witnesses.empty();
  if (static_cast<int>(w.witnesses.size()) != (1 << k)) return false;
  VertexSet a = 0;
  for (int v : w.shattered) a |= bit(v);
  for (int mask = 0; mask < (1 << k); ++mask) {
    VertexSet target = 0;
    for (int i = 0; i < k; ++i)
      if (mask & (1 << i)) target |= bit(w.shattered[static_cast<std::size_t>(i)]);
    const int v = w.witnesses[static_cast<std::size_t>(mask)];
    if (v < 0 || v >= g.size()) return false;
    if (w.open) {
      if (a & bit(v)) return false;
      if ((g.neighbours(v) & a) != target) return false;
    } else {
      if ((g.closed_neighbourhood(v) & a) != target) return false;
    }
  }
  return true;
}

namespace detail {

inline VertexSet trace(const Graph& g, int v, VertexSet a, bool open) {
  return (open ? g.neighbours(v) : g.closed_neighbourhood(v)) & a;
}

/// Witness map for A in the given mode, or absent when A is not shattered.
inline std::optional<ShatterWitness> shatter_witness(const Graph& g, VertexSet a, bool open) {
  const std::vector<int> verts = set_to_vector(a);
  const int k = static_cast<int>(verts.size());
  if (g.size() == 0) {
    if (k == 0) return ShatterWitness{{}, open, {}};
    return std::nullopt;
  }
  ShatterWitness w{verts, open, std::vector<int>(static_cast<std::size_t>(1) << k, -1)};
  for (int mask = 0; mask < (1 << k); ++mask) {
    VertexSet target = 0;
    for (int i = 0; i < k; ++i)
      if (mask & (1 << i)) target |= bit(verts[static_cast<std::size_t>(i)]);
    int found = -1;
    for (int v = 0; v < g.size(); ++v) {
      if (open && (a & bit(v))) continue;
      if (trace(g, v, a, open) == target) {
        found = v;
        break;
      }
    }
    if (found < 0) return std::nullopt;
    w.witnesses[static_cast<std::size_t>(mask)] = found;
  }
  return w;
}

/// DFS over k-subsets (lexicographic), pruning prefixes whose realized
/// trace count falls short of 2^|prefix|.
inline std::optional<VertexSet> shattered_set_of_size(const Graph& g, bool open, int k) {
  const int n = g.size();
  if (k == 0) return (open && n == 0) ? std::nullopt : std::optional<VertexSet>{0};
  std::vector<int> chosen;

  auto prefix_ok = [&](VertexSet a) {
    std::vector<VertexSet> traces;
    for (int v = 0; v < n; ++v) {
      if (open && (a & bit(v))) continue;
      const VertexSet t = trace(g, v, a, open);
      bool fresh = true;
      for (VertexSet s : traces)
        if (s == t) {
          fresh = false;
          break;
        }
      if (fresh) traces.push_back(t);
    }
    return static_cast<int>(traces.size()) == (1 << popcount(a));
  };

  auto rec = [&](auto&& self, int start, VertexSet a, int need) -> std::optional<VertexSet> {
    if (need == 0) return a;
    for (int v = start; v <= n - need; ++v) {
      const VertexSet next = a | bit(v);
      if (!prefix_ok(next)) continue;
      if (auto r = self(self, v + 1, next, need - 1)) return r;
    }
    return std::nullopt;
  };
  return rec(rec, 0, 0, k);
}

}  // namespace detail

inline std::pair<int, ShatterWitness> vc_dimension(const Graph& g, bool open) {
  if (g.size() > 20) throw std::invalid_argument("vc search is capped at n <= 20");
  if (g.size() == 0) return {0, ShatterWitness{{}, open, {}}};
  VertexSet best = 0;
  for (int k = 1;; ++k) {
    if ((VertexSet{1} << k) > static_cast<VertexSet>(g.size())) break;  // not enough witnesses
    auto a = detail::shattered_set_of_size(g, open, k);
    if (!a) break;
    best = *a;
  }
  auto w = detail::shatter_witness(g, best, open);
  return {popcount(best), *w};
}

inline std::pair<int, ShatterWitness> vc_closed(const Graph& g) { return vc_dimension(g, false); }

inline std::pair<int, ShatterWitness> vc_open(const Graph& g) { return vc_dimension(g, true); }

/// Two-phase deletion turning a closed-shattered set into an open-shattered
///// subset: first drop one vertex forming a closed singleton, then repeatedly
/// delete B minus its witness for any remaining closed subset B. The result
/// has no closed subsets among its witness family, hence is open-shattered.
inline std::pair<VertexSet, ShatterWitness> prune_closed_witnesses(const Graph& g, VertexSet a) {
  if (!detail::shatter_witness(g, a, false))
    throw std::invalid_argument("input set is not shattered in closed mode");

  // B ⊆ A is forced closed when every vertex realizing N[v] ∩ A = B lies in B.
  auto forced_closed = [&](VertexSet current, VertexSet b, int& witness_in_b) -> bool {
    witness_in_b = -1;
    for (int v = 0; v < g.size(); ++v) {
      if (detail::trace(g, v, current, false) != b) continue;
      if (b & bit(v)) {
        if (witness_in_b < 0) witness_in_b = v;
      } else {
        return false;
      }
    }
    return witness_in_b >= 0;
  };

  bool dropped_singleton = false;
  for (;;) {
    const std::vector<int> verts = set_to_vector(a);
    const int k = static_cast<int>(verts.size());
    int fix_witness = -1;
    VertexSet fix_set = 0;
    bool fix_is_singleton = false;
    for (int mask = 1; mask < (1 << k) && !fix_set; ++mask) {
      VertexSet b = 0;
      for (int i = 0; i < k; ++i)
        if (mask & (1 << i)) b |= bit(verts[static_cast<std::size_t>(i)]);
      int w = -1;
      if (forced_closed(a, b, w)) {
        fix_set = b;
        fix_witness = w;
        fix_is_singleton = popcount(b) == 1;
      }
    }
    if (!fix_set) break;
    if (fix_is_singleton && !dropped_singleton) {
      a &= ~fix_set;  // drop the isolated vertex itself
      dropped_singleton = true;
    } else {
      a &= ~(fix_set & ~bit(fix_witness));  // delete B − v(B)
    }
  }

  auto w = detail::shatter_witness(g, a, true);
  if (!w) throw std::logic_error("pruned set failed the open-shattering check");
  return {a, *w};
}

// ---------------------------------------------------------------------------
// Flat report over all parameters

struct ParameterReport {
  int alpha = 0;
  int omega = 0;
  int complex_number = 0;
  int max_degree = 0;
  int max_codegree = 0;
  int complex_degree = 0;
  int matching = 0;
  int co_matching = 0;
  int c_matching = 0;
  int nd = 0;
  int largest_class = 0;
  int smallest_class = 0;
  int similarity_difference = 0;
  int vc_closed = 0;
  int vc_open = 0;
};

inline ParameterReport compute_parameters(const Graph& g) {
  ParameterReport r;
  r.alpha = independence_number(g);
  r.omega = clique_number(g);
  r.complex_number = std::min(r.alpha, r.omega);
  for (int v = 0; v < g.size(); ++v) {
    r.max_degree = std::max(r.max_degree, g.degree(v));
    r.max_codegree = std::max(r.max_codegree, g.codegree(v));
  }
  r.complex_degree = complex_degree(g);
  r.matching = matching_number(g);
  r.co_matching = co_matching_number(g);
  r.c_matching = std::min(r.matching, r.co_matching);
  r.nd = neighbourhood_diversity(g);
  r.largest_class = largest_similarity_class(g);
  r.smallest_class = smallest_similarity_class(g);
  r.similarity_difference = r.largest_class - r.smallest_class;
  r.vc_closed = vc_closed(g).first;
  r.vc_open = vc_open(g).first;
  return r;
}

}  // namespace hspeed
