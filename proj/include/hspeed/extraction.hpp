#pragma once

// Constructive Ramsey-type extraction procedures. Each operation searches
// a graph for a certified witness (an induced copy of a named pattern) and
// returns it, or reports which stage of the search starved. The theoretical
// guarantee thresholds behind these procedures are astronomically large and
// are never enforced; every operation is a search with a certificate.
//
// All arbitrary choices resolve to the lowest vertex index, so identical
// inputs always produce identical witnesses. When the proof-shaped pipeline
// starves at desk scale, a direct pattern search runs before Failure is
// reported, so a witness that exists at this size is still found.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hspeed/families.hpp"
#include "hspeed/graph.hpp"
#include "hspeed/parameters.hpp"

namespace hspeed {

// ---------------------------------------------------------------------------
// Result type

struct ExtractionResult {
  bool found = false;
  std::string kind;     // family token, or "k" for a clique
  int size = 0;
  Embedding embedding;  // host vertices in pattern order
  std::string failure_stage;

  static ExtractionResult failure(std::string stage) {
    ExtractionResult r;
    r.failure_stage = std::move(stage);
    return r;
  }
};

/// The pattern graph an ExtractionResult claims to embed.
inline Graph extraction_pattern(const std::string& kind, int size) {
  if (kind == "k") {
    Graph g(size);
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j) g.add_edge(i, j);
    return g;
  }
  auto f = parse_family(kind);
  if (!f) throw std::invalid_argument("unknown pattern kind: " + kind);
  return generate(*f, size);
}

inline bool extraction_valid(const Graph& host, const ExtractionResult& r) {
  if (!r.found) return false;
  return embedding_valid(host, extraction_pattern(r.kind, r.size), r.embedding);
}

namespace detail {

/// Embeds `kind` into the induced subgraph on `candidate` and lifts the
/// embedding back to host vertex labels.
inline std::optional<ExtractionResult> result_from_candidate(const Graph& host,
                                                             VertexSet candidate,
                                                             const std::string& kind, int size) {
  const Graph pat = extraction_pattern(kind, size);
  const std::vector<int> verts = set_to_vector(candidate);
  if (static_cast<int>(verts.size()) < pat.size()) return std::nullopt;
  auto emb = find_induced(induced(host, candidate), pat);
  if (!emb) return std::nullopt;
  ExtractionResult r;
  r.found = true;
  r.kind = kind;
  r.size = size;
  for (int v : *emb) r.embedding.push_back(verts[static_cast<std::size_t>(v)]);
  return r;
}

/// Direct pattern search fallback, tried in the given order.
inline ExtractionResult direct_search(const Graph& host, const std::vector<std::string>& kinds,
                                      const std::vector<int>& sizes, std::string stage) {
  for (std::size_t i = 0; i < kinds.size(); ++i)
    if (auto r = result_from_candidate(host, full_set(host.size()), kinds[i], sizes[i])) return *r;
  return ExtractionResult::failure(std::move(stage));
}

/// Cross-edge view of g between two disjoint vertex sets, relabelled so
/// part A comes first; `orig` maps back to host labels.
struct CrossView {
  Bipartition bp;
  std::vector<int> orig;
};

inline CrossView make_cross_view(const Graph& g, VertexSet a, VertexSet b) {
  std::vector<int> orig = set_to_vector(a);
  const int na = static_cast<int>(orig.size());
  for (int v : set_to_vector(b)) orig.push_back(v);
  const int n = static_cast<int>(orig.size());
  Graph cross(n);
  for (int i = 0; i < na; ++i)
    for (int j = na; j < n; ++j)
      if (g.adjacent(orig[static_cast<std::size_t>(i)], orig[static_cast<std::size_t>(j)]))
        cross.add_edge(i, j);
  return CrossView{make_bipartition(std::move(cross), full_set(na), full_set(n) & ~full_set(na)),
                   std::move(orig)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Monochromatic pair-subsets

/// Lexicographically least subset of size `target` (indices into 0..n-1)
/// all of whose pairs share one colour, together with that colour.
/// colour(i, j) must be symmetric and in [0, num_colours).
inline std::optional<std::pair<int, std::vector<int>>> monochromatic_pair_subset(
    int num_items, const std::function<int(int, int)>& colour, int num_colours, int target) {
  if (num_colours > 8) throw std::invalid_argument("at most 8 colours supported");
  if (num_items > 24) throw std::invalid_argument("monochromatic search is capped at 24 items");
  if (target < 0 || target > num_items) return std::nullopt;
  if (target <= 1) {
    std::vector<int> s;
    for (int i = 0; i < target; ++i) s.push_back(i);
    return std::make_pair(0, s);
  }

  std::optional<std::pair<int, std::vector<int>>> best;
  for (int c = 0; c < num_colours; ++c) {
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int start) -> bool {
      if (static_cast<int>(chosen.size()) == target) return true;
      for (int v = start; v <= num_items - (target - static_cast<int>(chosen.size())); ++v) {
        bool ok = true;
        for (int u : chosen)
          if (colour(u, v) != c) {
            ok = false;
            break;
          }
        if (!ok) continue;
        chosen.push_back(v);
        if (self(self, v + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (rec(rec, 0) && (!best || chosen < best->second)) best = std::make_pair(c, chosen);
  }
  return best;
}

namespace detail {

/// Largest subset monochromatic in the single given colour, of size at
/// least min_size; lexicographically least among largest. Exact search.
inline std::optional<std::vector<int>> largest_mono_subset(
    int num_items, const std::function<int(int, int)>& colour, int c, int min_size) {
  std::vector<int> best;
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int start) -> void {
    if (chosen.size() > best.size()) best = chosen;
    for (int v = start; v < num_items; ++v) {
      if (static_cast<int>(chosen.size()) + (num_items - v) <= static_cast<int>(best.size()))
        break;  // cannot beat the incumbent
      bool ok = true;
      for (int u : chosen)
        if (colour(u, v) != c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(v);
      self(self, v + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  if (static_cast<int>(best.size()) < min_size) return std::nullopt;
  return best;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bipartite Ramsey witness

struct BicliqueWitness {
  bool complemented = false;  // true: found in the bipartite complement
  std::vector<int> side_a;    // vertices from part A
  std::vector<int> side_b;
};

/// Exact search for an s+s biclique in the cross graph, then in its
/// bipartite complement. Lexicographically least witness.
inline std::optional<BicliqueWitness> bipartite_ramsey_witness(const Bipartition& b, int s) {
  const std::vector<int> av = set_to_vector(b.part_a);
  auto search = [&](bool complemented) -> std::optional<BicliqueWitness> {
    if (static_cast<int>(av.size()) < s || popcount(b.part_b) < s) return std::nullopt;
    std::vector<int> idx(static_cast<std::size_t>(s));
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      VertexSet common = b.part_b;
      for (int i : idx) {
        const VertexSet nb = b.graph.neighbours(av[static_cast<std::size_t>(i)]);
        common &= complemented ? ~nb : nb;
      }
      if (popcount(common) >= s) {
        BicliqueWitness w;
        w.complemented = complemented;
        for (int i : idx) w.side_a.push_back(av[static_cast<std::size_t>(i)]);
        std::vector<int> bs = set_to_vector(common);
        w.side_b.assign(bs.begin(), bs.begin() + s);
        return w;
      }
      // next s-combination of av
      int k = s - 1;
      while (k >= 0 && idx[static_cast<std::size_t>(k)] == static_cast<int>(av.size()) - s + k) --k;
      if (k < 0) break;
      ++idx[static_cast<std::size_t>(k)];
      for (int j = k + 1; j < s; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return std::nullopt;
  };
  if (s < 1) return BicliqueWitness{};
  if (auto w = search(false)) return w;
  return search(true);
}

// ---------------------------------------------------------------------------
// Complex-number extraction: S_n or co-S_n

inline ExtractionResult extract_complex(const Graph& g, int n) {
  VertexSet clique = max_clique(g);
  VertexSet indep = max_independent_set(g);
  indep &= ~clique;  // the two share at most one vertex; drop it from I
  if (popcount(clique) < n || popcount(indep) < n)
    return detail::direct_search(g, {"s", "co-s"}, {n, n}, "complex-number");

  auto view = detail::make_cross_view(g, clique, indep);
  auto w = bipartite_ramsey_witness(view.bp, n);
  if (w) {
    ExtractionResult r;
    r.found = true;
    r.size = n;
    if (w->complemented) {
      // clique side + independent side with no cross edges: S_n
      r.kind = "s";
      for (int v : w->side_a) r.embedding.push_back(view.orig[static_cast<std::size_t>(v)]);
      for (int v : w->side_b) r.embedding.push_back(view.orig[static_cast<std::size_t>(v)]);
    } else {
      // full cross: co-S_n (independent part first, then the clique)
      r.kind = "co-s";
      for (int v : w->side_b) r.embedding.push_back(view.orig[static_cast<std::size_t>(v)]);
      for (int v : w->side_a) r.embedding.push_back(view.orig[static_cast<std::size_t>(v)]);
    }
    if (extraction_valid(g, r)) return r;
  }
  return detail::direct_search(g, {"s", "co-s"}, {n, n}, "bipartite-ramsey");
}

// ---------------------------------------------------------------------------
// Matching lemma on bipartite graphs: M_s or B_t

namespace detail {

struct MatchedPairs {
  std::vector<std::pair<int, int>> pairs;  // (x in part A, y in part B)
};

inline MatchedPairs matched_pairs(const Bipartition& b) {
  MatchedPairs mp;
  for (auto [u, v] : max_matching_edges(b.graph)) {
    if (b.part_a & bit(u))
      mp.pairs.emplace_back(u, v);
    else
      mp.pairs.emplace_back(v, u);
  }
  std::sort(mp.pairs.begin(), mp.pairs.end());
  return mp;
}

}  // namespace detail

inline ExtractionResult extract_from_bipartite_matching(const Bipartition& b, int s, int t) {
  if (s < 1 || t < 1) throw std::invalid_argument("targets must be >= 1");
  const Graph& g = b.graph;
  const auto mp = detail::matched_pairs(b);
  const int q = static_cast<int>(mp.pairs.size());

  // 4-colouring of pairs of matching edges (i < j):
  //   0: no edges between them, 1: both cross edges,
  //   2: x_i y_j only, 3: y_i x_j only
  auto colour = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    const bool e1 = g.adjacent(mp.pairs[static_cast<std::size_t>(i)].first,
                               mp.pairs[static_cast<std::size_t>(j)].second);
    const bool e2 = g.adjacent(mp.pairs[static_cast<std::size_t>(i)].second,
                               mp.pairs[static_cast<std::size_t>(j)].first);
    if (e1 && e2) return 1;
    if (e1) return 2;
    if (e2) return 3;
    return 0;
  };

  auto build = [&](const std::vector<int>& sel, const std::string& kind, int size,
                   const std::function<Embedding(const std::vector<int>&)>& layout)
      -> std::optional<ExtractionResult> {
    ExtractionResult r;
    r.found = true;
    r.kind = kind;
    r.size = size;
    r.embedding = layout(sel);
    if (extraction_valid(g, r)) return r;
    return std::nullopt;
  };

  if (q <= 24) {
    // colour 0, size s: an induced matching
    if (auto sel = detail::largest_mono_subset(q, colour, 0, s)) {
      auto r = build(*sel, "m", s, [&](const std::vector<int>& sl) {
        Embedding e;
        for (int i = 0; i < s; ++i) e.push_back(mp.pairs[static_cast<std::size_t>(sl[static_cast<std::size_t>(i)])].first);
        for (int i = 0; i < s; ++i) e.push_back(mp.pairs[static_cast<std::size_t>(sl[static_cast<std::size_t>(i)])].second);
        return e;
      });
      if (r) return *r;
    }
    // colour 1, size t: a biclique
    if (auto sel = detail::largest_mono_subset(q, colour, 1, t)) {
      auto r = build(*sel, "b", t, [&](const std::vector<int>& sl) {
        Embedding e;
        for (int i = 0; i < t; ++i) e.push_back(mp.pairs[static_cast<std::size_t>(sl[static_cast<std::size_t>(i)])].first);
        for (int i = 0; i < t; ++i) e.push_back(mp.pairs[static_cast<std::size_t>(sl[static_cast<std::size_t>(i)])].second);
        return e;
      });
      if (r) return *r;
    }
    // colours 2/3 of size 2t-1 induce a chain; a biclique of size t sits in
    // its dense half
    for (int c : {2, 3}) {
      auto sel = detail::largest_mono_subset(q, colour, c, 2 * t - 1);
      if (!sel) continue;
      auto r = build(*sel, "b", t, [&](const std::vector<int>& sl) {
        Embedding e;
        if (c == 2) {
          // x_a ~ y_b iff a <= b: x from the low ranks, y from the high
          for (int i = 0; i < t; ++i) e.push_back(mp.pairs[static_cast<std::size_t>(sl[static_cast<std::size_t>(i)])].first);
          for (int i = t - 1; i < 2 * t - 1; ++i) e.push_back(mp.pairs[static_cast<std::size_t>(sl[static_cast<std::size_t>(i)])].second);
        } else {
          // x_a ~ y_b iff a >= b
          for (int i = t - 1; i < 2 * t - 1; ++i) e.push_back(mp.pairs[static_cast<std::size_t>(sl[static_cast<std::size_t>(i)])].first);
          for (int i = 0; i < t; ++i) e.push_back(mp.pairs[static_cast<std::size_t>(sl[static_cast<std::size_t>(i)])].second);
        }
        return e;
      });
      if (r) return *r;
    }
  }

  return detail::direct_search(g, {"m", "b"}, {s, t}, "monochromatic");
}

// ---------------------------------------------------------------------------
// Matching lemma on general graphs: M_s or B_t or K_p

inline ExtractionResult extract_from_matching(const Graph& g, int s, int t, int p) {
  const auto matching = max_matching_edges(g);
  VertexSet white = 0;
  VertexSet black = 0;
  std::vector<int> partner(static_cast<std::size_t>(g.size()), -1);
  for (auto [u, v] : matching) {
    const int w = std::min(u, v);
    const int b = std::max(u, v);
    white |= bit(w);
    black |= bit(b);
    partner[static_cast<std::size_t>(w)] = b;
    partner[static_cast<std::size_t>(b)] = w;
  }

  auto clique_result = [&](VertexSet c) {
    ExtractionResult r;
    r.found = true;
    r.kind = "k";
    r.size = p;
    r.embedding = set_to_vector(c);
    return r;
  };

  if (auto c = detail::independent_set_of_size(complement(g), white, p)) return clique_result(*c);

  const int aw = detail::max_independent_rec(g, white);
  const VertexSet a = aw > 0 ? *detail::independent_set_of_size(g, white, aw) : 0;
  VertexSet b1 = 0;
  for (int v : set_to_vector(a)) b1 |= bit(partner[static_cast<std::size_t>(v)]);

  if (auto c = detail::independent_set_of_size(complement(g), b1, p)) return clique_result(*c);

  const int ab = detail::max_independent_rec(g, b1);
  const VertexSet a1 = ab > 0 ? *detail::independent_set_of_size(g, b1, ab) : 0;
  VertexSet a2 = 0;
  for (int v : set_to_vector(a1)) a2 |= bit(partner[static_cast<std::size_t>(v)]);

  if (a1 && a2) {
    // both sides independent, so the induced subgraph is bipartite
    auto view = detail::make_cross_view(g, a2, a1);
    ExtractionResult sub = extract_from_bipartite_matching(view.bp, s, t);
    if (sub.found) {
      for (int& v : sub.embedding) v = view.orig[static_cast<std::size_t>(v)];
      if (extraction_valid(g, sub)) return sub;
    }
  }
  return detail::direct_search(g, {"m", "b", "k"}, {s, t, p}, "bipartite-matching");
}

// ---------------------------------------------------------------------------
// Skew matchings

struct SkewMatching {
  std::vector<std::pair<int, int>> pairs;  // ordered (x_i, y_i)
  bool complemented = false;
};

inline bool skew_matching_valid(const Graph& g, const SkewMatching& sm) {
  const auto& ps = sm.pairs;
  VertexSet used = 0;
  for (auto [x, y] : ps) {
    if (x == y || (used & bit(x)) || (used & bit(y))) return false;
    used |= bit(x) | bit(y);
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (g.adjacent(ps[i].first, ps[i].second) == sm.complemented) return false;
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (g.adjacent(ps[i].second, ps[j].first) != sm.complemented) return false;
  }
  return true;
}

namespace detail {

struct SkewRounds {
  std::vector<std::pair<int, int>> smalls;  // straight skew pairs
  std::vector<std::pair<int, int>> bigs;    // complemented skew pairs
};

/// Runs the big/small shrinking procedure to exhaustion on the part with
/// more pairwise non-similar vertices (ties favour part A).
inline SkewRounds run_skew_rounds(const Bipartition& b) {
  auto reps_of = [&](VertexSet part) {
    VertexSet reps = 0;
    std::vector<VertexSet> seen;
    for (int v : set_to_vector(part)) {
      const VertexSet nb = b.graph.neighbours(v);
      if (std::find(seen.begin(), seen.end(), nb) == seen.end()) {
        seen.push_back(nb);
        reps |= bit(v);
      }
    }
    return reps;
  };
  const VertexSet ra = reps_of(b.part_a);
  const VertexSet rb = reps_of(b.part_b);
  VertexSet d = popcount(ra) >= popcount(rb) ? ra : rb;
  const VertexSet other = popcount(ra) >= popcount(rb) ? b.part_b : b.part_a;

  SkewRounds out;
  for (;;) {
    int y = -1;
    for (int v : set_to_vector(other)) {
      const VertexSet nb = b.graph.neighbours(v) & d;
      if (nb != 0 && nb != d) {
        y = v;
        break;
      }
    }
    if (y < 0) break;
    const VertexSet nb = b.graph.neighbours(y) & d;
    const bool big = popcount(nb) > popcount(d & ~nb);
    if (big) {
      const int x = lowest_vertex(d & ~nb);
      out.bigs.emplace_back(x, y);
      d &= nb;  // drop the non-neighbours
    } else {
      const int x = lowest_vertex(nb);
      out.smalls.emplace_back(x, y);
      d &= ~nb;  // drop the neighbours
    }
  }
  return out;
}

}  // namespace detail

inline std::optional<SkewMatching> find_skew_matching(const Bipartition& b, int m) {
  auto rounds = detail::run_skew_rounds(b);
  if (static_cast<int>(rounds.smalls.size()) >= m) {
    SkewMatching sm{{rounds.smalls.begin(), rounds.smalls.begin() + m}, false};
    return sm;
  }
  if (static_cast<int>(rounds.bigs.size()) >= m) {
    SkewMatching sm{{rounds.bigs.begin(), rounds.bigs.begin() + m}, true};
    return sm;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Neighbourhood-diversity lemma, bipartite case: M_p, Z_p or Mbc_p

namespace detail {

/// A structure of matched pairs in the cross relation: kind "m" means
/// x_a ~ y_b iff a == b, "z" means a <= b (a chain), "mbc" means a != b.
struct PairStructure {
  std::string kind;
  std::vector<std::pair<int, int>> pairs;
};

/// Derives the largest M/Z/Mbc pair structure reachable from the skew
/// rounds, preferring kinds in the lemma order M, Z, Mbc.
inline std::optional<PairStructure> nd_pair_structure(const Bipartition& b, int p) {
  auto rounds = run_skew_rounds(b);
  const Graph& g = b.graph;

  auto adjacency_colour = [&](const std::vector<std::pair<int, int>>& ps) {
    return [&g, &ps](int i, int j) {
      if (i > j) std::swap(i, j);
      return g.adjacent(ps[static_cast<std::size_t>(i)].first,
                        ps[static_cast<std::size_t>(j)].second)
                 ? 1
                 : 0;
    };
  };

  auto select = [](const std::vector<std::pair<int, int>>& ps, const std::vector<int>& idx) {
    std::vector<std::pair<int, int>> out;
    for (int i : idx) out.push_back(ps[static_cast<std::size_t>(i)]);
    return out;
  };

  const auto& sm = rounds.smalls;
  const auto& bg = rounds.bigs;
  const int ns = static_cast<int>(sm.size());
  const int nb = static_cast<int>(bg.size());

  // straight skew matching: colour 0 -> M, colour 1 -> Z (x_a ~ y_b iff a <= b)
  if (ns <= 24) {
    if (auto idx = largest_mono_subset(ns, adjacency_colour(sm), 0, p))
      return PairStructure{"m", select(sm, *idx)};
  }
  if (ns <= 24) {
    if (auto idx = largest_mono_subset(ns, adjacency_colour(sm), 1, p))
      return PairStructure{"z", select(sm, *idx)};
  }
  if (nb <= 24) {
    // complemented skew matching, colour 0: x_a ~ y_b iff b < a. Re-pairing
    // (x_{k+1}, y_k) and reversing yields a chain of size one less.
    if (auto idx = largest_mono_subset(nb, adjacency_colour(bg), 0, p + 1)) {
      std::vector<std::pair<int, int>> chain;
      for (std::size_t k = 0; k + 1 < idx->size(); ++k)
        chain.emplace_back(bg[static_cast<std::size_t>((*idx)[k + 1])].first,
                           bg[static_cast<std::size_t>((*idx)[k])].second);
      std::reverse(chain.begin(), chain.end());
      return PairStructure{"z", std::move(chain)};
    }
    // colour 1: x_a ~ y_b iff a != b, the bipartite complement of a matching
    if (auto idx = largest_mono_subset(nb, adjacency_colour(bg), 1, p))
      return PairStructure{"mbc", select(bg, *idx)};
  }
  return std::nullopt;
}

/// Embedding of the pattern named by a PairStructure restricted to the
/// pairs at `ranks` (increasing positions within st.pairs).
inline ExtractionResult pair_structure_embedding(const PairStructure& st,
                                                 const std::vector<int>& ranks) {
  const int p = static_cast<int>(ranks.size());
  ExtractionResult r;
  r.found = true;
  r.size = p;
  auto x = [&](int rank1) { return st.pairs[static_cast<std::size_t>(ranks[static_cast<std::size_t>(rank1 - 1)])].first; };
  auto y = [&](int rank1) { return st.pairs[static_cast<std::size_t>(ranks[static_cast<std::size_t>(rank1 - 1)])].second; };
  if (st.kind == "z") {
    // structure rule a <= b; pattern Z_p has x_i ~ y_j iff i + j >= p+1,
    // matched by sending pattern x_i to rank p+1-i and pattern y_j to rank j
    r.kind = "z";
    for (int i = 1; i <= p; ++i) r.embedding.push_back(x(p + 1 - i));
    for (int j = 1; j <= p; ++j) r.embedding.push_back(y(j));
  } else {
    r.kind = st.kind;
    for (int i = 1; i <= p; ++i) r.embedding.push_back(x(i));
    for (int j = 1; j <= p; ++j) r.embedding.push_back(y(j));
  }
  return r;
}

}  // namespace detail

inline ExtractionResult extract_nd_bipartite(const Bipartition& b, int p) {
  auto st = detail::nd_pair_structure(b, p);
  if (st && static_cast<int>(st->pairs.size()) >= p) {
    std::vector<int> ranks(static_cast<std::size_t>(p));
    std::iota(ranks.begin(), ranks.end(), 0);
    ExtractionResult r = detail::pair_structure_embedding(*st, ranks);
    if (extraction_valid(b.graph, r)) return r;
  }
  return detail::direct_search(b.graph, {"m", "z", "mbc"}, {p, p, p}, "skew-matching");
}

// ---------------------------------------------------------------------------
// Neighbourhood-diversity lemma, general case: one of the nine patterns

inline const std::vector<std::string>& nd_nine_kinds() {
  static const std::vector<std::string> kinds{"m",    "mbc",    "z",     "co-m", "co-mbc",
                                              "co-z", "mstar",  "co-mstar", "zstar"};
  return kinds;
}

inline ExtractionResult extract_nd_general(const Graph& g, int p) {
  auto fallback = [&](const std::string& stage) {
    return detail::direct_search(g, nd_nine_kinds(), std::vector<int>(9, p), stage);
  };

  // one representative per similarity class
  VertexSet reps = 0;
  for (VertexSet cls : similarity_partition(g)) reps |= bit(lowest_vertex(cls));

  // candidate white sets: a homogeneous subset of the representatives,
  // larger option first (ties: the independent set)
  const int ai = detail::max_independent_rec(g, reps);
  const int ac = detail::max_independent_rec(complement(g), reps);
  std::vector<VertexSet> whites;
  const VertexSet indw = ai > 0 ? *detail::independent_set_of_size(g, reps, ai) : 0;
  const VertexSet clqw = ac > 0 ? *detail::independent_set_of_size(complement(g), reps, ac) : 0;
  if (ai >= ac) {
    whites = {indw, clqw};
  } else {
    whites = {clqw, indw};
  }

  for (VertexSet a : whites) {
    if (popcount(a) < p) continue;
    const VertexSet rest = full_set(g.size()) & ~a;
    if (!rest) continue;
    auto view = detail::make_cross_view(g, a, rest);
    auto st = detail::nd_pair_structure(view.bp, p);
    if (!st || static_cast<int>(st->pairs.size()) < p) continue;

    // lift pair labels back to host vertices
    for (auto& pr : st->pairs) {
      pr.first = view.orig[static_cast<std::size_t>(pr.first)];
      pr.second = view.orig[static_cast<std::size_t>(pr.second)];
    }

    // refine: first p-subset of pairs whose black endpoints are
    // homogeneous in g
    const int L = static_cast<int>(st->pairs.size());
    std::vector<int> idx(static_cast<std::size_t>(p));
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      VertexSet blacks = 0;
      for (int i : idx) blacks |= bit(st->pairs[static_cast<std::size_t>(i)].second);
      if (is_clique(g, blacks) || is_independent_set(g, blacks)) {
        VertexSet cand = blacks;
        for (int i : idx) cand |= bit(st->pairs[static_cast<std::size_t>(i)].first);
        for (const std::string& kind : nd_nine_kinds())
          if (auto r = detail::result_from_candidate(g, cand, kind, p)) return *r;
      }
      int k = p - 1;
      while (k >= 0 && idx[static_cast<std::size_t>(k)] == L - p + k) --k;
      if (k < 0) break;
      ++idx[static_cast<std::size_t>(k)];
      for (int j = k + 1; j < p; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return fallback("homogeneous-refinement");
}

// ---------------------------------------------------------------------------
// Reverse shattering

/// Given A shattering B by open neighbourhoods with |B| = 2^n, returns the
/// n coordinate vertices of A (one per bit of the subset-indexing of B)
/// together with the witness showing B shatters them.
inline std::pair<VertexSet, ShatterWitness> reverse_shatter(const Graph& g, VertexSet a,
                                                            VertexSet b) {
  if (a & b) throw std::invalid_argument("A and B must be disjoint");
  const std::vector<int> bv = set_to_vector(b);
  const int sz = static_cast<int>(bv.size());
  int n = 0;
  while ((1 << n) < sz) ++n;
  if ((1 << n) != sz) throw std::invalid_argument("|B| must be a power of two");

  // verify the precondition: every subset of B is an open trace of some a in A
  for (int mask = 0; mask < sz; ++mask) {
    VertexSet target = 0;
    for (int i = 0; i < sz; ++i)
      if (mask & (1 << i)) target |= bit(bv[static_cast<std::size_t>(i)]);
    bool hit = false;
    for (int v : set_to_vector(a))
      if ((g.neighbours(v) & b) == target) {
        hit = true;
        break;
      }
    if (!hit) throw std::invalid_argument("A does not shatter B in open mode");
  }

  // coordinate vertices: a_i's trace on B is the i-th coordinate function
  std::vector<int> coords;
  for (int i = 0; i < n; ++i) {
    VertexSet target = 0;
    for (int k = 0; k < sz; ++k)
      if (k & (1 << i)) target |= bit(bv[static_cast<std::size_t>(k)]);
    int found = -1;
    for (int v : set_to_vector(a))
      if ((g.neighbours(v) & b) == target) {
        found = v;
        break;
      }
    coords.push_back(found);
  }

  VertexSet astar = 0;
  for (int v : coords) astar |= bit(v);
  std::vector<int> sorted = set_to_vector(astar);

  // witness: the subset of A* with characteristic vector alpha is realized
  // by the B-vertex indexed alpha
  ShatterWitness w{sorted, true, std::vector<int>(static_cast<std::size_t>(1) << n, -1)};
  for (int mask = 0; mask < (1 << n); ++mask) {
    int alpha = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) {
        const int v = sorted[static_cast<std::size_t>(i)];
        const auto it = std::find(coords.begin(), coords.end(), v);
        alpha |= 1 << (it - coords.begin());
      }
    w.witnesses[static_cast<std::size_t>(mask)] = bv[static_cast<std::size_t>(alpha)];
  }
  if (!witness_valid(g, w)) throw std::logic_error("reverse shattering witness failed to verify");
  return {astar, w};
}

// ---------------------------------------------------------------------------
// VC-dimension lemma: W_n, co-W_n, D_n or co-D_n

inline ExtractionResult extract_vc(const Graph& g, int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("extract_vc supports 1 <= n <= 4");
  const std::vector<std::string> kinds{"w", "co-w", "d", "co-d"};
  auto fallback = [&](const std::string& stage) {
    return detail::direct_search(g, kinds, std::vector<int>(4, n), stage);
  };
  if (g.size() > 20) return fallback("vc-cap");

  const auto [vo, wit] = vc_open(g);
  VertexSet shat = 0;
  for (int v : wit.shattered) shat |= bit(v);

  // homogeneous subset of the shattered set, of size 2^n
  const int need = 1 << n;
  std::optional<VertexSet> aprime = detail::independent_set_of_size(g, shat, need);
  if (!aprime) aprime = detail::independent_set_of_size(complement(g), shat, need);
  if (!aprime) return fallback("homogeneous-shattered-set");

  auto witA = detail::shatter_witness(g, *aprime, true);
  if (!witA) return fallback("shattering-restriction");
  VertexSet witness_set = 0;
  for (int v : witA->witnesses) witness_set |= bit(v);

  auto [bprime, witB] = reverse_shatter(g, witness_set, *aprime);
  if (!(is_clique(g, bprime) || is_independent_set(g, bprime)))
    return fallback("homogeneous-coordinates");

  VertexSet cand = bprime;
  for (int v : witB.witnesses) cand |= bit(v);
  for (const std::string& kind : kinds)
    if (auto r = detail::result_from_candidate(g, cand, kind, n)) return *r;
  return fallback("classification");
}

}  // namespace hspeed
