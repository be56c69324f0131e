#pragma once

// Labelled simple graphs on up to 64 vertices, one adjacency row per
// machine word. Everything downstream (parameter search, class
// enumeration, witness extraction) relies on constant-time adjacency
// tests against these rows.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hspeed {

using VertexSet = std::uint64_t;

inline int popcount(VertexSet s) { return std::popcount(s); }

inline VertexSet bit(int v) { return VertexSet{1} << v; }

inline VertexSet full_set(int n) {
  return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}

inline int lowest_vertex(VertexSet s) { return std::countr_zero(s); }

/// Lists the members of a vertex set in increasing order.
inline std::vector<int> set_to_vector(VertexSet s) {
  std::vector<int> out;
  while (s) {
    int v = lowest_vertex(s);
    out.push_back(v);
    s &= s - 1;
  }
  return out;
}

class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(checked(n)), adj_(static_cast<std::size_t>(n), 0) {}

  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  int size() const { return n_; }

  bool adjacent(int u, int v) const { return (adj_[static_cast<std::size_t>(u)] >> v) & 1; }

  VertexSet neighbours(int v) const { return adj_[static_cast<std::size_t>(v)]; }

  VertexSet closed_neighbourhood(int v) const { return adj_[static_cast<std::size_t>(v)] | bit(v); }

  int degree(int v) const { return popcount(adj_[static_cast<std::size_t>(v)]); }

  int codegree(int v) const { return n_ - 1 - degree(v); }

  int edge_count() const {
    int m = 0;
    for (int v = 0; v < n_; ++v) m += degree(v);
    return m / 2;
  }

  void add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("loops are not allowed");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("vertex out of range");
    adj_[static_cast<std::size_t>(u)] |= bit(v);
    adj_[static_cast<std::size_t>(v)] |= bit(u);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  static int checked(int n) {
    if (n < 0 || n > 64) throw std::invalid_argument("vertex count must be in [0, 64]");
    return n;
  }

  int n_ = 0;
  std::vector<VertexSet> adj_;
};

inline Graph complement(const Graph& g) {
  const int n = g.size();
  Graph c(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) c.add_edge(u, v);
  return c;
}

inline bool is_independent_set(const Graph& g, VertexSet s) {
  for (VertexSet t = s; t;) {
    int v = lowest_vertex(t);
    t &= t - 1;
    if (g.neighbours(v) & s) return false;
  }
  return true;
}

inline bool is_clique(const Graph& g, VertexSet s) {
  for (VertexSet t = s; t;) {
    int v = lowest_vertex(t);
    t &= t - 1;
    if ((g.neighbours(v) & s) != (s & ~bit(v))) return false;
  }
  return true;
}

/// Induced subgraph on `vs`, vertices relabelled 0..|vs|-1 in increasing
/// original order.
inline Graph induced(const Graph& g, VertexSet vs) {
  if (vs & ~full_set(g.size())) throw std::out_of_range("vertex out of range");
  std::vector<int> verts = set_to_vector(vs);
  const int k = static_cast<int>(verts.size());
  Graph h(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (g.adjacent(verts[static_cast<std::size_t>(i)], verts[static_cast<std::size_t>(j)]))
        h.add_edge(i, j);
  return h;
}

inline Graph induced(const Graph& g, const std::vector<int>& vs) {
  VertexSet s = 0;
  for (int v : vs) {
    if (v < 0 || v >= g.size()) throw std::out_of_range("vertex out of range");
    s |= bit(v);
  }
  return induced(g, s);
}

// ---------------------------------------------------------------------------
// Bipartitions

/// A graph together with a bipartition into two independent sets.
struct Bipartition {
  Graph graph;
  VertexSet part_a = 0;
  VertexSet part_b = 0;
};

inline Bipartition make_bipartition(Graph g, VertexSet a, VertexSet b) {
  if (a & b) throw std::invalid_argument("parts must be disjoint");
  if ((a | b) != full_set(g.size())) throw std::invalid_argument("parts must cover all vertices");
  if (!is_independent_set(g, a) || !is_independent_set(g, b))
    throw std::invalid_argument("parts must be independent sets");
  return Bipartition{std::move(g), a, b};
}

/// Inverts the cross edges; parts are unchanged.
inline Bipartition bipartite_complement(const Bipartition& b) {
  Graph g(b.graph.size());
  for (int u : set_to_vector(b.part_a))
    for (int v : set_to_vector(b.part_b))
      if (!b.graph.adjacent(u, v)) g.add_edge(u, v);
  return Bipartition{std::move(g), b.part_a, b.part_b};
}

/// Attempts to 2-colour `g`; returns one part of a valid bipartition, or
/// nullopt if `g` has an odd cycle. Isolated vertices land in part A.
inline std::optional<VertexSet> bipartition_side(const Graph& g) {
  const int n = g.size();
  std::vector<int> colour(static_cast<std::size_t>(n), -1);
  VertexSet a = 0;
  for (int s = 0; s < n; ++s) {
    if (colour[static_cast<std::size_t>(s)] != -1) continue;
    colour[static_cast<std::size_t>(s)] = 0;
    a |= bit(s);
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : set_to_vector(g.neighbours(v))) {
        if (colour[static_cast<std::size_t>(u)] == -1) {
          colour[static_cast<std::size_t>(u)] = 1 - colour[static_cast<std::size_t>(v)];
          if (colour[static_cast<std::size_t>(u)] == 0) a |= bit(u);
          stack.push_back(u);
        } else if (colour[static_cast<std::size_t>(u)] == colour[static_cast<std::size_t>(v)]) {
          return std::nullopt;
        }
      }
    }
  }
  return a;
}

inline bool is_bipartite(const Graph& g) { return bipartition_side(g).has_value(); }

// ---------------------------------------------------------------------------
// Induced-subgraph search

/// map[i] = host vertex carrying pattern vertex i.
using Embedding = std::vector<int>;

inline bool embedding_valid(const Graph& host, const Graph& pattern, const Embedding& map) {
  const int np = pattern.size();
  if (static_cast<int>(map.size()) != np) return false;
  VertexSet used = 0;
  for (int v : map) {
    if (v < 0 || v >= host.size() || (used & bit(v))) return false;
    used |= bit(v);
  }
  for (int u = 0; u < np; ++u)
    for (int v = u + 1; v < np; ++v)
      if (pattern.adjacent(u, v) !=
          host.adjacent(map[static_cast<std::size_t>(u)], map[static_cast<std::size_t>(v)]))
        return false;
  return true;
}

/// Backtracking search for an induced copy of `pattern` in `host`.
/// Pattern vertices are matched in order of descending degree (ties by
/// index) and host candidates in increasing order, so the returned
/// embedding is deterministic.
inline std::optional<Embedding> find_induced(const Graph& host, const Graph& pattern) {
  const int np = pattern.size();
  const int nh = host.size();
  if (np == 0) return Embedding{};
  if (np > nh) return std::nullopt;

  std::vector<int> order(static_cast<std::size_t>(np));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pattern.degree(a) > pattern.degree(b); });

  Embedding map(static_cast<std::size_t>(np), -1);
  VertexSet used = 0;

  auto rec = [&](auto&& self, int depth) -> bool {
    if (depth == np) return true;
    const int u = order[static_cast<std::size_t>(depth)];
    for (int v = 0; v < nh; ++v) {
      if (used & bit(v)) continue;
      if (host.degree(v) < pattern.degree(u)) continue;
      if (nh - 1 - host.degree(v) < np - 1 - pattern.degree(u)) continue;
      bool ok = true;
      for (int d = 0; d < depth; ++d) {
        const int w = order[static_cast<std::size_t>(d)];
        if (pattern.adjacent(u, w) != host.adjacent(v, map[static_cast<std::size_t>(w)])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map[static_cast<std::size_t>(u)] = v;
      used |= bit(v);
      if (self(self, depth + 1)) return true;
      used &= ~bit(v);
      map[static_cast<std::size_t>(u)] = -1;
    }
    return false;
  };

  if (rec(rec, 0)) return map;
  return std::nullopt;
}

inline bool contains_induced(const Graph& host, const Graph& pattern) {
  return find_induced(host, pattern).has_value();
}

// ---------------------------------------------------------------------------
// Canonical codes

/// Brute-force canonical form: the lexicographic minimum, over all vertex
/// permutations, of the row-major upper-triangle bit string (bits packed
/// MSB-first, prefixed with the vertex count). Equal codes iff isomorphic.
inline std::string canonical_code(const Graph& g) {
  const int n = g.size();
  if (n > 10) throw std::invalid_argument("canonical_code is capped at n <= 10");
  const int nbits = n * (n - 1) / 2;
  const std::size_t nbytes = static_cast<std::size_t>((nbits + 7) / 8);

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);

  std::string best;
  std::string code;
  do {
    code.assign(nbytes, '\0');
    int idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++idx)
        if (g.adjacent(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]))
          code[static_cast<std::size_t>(idx >> 3)] |= static_cast<char>(1 << (7 - (idx & 7)));
    if (best.empty() ? nbytes > 0 : code < best) best = code;
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::string out(1, static_cast<char>(n));
  out += best;
  return out;
}

// ---------------------------------------------------------------------------
// graph6 I/O (bit-exact per the standard encoding, n <= 62)

inline std::string to_graph6(const Graph& g) {
  const int n = g.size();
  if (n > 62) throw std::invalid_argument("graph6 encoder supports n <= 62");
  std::string out(1, static_cast<char>(63 + n));
  int acc = 0;
  int nb = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++nb == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        nb = 0;
      }
    }
  if (nb > 0) out.push_back(static_cast<char>(63 + (acc << (6 - nb))));
  return out;
}

inline Graph parse_graph6(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty graph6 string");
  const int n = static_cast<int>(static_cast<unsigned char>(text[0])) - 63;
  if (n < 0 || n > 62) throw std::invalid_argument("unsupported graph6 size byte");
  const int nbits = n * (n - 1) / 2;
  const std::size_t need = 1 + static_cast<std::size_t>((nbits + 5) / 6);
  if (text.size() != need) throw std::invalid_argument("malformed graph6 string: bad length");

  Graph g(n);
  int idx = 0;
  for (std::size_t c = 1; c < text.size(); ++c) {
    const int byte = static_cast<int>(static_cast<unsigned char>(text[c])) - 63;
    if (byte < 0 || byte > 63) throw std::invalid_argument("malformed graph6 string: bad byte");
    for (int b = 5; b >= 0; --b, ++idx) {
      if (idx >= nbits) {
        if ((byte >> b) & 1) throw std::invalid_argument("malformed graph6 string: padding bits set");
        continue;
      }
      if ((byte >> b) & 1) {
        // idx-th pair in column-major upper-triangle order
        int j = 1;
        int k = idx;
        while (k >= j) {
          k -= j;
          ++j;
        }
        g.add_edge(k, j);
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Edge-list text format: "n; u-v u-v ..."

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.size() << ";";
  for (int u = 0; u < g.size(); ++u)
    for (int v = u + 1; v < g.size(); ++v)
      if (g.adjacent(u, v)) out << " " << u << "-" << v;
  return out.str();
}

inline Graph parse_edge_list(const std::string& text) {
  const std::size_t semi = text.find(';');
  if (semi == std::string::npos) throw std::invalid_argument("edge list must contain ';'");
  int n = 0;
  try {
    n = std::stoi(text.substr(0, semi));
  } catch (const std::exception&) {
    throw std::invalid_argument("edge list has a malformed vertex count");
  }
  Graph g(n);
  std::istringstream rest(text.substr(semi + 1));
  std::string tok;
  while (rest >> tok) {
    const std::size_t dash = tok.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == tok.size())
      throw std::invalid_argument("malformed edge token: " + tok);
    int u = 0;
    int v = 0;
    try {
      u = std::stoi(tok.substr(0, dash));
      v = std::stoi(tok.substr(dash + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed edge token: " + tok);
    }
    g.add_edge(u, v);
  }
  return g;
}

}  // namespace hspeed
