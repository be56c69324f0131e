#pragma once

// Named graph families (generators), hereditary-class membership
// recognizers, and universality checkers.
//
// Fixed vertex layouts of the generated graphs:
//   S_n      clique 0..n-1, isolated n..2n-1
//   Q_n      star centre 0, leaves 1..n, isolated n+1..2n
//   B_n      complete cross between 0..n-1 and n..2n-1
//   M_n      perfect matching i <-> n+i
//   Z_n      x_i = i-1, y_j = n+j-1, x_i ~ y_j iff i+j >= n+1
//   Mbc_n    bipartite complement of M_n
//   M*_n     M_n with a clique on the x side (0..n-1)
//   Z*_n     Z_n with a clique on the x side
//   W_n      part A = 0..n-1, part B = n..n+2^n-1; B-vertex n+k is
//            adjacent to the A-vertices in the binary expansion of k
//   D_n      W_n with a clique on A
//   R        generate(R, n) = K_{1,n-1} (largest connected member)
//   E1       one edge 0-1 plus n-2 isolated vertices

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hspeed/graph.hpp"
#include "hspeed/parameters.hpp"

namespace hspeed {

enum class Family { S, Q, B, M, Z, Mbc, Mstar, Zstar, W, D, R, E1 };

struct FamilyId {
  Family base = Family::S;
  bool complemented = false;
};

inline std::string family_token(FamilyId f) {
  std::string base;
  switch (f.base) {
    case Family::S: base = "s"; break;
    case Family::Q: base = "q"; break;
    case Family::B: base = "b"; break;
    case Family::M: base = "m"; break;
    case Family::Z: base = "z"; break;
    case Family::Mbc: base = "mbc"; break;
    case Family::Mstar: base = "mstar"; break;
    case Family::Zstar: base = "zstar"; break;
    case Family::W: base = "w"; break;
    case Family::D: base = "d"; break;
    case Family::R: base = "r"; break;
    case Family::E1: base = "e1"; break;
  }
  return f.complemented ? "co-" + base : base;
}

inline std::optional<FamilyId> parse_family(std::string token) {
  FamilyId f;
  if (token.rfind("co-", 0) == 0) {
    f.complemented = true;
    token = token.substr(3);
  }
  if (token == "s") f.base = Family::S;
  else if (token == "q") f.base = Family::Q;
  else if (token == "b") f.base = Family::B;
  else if (token == "m") f.base = Family::M;
  else if (token == "z") f.base = Family::Z;
  else if (token == "mbc") f.base = Family::Mbc;
  else if (token == "mstar") f.base = Family::Mstar;
  else if (token == "zstar") f.base = Family::Zstar;
  else if (token == "w") f.base = Family::W;
  else if (token == "d") f.base = Family::D;
  else if (token == "r") f.base = Family::R;
  else if (token == "e1") f.base = Family::E1;
  else return std::nullopt;
  return f;
}

// ---------------------------------------------------------------------------
// Generators

inline Graph generate(FamilyId f, int n) {
  if (n < 1) throw std::invalid_argument("family size must be >= 1");
  Graph g;
  switch (f.base) {
    case Family::S: {
      if (2 * n > 64) throw std::invalid_argument("S_n needs 2n <= 64");
      g = Graph(2 * n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
      break;
    }
    case Family::Q: {
      if (2 * n + 1 > 64) throw std::invalid_argument("Q_n needs 2n+1 <= 64");
      g = Graph(2 * n + 1);
      for (int i = 1; i <= n; ++i) g.add_edge(0, i);
      break;
    }
    case Family::B: {
      if (2 * n > 64) throw std::invalid_argument("B_n needs 2n <= 64");
      g = Graph(2 * n);
      for (int i = 0; i < n; ++i)
        for (int j = n; j < 2 * n; ++j) g.add_edge(i, j);
      break;
    }
    case Family::M: {
      if (2 * n > 64) throw std::invalid_argument("M_n needs 2n <= 64");
      g = Graph(2 * n);
      for (int i = 0; i < n; ++i) g.add_edge(i, n + i);
      break;
    }
    case Family::Z: {
      if (2 * n > 64) throw std::invalid_argument("Z_n needs 2n <= 64");
      g = Graph(2 * n);
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          if (i + j >= n + 1) g.add_edge(i - 1, n + j - 1);
      break;
    }
    case Family::Mbc: {
      if (2 * n > 64) throw std::invalid_argument("Mbc_n needs 2n <= 64");
      g = Graph(2 * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) g.add_edge(i, n + j);
      break;
    }
    case Family::Mstar: {
      g = generate({Family::M, false}, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
      break;
    }
    case Family::Zstar: {
      g = generate({Family::Z, false}, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
      break;
    }
    case Family::W:
    case Family::D: {
      if (n >= 6 || n + (1 << n) > 64)
        throw std::invalid_argument("W_n/D_n need n + 2^n <= 64");
      g = Graph(n + (1 << n));
      for (int k = 0; k < (1 << n); ++k)
        for (int i = 0; i < n; ++i)
          if (k & (1 << i)) g.add_edge(i, n + k);
      if (f.base == Family::D)
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
      break;
    }
    case Family::R: {
      if (n > 64) throw std::invalid_argument("R_n needs n <= 64");
      g = Graph(n);
      for (int i = 1; i < n; ++i) g.add_edge(0, i);
      break;
    }
    case Family::E1: {
      if (n > 64) throw std::invalid_argument("E1_n needs n <= 64");
      g = Graph(n);
      if (n >= 2) g.add_edge(0, 1);
      break;
    }
  }
  return f.complemented ? complement(g) : g;
}

/// Canonical bipartition of the two-sided generated graphs (x side first).
/// Only defined for the bipartite families B, M, Z, Mbc, W.
inline Bipartition generate_bipartition(FamilyId f, int n) {
  if (f.complemented) throw std::invalid_argument("no bipartition for complemented families");
  Graph g = generate(f, n);
  switch (f.base) {
    case Family::B:
    case Family::M:
    case Family::Z:
    case Family::Mbc:
      return make_bipartition(std::move(g), full_set(n), full_set(2 * n) & ~full_set(n));
    case Family::W:
      return make_bipartition(std::move(g), full_set(n), full_set(n + (1 << n)) & ~full_set(n));
    default:
      throw std::invalid_argument("family has no canonical bipartition");
  }
}

// ---------------------------------------------------------------------------
// Built-in class recognizers

namespace detail {

/// Exhaustive search for a partition into at most i independent sets and
/// j cliques, vertices assigned in index order with group-opening symmetry
/// pruning.
inline bool eij_member(const Graph& g, int i, int j) {
  const int n = g.size();
  if (n > 16) throw std::invalid_argument("E(i,j) membership is capped at n <= 16");
  if (n == 0) return true;
  std::vector<VertexSet> ind(static_cast<std::size_t>(i), 0);
  std::vector<VertexSet> clq(static_cast<std::size_t>(j), 0);
  auto rec = [&](auto&& self, int v, int used_i, int used_j) -> bool {
    if (v == n) return true;
    for (int a = 0; a < std::min(i, used_i + 1); ++a) {
      if (g.neighbours(v) & ind[static_cast<std::size_t>(a)]) continue;
      ind[static_cast<std::size_t>(a)] |= bit(v);
      if (self(self, v + 1, std::max(used_i, a + 1), used_j)) return true;
      ind[static_cast<std::size_t>(a)] &= ~bit(v);
    }
    for (int a = 0; a < std::min(j, used_j + 1); ++a) {
      const VertexSet c = clq[static_cast<std::size_t>(a)];
      if ((g.neighbours(v) & c) != c) continue;
      clq[static_cast<std::size_t>(a)] |= bit(v);
      if (self(self, v + 1, used_i, std::max(used_j, a + 1))) return true;
      clq[static_cast<std::size_t>(a)] &= ~bit(v);
    }
    return false;
  };
  return rec(rec, 0, 0, 0);
}

}  // namespace detail

/// Split graphs: vertex set partitions into a clique and an independent
/// set; equivalently, no induced 2K_2, C_4, or C_5.
inline bool is_split_graph(const Graph& g) {
  static const Graph two_k2 = Graph::from_edges(4, {{0, 1}, {2, 3}});
  static const Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  static const Graph c5 = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  return !contains_induced(g, two_k2) && !contains_induced(g, c4) && !contains_induced(g, c5);
}

/// Chain graphs: bipartite with neighbourhoods forming an inclusion chain
/// in each part; equivalently, bipartite with no induced 2K_2.
inline bool is_chain_graph(const Graph& g) {
  if (!is_bipartite(g)) return false;
  return !contains_induced(g, generate({Family::M, false}, 2));
}

/// Threshold graphs, recognized by repeated removal of isolated or
/// dominating vertices.
inline bool is_threshold_graph(const Graph& g) {
  VertexSet rest = full_set(g.size());
  while (rest) {
    bool removed = false;
    for (VertexSet t = rest; t;) {
      const int v = lowest_vertex(t);
      t &= t - 1;
      const VertexSet nb = g.neighbours(v) & rest;
      if (nb == 0 || nb == (rest & ~bit(v))) {
        rest &= ~bit(v);
        removed = true;
        break;
      }
    }
    if (!removed) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Family-class membership (the hereditary closure of each generator)

inline bool family_member(FamilyId f, const Graph& g);

namespace detail {

inline bool connected(const Graph& g) {
  if (g.size() == 0) return true;
  VertexSet seen = bit(0);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : set_to_vector(g.neighbours(v) & ~seen)) {
      seen |= bit(u);
      stack.push_back(u);
    }
  }
  return seen == full_set(g.size());
}

/// All edges share a common vertex (vacuously true for edgeless graphs).
inline bool edges_form_star(const Graph& g) {
  int first_u = -1;
  int first_v = -1;
  for (int u = 0; u < g.size() && first_u < 0; ++u)
    for (int v = u + 1; v < g.size(); ++v)
      if (g.adjacent(u, v)) {
        first_u = u;
        first_v = v;
        break;
      }
  if (first_u < 0) return true;
  for (int c : {first_u, first_v}) {
    bool ok = true;
    for (int u = 0; u < g.size() && ok; ++u)
      for (int v = u + 1; v < g.size() && ok; ++v)
        if (g.adjacent(u, v) && u != c && v != c) ok = false;
    if (ok) return true;
  }
  return false;
}

/// Exists a bipartition whose bipartite complement has maximum cross
/// degree <= 1. Searched over all independent-set splits; the graphs
/// involved are small (forbidden patterns, enumeration at n <= 7).
inline bool mbc_member(const Graph& g) {
  const int n = g.size();
  if (n > 20) throw std::invalid_argument("Mbc membership is capped at n <= 20");
  for (VertexSet a = 0; a < (VertexSet{1} << n); ++a) {
    const VertexSet b = full_set(n) & ~a;
    if (!is_independent_set(g, a) || !is_independent_set(g, b)) continue;
    bool ok = true;
    for (VertexSet t = a; t && ok;) {
      const int v = lowest_vertex(t);
      t &= t - 1;
      if (popcount(b & ~g.neighbours(v)) > 1) ok = false;
    }
    for (VertexSet t = b; t && ok;) {
      const int v = lowest_vertex(t);
      t &= t - 1;
      if (popcount(a & ~g.neighbours(v)) > 1) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

/// Exists a partition into a clique and an independent set whose cross
/// edges form a matching (every vertex has at most one cross edge).
inline bool mstar_member(const Graph& g) {
  const int n = g.size();
  if (n > 20) throw std::invalid_argument("Mstar membership is capped at n <= 20");
  for (VertexSet c = 0; c < (VertexSet{1} << n); ++c) {
    const VertexSet i = full_set(n) & ~c;
    if (!is_clique(g, c) || !is_independent_set(g, i)) continue;
    bool ok = true;
    for (VertexSet t = c; t && ok;) {
      const int v = lowest_vertex(t);
      t &= t - 1;
      if (popcount(g.neighbours(v) & i) > 1) ok = false;
    }
    for (VertexSet t = i; t && ok;) {
      const int v = lowest_vertex(t);
      t &= t - 1;
      if (popcount(g.neighbours(v) & c) > 1) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

inline bool family_member(FamilyId f, const Graph& g) {
  if (f.complemented) return family_member({f.base, false}, complement(g));
  switch (f.base) {
    case Family::S: {
      VertexSet nonisolated = 0;
      for (int v = 0; v < g.size(); ++v)
        if (g.degree(v) > 0) nonisolated |= bit(v);
      return is_clique(g, nonisolated);
    }
    case Family::Q:
      return detail::edges_form_star(g);
    case Family::B: {
      if (g.edge_count() == 0) return true;
      if (!detail::connected(g)) return false;
      auto side = bipartition_side(g);
      if (!side) return false;
      const int a = popcount(*side);
      const int b = g.size() - a;
      return g.edge_count() == a * b;
    }
    case Family::M: {
      for (int v = 0; v < g.size(); ++v)
        if (g.degree(v) > 1) return false;
      return true;
    }
    case Family::Z:
      return is_chain_graph(g);
    case Family::Mbc:
      return detail::mbc_member(g);
    case Family::Mstar:
      return detail::mstar_member(g);
    case Family::Zstar:
      return is_threshold_graph(g);
    case Family::W:
      return is_bipartite(g);
    case Family::D:
      return is_split_graph(g);
    case Family::R: {
      if (g.edge_count() == 0) return true;
      // a star K_{1,k} exactly: one centre adjacent to all others, rest independent
      for (int c = 0; c < g.size(); ++c)
        if (g.degree(c) == g.size() - 1 && is_independent_set(g, full_set(g.size()) & ~bit(c)))
          return true;
      return false;
    }
    case Family::E1:
      return g.edge_count() <= 1;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Class specifications

struct ForbiddenSpec {
  std::vector<Graph> forbidden;
};

struct BuiltinSpec {
  enum class Kind { Bipartite, CoBipartite, Split, Chain, Threshold, Eij };
  Kind kind = Kind::Bipartite;
  int i = 0;  // for Eij
  int j = 0;
};

struct FamilyClassSpec {
  FamilyId family;
};

using ClassSpec = std::variant<ForbiddenSpec, BuiltinSpec, FamilyClassSpec>;

inline ForbiddenSpec make_forbidden(std::vector<Graph> forbidden) {
  if (forbidden.empty()) throw std::invalid_argument("forbidden list must be non-empty");
  for (const Graph& h : forbidden)
    if (h.size() < 1) throw std::invalid_argument("forbidden graphs must have n >= 1");
  return ForbiddenSpec{std::move(forbidden)};
}

inline bool is_member(const ClassSpec& c, const Graph& g) {
  if (const auto* f = std::get_if<ForbiddenSpec>(&c)) {
    for (const Graph& h : f->forbidden)
      if (contains_induced(g, h)) return false;
    return true;
  }
  if (const auto* b = std::get_if<BuiltinSpec>(&c)) {
    switch (b->kind) {
      case BuiltinSpec::Kind::Bipartite: return is_bipartite(g);
      case BuiltinSpec::Kind::CoBipartite: return is_bipartite(complement(g));
      case BuiltinSpec::Kind::Split: return is_split_graph(g);
      case BuiltinSpec::Kind::Chain: return is_chain_graph(g);
      case BuiltinSpec::Kind::Threshold: return is_threshold_graph(g);
      case BuiltinSpec::Kind::Eij: return detail::eij_member(g, b->i, b->j);
    }
    return false;
  }
  return family_member(std::get<FamilyClassSpec>(c).family, g);
}

/// True iff the hereditary class Free(F) contains the whole class of
/// family f — equivalently, no forbidden graph belongs to f's class.
inline bool class_contains_family(const ForbiddenSpec& c, FamilyId f) {
  for (const Graph& h : c.forbidden)
    if (family_member(f, h)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Universality checking

struct UniversalityReport {
  FamilyId family;
  int n = 0;
  int members_checked = 0;
  bool pass = false;
  std::optional<Graph> counterexample;
};

/// Enumerates all n-vertex members of family f's class up to isomorphism
/// and confirms each embeds in generate(f, n).
inline UniversalityReport check_universality(FamilyId f, int n) {
  if (n < 1 || n > 7) throw std::invalid_argument("universality enumeration is capped at n <= 7");
  const Graph host = generate(f, n);
  UniversalityReport rep{f, n, 0, true, std::nullopt};

  const int pairs = n * (n - 1) / 2;
  std::set<std::string> seen;
  std::vector<std::pair<int, int>> pair_list;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pair_list.emplace_back(i, j);

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    Graph g(n);
    for (int p = 0; p < pairs; ++p)
      if (mask & (std::uint64_t{1} << p))
        g.add_edge(pair_list[static_cast<std::size_t>(p)].first,
                   pair_list[static_cast<std::size_t>(p)].second);
    if (!family_member(f, g)) continue;
    if (!seen.insert(canonical_code(g)).second) continue;
    ++rep.members_checked;
    if (!contains_induced(host, g)) {
      rep.pass = false;
      rep.counterexample = g;
      return rep;
    }
  }
  return rep;
}

}  // namespace hspeed
