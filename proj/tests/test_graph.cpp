#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hspeed/families.hpp"
#include "hspeed/graph.hpp"
#include "test_util.hpp"

using namespace hspeed;
using namespace testutil;

TEST_CASE("from_edges basics") {
  const Graph m2 = Graph::from_edges(4, {{0, 1}, {2, 3}});
  CHECK(m2.size() == 4);
  CHECK(m2.adjacent(0, 1));
  CHECK(m2.adjacent(2, 3));
  CHECK_FALSE(m2.adjacent(0, 2));
  CHECK(m2.edge_count() == 2);

  const Graph empty = Graph::from_edges(0, {});
  CHECK(empty.size() == 0);

  const Graph k3 = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(k3.edge_count() == 3);

  // duplicates collapse
  CHECK(Graph::from_edges(2, {{0, 1}, {1, 0}}).edge_count() == 1);

  CHECK_THROWS(Graph::from_edges(3, {{0, 0}}));
  CHECK_THROWS(Graph::from_edges(3, {{0, 3}}));
  CHECK_THROWS(Graph(65));
}

TEST_CASE("complement") {
  const Graph m2 = two_k2();
  const Graph c = complement(m2);
  CHECK(c.adjacent(0, 2));
  CHECK(c.adjacent(0, 3));
  CHECK(c.adjacent(1, 2));
  CHECK(c.adjacent(1, 3));
  CHECK_FALSE(c.adjacent(0, 1));
  CHECK_FALSE(c.adjacent(2, 3));

  CHECK(complement(complete_graph(3)) == edgeless(3));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = random_graph(1 + static_cast<int>(rng() % 12), rng);
    CHECK(complement(complement(g)) == g);
  }
}

TEST_CASE("bipartite complement") {
  const Graph b2 = Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  const Bipartition bp = make_bipartition(b2, bit(0) | bit(1), bit(2) | bit(3));
  const Bipartition bc = bipartite_complement(bp);
  CHECK(bc.graph.edge_count() == 0);
  CHECK(bipartite_complement(bc).graph == b2);

  // the bipartite complement of Z_5 contains an induced Z_4
  const Bipartition z5 = generate_bipartition({Family::Z, false}, 5);
  const Bipartition z5bc = bipartite_complement(z5);
  CHECK(contains_induced(z5bc.graph, generate({Family::Z, false}, 4)));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int a = 1 + static_cast<int>(rng() % 4), b = 1 + static_cast<int>(rng() % 4);
    Graph g(a + b);
    for (int i = 0; i < a; ++i)
      for (int j = a; j < a + b; ++j)
        if (rng() & 1) g.add_edge(i, j);
    const Bipartition p = make_bipartition(g, full_set(a), full_set(a + b) & ~full_set(a));
    const Bipartition twice = bipartite_complement(bipartite_complement(p));
    CHECK(twice.graph == g);
  }
}

TEST_CASE("make_bipartition validates") {
  const Graph k3 = complete_graph(3);
  CHECK_THROWS(make_bipartition(k3, bit(0) | bit(1), bit(2)));  // part not independent
  const Graph p3 = path_graph(3);
  CHECK_THROWS(make_bipartition(p3, bit(0), bit(2)));           // does not cover
  CHECK_THROWS(make_bipartition(p3, bit(0) | bit(2), bit(1) | bit(2)));  // overlap
  CHECK_NOTHROW(make_bipartition(p3, bit(0) | bit(2), bit(1)));
}

TEST_CASE("induced subgraphs") {
  const Graph s3 = generate({Family::S, false}, 3);
  CHECK(induced(s3, VertexSet{0b111}) == complete_graph(3));
  CHECK(induced(s3, VertexSet{0}).size() == 0);

  // x_5 of Z_5 is adjacent to every y_j: the induced graph is a 5-leaf star
  const Graph z5 = generate({Family::Z, false}, 5);
  VertexSet vs = bit(4);
  for (int j = 5; j < 10; ++j) vs |= bit(j);
  const Graph sub = induced(z5, vs);
  CHECK(sub.degree(0) == 5);
  for (int v = 1; v <= 5; ++v) CHECK(sub.degree(v) == 1);
}

TEST_CASE("find_induced examples") {
  CHECK(contains_induced(generate({Family::S, false}, 3), complete_graph(3)));
  CHECK_FALSE(contains_induced(cycle_graph(4), path_graph(4)));
  CHECK(contains_induced(generate({Family::Z, false}, 5), generate({Family::Z, false}, 4)));
}

TEST_CASE("find_induced returns valid embeddings") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph host = random_graph(4 + static_cast<int>(rng() % 7), rng);
    const Graph pattern = random_graph(2 + static_cast<int>(rng() % 3), rng);
    const auto emb = find_induced(host, pattern);
    if (emb) CHECK(embedding_valid(host, pattern, *emb));
  }
}

TEST_CASE("find_induced agrees with exhaustive map search") {
  // every 5-vertex host against every 3-vertex pattern
  for (std::uint64_t hm = 0; hm < mask_count(5); ++hm) {
    const Graph host = from_mask(5, hm);
    for (std::uint64_t pm = 0; pm < mask_count(3); ++pm) {
      const Graph pattern = from_mask(3, pm);
      REQUIRE(contains_induced(host, pattern) == naive_contains_induced(host, pattern));
    }
  }
  // sampled host 6 / pattern 4 pairs
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph host = random_graph(6, rng);
    const Graph pattern = random_graph(4, rng);
    CHECK(contains_induced(host, pattern) == naive_contains_induced(host, pattern));
  }
}

TEST_CASE("canonical codes") {
  const Graph p3a = Graph::from_edges(3, {{0, 1}, {1, 2}});
  const Graph p3b = Graph::from_edges(3, {{1, 0}, {0, 2}});  // path 1-0-2
  CHECK(canonical_code(p3a) == canonical_code(p3b));
  CHECK(canonical_code(complete_graph(3)) != canonical_code(p3a));

  std::set<std::string> codes;
  for (std::uint64_t m = 0; m < mask_count(4); ++m) codes.insert(canonical_code(from_mask(4, m)));
  CHECK(codes.size() == 11);

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const Graph g = random_graph(n, rng);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (g.adjacent(i, j))
          h.add_edge(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    CHECK(canonical_code(g) == canonical_code(h));
  }
  CHECK_THROWS(canonical_code(Graph(11)));
}

TEST_CASE("graph6 round trip") {
  CHECK(to_graph6(edgeless(2)) == "A?");
  CHECK(to_graph6(complete_graph(2)) == "A_");
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng() % 9);
    const Graph g = random_graph(n, rng);
    CHECK(parse_graph6(to_graph6(g)) == g);
  }
  for (int n : {20, 40, 62}) {
    const Graph g = random_graph(n, rng);
    CHECK(parse_graph6(to_graph6(g)) == g);
  }
  CHECK_THROWS(parse_graph6(""));
  CHECK_THROWS(parse_graph6("A"));     // missing edge chunk
  CHECK_THROWS(parse_graph6("A\x01")); // byte below offset
}

TEST_CASE("edge list format") {
  const Graph m2 = two_k2();
  const std::string text = to_edge_list(m2);
  CHECK(parse_edge_list(text) == m2);
  CHECK(parse_edge_list("3; 0-1 1-2") == path_graph(3));
  CHECK(parse_edge_list("2;") == edgeless(2));
  CHECK_THROWS(parse_edge_list("x; 0-1"));
  CHECK_THROWS(parse_edge_list("3; 0-3"));
}

TEST_CASE("bipartite detection") {
  CHECK(is_bipartite(cycle_graph(4)));
  CHECK_FALSE(is_bipartite(cycle_graph(5)));
  CHECK(is_bipartite(edgeless(3)));
  const auto side = bipartition_side(path_graph(4));
  REQUIRE(side.has_value());
  const Graph p4 = path_graph(4);
  CHECK(is_independent_set(p4, *side));
  CHECK(is_independent_set(p4, full_set(4) & ~*side));
}
