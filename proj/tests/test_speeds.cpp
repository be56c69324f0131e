#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hspeed/families.hpp"
#include "hspeed/graph.hpp"
#include "hspeed/speeds.hpp"
#include "test_util.hpp"

using namespace hspeed;
using namespace testutil;

namespace {

ClassSpec family_spec(Family base, bool co = false) { return FamilyClassSpec{{base, co}}; }

}  // namespace

TEST_CASE("count_labelled matches the closed forms") {
  CHECK(count_labelled(family_spec(Family::S), 4) == 12);
  CHECK(count_labelled(family_spec(Family::B), 4) == 8);
  CHECK(count_labelled(family_spec(Family::Q), 3) == 7);

  for (int n = 1; n <= 6; ++n) {
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    CHECK(count_labelled(family_spec(Family::S), n) == (std::uint64_t{1} << n) - un);
    CHECK(count_labelled(family_spec(Family::B), n) == (std::uint64_t{1} << (n - 1)));
    CHECK(count_labelled(family_spec(Family::Q), n) ==
          un * (std::uint64_t{1} << (n - 1)) - un * (un + 1) / 2 + 1);
    CHECK(count_labelled(family_spec(Family::E1), n) == un * (un - 1) / 2 + 1);
    if (n >= 3) CHECK(count_labelled(family_spec(Family::R), n) == un + 1);
  }
  CHECK_THROWS(count_labelled(make_forbidden({complete_graph(3)}), 8));
}

TEST_CASE("formula_count") {
  CHECK(formula_count({Family::E1, false}, 5).value == 11);
  const auto m4 = formula_count({Family::M, false}, 4);
  CHECK(m4.value == 2);
  CHECK(m4.lower_bound);
  CHECK(count_labelled(family_spec(Family::M), 4) == 10);
  CHECK(formula_count({Family::S, false}, 1).value == 1);
  const auto r2 = formula_count({Family::R, false}, 2);
  CHECK(r2.small_n_flag);
  CHECK(count_labelled(family_spec(Family::R), 2) == 2);
  CHECK_THROWS(formula_count({Family::W, false}, 3));
  // complemented classes share counts
  CHECK(formula_count({Family::S, true}, 5).value == formula_count({Family::S, false}, 5).value);
}

TEST_CASE("factorial lower bounds for the nine dense-layer families") {
  const Family nine[] = {Family::M, Family::Mbc, Family::Z, Family::Mstar, Family::Zstar};
  for (int n = 2; n <= 6; ++n) {
    std::uint64_t fact = 1;
    for (std::uint64_t i = 2; i <= static_cast<std::uint64_t>(n) / 2; ++i) fact *= i;
    for (Family f : nine) {
      CHECK(count_labelled(family_spec(f), n) >= fact);
      CHECK(count_labelled(family_spec(f, true), n) >= fact);
    }
  }
}

TEST_CASE("complement symmetry of counts") {
  for (int n = 1; n <= 5; ++n) {
    CHECK(count_labelled(family_spec(Family::S), n) == count_labelled(family_spec(Family::S, true), n));
    CHECK(count_labelled(family_spec(Family::Z), n) == count_labelled(family_spec(Family::Z, true), n));
    const ClassSpec tri = make_forbidden({complete_graph(3)});
    const ClassSpec co_tri = make_forbidden({edgeless(3)});
    CHECK(count_labelled(tri, n) == count_labelled(co_tri, n));
  }
}

TEST_CASE("entropy estimates") {
  // K_8 cannot appear below 8 vertices, so this class is all graphs there
  const ClassSpec all = make_forbidden({complete_graph(8)});
  CHECK(entropy_estimate(all, 3) == doctest::Approx(1.0));
  CHECK(entropy_estimate(family_spec(Family::S), 6) ==
        doctest::Approx(std::log2(58.0) / 15.0));
  const double bip = entropy_estimate(BuiltinSpec{BuiltinSpec::Kind::Bipartite, 0, 0}, 5);
  CHECK(bip > 0.0);
  CHECK(bip < 1.0);
  CHECK_THROWS(entropy_estimate(all, 1));
}

TEST_CASE("index_of") {
  CHECK(index_of(make_forbidden({complete_graph(3)})) == 2);
  CHECK(index_of(make_forbidden({two_k2(), cycle_graph(4), cycle_graph(5)})) == 2);
  CHECK(index_of(make_forbidden({complete_graph(2)})) == 1);
  for (int r = 1; r <= 3; ++r)
    CHECK(index_of(make_forbidden({complete_graph(r + 1)})) == r);
  CHECK_THROWS(index_of(ForbiddenSpec{}));

  // cross-check the E(i,j) logic with the unpruned oracle on the examples
  const Graph k3 = complete_graph(3);
  CHECK_FALSE(naive_eij(k3, 2, 0));
  CHECK(naive_eij(k3, 2, 1));
  CHECK(naive_eij(k3, 0, 1));
  for (const Graph& h : {two_k2(), cycle_graph(4), cycle_graph(5)}) {
    CHECK_FALSE(naive_eij(h, 1, 1));
    for (int i = 0; i <= 3; ++i) CHECK(naive_eij(h, i, 3 - i));
  }
}

TEST_CASE("layer classifier on forbidden specs") {
  const Graph p3 = path_graph(3);
  const Graph co_p3 = complement(p3);

  const auto v1 = classify_layer(make_forbidden({complete_graph(2)}));
  CHECK(v1.layer == Layer::constant);
  CHECK_FALSE(v1.evidence_only);
  CHECK(v1.witnesses.size() == 4);

  const auto v2 = classify_layer(make_forbidden({p3, co_p3}));
  CHECK(v2.layer == Layer::constant);

  const auto v3 = classify_layer(make_forbidden({p3, complete_graph(3), two_k2()}));
  CHECK(v3.layer == Layer::polynomial);
  CHECK(v3.witnesses.size() == 8);

  const auto v4 = classify_layer(make_forbidden({p3, two_k2()}));
  CHECK(v4.layer == Layer::exponential);
  CHECK(v4.witnesses.size() == 9);

  const auto v5 = classify_layer(make_forbidden({two_k2(), cycle_graph(4), path_graph(4)}));
  CHECK(v5.layer == Layer::superexp_entropy0);
  CHECK(v5.witnesses.size() == 3);

  const auto v6 = classify_layer(make_forbidden({complete_graph(3)}));
  CHECK(v6.layer == Layer::positive_entropy);
  CHECK(v6.index == 2);
  CHECK(v6.entropy == doctest::Approx(0.5));

  // the verdict is reproducible from the witness list: every recorded
  // witness graph really lies in the family it excludes
  for (const auto& [token, g6] : v4.witnesses)
    CHECK(family_member(*parse_family(token), parse_graph6(g6)));
}

TEST_CASE("layer classifier evidence path for builtins") {
  const auto chain = classify_layer(BuiltinSpec{BuiltinSpec::Kind::Chain, 0, 0});
  CHECK(chain.evidence_only);
  CHECK(chain.layer == Layer::superexp_entropy0);

  const auto threshold = classify_layer(BuiltinSpec{BuiltinSpec::Kind::Threshold, 0, 0});
  CHECK(threshold.evidence_only);
  CHECK(threshold.layer == Layer::superexp_entropy0);

  const auto split = classify_layer(BuiltinSpec{BuiltinSpec::Kind::Split, 0, 0});
  CHECK(split.evidence_only);
  CHECK(split.layer == Layer::positive_entropy);
  CHECK(split.index == 2);

  const auto matchings = classify_layer(family_spec(Family::M));
  CHECK(matchings.evidence_only);
}

TEST_CASE("nd count bound") {
  std::uint64_t count = 0, bound = 0;
  CHECK(nd_count_bound_check(1, 4, &count, &bound));
  CHECK(count == 2);
  CHECK(bound == 2);
  CHECK(nd_count_bound_check(2, 5, &count, &bound));
  CHECK(bound == 256);
  CHECK(nd_count_bound_check(1, 1, &count, &bound));
  CHECK(count == 1);
  CHECK_THROWS(nd_count_bound_check(4, 4));
}

TEST_CASE("polynomial count check") {
  const auto [expr0, count0] = polynomial_count_check(0, 5);
  CHECK(count0 == 2);
  CHECK(expr0 == 4);
  CHECK(count0 <= expr0);

  const auto [expr1, count1] = polynomial_count_check(1, 4);
  CHECK(expr1 == 64);
  CHECK(count1 <= expr1);

  // degenerate: threshold n-c = 1 admits every graph
  const auto [expr2, count2] = polynomial_count_check(2, 3);
  CHECK(count2 == mask_count(3));
}

TEST_CASE("count cache") {
  const std::string path = "test_speeds_cache.jsonl";
  std::remove(path.c_str());
  {
    CountCache cache(path);
    CHECK(count_labelled(family_spec(Family::S), 5, &cache) == 27);
  }
  {
    CountCache cache(path);
    CHECK(cache.lookup(class_description(family_spec(Family::S)), 5) == 27);
  }
  // corrupt lines are skipped, valid ones kept
  {
    std::ofstream out(path, std::ios::app);
    out << "{not json\n";
  }
  {
    CountCache cache(path);
    CHECK(cache.lookup(class_description(family_spec(Family::S)), 5) == 27);
  }
  std::remove(path.c_str());

  // identical classes described by different labelled graphs share a key
  const Graph p3a = Graph::from_edges(3, {{0, 1}, {1, 2}});
  const Graph p3b = Graph::from_edges(3, {{0, 2}, {2, 1}});
  CHECK(class_description(make_forbidden({p3a})) == class_description(make_forbidden({p3b})));
  CHECK(class_description(make_forbidden({p3a})) !=
        class_description(make_forbidden({complete_graph(3)})));
}

TEST_CASE("speed report") {
  const auto r = speed_report(family_spec(Family::S), 5);
  CHECK(r.counts.at(4) == 12);
  CHECK(r.formula_deltas.at(4).first == 12);
  CHECK(r.formula_deltas.at(4).second == 12);
  CHECK(r.entropy_estimates.at(5) > 0.0);
}
