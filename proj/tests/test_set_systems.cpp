#include <algorithm>
#include <random>
#include <vector>

#include "braesslab/instances.hpp"
#include "braesslab/matroid.hpp"
#include "braesslab/set_system.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace braesslab;

namespace {

GroundSet abc() { return GroundSet({"a", "b", "c"}); }

Clutter make_clutter(int ground_size, std::vector<IndexSet> sets) {
  std::vector<std::string> names;
  for (int i = 0; i < ground_size; ++i) names.push_back("r" + std::to_string(i));
  return Clutter(GroundSet(names), std::move(sets));
}

}  // namespace

TEST_CASE("ground set validates and resolves names") {
  GroundSet g({"su", "sv", "uv"});
  CHECK(g.size() == 3);
  CHECK(g.name(1) == "sv");
  CHECK(g.index_of("uv") == 2);
  CHECK_FALSE(g.index_of("nope").has_value());
  CHECK_THROWS_AS(GroundSet({}), ValidationError);
  CHECK_THROWS_AS(GroundSet({"a", "a"}), ValidationError);
  CHECK_THROWS_AS(GroundSet({"a", ""}), ValidationError);
}

TEST_CASE("index set helpers") {
  IndexSet x{0, 2, 4};
  IndexSet y{2, 3};
  CHECK(contains(x, 2));
  CHECK_FALSE(contains(x, 3));
  CHECK(is_subset({2}, y));
  CHECK_FALSE(is_subset(x, y));
  CHECK(is_proper_subset({2}, y));
  CHECK_FALSE(is_proper_subset(y, y));
  CHECK(set_union(x, y) == IndexSet{0, 2, 3, 4});
  CHECK(set_difference(x, y) == IndexSet{0, 4});
  CHECK(set_symmetric_difference(x, y) == IndexSet{0, 3, 4});
  CHECK(exchange(x, 2, 3) == IndexSet{0, 3, 4});
  CHECK(to_mask(x) == 0b10101);
  CHECK(from_mask(0b10101, 5) == x);
}

TEST_CASE("set system canonicalizes members and family order") {
  GroundSet g({"a", "b", "c", "d"});
  SetSystem s(g, {{3, 1}, {0, 2}, {0}});
  CHECK(s.sets() == std::vector<IndexSet>{{0}, {0, 2}, {1, 3}});
  CHECK(s.contains_set({1, 3}));
  CHECK_FALSE(s.contains_set({1}));
  CHECK(s.set_names(1) == std::vector<std::string>{"a", "c"});

  CHECK_THROWS_AS(SetSystem(g, {}), ValidationError);
  CHECK_THROWS_AS(SetSystem(g, {{}}), ValidationError);
  CHECK_THROWS_AS(SetSystem(g, {{0}, {0}}), ValidationError);
  CHECK_THROWS_AS(SetSystem(g, {{4}}), ValidationError);
  CHECK_THROWS_AS(SetSystem(g, {{-1}}), ValidationError);
  CHECK_THROWS_AS(SetSystem::from_names(g, {{"zzz"}}), ValidationError);
}

TEST_CASE("clutter requires an antichain") {
  GroundSet g = abc();
  CHECK_NOTHROW(Clutter(g, {{0}, {1, 2}}));
  CHECK_THROWS_AS(Clutter(g, {{0}, {0, 1}}), ValidationError);
}

TEST_CASE("minimal clutter keeps exactly the inclusion-minimal members") {
  GroundSet g({"a", "b", "c", "d"});
  SetSystem s(g, {{0}, {0, 1}, {1, 2}, {1, 2, 3}, {2, 3}});
  Clutter c = minimal_clutter(s);
  CHECK(c.sets() == std::vector<IndexSet>{{0}, {1, 2}, {2, 3}});

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("r" + std::to_string(i));
    GroundSet ground(names);
    std::uniform_int_distribution<int> mask_dist(1, (1 << n) - 1);
    std::vector<IndexSet> sets;
    int count = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < count; ++k) {
      IndexSet candidate = from_mask(static_cast<std::uint64_t>(mask_dist(rng)), n);
      if (std::find(sets.begin(), sets.end(), candidate) == sets.end()) {
        sets.push_back(candidate);
      }
    }
    SetSystem system(ground, sets);
    Clutter reduced = minimal_clutter(system);
    for (const IndexSet& m : reduced.sets()) {
      CHECK(system.contains_set(m));
      for (const IndexSet& other : system.sets()) {
        CHECK_FALSE(is_proper_subset(other, m));
      }
    }
    for (const IndexSet& member : system.sets()) {
      bool dominated = false;
      for (const IndexSet& m : reduced.sets()) {
        if (is_subset(m, member)) {
          dominated = true;
          break;
        }
      }
      CHECK(dominated);
    }
  }
}

TEST_CASE("matroid recognition on known families") {
  CHECK(is_matroid_base_family(make_clutter(4, uniform_bases(4, 2))));
  CHECK(is_matroid_base_family(make_clutter(4, uniform_bases(4, 1))));
  CHECK(is_matroid_base_family(make_clutter(3, {{0, 1, 2}})));
  CHECK(is_matroid_base_family(
      make_clutter(4, partition_bases({{0, 1}, {2, 3}}, {1, 1}))));
  CHECK(is_matroid_base_family(
      make_clutter(3, spanning_trees(3, complete_graph_edges(3)))));
  CHECK(is_matroid_base_family(
      make_clutter(6, spanning_trees(4, complete_graph_edges(4)))));

  // Paths of the two-route road network: exchange fails.
  CHECK_FALSE(is_matroid_base_family(make_clutter(5, {{0, 2, 4}, {0, 3}, {1, 4}})));
  CHECK_FALSE(is_matroid_base_family(make_clutter(3, {{0}, {1, 2}})));
  CHECK_FALSE(is_matroid_base_family(make_clutter(4, {{0, 1}, {2, 3}})));
}

TEST_CASE("witness extraction is deterministic on pinned families") {
  // Road-network paths: the minimal violation has |Y\X| = 1.
  Clutter roads = make_clutter(5, {{0, 2, 4}, {0, 3}, {1, 4}});
  NonMatroidWitness w = nonmatroid_witness(roads);
  CHECK(w.x == IndexSet{0, 2, 4});
  CHECK(w.y == IndexSet{0, 3});
  CHECK(w.a == 3);
  CHECK(w.b == 2);
  CHECK(w.c == 4);
  CHECK(verify_witness(roads, w));

  // {{a},{b,c}}: the violating pair with |Y\X| = 1 is (X={b,c}, Y={a}).
  Clutter forced = make_clutter(3, {{0}, {1, 2}});
  w = nonmatroid_witness(forced);
  CHECK(w.x == IndexSet{1, 2});
  CHECK(w.y == IndexSet{0});
  CHECK(w.a == 0);
  CHECK(w.b == 1);
  CHECK(w.c == 2);
  CHECK(verify_witness(forced, w));

  // Two disjoint pairs: |Y\X| = 2, so a = e and b, c come from Y\X.
  Clutter pairs = make_clutter(4, {{0, 1}, {2, 3}});
  w = nonmatroid_witness(pairs);
  CHECK(w.x == IndexSet{0, 1});
  CHECK(w.y == IndexSet{2, 3});
  CHECK(w.a == 0);
  CHECK(w.b == 2);
  CHECK(w.c == 3);
  CHECK(verify_witness(pairs, w));

  CHECK_THROWS_AS(nonmatroid_witness(make_clutter(4, uniform_bases(4, 2))),
                  WitnessNotFound);
}

TEST_CASE("witness verification rejects corrupted witnesses") {
  Clutter roads = make_clutter(5, {{0, 2, 4}, {0, 3}, {1, 4}});
  NonMatroidWitness w = nonmatroid_witness(roads);
  NonMatroidWitness bad = w;
  bad.a = w.b;  // a, b, c must be distinct
  CHECK_FALSE(verify_witness(roads, bad));
  bad = w;
  bad.a = 0;  // 0 is in X and Y, not in the symmetric difference
  CHECK_FALSE(verify_witness(roads, bad));
  bad = w;
  bad.x = {0, 3};
  bad.y = {1, 4};  // member pair, but b no longer lies in the symmetric difference
  CHECK_FALSE(verify_witness(roads, bad));
}

TEST_CASE("rank queries follow the matroid axioms") {
  Clutter uniform = make_clutter(4, uniform_bases(4, 2));
  CHECK(matroid_rank(uniform, {}) == 0);
  CHECK(matroid_rank(uniform, {0}) == 1);
  CHECK(matroid_rank(uniform, {0, 1, 2}) == 2);
  CHECK_THROWS_AS(matroid_rank(make_clutter(3, {{0}, {1, 2}}), {0}), NotAMatroid);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 3 + static_cast<int>(rng() % 3);
    Matroid m(make_clutter(n, random_matroid_bases(rng, n)));
    int full = 1 << n;
    std::vector<int> rank_of(static_cast<size_t>(full));
    for (int mask = 0; mask < full; ++mask) {
      rank_of[static_cast<size_t>(mask)] = m.rank(from_mask(static_cast<std::uint64_t>(mask), n));
    }
    CHECK(rank_of[0] == 0);
    for (int mask = 0; mask < full; ++mask) {
      for (int e = 0; e < n; ++e) {
        if (mask & (1 << e)) continue;
        int grown = mask | (1 << e);
        int delta = rank_of[static_cast<size_t>(grown)] - rank_of[static_cast<size_t>(mask)];
        CHECK(delta >= 0);  // monotone
        CHECK(delta <= 1);  // unit increments
        // Submodularity: adding e helps smaller sets at least as much.
        for (int f = 0; f < n; ++f) {
          if ((mask & (1 << f)) || f == e) continue;
          int bigger = mask | (1 << f);
          CHECK(rank_of[static_cast<size_t>(bigger | (1 << e))] -
                    rank_of[static_cast<size_t>(bigger)] <=
                delta);
        }
      }
    }
    // Independence matches rank.
    for (int mask = 0; mask < full; ++mask) {
      IndexSet u = from_mask(static_cast<std::uint64_t>(mask), n);
      CHECK(m.is_independent(u) == (m.rank(u) == static_cast<int>(u.size())));
    }
  }
}

TEST_CASE("greedy minimum-weight basis matches enumeration") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> weight_dist(-2.0, 5.0);
  for (int trial = 0; trial < 120; ++trial) {
    int n = 3 + static_cast<int>(rng() % 4);
    Matroid m(make_clutter(n, random_matroid_bases(rng, n)));
    std::vector<double> weights(static_cast<size_t>(n));
    for (double& w : weights) w = weight_dist(rng);
    IndexSet greedy = min_weight_basis(m, weights);
    REQUIRE(m.bases().contains_set(greedy));
    auto total = [&](const IndexSet& s) {
      double sum = 0.0;
      for (int e : s) sum += weights[static_cast<size_t>(e)];
      return sum;
    };
    double best = total(m.bases().sets().front());
    for (const IndexSet& base : m.bases().sets()) best = std::min(best, total(base));
    CHECK(total(greedy) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("recognition agrees with the first-principles oracle exhaustively") {
  // Every antichain over up to 4 elements (the 5-element sweep runs in the
  // acceptance suite).
  for (int n = 1; n <= 4; ++n) {
    int checked = 0;
    testing::for_each_antichain(n, [&](const std::vector<IndexSet>& family) {
      Clutter c = make_clutter(n, family);
      bool fast = is_matroid_base_family(c);
      bool slow = is_matroid_oracle_bruteforce(c);
      REQUIRE(fast == slow);
      if (!fast) {
        NonMatroidWitness w = nonmatroid_witness(c);
        REQUIRE(verify_witness(c, w));
      }
      ++checked;
    });
    if (n == 4) CHECK(checked == 166);  // Dedekind(4) minus the two trivial antichains
  }
}

TEST_CASE("recognition agrees with the oracle on random clutters") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 5 + static_cast<int>(rng() % 3);
    Clutter c = make_clutter(n, random_antichain(rng, n));
    CHECK(is_matroid_base_family(c) == is_matroid_oracle_bruteforce(c));
  }
}

TEST_CASE("brute-force oracle rejects oversized ground sets") {
  std::vector<IndexSet> single{IndexSet{0}};
  CHECK_THROWS_AS(is_matroid_oracle_bruteforce(make_clutter(21, single)),
                  GroundSetTooLarge);
}
