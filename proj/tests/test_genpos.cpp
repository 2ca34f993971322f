#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"

#include "bfgp/butterfly.hpp"
#include "bfgp/error.hpp"
#include "bfgp/genpos.hpp"
#include "oracles.hpp"

using namespace bfgp;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected bfgp::Error");
  return ErrorCode::invalid_parameter;
}

VertexSet user_set(const Graph& g, std::vector<VertexId> ids) {
  return VertexSet::make(g.ref(), std::move(ids), Provenance::user);
}

std::vector<VertexId> ids_of(const Graph& g,
                             std::initializer_list<std::pair<const char*, int>> labels) {
  std::vector<VertexId> out;
  for (auto [row, level] : labels) {
    out.push_back(id_of(g, {level, parse_row(row, g.family().param)}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("verification of small sets") {
  const Graph p5 = build_path(5);
  const auto dm = all_pairs_distances(p5);
  CHECK(verify_general_position(p5, dm, user_set(p5, {})).verified);
  CHECK(verify_general_position(p5, dm, user_set(p5, {0, 4})).verified);

  auto w = verify_general_position(p5, dm, user_set(p5, {1, 2, 3}));
  CHECK_FALSE(w.verified);
  REQUIRE(w.violation);
  CHECK(*w.violation == CollinearTriple{1, 2, 3});

  // Middle vertex is reported even when it is not the middle id.
  auto w2 = verify_general_position(p5, dm, user_set(p5, {0, 2, 4}));
  REQUIRE(w2.violation);
  CHECK(w2.violation->middle == 2);
  auto w3 = verify_general_position(p5, dm, user_set(p5, {0, 1, 4}));
  REQUIRE(w3.violation);
  CHECK(w3.violation->middle == 1);
}

TEST_CASE("witness triple really is collinear with the stated middle") {
  std::mt19937_64 rng(7);
  const Graph g = build_butterfly(3);
  const auto dm = all_pairs_distances(g);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<VertexId> ids(g.num_vertices());
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(3 + trial % 8);
    auto w = verify_general_position(g, dm, user_set(g, ids));
    if (w.violation) {
      CHECK(lies_between(dm, w.violation->first, w.violation->middle,
                         w.violation->last));
    }
  }
}

TEST_CASE("invalid sets are rejected") {
  const Graph p5 = build_path(5);
  const auto dm = all_pairs_distances(p5);
  CHECK(code_of([&] { verify_general_position(p5, dm, user_set(p5, {0, 5})); }) ==
        ErrorCode::invalid_parameter);
  CHECK(code_of([] { VertexSet::make("x", {1, 1}, Provenance::user); }) ==
        ErrorCode::invalid_parameter);
}

TEST_CASE("constructed set for BF(2)") {
  const Graph g = build_butterfly(2);
  const VertexSet s = construct_bf_gp_set(2);
  CHECK(s.members ==
        ids_of(g, {{"01", 0}, {"11", 0}, {"10", 2}, {"11", 2}, {"00", 1}}));
  CHECK(s.provenance == Provenance::constructed);
  CHECK(s.graph_ref == g.ref());
  const auto dm = all_pairs_distances(g);
  CHECK(verify_general_position(g, dm, s).verified);
}

TEST_CASE("constructed set sizes and families") {
  CHECK(construct_bf_gp_set(3).size() == 10);
  for (int r = 2; r <= 8; ++r) {
    CAPTURE(r);
    const Graph g = build_butterfly(r);
    const VertexSet s = construct_bf_gp_set(r);
    CHECK(s.size() == (std::size_t{1} << r) + (std::size_t{1} << (r - 2)));
    std::size_t low = 0, high = 0, one = 0;
    for (VertexId v : s.members) {
      auto lbl = label_of(g, v);
      if (lbl.level == 0) {
        ++low;
        CHECK(test_row_bit(lbl.row, r, r));
      } else if (lbl.level == r) {
        ++high;
        CHECK(test_row_bit(lbl.row, r, 1));
      } else {
        ++one;
        CHECK(lbl.level == 1);
        CHECK_FALSE(test_row_bit(lbl.row, r, 1));
        CHECK_FALSE(test_row_bit(lbl.row, r, r));
      }
    }
    CHECK(low == (std::size_t{1} << (r - 1)));
    CHECK(high == (std::size_t{1} << (r - 1)));
    CHECK(one == (std::size_t{1} << (r - 2)));
  }
  const Graph g4 = build_butterfly(4);
  CHECK(verify_general_position(g4, all_pairs_distances(g4), construct_bf_gp_set(4))
            .verified);
  CHECK(code_of([] { construct_bf_gp_set(1); }) == ErrorCode::invalid_parameter);
}

TEST_CASE("exact solver on calibration graphs") {
  const Graph c5 = build_cycle(5);
  auto res = max_general_position(c5, all_pairs_distances(c5));
  CHECK(res.size == 3);
  CHECK(res.optimal);
  CHECK_FALSE(res.budget_exhausted);
  CHECK(res.best_set.provenance == Provenance::solver_exact);

  const Graph k3 = build_cycle(3);
  CHECK(max_general_position(k3, all_pairs_distances(k3)).size == 3);

  const Graph b2 = build_butterfly(2);
  auto b2res = max_general_position(b2, all_pairs_distances(b2));
  CHECK(b2res.size == 5);
  CHECK(b2res.optimal);

  const Graph single = build_path(1);
  CHECK(max_general_position(single, all_pairs_distances(single)).size == 1);
}

TEST_CASE("pool-restricted solve bounds degree-2 vertices") {
  for (int r : {2, 3}) {
    const Graph g = build_butterfly(r);
    const auto dm = all_pairs_distances(g);
    SolveOptions opts;
    opts.pool = classify_vertices(g).x;
    auto res = max_general_position(g, dm, opts);
    CHECK(res.optimal);
    CHECK(res.size <= (std::size_t{1} << r));
    for (VertexId v : res.best_set.members) CHECK(g.degree(v) == 2);
  }
  // Brute force on BF(2) restricted to X gives 4.
  const Graph g = build_butterfly(2);
  SolveOptions opts;
  opts.pool = classify_vertices(g).x;
  CHECK(max_general_position(g, all_pairs_distances(g), opts).size == 4);
}

TEST_CASE("solver error paths") {
  const Graph empty = Graph::from_edges(0, {});
  CHECK(code_of([&] { max_general_position(empty, all_pairs_distances(empty)); }) ==
        ErrorCode::invalid_parameter);
  const Graph c5 = build_cycle(5);
  const auto dm = all_pairs_distances(c5);
  SolveOptions zero;
  zero.node_budget = 0;
  CHECK(code_of([&] { max_general_position(c5, dm, zero); }) ==
        ErrorCode::invalid_parameter);
  SolveOptions outside;
  outside.pool = std::vector<VertexId>{0, 9};
  CHECK(code_of([&] { max_general_position(c5, dm, outside); }) ==
        ErrorCode::invalid_parameter);
  const Graph split = Graph::from_edges(4, {{0, 1}, {2, 3}});
  CHECK(code_of([&] { max_general_position(split, all_pairs_distances(split)); }) ==
        ErrorCode::not_connected);
}

TEST_CASE("node budget cuts the search deterministically") {
  const Graph g = build_butterfly(3);
  const auto dm = all_pairs_distances(g);
  SolveOptions tight;
  tight.node_budget = 5;
  auto a = max_general_position(g, dm, tight);
  auto b = max_general_position(g, dm, tight);
  CHECK_FALSE(a.optimal);
  CHECK(a.budget_exhausted);
  CHECK(a.nodes_explored == 5);
  CHECK(a.best_set.members == b.best_set.members);
  CHECK(a.best_set.provenance == Provenance::solver_lower_bound);
  CHECK(verify_general_position(g, dm, a.best_set).verified);
}

TEST_CASE("solver matches 2^n enumeration on the small corpus") {
  // Exhaustive labeled connected graphs up to 6 vertices, 100 random ones on
  // 7..9 vertices, and the 9-vertex path and cycle.
  std::vector<Graph> corpus = oracle::small_corpus(6, 100);
  corpus.push_back(build_path(9));
  corpus.push_back(build_cycle(9));
  std::size_t mismatches = 0, unsound = 0;
  for (const Graph& g : corpus) {
    const auto dm = all_pairs_distances(g);
    auto res = max_general_position(g, dm);
    REQUIRE(res.optimal);
    if (static_cast<int>(res.size) != oracle::brute_force_gp(oracle::adjacency(g))) {
      ++mismatches;
    }
    if (!verify_general_position(g, dm, res.best_set).verified) ++unsound;
  }
  CHECK(mismatches == 0);
  CHECK(unsound == 0);
}

TEST_CASE("pool monotonicity") {
  std::mt19937_64 rng(11);
  const Graph g = build_butterfly(3);
  const auto dm = all_pairs_distances(g);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<VertexId> big;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (rng() % 3 != 0) big.push_back(v);
    std::vector<VertexId> small;
    for (VertexId v : big)
      if (rng() % 2) small.push_back(v);
    if (small.empty()) continue;
    SolveOptions a, b;
    a.pool = small;
    b.pool = big;
    CHECK(max_general_position(g, dm, a).size <= max_general_position(g, dm, b).size);
  }
}

TEST_CASE("greedy lower bound") {
  const Graph p2 = build_path(2);
  CHECK(greedy_gp_lower_bound(p2, all_pairs_distances(p2), GreedyOrder::id).members ==
        std::vector<VertexId>{0, 1});

  const Graph b2 = build_butterfly(2);
  const auto dm = all_pairs_distances(b2);
  auto by_id = greedy_gp_lower_bound(b2, dm, GreedyOrder::id);
  CHECK(by_id.members == std::vector<VertexId>{0, 1, 2, 3});
  CHECK(verify_general_position(b2, dm, by_id).verified);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = greedy_gp_lower_bound(b2, dm, GreedyOrder::random, seed);
    CHECK(verify_general_position(b2, dm, s).verified);
    CHECK(s.size() <= 5);
    CHECK(s.members == greedy_gp_lower_bound(b2, dm, GreedyOrder::random, seed).members);
  }
  auto deg = greedy_gp_lower_bound(b2, dm, GreedyOrder::degree);
  CHECK(verify_general_position(b2, dm, deg).verified);
}

TEST_CASE("greedy results are maximal by inclusion") {
  const Graph g = build_butterfly(3);
  const auto dm = all_pairs_distances(g);
  for (auto order : {GreedyOrder::id, GreedyOrder::degree, GreedyOrder::random}) {
    auto s = greedy_gp_lower_bound(g, dm, order, 3);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (std::binary_search(s.members.begin(), s.members.end(), v)) continue;
      auto bigger = s.members;
      bigger.push_back(v);
      CHECK_FALSE(verify_general_position(g, dm, user_set(g, bigger)).verified);
    }
  }
}
