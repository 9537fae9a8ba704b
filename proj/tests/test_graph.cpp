#include <catch2/catch_amalgamated.hpp>

#include "distmagic/families.hpp"
#include "distmagic/graph.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace distmagic;

TEST_CASE("vertex_weight on worked examples") {
    const Graph g = fixtures::three_c4();
    const Labeling id = Labeling::identity(12);
    for (int v = 1; v <= 12; ++v) CHECK(vertex_weight(g, id, v) == 13);

    const Graph empty5(5);
    CHECK(vertex_weight(empty5, Labeling::identity(5), 1) == 0);

    const Graph fig2 = fixtures::p3_2c4();
    CHECK(vertex_weight(fig2, Labeling::identity(11), 11) == 11);
    CHECK(fig2.neighbors(11) == std::vector<int>{1, 10});
}

TEST_CASE("vertex_weight rejects bad arguments") {
    const Graph g = fixtures::magic_c4();
    CHECK_THROWS_AS(vertex_weight(g, Labeling::identity(4), 0), std::out_of_range);
    CHECK_THROWS_AS(vertex_weight(g, Labeling::identity(4), 5), std::out_of_range);
    CHECK_THROWS_AS(vertex_weight(g, Labeling::identity(3), 1), std::invalid_argument);
}

TEST_CASE("verify_identity_magic") {
    CHECK(verify_identity_magic(fixtures::magic_c4()) == 5);
    CHECK(verify_identity_magic(fixtures::branch_7_7()) == 7);
    CHECK_FALSE(verify_identity_magic(Graph::from_edges(2, {{1, 2}})).has_value());
    CHECK_FALSE(verify_identity_magic(Graph(0)).has_value());
    // edgeless graphs report the (non-magic) common weight 0
    CHECK(verify_identity_magic(Graph(5)) == 0);
}

TEST_CASE("degree_label_identity_check") {
    const Labeling id12 = Labeling::identity(12);
    CHECK(degree_label_identity_check(fixtures::three_c4(), id12, 13));
    CHECK(degree_label_identity_check(Graph(6), Labeling::identity(6), 0));
    CHECK_FALSE(degree_label_identity_check(fixtures::magic_c4(), Labeling::identity(4), 4));
}

TEST_CASE("find_magic_labeling brute force") {
    const Graph p3 = Graph::from_edges(3, {{1, 2}, {2, 3}});
    const auto found = find_magic_labeling(p3);
    REQUIRE(found.has_value());
    CHECK(found->second == 3);
    CHECK(found->first.map[2] == 3);  // the center carries the top label

    CHECK_FALSE(find_magic_labeling(Graph::from_edges(2, {{1, 2}})).has_value());

    Graph c5(5);
    for (int v = 1; v <= 5; ++v) c5.add_edge(v, v % 5 + 1);
    CHECK_FALSE(find_magic_labeling(c5).has_value());

    CHECK_THROWS_AS(find_magic_labeling(Graph(10)), capacity_error);
}

TEST_CASE("magic constant is labeling-invariant", "[property]") {
    // every valid labeling of a fixed distance magic graph gives the same k
    const Graph cases[] = {fixtures::magic_c4(), fixtures::branch_7_7(),
                           construct_tc4(2).graph};
    for (const Graph& g : cases) {
        const int n = g.order();
        Labeling f = Labeling::identity(n);
        std::set<long long> constants;
        std::size_t valid = 0;
        do {
            const auto w = weight_vector(g, f);
            if (std::count(w.begin() + 1, w.end(), w[1]) == n) {
                constants.insert(w[1]);
                ++valid;
            }
        } while (std::next_permutation(f.map.begin() + 1, f.map.end()));
        CHECK(valid > 0);
        CHECK(constants.size() == 1);
    }
}

TEST_CASE("identity weights respect the label-sum bound", "[property]") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 11;
        const Graph g = oracles::random_graph(rng, n);
        const Labeling id = Labeling::identity(n);
        for (int v = 1; v <= n; ++v)
            CHECK(vertex_weight(g, id, v) <= static_cast<long long>(n) * (n + 1) / 2 - v);
    }
}

TEST_CASE("graph construction invariants") {
    Graph g(4);
    CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 2), std::out_of_range);
    CHECK_THROWS_AS(g.add_edge(1, 5), std::out_of_range);
    g.add_edge(3, 1);
    g.add_edge(1, 3);  // idempotent
    CHECK(g.edge_count() == 1);
    CHECK(g.neighbors(1) == std::vector<int>{3});
    g.check_valid();

    std::vector<std::uint64_t> masks(4, 0);
    masks[1] = 1ull << 2;  // 1 claims 2, but 2 does not claim 1
    CHECK_THROWS_AS(Graph::from_neighbor_masks(3, masks), std::invalid_argument);
}

TEST_CASE("permuted relabels consistently") {
    const Graph g = fixtures::branch_7_7();
    std::mt19937 rng(7);
    const auto perm = oracles::random_permutation(rng, 7);
    const Graph h = g.permuted(perm);
    h.check_valid();
    CHECK(h.edge_count() == g.edge_count());
    for (int v = 1; v <= 7; ++v)
        for (int u : g.neighbors(v)) CHECK(h.has_edge(perm[v], perm[u]));
    CHECK_THROWS_AS(g.permuted(std::vector<int>(8, 1)), std::invalid_argument);
}

TEST_CASE("labeling bijection check") {
    CHECK(Labeling::identity(5).is_bijection());
    Labeling f = Labeling::identity(3);
    f.map[2] = 1;  // duplicates label 1
    CHECK_FALSE(f.is_bijection());
    f.map = {0, 3, 1, 2};
    CHECK(f.is_bijection());
}

TEST_CASE("disjoint_union shifts the second operand") {
    const Graph g = fixtures::magic_c4().disjoint_union(Graph::from_edges(2, {{1, 2}}));
    CHECK(g.order() == 6);
    CHECK(g.has_edge(5, 6));
    CHECK(g.edge_count() == 5);
    g.check_valid();
}
