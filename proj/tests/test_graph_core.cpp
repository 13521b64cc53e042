#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include <graphlim/graph.hpp>
#include <graphlim/rng.hpp>

#include "oracles.hpp"

using namespace graphlim;

TEST_CASE("parse_graph reads the edge-list format") {
    Graph g = parse_graph("3\n0 1\n1 2\n");
    CHECK(g.n() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 2));

    Graph commented = parse_graph("# path\n3\n0 1 # first\n\n1 2\n");
    CHECK(commented.edges() == g.edges());
}

TEST_CASE("parse_graph rejects malformed input with line numbers") {
    CHECK_THROWS_WITH_AS(parse_graph("2\n0 0\n"), doctest::Contains("line 2"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_graph("4\n0 1\n0 1\n"), doctest::Contains("duplicate"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_graph("4\n0 1\n1 0\n"), doctest::Contains("duplicate"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_graph("2\n0 5\n"), doctest::Contains("out of range"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_graph("2\n0\n"), doctest::Contains("malformed"),
                         std::invalid_argument);
    CHECK_THROWS_AS(parse_graph("# nothing\n"), std::invalid_argument);
}

TEST_CASE("serialization is canonical and round-trips") {
    Graph g = parse_graph("4\n2 3\n0 1\n3 0\n");
    CHECK(to_edge_list(g) == "4\n0 1\n0 3\n2 3\n");
    Graph back = parse_graph(to_edge_list(g));
    CHECK(back.edges() == g.edges());
}

TEST_CASE("complement") {
    Graph k3 = parse_graph("3\n0 1\n0 2\n1 2\n");
    CHECK(complement(k3).edge_count() == 0);

    Graph e2(2, {});
    CHECK(complement(e2).edge_count() == 1);

    Graph p3 = parse_graph("3\n0 1\n1 2\n");
    Graph cp = complement(p3);
    CHECK(cp.edge_count() == 1);
    CHECK(cp.has_edge(0, 2));

    CHECK(to_edge_list(complement(cp)) == to_edge_list(p3));
}

TEST_CASE("gen_gnp endpoints and determinism") {
    CHECK(gen_gnp(5, 0.0, 3).edge_count() == 0);
    CHECK(gen_gnp(5, 1.0, 3).edge_count() == 10);
    Graph a = gen_gnp(16, 0.5, 42);
    Graph b = gen_gnp(16, 0.5, 42);
    CHECK(a.edges() == b.edges());
    CHECK(a.edges() != gen_gnp(16, 0.5, 43).edges());
}

TEST_CASE("gen_complete_bipartite") {
    CHECK(gen_complete_bipartite(1, 1).edge_count() == 1);
    Graph k22 = gen_complete_bipartite(2, 2);
    CHECK(k22.edge_count() == 4);
    CHECK(to_double(count_subgraphs(pattern_c4(), k22, VertexConstraint::unconstrained(), false)) ==
          8.0);
    Graph k33 = gen_complete_bipartite(3, 3);
    CHECK(count_subgraphs(pattern_k3(), k33, VertexConstraint::unconstrained(), false) == 0);
}

TEST_CASE("count_subgraphs examples") {
    Graph k3 = parse_graph("3\n0 1\n0 2\n1 2\n");
    CHECK(to_string(count_subgraphs(pattern_p3(), k3, VertexConstraint::unconstrained(), false)) ==
          "6");
    CHECK(count_subgraphs(pattern_p3(), k3, VertexConstraint::unconstrained(), true) == 0);
    CHECK(count_subgraphs(pattern_p3(), k3, VertexConstraint::single({}), false) == 0);

    Graph c4 = parse_graph("4\n0 1\n1 2\n2 3\n0 3\n");
    CHECK(to_double(count_subgraphs(pattern_k2(), c4, VertexConstraint::unconstrained(), false)) ==
          8.0);
}

TEST_CASE("count_subgraphs agrees with brute-force enumeration") {
    std::vector<PatternGraph> patterns = {pattern_k2(), pattern_p3(), pattern_k3(),
                                          pattern_c4(), pattern_star(3)};
    SplitMix64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3 + static_cast<int>(rng.next_below(5)); // 3..7
        Graph g = gen_gnp(n, 0.2 + 0.6 * rng.next_double(), rng.next_u64());
        std::vector<int> u, u2;
        for (int v = 0; v < n; ++v) {
            if (rng.next_u64() & 1) u.push_back(v);
            if (rng.next_u64() & 1) u2.push_back(v);
        }
        for (const auto& f : patterns) {
            if (f.f() > n) continue;
            std::vector<std::vector<int>> sets(f.f());
            for (int i = 0; i < f.f(); ++i) sets[i] = i % 2 ? u : u2;
            const std::vector<VertexConstraint> constraints = {
                VertexConstraint::unconstrained(), VertexConstraint::single(u),
                VertexConstraint::per_vertex(sets)};
            for (const auto& c : constraints) {
                for (bool induced : {false, true}) {
                    const auto fast = count_subgraphs(f, g, c, induced);
                    const auto slow = oracles::brute_count(f, g, c, induced);
                    CHECK(to_string(fast) == std::to_string(slow));
                }
            }
        }
    }
}

TEST_CASE("inclusion-exclusion ties plain and induced constrained counts") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + static_cast<int>(rng.next_below(3)); // 4..6
        Graph g = gen_gnp(n, 0.3 + 0.4 * rng.next_double(), rng.next_u64());
        std::vector<int> u;
        for (int v = 0; v < n; ++v)
            if (rng.next_u64() & 1) u.push_back(v);
        const auto c = VertexConstraint::single(u);
        for (const auto& f : {pattern_k2(), pattern_p3(), pattern_c4()}) {
            bigcount induced_sum = 0;
            for (const auto& sup : oracles::supergraphs_of(f))
                induced_sum += count_subgraphs(sup, g, c, true);
            CHECK(to_string(count_subgraphs(f, g, c, false)) == to_string(induced_sum));
        }
    }
}

TEST_CASE("inclusion-exclusion holds for every subset of small hosts") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 4 + static_cast<int>(rng.next_below(2)); // 4..5
        Graph g = gen_gnp(n, 0.3 + 0.4 * rng.next_double(), rng.next_u64());
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
            std::vector<int> u;
            for (int v = 0; v < n; ++v)
                if ((mask >> v) & 1u) u.push_back(v);
            const auto c = VertexConstraint::single(u);
            for (const auto& f : {pattern_k2(), pattern_p3(), pattern_c4()}) {
                bigcount induced_sum = 0;
                for (const auto& sup : oracles::supergraphs_of(f))
                    induced_sum += count_subgraphs(sup, g, c, true);
                CHECK(count_subgraphs(f, g, c, false) == induced_sum);
            }
        }
    }
}

TEST_CASE("complement duality of induced counts") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 4 + static_cast<int>(rng.next_below(3));
        Graph g = gen_gnp(n, rng.next_double(), rng.next_u64());
        std::vector<int> u;
        for (int v = 0; v < n; ++v)
            if (rng.next_u64() & 1) u.push_back(v);
        const auto c = VertexConstraint::single(u);
        for (const auto& f : {pattern_p3(), pattern_c4(), pattern_star(3)}) {
            CHECK(to_string(count_subgraphs(f, g, c, true)) ==
                  to_string(count_subgraphs(f.complement(), complement(g), c, true)));
        }
    }
}

TEST_CASE("constraint monotonicity") {
    Graph g = gen_gnp(8, 0.6, 5);
    std::vector<int> small = {0, 2, 4, 6};
    std::vector<int> large = {0, 1, 2, 3, 4, 6, 7};
    for (const auto& f : {pattern_p3(), pattern_c4()}) {
        CHECK(count_subgraphs(f, g, VertexConstraint::single(small), false) <=
              count_subgraphs(f, g, VertexConstraint::single(large), false));
    }
}

TEST_CASE("t_inj") {
    Graph k3 = parse_graph("3\n0 1\n0 2\n1 2\n");
    CHECK(t_inj(pattern_k2(), k3, false) == doctest::Approx(1.0));
    CHECK(t_inj(pattern_p3(), k3, false) == doctest::Approx(1.0));
    CHECK(t_inj(pattern_k2(), Graph(4, {}), false) == 0.0);
    CHECK_THROWS_AS(t_inj(pattern_c4(), k3, false), std::invalid_argument);
}

TEST_CASE("cut_edges") {
    Graph c4 = parse_graph("4\n0 1\n1 2\n2 3\n0 3\n");
    CHECK(cut_edges(c4, {0, 1}) == 2);
    CHECK(cut_edges(c4, {}) == 0);
    Graph k4 = gen_gnp(4, 1.0, 0);
    CHECK(cut_edges(k4, {0, 1}) == 4);

    // e(U, U-bar) = N(K_2, G; U, U-bar) and is complement-symmetric.
    SplitMix64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = gen_gnp(9, 0.5, rng.next_u64());
        std::vector<int> u, ubar;
        for (int v = 0; v < 9; ++v) (rng.next_u64() & 1 ? u : ubar).push_back(v);
        CHECK(cut_edges(g, u) == cut_edges(g, ubar));
        CHECK(cut_edges(g, u) <= g.edge_count());
        CHECK(to_string(count_subgraphs(pattern_k2(), g,
                                        VertexConstraint::per_vertex({u, ubar}), false)) ==
              std::to_string(cut_edges(g, u)));
    }
}

TEST_CASE("degree_moment") {
    Graph k2(2, {{0, 1}});
    CHECK(degree_moment(k2, 1) == doctest::Approx(0.5).epsilon(1e-14));
    Graph k3 = parse_graph("3\n0 1\n0 2\n1 2\n");
    CHECK(degree_moment(k3, 2) == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
    CHECK(degree_moment(Graph(4, {}), 3) == 0.0);
    CHECK_THROWS_AS(degree_moment(Graph(0, {}), 1), std::invalid_argument);
}

TEST_CASE("regularity_deviation") {
    Graph c4 = parse_graph("4\n0 1\n1 2\n2 3\n0 3\n"); // 2-regular
    CHECK(regularity_deviation(c4, 0.5) == doctest::Approx(0.0));
    Graph empty(5, {});
    CHECK(regularity_deviation(empty, 1.0) == doctest::Approx(1.0));
    Graph k22 = gen_complete_bipartite(2, 2);
    CHECK(regularity_deviation(k22, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("large exact counts stay exact") {
    Graph k50 = gen_gnp(50, 1.0, 0);
    // N(S_3, K_50) = 50 * 49 * 48 * 47.
    CHECK(to_string(count_subgraphs(pattern_star(3), k50, VertexConstraint::unconstrained(),
                                    false)) == "5527200");
}

TEST_CASE("pattern_by_name") {
    CHECK(pattern_by_name("C4").e() == 4);
    CHECK(pattern_by_name("S5").f() == 6);
    CHECK(pattern_by_name("K4").e() == 6);
    CHECK_THROWS_AS(pattern_by_name("Q3"), std::invalid_argument);
    CHECK_THROWS_AS(pattern_by_name("Sx"), std::invalid_argument);
}
