#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "paper_fixtures.hpp"
#include "privcon/netgraph.hpp"
#include "test_support.hpp"

using namespace privcon;
using testsup::mat_eq;
using testsup::vec_eq;

TEST_CASE("graph validation") {
    CHECK_THROWS(WeightedDigraph(2, {{0, 1, Rational(1)}, {0, 1, Rational(2)}}));  // duplicate
    CHECK_THROWS(WeightedDigraph(2, {{0, 2, Rational(1)}}));                       // out of range
    CHECK_THROWS(WeightedDigraph(2, {{0, 1, Rational(-1)}}));                      // negative
    CHECK_THROWS(WeightedDigraph(2, {{0, 1, Rational(0)}}));                       // zero
    WeightedDigraph g(2, {{0, 0, Rational(-1, 2)}, {0, 1, Rational(1)}});          // self-loop ok
    CHECK(g.edges().size() == 2);
}

TEST_CASE("neighbor set includes the agent and its out-neighbors") {
    WeightedDigraph g(3, {{0, 1, Rational(1)}, {2, 0, Rational(1)}});
    auto n0 = neighbor_set(g, 0);
    CHECK(n0 == std::set<int>{0, 1});
    CHECK(neighbor_set(g, 2) == std::set<int>{0, 2});
}

TEST_CASE("to_matrix follows the receiver-row convention") {
    WeightedDigraph empty(2, {});
    CHECK(mat_eq(to_matrix(empty), RationalMatrix::Constant(2, 2, Rational(0))));

    CHECK(mat_eq(to_matrix(fixtures::cycle3_graph()), fixtures::cycle3_matrix()));

    WeightedDigraph single(2, {{0, 1, Rational(1, 3)}});
    RationalMatrix a = to_matrix(single);
    CHECK(a(1, 0) == Rational(1, 3));
    Rational total(0);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) total += abs(a(i, j));
    CHECK(total == Rational(1, 3));
}

TEST_CASE("matrix/graph round trip") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 40; ++t) {
        WeightedDigraph g = testsup::rand_strongly_connected(rng, 3 + rng() % 6);
        WeightedDigraph back = from_matrix(to_matrix(g));
        auto key = [](const WeightedEdge& e) { return std::make_tuple(e.src, e.dst); };
        auto es1 = g.edges();
        auto es2 = back.edges();
        REQUIRE(es1.size() == es2.size());
        std::sort(es1.begin(), es1.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
        std::sort(es2.begin(), es2.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
        for (size_t i = 0; i < es1.size(); ++i) {
            CHECK(es1[i].src == es2[i].src);
            CHECK(es1[i].dst == es2[i].dst);
            CHECK(es1[i].w == es2[i].w);
        }
    }
}

TEST_CASE("strong connectivity") {
    CHECK(is_strongly_connected(fixtures::cycle3_graph()));
    WeightedDigraph path(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}});
    CHECK_FALSE(is_strongly_connected(path));
    // the 12-state augmented network reaches everywhere in both directions
    CHECK(is_strongly_connected(from_matrix(fixtures::printed_ap12())));
}

TEST_CASE("period") {
    WeightedDigraph with_loop(3, {{0, 1, Rational(1)},
                                  {1, 2, Rational(1)},
                                  {2, 0, Rational(1)},
                                  {0, 0, Rational(1)}});
    CHECK(period(with_loop) == 1);

    CHECK(period(fixtures::lemma1_graph()) == 2);

    WeightedDigraph tri(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 0, Rational(1)}});
    CHECK(period(tri) == 3);

    WeightedDigraph path(2, {{0, 1, Rational(1)}});
    CHECK_THROWS_WITH_AS(period(path), "not strongly connected", precondition_error);
}

TEST_CASE("period divides every explicit cycle length") {
    // enumerate directed cycles by DFS on small random graphs
    std::mt19937_64 rng(29);
    for (int t = 0; t < 25; ++t) {
        WeightedDigraph g = testsup::rand_strongly_connected(rng, 3 + rng() % 4);
        int p = period(g);
        int n = g.node_count();
        std::vector<int> path{0};
        std::vector<bool> on_path(n, false);
        on_path[0] = true;
        std::function<void()> dfs = [&]() {
            int u = path.back();
            for (int v : g.out(u)) {
                if (v == path.front()) {
                    CHECK(static_cast<int>(path.size()) % p == 0);
                } else if (!on_path[v] && path.size() < static_cast<size_t>(n)) {
                    on_path[v] = true;
                    path.push_back(v);
                    dfs();
                    path.pop_back();
                    on_path[v] = false;
                }
            }
        };
        dfs();
    }
}

TEST_CASE("bidirectedness is structural") {
    CHECK(is_bidirected(fixtures::cycle3_graph()));
    WeightedDigraph one_way(2, {{0, 1, Rational(1)}});
    CHECK_FALSE(is_bidirected(one_way));
    CHECK(is_bidirected(fixtures::example2_graph()));
}

TEST_CASE("row stochasticity is exact") {
    CHECK(is_row_stochastic(fixtures::cycle3_matrix()));
    CHECK(is_row_stochastic(fixtures::printed_ap15()));
    RationalMatrix half = fixtures::cycle3_matrix();
    half(0, 1) = Rational(1, 4);  // first row sums to 3/4 now
    CHECK_FALSE(is_row_stochastic(half));
    RationalMatrix neg = fixtures::cycle3_matrix();
    neg(0, 1) = Rational(-1, 2);
    CHECK_FALSE(is_row_stochastic(neg));
}

TEST_CASE("reversibility vector on symmetric and reference matrices") {
    auto s3 = reversibility_vector(fixtures::cycle3_matrix());
    REQUIRE(s3.has_value());
    CHECK(vec_eq(*s3, fixtures::vector_from({"1/3", "1/3", "1/3"})));

    // the 11-agent walk matrix balances with degree-proportional weights
    auto s11 = reversibility_vector(fixtures::example2_matrix());
    REQUIRE(s11.has_value());
    CHECK(vec_eq(*s11, fixtures::vector_from({"1/10", "1/10", "1/10", "1/10", "1/10", "1/10",
                                              "1/15", "1/10", "1/15", "1/10", "1/15"})));

    auto s15 = reversibility_vector(fixtures::printed_ap15());
    REQUIRE(s15.has_value());
    CHECK(vec_eq(*s15, fixtures::printed_s15()));
}

TEST_CASE("reversibility vector error and failure paths") {
    RationalMatrix not_bi = fixtures::cycle3_matrix();
    not_bi(0, 1) = Rational(0);  // (0,1) zero but (1,0) nonzero
    CHECK_THROWS_WITH_AS(reversibility_vector(not_bi), "structure not bidirected",
                         precondition_error);

    RationalMatrix disconnected = RationalMatrix::Constant(4, 4, Rational(0));
    disconnected(0, 1) = disconnected(1, 0) = Rational(1);
    disconnected(2, 3) = disconnected(3, 2) = Rational(1);
    CHECK_THROWS_WITH_AS(reversibility_vector(disconnected), "not strongly connected",
                         precondition_error);

    // bidirected triangle violating detailed balance on the closing edge
    RationalMatrix bad = fixtures::matrix_from_rows(
        {{"0", "1/2", "1/2"}, {"1/4", "0", "3/4"}, {"2/3", "1/3", "0"}});
    CHECK_FALSE(reversibility_vector(bad).has_value());
}

TEST_CASE("detailed balance holds on every edge when the vector exists") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        int n = 3 + static_cast<int>(rng() % 6);
        RationalMatrix a = testsup::rand_reversible_stochastic(rng, n);
        auto s = reversibility_vector(a);
        REQUIRE(s.has_value());
        Rational sum(0);
        for (Index i = 0; i < n; ++i) sum += (*s)(i);
        CHECK(sum == Rational(1));
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) CHECK((*s)(i)*a(i, j) == (*s)(j)*a(j, i));
    }
}

TEST_CASE("reversibility vector is independent of the propagation order") {
    // relabel the nodes; the vector must follow the relabeling exactly
    std::mt19937_64 rng(37);
    for (int t = 0; t < 20; ++t) {
        int n = 4 + static_cast<int>(rng() % 5);
        RationalMatrix a = testsup::rand_reversible_stochastic(rng, n);
        auto s = reversibility_vector(a);
        REQUIRE(s.has_value());

        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        RationalMatrix b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(perm[i], perm[j]) = a(i, j);
        auto sp = reversibility_vector(b);
        REQUIRE(sp.has_value());
        for (int i = 0; i < n; ++i) CHECK((*sp)(perm[i]) == (*s)(i));
    }
}
