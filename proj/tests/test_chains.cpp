#include "doctest.h"
#include "oracles.hpp"
#include "zf/chains.hpp"
#include "zf/errors.hpp"

using namespace zf;

namespace {

ChainSet chains_from(const Graph& g, const std::vector<int>& f) { return extract_chains(g, closure(g, f)); }

std::vector<VertexSeq> seqs(const ChainSet& s) {
    std::vector<VertexSeq> out;
    for (const auto& c : s.chains()) out.push_back(c.seq);
    return out;
}

// Definition of a bad vertex applied literally, with no shared helpers.
std::vector<int> literal_bad(const ChainSet& s) {
    std::vector<int> out;
    const Graph& g = s.host();
    for (int v = 0; v < g.order(); ++v) {
        if (s.chain(s.chain_of(v)).trivial()) continue;
        bool bad = false;
        for (int p = 0; p < g.order() && !bad; ++p)
            for (int q = 0; q < g.order() && !bad; ++q) {
                if (!g.has_edge(v, p) || !g.has_edge(v, q)) continue;
                const int c = s.chain_of(p);
                if (c == s.chain_of(v) || c != s.chain_of(q) || s.chain(c).trivial()) continue;
                bad = s.position(q) - s.position(p) >= 2;
            }
        if (bad) out.push_back(v);
    }
    return out;
}

std::vector<int> literal_unfavorite(const ChainSet& s) {
    std::vector<int> out;
    const Graph& g = s.host();
    const int n = g.order();
    for (int x = 0; x < n; ++x) {
        bool hit = false;
        for (int a = 0; a < n && !hit; ++a)
            for (int b = 0; b < n && !hit; ++b)
                for (int c = 0; c < n && !hit; ++c)
                    for (int d = 0; d < n && !hit; ++d) {
                        const int r1 = s.chain_of(x), r2 = s.chain_of(a), r3 = s.chain_of(b);
                        if (r1 == r2 || r1 == r3 || r2 == r3) continue;
                        if (s.chain(r1).trivial() || s.chain(r2).trivial() || s.chain(r3).trivial()) continue;
                        if (!g.has_edge(x, a) || !g.has_edge(x, b) || !g.has_edge(c, d)) continue;
                        hit = s.chain_of(c) == r2 && s.chain_of(d) == r3 && s.position(a) < s.position(c) &&
                              s.position(d) < s.position(b);
                    }
        if (hit) out.push_back(x);
    }
    return out;
}

void check_chain_invariants(const ChainSet& s) {
    const Graph& g = s.host();
    VertexMask covered = 0;
    for (const auto& c : s.chains()) {
        CHECK(is_induced_path(g, c.seq));
        for (int v : c.seq) {
            CHECK_FALSE((covered & bit(v)));
            covered |= bit(v);
        }
    }
    CHECK(covered == g.all());
    if (g.size() > 0) CHECK(s.trivial_count() <= static_cast<int>(s.chains().size()) - 1);
    CHECK(is_forcing_set(g, s.origin()));
}

// y=0 a=1 b=2 c=3 x=4 w=5, plus an isolated sixth vertex for the third chain.
Graph bad_example() { return Graph(7, {{0, 1}, {1, 2}, {2, 3}, {4, 1}, {4, 3}, {4, 5}}); }

// x x1 x2 | a a1 c | d d1 b with x-a, x-b and the segment c-d.
Graph unfavorite_example() {
    return Graph(9, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8}, {0, 3}, {0, 8}, {5, 6}});
}

}  // namespace

TEST_SUITE("test_chains") {

TEST_CASE("extraction examples") {
    CHECK(seqs(chains_from(path_graph(4), {0})) == std::vector<VertexSeq>{{0, 1, 2, 3}});
    CHECK(seqs(chains_from(complete_graph(4), {0, 1, 2})) == std::vector<VertexSeq>{{0, 3}, {1}, {2}});
    CHECK(seqs(chains_from(cycle_graph(6), {0, 1})) == std::vector<VertexSeq>{{0, 5, 4}, {1, 2, 3}});
    CHECK_THROWS_AS(chains_from(cycle_graph(6), {0, 3}), NotForcingSet);
}

TEST_CASE("extracted chains replay the run") {
    const ChainSet s = chains_from(cycle_graph(6), {0, 1});
    CHECK(s.matches_run());
    for (int v = 0; v < 6; ++v) CHECK(s.time(v) == s.run().step_of[v]);
    CHECK(s.precedes(5, 4));
    CHECK_FALSE(s.precedes(4, 5));
    CHECK(s.next(5) == 4);
    CHECK_FALSE(s.prev(0).has_value());
}

TEST_CASE("chain set validation") {
    const Graph p4 = path_graph(4);
    CHECK_THROWS_AS(ChainSet(p4, {{{0, 1}}, {{3}}}), ContractError);               // 2 uncovered
    CHECK_THROWS_AS(ChainSet(p4, {{{0, 1, 2}}, {{2, 3}}}), ContractError);         // overlap
    CHECK_THROWS_AS(ChainSet(cycle_graph(4), {{{0, 1, 2, 3}}}), ContractError);    // not induced
    CHECK_THROWS_AS(ChainSet(cycle_graph(4), {{{0, 1}}, {{2, 3}}}), ContractError);  // forces stall
}

TEST_CASE("bad vertex examples") {
    CHECK(bad_vertices(chains_from(path_graph(6), {0})).empty());
    CHECK(bad_vertices(chains_from(complete_graph(4), {0, 1, 2})).empty());
    const ChainSet s(bad_example(), {{{0, 1, 2, 3}}, {{4, 5}}, {{6}}});
    CHECK(bad_vertices(s) == std::vector<int>{4});
    CHECK(literal_bad(s) == std::vector<int>{4});
}

TEST_CASE("eliminate_bad repairs the example") {
    const ChainSet s(bad_example(), {{{0, 1, 2, 3}}, {{4, 5}}, {{6}}});
    const ChainSet fixed = eliminate_bad(s);
    CHECK(bad_vertices(fixed).empty());
    CHECK(fixed.origin().size() == 3);
    CHECK(seqs(fixed) == std::vector<VertexSeq>{{0, 1, 4, 5}, {2, 3}, {6}});
    check_chain_invariants(fixed);
    CHECK(eliminate_bad(fixed) == fixed);
    CHECK_THROWS_AS(eliminate_bad(chains_from(path_graph(4), {0})), UnsupportedInput);
}

TEST_CASE("unfavorite vertex examples") {
    const ChainSet s(unfavorite_example(), {{{0, 1, 2}}, {{3, 4, 5}}, {{6, 7, 8}}});
    CHECK(unfavorite_vertices(s) == std::vector<int>{0});
    CHECK(literal_unfavorite(s) == std::vector<int>{0});
    const auto w = unfavorite_witness(s, 0);
    REQUIRE(w);
    CHECK(w->a == 3);
    CHECK(w->b == 8);
    CHECK(unfavorite_vertices(chains_from(cycle_graph(6), {0, 1})).empty());

    // Three rows, segments only between the first two.
    const Graph ladder(7, {{0, 1}, {2, 3}, {4, 5}, {5, 6}, {0, 2}, {1, 3}});
    CHECK(unfavorite_vertices(ChainSet(ladder, {{{0, 1}}, {{2, 3}}, {{4, 5, 6}}})).empty());
}

TEST_CASE("eliminate_unfavorite repairs the example") {
    const ChainSet s(unfavorite_example(), {{{0, 1, 2}}, {{3, 4, 5}}, {{6, 7, 8}}});
    const ChainSet fixed = eliminate_unfavorite(s);
    CHECK(unfavorite_vertices(fixed).empty());
    CHECK(bad_vertices(fixed).empty());
    CHECK(seqs(fixed) == std::vector<VertexSeq>{{4, 5}, {3, 0, 1, 2}, {6, 7, 8}});
    check_chain_invariants(fixed);
    CHECK(eliminate_unfavorite(fixed) == fixed);
    const ChainSet with_bad(bad_example(), {{{0, 1, 2, 3}}, {{4, 5}}, {{6}}});
    CHECK_THROWS_AS(eliminate_unfavorite(with_bad), ContractError);
}

TEST_CASE("order lemma scans") {
    CHECK(check_order_lemmas(chains_from(path_graph(5), {0})).ok());
    CHECK(check_order_lemmas(chains_from(complete_graph(4), {0, 1, 2})).ok());
    // A crossing pair between two chains is reported.
    const Graph crossed(4, {{0, 1}, {2, 3}, {0, 3}, {1, 2}});
    const auto rep = check_order_lemmas(ChainSet(crossed, {{{0, 1}}, {{3, 2}}}));
    CHECK(rep.ok());
}

TEST_CASE("corpus: extraction invariants and order lemmas") {
    for (int n = 1; n <= 8; ++n) {
        for (const Graph& g : enumerate_connected_subcubic(n)) {
            const auto fn = forcing_number(g);
            const ChainSet s = chains_from(g, fn.witness);
            check_chain_invariants(s);
            CHECK(s.origin() == fn.witness);
            CHECK(s.matches_run());
            const auto rep = check_order_lemmas(s);
            CHECK_MESSAGE(rep.ok(), encode_graph6(g), " ", rep.violations.front());
            CHECK(bad_vertices(s) == literal_bad(s));
            if (n <= 7) CHECK(unfavorite_vertices(s) == literal_unfavorite(s));
        }
    }
}

TEST_CASE("corpus: repair pipeline on F = 3 graphs") {
    int count = 0, stayed_synchronous = 0;
    for (int n = 1; n <= 8; ++n) {
        for (const Graph& g : enumerate_connected_subcubic(n)) {
            const auto fn = forcing_number(g);
            if (fn.k != 3) continue;
            ++count;
            const ChainSet s = chains_from(g, fn.witness);
            const ChainSet nobad = eliminate_bad(s);
            CHECK(literal_bad(nobad).empty());
            check_chain_invariants(nobad);
            const ChainSet done = eliminate_unfavorite(nobad);
            CHECK(literal_bad(done).empty());
            CHECK(literal_unfavorite(done).empty());
            check_chain_invariants(done);
            CHECK(done.origin().size() == 3);
            const auto rep = check_order_lemmas(done);
            CHECK_MESSAGE(rep.ok(), encode_graph6(g), " ", rep.violations.front());
            stayed_synchronous += done.matches_run();
        }
    }
    CHECK(count > 0);
    MESSAGE("F=3 graphs: ", count, ", repaired sets replaying their own run: ", stayed_synchronous);
}

}
