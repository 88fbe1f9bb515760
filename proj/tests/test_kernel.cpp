#include <doctest.h>

#include <random>
#include <stdexcept>

#include "graphs.hpp"
#include "independent.hpp"
#include "twopart/kernel.hpp"
#include "twopart/oracle.hpp"

using namespace twopart;
using graphs::g1;
using graphs::path4;

namespace {

Digraph random_digraph(std::mt19937_64& rng, std::size_t nmax) {
    oracle::GeneratorConfig cfg;
    cfg.n = 1 + rng() % nmax;
    cfg.p = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
    cfg.seed = rng();
    cfg.min_in_degree_1 = rng() % 3 == 0;
    return oracle::generate(cfg);
}

}  // namespace

TEST_CASE("params") {
    auto p = params(1, 1);
    CHECK(p.k == 1);
    CHECK(p.f == 36);
    CHECK(p.h == 72);
    p = params(1, 2);
    CHECK(p.k == 2);
    CHECK(p.f == 264);
    CHECK(p.h == 1056);
    p = params(3, 3, {4, 8});
    CHECK(p.f == 4);
    CHECK(p.h == 8);
    CHECK(p.overridden);
    CHECK_THROWS_AS(params(1, 1, {0, 8}), std::invalid_argument);
    CHECK_THROWS_AS(params(1, 1, {4, -1}), std::invalid_argument);
    CHECK(params(std::size_t{1} << 40, 1).h == INT64_MAX);
}

TEST_CASE("grow") {
    CHECK(grow(path4(), {0}, 4) == VertexSet{0, 1, 2, 3});
    CHECK(grow(path4(), {3}, 2) == VertexSet{3});
    CHECK(grow(g1(), {0}, 3) == VertexSet{0, 1, 2});
    CHECK(grow(g1(), {0, 1}, 1) == VertexSet{0, 1});

    auto r = grow_within(g1(), {0}, 4, std::vector<char>{1, 1, 1, 0});
    CHECK(r.set == VertexSet{0, 1, 2});
    CHECK(r.added == std::vector<Arc>{{0, 1}, {1, 2}});
}

TEST_CASE("trim") {
    CHECK(trim(path4()).empty());
    CHECK(trim(g1()) == VertexSet{0, 1, 2, 3});
    CHECK(trim(Digraph(4, {{0, 1}, {1, 2}, {2, 0}, {3, 0}})) == VertexSet{0, 1, 2});
    CHECK(trim_within(g1(), std::vector<char>{0, 1, 1, 1}) == VertexSet{2, 3});
}

TEST_CASE("trim equals the largest min-in-degree-1 set") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        auto d = random_digraph(rng, 10);
        CHECK(trim(d) == oracle::brute_force_max_d1(d));
        auto t = trim(d);
        for (Vertex v : t) {
            bool has = false;
            for (Vertex u : d.in(v)) has = has || t.contains(u);
            CHECK(has);
        }
    }
}

TEST_CASE("residual trim matches recomputation") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 300; ++i) {
        auto d = random_digraph(rng, 14);
        ResidualTrim rt(d);
        CHECK(rt.base_size() == trim(d).size());
        for (int q = 0; q < 5; ++q) {
            std::vector<Vertex> removed;
            std::vector<char> alive(d.order(), 1);
            for (int j = 0; j < 3; ++j) {
                auto v = static_cast<Vertex>(rng() % d.order());
                if (!alive[static_cast<std::size_t>(v)]) continue;
                alive[static_cast<std::size_t>(v)] = 0;
                removed.push_back(v);
            }
            auto want = trim_within(d, alive).size();
            CHECK(rt.size_without(removed) == want);
            std::size_t threshold = rng() % (d.order() + 1);
            CHECK(rt.at_least(removed, threshold) == (want >= threshold));
        }
    }
}

TEST_CASE("branchable arcs") {
    auto cyc = branchable_arcs(graphs::cycle(3), 2);
    CHECK(cyc.arcs.empty());
    auto b = branchable_arcs(g1(), 2);
    CHECK(b.arcs == std::vector<Arc>{{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    CHECK(b.db.order() == 4);
    CHECK(branchable_arcs(g1(), 0).arcs == g1().arcs());

    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        auto d = random_digraph(rng, 12);
        std::size_t k2 = rng() % 5;
        auto ba = branchable_arcs(d, k2);
        for (const Arc& a : d.arcs()) {
            bool in_b = std::binary_search(ba.arcs.begin(), ba.arcs.end(), a);
            CHECK(in_b == independent::is_branchable(d, a, k2));
            CHECK(in_b == ba.db.has_arc(a.tail, a.head));
        }
    }
}

TEST_CASE("extend subsolution") {
    auto p = extend_subsolution(g1(), std::nullopt, {0, 1}, {2, 3});
    CHECK(p.v1 == VertexSet{0, 1});
    CHECK(p.v2 == VertexSet{2, 3});
    CHECK(verify({g1(), 2, 2}, p).accepted());

    Digraph g1_plus(5, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {1, 2}, {1, 4}});
    p = extend_subsolution(g1_plus, std::nullopt, {0, 1}, {2, 3});
    CHECK(p.v1 == VertexSet{0, 1, 4});
    CHECK(p.v2 == VertexSet{2, 3});
    CHECK(verify({g1_plus, 3, 2}, p).accepted());

    // the root may be forced
    p = extend_subsolution(g1(), 1, {0, 1}, {2, 3});
    CHECK(p.branching.root == 1);

    CHECK_THROWS_AS(extend_subsolution(g1(), std::nullopt, {0, 1}, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(extend_subsolution(g1(), std::nullopt, {0, 1}, {2}), std::invalid_argument);
    CHECK_THROWS_AS(extend_subsolution(g1(), std::nullopt, {0, 2}, {}), std::invalid_argument);
    // a source outside V1' can never be covered
    CHECK_THROWS_AS(extend_subsolution(path4(), std::nullopt, {1}, {}), std::invalid_argument);
}

TEST_CASE("extend output always verifies") {
    std::mt19937_64 rng(14);
    int tried = 0;
    for (int i = 0; i < 400; ++i) {
        auto d = random_digraph(rng, 10);
        auto n = d.order();
        // V2' = a random trim-closed set, V1' = an out-tree grown from a random root outside it
        std::vector<char> alive(n, 0);
        for (std::size_t v = 0; v < n; ++v) alive[v] = rng() % 2;
        auto v2p = trim_within(d, alive);
        std::vector<Vertex> rest;
        for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
            if (!v2p.contains(v)) rest.push_back(v);
        if (rest.empty()) continue;
        Vertex r = rest[rng() % rest.size()];
        auto v2_mask = v2p.mask(n);
        for (auto& x : v2_mask) x = !x;
        auto v1p = grow_within(d, {r}, 1 + rng() % 3, v2_mask).set;
        try {
            auto p = extend_subsolution(d, std::nullopt, v1p, v2p);
            ++tried;
            Instance inst{d, v1p.size(), v2p.size()};
            CHECK(verify(inst, p).accepted());
            CHECK(independent::accepts(inst, p));
        } catch (const std::invalid_argument&) {
            // a second source or similar; the preconditions are tested above
        }
    }
    CHECK(tried > 50);
}

TEST_CASE("verify") {
    GoodPartition p{{0, 1}, {2, 3}, OutTree{0, {{1, 0}}}};
    CHECK(verify({g1(), 2, 2}, p).accepted());
    auto small = verify({g1(), 3, 2}, p);
    CHECK_FALSE(small.accepted());

    GoodPartition lone{{0}, {1, 2, 3}, OutTree{0, {}}};
    CHECK_FALSE(verify({g1(), 1, 1}, lone).accepted());

    GoodPartition fake_arc{{0, 1}, {2, 3}, OutTree{1, {{0, 1}}}};
    CHECK(verify({g1(), 2, 2}, fake_arc).accepted());  // 1 -> 0 exists
    GoodPartition wrong_arc{{2, 3}, {0, 1}, OutTree{2, {{3, 1}}}};
    CHECK_FALSE(verify({g1(), 2, 2}, wrong_arc).accepted());
    GoodPartition overlap{{0, 1}, {1, 2, 3}, OutTree{0, {{1, 0}}}};
    CHECK_FALSE(verify({g1(), 1, 1}, overlap).accepted());
    GoodPartition empty_v1{{}, {0, 1, 2, 3}, OutTree{}};
    CHECK(verify({g1(), 0, 4}, empty_v1).accepted());
}

TEST_CASE("verify agrees with an independent checker") {
    std::mt19937_64 rng(15);
    int accepted = 0;
    for (int i = 0; i < 3000; ++i) {
        auto d = random_digraph(rng, 7);
        auto n = d.order();
        GoodPartition p;
        std::vector<Vertex> v1, v2;
        for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
            auto r = rng() % 10;
            if (r < 5) v1.push_back(v);
            else if (r < 9) v2.push_back(v);
            else if (r == 9 && rng() % 2) {  // occasionally drop or duplicate
                v1.push_back(v);
                v2.push_back(v);
            }
        }
        p.v1 = VertexSet(v1);
        p.v2 = VertexSet(v2);
        if (!v1.empty()) {
            if (rng() % 2) {
                auto t = out_branching_within(d, v1[rng() % v1.size()], p.v1.mask(n));
                if (t) p.branching = *t;
            } else {
                p.branching.root = v1[rng() % v1.size()];
                for (Vertex v : v1)
                    if (v != p.branching.root) p.branching.parent[v] = v1[rng() % v1.size()];
            }
        }
        Instance inst{d, rng() % 4, rng() % 4};
        bool mine = verify(inst, p).accepted();
        CHECK(mine == independent::accepts(inst, p));
        accepted += mine;
    }
    CHECK(accepted > 20);
}
