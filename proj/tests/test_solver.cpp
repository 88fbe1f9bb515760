#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "graphs.hpp"
#include "twopart/oracle.hpp"
#include "twopart/solver.hpp"

using namespace twopart;
using graphs::g1;
using graphs::path4;

namespace {

bool has_label(const SolveResult& r, const std::string& label) {
    return std::find(r.trace.begin(), r.trace.end(), label) != r.trace.end();
}

void check_sound(const Instance& inst, const SolveResult& r) {
    if (!r.yes) return;
    REQUIRE(r.witness);
    CHECK(verify(inst, *r.witness).accepted());
}

Digraph permuted(const Digraph& d, const std::vector<Vertex>& perm) {
    std::vector<Arc> arcs;
    for (const Arc& a : d.arcs()) {
        arcs.push_back({perm[static_cast<std::size_t>(a.tail)], perm[static_cast<std::size_t>(a.head)]});
    }
    return Digraph(d.order(), arcs);
}

}  // namespace

TEST_CASE("small decisions") {
    auto r = solve({g1(), 2, 2});
    CHECK(r.yes);
    check_sound({g1(), 2, 2}, r);
    CHECK(r.witness->v1 == VertexSet{0, 1});

    CHECK_FALSE(solve({graphs::cycle(5), 1, 1}).yes);
    auto two_sources = solve({Digraph(3, {{0, 2}, {1, 2}}), 1, 1});
    CHECK_FALSE(two_sources.yes);
    CHECK(has_label(two_sources, "preprocess:multiple-sources"));
    CHECK_FALSE(solve({path4(), 1, 1}).yes);
    auto too_big = solve({g1(), 3, 2});
    CHECK_FALSE(too_big.yes);
    CHECK(has_label(too_big, "preprocess:too-few-vertices"));
}

TEST_CASE("trivial size bounds") {
    auto all = solve_trivial_k({graphs::cycle(3), 3, 0});
    CHECK(all.yes);
    CHECK(all.witness->v1 == VertexSet{0, 1, 2});
    CHECK_FALSE(solve_trivial_k({path4(), 0, 1}).yes);
    auto v2 = solve_trivial_k({g1(), 0, 4});
    CHECK(v2.yes);
    CHECK(v2.witness->v2 == VertexSet{0, 1, 2, 3});
    CHECK(v2.witness->v1.empty());
    CHECK_THROWS_AS(solve_trivial_k({g1(), 1, 1}), InternalError);

    auto none = solve({Digraph(3), 0, 0});
    CHECK(none.yes == oracle::brute_force_solve({Digraph(3), 0, 0}).yes);
}

TEST_CASE("case 1 out-tree enumeration") {
    auto ba = branchable_arcs(g1(), 2);
    SolveContext ctx{params(2, 2), {}};
    auto found = case_all_small({g1(), 2, 2}, ba, {0, 1, 2, 3}, ctx);
    REQUIRE(found);
    CHECK(found->v1 == VertexSet{0, 1});
    CHECK(found->v2 == VertexSet{2, 3});

    auto tri = graphs::cycle(3);
    SolveContext ctx2{params(1, 2), {}};
    CHECK_FALSE(case_all_small({tri, 1, 2}, branchable_arcs(tri, 2), {0, 1, 2}, ctx2));
}

TEST_CASE("source case examples") {
    const std::vector<std::pair<Instance, bool>> cases{
        {{Digraph(3, {{0, 1}, {1, 2}, {2, 1}}), 1, 2}, true},
        {{Digraph(3, {{0, 1}, {1, 2}}), 2, 1}, false},
        {{Digraph(5, {{0, 1}, {1, 2}, {2, 1}, {3, 4}, {4, 3}, {1, 3}}), 2, 2}, true},
    };
    for (const auto& [inst, expected] : cases) {
        CHECK(oracle::brute_force_solve(inst).yes == expected);
        auto r = solve(inst);
        CHECK(r.yes == expected);
        check_sound(inst, r);
        auto low = solve(inst, params(inst.k1, inst.k2, {1, 1}));
        CHECK(low.yes == expected);
        check_sound(inst, low);
    }
}

TEST_CASE("spread subcase at full thresholds") {
    // s = 0 with 73 two-cycle neighbours; one cycle feeds back into s
    std::vector<Arc> arcs;
    const Vertex pairs = 73;
    for (Vertex i = 0; i < pairs; ++i) {
        Vertex a = 1 + 2 * i, b = 2 + 2 * i;
        arcs.push_back({0, a});
        arcs.push_back({a, b});
        arcs.push_back({b, a});
    }
    arcs.push_back({2, 0});
    Instance inst{Digraph(static_cast<std::size_t>(1 + 2 * pairs), arcs), 1, 1};
    auto r = solve(inst);
    CHECK(r.yes);
    CHECK(has_label(r, "case2.2"));
    check_sound(inst, r);
}

TEST_CASE("branch fixtures reach their branch and agree with exhaustive search") {
    for (const auto& fx : fixtures::all_branch_fixtures()) {
        CAPTURE(fx.name);
        Instance inst{fx.graph, fx.k1, fx.k2};
        auto r = solve(inst, params(fx.k1, fx.k2, {fx.f, fx.h}));
        CHECK(has_label(r, fx.label));
        CHECK(r.yes == oracle::brute_force_solve(inst).yes);
        check_sound(inst, r);
    }
}

TEST_CASE("fixture witnesses match the hand-derived partitions") {
    auto fx = fixtures::case21b();
    auto r = solve({fx.graph, fx.k1, fx.k2}, params(fx.k1, fx.k2, {fx.f, fx.h}));
    CHECK(r.witness->v1 == VertexSet{0, 5});
    CHECK(r.witness->v2 == VertexSet{1, 2, 3, 4});

    fx = fixtures::case21c();
    r = solve({fx.graph, fx.k1, fx.k2}, params(fx.k1, fx.k2, {fx.f, fx.h}));
    CHECK(r.witness->v2 == VertexSet{1, 5, 6});

    fx = fixtures::long_path();
    r = solve({fx.graph, fx.k1, fx.k2}, params(fx.k1, fx.k2, {fx.f, fx.h}));
    CHECK(r.witness->v2 == VertexSet{1, 6});

    fx = fixtures::pigeonhole();
    r = solve({fx.graph, fx.k1, fx.k2}, params(fx.k1, fx.k2, {fx.f, fx.h}));
    CHECK(r.witness->v2 == VertexSet{1, 2, 3, 6});

    fx = fixtures::case22();
    r = solve({fx.graph, fx.k1, fx.k2}, params(fx.k1, fx.k2, {fx.f, fx.h}));
    CHECK(r.witness->v2 == VertexSet{1, 2});

    fx = fixtures::case3_backtrack();
    r = solve({fx.graph, fx.k1, fx.k2}, params(fx.k1, fx.k2, {fx.f, fx.h}));
    CHECK(r.witness->v2 == VertexSet{1, 3});
}

TEST_CASE("lowered thresholds never give a wrong answer") {
    std::mt19937_64 rng(31);
    int answered = 0;
    for (int i = 0; i < 4000; ++i) {
        oracle::GeneratorConfig cfg;
        cfg.n = 2 + rng() % 11;
        cfg.p = 0.1 + static_cast<double>(rng() % 50) / 100.0;
        cfg.seed = rng();
        cfg.min_in_degree_1 = rng() % 2;
        cfg.single_source = !cfg.min_in_degree_1 && rng() % 2;
        Instance inst{oracle::generate(cfg), 1 + rng() % 4, 1 + rng() % 4};
        auto p = params(inst.k1, inst.k2, {1 + static_cast<std::int64_t>(rng() % 4), 1 + static_cast<std::int64_t>(rng() % 4)});
        bool want = oracle::brute_force_solve(inst).yes;
        try {
            auto r = solve(inst, p);
            CHECK(r.yes == want);
            check_sound(inst, r);
            ++answered;
        } catch (const ThresholdViolation&) {
            // allowed: the construction needs the real thresholds
        }
    }
    CHECK(answered > 3000);
}

TEST_CASE("relabelling does not change the answer") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 300; ++i) {
        oracle::GeneratorConfig cfg{3 + rng() % 10, 0.3, rng(), rng() % 2 == 0, false, false};
        auto d = oracle::generate(cfg);
        std::vector<Vertex> perm(d.order());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::size_t k1 = rng() % 4, k2 = rng() % 4;
        CHECK(solve({d, k1, k2}).yes == solve({permuted(d, perm), k1, k2}).yes);
    }
}

TEST_CASE("answers are monotone in the size bounds") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 200; ++i) {
        oracle::GeneratorConfig cfg{3 + rng() % 9, 0.35, rng(), true, false, false};
        auto d = oracle::generate(cfg);
        for (std::size_t k1 = 1; k1 <= 3; ++k1) {
            for (std::size_t k2 = 1; k2 <= 3; ++k2) {
                if (!solve({d, k1, k2}).yes) continue;
                CHECK(solve({d, k1 - 1, k2}).yes);
                CHECK(solve({d, k1, k2 - 1}).yes);
            }
        }
    }
}

TEST_CASE("reversed instances") {
    auto r = solve_reversed({g1(), 2, 2});
    CHECK(r.yes);
    CHECK(r.in_branching);
    CHECK(r.trace.front() == "reversed");
    check_sound({reverse(g1()), 2, 2}, r);
    CHECK_FALSE(solve_reversed({path4(), 1, 1}).yes);
    CHECK_FALSE(solve({path4(), 1, 1}).yes);

    std::mt19937_64 rng(34);
    for (int i = 0; i < 300; ++i) {
        oracle::GeneratorConfig cfg{2 + rng() % 10, 0.3, rng(), rng() % 2 == 0, false, false};
        auto d = oracle::generate(cfg);
        Instance inst{d, rng() % 4, rng() % 4};
        CHECK(solve_reversed(inst).yes == oracle::brute_force_solve({reverse(d), inst.k1, inst.k2}).yes);
    }
}

TEST_CASE("large-neighbourhood fast path") {
    std::vector<Arc> star;
    for (Vertex v = 1; v <= 72; ++v) star.push_back({0, v});
    BranchableArcs ba{star, Digraph(73, star)};
    CHECK(wide_branch_vertex(ba, 1) == 0);
    star.pop_back();
    BranchableArcs smaller{star, Digraph(73, star)};
    CHECK_FALSE(wide_branch_vertex(smaller, 1));
    CHECK_FALSE(wide_branch_vertex(BranchableArcs{}, 1));
}
