#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "twopart/digraph.hpp"
#include "twopart/kernel.hpp"

namespace fixtures {

using twopart::Arc;
using twopart::Digraph;
using twopart::Vertex;

inline void add_clique(std::vector<Arc>& arcs, Vertex lo, Vertex hi) {
    for (Vertex u = lo; u <= hi; ++u)
        for (Vertex v = lo; v <= hi; ++v)
            if (u != v) arcs.push_back({u, v});
}

inline void add_from(std::vector<Arc>& arcs, Vertex s, Vertex lo, Vertex hi) {
    for (Vertex v = lo; v <= hi; ++v) arcs.push_back({s, v});
}

inline void add_two_cycle(std::vector<Arc>& arcs, Vertex a, Vertex b) {
    arcs.push_back({a, b});
    arcs.push_back({b, a});
}

struct BranchFixture {
    std::string name;
    std::string label;  // trace label the run must visit
    Digraph graph;
    std::size_t k1, k2;
    std::int64_t f, h;
};

inline BranchFixture case1() {
    return {"case 1", "case1", Digraph(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {1, 2}}), 2, 2, 36, 72};
}

inline BranchFixture case22() {
    std::vector<Arc> a;
    for (Vertex v : {1, 3, 5, 7}) a.push_back({0, v});
    for (Vertex v : {1, 3, 5, 7}) add_two_cycle(a, v, v + 1);
    a.push_back({2, 0});
    return {"subcase spread", "case2.2", Digraph(9, a), 2, 2, 2, 3};
}

inline BranchFixture case21a() {
    std::vector<Arc> a;
    add_clique(a, 1, 4);
    add_from(a, 0, 1, 4);
    a.push_back({1, 0});
    add_two_cycle(a, 5, 6);
    return {"concentrated, trimmed remainder", "case2.1:a", Digraph(7, a), 2, 2, 3, 3};
}

inline BranchFixture case21b() {
    std::vector<Arc> a;
    add_clique(a, 1, 4);
    add_from(a, 0, 1, 5);
    a.push_back({1, 0});
    return {"concentrated, grow outside", "case2.1:b", Digraph(6, a), 2, 2, 3, 3};
}

inline BranchFixture case21c() {
    std::vector<Arc> a;
    add_clique(a, 1, 4);
    add_from(a, 0, 1, 4);
    a.push_back({1, 0});
    add_two_cycle(a, 5, 6);
    a.push_back({5, 1});
    a.push_back({0, 7});
    a.push_back({7, 2});
    return {"concentrated, entered component", "case2.1:c", Digraph(8, a), 3, 3, 3, 4};
}

inline BranchFixture girth() {
    std::vector<Arc> a;
    add_clique(a, 1, 6);
    add_from(a, 0, 1, 6);
    a.push_back({1, 0});
    return {"avoiding cycle, girth", "avoid:girth", Digraph(7, a), 2, 2, 3, 5};
}

inline BranchFixture long_path() {
    std::vector<Arc> a{{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {7, 0}};
    add_two_cycle(a, 1, 6);
    add_two_cycle(a, 5, 7);
    add_from(a, 0, 1, 7);
    return {"avoiding cycle, long path", "avoid:long-path", Digraph(8, a), 3, 2, 3, 6};
}

inline BranchFixture pigeonhole() {
    std::vector<Arc> a{{1, 2}, {2, 3}, {3, 6}, {1, 4}, {4, 5}, {5, 6}, {6, 1}, {8, 0}};
    add_two_cycle(a, 1, 7);
    add_two_cycle(a, 6, 8);
    add_from(a, 0, 1, 8);
    return {"avoiding cycle, pigeonhole", "avoid:pigeonhole", Digraph(9, a), 3, 2, 3, 4};
}

inline BranchFixture outside_s() {
    std::vector<Arc> a;
    add_clique(a, 1, 4);
    a.push_back({0, 1});
    a.push_back({0, 2});
    a.push_back({1, 0});
    return {"avoiding cycle outside S", "avoid:outside-S", Digraph(5, a), 2, 2, 2, 1};
}

inline BranchFixture case3_backtrack() {
    std::vector<Arc> a{{0, 1}, {0, 2}, {2, 4}, {4, 5}, {4, 6}, {4, 7}};
    add_two_cycle(a, 1, 3);
    add_two_cycle(a, 2, 3);
    return {"source case with backtrack", "case3:backtrack", Digraph(8, a), 3, 2, 2, 2};
}

inline BranchFixture case3_to_case2() {
    std::vector<Arc> a{{0, 1}, {1, 2}, {1, 4}, {1, 6}};
    add_two_cycle(a, 2, 3);
    add_two_cycle(a, 4, 5);
    add_two_cycle(a, 6, 7);
    return {"source case handing off", "case3:to-case2", Digraph(8, a), 3, 2, 2, 2};
}

inline std::vector<BranchFixture> all_branch_fixtures() {
    return {case1(),  case22(),    case21a(),    case21b(),   case21c(),         girth(),
            long_path(), pigeonhole(), outside_s(), case3_backtrack(), case3_to_case2()};
}

}  // namespace fixtures
