#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "twopart/digraph.hpp"
#include "twopart/kernel.hpp"
#include "twopart/solver.hpp"

namespace twopart::oracle {

inline constexpr std::size_t kMaxSolveOrder = 20;
inline constexpr std::size_t kMaxD1Order = 12;
inline constexpr std::size_t kMaxEnumerateOrder = 4;

/// Exhaustive search over every V1 (as a bitmask, in increasing order).  The
/// first qualifying V1 is returned; the branching is a BFS tree from the
/// smallest vertex that reaches all of V1.  Throws std::length_error above
/// kMaxSolveOrder vertices.
SolveResult brute_force_solve(const Instance& instance);

/// Largest U with delta^-(D[U]) >= 1 by subset enumeration.
VertexSet brute_force_max_d1(const Digraph& d);

struct GeneratorConfig {
    std::size_t n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    bool min_in_degree_1 = false;
    bool min_out_degree_1 = false;
    bool single_source = false;
};

/// G(n, p) over ordered pairs driven by std::mt19937_64, then repaired to
/// meet the requested constraints.
Digraph generate(const GeneratorConfig& config);

/// Digraph number `code` on n vertices: bit i selects the i-th ordered pair
/// (u, v), u != v, in lexicographic order.
Digraph digraph_from_code(std::size_t n, std::uint64_t code);

/// Calls `visit` on all 2^(n(n-1)) labelled digraphs on n <= 4 vertices.
void enumerate_all_digraphs(std::size_t n, const std::function<void(const Digraph&)>& visit);

}  // namespace twopart::oracle
