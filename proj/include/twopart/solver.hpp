#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twopart/digraph.hpp"
#include "twopart/kernel.hpp"

namespace twopart {

/// A construction guarded by f/h did not go through.  Only reachable with
/// overridden (lowered) thresholds; the solver never turns it into an answer.
class ThresholdViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural fact the algorithm relies on did not hold.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct SolveResult {
    bool yes = false;
    std::optional<GoodPartition> witness;
    std::vector<std::string> trace;
    /// Set by solve_reversed: the witness lives on the reversed digraph, so
    /// in the input every branching pair (p, c) is realised by the arc c -> p.
    bool in_branching = false;
};

/// Parameters plus the diagnostic trace of visited case labels (each label
/// recorded once, in first-visit order).
struct SolveContext {
    Params params;
    std::vector<std::string> trace;

    void note(const std::string& label);
};

SolveResult solve(const Instance& instance);
SolveResult solve(const Instance& instance, const Params& params);

/// Polynomial procedures for min(k1, k2) = 0.
SolveResult solve_trivial_k(const Instance& instance);

/// Case 1: every |N_B^+(v)| <= h.  Searches the vertex sets of out-trees with
/// exactly k1 vertices in D_B rooted in `roots`; nullopt means no solution.
std::optional<GoodPartition> case_all_small(const Instance& instance, const BranchableArcs& ba,
                                            const VertexSet& roots, SolveContext& ctx);

/// Case 2: |N_B^+(s)| > h and every other vertex has an in-neighbour.
/// Returns a verified witness rooted at s or throws ThresholdViolation.
GoodPartition case_big_no_source(const Instance& instance, const BranchableArcs& ba, Vertex s, SolveContext& ctx);

/// Subcase 2.1: C is a strong component of D - s holding at least f of s's B-out-neighbours.
GoodPartition subcase_concentrated(const Instance& instance, const BranchableArcs& ba, Vertex s, const VertexSet& c,
                                   SolveContext& ctx);

/// Subcase 2.2: s's B-out-neighbours are spread over many strong components.
GoodPartition subcase_spread(const Instance& instance, const BranchableArcs& ba, Vertex s, SolveContext& ctx);

/// Case 3: a unique source r and some vertex with |N_B^+| > h.
SolveResult case_with_source(const Instance& instance, SolveContext& ctx);

/// Solves the (B^-, delta^+ >= 1) variant by solving the reversed digraph.
SolveResult solve_reversed(const Instance& instance);
SolveResult solve_reversed(const Instance& instance, const Params& params);

/// Some vertex with |N_B^+| >= 64k^4 + 8k^2, if any.
std::optional<Vertex> wide_branch_vertex(const BranchableArcs& ba, std::int64_t k);

// ------------------------------------------------------------ quotient D_S

/// D_S over S (index i stands for s.members()[i]); each arc carries a path in
/// C, in original ids, whose interior avoids S.
struct QuotientGraph {
    VertexSet s;
    Digraph ds;
    std::map<Arc, std::vector<Vertex>> representative;

    Vertex index_of(Vertex original) const;
    Vertex original(Vertex index) const { return s.members()[static_cast<std::size_t>(index)]; }
};

QuotientGraph build_quotient(const Digraph& d, const VertexSet& c, const VertexSet& s);

/// Maximal paths of D_S[T] where T = {v : d^+ = d^- = 1}, with their entry and
/// exit vertices in T-bar.  Indices refer to the quotient digraph.
struct PathDecomposition {
    struct Path {
        std::vector<Vertex> vertices;
        Vertex entry = kNoVertex;
        Vertex exit = kNoVertex;
    };
    VertexSet t;
    VertexSet tbar;
    std::vector<Path> paths;
};

PathDecomposition decompose_paths(const Digraph& ds);

/// D_T-bar: direct arcs inside T-bar plus one bundled arc per path, with
/// w_ab = total path size over the bundles from a to b.
struct BundledMultigraph {
    struct Bundle {
        Vertex from = kNoVertex;
        Vertex to = kNoVertex;
        std::size_t path = 0;  // index into PathDecomposition::paths
    };
    std::vector<Arc> direct;
    std::vector<Bundle> bundles;
    std::map<std::pair<Vertex, Vertex>, std::size_t> weight;
};

BundledMultigraph bundle_paths(const Digraph& ds, const PathDecomposition& pd);

enum class AvoidBranch { girth, long_path, pigeonhole };

const char* to_string(AvoidBranch b);

struct AvoidingCycle {
    Cycle cycle;  // in C, original ids
    AvoidBranch branch = AvoidBranch::girth;
};

/// A cycle of C missing at least k1 vertices of S, assuming every cycle of C
/// meets S at least twice.
AvoidingCycle find_avoiding_cycle(const Digraph& d, const QuotientGraph& q, const VertexSet& c, std::size_t k1);

}  // namespace twopart
