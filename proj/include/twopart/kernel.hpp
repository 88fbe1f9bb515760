#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twopart/digraph.hpp"

namespace twopart {

struct Instance {
    Digraph graph;
    std::size_t k1 = 0;
    std::size_t k2 = 0;
};

/// (V1, V2) with V1 spanned by `branching`.  An empty V1 carries the empty tree.
struct GoodPartition {
    VertexSet v1;
    VertexSet v2;
    OutTree branching;
};

struct VerifyReport {
    std::vector<std::string> violations;

    bool accepted() const { return violations.empty(); }
};

/// Thresholds steering the case split.  Defaults are f = 32k^3 + 4k and
/// h = 2k * f with k = max(k1, k2), saturating at INT64_MAX.
struct Params {
    std::int64_t k = 0;
    std::int64_t f = 0;
    std::int64_t h = 0;
    bool overridden = false;
};

struct ParamOverrides {
    std::optional<std::int64_t> f;
    std::optional<std::int64_t> h;
};

Params params(std::size_t k1, std::size_t k2, const ParamOverrides& overrides = {});

struct GrowResult {
    VertexSet set;
    std::vector<Arc> added;  // (in-neighbour already in the set, added vertex), in order
};

/// Repeatedly add the smallest out-neighbour of the current set until it has
/// at least k vertices or no out-neighbour is left.
VertexSet grow(const Digraph& d, const VertexSet& seed, std::size_t k);
/// grow() inside D[allowed]; an empty `allowed` means every vertex.
GrowResult grow_within(const Digraph& d, const VertexSet& seed, std::size_t k, std::span<const char> allowed);

/// Largest vertex set U with every vertex of D[U] having an in-neighbour in U.
VertexSet trim(const Digraph& d);
VertexSet trim_within(const Digraph& d, std::span<const char> allowed);

/// Answers |trim(D - X)| queries for small X by cascading deletions out of a
/// precomputed trim(D).  Holds scratch state, so one instance must not be
/// queried from several threads at once.
class ResidualTrim {
public:
    explicit ResidualTrim(const Digraph& d);

    std::size_t base_size() const { return base_size_; }
    /// True iff |trim(D - removed)| >= threshold; stops early once it is not.
    bool at_least(std::span<const Vertex> removed, std::size_t threshold);
    std::size_t size_without(std::span<const Vertex> removed);

private:
    std::size_t cascade(std::span<const Vertex> removed, std::size_t threshold);

    const Digraph* graph_;
    std::vector<char> in_base_;
    std::vector<std::uint32_t> base_in_degree_;
    std::size_t base_size_ = 0;

    std::vector<std::uint32_t> degree_;
    std::vector<char> dead_;
    std::vector<Vertex> touched_;
    std::vector<Vertex> queue_;
};

struct BranchableArcs {
    std::vector<Arc> arcs;  // B, sorted
    Digraph db;             // (V, B); db.out(v) is N_B^+(v)
};

/// Arc uv is branchable iff D - {u, v} still has at least k2 vertices in its trim.
BranchableArcs branchable_arcs(const Digraph& d, std::size_t k2);

/// Extend a subsolution (V1', V2') to a good partition of V by growing V1'
/// in D - V2' as far as possible.  Throws std::invalid_argument naming the
/// violated precondition.
GoodPartition extend_subsolution(const Digraph& d, std::optional<Vertex> root, const VertexSet& v1p,
                                 const VertexSet& v2p);

/// Checks every good-partition condition against the instance as given.
VerifyReport verify(const Instance& instance, const GoodPartition& p);

}  // namespace twopart
