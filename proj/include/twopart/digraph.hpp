#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace twopart {

using Vertex = std::int32_t;
inline constexpr Vertex kNoVertex = -1;

struct Arc {
    Vertex tail = kNoVertex;
    Vertex head = kNoVertex;

    auto operator<=>(const Arc&) const = default;
};

/// Sorted, duplicate-free set of vertex ids.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> members);
    explicit VertexSet(std::vector<Vertex> members);

    /// Members are the indices i with mask[i] != 0.
    static VertexSet from_mask(std::span<const char> mask);
    static VertexSet range(Vertex n);

    bool contains(Vertex v) const;
    void insert(Vertex v);
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }
    Vertex front() const { return members_.front(); }
    const std::vector<Vertex>& members() const { return members_; }

    /// Indicator vector of length n; throws if a member is outside [0, n).
    std::vector<char> mask(std::size_t n) const;

    bool operator==(const VertexSet&) const = default;

private:
    std::vector<Vertex> members_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);

/// Immutable simple digraph on vertices [0, n) in compressed adjacency form.
/// Both adjacency directions are sorted by neighbour id.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(std::size_t n);
    /// Throws std::invalid_argument on out-of-range ids, self-loops or repeated arcs.
    Digraph(std::size_t n, std::span<const Arc> arcs);
    Digraph(std::size_t n, std::initializer_list<Arc> arcs);

    std::size_t order() const { return n_; }
    std::size_t size() const { return heads_.size(); }

    std::span<const Vertex> out(Vertex v) const;
    std::span<const Vertex> in(Vertex v) const;
    std::size_t out_degree(Vertex v) const { return out(v).size(); }
    std::size_t in_degree(Vertex v) const { return in(v).size(); }
    bool has_arc(Vertex u, Vertex v) const;
    bool contains(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < n_; }

    /// Arcs ordered by (tail, head).
    std::vector<Arc> arcs() const;

    bool operator==(const Digraph& other) const;

private:
    void build(std::vector<Arc> arcs, bool validate);

    std::size_t n_ = 0;
    std::vector<std::size_t> out_offsets_{0};
    std::vector<Vertex> heads_;
    std::vector<std::size_t> in_offsets_{0};
    std::vector<Vertex> tails_;
};

struct InducedSubgraph {
    Digraph graph;
    std::vector<Vertex> to_new;  // size order(D); kNoVertex outside U
    std::vector<Vertex> to_old;  // size |U|
};

/// D[U], relabelled densely in increasing old-id order.
InducedSubgraph induced_subgraph(const Digraph& d, const VertexSet& u);
/// D - X.
InducedSubgraph remove_vertices(const Digraph& d, const VertexSet& x);

struct StrongComponent {
    VertexSet vertices;
    bool initial = false;  // no arc enters from outside
    bool trivial = false;  // single vertex (simple digraphs have no loops)
};

/// Strong components in a topological order of the condensation.
std::vector<StrongComponent> strong_components(const Digraph& d);

/// Out-tree given by a parent map; the empty tree has root kNoVertex.
struct OutTree {
    Vertex root = kNoVertex;
    std::map<Vertex, Vertex> parent;  // child -> parent

    std::size_t size() const { return root == kNoVertex ? 0 : parent.size() + 1; }
    VertexSet vertices() const;
};

struct Cycle {
    std::vector<Vertex> vertices;  // v0 -> v1 -> ... -> v_{l-1} -> v0

    std::size_t length() const { return vertices.size(); }
};

struct ContractionRecord {
    Vertex survivor = kNoVertex;          // original id
    std::vector<Vertex> absorbed;         // original ids, absorption order
    std::vector<Arc> tree_arcs;           // original arc that reached each absorbed vertex
    std::map<Arc, Arc> arc_provenance;    // added arc (original ids) -> original arc
    std::vector<Vertex> labels;           // current vertex index -> original id

    /// Original arc represented by the current arc (u, v) given in original ids.
    Arc original_arc(Arc a) const;
};

/// Contract v into u: v disappears and u gains arcs to every out-neighbour of v.
/// The result is relabelled densely (v's index is removed); rec.labels tracks
/// original ids.  Loops and duplicate arcs are dropped.
Digraph contract(const Digraph& d, Vertex u, Vertex v, ContractionRecord& rec, bool require_arc = true);

std::optional<Cycle> shortest_cycle(const Digraph& d);
/// Shortest cycle of D[allowed] through v, if any.
std::optional<Cycle> shortest_cycle_through(const Digraph& d, Vertex v, std::span<const char> allowed);
std::optional<Cycle> shortest_cycle_within(const Digraph& d, std::span<const char> allowed);

/// Breadth-first spanning out-tree rooted at s, or nullopt if s does not reach every vertex.
std::optional<OutTree> out_branching_from(const Digraph& d, Vertex s);
/// Same, restricted to D[allowed]; the tree must span every allowed vertex.
std::optional<OutTree> out_branching_within(const Digraph& d, Vertex s, std::span<const char> allowed);

/// Vertices reachable from `sources` inside D[allowed] (sources included when allowed).
std::vector<char> reachable(const Digraph& d, std::span<const Vertex> sources, std::span<const char> allowed);

/// Shortest from->to path inside D[allowed], vertex sequence including both ends.
std::optional<std::vector<Vertex>> shortest_path(const Digraph& d, Vertex from, Vertex to,
                                                 std::span<const char> allowed);

Digraph reverse(const Digraph& d);

std::vector<Vertex> sources(const Digraph& d);

}  // namespace twopart
