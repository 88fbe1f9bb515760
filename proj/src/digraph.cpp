#include "twopart/digraph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace twopart {

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::initializer_list<Vertex> members) : VertexSet(std::vector<Vertex>(members)) {}

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::from_mask(std::span<const char> mask) {
    VertexSet s;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) s.members_.push_back(static_cast<Vertex>(i));
    }
    return s;
}

VertexSet VertexSet::range(Vertex n) {
    VertexSet s;
    s.members_.resize(static_cast<std::size_t>(std::max<Vertex>(n, 0)));
    for (Vertex v = 0; v < n; ++v) s.members_[static_cast<std::size_t>(v)] = v;
    return s;
}

bool VertexSet::contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

void VertexSet::insert(Vertex v) {
    auto it = std::lower_bound(members_.begin(), members_.end(), v);
    if (it == members_.end() || *it != v) members_.insert(it, v);
}

std::vector<char> VertexSet::mask(std::size_t n) const {
    std::vector<char> m(n, 0);
    for (Vertex v : members_) {
        if (v < 0 || static_cast<std::size_t>(v) >= n) {
            throw std::invalid_argument("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
        }
        m[static_cast<std::size_t>(v)] = 1;
    }
    return m;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    std::vector<Vertex> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VertexSet(std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    std::vector<Vertex> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VertexSet(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    std::vector<Vertex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VertexSet(std::move(out));
}

// ------------------------------------------------------------------ Digraph

Digraph::Digraph(std::size_t n) : n_(n), out_offsets_(n + 1, 0), in_offsets_(n + 1, 0) {}

Digraph::Digraph(std::size_t n, std::span<const Arc> arcs) : n_(n) {
    build(std::vector<Arc>(arcs.begin(), arcs.end()), true);
}

Digraph::Digraph(std::size_t n, std::initializer_list<Arc> arcs) : n_(n) {
    build(std::vector<Arc>(arcs), true);
}

void Digraph::build(std::vector<Arc> arcs, bool validate) {
    if (validate) {
        for (const Arc& a : arcs) {
            if (!contains(a.tail) || !contains(a.head)) {
                throw std::invalid_argument("arc (" + std::to_string(a.tail) + ", " + std::to_string(a.head) +
                                            ") has an endpoint outside [0, " + std::to_string(n_) + ")");
            }
            if (a.tail == a.head) {
                throw std::invalid_argument("self-loop at vertex " + std::to_string(a.tail));
            }
        }
    }
    std::sort(arcs.begin(), arcs.end());
    if (auto dup = std::adjacent_find(arcs.begin(), arcs.end()); dup != arcs.end()) {
        throw std::invalid_argument("duplicate arc (" + std::to_string(dup->tail) + ", " +
                                    std::to_string(dup->head) + ")");
    }

    out_offsets_.assign(n_ + 1, 0);
    in_offsets_.assign(n_ + 1, 0);
    for (const Arc& a : arcs) {
        ++out_offsets_[static_cast<std::size_t>(a.tail) + 1];
        ++in_offsets_[static_cast<std::size_t>(a.head) + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) {
        out_offsets_[i + 1] += out_offsets_[i];
        in_offsets_[i + 1] += in_offsets_[i];
    }
    heads_.resize(arcs.size());
    tails_.resize(arcs.size());
    std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
    // arcs are sorted by (tail, head), so both directions come out sorted
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        heads_[i] = arcs[i].head;
        tails_[in_fill[static_cast<std::size_t>(arcs[i].head)]++] = arcs[i].tail;
    }
}

std::span<const Vertex> Digraph::out(Vertex v) const {
    auto i = static_cast<std::size_t>(v);
    return {heads_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
}

std::span<const Vertex> Digraph::in(Vertex v) const {
    auto i = static_cast<std::size_t>(v);
    return {tails_.data() + in_offsets_[i], in_offsets_[i + 1] - in_offsets_[i]};
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
    if (!contains(u) || !contains(v)) return false;
    auto nbrs = out(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Arc> Digraph::arcs() const {
    std::vector<Arc> result;
    result.reserve(size());
    for (std::size_t u = 0; u < n_; ++u) {
        for (Vertex v : out(static_cast<Vertex>(u))) result.push_back({static_cast<Vertex>(u), v});
    }
    return result;
}

bool Digraph::operator==(const Digraph& other) const {
    return n_ == other.n_ && out_offsets_ == other.out_offsets_ && heads_ == other.heads_;
}

// --------------------------------------------------------------- subgraphs

InducedSubgraph induced_subgraph(const Digraph& d, const VertexSet& u) {
    InducedSubgraph result;
    result.to_new.assign(d.order(), kNoVertex);
    for (Vertex v : u) {
        if (!d.contains(v)) {
            throw std::invalid_argument("vertex " + std::to_string(v) + " is not in the digraph");
        }
        result.to_new[static_cast<std::size_t>(v)] = static_cast<Vertex>(result.to_old.size());
        result.to_old.push_back(v);
    }
    std::vector<Arc> arcs;
    for (Vertex v : u) {
        for (Vertex w : d.out(v)) {
            Vertex nw = result.to_new[static_cast<std::size_t>(w)];
            if (nw != kNoVertex) arcs.push_back({result.to_new[static_cast<std::size_t>(v)], nw});
        }
    }
    result.graph = Digraph(u.size(), arcs);
    return result;
}

InducedSubgraph remove_vertices(const Digraph& d, const VertexSet& x) {
    return induced_subgraph(d, set_difference(VertexSet::range(static_cast<Vertex>(d.order())), x));
}

// ------------------------------------------------------- strong components

std::vector<StrongComponent> strong_components(const Digraph& d) {
    const std::size_t n = d.order();
    std::vector<Vertex> index(n, kNoVertex), low(n, 0), comp(n, kNoVertex);
    std::vector<char> on_stack(n, 0);
    std::vector<Vertex> stack;
    std::vector<std::vector<Vertex>> found;  // reverse topological order
    Vertex counter = 0;

    struct Frame {
        Vertex v;
        std::size_t next;
    };
    std::vector<Frame> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kNoVertex) continue;
        call.push_back({static_cast<Vertex>(root), 0});
        while (!call.empty()) {
            Frame& f = call.back();
            auto v = static_cast<std::size_t>(f.v);
            if (f.next == 0) {
                index[v] = low[v] = counter++;
                stack.push_back(f.v);
                on_stack[v] = 1;
            }
            auto nbrs = d.out(f.v);
            bool descended = false;
            while (f.next < nbrs.size()) {
                auto w = static_cast<std::size_t>(nbrs[f.next++]);
                if (index[w] == kNoVertex) {
                    call.push_back({static_cast<Vertex>(w), 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                std::vector<Vertex> members;
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = 0;
                    comp[static_cast<std::size_t>(w)] = static_cast<Vertex>(found.size());
                    members.push_back(w);
                } while (w != f.v);
                found.push_back(std::move(members));
            }
            Vertex finished = f.v;
            call.pop_back();
            if (!call.empty()) {
                auto p = static_cast<std::size_t>(call.back().v);
                low[p] = std::min(low[p], low[static_cast<std::size_t>(finished)]);
            }
        }
    }

    std::vector<char> entered(found.size(), 0);
    for (const Arc& a : d.arcs()) {
        auto ct = comp[static_cast<std::size_t>(a.tail)], ch = comp[static_cast<std::size_t>(a.head)];
        if (ct != ch) entered[static_cast<std::size_t>(ch)] = 1;
    }

    std::vector<StrongComponent> result;
    result.reserve(found.size());
    for (std::size_t i = found.size(); i-- > 0;) {
        StrongComponent c;
        c.trivial = found[i].size() == 1;
        c.initial = !entered[i];
        c.vertices = VertexSet(std::move(found[i]));
        result.push_back(std::move(c));
    }
    return result;
}

// -------------------------------------------------------------- contraction

VertexSet OutTree::vertices() const {
    if (root == kNoVertex) return {};
    std::vector<Vertex> v{root};
    for (const auto& [child, _] : parent) v.push_back(child);
    return VertexSet(std::move(v));
}

Arc ContractionRecord::original_arc(Arc a) const {
    auto it = arc_provenance.find(a);
    return it == arc_provenance.end() ? a : it->second;
}

Digraph contract(const Digraph& d, Vertex u, Vertex v, ContractionRecord& rec, bool require_arc) {
    if (!d.contains(u) || !d.contains(v)) throw std::invalid_argument("contract: vertex out of range");
    if (u == v) throw std::invalid_argument("contract: cannot contract a vertex into itself");
    if (require_arc && !d.has_arc(u, v)) {
        throw std::invalid_argument("contract: arc " + std::to_string(u) + "->" + std::to_string(v) + " is missing");
    }
    if (rec.labels.empty()) {
        rec.labels.resize(d.order());
        for (std::size_t i = 0; i < d.order(); ++i) rec.labels[i] = static_cast<Vertex>(i);
    }
    if (rec.labels.size() != d.order()) throw std::invalid_argument("contract: record does not match digraph");

    const auto label = [&](Vertex x) { return rec.labels[static_cast<std::size_t>(x)]; };
    if (rec.survivor == kNoVertex) rec.survivor = label(u);
    rec.tree_arcs.push_back(d.has_arc(u, v) ? rec.original_arc({label(u), label(v)}) : Arc{kNoVertex, label(v)});
    rec.absorbed.push_back(label(v));

    std::vector<Arc> arcs;
    arcs.reserve(d.size() + d.out_degree(v));
    for (const Arc& a : d.arcs()) {
        if (a.tail != v && a.head != v) arcs.push_back(a);
    }
    for (Vertex w : d.out(v)) {
        if (w == u || d.has_arc(u, w)) continue;
        arcs.push_back({u, w});
        rec.arc_provenance[{label(u), label(w)}] = rec.original_arc({label(v), label(w)});
    }
    const auto shift = [v](Vertex x) { return x > v ? x - 1 : x; };
    for (Arc& a : arcs) a = {shift(a.tail), shift(a.head)};
    rec.labels.erase(rec.labels.begin() + v);
    return Digraph(d.order() - 1, arcs);
}

// ---------------------------------------------------------- BFS utilities

namespace {

bool allowed_at(std::span<const char> allowed, Vertex v) {
    return allowed.empty() || allowed[static_cast<std::size_t>(v)];
}

std::vector<Vertex> walk_back(const std::vector<Vertex>& parent, Vertex from, Vertex to) {
    std::vector<Vertex> path;
    for (Vertex x = from; x != to; x = parent[static_cast<std::size_t>(x)]) path.push_back(x);
    path.push_back(to);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

std::optional<Cycle> shortest_cycle_through(const Digraph& d, Vertex v, std::span<const char> allowed) {
    if (!allowed_at(allowed, v)) return std::nullopt;
    std::vector<Vertex> parent(d.order(), kNoVertex);
    std::vector<char> seen(d.order(), 0);
    std::queue<Vertex> q;
    q.push(v);
    seen[static_cast<std::size_t>(v)] = 1;
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop();
        for (Vertex y : d.out(x)) {
            if (y == v) return Cycle{walk_back(parent, x, v)};
            if (!allowed_at(allowed, y) || seen[static_cast<std::size_t>(y)]) continue;
            seen[static_cast<std::size_t>(y)] = 1;
            parent[static_cast<std::size_t>(y)] = x;
            q.push(y);
        }
    }
    return std::nullopt;
}

std::optional<Cycle> shortest_cycle_within(const Digraph& d, std::span<const char> allowed) {
    std::optional<Cycle> best;
    for (std::size_t v = 0; v < d.order(); ++v) {
        auto c = shortest_cycle_through(d, static_cast<Vertex>(v), allowed);
        if (c && (!best || c->length() < best->length())) {
            best = std::move(c);
            if (best->length() == 2) break;
        }
    }
    return best;
}

std::optional<Cycle> shortest_cycle(const Digraph& d) { return shortest_cycle_within(d, {}); }

std::optional<OutTree> out_branching_within(const Digraph& d, Vertex s, std::span<const char> allowed) {
    if (!d.contains(s) || !allowed_at(allowed, s)) return std::nullopt;
    OutTree tree{s, {}};
    std::vector<char> seen(d.order(), 0);
    std::queue<Vertex> q;
    q.push(s);
    seen[static_cast<std::size_t>(s)] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop();
        for (Vertex y : d.out(x)) {
            if (!allowed_at(allowed, y) || seen[static_cast<std::size_t>(y)]) continue;
            seen[static_cast<std::size_t>(y)] = 1;
            tree.parent.emplace(y, x);
            ++reached;
            q.push(y);
        }
    }
    std::size_t target = allowed.empty()
                             ? d.order()
                             : static_cast<std::size_t>(std::count_if(allowed.begin(), allowed.end(),
                                                                      [](char c) { return c != 0; }));
    if (reached != target) return std::nullopt;
    return tree;
}

std::optional<OutTree> out_branching_from(const Digraph& d, Vertex s) { return out_branching_within(d, s, {}); }

std::vector<char> reachable(const Digraph& d, std::span<const Vertex> srcs, std::span<const char> allowed) {
    std::vector<char> seen(d.order(), 0);
    std::vector<Vertex> stack;
    for (Vertex s : srcs) {
        if (allowed_at(allowed, s) && !seen[static_cast<std::size_t>(s)]) {
            seen[static_cast<std::size_t>(s)] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (Vertex y : d.out(x)) {
            if (allowed_at(allowed, y) && !seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = 1;
                stack.push_back(y);
            }
        }
    }
    return seen;
}

std::optional<std::vector<Vertex>> shortest_path(const Digraph& d, Vertex from, Vertex to,
                                                 std::span<const char> allowed) {
    if (!allowed_at(allowed, from) || !allowed_at(allowed, to)) return std::nullopt;
    if (from == to) return std::vector<Vertex>{from};
    std::vector<Vertex> parent(d.order(), kNoVertex);
    std::vector<char> seen(d.order(), 0);
    std::queue<Vertex> q;
    q.push(from);
    seen[static_cast<std::size_t>(from)] = 1;
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop();
        for (Vertex y : d.out(x)) {
            if (!allowed_at(allowed, y) || seen[static_cast<std::size_t>(y)]) continue;
            seen[static_cast<std::size_t>(y)] = 1;
            parent[static_cast<std::size_t>(y)] = x;
            if (y == to) return walk_back(parent, to, from);
            q.push(y);
        }
    }
    return std::nullopt;
}

Digraph reverse(const Digraph& d) {
    auto arcs = d.arcs();
    for (Arc& a : arcs) std::swap(a.tail, a.head);
    return Digraph(d.order(), arcs);
}

std::vector<Vertex> sources(const Digraph& d) {
    std::vector<Vertex> result;
    for (std::size_t v = 0; v < d.order(); ++v) {
        if (d.in_degree(static_cast<Vertex>(v)) == 0) result.push_back(static_cast<Vertex>(v));
    }
    return result;
}

}  // namespace twopart
