#include <algorithm>
#include <queue>
#include <string>

#include "twopart/solver.hpp"

namespace twopart {

Vertex QuotientGraph::index_of(Vertex original) const {
    auto it = std::lower_bound(s.begin(), s.end(), original);
    if (it == s.end() || *it != original) return kNoVertex;
    return static_cast<Vertex>(it - s.begin());
}

QuotientGraph build_quotient(const Digraph& d, const VertexSet& c, const VertexSet& s) {
    const std::size_t n = d.order();
    const auto in_c = c.mask(n);
    const auto in_s = s.mask(n);
    QuotientGraph q;
    q.s = s;

    std::vector<Arc> arcs;
    std::vector<Vertex> parent(n, kNoVertex);
    std::vector<char> seen(n, 0);
    std::vector<Vertex> visited;
    for (Vertex a : s) {
        const Vertex ai = q.index_of(a);
        std::vector<char> linked(s.size(), 0);
        std::queue<Vertex> frontier;
        frontier.push(a);
        seen[static_cast<std::size_t>(a)] = 1;
        visited.push_back(a);
        while (!frontier.empty()) {
            Vertex x = frontier.front();
            frontier.pop();
            for (Vertex y : d.out(x)) {
                auto yi = static_cast<std::size_t>(y);
                if (!in_c[yi]) continue;
                if (in_s[yi]) {
                    const Vertex bi = q.index_of(y);
                    if (y == a || linked[static_cast<std::size_t>(bi)]) continue;
                    linked[static_cast<std::size_t>(bi)] = 1;
                    std::vector<Vertex> path{y};
                    for (Vertex z = x; z != a; z = parent[static_cast<std::size_t>(z)]) path.push_back(z);
                    path.push_back(a);
                    std::reverse(path.begin(), path.end());
                    arcs.push_back({ai, bi});
                    q.representative.emplace(Arc{ai, bi}, std::move(path));
                    continue;
                }
                if (seen[yi]) continue;
                seen[yi] = 1;
                visited.push_back(y);
                parent[yi] = x;
                frontier.push(y);
            }
        }
        for (Vertex v : visited) seen[static_cast<std::size_t>(v)] = 0;
        visited.clear();
    }
    q.ds = Digraph(s.size(), arcs);
    return q;
}

PathDecomposition decompose_paths(const Digraph& ds) {
    const std::size_t m = ds.order();
    PathDecomposition pd;
    std::vector<char> in_t(m, 0);
    std::vector<Vertex> t, tbar;
    for (std::size_t v = 0; v < m; ++v) {
        const auto x = static_cast<Vertex>(v);
        in_t[v] = ds.out_degree(x) == 1 && ds.in_degree(x) == 1;
        (in_t[v] ? t : tbar).push_back(x);
    }
    pd.t = VertexSet(t);
    pd.tbar = VertexSet(tbar);

    std::vector<char> covered(m, 0);
    for (Vertex v : t) {
        const Vertex pred = ds.in(v).front();
        if (in_t[static_cast<std::size_t>(pred)]) continue;
        PathDecomposition::Path path;
        path.entry = pred;
        Vertex x = v;
        while (in_t[static_cast<std::size_t>(x)]) {
            covered[static_cast<std::size_t>(x)] = 1;
            path.vertices.push_back(x);
            x = ds.out(x).front();
        }
        path.exit = x;
        pd.paths.push_back(std::move(path));
    }
    for (Vertex v : t) {
        if (!covered[static_cast<std::size_t>(v)]) {
            throw ThresholdViolation("D_S[T] contains a cycle through index " + std::to_string(v) +
                                     " (T-bar would be empty)");
        }
    }
    return pd;
}

BundledMultigraph bundle_paths(const Digraph& ds, const PathDecomposition& pd) {
    BundledMultigraph bm;
    for (Vertex a : pd.tbar) {
        for (Vertex b : ds.out(a)) {
            if (pd.tbar.contains(b)) bm.direct.push_back({a, b});
        }
    }
    for (std::size_t i = 0; i < pd.paths.size(); ++i) {
        const auto& p = pd.paths[i];
        bm.bundles.push_back({p.entry, p.exit, i});
        bm.weight[{p.entry, p.exit}] += p.vertices.size();
    }
    return bm;
}

const char* to_string(AvoidBranch b) {
    switch (b) {
        case AvoidBranch::girth: return "girth";
        case AvoidBranch::long_path: return "long-path";
        case AvoidBranch::pigeonhole: return "pigeonhole";
    }
    return "?";
}

namespace {

// Shortest b -> a route in D_T-bar, returned as the D_S vertex sequence from b
// up to but excluding a.  Parallel choices prefer the direct arc, then the
// bundle with the fewest path vertices.
std::vector<Vertex> tbar_route(const PathDecomposition& pd, const BundledMultigraph& bm,
                               Vertex from, Vertex to) {
    struct Step {
        Vertex next;
        std::vector<Vertex> interior;
    };
    std::map<Vertex, std::map<Vertex, std::vector<Vertex>>> best;  // x -> y -> interior
    for (const Arc& a : bm.direct) best[a.tail][a.head] = {};
    for (const auto& bundle : bm.bundles) {
        const auto& verts = pd.paths[bundle.path].vertices;
        auto& slot = best[bundle.from];
        auto it = slot.find(bundle.to);
        if (it == slot.end() || verts.size() < it->second.size()) slot[bundle.to] = verts;
    }

    std::map<Vertex, Vertex> parent;
    std::queue<Vertex> frontier;
    frontier.push(from);
    parent[from] = from;
    while (!frontier.empty() && !parent.contains(to)) {
        Vertex x = frontier.front();
        frontier.pop();
        for (const auto& [y, _] : best[x]) {
            if (parent.contains(y)) continue;
            parent[y] = x;
            frontier.push(y);
        }
    }
    if (!parent.contains(to)) {
        throw InternalError("D_T-bar has no path between two T-bar vertices although D_S is strong");
    }
    std::vector<Vertex> hops{to};
    for (Vertex x = to; x != from; x = parent[x]) hops.push_back(parent[x]);
    std::reverse(hops.begin(), hops.end());

    std::vector<Vertex> route;
    for (std::size_t i = 0; i + 1 < hops.size(); ++i) {
        route.push_back(hops[i]);
        const auto& interior = best[hops[i]][hops[i + 1]];
        route.insert(route.end(), interior.begin(), interior.end());
    }
    return route;
}

// D_S cycle -> closed walk in C -> first simple cycle on it.
Cycle expand_cycle(const QuotientGraph& q, const std::vector<Vertex>& ds_cycle) {
    std::vector<Vertex> walk;
    for (std::size_t i = 0; i < ds_cycle.size(); ++i) {
        const Arc a{ds_cycle[i], ds_cycle[(i + 1) % ds_cycle.size()]};
        const auto& rep = q.representative.at(a);
        walk.insert(walk.end(), rep.begin(), rep.end() - 1);
    }
    std::map<Vertex, std::size_t> first_seen;
    for (std::size_t j = 0; j < walk.size(); ++j) {
        auto [it, fresh] = first_seen.emplace(walk[j], j);
        if (!fresh) {
            return Cycle{std::vector<Vertex>(walk.begin() + static_cast<std::ptrdiff_t>(it->second),
                                             walk.begin() + static_cast<std::ptrdiff_t>(j))};
        }
    }
    return Cycle{std::move(walk)};
}

}  // namespace

AvoidingCycle find_avoiding_cycle(const Digraph& d, const QuotientGraph& q, const VertexSet& c, std::size_t k1) {
    const Digraph& ds = q.ds;
    const std::size_t m = ds.order();
    if (m < 2) throw ThresholdViolation("fewer than two branch targets inside C");
    if (strong_components(ds).size() != 1) {
        throw InternalError("quotient digraph D_S is not strong");
    }

    std::size_t t_out = 0, t_in = 0;
    for (std::size_t v = 0; v < m; ++v) {
        t_out += ds.out_degree(static_cast<Vertex>(v)) == 1;
        t_in += ds.in_degree(static_cast<Vertex>(v)) == 1;
    }
    const std::size_t t = std::min(t_out, t_in);

    AvoidingCycle result;
    std::vector<Vertex> ds_cycle;
    if (t == 0 || t + 2 * k1 <= m) {
        result.branch = AvoidBranch::girth;
        ds_cycle = shortest_cycle(ds)->vertices;
    } else {
        const auto pd = decompose_paths(ds);
        auto long_path = std::find_if(pd.paths.begin(), pd.paths.end(),
                                      [&](const auto& p) { return p.vertices.size() >= k1; });
        if (long_path != pd.paths.end()) {
            result.branch = AvoidBranch::long_path;
            std::vector<char> allowed(m, 1);
            for (Vertex v : long_path->vertices) allowed[static_cast<std::size_t>(v)] = 0;
            auto cyc = shortest_cycle_within(ds, allowed);
            if (!cyc) throw InternalError("every cycle of D_S contains a path of T, contradicting branchability");
            ds_cycle = std::move(cyc->vertices);
        } else {
            result.branch = AvoidBranch::pigeonhole;
            const auto bm = bundle_paths(ds, pd);
            if (bm.weight.empty()) throw ThresholdViolation("no bundled paths in D_T-bar");
            auto heaviest = bm.weight.begin();
            for (auto it = bm.weight.begin(); it != bm.weight.end(); ++it) {
                if (it->second > heaviest->second) heaviest = it;
            }
            const auto [a, b] = heaviest->first;
            const PathDecomposition::Path* shortest = nullptr;
            for (const auto& bundle : bm.bundles) {
                if (bundle.from != a || bundle.to != b) continue;
                const auto& p = pd.paths[bundle.path];
                if (!shortest || p.vertices.size() < shortest->vertices.size() ||
                    (p.vertices.size() == shortest->vertices.size() && p.vertices.front() < shortest->vertices.front())) {
                    shortest = &p;
                }
            }
            ds_cycle.push_back(a);
            ds_cycle.insert(ds_cycle.end(), shortest->vertices.begin(), shortest->vertices.end());
            if (a != b) {
                auto back = tbar_route(pd, bm, b, a);
                ds_cycle.insert(ds_cycle.end(), back.begin(), back.end());
            }
        }
    }

    result.cycle = expand_cycle(q, ds_cycle);
    const auto& cv = result.cycle.vertices;
    for (std::size_t i = 0; i < cv.size(); ++i) {
        if (!c.contains(cv[i]) || !d.has_arc(cv[i], cv[(i + 1) % cv.size()])) {
            throw InternalError("expanded cycle leaves C or uses a missing arc");
        }
    }
    std::size_t hits = 0;
    for (Vertex v : result.cycle.vertices) hits += q.s.contains(v) ? 1 : 0;
    if (hits < 2) {
        throw InternalError("found a cycle of C meeting S in " + std::to_string(hits) + " vertex/vertices");
    }
    if (q.s.size() - hits < k1) {
        throw ThresholdViolation(std::string("cycle from the ") + to_string(result.branch) + " branch avoids only " +
                                 std::to_string(q.s.size() - hits) + " vertices of S, need " + std::to_string(k1));
    }
    return result;
}

}  // namespace twopart
