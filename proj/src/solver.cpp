#include "twopart/solver.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace twopart {

void SolveContext::note(const std::string& label) {
    if (std::find(trace.begin(), trace.end(), label) == trace.end()) trace.push_back(label);
}

namespace {

std::vector<char> all_but(std::size_t n, const VertexSet& excluded) {
    std::vector<char> allowed(n, 1);
    for (Vertex v : excluded) allowed[static_cast<std::size_t>(v)] = 0;
    return allowed;
}

VertexSet first_n(const VertexSet& set, std::size_t count) {
    std::vector<Vertex> out(set.begin(), set.begin() + static_cast<std::ptrdiff_t>(std::min(count, set.size())));
    return VertexSet(std::move(out));
}

/// Extend a Case-2 subsolution and check it.  Size shortfalls can only come
/// from lowered thresholds.
GoodPartition finish(const Instance& inst, Vertex s, const VertexSet& v1p, const VertexSet& v2p,
                     const std::string& step) {
    if (v1p.size() < inst.k1 || v2p.size() < inst.k2) {
        throw ThresholdViolation(step + ": subsolution has |V1'| = " + std::to_string(v1p.size()) +
                                 ", |V2'| = " + std::to_string(v2p.size()) + " for k1 = " + std::to_string(inst.k1) +
                                 ", k2 = " + std::to_string(inst.k2));
    }
    GoodPartition p;
    try {
        p = extend_subsolution(inst.graph, s, v1p, v2p);
    } catch (const std::invalid_argument& e) {
        throw InternalError(step + ": subsolution is malformed: " + e.what());
    }
    if (auto report = verify(inst, p); !report.accepted()) {
        throw InternalError(step + ": extended partition fails verification: " + report.violations.front());
    }
    return p;
}

VertexSet out_star_leaves(const VertexSet& candidates, const VertexSet& v2p, std::size_t k1, const std::string& step) {
    auto leaves = first_n(set_difference(candidates, v2p), k1 - 1);
    if (leaves.size() + 1 < k1) {
        throw ThresholdViolation(step + ": only " + std::to_string(leaves.size()) +
                                 " out-neighbours of s remain for the out-star");
    }
    return leaves;
}

std::vector<StrongComponent> components_without(const Digraph& d, const VertexSet& removed) {
    auto sub = remove_vertices(d, removed);
    auto comps = strong_components(sub.graph);
    for (auto& c : comps) {
        std::vector<Vertex> orig;
        for (Vertex v : c.vertices) orig.push_back(sub.to_old[static_cast<std::size_t>(v)]);
        c.vertices = VertexSet(std::move(orig));
    }
    return comps;
}

void require_case2(const Instance& inst, const BranchableArcs& ba, Vertex s, const SolveContext& ctx) {
    const Digraph& d = inst.graph;
    if (!d.contains(s)) throw std::invalid_argument("root vertex out of range");
    if (inst.k1 == 0 || inst.k2 == 0) throw std::invalid_argument("Case 2 needs k1, k2 >= 1");
    for (std::size_t v = 0; v < d.order(); ++v) {
        if (static_cast<Vertex>(v) != s && d.in_degree(static_cast<Vertex>(v)) == 0) {
            throw std::invalid_argument("Case 2 needs every vertex other than s to have an in-neighbour");
        }
    }
    if (static_cast<std::int64_t>(ba.db.out_degree(s)) <= ctx.params.h) {
        throw std::invalid_argument("Case 2 needs |N_B^+(s)| > h");
    }
}

}  // namespace

// ------------------------------------------------------------- k = 0 cases

SolveResult solve_trivial_k(const Instance& inst) {
    if (std::min(inst.k1, inst.k2) != 0) throw InternalError("solve_trivial_k needs min(k1, k2) = 0");
    const Digraph& d = inst.graph;
    SolveResult result;
    const auto srcs = sources(d);
    if (srcs.size() > 1) {
        result.trace.push_back("preprocess:multiple-sources");
        return result;
    }
    if (inst.k1 == 0) {
        result.trace.push_back("trivial:k1=0");
        auto core = trim(d);
        if (core.size() >= inst.k2) {
            auto rest = set_difference(VertexSet::range(static_cast<Vertex>(d.order())), core);
            result.witness = extend_subsolution(d, std::nullopt, rest, core);
        }
    } else {
        result.trace.push_back("trivial:k2=0");
        const auto roots = srcs.empty() ? VertexSet::range(static_cast<Vertex>(d.order())) : VertexSet(srcs);
        for (Vertex root : roots) {
            auto grown = grow(d, {root}, d.order());
            if (grown.size() >= inst.k1) {
                result.witness = extend_subsolution(d, root, grown, {});
                break;
            }
        }
    }
    result.yes = result.witness.has_value();
    return result;
}

// ------------------------------------------------------------------ Case 1

std::optional<GoodPartition> case_all_small(const Instance& inst, const BranchableArcs& ba, const VertexSet& roots,
                                            SolveContext& ctx) {
    ctx.note("case1");
    const Digraph& d = inst.graph;
    const std::size_t k1 = inst.k1;
    if (k1 == 0 || k1 > d.order()) return std::nullopt;

    ResidualTrim residual(d);
    if (residual.base_size() < inst.k2) return std::nullopt;

    std::set<std::vector<Vertex>> seen;
    std::vector<Vertex> found;
    std::function<bool(const std::vector<Vertex>&)> explore = [&](const std::vector<Vertex>& tree) {
        if (tree.size() == k1) {
            if (!residual.at_least(tree, inst.k2)) return false;
            found = tree;
            return true;
        }
        std::vector<Vertex> candidates;
        for (Vertex x : tree) {
            for (Vertex y : ba.db.out(x)) {
                if (!std::binary_search(tree.begin(), tree.end(), y)) candidates.push_back(y);
            }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (Vertex c : candidates) {
            auto next = tree;
            next.insert(std::upper_bound(next.begin(), next.end(), c), c);
            if (seen.insert(next).second && explore(next)) return true;
        }
        return false;
    };

    for (Vertex root : roots) {
        std::vector<Vertex> start{root};
        if (!seen.insert(start).second || !explore(start)) continue;
        const VertexSet v1p(found);
        const auto v2p = trim_within(d, all_but(d.order(), v1p));
        return extend_subsolution(d, std::nullopt, v1p, v2p);
    }
    return std::nullopt;
}

// ------------------------------------------------------------------ Case 2

GoodPartition case_big_no_source(const Instance& inst, const BranchableArcs& ba, Vertex s, SolveContext& ctx) {
    require_case2(inst, ba, s, ctx);
    ctx.note("case2");
    const VertexSet nb(std::vector<Vertex>(ba.db.out(s).begin(), ba.db.out(s).end()));
    for (const auto& comp : components_without(inst.graph, {s})) {
        if (static_cast<std::int64_t>(set_intersection(nb, comp.vertices).size()) >= ctx.params.f) {
            return subcase_concentrated(inst, ba, s, comp.vertices, ctx);
        }
    }
    return subcase_spread(inst, ba, s, ctx);
}

GoodPartition subcase_concentrated(const Instance& inst, const BranchableArcs& ba, Vertex s, const VertexSet& c,
                                   SolveContext& ctx) {
    ctx.note("case2.1");
    const Digraph& d = inst.graph;
    const std::size_t n = d.order();
    const VertexSet nb(std::vector<Vertex>(ba.db.out(s).begin(), ba.db.out(s).end()));
    const VertexSet s_nbrs = set_intersection(nb, c);
    const auto not_s = all_but(n, {s});
    const VertexSet s_and_c = set_union(c, {s});

    // (a) C goes to V1 whole.
    auto rest = trim_within(d, all_but(n, s_and_c));
    if (rest.size() >= inst.k2 && s_and_c.size() >= inst.k1) {
        ctx.note("case2.1:a");
        return finish(inst, s, s_and_c, rest, "case2.1:a");
    }

    // (b) C goes to V2 whole.
    auto grown = grow_within(ba.db, {s}, inst.k1, all_but(n, c)).set;
    if (grown.size() >= inst.k1 && c.size() >= std::max<std::size_t>(inst.k2, 2)) {
        ctx.note("case2.1:b");
        return finish(inst, s, grown, c, "case2.1:b");
    }

    // (c) Vertices outside trim(D - s) are the iterated trivial initial
    // components; they are absorbed into s and never used for V1' or V2'.
    const auto core = trim_within(d, not_s);
    const auto core_mask = core.mask(n);
    if (core.size() + 1 < n) ctx.note("case2.1:contract");
    const auto in_c = c.mask(n);
    bool entered = false;
    for (Vertex y : c) {
        for (Vertex x : d.in(y)) {
            if (!in_c[static_cast<std::size_t>(x)] && x != s && core_mask[static_cast<std::size_t>(x)]) entered = true;
        }
    }
    if (entered) {
        ctx.note("case2.1:c");
        const Digraph rev = reverse(d);
        const auto upstream = reachable(rev, c.members(), core_mask);
        const auto removed = set_difference(VertexSet::range(static_cast<Vertex>(n)), core);
        const StrongComponent* source_comp = nullptr;
        auto comps = components_without(d, removed);
        for (const auto& comp : comps) {
            if (!comp.initial || comp.trivial || comp.vertices == c) continue;
            if (!upstream[static_cast<std::size_t>(comp.vertices.front())]) continue;
            if (!source_comp || comp.vertices.front() < source_comp->vertices.front()) source_comp = &comp;
        }
        if (!source_comp) throw InternalError("C is entered but no non-trivial initial component reaches it");
        auto v2p = grow_within(d, source_comp->vertices, inst.k2, not_s).set;
        auto leaves = out_star_leaves(s_nbrs, v2p, inst.k1, "case2.1:c");
        return finish(inst, s, set_union(leaves, {s}), v2p, "case2.1:c");
    }

    // (d) C is initial: find a cycle of C avoiding enough of S.
    ctx.note("case2.1:d");
    std::vector<char> outside_s(n, 0);
    for (Vertex v : c) outside_s[static_cast<std::size_t>(v)] = s_nbrs.contains(v) ? 0 : 1;
    std::optional<Cycle> cycle = shortest_cycle_within(d, outside_s);
    if (cycle) {
        ctx.note("avoid:outside-S");
    } else {
        for (Vertex u : s_nbrs) {
            outside_s[static_cast<std::size_t>(u)] = 1;
            cycle = shortest_cycle_through(d, u, outside_s);
            outside_s[static_cast<std::size_t>(u)] = 0;
            if (cycle) {
                ctx.note("avoid:single-S");
                break;
            }
        }
    }
    if (!cycle) {
        const auto q = build_quotient(d, c, s_nbrs);
        auto found = find_avoiding_cycle(d, q, c, inst.k1);
        ctx.note(std::string("avoid:") + to_string(found.branch));
        cycle = std::move(found.cycle);
    }
    const VertexSet on_cycle(cycle->vertices);
    auto v2p = on_cycle.size() >= inst.k2 ? on_cycle : grow_within(d, on_cycle, inst.k2, not_s).set;
    auto leaves = out_star_leaves(s_nbrs, v2p, inst.k1, "case2.1:d");
    return finish(inst, s, set_union(leaves, {s}), v2p, "case2.1:d");
}

GoodPartition subcase_spread(const Instance& inst, const BranchableArcs& ba, Vertex s, SolveContext& ctx) {
    ctx.note("case2.2");
    const Digraph& d = inst.graph;
    const std::size_t n = d.order();
    const VertexSet nb(std::vector<Vertex>(ba.db.out(s).begin(), ba.db.out(s).end()));
    const auto not_s = all_but(n, {s});

    VertexSet v2p;
    while (v2p.size() < inst.k2) {
        const StrongComponent* pick = nullptr;
        std::size_t pick_hits = 0;
        auto comps = components_without(d, set_union(v2p, {s}));
        for (const auto& comp : comps) {
            if (comp.trivial) continue;
            const std::size_t hits = set_intersection(nb, comp.vertices).size();
            if (!pick || hits < pick_hits || (hits == pick_hits && comp.vertices.front() < pick->vertices.front())) {
                pick = &comp;
                pick_hits = hits;
            }
        }
        if (!pick) {
            throw ThresholdViolation("case2.2: D - s - V2' has no non-trivial strong component left (|V2'| = " +
                                     std::to_string(v2p.size()) + ")");
        }
        v2p = grow_within(d, set_union(v2p, pick->vertices), inst.k2, not_s).set;
    }
    auto leaves = out_star_leaves(nb, v2p, inst.k1, "case2.2");
    return finish(inst, s, set_union(leaves, {s}), v2p, "case2.2");
}

// ------------------------------------------------------------------ Case 3

SolveResult case_with_source(const Instance& inst, SolveContext& ctx) {
    const Digraph& d = inst.graph;
    const auto srcs = sources(d);
    if (srcs.size() != 1) throw std::invalid_argument("Case 3 needs exactly one vertex of in-degree 0");
    if (inst.k1 == 0 || inst.k2 == 0) throw std::invalid_argument("Case 3 needs k1, k2 >= 1");
    ctx.note("case3");
    const Vertex r = srcs.front();
    const std::size_t n = d.order();

    std::set<std::vector<Vertex>> memo;
    std::function<std::optional<GoodPartition>(const Digraph&, const ContractionRecord&, const VertexSet&)> dfs =
        [&](const Digraph& g, const ContractionRecord& rec, const VertexSet& absorbed) -> std::optional<GoodPartition> {
        if (!memo.insert(absorbed.members()).second) return std::nullopt;

        const VertexSet tree = set_union(absorbed, {r});
        if (tree.size() >= inst.k1) {
            auto v2p = trim_within(d, all_but(n, tree));
            if (v2p.size() < inst.k2) return std::nullopt;
            return extend_subsolution(d, r, tree, v2p);
        }

        const auto ba = branchable_arcs(g, inst.k2);
        const Vertex rg = static_cast<Vertex>(std::find(rec.labels.begin(), rec.labels.end(), r) - rec.labels.begin());
        const auto nb = ba.db.out(rg);
        if (static_cast<std::int64_t>(nb.size()) > ctx.params.h) {
            ctx.note("case3:to-case2");
            const Instance sub{g, inst.k1, inst.k2};
            const auto part = case_big_no_source(sub, ba, rg, ctx);
            const auto label = [&](Vertex x) { return rec.labels[static_cast<std::size_t>(x)]; };
            GoodPartition mapped;
            std::vector<Vertex> v1(absorbed.begin(), absorbed.end()), v2;
            for (Vertex x : part.v1) v1.push_back(label(x));
            for (Vertex x : part.v2) v2.push_back(label(x));
            mapped.v1 = VertexSet(std::move(v1));
            mapped.v2 = VertexSet(std::move(v2));
            mapped.branching.root = r;
            for (const Arc& a : rec.tree_arcs) mapped.branching.parent[a.head] = a.tail;
            for (const auto& [child, par] : part.branching.parent) {
                const Arc orig = rec.original_arc({label(par), label(child)});
                mapped.branching.parent[orig.head] = orig.tail;
            }
            return mapped;
        }
        for (Vertex u : nb) {
            ContractionRecord next = rec;
            const Digraph contracted = contract(g, rg, u, next);
            auto w = absorbed;
            w.insert(rec.labels[static_cast<std::size_t>(u)]);
            if (auto found = dfs(contracted, next, w)) return found;
        }
        ctx.note("case3:backtrack");
        return std::nullopt;
    };

    ContractionRecord rec;
    rec.survivor = r;
    rec.labels.resize(n);
    for (std::size_t v = 0; v < n; ++v) rec.labels[v] = static_cast<Vertex>(v);

    SolveResult result;
    result.witness = dfs(d, rec, {});
    result.yes = result.witness.has_value();
    return result;
}

// ------------------------------------------------------------ entry points

SolveResult solve(const Instance& inst) { return solve(inst, params(inst.k1, inst.k2)); }

SolveResult solve(const Instance& inst, const Params& p) {
    const Digraph& d = inst.graph;
    SolveContext ctx{p, {}};
    SolveResult result;
    const auto srcs = sources(d);

    if (srcs.size() > 1) {
        ctx.note("preprocess:multiple-sources");
    } else if (inst.k1 + inst.k2 > d.order()) {
        ctx.note("preprocess:too-few-vertices");
    } else if (std::min(inst.k1, inst.k2) == 0) {
        result = solve_trivial_k(inst);
        for (const auto& label : result.trace) ctx.note(label);
    } else {
        const auto ba = branchable_arcs(d, inst.k2);
        Vertex big = kNoVertex;
        for (std::size_t v = 0; v < d.order() && big == kNoVertex; ++v) {
            if (static_cast<std::int64_t>(ba.db.out_degree(static_cast<Vertex>(v))) > p.h) big = static_cast<Vertex>(v);
        }
        if (big == kNoVertex) {
            const auto roots = srcs.empty() ? VertexSet::range(static_cast<Vertex>(d.order())) : VertexSet(srcs);
            result.witness = case_all_small(inst, ba, roots, ctx);
        } else if (srcs.empty()) {
            result.witness = case_big_no_source(inst, ba, big, ctx);
        } else {
            result = case_with_source(inst, ctx);
        }
    }

    result.yes = result.witness.has_value();
    result.trace = std::move(ctx.trace);
    if (result.yes) {
        if (auto report = verify(inst, *result.witness); !report.accepted()) {
            throw InternalError("solver produced an invalid witness: " + report.violations.front());
        }
    }
    return result;
}

SolveResult solve_reversed(const Instance& inst) { return solve_reversed(inst, params(inst.k1, inst.k2)); }

SolveResult solve_reversed(const Instance& inst, const Params& p) {
    auto result = solve(Instance{reverse(inst.graph), inst.k1, inst.k2}, p);
    result.in_branching = true;
    result.trace.insert(result.trace.begin(), "reversed");
    return result;
}

std::optional<Vertex> wide_branch_vertex(const BranchableArcs& ba, std::int64_t k) {
    const __int128 kk = k;
    const __int128 threshold = 64 * kk * kk * kk * kk + 8 * kk * kk;
    for (std::size_t v = 0; v < ba.db.order(); ++v) {
        if (static_cast<__int128>(ba.db.out_degree(static_cast<Vertex>(v))) >= threshold) return static_cast<Vertex>(v);
    }
    return std::nullopt;
}

}  // namespace twopart
