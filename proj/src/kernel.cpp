#include "twopart/kernel.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace twopart {

namespace {

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

std::int64_t saturate(__int128 x) { return x > kMax ? kMax : static_cast<std::int64_t>(x); }

bool allowed_at(std::span<const char> allowed, Vertex v) {
    return allowed.empty() || allowed[static_cast<std::size_t>(v)];
}

std::string name(Vertex v) { return std::to_string(v); }

}  // namespace

Params params(std::size_t k1, std::size_t k2, const ParamOverrides& overrides) {
    Params p;
    const __int128 k = static_cast<__int128>(std::max(k1, k2));
    p.k = saturate(k);
    p.f = saturate(32 * k * k * k + 4 * k);
    p.h = saturate(2 * k * static_cast<__int128>(p.f));
    if (overrides.f) {
        if (*overrides.f < 1) throw std::invalid_argument("override f must be >= 1");
        p.f = *overrides.f;
        p.overridden = true;
    }
    if (overrides.h) {
        if (*overrides.h < 1) throw std::invalid_argument("override h must be >= 1");
        p.h = *overrides.h;
        p.overridden = true;
    }
    return p;
}

// -------------------------------------------------------------------- grow

GrowResult grow_within(const Digraph& d, const VertexSet& seed, std::size_t k, std::span<const char> allowed) {
    std::vector<char> in_set = seed.mask(d.order());
    std::vector<Vertex> members(seed.begin(), seed.end());
    std::vector<Arc> added;
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> frontier;
    const auto offer = [&](Vertex x) {
        for (Vertex y : d.out(x)) {
            if (!in_set[static_cast<std::size_t>(y)] && allowed_at(allowed, y)) frontier.push(y);
        }
    };
    for (Vertex v : seed) offer(v);

    while (members.size() < k && !frontier.empty()) {
        Vertex v = frontier.top();
        frontier.pop();
        if (in_set[static_cast<std::size_t>(v)]) continue;
        auto preds = d.in(v);
        Vertex parent = *std::find_if(preds.begin(), preds.end(),
                                      [&](Vertex u) { return in_set[static_cast<std::size_t>(u)] != 0; });
        in_set[static_cast<std::size_t>(v)] = 1;
        members.push_back(v);
        added.push_back({parent, v});
        offer(v);
    }
    return {VertexSet(std::move(members)), std::move(added)};
}

VertexSet grow(const Digraph& d, const VertexSet& seed, std::size_t k) { return grow_within(d, seed, k, {}).set; }

// -------------------------------------------------------------------- trim

VertexSet trim_within(const Digraph& d, std::span<const char> allowed) {
    const std::size_t n = d.order();
    std::vector<char> alive(n, 0);
    std::vector<std::uint32_t> degree(n, 0);
    std::vector<Vertex> queue;
    for (std::size_t v = 0; v < n; ++v) alive[v] = allowed_at(allowed, static_cast<Vertex>(v)) ? 1 : 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        for (Vertex u : d.in(static_cast<Vertex>(v))) degree[v] += alive[static_cast<std::size_t>(u)] ? 1 : 0;
        if (degree[v] == 0) queue.push_back(static_cast<Vertex>(v));
    }
    while (!queue.empty()) {
        Vertex x = queue.back();
        queue.pop_back();
        alive[static_cast<std::size_t>(x)] = 0;
        for (Vertex y : d.out(x)) {
            auto yi = static_cast<std::size_t>(y);
            if (alive[yi] && degree[yi] > 0 && --degree[yi] == 0) queue.push_back(y);
        }
    }
    return VertexSet::from_mask(alive);
}

VertexSet trim(const Digraph& d) { return trim_within(d, {}); }

ResidualTrim::ResidualTrim(const Digraph& d)
    : graph_(&d), in_base_(trim(d).mask(d.order())), base_in_degree_(d.order(), 0), dead_(d.order(), 0) {
    for (std::size_t v = 0; v < d.order(); ++v) {
        if (!in_base_[v]) continue;
        ++base_size_;
        for (Vertex u : d.in(static_cast<Vertex>(v))) base_in_degree_[v] += in_base_[static_cast<std::size_t>(u)] ? 1 : 0;
    }
    degree_ = base_in_degree_;
}

std::size_t ResidualTrim::cascade(std::span<const Vertex> removed, std::size_t threshold) {
    std::size_t remaining = base_size_;
    const auto kill = [&](Vertex v) {
        dead_[static_cast<std::size_t>(v)] = 1;
        touched_.push_back(v);
        queue_.push_back(v);
        --remaining;
    };
    for (Vertex v : removed) {
        if (in_base_[static_cast<std::size_t>(v)] && !dead_[static_cast<std::size_t>(v)]) kill(v);
    }
    while (!queue_.empty() && remaining >= threshold) {
        Vertex x = queue_.back();
        queue_.pop_back();
        for (Vertex y : graph_->out(x)) {
            auto yi = static_cast<std::size_t>(y);
            if (!in_base_[yi] || dead_[yi]) continue;
            touched_.push_back(y);
            if (--degree_[yi] == 0) kill(y);
        }
    }
    for (Vertex v : touched_) {
        degree_[static_cast<std::size_t>(v)] = base_in_degree_[static_cast<std::size_t>(v)];
        dead_[static_cast<std::size_t>(v)] = 0;
    }
    touched_.clear();
    queue_.clear();
    return remaining;
}

bool ResidualTrim::at_least(std::span<const Vertex> removed, std::size_t threshold) {
    if (base_size_ < threshold) return false;
    return cascade(removed, threshold) >= threshold;
}

std::size_t ResidualTrim::size_without(std::span<const Vertex> removed) { return cascade(removed, 0); }

// --------------------------------------------------------- branchable arcs

BranchableArcs branchable_arcs(const Digraph& d, std::size_t k2) {
    BranchableArcs result;
    if (k2 == 0) {
        result.arcs = d.arcs();
    } else {
        ResidualTrim residual(d);
        if (residual.base_size() >= k2) {
            for (const Arc& a : d.arcs()) {
                const Vertex pair[2] = {a.tail, a.head};
                if (residual.at_least(pair, k2)) result.arcs.push_back(a);
            }
        }
    }
    result.db = Digraph(d.order(), result.arcs);
    return result;
}

// ------------------------------------------------------ subsolution growth

GoodPartition extend_subsolution(const Digraph& d, std::optional<Vertex> root, const VertexSet& v1p,
                                 const VertexSet& v2p) {
    const std::size_t n = d.order();
    const auto in1 = v1p.mask(n);
    const auto in2 = v2p.mask(n);
    if (!set_intersection(v1p, v2p).empty()) throw std::invalid_argument("V1' and V2' intersect");

    const auto srcs = sources(d);
    if (srcs.size() > 1) throw std::invalid_argument("digraph has more than one vertex of in-degree 0");
    if (srcs.size() == 1 && !in1[static_cast<std::size_t>(srcs.front())]) {
        throw std::invalid_argument("in-degree-0 vertex " + name(srcs.front()) + " is not in V1'");
    }
    for (Vertex v : v2p) {
        auto preds = d.in(v);
        if (std::none_of(preds.begin(), preds.end(), [&](Vertex u) { return in2[static_cast<std::size_t>(u)] != 0; })) {
            throw std::invalid_argument("D[V2'] has in-degree 0 at vertex " + name(v));
        }
    }

    GoodPartition result;
    if (!v1p.empty()) {
        std::vector<Vertex> candidates;
        if (root) {
            candidates.push_back(*root);
        } else if (!srcs.empty()) {
            candidates.push_back(srcs.front());
        } else {
            candidates = v1p.members();
        }
        std::optional<OutTree> tree;
        for (Vertex c : candidates) {
            if (c < 0 || static_cast<std::size_t>(c) >= n || !in1[static_cast<std::size_t>(c)]) continue;
            if ((tree = out_branching_within(d, c, in1))) break;
        }
        if (!tree) throw std::invalid_argument("D[V1'] has no out-branching");
        result.branching = std::move(*tree);
    } else if (root) {
        throw std::invalid_argument("root given for an empty V1'");
    }

    std::vector<char> outside_v2(n);
    for (std::size_t v = 0; v < n; ++v) outside_v2[v] = in2[v] ? 0 : 1;
    auto grown = grow_within(d, v1p, n - v2p.size(), outside_v2);
    for (const Arc& a : grown.added) result.branching.parent.emplace(a.head, a.tail);
    result.v1 = std::move(grown.set);
    result.v2 = set_difference(VertexSet::range(static_cast<Vertex>(n)), result.v1);
    return result;
}

// ------------------------------------------------------------------ verify

VerifyReport verify(const Instance& instance, const GoodPartition& p) {
    const Digraph& d = instance.graph;
    const std::size_t n = d.order();
    VerifyReport report;
    const auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    std::vector<int> side(n, 0);  // 1 = V1, 2 = V2
    for (const auto* set : {&p.v1, &p.v2}) {
        const int tag = set == &p.v1 ? 1 : 2;
        for (Vertex v : *set) {
            if (!d.contains(v)) {
                fail("vertex " + name(v) + " is not in the digraph");
                continue;
            }
            auto& s = side[static_cast<std::size_t>(v)];
            if (s != 0) fail("vertex " + name(v) + " is in both V1 and V2");
            s = tag;
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (side[v] == 0) fail("vertex " + name(static_cast<Vertex>(v)) + " is in neither V1 nor V2");
    }
    if (!report.accepted()) return report;

    if (p.v1.size() < instance.k1) {
        fail("|V1| = " + std::to_string(p.v1.size()) + " < k1 = " + std::to_string(instance.k1));
    }
    if (p.v2.size() < instance.k2) {
        fail("|V2| = " + std::to_string(p.v2.size()) + " < k2 = " + std::to_string(instance.k2));
    }

    const OutTree& t = p.branching;
    if (p.v1.empty()) {
        if (t.root != kNoVertex || !t.parent.empty()) fail("branching is non-empty but V1 is empty");
    } else if (t.root == kNoVertex || !d.contains(t.root) || side[static_cast<std::size_t>(t.root)] != 1) {
        fail("branching root is not a vertex of V1");
    } else {
        if (t.parent.contains(t.root)) fail("branching root " + name(t.root) + " has a parent");
        for (Vertex v : p.v1) {
            if (v != t.root && !t.parent.contains(v)) fail("V1 vertex " + name(v) + " has no parent in the branching");
        }
        bool arcs_ok = true;
        for (const auto& [child, par] : t.parent) {
            if (!d.contains(child) || side[static_cast<std::size_t>(child)] != 1) {
                fail("branching vertex " + name(child) + " is not in V1");
                arcs_ok = false;
            } else if (!d.contains(par) || side[static_cast<std::size_t>(par)] != 1) {
                fail("parent " + name(par) + " of " + name(child) + " is not in V1");
                arcs_ok = false;
            } else if (!d.has_arc(par, child)) {
                fail("branching pair (" + name(par) + ", " + name(child) + ") is not an arc");
                arcs_ok = false;
            }
        }
        if (arcs_ok) {
            for (const auto& [child, _] : t.parent) {
                Vertex x = child;
                std::size_t steps = 0;
                while (x != t.root && steps <= t.parent.size()) {
                    auto it = t.parent.find(x);
                    if (it == t.parent.end()) break;
                    x = it->second;
                    ++steps;
                }
                if (x != t.root) {
                    fail("vertex " + name(child) + " does not reach the root through parents");
                    break;
                }
            }
        }
    }

    for (Vertex v : p.v2) {
        auto preds = d.in(v);
        if (std::none_of(preds.begin(), preds.end(), [&](Vertex u) { return side[static_cast<std::size_t>(u)] == 2; })) {
            fail("vertex " + name(v) + " of V2 has no in-neighbour in V2");
        }
    }
    return report;
}

}  // namespace twopart
