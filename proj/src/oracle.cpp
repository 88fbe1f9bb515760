#include "twopart/oracle.hpp"

#include <bit>
#include <random>
#include <stdexcept>
#include <string>

namespace twopart::oracle {

namespace {

struct Masks {
    std::vector<std::uint32_t> out, in;
};

Masks masks_of(const Digraph& d) {
    Masks m{std::vector<std::uint32_t>(d.order(), 0), std::vector<std::uint32_t>(d.order(), 0)};
    for (const Arc& a : d.arcs()) {
        m.out[static_cast<std::size_t>(a.tail)] |= 1u << a.head;
        m.in[static_cast<std::size_t>(a.head)] |= 1u << a.tail;
    }
    return m;
}

bool min_in_degree_ok(const Masks& m, std::uint32_t set) {
    for (std::uint32_t rest = set; rest; rest &= rest - 1) {
        if ((m.in[static_cast<std::size_t>(std::countr_zero(rest))] & set) == 0) return false;
    }
    return true;
}

std::uint32_t reach_within(const Masks& m, int s, std::uint32_t set) {
    std::uint32_t reached = 1u << s, frontier = reached;
    while (frontier) {
        std::uint32_t next = 0;
        for (std::uint32_t f = frontier; f; f &= f - 1) next |= m.out[static_cast<std::size_t>(std::countr_zero(f))];
        next &= set & ~reached;
        reached |= next;
        frontier = next;
    }
    return reached;
}

VertexSet set_of(std::uint32_t mask) {
    std::vector<Vertex> v;
    for (; mask; mask &= mask - 1) v.push_back(std::countr_zero(mask));
    return VertexSet(std::move(v));
}

}  // namespace

SolveResult brute_force_solve(const Instance& instance) {
    const Digraph& d = instance.graph;
    const std::size_t n = d.order();
    if (n > kMaxSolveOrder) {
        throw std::length_error("brute_force_solve refuses digraphs with more than " +
                                std::to_string(kMaxSolveOrder) + " vertices");
    }
    const Masks m = masks_of(d);
    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    SolveResult result;
    result.trace.push_back("oracle");
    for (std::uint64_t bits = 0; bits <= full; ++bits) {
        const auto v1 = static_cast<std::uint32_t>(bits);
        const auto v2 = full & ~v1;
        const auto size1 = static_cast<std::size_t>(std::popcount(v1));
        if (size1 < instance.k1 || n - size1 < instance.k2) continue;
        if (!min_in_degree_ok(m, v2)) continue;
        int root = -1;
        for (std::uint32_t cand = v1; cand; cand &= cand - 1) {
            if (reach_within(m, std::countr_zero(cand), v1) == v1) {
                root = std::countr_zero(cand);
                break;
            }
        }
        if (v1 != 0 && root < 0) continue;

        GoodPartition w;
        w.v1 = set_of(v1);
        w.v2 = set_of(v2);
        if (root >= 0) {
            // BFS tree straight off the bitmasks, lowest ids first.
            w.branching.root = root;
            std::uint32_t reached = 1u << root;
            std::vector<int> queue{root};
            for (std::size_t i = 0; i < queue.size(); ++i) {
                const int x = queue[i];
                for (std::uint32_t nxt = m.out[static_cast<std::size_t>(x)] & v1 & ~reached; nxt; nxt &= nxt - 1) {
                    const int y = std::countr_zero(nxt);
                    reached |= 1u << y;
                    w.branching.parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        result.yes = true;
        result.witness = std::move(w);
        return result;
    }
    return result;
}

VertexSet brute_force_max_d1(const Digraph& d) {
    const std::size_t n = d.order();
    if (n > kMaxD1Order) {
        throw std::length_error("brute_force_max_d1 refuses digraphs with more than " + std::to_string(kMaxD1Order) +
                                " vertices");
    }
    const Masks m = masks_of(d);
    std::uint32_t best = 0;
    for (std::uint32_t set = 0; set < (1u << n); ++set) {
        if (std::popcount(set) > std::popcount(best) && min_in_degree_ok(m, set)) best = set;
    }
    return set_of(best);
}

Digraph generate(const GeneratorConfig& config) {
    const std::size_t n = config.n;
    std::mt19937_64 rng(config.seed);
    std::bernoulli_distribution coin(config.p);
    std::vector<Arc> arcs;
    std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u != v && coin(rng)) {
                arcs.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
                ++outdeg[u];
                ++indeg[v];
            }
        }
    }
    if (n < 2) return Digraph(n, arcs);

    const auto pick_other = [&](std::size_t self, Vertex forbidden) -> std::optional<std::size_t> {
        const std::size_t choices = n - 1 - (forbidden != kNoVertex && static_cast<std::size_t>(forbidden) != self);
        if (choices == 0) return std::nullopt;
        std::size_t k = std::uniform_int_distribution<std::size_t>(0, choices - 1)(rng);
        for (std::size_t x = 0; x < n; ++x) {
            if (x == self || static_cast<Vertex>(x) == forbidden) continue;
            if (k-- == 0) return x;
        }
        return std::nullopt;
    };

    Vertex source = kNoVertex;
    if (config.single_source) source = static_cast<Vertex>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));

    if (config.min_in_degree_1 || config.single_source) {
        for (std::size_t v = 0; v < n; ++v) {
            if (indeg[v] > 0 || static_cast<Vertex>(v) == source) continue;
            const std::size_t u = *pick_other(v, kNoVertex);
            arcs.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
            ++outdeg[u];
            ++indeg[v];
        }
    }
    if (source != kNoVertex) {
        std::erase_if(arcs, [&](const Arc& a) {
            if (a.head != source) return false;
            --outdeg[static_cast<std::size_t>(a.tail)];
            return true;
        });
        indeg[static_cast<std::size_t>(source)] = 0;
    }
    if (config.min_out_degree_1) {
        for (std::size_t v = 0; v < n; ++v) {
            if (outdeg[v] > 0) continue;
            auto w = pick_other(v, source);
            if (!w) continue;
            arcs.push_back({static_cast<Vertex>(v), static_cast<Vertex>(*w)});
            ++outdeg[v];
            ++indeg[*w];
        }
    }
    return Digraph(n, arcs);
}

Digraph digraph_from_code(std::size_t n, std::uint64_t code) {
    std::vector<Arc> arcs;
    std::size_t bit = 0;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v) continue;
            if (code >> bit & 1u) arcs.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
            ++bit;
        }
    }
    return Digraph(n, arcs);
}

void enumerate_all_digraphs(std::size_t n, const std::function<void(const Digraph&)>& visit) {
    if (n > kMaxEnumerateOrder) {
        throw std::length_error("enumerate_all_digraphs supports at most " + std::to_string(kMaxEnumerateOrder) +
                                " vertices");
    }
    const std::uint64_t count = std::uint64_t{1} << (n * (n == 0 ? 0 : n - 1));
    for (std::uint64_t code = 0; code < count; ++code) visit(digraph_from_code(n, code));
}

}  // namespace twopart::oracle
