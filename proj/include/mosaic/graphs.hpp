#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mosaic/chain_complex.hpp"
#include "mosaic/parallel.hpp"
#include "mosaic/sparse_matrix.hpp"

namespace mosaic::graphs {

// Vertices are 1-based: externals 1..n_ext, internals n_ext+1..n_ext+n_int.
// The edge list order is the orientation datum (edges have odd degree in
// the d+1 = 2 regime); internal vertices are unlabeled up to relabeling.
struct DirectedGraph {
    int n_ext = 0;
    int n_int = 0;
    std::vector<std::pair<int, int>> edges;

    int vertices() const { return n_ext + n_int; }
    bool is_internal(int v) const { return v > n_ext; }
    bool operator==(const DirectedGraph&) const = default;
    bool operator<(const DirectedGraph& o) const {
        return std::tie(n_ext, n_int, edges) < std::tie(o.n_ext, o.n_int, o.edges);
    }
};

inline void validate_basic(const DirectedGraph& g) {
    std::set<std::pair<int, int>> seen;
    for (auto& [s, t] : g.edges) {
        if (s < 1 || s > g.vertices() || t < 1 || t > g.vertices())
            throw std::invalid_argument("edge endpoint out of range");
        if (s == t) throw std::invalid_argument("tadpole edge not allowed");
        if (!seen.emplace(s, t).second)
            throw std::invalid_argument("parallel edge not allowed");
    }
}

inline int out_degree(const DirectedGraph& g, int v) {
    int d = 0;
    for (auto& [s, t] : g.edges) d += (s == v);
    return d;
}

inline int valence(const DirectedGraph& g, int v) {
    int d = 0;
    for (auto& [s, t] : g.edges) d += (s == v) + (t == v);
    return d;
}

inline bool is_acyclic(const DirectedGraph& g) {
    std::vector<int> indeg(g.vertices() + 1, 0);
    for (auto& [s, t] : g.edges) ++indeg[t];
    std::vector<int> queue;
    for (int v = 1; v <= g.vertices(); ++v)
        if (indeg[v] == 0) queue.push_back(v);
    int removed = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++removed;
        for (auto& [s, t] : g.edges)
            if (s == v && --indeg[t] == 0) queue.push_back(t);
    }
    return removed == g.vertices();
}

inline bool no_external_sources(const DirectedGraph& g) {
    for (auto& [s, t] : g.edges)
        if (!g.is_internal(s)) return false;
    return true;
}

inline bool internal_out_degrees_odd(const DirectedGraph& g) {
    for (int v = g.n_ext + 1; v <= g.vertices(); ++v)
        if (out_degree(g, v) % 2 == 0) return false;
    return true;
}

inline bool internal_at_least_trivalent(const DirectedGraph& g) {
    for (int v = g.n_ext + 1; v <= g.vertices(); ++v)
        if (valence(g, v) < 3) return false;
    return true;
}

// connected after deleting the external vertices (undirected sense)
inline bool internally_connected(const DirectedGraph& g) {
    if (g.n_int == 0) return false;
    std::vector<std::vector<int>> adj(g.vertices() + 1);
    for (auto& [s, t] : g.edges)
        if (g.is_internal(s) && g.is_internal(t)) {
            adj[s].push_back(t);
            adj[t].push_back(s);
        }
    std::vector<bool> seen(g.vertices() + 1, false);
    std::vector<int> stack{g.n_ext + 1};
    seen[g.n_ext + 1] = true;
    int count = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++count;
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return count == g.n_int;
}

inline bool connected(const DirectedGraph& g) {
    if (g.vertices() == 0) return false;
    std::vector<std::vector<int>> adj(g.vertices() + 1);
    for (auto& [s, t] : g.edges) {
        adj[s].push_back(t);
        adj[t].push_back(s);
    }
    std::vector<bool> seen(g.vertices() + 1, false);
    std::vector<int> stack{1};
    seen[1] = true;
    int count = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++count;
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return count == g.vertices();
}

enum class Regime { OrientedOdd, GraphComplex };

inline void validate_regime(const DirectedGraph& g, Regime regime) {
    validate_basic(g);
    if (regime == Regime::OrientedOdd) {
        if (!is_acyclic(g)) throw std::invalid_argument("directed cycle not allowed");
        if (!no_external_sources(g))
            throw std::invalid_argument("edges starting at external vertices not allowed");
        if (!internal_out_degrees_odd(g))
            throw std::invalid_argument("internal vertex with even out-degree");
        if (!internal_at_least_trivalent(g))
            throw std::invalid_argument("internal vertex of valence < 3");
    } else {
        if (g.n_ext != 0) throw std::invalid_argument("graph complex has no externals");
        if (!is_acyclic(g)) throw std::invalid_argument("directed cycle not allowed");
        if (!connected(g)) throw std::invalid_argument("graph must be connected");
    }
}

struct OrientedClass {
    DirectedGraph graph;  // canonical: minimal encoding, edges sorted
    int sign = 1;         // parity relating the input edge order to the canonical one
    bool zero = false;    // an automorphism induces an odd edge permutation
};

namespace detail {
inline int sort_parity(std::vector<std::pair<int, int>>& edges) {
    int sign = 1;
    for (size_t i = 1; i < edges.size(); ++i)
        for (size_t j = i; j > 0 && edges[j] < edges[j - 1]; --j) {
            std::swap(edges[j], edges[j - 1]);
            sign = -sign;
        }
    return sign;
}
}  // namespace detail

// Minimal relabeling of the internal vertices; the sign is the parity of
// the edge sort. If two relabelings reach the minimum with opposite signs
// the class is zero.
inline OrientedClass canonical_form(const DirectedGraph& g) {
    OrientedClass best;
    bool first = true;
    std::vector<int> perm(g.n_int);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        DirectedGraph h = g;
        for (auto& [s, t] : h.edges) {
            if (g.is_internal(s)) s = g.n_ext + 1 + perm[s - g.n_ext - 1];
            if (g.is_internal(t)) t = g.n_ext + 1 + perm[t - g.n_ext - 1];
        }
        int sign = detail::sort_parity(h.edges);
        if (first || h.edges < best.graph.edges) {
            best.graph = h;
            best.sign = sign;
            best.zero = false;
            first = false;
        } else if (h.edges == best.graph.edges && sign != best.sign) {
            best.zero = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline std::string graph_id(const DirectedGraph& g) {
    std::string s = "e" + std::to_string(g.n_ext) + "i" + std::to_string(g.n_int) + ":";
    for (auto& [a, b] : g.edges)
        s += std::to_string(a) + ">" + std::to_string(b) + ";";
    return s;
}

// All canonical internally connected oriented-odd classes with the given
// numbers of external and internal vertices; zero classes are dropped.
// Internal-internal edges are generated in topological position i < j,
// which reaches every acyclic graph up to relabeling.
inline std::vector<OrientedClass> enumerate_icg(int n_ext, int n_int,
                                                int max_ext = 5, int max_int = 4) {
    if (n_ext > max_ext || n_int > max_int)
        throw std::invalid_argument("enumerate_icg: bounds exceeded");
    std::vector<OrientedClass> out;
    if (n_int == 0) return out;
    std::vector<std::pair<int, int>> int_pairs;
    for (int i = 0; i < n_int; ++i)
        for (int j = i + 1; j < n_int; ++j) int_pairs.emplace_back(i, j);
    // shard over the internal edge subsets; each shard dedupes locally and
    // the shards are merged in order, so the result is schedule-independent
    const int num_masks = 1 << int_pairs.size();
    std::vector<std::vector<OrientedClass>> shard_out(num_masks);
    util::parallel_shards(num_masks, [&](int mask) {
        DirectedGraph base;
        base.n_ext = n_ext;
        base.n_int = n_int;
        for (size_t p = 0; p < int_pairs.size(); ++p)
            if (mask & (1 << p))
                base.edges.emplace_back(n_ext + 1 + int_pairs[p].first,
                                        n_ext + 1 + int_pairs[p].second);
        if (!internally_connected(base)) return;
        std::set<std::string> local_seen;
        // out-edges to externals: one subset per internal vertex
        std::vector<unsigned> ext_mask(n_int, 0);
        std::function<void(int)> rec = [&](int v) {
            if (v == n_int) {
                DirectedGraph g = base;
                for (int i = 0; i < n_int; ++i)
                    for (int x = 0; x < n_ext; ++x)
                        if (ext_mask[i] & (1u << x))
                            g.edges.emplace_back(n_ext + 1 + i, x + 1);
                if (!internal_out_degrees_odd(g)) return;
                if (!internal_at_least_trivalent(g)) return;
                auto cls = canonical_form(g);
                if (cls.zero) return;
                if (local_seen.insert(graph_id(cls.graph)).second) {
                    cls.sign = 1;
                    shard_out[mask].push_back(std::move(cls));
                }
                return;
            }
            for (unsigned m = 0; m < (1u << n_ext); ++m) {
                ext_mask[v] = m;
                rec(v + 1);
            }
        };
        rec(0);
    });
    std::set<std::string> seen;
    for (auto& shard : shard_out)
        for (auto& cls : shard)
            if (seen.insert(graph_id(cls.graph)).second) out.push_back(std::move(cls));
    std::sort(out.begin(), out.end(),
              [](const OrientedClass& a, const OrientedClass& b) {
                  return graph_id(a.graph) < graph_id(b.graph);
              });
    return out;
}

// One signed contraction term, or nullopt when the term vanishes
// (parallel edges or directed cycles after contraction, or an
// inadmissible result).
namespace detail {

inline std::optional<std::pair<DirectedGraph, int>> contract_edge(
    const DirectedGraph& g, size_t edge_index) {
    auto [u, v] = g.edges[edge_index];
    int sign = (edge_index % 2 == 0) ? 1 : -1;  // move the edge to the front
    DirectedGraph h;
    h.n_ext = g.n_ext;
    if (g.is_internal(u) && g.is_internal(v)) {
        // merge the endpoints into the smaller label, drop the contracted
        // edge, close the labeling gap
        h.n_int = g.n_int - 1;
        int lo = std::min(u, v), hi = std::max(u, v);
        auto rename = [&](int w) {
            if (w == hi) return lo;
            if (w > hi) return w - 1;
            return w;
        };
        std::set<std::pair<int, int>> dedup;
        for (size_t i = 0; i < g.edges.size(); ++i) {
            if (i == edge_index) continue;
            int s = rename(g.edges[i].first), t = rename(g.edges[i].second);
            if (s == t) return std::nullopt;  // tadpole
            if (!dedup.emplace(s, t).second) return std::nullopt;  // parallel
            h.edges.emplace_back(s, t);
        }
        if (!is_acyclic(h)) return std::nullopt;
        return std::pair{h, sign};
    }
    // internal -> external contraction: merge the internal vertex into the
    // external one
    int internal = u, external = v;
    h.n_int = g.n_int - 1;
    auto rename = [&](int w) {
        if (w == internal) return external;
        if (w > internal) return w - 1;
        return w;
    };
    std::set<std::pair<int, int>> dedup;
    for (size_t i = 0; i < g.edges.size(); ++i) {
        if (i == edge_index) continue;
        int s = rename(g.edges[i].first), t = rename(g.edges[i].second);
        if (s == t) return std::nullopt;
        if (!dedup.emplace(s, t).second) return std::nullopt;
        h.edges.emplace_back(s, t);
    }
    if (!is_acyclic(h)) return std::nullopt;
    return std::pair{h, sign};
}

}  // namespace detail

// Edge-contracting differential on internally connected oriented-odd
// graphs. Internal-internal edges always contract; an edge into an
// external vertex contracts only when its internal endpoint has out-degree
// one and internal connectivity survives (the connectivity-breaking part
// belongs to the L-infinity structure, not to this differential).
inline std::vector<std::pair<OrientedClass, int>> icg_differential(const DirectedGraph& g) {
    validate_regime(g, Regime::OrientedOdd);
    std::vector<std::pair<OrientedClass, int>> out;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        auto [s, t] = g.edges[e];
        if (!g.is_internal(s)) continue;
        bool internal_edge = g.is_internal(t);
        if (!internal_edge && out_degree(g, s) != 1) continue;
        auto contracted = detail::contract_edge(g, e);
        if (!contracted) continue;
        auto& [h, sign] = *contracted;
        if (!internally_connected(h)) {
            if (internal_edge)
                throw std::logic_error("internal contraction broke connectivity");
            continue;  // L-infinity part, not the differential
        }
        if (!internal_out_degrees_odd(h))
            throw std::logic_error("contraction broke the odd out-degree constraint");
        auto cls = canonical_form(h);
        if (cls.zero) continue;
        out.emplace_back(cls, sign * cls.sign);
    }
    return out;
}

// Chain complex of ICG(n_ext) graded by the number of internal vertices,
// 0..max_int; the differential contracts edges.
inline exact::ChainComplex icg_complex(int n_ext, int max_int, int max_ext = 5) {
    exact::ChainComplex cc;
    cc.basis.resize(max_int + 1);
    cc.boundary.resize(max_int + 1);
    std::vector<std::vector<OrientedClass>> classes(max_int + 1);
    std::vector<exact::BasisRegistry<std::string>> reg(max_int + 1);
    for (int m = 1; m <= max_int; ++m) {
        classes[m] = enumerate_icg(n_ext, m, max_ext, max_int);
        for (auto& c : classes[m]) reg[m].add(graph_id(c.graph));
        reg[m].freeze();
        cc.basis[m] = reg[m].keys();
    }
    cc.boundary[0] = exact::RationalMatrix(0, 0);
    for (int m = 1; m <= max_int; ++m) {
        cc.boundary[m] =
            exact::RationalMatrix(m >= 1 ? reg[m - 1].size() : 0, reg[m].size());
        for (auto& c : classes[m]) {
            int col = reg[m].index(graph_id(c.graph));
            for (auto& [cls, sign] : icg_differential(c.graph))
                cc.boundary[m].add(reg[m - 1].index(graph_id(cls.graph)), col,
                                   Rational(sign));
        }
    }
    return cc;
}

// Homology ranks by internal-vertex count; index m is certified for
// m <= max_int - 1.
inline std::vector<int> icg_homology(int n_ext, int max_int) {
    auto cc = icg_complex(n_ext, max_int);
    auto h = cc.homology_ranks();
    h.resize(max_int);  // degrees 0 .. max_int-1 are certified
    return h;
}

// Vertex-splitting differential on the directed graph complex (no external
// vertices, connected, acyclic). Splits every vertex into two halves joined
// by a new edge, both orientations arising from the two ordered partitions;
// halves that would be univalent are dropped.
inline std::vector<std::pair<OrientedClass, int>> gc_splitting_differential(
    const DirectedGraph& g) {
    validate_regime(g, Regime::GraphComplex);
    std::vector<std::pair<OrientedClass, int>> out;
    const int n = g.n_int;
    for (int v = 1; v <= n; ++v) {
        std::vector<size_t> incident;
        for (size_t e = 0; e < g.edges.size(); ++e)
            if (g.edges[e].first == v || g.edges[e].second == v) incident.push_back(e);
        const size_t k = incident.size();
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            unsigned kept = mask;  // bit set -> half-edge stays at v, else moves to v2
            size_t stay = __builtin_popcount(kept);
            if (stay == 0 || stay == k) continue;  // univalent half
            DirectedGraph h = g;
            h.n_int = n + 1;
            int v2 = n + 1;
            for (size_t p = 0; p < k; ++p) {
                if (kept & (1u << p)) continue;
                auto& edge = h.edges[incident[p]];
                if (edge.first == v) edge.first = v2;
                if (edge.second == v) edge.second = v2;
            }
            // new edge v -> v2 goes to the front of the edge order
            h.edges.insert(h.edges.begin(), {v, v2});
            if (!is_acyclic(h)) continue;
            bool parallel = false;
            {
                std::set<std::pair<int, int>> dedup;
                for (auto& e : h.edges)
                    if (!dedup.emplace(e).second) parallel = true;
            }
            if (parallel) continue;
            auto cls = canonical_form(h);
            if (cls.zero) continue;
            out.emplace_back(cls, cls.sign);
        }
    }
    return out;
}

// All connected acyclic classes with the given vertex and edge counts.
inline std::vector<OrientedClass> enumerate_gc(int n_vert, int n_edges) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= n_vert; ++i)
        for (int j = i + 1; j <= n_vert; ++j) pairs.emplace_back(i, j);
    std::vector<OrientedClass> out;
    std::set<std::string> seen;
    std::vector<int> choose(pairs.size(), 0);
    std::function<void(size_t, int, DirectedGraph&)> rec = [&](size_t p, int left,
                                                               DirectedGraph& g) {
        if (left == 0) {
            if (!connected(g)) return;
            auto cls = canonical_form(g);
            if (cls.zero) return;
            if (seen.insert(graph_id(cls.graph)).second) {
                cls.sign = 1;
                out.push_back(cls);
            }
            return;
        }
        if (p == pairs.size() || (int)(pairs.size() - p) < left) return;
        rec(p + 1, left, g);
        g.edges.emplace_back(pairs[p].first, pairs[p].second);
        rec(p + 1, left - 1, g);
        g.edges.pop_back();
    };
    DirectedGraph g;
    g.n_ext = 0;
    g.n_int = n_vert;
    rec(0, n_edges, g);
    std::sort(out.begin(), out.end(), [](const OrientedClass& a, const OrientedClass& b) {
        return graph_id(a.graph) < graph_id(b.graph);
    });
    return out;
}

struct McLeadingReport {
    int domain_dim = 0;
    int codomain_dim = 0;
    std::vector<exact::SparseVec> kernel;  // coordinates in the domain basis
    std::vector<std::string> domain_ids;
    bool found_shape = false;    // a kernel element supported on the three
                                 // two-loop diamond orientations
    Rational c_sources, c_sinks, c_mixed;  // its coefficients
    std::string id_sources, id_sinks, id_mixed;
};

// Kernel of the splitting differential on connected acyclic 4-vertex,
// 5-edge graphs (loop order two, odd Euler characteristic); the lowest
// Shoikhet term lives here.
inline McLeadingReport solve_mc_leading() {
    McLeadingReport rep;
    auto domain = enumerate_gc(4, 5);
    auto codomain = enumerate_gc(5, 6);
    exact::BasisRegistry<std::string> dreg, creg;
    for (auto& c : domain) dreg.add(graph_id(c.graph));
    for (auto& c : codomain) creg.add(graph_id(c.graph));
    dreg.freeze();
    creg.freeze();
    rep.domain_dim = dreg.size();
    rep.codomain_dim = creg.size();
    rep.domain_ids = dreg.keys();
    exact::RationalMatrix d(creg.size(), dreg.size());
    for (auto& c : domain) {
        int col = dreg.index(graph_id(c.graph));
        for (auto& [cls, sign] : gc_splitting_differential(c.graph))
            d.add(creg.index(graph_id(cls.graph)), col, Rational(sign));
    }
    rep.kernel = exact::kernel_basis(d);

    // the three orientations of the diamond with the shared edge 1 -> 2
    DirectedGraph sources{0, 4, {{3, 1}, {3, 2}, {4, 1}, {4, 2}, {1, 2}}};
    DirectedGraph sinks{0, 4, {{1, 3}, {2, 3}, {1, 4}, {2, 4}, {1, 2}}};
    DirectedGraph mixed{0, 4, {{4, 1}, {4, 2}, {1, 3}, {2, 3}, {1, 2}}};
    auto cs = canonical_form(sources), ck = canonical_form(sinks), cm = canonical_form(mixed);
    if (cs.zero || ck.zero || cm.zero) return rep;
    rep.id_sources = graph_id(cs.graph);
    rep.id_sinks = graph_id(ck.graph);
    rep.id_mixed = graph_id(cm.graph);
    std::set<int> support{dreg.index(rep.id_sources), dreg.index(rep.id_sinks),
                          dreg.index(rep.id_mixed)};

    // intersect the kernel with the coordinate subspace of that support
    exact::RationalMatrix restricted((int)(dreg.size() - support.size()),
                                     (int)rep.kernel.size());
    std::vector<int> row_of(dreg.size(), -1);
    int r = 0;
    for (int i = 0; i < dreg.size(); ++i)
        if (!support.count(i)) row_of[i] = r++;
    for (int j = 0; j < (int)rep.kernel.size(); ++j)
        for (auto& [i, c] : rep.kernel[j])
            if (row_of[i] >= 0) restricted.add(row_of[i], j, c);
    for (auto& alpha : exact::kernel_basis(restricted)) {
        // candidate = kernel * alpha
        std::map<int, Rational> cand;
        for (auto& [j, a] : alpha)
            for (auto& [i, c] : rep.kernel[j]) {
                cand[i] += c * a;
            }
        std::erase_if(cand, [](auto& kv) { return is_zero(kv.second); });
        if (cand.empty()) continue;
        Rational c1 = cand.count(dreg.index(rep.id_sources))
                          ? cand[dreg.index(rep.id_sources)]
                          : Rational(0);
        Rational c2 = cand.count(dreg.index(rep.id_sinks)) ? cand[dreg.index(rep.id_sinks)]
                                                           : Rational(0);
        Rational c3 = cand.count(dreg.index(rep.id_mixed)) ? cand[dreg.index(rep.id_mixed)]
                                                           : Rational(0);
        if (is_zero(c1)) continue;
        rep.found_shape = true;
        rep.c_sources = Rational(1);
        rep.c_sinks = c2 / c1;
        rep.c_mixed = c3 / c1;
        break;
    }
    return rep;
}

// JSON-facing helpers live with the CLI; the schema is
// {"ext": n, "int": m, "edges": [[s, t], ...]}.

}  // namespace mosaic::graphs
