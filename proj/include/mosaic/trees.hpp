#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mosaic/chain_complex.hpp"
#include "mosaic/parallel.hpp"
#include "mosaic/sparse_matrix.hpp"

namespace mosaic::trees {

// Rooted planar tree; leaves carry labels 1..n, internal vertices have
// >= 2 ordered children.
struct PlanarTree {
    int label = 0;  // > 0 iff leaf
    std::vector<PlanarTree> children;

    bool is_leaf() const { return children.empty(); }
    bool operator==(const PlanarTree&) const = default;
};

inline PlanarTree leaf(int label) { return PlanarTree{label, {}}; }

inline PlanarTree node(std::vector<PlanarTree> children) {
    if (children.size() < 2)
        throw std::invalid_argument("internal vertices need >= 2 children");
    return PlanarTree{0, std::move(children)};
}

inline int leaf_count(const PlanarTree& t) {
    if (t.is_leaf()) return 1;
    int n = 0;
    for (auto& c : t.children) n += leaf_count(c);
    return n;
}

inline int internal_count(const PlanarTree& t) {
    if (t.is_leaf()) return 0;
    int n = 1;
    for (auto& c : t.children) n += internal_count(c);
    return n;
}

// Total homological degree of the internal vertices in the subtree:
// sum of (arity - 2) = leaves - internals - 1.
inline int internal_degree(const PlanarTree& t) {
    return leaf_count(t) - internal_count(t) - 1;
}

// Token stream: -1 opens an internal vertex, -2 closes it, leaves are labels.
inline void encode_tokens(const PlanarTree& t, std::vector<int>& out) {
    if (t.is_leaf()) {
        out.push_back(t.label);
        return;
    }
    out.push_back(-1);
    for (auto& c : t.children) encode_tokens(c, out);
    out.push_back(-2);
}

inline std::vector<int> encoding(const PlanarTree& t) {
    std::vector<int> out;
    encode_tokens(t, out);
    return out;
}

inline std::string encoding_string(const PlanarTree& t) {
    if (t.is_leaf()) return std::to_string(t.label);
    std::string s = "(";
    for (size_t i = 0; i < t.children.size(); ++i) {
        if (i) s += ",";
        s += encoding_string(t.children[i]);
    }
    return s + ")";
}

// Vertex addresses are child-index paths from the root.
using Address = std::vector<int>;

inline const PlanarTree& subtree_at(const PlanarTree& t, const Address& a) {
    const PlanarTree* p = &t;
    for (int i : a) p = &p->children.at(i);
    return *p;
}

inline PlanarTree& subtree_at(PlanarTree& t, const Address& a) {
    PlanarTree* p = &t;
    for (int i : a) p = &p->children.at(i);
    return *p;
}

inline void collect_internal_addresses(const PlanarTree& t, Address& prefix,
                                       std::vector<Address>& out) {
    if (t.is_leaf()) return;
    out.push_back(prefix);
    for (size_t i = 0; i < t.children.size(); ++i) {
        prefix.push_back((int)i);
        collect_internal_addresses(t.children[i], prefix, out);
        prefix.pop_back();
    }
}

// Internal vertices in planar depth-first (preorder) order.
inline std::vector<Address> internal_addresses(const PlanarTree& t) {
    std::vector<Address> out;
    Address prefix;
    collect_internal_addresses(t, prefix, out);
    return out;
}

inline void reverse_all(PlanarTree& t) {
    if (t.is_leaf()) return;
    std::reverse(t.children.begin(), t.children.end());
    for (auto& c : t.children) reverse_all(c);
}

// Reverses the child order of every vertex in the maximal subtree rooted
// at the addressed vertex. Reflecting at a leaf is the identity.
inline PlanarTree reflect_at_vertex(const PlanarTree& t, const Address& a) {
    PlanarTree out = t;
    reverse_all(subtree_at(out, a));
    return out;
}

// Orientation sign of flipping only the local child order at a vertex with
// children c_1..c_m. The decoration sign is the signed flip of the vertex
// label conjugated through the operadic suspension,
// (-1)^(m-1) * sgn(reversal of m letters) = (-1)^((m-1)(m-2)/2);
// on top of that the depth-first wedge of the child subtrees is
// block-reversed (Koszul signs of the subtree degrees).
inline int local_flip_sign(const std::vector<PlanarTree>& children) {
    int m = (int)children.size();
    int sign = (((m - 1) * (m - 2) / 2) % 2 == 0) ? 1 : -1;
    std::vector<int> deg(m);
    for (int i = 0; i < m; ++i) deg[i] = internal_degree(children[i]);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (deg[a] % 2 && deg[b] % 2) sign = -sign;
    return sign;
}

// Canonical representative of the reflection class: bottom-up, each vertex
// keeps the lexicographically smaller of the two child orders. Returns the
// canonical tree and the orientation sign relating t to it.
inline std::pair<PlanarTree, int> canonicalize(const PlanarTree& t) {
    if (t.is_leaf()) return {t, 1};
    PlanarTree out;
    int sign = 1;
    for (auto& c : t.children) {
        auto [cc, cs] = canonicalize(c);
        out.children.push_back(std::move(cc));
        sign *= cs;
    }
    std::vector<PlanarTree> reversed(out.children.rbegin(), out.children.rend());
    std::vector<int> enc_fwd, enc_rev;
    for (auto& c : out.children) encode_tokens(c, enc_fwd);
    for (auto& c : reversed) encode_tokens(c, enc_rev);
    if (enc_rev < enc_fwd) {
        sign *= local_flip_sign(out.children);
        out.children = std::move(reversed);
    }
    return {out, sign};
}

inline std::string class_id(const PlanarTree& t) {
    return encoding_string(canonicalize(t).first);
}

// All planar rooted trees with leaves labeled by the given sequence,
// read left to right.
inline std::vector<PlanarTree> shapes_on_sequence(const std::vector<int>& seq) {
    if (seq.size() == 1) return {leaf(seq[0])};
    std::vector<PlanarTree> out;
    // compositions of the sequence into b >= 2 consecutive blocks
    int n = (int)seq.size();
    // iterate over subsets of cut positions 1..n-1, at least one cut
    for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
        std::vector<std::vector<int>> blocks;
        std::vector<int> cur{seq[0]};
        for (int i = 1; i < n; ++i) {
            if (mask & (1u << (i - 1))) {
                blocks.push_back(cur);
                cur.clear();
            }
            cur.push_back(seq[i]);
        }
        blocks.push_back(cur);
        // children per block: all shapes recursively
        std::vector<std::vector<PlanarTree>> options;
        for (auto& b : blocks) options.push_back(shapes_on_sequence(b));
        std::vector<size_t> idx(options.size(), 0);
        while (true) {
            std::vector<PlanarTree> children;
            for (size_t i = 0; i < options.size(); ++i)
                children.push_back(options[i][idx[i]]);
            out.push_back(node(std::move(children)));
            size_t i = 0;
            while (i < idx.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    }
    return out;
}

// All of T_n: |result| = n! * a_n with a_n the little Schroeder numbers.
inline std::vector<PlanarTree> enumerate_planar_trees(int n) {
    if (n < 1) throw std::invalid_argument("enumerate_planar_trees: n >= 1");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<PlanarTree> out;
    do {
        auto shapes = shapes_on_sequence(perm);
        out.insert(out.end(), shapes.begin(), shapes.end());
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// One face of the cellular boundary: expand the vertex at `where` by
// grouping the consecutive child block [i, i+j) under a new vertex.
struct SignedTree {
    PlanarTree tree;
    int sign;
};

// Signed sum of all single vertex expansions (codimension-one faces).
// Orientation: depth-first wedge of vertex generators of degree (arity-2);
// expanding arity m at block (i, j), 1-based i, contributes the sign
// (-1)^((i-1) + j(m-i-j+1)), Koszul-corrected for the vertices preceding
// the expansion site and for moving the new vertex past earlier siblings.
inline std::vector<SignedTree> associahedron_boundary(const PlanarTree& t) {
    std::vector<SignedTree> out;
    struct Walk {
        const PlanarTree& root;
        std::vector<SignedTree>& out;
        void visit(const PlanarTree& v, const Address& addr, int deg_before) {
            if (v.is_leaf()) return;
            int m = (int)v.children.size();
            for (int i = 1; i + 1 <= m; ++i) {
                for (int j = 2; j <= m - 1 && i + j - 1 <= m; ++j) {
                    int exponent = (i - 1) + j * (m - i - j + 1);
                    int sign = (exponent % 2 == 0) ? 1 : -1;
                    if (deg_before % 2 == 1) sign = -sign;
                    // move the new inner vertex (degree j-2) past the
                    // internal content of the first i-1 children
                    if (j % 2 == 1) {
                        int before = 0;
                        for (int a = 0; a < i - 1; ++a)
                            before += internal_degree(v.children[a]);
                        if (before % 2 == 1) sign = -sign;
                    }
                    PlanarTree expanded = root;
                    PlanarTree& site = subtree_at(expanded, addr);
                    std::vector<PlanarTree> grouped(site.children.begin() + (i - 1),
                                                    site.children.begin() + (i - 1 + j));
                    site.children.erase(site.children.begin() + (i - 1),
                                        site.children.begin() + (i - 1 + j));
                    site.children.insert(site.children.begin() + (i - 1),
                                         node(std::move(grouped)));
                    out.push_back({std::move(expanded), sign});
                }
            }
            int deg = deg_before + (m - 2);
            Address child_addr = addr;
            for (int c = 0; c < m; ++c) {
                child_addr.push_back(c);
                visit(v.children[c], child_addr, deg);
                child_addr.pop_back();
                deg += internal_degree(v.children[c]);
            }
        }
    };
    Walk w{t, out};
    w.visit(t, {}, 0);
    return out;
}

struct MosaicCell {
    PlanarTree representative;  // canonical form
    std::string id;
    int internal_vertices;
};

// Reflection classes of T_n, grouped by number of internal vertices.
// Canonicalization is sharded over the tree list; shards merge in order,
// so the result matches the serial run.
inline std::vector<MosaicCell> mosaic_classes(int n) {
    if (n < 2) throw std::invalid_argument("mosaic_classes: n >= 2");
    auto all = enumerate_planar_trees(n);
    int shards = std::min<int>(std::max(1, util::jobs() * 4), (int)all.size());
    std::vector<std::vector<MosaicCell>> shard_cells(shards);
    util::parallel_shards(shards, [&](int s) {
        size_t lo = all.size() * s / shards, hi = all.size() * (s + 1) / shards;
        for (size_t i = lo; i < hi; ++i) {
            auto [canon, sign] = canonicalize(all[i]);
            (void)sign;
            shard_cells[s].push_back(
                {canon, encoding_string(canon), internal_count(canon)});
        }
    });
    std::vector<MosaicCell> out;
    std::map<std::string, bool> seen;
    for (auto& shard : shard_cells)
        for (auto& cell : shard)
            if (seen.emplace(cell.id, true).second) out.push_back(std::move(cell));
    return out;
}

// Cellular chain complex of the associahedron cell structure on all of
// T_n (no quotient); degree k holds the trees with n-1-k internal
// vertices. Used as a cross-check that the boundary signs are coherent.
inline exact::ChainComplex planar_chain_complex(int n) {
    exact::ChainComplex cc;
    int top = n - 2;
    std::vector<exact::BasisRegistry<std::string>> reg(top + 1);
    auto all = enumerate_planar_trees(n);
    for (auto& t : all) {
        int k = n - 1 - internal_count(t);
        if (k >= 0 && k <= top) reg[k].add(encoding_string(t));
    }
    for (auto& r : reg) r.freeze();
    cc.basis.resize(top + 1);
    for (int k = 0; k <= top; ++k) cc.basis[k] = reg[k].keys();
    cc.boundary.resize(top + 1);
    cc.boundary[0] = exact::RationalMatrix(0, reg[0].size());
    for (int k = 1; k <= top; ++k)
        cc.boundary[k] = exact::RationalMatrix(reg[k - 1].size(), reg[k].size());
    for (auto& t : all) {
        int k = n - 1 - internal_count(t);
        if (k < 1) continue;
        int col = reg[k].index(encoding_string(t));
        for (auto& [face, sign] : associahedron_boundary(t))
            cc.boundary[k].add(reg[k - 1].index(encoding_string(face)), col,
                               Rational(sign));
    }
    return cc;
}

// Cellular chain complex of Mbar_{0,n+1}(R): basis are the reflection
// classes, boundary induced from the associahedron boundary through the
// signed canonicalization.
inline exact::ChainComplex mosaic_chain_complex(int n) {
    if (n < 2) throw std::invalid_argument("mosaic_chain_complex: n >= 2");
    exact::ChainComplex cc;
    int top = n - 2;
    auto cells = mosaic_classes(n);
    std::vector<exact::BasisRegistry<std::string>> reg(top + 1);
    for (auto& c : cells) {
        int k = n - 1 - c.internal_vertices;
        reg[k].add(c.id);
    }
    for (auto& r : reg) r.freeze();
    cc.basis.resize(top + 1);
    for (int k = 0; k <= top; ++k) cc.basis[k] = reg[k].keys();
    cc.boundary.resize(top + 1);
    cc.boundary[0] = exact::RationalMatrix(0, reg[0].size());
    for (int k = 1; k <= top; ++k)
        cc.boundary[k] = exact::RationalMatrix(reg[k - 1].size(), reg[k].size());
    for (auto& c : cells) {
        int k = n - 1 - c.internal_vertices;
        if (k < 1) continue;
        int col = reg[k].index(c.id);
        for (auto& [face, sign] : associahedron_boundary(c.representative)) {
            auto [canon, csign] = canonicalize(face);
            cc.boundary[k].add(reg[k - 1].index(encoding_string(canon)), col,
                               Rational(sign * csign));
        }
    }
    return cc;
}

}  // namespace mosaic::trees
