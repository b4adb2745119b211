#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "mosaic/chain_complex.hpp"
#include "mosaic/sparse_matrix.hpp"

namespace mosaic::operads {

// Cobar complex of the signed-flip coinvariant cooperad of As.
//
// Basis elements are trees whose vertices carry coinvariant classes of
// permutation words {w ~ (-1)^(m-1) reverse(w)}; concretely a class is a
// planar tree with children in word order, canonicalized bottom-up by
// choosing the lexicographically smaller of the two word directions per
// vertex. The differential is the sum of single-vertex two-block
// deconcatenations of the vertex words.
namespace cobar {

struct WTree {
    int leaf = 0;  // > 0 iff leaf
    std::vector<WTree> children;
    bool is_leaf() const { return children.empty(); }
    bool operator==(const WTree&) const = default;
};

inline int wt_leaves(const WTree& t) {
    if (t.is_leaf()) return 1;
    int n = 0;
    for (auto& c : t.children) n += wt_leaves(c);
    return n;
}

inline int wt_vertices(const WTree& t) {
    if (t.is_leaf()) return 0;
    int n = 1;
    for (auto& c : t.children) n += wt_vertices(c);
    return n;
}

// homological degree contributed by the subtree: sum of (arity - 2)
inline int wt_degree(const WTree& t) { return wt_leaves(t) - wt_vertices(t) - 1; }

inline void wt_tokens(const WTree& t, std::vector<int>& out) {
    if (t.is_leaf()) {
        out.push_back(t.leaf);
        return;
    }
    out.push_back(-1);
    for (auto& c : t.children) wt_tokens(c, out);
    out.push_back(-2);
}

inline std::vector<int> wt_encoding(const WTree& t) {
    std::vector<int> v;
    wt_tokens(t, v);
    return v;
}

inline std::string wt_string(const WTree& t) {
    if (t.is_leaf()) return std::to_string(t.leaf);
    std::string s = "<";
    for (size_t i = 0; i < t.children.size(); ++i) {
        if (i) s += ",";
        s += wt_string(t.children[i]);
    }
    return s + ">";
}

// Sign of reversing the word at one vertex: the coinvariant sign
// (-1)^(m-1) conjugated through the operadic suspension gives
// (-1)^((m-1)(m-2)/2), times the Koszul sign of block-reversing the
// depth-first wedge of the child subtrees.
inline int word_flip_sign(const std::vector<WTree>& children) {
    int m = (int)children.size();
    int sign = (((m - 1) * (m - 2) / 2) % 2 == 0) ? 1 : -1;
    for (size_t a = 0; a < children.size(); ++a)
        for (size_t b = a + 1; b < children.size(); ++b)
            if (wt_degree(children[a]) % 2 && wt_degree(children[b]) % 2) sign = -sign;
    return sign;
}

inline std::pair<WTree, int> wt_canonicalize(const WTree& t) {
    if (t.is_leaf()) return {t, 1};
    WTree out;
    int sign = 1;
    for (auto& c : t.children) {
        auto [cc, cs] = wt_canonicalize(c);
        out.children.push_back(std::move(cc));
        sign *= cs;
    }
    std::vector<int> fwd, rev;
    for (auto& c : out.children) wt_tokens(c, fwd);
    for (auto it = out.children.rbegin(); it != out.children.rend(); ++it)
        wt_tokens(*it, rev);
    if (rev < fwd) {
        sign *= word_flip_sign(out.children);
        std::reverse(out.children.begin(), out.children.end());
    }
    return {out, sign};
}

// Canonical decorated trees on a label set, one per coinvariant class,
// generated directly from set partitions and word classes.
inline std::vector<WTree> enumerate_classes(std::vector<int> labels) {
    if (labels.size() == 1) return {WTree{labels[0], {}}};
    std::sort(labels.begin(), labels.end());
    int n = (int)labels.size();
    std::vector<WTree> out;
    for (int m = 2; m <= n; ++m) {
        // unordered partitions into m blocks via restricted-growth strings
        std::vector<int> rgs(n, 0);
        std::function<void(int, int)> rec = [&](int pos, int maxb) {
            if (pos == n) {
                if (maxb + 1 != m) return;
                std::vector<std::vector<int>> blocks(m);
                for (int i = 0; i < n; ++i) blocks[rgs[i]].push_back(labels[i]);
                for (auto& b : blocks)
                    if (b.empty()) return;
                std::vector<std::vector<WTree>> opts;
                for (auto& b : blocks) opts.push_back(enumerate_classes(b));
                std::vector<size_t> idx(m, 0);
                while (true) {
                    std::vector<WTree> parts;
                    for (int i = 0; i < m; ++i) parts.push_back(opts[i][idx[i]]);
                    // all arrangements of the blocks, keeping one word per
                    // reversal class (first encoding < last encoding)
                    std::vector<int> order(m);
                    std::iota(order.begin(), order.end(), 0);
                    do {
                        if (wt_encoding(parts[order.front()]) >
                            wt_encoding(parts[order.back()]))
                            continue;
                        WTree t;
                        for (int i : order) t.children.push_back(parts[i]);
                        out.push_back(std::move(t));
                    } while (std::next_permutation(order.begin(), order.end()));
                    size_t i = 0;
                    while (i < idx.size() && ++idx[i] == opts[i].size()) idx[i++] = 0;
                    if (i == idx.size()) break;
                }
                return;
            }
            for (int b = 0; b <= std::min(maxb + 1, m - 1); ++b) {
                rgs[pos] = b;
                rec(pos + 1, std::max(maxb, b));
            }
        };
        rgs[0] = 0;
        rec(1, 0);
    }
    return out;
}

// Two-block deconcatenations of every vertex word, with cobar signs.
inline std::vector<std::pair<WTree, int>> deconcatenation_boundary(const WTree& t) {
    std::vector<std::pair<WTree, int>> out;
    std::function<void(const WTree&, std::vector<int>&, int)> visit =
        [&](const WTree& v, std::vector<int>& addr, int deg_before) {
            if (v.is_leaf()) return;
            int m = (int)v.children.size();
            for (int i = 1; i <= m - 1; ++i)
                for (int j = 2; j <= m - 1 && i + j - 1 <= m; ++j) {
                    int exponent = (i - 1) + j * (m - i - j + 1);
                    int sign = (exponent % 2 == 0) ? 1 : -1;
                    if (deg_before % 2) sign = -sign;
                    if (j % 2 == 1) {
                        int before = 0;
                        for (int a = 0; a < i - 1; ++a) before += wt_degree(v.children[a]);
                        if (before % 2) sign = -sign;
                    }
                    // rebuild the tree with the block grouped
                    std::function<WTree(const WTree&, size_t)> rebuild =
                        [&](const WTree& u, size_t depth) -> WTree {
                        if (depth == addr.size()) {
                            WTree r;
                            for (int a = 0; a < i - 1; ++a) r.children.push_back(u.children[a]);
                            WTree inner;
                            for (int a = i - 1; a < i - 1 + j; ++a)
                                inner.children.push_back(u.children[a]);
                            r.children.push_back(std::move(inner));
                            for (int a = i - 1 + j; a < m; ++a)
                                r.children.push_back(u.children[a]);
                            return r;
                        }
                        WTree r = u;
                        r.children[addr[depth]] = rebuild(u.children[addr[depth]], depth + 1);
                        return r;
                    };
                    out.emplace_back(rebuild(t, 0), sign);
                }
            int deg = deg_before + (m - 2);
            for (int c = 0; c < m; ++c) {
                addr.push_back(c);
                visit(v.children[c], addr, deg);
                addr.pop_back();
                deg += wt_degree(v.children[c]);
            }
        };
    std::vector<int> addr;
    visit(t, addr, 0);
    return out;
}

}  // namespace cobar

// The cobar construction of the signed-flip coinvariant cooperad of As(n):
// degree k holds the classes with n-1-k vertices.
inline exact::ChainComplex cobar_complex(int n) {
    if (n < 2) throw std::invalid_argument("cobar_complex: n >= 2");
    using namespace cobar;
    exact::ChainComplex cc;
    int top = n - 2;
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 1);
    auto classes = enumerate_classes(labels);
    std::vector<exact::BasisRegistry<std::string>> reg(top + 1);
    std::vector<std::vector<WTree>> by_degree(top + 1);
    for (auto& t : classes) {
        int k = n - 1 - wt_vertices(t);
        reg[k].add(wt_string(t));
        by_degree[k].push_back(t);
    }
    for (auto& r : reg) r.freeze();
    cc.basis.resize(top + 1);
    for (int k = 0; k <= top; ++k) cc.basis[k] = reg[k].keys();
    cc.boundary.resize(top + 1);
    cc.boundary[0] = exact::RationalMatrix(0, reg[0].size());
    for (int k = 1; k <= top; ++k)
        cc.boundary[k] = exact::RationalMatrix(reg[k - 1].size(), reg[k].size());
    for (int k = 1; k <= top; ++k)
        for (auto& t : by_degree[k]) {
            int col = reg[k].index(wt_string(t));
            for (auto& [face, sign] : deconcatenation_boundary(t)) {
                auto [canon, csign] = wt_canonicalize(face);
                cc.boundary[k].add(reg[k - 1].index(wt_string(canon)), col,
                                   Rational(sign * csign));
            }
        }
    return cc;
}

}  // namespace mosaic::operads
