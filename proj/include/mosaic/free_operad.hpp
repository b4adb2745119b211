#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mosaic/operad_elements.hpp"
#include "mosaic/rational.hpp"

namespace mosaic::operads {

enum class Symmetry { None, Symmetric, Skew };

struct Generator {
    std::string name;
    int arity;
    int degree = 0;
    Symmetry sym = Symmetry::None;
};

// Tree-shaped monomial in named generators; leaves carry labels.
struct Term {
    int gen = -1;  // index into the generator list; -1 for a leaf
    int leaf = 0;  // label when leaf
    std::vector<Term> children;

    bool is_leaf() const { return gen < 0; }
    bool operator==(const Term&) const = default;
};

inline Term term_leaf(int label) { return Term{-1, label, {}}; }

inline void term_tokens(const Term& t, std::vector<int>& out) {
    if (t.is_leaf()) {
        out.push_back(t.leaf);
        return;
    }
    out.push_back(-1 - t.gen);  // distinct negative token per generator
    for (auto& c : t.children) term_tokens(c, out);
    out.push_back(std::numeric_limits<int>::min() + 1);
}

inline std::vector<int> term_encoding(const Term& t) {
    std::vector<int> v;
    term_tokens(t, v);
    return v;
}

inline std::string term_string(const Term& t, const std::vector<Generator>& gens) {
    if (t.is_leaf()) return "x" + std::to_string(t.leaf);
    std::string s = gens[t.gen].name + "(";
    for (size_t i = 0; i < t.children.size(); ++i) {
        if (i) s += ",";
        s += term_string(t.children[i], gens);
    }
    return s + ")";
}

inline int term_degree(const Term& t, const std::vector<Generator>& gens) {
    if (t.is_leaf()) return 0;
    int d = gens[t.gen].degree;
    for (auto& c : t.children) d += term_degree(c, gens);
    return d;
}

// Normalize a term bottom-up: children of symmetric or skew vertices are
// sorted by their encodings. Swapping two adjacent children contributes
// the generator's symmetry sign times the Koszul sign of their homological
// degrees, so odd-degree subtrees under a skew vertex effectively commute
// and odd-degree subtrees under a symmetric vertex anticommute. A repeated
// child kills the term exactly when its effective swap sign is -1.
// Returns nullopt for the zero term.
inline std::optional<std::pair<Term, int>> normalize_term(
    const Term& t, const std::vector<Generator>& gens) {
    if (t.is_leaf()) return std::pair{t, 1};
    Term out;
    out.gen = t.gen;
    int sign = 1;
    for (auto& c : t.children) {
        auto r = normalize_term(c, gens);
        if (!r) return std::nullopt;
        out.children.push_back(std::move(r->first));
        sign *= r->second;
    }
    Symmetry sym = gens[t.gen].sym;
    if (sym != Symmetry::None) {
        std::vector<std::vector<int>> enc;
        std::vector<int> deg;
        for (auto& c : out.children) {
            enc.push_back(term_encoding(c));
            deg.push_back(term_degree(c, gens));
        }
        auto swap_sign = [&](int da, int db) {
            int s = (sym == Symmetry::Skew) ? -1 : 1;
            if ((da % 2) && (db % 2)) s = -s;
            return s;
        };
        for (size_t i = 1; i < out.children.size(); ++i)
            for (size_t j = i; j > 0 && enc[j] < enc[j - 1]; --j) {
                sign *= swap_sign(deg[j], deg[j - 1]);
                std::swap(enc[j], enc[j - 1]);
                std::swap(deg[j], deg[j - 1]);
                std::swap(out.children[j], out.children[j - 1]);
            }
        for (size_t i = 0; i + 1 < enc.size(); ++i)
            if (enc[i] == enc[i + 1] && swap_sign(deg[i], deg[i + 1]) == -1)
                return std::nullopt;
    }
    return std::pair{std::move(out), sign};
}

// Chains: sparse rational combinations of normalized terms.
using TermChain = std::map<Term, Rational>;

inline bool operator<(const Term& a, const Term& b) {
    return term_encoding(a) < term_encoding(b);
}

inline void chain_add(TermChain& chain, const Term& t, const Rational& c,
                      const std::vector<Generator>& gens) {
    auto r = normalize_term(t, gens);
    if (!r || is_zero(c)) return;
    Rational v = c * r->second;
    auto it = chain.find(r->first);
    if (it == chain.end())
        chain.emplace(std::move(r->first), std::move(v));
    else {
        it->second += v;
        if (is_zero(it->second)) chain.erase(it);
    }
}

// All normalized monomials of the given arity on the leaf set {1..n}
// (or an arbitrary label set).
inline std::vector<Term> free_operad_basis_on(const std::vector<Generator>& gens,
                                              std::vector<int> labels) {
    if (labels.size() == 1) return {term_leaf(labels[0])};
    std::vector<Term> out;
    int n = (int)labels.size();
    std::sort(labels.begin(), labels.end());
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        int m = gens[gi].arity;
        if (m < 2 || m > n) continue;
        // set partitions of labels into exactly m unordered nonempty blocks,
        // canonical: block of labels[0] first, then by least element
        std::vector<int> assign(n, -1);
        std::function<void(int, int)> rec = [&](int pos, int used) {
            if (pos == n) {
                if (used != m) return;
                std::vector<std::vector<int>> blocks(m);
                for (int i = 0; i < n; ++i) blocks[assign[i]].push_back(labels[i]);
                std::vector<std::vector<Term>> options;
                for (auto& b : blocks) {
                    options.push_back(free_operad_basis_on(gens, b));
                    if (options.back().empty()) return;
                }
                std::vector<size_t> idx(options.size(), 0);
                while (true) {
                    Term t;
                    t.gen = (int)gi;
                    for (size_t i = 0; i < options.size(); ++i)
                        t.children.push_back(options[i][idx[i]]);
                    auto norm = normalize_term(t, gens);
                    if (norm) out.push_back(norm->first);
                    size_t i = 0;
                    while (i < idx.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
                    if (i == idx.size()) break;
                }
                return;
            }
            for (int b = 0; b <= std::min(used, m - 1); ++b) {
                bool newblock = (b == used);
                assign[pos] = b;
                rec(pos + 1, used + (newblock ? 1 : 0));
            }
            assign[pos] = -1;
        };
        assign[0] = 0;
        rec(1, 1);
        assign[0] = -1;
    }
    // for non-symmetric generators every block ordering is a distinct
    // monomial: permute the children of the unordered representatives
    std::vector<Term> extra;
    for (auto& t : out) {
        if (t.is_leaf() || gens[t.gen].sym != Symmetry::None) continue;
        std::vector<int> idx(t.children.size());
        std::iota(idx.begin(), idx.end(), 0);
        while (std::next_permutation(idx.begin(), idx.end())) {
            Term p;
            p.gen = t.gen;
            for (int i : idx) p.children.push_back(t.children[i]);
            extra.push_back(std::move(p));
        }
    }
    out.insert(out.end(), extra.begin(), extra.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<Term> free_operad_basis(const std::vector<Generator>& gens, int n,
                                           int max_arity = 7) {
    if (n > max_arity) throw std::invalid_argument("free_operad_basis: arity bound exceeded");
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 1);
    return free_operad_basis_on(gens, labels);
}

// Replace the leaf bearing `label` with the subterm; renormalizes.
inline TermChain graft(const Term& host, int label, const TermChain& inner,
                       const std::vector<Generator>& gens) {
    TermChain out;
    for (auto& [sub, c] : inner) {
        std::function<Term(const Term&)> rec = [&](const Term& t) -> Term {
            if (t.is_leaf()) return t.leaf == label ? sub : t;
            Term r;
            r.gen = t.gen;
            for (auto& ch : t.children) r.children.push_back(rec(ch));
            return r;
        };
        chain_add(out, rec(host), c, gens);
    }
    return out;
}

// gamma(host; args): replace leaf i of a host term over labels 1..m by
// args[i-1]. Child chains must use pairwise disjoint label sets. Host
// leaves are moved to temporary labels first so that slot labels cannot
// capture identical labels inside already-grafted arguments.
inline TermChain graft_all(const Term& host, const std::vector<TermChain>& args,
                           const std::vector<Generator>& gens) {
    constexpr int kSlotBase = 1 << 20;
    std::function<Term(const Term&)> to_slots = [&](const Term& t) -> Term {
        if (t.is_leaf()) return term_leaf(kSlotBase + t.leaf);
        Term r;
        r.gen = t.gen;
        for (auto& c : t.children) r.children.push_back(to_slots(c));
        return r;
    };
    TermChain acc{{to_slots(host), Rational(1)}};
    for (int i = 0; i < (int)args.size(); ++i) {
        TermChain next;
        for (auto& [t, c] : acc) {
            TermChain grafted = graft(t, kSlotBase + i + 1, args[i], gens);
            for (auto& [t2, c2] : grafted) chain_add(next, t2, c * c2, gens);
        }
        acc = std::move(next);
    }
    return acc;
}

// Evaluation into As by operadic substitution; every generator must have an
// assigned AsElement of its arity (on labels 1..arity).
inline AsElement evaluate_as(const Term& t, const std::vector<Generator>& gens,
                             const std::map<std::string, AsElement>& assignment) {
    if (t.is_leaf()) return AsElement::monomial({t.leaf});
    auto it = assignment.find(gens[t.gen].name);
    if (it == assignment.end())
        throw std::invalid_argument("evaluate_as: unassigned generator " + gens[t.gen].name);
    std::vector<AsElement> args;
    for (auto& c : t.children) args.push_back(evaluate_as(c, gens, assignment));
    return as_substitute(it->second, args);
}

inline AsElement evaluate_as(const TermChain& chain, const std::vector<Generator>& gens,
                             const std::map<std::string, AsElement>& assignment, int arity) {
    AsElement acc;
    acc.arity = arity;
    for (auto& [t, c] : chain) {
        AsElement e = evaluate_as(t, gens, assignment);
        for (auto& [w, v] : e.terms) acc.add(w, v * c);
    }
    return acc;
}

// Evaluation into Pois_1: generators are assigned the structural operations.
using PoisOp = std::function<PoisElement(const std::vector<PoisElement>&)>;

inline PoisElement evaluate_pois(const Term& t, const std::vector<Generator>& gens,
                                 const std::map<std::string, PoisOp>& assignment) {
    if (t.is_leaf()) return pois_identity(t.leaf);
    auto it = assignment.find(gens[t.gen].name);
    if (it == assignment.end())
        throw std::invalid_argument("evaluate_pois: unassigned generator " +
                                    gens[t.gen].name);
    std::vector<PoisElement> args;
    for (auto& c : t.children) args.push_back(evaluate_pois(c, gens, assignment));
    return it->second(args);
}

// Arity-n component of the operadic ideal generated by the relation chains:
// spanned by  u o_slot gamma(r; t_1..t_m)  over all outer basis terms u,
// slots, relations r and inner basis terms t_i, with labels distributed in
// all ways.
inline std::vector<TermChain> ideal_span(const std::vector<Generator>& gens,
                                         const std::vector<std::pair<int, TermChain>>& relations,
                                         int n) {
    std::vector<TermChain> out;
    for (auto& [m, rel] : relations) {
        if (m > n) continue;
        // choose sizes b_1..b_m >= 1 summing to inner_total <= n,
        // outer has a = n - inner_total + 1 >= 1 leaves
        std::vector<int> sizes(m, 1);
        std::function<void(int, int)> choose_sizes = [&](int pos, int remaining) {
            if (pos == m) {
                // distribute labels: choose which go inside each relation
                // slot; basis terms on a block cover all arrangements
                std::vector<int> assign(n, -1);  // -1 outer, else block id
                std::function<void(int, std::vector<int>&)> place =
                    [&](int idx, std::vector<int>& remaining_cap) {
                        if (idx == n) {
                            std::vector<std::vector<int>> blocks(m);
                            std::vector<int> outer_labels;
                            for (int i = 0; i < n; ++i) {
                                if (assign[i] < 0)
                                    outer_labels.push_back(i + 1);
                                else
                                    blocks[assign[i]].push_back(i + 1);
                            }
                            // canonical: block contents must be filled to size
                            for (int b = 0; b < m; ++b)
                                if ((int)blocks[b].size() != sizes[b]) return;
                            // inner argument chains
                            std::vector<std::vector<Term>> inner_opts;
                            for (int b = 0; b < m; ++b) {
                                inner_opts.push_back(free_operad_basis_on(gens, blocks[b]));
                                if (inner_opts.back().empty()) return;
                            }
                            // outer term: on outer_labels plus a slot marker 0
                            std::vector<int> outer_with_slot = outer_labels;
                            outer_with_slot.push_back(0);
                            auto outers = free_operad_basis_on(gens, outer_with_slot);
                            if (outers.empty()) return;
                            std::vector<size_t> idx2(inner_opts.size(), 0);
                            while (true) {
                                std::vector<TermChain> args;
                                for (size_t i = 0; i < inner_opts.size(); ++i)
                                    args.push_back(
                                        TermChain{{inner_opts[i][idx2[i]], Rational(1)}});
                                // relation with arguments grafted in
                                TermChain core;
                                for (auto& [rt, rc] : rel) {
                                    TermChain g = graft_all(rt, args, gens);
                                    for (auto& [t2, c2] : g) chain_add(core, t2, rc * c2, gens);
                                }
                                for (auto& u : outers) {
                                    TermChain full = graft(u, 0, core, gens);
                                    if (!full.empty()) out.push_back(full);
                                }
                                size_t i = 0;
                                while (i < idx2.size() && ++idx2[i] == inner_opts[i].size())
                                    idx2[i++] = 0;
                                if (i == idx2.size()) break;
                            }
                            return;
                        }
                        // assign label idx: outer or one of the blocks with capacity
                        assign[idx] = -1;
                        place(idx + 1, remaining_cap);
                        for (int b = 0; b < m; ++b)
                            if (remaining_cap[b] > 0) {
                                assign[idx] = b;
                                --remaining_cap[b];
                                place(idx + 1, remaining_cap);
                                ++remaining_cap[b];
                                assign[idx] = -1;
                            }
                    };
                std::vector<int> cap = sizes;
                place(0, cap);
                return;
            }
            for (int s = 1; s + (m - pos - 1) <= remaining; ++s) {
                sizes[pos] = s;
                choose_sizes(pos + 1, remaining - s);
            }
        };
        choose_sizes(0, n);
    }
    return out;
}

}  // namespace mosaic::operads
