#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mosaic/lie.hpp"
#include "mosaic/rational.hpp"

namespace mosaic::operads {

// ----- The associative operad As(n) -----
// Basis monomial x_{w[0]} x_{w[1]} ... , stored as the word of labels.
using AsWord = std::vector<int>;

struct AsElement {
    int arity = 0;
    std::map<AsWord, Rational> terms;

    static AsElement monomial(AsWord w, Rational c = Rational(1)) {
        AsElement e;
        e.arity = (int)w.size();
        e.terms.emplace(std::move(w), std::move(c));
        return e;
    }

    void add(const AsWord& w, const Rational& c) {
        if (is_zero(c)) return;
        auto it = terms.find(w);
        if (it == terms.end())
            terms.emplace(w, c);
        else {
            it->second += c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }

    bool operator==(const AsElement&) const = default;
};

inline AsElement operator+(const AsElement& a, const AsElement& b) {
    AsElement out = a;
    for (auto& [w, c] : b.terms) out.add(w, c);
    return out;
}

inline AsElement operator-(const AsElement& a, const AsElement& b) {
    AsElement out = a;
    for (auto& [w, c] : b.terms) out.add(w, -c);
    return out;
}

inline AsElement scale(const AsElement& a, const Rational& c) {
    AsElement out;
    out.arity = a.arity;
    for (auto& [w, v] : a.terms) out.add(w, v * c);
    return out;
}

enum class TauVariant { Flip, SignedFlip };

// eq-style involutions: flip reverses the multiplication order; the Koszul
// dual variant multiplies by (-1)^(n-1).
inline AsElement tau_action(const AsElement& e, TauVariant variant) {
    AsElement out;
    out.arity = e.arity;
    int sign = 1;
    if (variant == TauVariant::SignedFlip && e.arity % 2 == 0) sign = -1;
    for (auto& [w, c] : e.terms) {
        AsWord r(w.rbegin(), w.rend());
        out.add(r, c * sign);
    }
    return out;
}

// gamma(f; e_1..e_m): substitute e_i for the letter bearing label i of f.
// The child elements must live on pairwise disjoint label sets.
inline AsElement as_substitute(const AsElement& f, const std::vector<AsElement>& args) {
    AsElement out;
    for (auto& [w, c] : f.terms) {
        std::vector<std::pair<AsWord, Rational>> acc{{AsWord{}, c}};
        for (int letter : w) {
            const AsElement& g = args.at(letter - 1);
            std::vector<std::pair<AsWord, Rational>> next;
            for (auto& [u, cu] : acc)
                for (auto& [v, cv] : g.terms) {
                    AsWord uv = u;
                    uv.insert(uv.end(), v.begin(), v.end());
                    next.emplace_back(std::move(uv), cu * cv);
                }
            acc = std::move(next);
        }
        for (auto& [word, coef] : acc) {
            out.arity = (int)word.size();
            out.add(word, coef);
        }
    }
    return out;
}

inline std::vector<AsWord> all_words(int n) {
    AsWord w(n);
    std::iota(w.begin(), w.end(), 1);
    std::vector<AsWord> out;
    do {
        out.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

// ----- The Poisson operad Pois_1(n) in its Com o Lie basis -----
// A monomial is a set partition of the labels, each block carrying the
// multilinear Lyndon word of a free-Lie bracket monomial on its letters.
using PoisKey = std::vector<lie::Word>;  // block Lyndon words, sorted

struct PoisElement {
    int arity = 0;
    std::map<PoisKey, Rational> terms;

    void add(PoisKey k, const Rational& c) {
        if (is_zero(c)) return;
        std::sort(k.begin(), k.end());
        auto it = terms.find(k);
        if (it == terms.end())
            terms.emplace(std::move(k), c);
        else {
            it->second += c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }

    bool operator==(const PoisElement&) const = default;
};

inline PoisElement pois_identity(int label) {
    PoisElement e;
    e.arity = 1;
    e.add(PoisKey{{label}}, Rational(1));
    return e;
}

inline PoisElement operator+(const PoisElement& a, const PoisElement& b) {
    PoisElement out = a;
    out.arity = std::max(a.arity, b.arity);
    for (auto& [k, c] : b.terms) out.add(k, c);
    return out;
}

inline PoisElement operator-(const PoisElement& a, const PoisElement& b) {
    PoisElement out = a;
    out.arity = std::max(a.arity, b.arity);
    for (auto& [k, c] : b.terms) out.add(k, -c);
    return out;
}

// commutative product: union of block families
inline PoisElement pois_product(const PoisElement& a, const PoisElement& b) {
    PoisElement out;
    out.arity = a.arity + b.arity;
    for (auto& [ka, ca] : a.terms)
        for (auto& [kb, cb] : b.terms) {
            PoisKey k = ka;
            k.insert(k.end(), kb.begin(), kb.end());
            out.add(std::move(k), ca * cb);
        }
    return out;
}

namespace detail {
// Expand a free-Lie tensor supported on multilinear words into Lyndon words.
inline std::vector<std::pair<lie::Word, Rational>> multilinear_lyndon_coords(
    lie::Tensor t) {
    std::vector<std::pair<lie::Word, Rational>> out;
    while (!t.empty()) {
        const lie::Word w = t.begin()->first;
        if (!lie::is_lyndon(w))
            throw std::logic_error("multilinear Lyndon extraction: not a Lie element");
        Rational c = t.begin()->second;
        out.emplace_back(w, c);
        lie::add_scaled(t, lie::detail::lyndon_expansion(w), -c);
        if (t.count(w))
            throw std::logic_error("multilinear Lyndon extraction failed");
    }
    return out;
}
}  // namespace detail

// Poisson bracket via the Leibniz rule: bracket every block of a with every
// block of b inside the free Lie algebra, carry the remaining blocks along.
inline PoisElement pois_bracket(const PoisElement& a, const PoisElement& b) {
    PoisElement out;
    out.arity = a.arity + b.arity;
    for (auto& [ka, ca] : a.terms)
        for (auto& [kb, cb] : b.terms) {
            Rational c = ca * cb;
            for (size_t i = 0; i < ka.size(); ++i)
                for (size_t j = 0; j < kb.size(); ++j) {
                    lie::Tensor br = lie::bracket(lie::detail::lyndon_expansion(ka[i]),
                                                  lie::detail::lyndon_expansion(kb[j]));
                    for (auto& [w, cw] : detail::multilinear_lyndon_coords(br)) {
                        PoisKey k;
                        for (size_t p = 0; p < ka.size(); ++p)
                            if (p != i) k.push_back(ka[p]);
                        for (size_t q = 0; q < kb.size(); ++q)
                            if (q != j) k.push_back(kb[q]);
                        k.push_back(w);
                        out.add(std::move(k), c * cw);
                    }
                }
        }
    return out;
}

// tau(mu2) = -mu2, tau(nu2) = nu2: a monomial with k blocks uses k-1
// multiplications, so it scales by (-1)^(k-1).
inline PoisElement pois_tau(const PoisElement& e) {
    PoisElement out;
    out.arity = e.arity;
    for (auto& [k, c] : e.terms)
        out.add(k, (k.size() % 2 == 1) ? c : -c);
    return out;
}

// Full monomial basis of Pois_1(n): set partitions with a multilinear
// Lyndon word per block. dim = n!.
inline std::vector<PoisKey> pois_basis(int n) {
    // set partitions by assigning each label to a block index
    std::vector<PoisKey> out;
    std::vector<int> assign(n, 0);
    auto lyndon_choices = [](const std::vector<int>& letters) {
        // multilinear Lyndon words on the letter set = permutations starting
        // with the minimum
        std::vector<lie::Word> words;
        std::vector<int> rest(letters.begin() + 1, letters.end());
        std::sort(rest.begin(), rest.end());
        do {
            lie::Word w{letters[0]};
            w.insert(w.end(), rest.begin(), rest.end());
            words.push_back(w);
        } while (std::next_permutation(rest.begin(), rest.end()));
        return words;
    };
    // restricted growth strings enumerate set partitions
    std::vector<int> rgs(n, 0);
    while (true) {
        int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<int>> block_letters(blocks);
        for (int i = 0; i < n; ++i) block_letters[rgs[i]].push_back(i + 1);
        std::vector<std::vector<lie::Word>> options;
        for (auto& bl : block_letters) options.push_back(lyndon_choices(bl));
        std::vector<size_t> idx(options.size(), 0);
        while (true) {
            PoisKey k;
            for (size_t i = 0; i < options.size(); ++i) k.push_back(options[i][idx[i]]);
            std::sort(k.begin(), k.end());
            out.push_back(std::move(k));
            size_t i = 0;
            while (i < idx.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
        // next restricted growth string
        int pos = n - 1;
        while (pos > 0) {
            int cap = *std::max_element(rgs.begin(), rgs.begin() + pos) + 1;
            if (rgs[pos] < cap) {
                ++rgs[pos];
                std::fill(rgs.begin() + pos + 1, rgs.end(), 0);
                break;
            }
            --pos;
        }
        if (pos == 0) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace mosaic::operads
