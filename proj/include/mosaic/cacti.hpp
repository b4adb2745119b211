#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mosaic/rational.hpp"

namespace mosaic::cacti {

// One-line notation, 1-based values: perm[i-1] is the image of i.
using Permutation = std::vector<int>;

inline Permutation identity_perm(int n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 1);
    return p;
}

// Words act left to right: (a then b)(i) = b(a(i)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = b[a[i] - 1];
    return c;
}

// Fixes [1..n] outside [p..q] and reverses the interval [p..q].
inline Permutation spq_permutation(int n, int p, int q) {
    if (!(1 <= p && p < q && q <= n))
        throw std::out_of_range("spq_permutation: need 1 <= p < q <= n");
    Permutation perm = identity_perm(n);
    for (int i = p; i <= q; ++i) perm[i - 1] = p + q - i;
    return perm;
}

struct CactiWord {
    std::vector<std::pair<int, int>> letters;  // generators s_{p,q}
};

inline Permutation word_permutation(const CactiWord& w, int n) {
    Permutation acc = identity_perm(n);
    for (auto& [p, q] : w.letters) acc = compose(acc, spq_permutation(n, p, q));
    return acc;
}

inline bool is_pure(const CactiWord& w, int n) {
    return word_permutation(w, n) == identity_perm(n);
}

struct RelationReport {
    int checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// All three relation families as permutation identities:
//   s_pq^2 = 1,
//   s_pq s_kl = s_kl s_pq               for [pq] and [kl] disjoint,
//   s_pq s_kl = s_{p+q-l,p+q-k} s_pq    for [kl] inside [pq].
inline RelationReport verify_cacti_relations(int n) {
    RelationReport rep;
    auto note = [&](const std::string& s) { rep.violations.push_back(s); };
    for (int p = 1; p <= n; ++p)
        for (int q = p + 1; q <= n; ++q) {
            auto s = spq_permutation(n, p, q);
            ++rep.checked;
            if (compose(s, s) != identity_perm(n))
                note("involution fails for s_" + std::to_string(p) + std::to_string(q));
            for (int k = 1; k <= n; ++k)
                for (int l = k + 1; l <= n; ++l) {
                    auto skl = spq_permutation(n, k, l);
                    if (l < p || q < k) {
                        ++rep.checked;
                        if (compose(s, skl) != compose(skl, s))
                            note("disjoint commutation fails for (" + std::to_string(p) +
                                 "," + std::to_string(q) + "),(" + std::to_string(k) + "," +
                                 std::to_string(l) + ")");
                    } else if (p <= k && l <= q) {
                        ++rep.checked;
                        auto rhs = compose(spq_permutation(n, p + q - l, p + q - k), s);
                        if (compose(s, skl) != rhs)
                            note("nested relation fails for (" + std::to_string(p) + "," +
                                 std::to_string(q) + ") contains (" + std::to_string(k) +
                                 "," + std::to_string(l) + ")");
                    }
                }
        }
    return rep;
}

// The commutor word c_{(X_{q-1}...X_p),X_q} o ... o c_{X_p,X_{p+1}} applied to
// the identity arrangement. Each factor swaps the growing reversed block at
// positions [p..r-1] with the single entry at position r.
inline Permutation commutor_composite(int n, int p, int q) {
    if (!(1 <= p && p < q && q <= n))
        throw std::out_of_range("commutor_composite: need 1 <= p < q <= n");
    std::vector<int> seq(n);
    std::iota(seq.begin(), seq.end(), 1);
    for (int r = p + 1; r <= q; ++r) {
        int moved = seq[r - 1];
        for (int i = r - 1; i >= p; --i) seq[i] = seq[i - 1];
        seq[p - 1] = moved;
    }
    return seq;
}

inline bool commutor_factorization_check(int n, int p, int q) {
    return commutor_composite(n, p, q) == spq_permutation(n, p, q);
}

}  // namespace mosaic::cacti
