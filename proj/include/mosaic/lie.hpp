#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "mosaic/rational.hpp"
#include "mosaic/series.hpp"
#include "mosaic/sparse_matrix.hpp"

namespace mosaic::lie {

// Elements of the free Lie algebra live inside the tensor algebra:
// sparse rational combinations of words in the generator ids.
using Word = std::vector<int>;
using Tensor = std::map<Word, Rational>;

inline void add_term(Tensor& t, const Word& w, const Rational& c) {
    if (is_zero(c)) return;
    auto it = t.find(w);
    if (it == t.end()) {
        t.emplace(w, c);
    } else {
        it->second += c;
        if (is_zero(it->second)) t.erase(it);
    }
}

inline void add_scaled(Tensor& t, const Tensor& s, const Rational& c) {
    for (auto& [w, v] : s) add_term(t, w, v * c);
}

inline Tensor generator(int i) { return Tensor{{Word{i}, Rational(1)}}; }

inline Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

inline Tensor bracket(const Tensor& a, const Tensor& b) {
    Tensor out;
    for (auto& [u, cu] : a)
        for (auto& [v, cv] : b) {
            add_term(out, concat(u, v), cu * cv);
            add_term(out, concat(v, u), -cu * cv);
        }
    return out;
}

inline Tensor bracket_with_generator(const Tensor& a, int g) {
    Tensor out;
    for (auto& [u, cu] : a) {
        Word ug = u;
        ug.push_back(g);
        add_term(out, ug, cu);
        Word gu;
        gu.reserve(u.size() + 1);
        gu.push_back(g);
        gu.insert(gu.end(), u.begin(), u.end());
        add_term(out, gu, -cu);
    }
    return out;
}

// Substitute the letter i by image[i], extended multiplicatively to words.
inline Tensor substitute(const Tensor& t, const std::vector<Tensor>& image) {
    Tensor out;
    for (auto& [w, c] : t) {
        Tensor acc{{Word{}, c}};
        for (int letter : w) {
            Tensor next;
            for (auto& [u, cu] : acc)
                for (auto& [v, cv] : image.at(letter))
                    add_term(next, concat(u, v), cu * cv);
            acc = std::move(next);
        }
        for (auto& [w2, c2] : acc) add_term(out, w2, c2);
    }
    return out;
}

inline bool is_lyndon(const Word& w) {
    const size_t n = w.size();
    if (n == 0) return false;
    for (size_t r = 1; r < n; ++r) {
        // compare w with its rotation starting at r
        for (size_t i = 0; i < n; ++i) {
            int a = w[i], b = w[(r + i) % n];
            if (a < b) break;
            if (a > b) return false;
            if (i + 1 == n) return false;  // rotation equal => periodic, not Lyndon
        }
    }
    return true;
}

// All Lyndon words of length exactly m over {0..k-1}, Duval-style.
inline std::vector<Word> lyndon_words(int k, int m) {
    std::vector<Word> out;
    if (k <= 0 || m <= 0) return out;
    Word w{-1};
    while (!w.empty()) {
        ++w.back();
        if ((int)w.size() == m) out.push_back(w);
        size_t base = w.size();
        while ((int)w.size() < m) w.push_back(w[w.size() - base]);
        while (!w.empty() && w.back() == k - 1) w.pop_back();
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Necklace / Witt formula: number of Lyndon words of length m over k letters.
inline Int free_lie_dimension(int k, int m) {
    if (k < 1 || m < 1) throw std::invalid_argument("free_lie_dimension: k,m >= 1");
    auto mobius = [](int d) {
        int mu = 1;
        for (int p = 2; p * p <= d; ++p)
            if (d % p == 0) {
                d /= p;
                if (d % p == 0) return 0;
                mu = -mu;
            }
        if (d > 1) mu = -mu;
        return mu;
    };
    Int total = 0;
    for (int d = 1; d <= m; ++d)
        if (m % d == 0) {
            Int p;
            mpz_ui_pow_ui(p.get_mpz_t(), (unsigned long)k, (unsigned long)(m / d));
            total += mobius(d) * p;
        }
    return total / m;
}

namespace detail {
// Expansion of the standard (right) bracketing of a Lyndon word:
// w = u v with v the longest proper Lyndon suffix, b(w) = [b(u), b(v)].
// The expansion equals w plus lexicographically larger words.
inline const Tensor& lyndon_expansion(const Word& w) {
    static std::map<Word, Tensor> cache;
    static std::recursive_mutex mu;
    std::scoped_lock lock(mu);
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    Tensor result;
    if (w.size() == 1) {
        result = generator(w[0]);
    } else {
        size_t split = 0;
        for (size_t s = 1; s < w.size(); ++s) {
            Word suffix(w.begin() + s, w.end());
            if (is_lyndon(suffix)) {
                split = s;
                break;
            }
        }
        Word u(w.begin(), w.begin() + split), v(w.begin() + split, w.end());
        Tensor eu = lyndon_expansion(u), ev = lyndon_expansion(v);
        result = bracket(eu, ev);
    }
    return cache.emplace(w, std::move(result)).first->second;
}
}  // namespace detail

// Lyndon basis of the degree-m part of the free Lie algebra on k letters,
// with triangular coordinate extraction from tensor representatives.
class LyndonBasis {
public:
    LyndonBasis(int k, int m) : k_(k), m_(m), words_(lyndon_words(k, m)) {
        for (int i = 0; i < (int)words_.size(); ++i) index_[words_[i]] = i;
    }

    int dim() const { return (int)words_.size(); }
    const Word& word(int i) const { return words_.at(i); }
    int index(const Word& w) const { return index_.at(w); }

    exact::SparseVec coordinates(Tensor t) const {
        exact::SparseVec out;
        while (!t.empty()) {
            const Word w = t.begin()->first;
            if ((int)w.size() != m_)
                throw std::logic_error("coordinates: wrong degree");
            auto it = index_.find(w);
            if (it == index_.end())
                throw std::logic_error("coordinates: leading word is not Lyndon; not a Lie element");
            Rational c = t.begin()->second;
            out.emplace_back(it->second, c);
            add_scaled(t, detail::lyndon_expansion(w), -c);
            if (t.count(w)) throw std::logic_error("coordinates: triangular step failed");
        }
        exact::sort_and_compress(out);
        return out;
    }

    Tensor from_coordinates(const exact::SparseVec& v) const {
        Tensor t;
        for (auto& [i, c] : v) add_scaled(t, detail::lyndon_expansion(words_.at(i)), c);
        return t;
    }

private:
    int k_, m_;
    std::vector<Word> words_;
    std::map<Word, int> index_;
};

struct QuadraticLiePresentation {
    int num_generators = 0;
    std::vector<std::string> names;
    std::vector<Tensor> relations;  // homogeneous of word length 2
};

inline QuadraticLiePresentation free_lie_presentation(int k) {
    QuadraticLiePresentation p;
    p.num_generators = k;
    for (int i = 0; i < k; ++i) p.names.push_back("x" + std::to_string(i + 1));
    return p;
}

// Drinfeld-Kohno t(n): symmetric generators t_ij, infinitesimal braid relations.
struct DrinfeldKohno {
    int n;
    std::vector<std::pair<int, int>> pairs;  // (i,j), i<j, 1-based
    std::map<std::pair<int, int>, int> pair_index;

    explicit DrinfeldKohno(int n_) : n(n_) {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                pair_index[{i, j}] = (int)pairs.size();
                pairs.emplace_back(i, j);
            }
    }

    int t_gen(int i, int j) const {
        if (i == j) throw std::invalid_argument("t_gen: indices must differ");
        if (i > j) std::swap(i, j);
        return pair_index.at({i, j});
    }

    QuadraticLiePresentation presentation() const {
        QuadraticLiePresentation p;
        p.num_generators = (int)pairs.size();
        for (auto& [i, j] : pairs)
            p.names.push_back("t" + std::to_string(i) + std::to_string(j));
        // [t_ab, t_ac + t_bc] = 0 for each triple {a,b,c} and each pair in it
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                for (int c = b + 1; c <= n; ++c) {
                    int ab = t_gen(a, b), ac = t_gen(a, c), bc = t_gen(b, c);
                    auto rel = [&](int x, int y, int z) {
                        Tensor r = bracket(generator(x), generator(y));
                        add_scaled(r, bracket(generator(x), generator(z)), Rational(1));
                        p.relations.push_back(std::move(r));
                    };
                    rel(ab, ac, bc);
                    rel(ac, ab, bc);
                    rel(bc, ab, ac);
                }
        // [t_ij, t_kl] = 0 for disjoint pairs
        for (int x = 0; x < (int)pairs.size(); ++x)
            for (int y = x + 1; y < (int)pairs.size(); ++y) {
                auto [i, j] = pairs[x];
                auto [k, l] = pairs[y];
                if (i != k && i != l && j != k && j != l)
                    p.relations.push_back(bracket(generator(x), generator(y)));
            }
        return p;
    }
};

// t_odd_1(n): skew generators nu_ijk on 3-subsets with the five-index
// relations [nu_ijk, nu_pqi + nu_pqj + nu_pqk] = 0 (p,q disjoint from ijk)
// and six-index commutation.
struct TOdd {
    int n;
    std::vector<std::array<int, 3>> triples;  // sorted, 1-based
    std::map<std::array<int, 3>, int> triple_index;

    explicit TOdd(int n_) : n(n_) {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = j + 1; k <= n; ++k) {
                    triple_index[{i, j, k}] = (int)triples.size();
                    triples.push_back({i, j, k});
                }
    }

    // nu with arbitrary index order: (sign, generator id); zero when repeated.
    std::pair<int, int> nu(int i, int j, int k) const {
        if (i == j || j == k || i == k) return {0, -1};
        int sign = 1;
        if (i > j) { std::swap(i, j); sign = -sign; }
        if (j > k) { std::swap(j, k); sign = -sign; }
        if (i > j) { std::swap(i, j); sign = -sign; }
        return {sign, triple_index.at({i, j, k})};
    }

    QuadraticLiePresentation presentation() const {
        QuadraticLiePresentation p;
        p.num_generators = (int)triples.size();
        for (auto& t : triples)
            p.names.push_back("nu" + std::to_string(t[0]) + std::to_string(t[1]) +
                              std::to_string(t[2]));
        for (int a = 0; a < (int)triples.size(); ++a) {
            auto [i, j, k] = std::tuple(triples[a][0], triples[a][1], triples[a][2]);
            // choose p<q outside {i,j,k}
            for (int pp = 1; pp <= n; ++pp) {
                if (pp == i || pp == j || pp == k) continue;
                for (int qq = pp + 1; qq <= n; ++qq) {
                    if (qq == i || qq == j || qq == k) continue;
                    Tensor r;
                    for (int x : {i, j, k}) {
                        auto [sgn, id] = nu(pp, qq, x);
                        if (sgn != 0)
                            add_scaled(r, bracket(generator(a), generator(id)),
                                       Rational(sgn));
                    }
                    if (!r.empty()) p.relations.push_back(std::move(r));
                }
            }
            // disjoint triples commute (needs n >= 6)
            for (int b = a + 1; b < (int)triples.size(); ++b) {
                bool disjoint = true;
                for (int x : triples[a])
                    for (int y : triples[b])
                        if (x == y) disjoint = false;
                if (disjoint)
                    p.relations.push_back(bracket(generator(a), generator(b)));
            }
        }
        return p;
    }
};

// Degreewise span of the ideal generated by the quadratic relations.
// I_2 = span(relations), I_m = [I_{m-1}, generators]; the single ad-layer
// is complete for quadratically generated ideals (closure under ad of
// generators generates the ideal). Only independent spanners are carried
// to the next degree.
class GradedIdeal {
public:
    GradedIdeal(const QuadraticLiePresentation& p, int max_degree)
        : pres_(p), max_degree_(max_degree) {
        bases_.reserve(max_degree + 1);
        for (int m = 0; m <= max_degree; ++m)
            bases_.emplace_back(p.num_generators, std::max(m, 1));
        echelons_.resize(max_degree + 1);
        spanners_.resize(max_degree + 1);
        if (max_degree >= 2) {
            for (auto& r : p.relations) insert_spanner(2, r);
            for (int m = 3; m <= max_degree; ++m)
                for (const Tensor& t : spanners_[m - 1])
                    for (int g = 0; g < p.num_generators; ++g)
                        insert_spanner(m, bracket_with_generator(t, g));
        }
    }

    const QuadraticLiePresentation& presentation() const { return pres_; }
    int max_degree() const { return max_degree_; }
    const LyndonBasis& basis(int m) const { return bases_.at(m); }
    const exact::Echelon& ideal_echelon(int m) const { return echelons_.at(m); }

    Int free_dim(int m) const { return free_lie_dimension(pres_.num_generators, m); }

    Int quotient_dim(int m) const {
        if (m < 1 || m > max_degree_) throw std::out_of_range("quotient_dim degree");
        if (m == 1) return pres_.num_generators;
        return free_dim(m) - echelons_[m].rank();
    }

    std::vector<Int> graded_dims() const {
        std::vector<Int> out;
        for (int m = 1; m <= max_degree_; ++m) out.push_back(quotient_dim(m));
        return out;
    }

    // True iff the degree-|deg| Lie tensor lies in the ideal.
    bool contains(int m, const Tensor& t) const {
        return echelons_.at(m).reduce(bases_.at(m).coordinates(t)).empty();
    }

private:
    void insert_spanner(int m, const Tensor& t) {
        if (t.empty()) return;
        auto coords = bases_[m].coordinates(t);
        if (echelons_[m].insert(coords)) spanners_[m].push_back(t);
    }

    QuadraticLiePresentation pres_;
    int max_degree_;
    std::vector<LyndonBasis> bases_;
    std::vector<exact::Echelon> echelons_;
    std::vector<std::vector<Tensor>> spanners_;
};

inline std::vector<Int> graded_dims(const QuadraticLiePresentation& p, int max_degree) {
    return GradedIdeal(p, max_degree).graded_dims();
}

// Monotonicity sanity check: enlarging the relation set never raises a dim.
inline bool adding_relations_is_monotone(const QuadraticLiePresentation& a,
                                         const QuadraticLiePresentation& b,
                                         int max_degree) {
    auto da = graded_dims(a, max_degree), db = graded_dims(b, max_degree);
    for (size_t i = 0; i < da.size(); ++i)
        if (db[i] > da[i]) return false;
    return true;
}

// Rank of the degree-m component of xi_n : t_odd_1(n) -> t_2(n),
// nu_ijk -> [t_ij, t_jk]. The image of the degree-m part sits in word
// degree 2m of t_2(n).
class XiMap {
public:
    explicit XiMap(int n, int max_degree)
        : n_(n), todd_(n), dk_(n),
          source_(todd_.presentation(), std::max(max_degree, 2)),
          target_(dk_.presentation(), 2 * max_degree) {
        for (auto& t : todd_.triples) {
            int i = t[0], j = t[1], k = t[2];
            images_.push_back(bracket(generator(dk_.t_gen(i, j)),
                                      generator(dk_.t_gen(j, k))));
        }
    }

    // xi is well defined: every defining relation maps into the ideal.
    bool relations_map_into_ideal() const {
        for (auto& r : source_.presentation().relations) {
            Tensor image = substitute(r, images_);
            if (!target_.contains(4, image)) return false;
        }
        return true;
    }

    int rank(int m) const {
        const auto& tb = target_.basis(2 * m);
        exact::Echelon ech;
        for (auto& row : target_.ideal_echelon(2 * m).rows()) ech.insert(row);
        LyndonBasis sb(source_.presentation().num_generators, m);
        int r = 0;
        for (int i = 0; i < sb.dim(); ++i) {
            Tensor image = substitute(sb.from_coordinates({{i, Rational(1)}}), images_);
            if (ech.insert(tb.coordinates(image))) ++r;
        }
        return r;
    }

    Int source_dim(int m) const { return source_.quotient_dim(m); }

private:
    int n_;
    TOdd todd_;
    DrinfeldKohno dk_;
    GradedIdeal source_;
    GradedIdeal target_;
    std::vector<Tensor> images_;
};

inline int xi_rank(int n, int degree) {
    XiMap xi(n, degree);
    return xi.rank(degree);
}

struct KernelFreenessReport {
    std::vector<Int> kernel_dims;  // degrees 1..max_degree
    std::vector<Int> witt_dims;    // free Lie on n-1 letters
    bool match = false;
};

// Graded dims of ker(t_2(n) -> t_2(n-1)) versus the Witt numbers for the
// free Lie algebra on the n-1 killed generators.
inline KernelFreenessReport kernel_freeness_probe(int n, int max_degree) {
    KernelFreenessReport rep;
    auto dims_n = graded_dims(DrinfeldKohno(n).presentation(), max_degree);
    auto dims_n1 = graded_dims(DrinfeldKohno(n - 1).presentation(), max_degree);
    for (int m = 1; m <= max_degree; ++m) {
        rep.kernel_dims.push_back(dims_n[m - 1] - dims_n1[m - 1]);
        rep.witt_dims.push_back(free_lie_dimension(n - 1, m));
    }
    rep.match = rep.kernel_dims == rep.witt_dims;
    return rep;
}

// Truncated universal-envelope (PBW) series from graded Lie dimensions:
// prod_m (1 - t^m)^(-l_m).
inline std::vector<Int> pbw_envelope_dims(const std::vector<Int>& lie_dims, int order) {
    std::vector<Rational> series(order + 1, Rational(0));
    series[0] = 1;
    for (int m = 1; m <= (int)lie_dims.size() && m <= order; ++m) {
        // multiply by (1 - t^m)^(-l_m): repeated geometric factors
        Int l = lie_dims[m - 1];
        std::vector<Rational> factor(order + 1, Rational(0));
        // coefficients of (1-t^m)^(-l): binomial(l-1+j, j) at t^(m j)
        Rational binom = 1;
        for (int jj = 0; m * jj <= order; ++jj) {
            factor[m * jj] = binom;
            binom = binom * Rational(l + jj) / Rational(jj + 1);
        }
        std::vector<Rational> next(order + 1, Rational(0));
        for (int a = 0; a <= order; ++a)
            for (int b = 0; a + b <= order; ++b) next[a + b] += series[a] * factor[b];
        series = std::move(next);
    }
    std::vector<Int> out;
    for (auto& c : series) {
        if (c.get_den() != 1) throw std::logic_error("pbw series must be integral");
        out.push_back(c.get_num());
    }
    return out;
}

// Direct multiset count of PBW monomials of total degree N from graded dims.
inline Int pbw_monomial_count(const std::vector<Int>& lie_dims, int N) {
    std::vector<Int> dp(N + 1, 0);
    dp[0] = 1;
    for (int m = 1; m <= (int)lie_dims.size(); ++m) {
        long l = lie_dims[m - 1].get_si();
        // add l basis elements of degree m, one at a time (multisets)
        for (long copy = 0; copy < l; ++copy)
            for (int d = m; d <= N; ++d) dp[d] += dp[d - m];
    }
    return dp[N];
}

struct KoszulReport {
    std::vector<Int> lie_dims;       // graded dims of t_odd_1(n)
    std::vector<Int> envelope_dims;  // PBW series coefficients 0..max_degree
    bool pass = false;
};

// Numerical Koszulness witness: h_A(t) * h_U(-t) = 1 mod t^(max_degree+1),
// with h_A the Poincare polynomial of H^*(Mbar_{0,n+1}(R)) and h_U the PBW
// series of the quadratic dual Lie algebra.
inline KoszulReport koszul_check(int n, int max_degree) {
    KoszulReport rep;
    rep.lie_dims = graded_dims(TOdd(n).presentation(), max_degree);
    rep.envelope_dims = pbw_envelope_dims(rep.lie_dims, max_degree);
    auto h_a = series::poincare_polynomial(n);
    std::vector<Rational> prod(max_degree + 1, Rational(0));
    for (int a = 0; a <= max_degree; ++a) {
        if (a >= (int)h_a.size()) break;
        for (int b = 0; a + b <= max_degree; ++b) {
            Rational hu = Rational(rep.envelope_dims[b]);
            if (b % 2 == 1) hu = -hu;  // h_U(-t)
            prod[a + b] += Rational(h_a[a]) * hu;
        }
    }
    rep.pass = prod[0] == 1;
    for (int d = 1; d <= max_degree; ++d)
        if (!is_zero(prod[d])) rep.pass = false;
    return rep;
}

}  // namespace mosaic::lie
