#pragma once

#include <json.hpp>

#include "mosaic/free_operad.hpp"
#include "mosaic/sparse_matrix.hpp"

namespace mosaic::operads {

struct Presentation {
    std::string name;
    std::vector<Generator> generators;
    std::vector<std::pair<int, TermChain>> relations;  // (arity, chain)
};

namespace build {

inline Term apply(int gen, std::vector<Term> children) {
    Term t;
    t.gen = gen;
    t.children = std::move(children);
    return t;
}

inline Term x(int i) { return term_leaf(i); }

}  // namespace build

// ----- presets -----

inline Presentation preset_com() {
    using namespace build;
    Presentation p{"Com", {{"mu2", 2, 0, Symmetry::Symmetric}}, {}};
    auto q = [&](int a, int b, int c) {
        return apply(0, {apply(0, {x(a), x(b)}), x(c)});
    };
    for (auto [a, b, c] : {std::array{2, 3, 1}, std::array{3, 1, 2}}) {
        TermChain r;
        chain_add(r, q(1, 2, 3), Rational(1), p.generators);
        chain_add(r, q(a, b, c), Rational(-1), p.generators);
        p.relations.emplace_back(3, std::move(r));
    }
    return p;
}

inline Presentation preset_lie() {
    using namespace build;
    Presentation p{"Lie", {{"nu2", 2, 0, Symmetry::Skew}}, {}};
    TermChain r;
    for (auto [a, b, c] : {std::array{1, 2, 3}, std::array{2, 3, 1}, std::array{3, 1, 2}})
        chain_add(r, apply(0, {apply(0, {x(a), x(b)}), x(c)}), Rational(1), p.generators);
    p.relations.emplace_back(3, std::move(r));
    return p;
}

inline Presentation preset_as() {
    using namespace build;
    Presentation p{"As", {{"m2", 2, 0, Symmetry::None}}, {}};
    TermChain r;
    chain_add(r, apply(0, {apply(0, {x(1), x(2)}), x(3)}), Rational(1), p.generators);
    chain_add(r, apply(0, {x(1), apply(0, {x(2), x(3)})}), Rational(-1), p.generators);
    p.relations.emplace_back(3, std::move(r));
    return p;
}

inline Presentation preset_pois1() {
    using namespace build;
    Presentation p{"Pois1",
                   {{"mu2", 2, 0, Symmetry::Symmetric}, {"nu2", 2, 0, Symmetry::Skew}},
                   {}};
    const int MU = 0, NU = 1;
    {  // associativity of mu2 (symmetric form)
        for (auto [a, b, c] : {std::array{2, 3, 1}, std::array{3, 1, 2}}) {
            TermChain r;
            chain_add(r, apply(MU, {apply(MU, {x(1), x(2)}), x(3)}), Rational(1), p.generators);
            chain_add(r, apply(MU, {apply(MU, {x(a), x(b)}), x(c)}), Rational(-1), p.generators);
            p.relations.emplace_back(3, std::move(r));
        }
    }
    {  // Jacobi for nu2
        TermChain r;
        for (auto [a, b, c] : {std::array{1, 2, 3}, std::array{2, 3, 1}, std::array{3, 1, 2}})
            chain_add(r, apply(NU, {apply(NU, {x(a), x(b)}), x(c)}), Rational(1), p.generators);
        p.relations.emplace_back(3, std::move(r));
    }
    {  // Leibniz: nu2(mu2(x1,x2),x3) = mu2(x1,nu2(x2,x3)) + mu2(nu2(x1,x3),x2)
        TermChain r;
        chain_add(r, apply(NU, {apply(MU, {x(1), x(2)}), x(3)}), Rational(1), p.generators);
        chain_add(r, apply(MU, {x(1), apply(NU, {x(2), x(3)})}), Rational(-1), p.generators);
        chain_add(r, apply(MU, {apply(NU, {x(1), x(3)}), x(2)}), Rational(-1), p.generators);
        p.relations.emplace_back(3, std::move(r));
    }
    return p;
}

// [Com]^{Z_2}: one symmetric ternary generator, all quadratic monomials equal.
inline Presentation preset_com_z2() {
    using namespace build;
    Presentation p{"ComZ2", {{"mu3", 3, 0, Symmetry::Symmetric}}, {}};
    auto q = [&](int a, int b, int c, int d, int e) {
        return apply(0, {apply(0, {x(a), x(b), x(c)}), x(d), x(e)});
    };
    Term ref = q(1, 2, 4, 3, 5);
    for (int d = 1; d <= 5; ++d)
        for (int e = d + 1; e <= 5; ++e) {
            std::vector<int> rest;
            for (int i = 1; i <= 5; ++i)
                if (i != d && i != e) rest.push_back(i);
            Term other = q(rest[0], rest[1], rest[2], d, e);
            TermChain r;
            chain_add(r, ref, Rational(1), p.generators);
            chain_add(r, other, Rational(-1), p.generators);
            if (!r.empty()) p.relations.emplace_back(5, std::move(r));
        }
    return p;
}

namespace detail {
inline int perm_sign(const std::vector<int>& perm) {
    int sign = 1;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}
}  // namespace detail

// generalized Jacobi for a skew ternary generator (10 even-coset terms)
inline TermChain generalized_jacobi(int nu_gen, const std::vector<Generator>& gens) {
    using namespace build;
    TermChain r;
    for (int a = 1; a <= 5; ++a)
        for (int b = a + 1; b <= 5; ++b) {
            std::vector<int> rest;
            for (int i = 1; i <= 5; ++i)
                if (i != a && i != b) rest.push_back(i);
            int sgn = detail::perm_sign({a, b, rest[0], rest[1], rest[2]});
            chain_add(r,
                      apply(nu_gen, {x(a), x(b), apply(nu_gen, {x(rest[0]), x(rest[1]), x(rest[2])})}),
                      Rational(sgn), gens);
        }
    return r;
}

// Lie^odd: skew ternary generator of degree -1 with generalized Jacobi.
inline Presentation preset_lie_odd() {
    Presentation p{"LieOdd", {{"nu3", 3, -1, Symmetry::Skew}}, {}};
    p.relations.emplace_back(5, generalized_jacobi(0, p.generators));
    return p;
}

// Pois_1^odd: commutative product and ternary bracket.
inline Presentation preset_pois1_odd() {
    using namespace build;
    Presentation p{"Pois1Odd",
                   {{"mu2", 2, 0, Symmetry::Symmetric}, {"nu3", 3, -1, Symmetry::Skew}},
                   {}};
    const int MU = 0, NU = 1;
    for (auto [a, b, c] : {std::array{2, 3, 1}, std::array{3, 1, 2}}) {
        TermChain r;
        chain_add(r, apply(MU, {apply(MU, {x(1), x(2)}), x(3)}), Rational(1), p.generators);
        chain_add(r, apply(MU, {apply(MU, {x(a), x(b)}), x(c)}), Rational(-1), p.generators);
        p.relations.emplace_back(3, std::move(r));
    }
    {  // Leibniz: nu3(mu2(x1,x2),x3,x4) = mu2(x1,nu3(x2,x3,x4)) + mu2(nu3(x1,x3,x4),x2)
        TermChain r;
        chain_add(r, apply(NU, {apply(MU, {x(1), x(2)}), x(3), x(4)}), Rational(1), p.generators);
        chain_add(r, apply(MU, {x(1), apply(NU, {x(2), x(3), x(4)})}), Rational(-1), p.generators);
        chain_add(r, apply(MU, {apply(NU, {x(1), x(3), x(4)}), x(2)}), Rational(-1), p.generators);
        p.relations.emplace_back(4, std::move(r));
    }
    p.relations.emplace_back(5, generalized_jacobi(NU, p.generators));
    return p;
}

// [As]^{Z_2}: skew nu2 and symmetric mu3 with Jacobi and the Leibniz-type
// relation; the inhomogeneous quintic correction is handled separately.
inline Presentation preset_as_z2() {
    using namespace build;
    Presentation p{"AsZ2",
                   {{"nu2", 2, 0, Symmetry::Skew}, {"mu3", 3, 0, Symmetry::Symmetric}},
                   {}};
    const int NU = 0, MU = 1;
    {
        TermChain r;
        for (auto [a, b, c] : {std::array{1, 2, 3}, std::array{2, 3, 1}, std::array{3, 1, 2}})
            chain_add(r, apply(NU, {apply(NU, {x(a), x(b)}), x(c)}), Rational(1), p.generators);
        p.relations.emplace_back(3, std::move(r));
    }
    {  // nu2(mu3(x1,x2,x3),x4) = mu3(x1,x2,nu2(x3,x4)) + mu3(x1,nu2(x2,x4),x3)
       //                         + mu3(nu2(x1,x4),x2,x3)
        TermChain r;
        chain_add(r, apply(NU, {apply(MU, {x(1), x(2), x(3)}), x(4)}), Rational(1), p.generators);
        chain_add(r, apply(MU, {x(1), x(2), apply(NU, {x(3), x(4)})}), Rational(-1), p.generators);
        chain_add(r, apply(MU, {x(1), apply(NU, {x(2), x(4)}), x(3)}), Rational(-1), p.generators);
        chain_add(r, apply(MU, {apply(NU, {x(1), x(4)}), x(2), x(3)}), Rational(-1), p.generators);
        p.relations.emplace_back(4, std::move(r));
    }
    return p;
}

// ----- standard evaluation targets in As -----

inline AsElement as_commutator() {  // x1 x2 - x2 x1
    AsElement e = AsElement::monomial({1, 2});
    e.add({2, 1}, Rational(-1));
    return e;
}

inline AsElement as_symmetrized_product() {  // x1 x2 + x2 x1
    AsElement e = AsElement::monomial({1, 2});
    e.add({2, 1}, Rational(1));
    return e;
}

inline AsElement as_mu3() {  // sum over all six orderings
    AsElement e;
    e.arity = 3;
    for (auto& w : all_words(3)) e.add(w, Rational(1));
    return e;
}

inline std::map<std::string, AsElement> standard_as_assignment() {
    return {{"nu2", as_commutator()},
            {"mu2", as_symmetrized_product()},
            {"mu3", as_mu3()},
            {"m2", AsElement::monomial({1, 2})}};
}

// ----- invariant dimensions -----

enum class InvariantTarget { As, Pois1 };

// Dimension of the fixed subspace, as the rank of (id + action).
inline int invariant_dimension(InvariantTarget target, TauVariant variant, int n) {
    exact::Echelon ech;
    if (target == InvariantTarget::As) {
        exact::BasisRegistry<AsWord> reg;
        auto words = all_words(n);
        for (auto& w : words) reg.add(w);
        reg.freeze();
        for (auto& w : words) {
            AsElement e = AsElement::monomial(w) + tau_action(AsElement::monomial(w), variant);
            exact::SparseVec col;
            for (auto& [word, c] : e.terms) col.emplace_back(reg.index(word), c);
            exact::sort_and_compress(col);
            ech.insert(std::move(col));
        }
    } else {
        exact::BasisRegistry<PoisKey> reg;
        auto basis = pois_basis(n);
        for (auto& k : basis) reg.add(k);
        reg.freeze();
        for (auto& k : basis) {
            PoisElement e;
            e.arity = n;
            e.add(k, Rational(1));
            PoisElement s = e + pois_tau(e);
            exact::SparseVec col;
            for (auto& [key, c] : s.terms) col.emplace_back(reg.index(key), c);
            exact::sort_and_compress(col);
            ech.insert(std::move(col));
        }
    }
    return ech.rank();
}

// ----- relation kernels and quotients -----

struct KernelResult {
    std::vector<Term> basis;                 // free operad basis, ordered
    std::vector<exact::SparseVec> kernel;    // coordinates in `basis`
    int image_rank = 0;
};

// Kernel of the evaluation map from the arity-n free-operad span into As.
inline KernelResult relation_kernel_as(const std::vector<Generator>& gens,
                                       const std::map<std::string, AsElement>& assignment,
                                       int n) {
    KernelResult res;
    res.basis = free_operad_basis(gens, n);
    exact::BasisRegistry<AsWord> reg;
    for (auto& w : all_words(n)) reg.add(w);
    reg.freeze();
    exact::RationalMatrix m(reg.size(), (int)res.basis.size());
    for (int j = 0; j < (int)res.basis.size(); ++j) {
        AsElement e = evaluate_as(res.basis[j], gens, assignment);
        for (auto& [w, c] : e.terms) m.add(reg.index(w), j, c);
    }
    res.kernel = exact::kernel_basis(m);
    res.image_rank = (int)res.basis.size() - (int)res.kernel.size();
    return res;
}

// Kernel of the evaluation into Pois_1 under structural-operation
// assignments (e.g. mu2 -> product, nu2 -> bracket).
inline KernelResult relation_kernel_pois(const std::vector<Generator>& gens,
                                         const std::map<std::string, PoisOp>& assignment,
                                         int n) {
    KernelResult res;
    res.basis = free_operad_basis(gens, n);
    exact::BasisRegistry<PoisKey> reg;
    for (auto& k : pois_basis(n)) reg.add(k);
    reg.freeze();
    exact::RationalMatrix m(reg.size(), (int)res.basis.size());
    for (int j = 0; j < (int)res.basis.size(); ++j) {
        PoisElement e = evaluate_pois(res.basis[j], gens, assignment);
        for (auto& [k, c] : e.terms) m.add(reg.index(k), j, c);
    }
    res.kernel = exact::kernel_basis(m);
    res.image_rank = (int)res.basis.size() - (int)res.kernel.size();
    return res;
}

inline std::map<std::string, PoisOp> standard_pois_assignment() {
    return {{"mu2", [](const std::vector<PoisElement>& a) {
                 return pois_product(a.at(0), a.at(1));
             }},
            {"nu2", [](const std::vector<PoisElement>& a) {
                 return pois_bracket(a.at(0), a.at(1));
             }}};
}

// dim of the arity-n component of the operad presented by (gens, relations).
inline int presented_quotient_dim(const Presentation& p, int n) {
    auto basis = free_operad_basis(p.generators, n);
    exact::BasisRegistry<std::vector<int>> reg;
    for (auto& t : basis) reg.add(term_encoding(t));
    reg.freeze();
    exact::Echelon ech;
    for (auto& chain : ideal_span(p.generators, p.relations, n)) {
        exact::SparseVec v;
        for (auto& [t, c] : chain) v.emplace_back(reg.index(term_encoding(t)), c);
        exact::sort_and_compress(v);
        ech.insert(std::move(v));
    }
    return (int)basis.size() - ech.rank();
}

// The {nu2, mu3} free operad generates the full invariant suboperad: the
// evaluation image inside As(n) is tau-invariant of dimension n!/2.
inline bool generation_check(int n) {
    auto p = preset_as_z2();
    auto res = relation_kernel_as(p.generators, standard_as_assignment(), n);
    if (res.image_rank != (n <= 1 ? 1 : invariant_dimension(InvariantTarget::As,
                                                            TauVariant::SignedFlip, n)))
        return false;
    // and every evaluated term is invariant under the signed flip
    for (auto& t : free_operad_basis(p.generators, n)) {
        AsElement e = evaluate_as(t, p.generators, standard_as_assignment());
        if (!(tau_action(e, TauVariant::SignedFlip) == e)) return false;
    }
    return true;
}

// ----- eq-(11)-type nonhomogeneous relation probe -----

using NCPoly = std::map<std::string, Rational>;

namespace detail {
inline NCPoly nc_product(const NCPoly& a, const NCPoly& b) {
    NCPoly out;
    for (auto& [u, cu] : a)
        for (auto& [v, cv] : b) {
            Rational c = cu * cv;
            auto it = out.find(u + v);
            if (it == out.end())
                out.emplace(u + v, c);
            else {
                it->second += c;
                if (is_zero(it->second)) out.erase(it);
            }
        }
    return out;
}

inline NCPoly nc_add(NCPoly a, const NCPoly& b, const Rational& scale = Rational(1)) {
    for (auto& [w, c] : b) {
        auto it = a.find(w);
        Rational v = c * scale;
        if (it == a.end())
            a.emplace(w, v);
        else {
            it->second += v;
            if (is_zero(it->second)) a.erase(it);
        }
    }
    return a;
}

inline NCPoly nc_commutator(const NCPoly& a, const NCPoly& b) {
    return nc_add(nc_product(a, b), nc_product(b, a), Rational(-1));
}

inline NCPoly nc_mu3(const NCPoly& a, const NCPoly& b, const NCPoly& c) {
    NCPoly out;
    const NCPoly* p[3] = {&a, &b, &c};
    int idx[3] = {0, 1, 2};
    std::sort(idx, idx + 3);
    do {
        out = nc_add(out, nc_product(nc_product(*p[idx[0]], *p[idx[1]]), *p[idx[2]]));
    } while (std::next_permutation(idx, idx + 3));
    return out;
}
}  // namespace detail

struct Eq11Report {
    bool lhs_invariant = false;       // LHS lies in the signed-flip invariants
    bool membership = false;          // LHS lies in the homogeneity >= 3 image
    bool zero_on_equal_args = false;  // LHS vanishes when all inputs coincide
    NCPoly lhs_specialized;           // at (a,a,a,b,b)
    NCPoly paper_rhs_first_term;      // B(a,a,a,b,b) as printed
    NCPoly residual;                  // lhs_specialized - paper_rhs_first_term
    // there is a multilinear correction C of homogeneity >= 3 with
    // LHS = C(x1..x5) - C(x1,x2,x4,x3,x5) whose polarization at
    // (a,a,a,b,b) equals the printed B
    bool polarized_b_consistent = false;
};

inline Eq11Report verify_eq11_shape() {
    using namespace build;
    Eq11Report rep;
    auto p = preset_as_z2();
    auto assign = standard_as_assignment();
    const int MU = 1;

    Term lhs1 = apply(MU, {apply(MU, {x(1), x(2), x(4)}), x(3), x(5)});
    Term lhs2 = apply(MU, {apply(MU, {x(1), x(2), x(3)}), x(4), x(5)});
    AsElement lhs = evaluate_as(lhs1, p.generators, assign) -
                    evaluate_as(lhs2, p.generators, assign);
    rep.lhs_invariant = (tau_action(lhs, TauVariant::SignedFlip) == lhs);

    // span of evaluations of monomials that use at least three generators
    exact::BasisRegistry<AsWord> reg;
    for (auto& w : all_words(5)) reg.add(w);
    reg.freeze();
    auto count_gens = [](const Term& t) {
        std::function<int(const Term&)> rec = [&](const Term& u) -> int {
            if (u.is_leaf()) return 0;
            int k = 1;
            for (auto& c : u.children) k += rec(c);
            return k;
        };
        return rec(t);
    };
    std::vector<exact::SparseVec> cols;
    for (auto& t : free_operad_basis(p.generators, 5)) {
        if (count_gens(t) < 3) continue;
        AsElement e = evaluate_as(t, p.generators, assign);
        exact::SparseVec v;
        for (auto& [w, c] : e.terms) v.emplace_back(reg.index(w), c);
        exact::sort_and_compress(v);
        cols.push_back(std::move(v));
    }
    exact::RationalMatrix span(reg.size(), (int)cols.size());
    for (int j = 0; j < (int)cols.size(); ++j)
        for (auto& [i, c] : cols[j]) span.add(i, j, c);
    exact::SparseVec lhs_vec;
    for (auto& [w, c] : lhs.terms) lhs_vec.emplace_back(reg.index(w), c);
    exact::sort_and_compress(lhs_vec);
    rep.membership = exact::image_membership(span, lhs_vec);

    // specializations in the free associative algebra on {a, b}
    auto specialize = [](const AsElement& e, const std::string& letters) {
        NCPoly out;
        for (auto& [w, c] : e.terms) {
            std::string word;
            for (int l : w) word += letters[l - 1];
            auto it = out.find(word);
            if (it == out.end())
                out.emplace(word, c);
            else {
                it->second += c;
                if (is_zero(it->second)) out.erase(it);
            }
        }
        return out;
    };
    rep.zero_on_equal_args = specialize(lhs, "aaaaa").empty();
    rep.lhs_specialized = specialize(lhs, "aaabb");

    NCPoly a{{"a", Rational(1)}}, b{{"b", Rational(1)}};
    using detail::nc_commutator;
    using detail::nc_mu3;
    using detail::nc_add;
    NCPoly B;
    B = nc_add(B, nc_mu3(nc_commutator(a, b), nc_commutator(a, b), a), Rational(3));
    B = nc_add(B, nc_mu3(nc_commutator(a, nc_commutator(a, b)), a, b), Rational(6));
    B = nc_add(B, nc_commutator(b, nc_commutator(a, nc_commutator(a, nc_commutator(a, b)))),
               Rational(6, 5));
    B = nc_add(B, nc_commutator(a, nc_commutator(b, nc_commutator(a, nc_commutator(b, a)))),
               Rational(18, 5));
    rep.paper_rhs_first_term = B;
    rep.residual = nc_add(rep.lhs_specialized, B, Rational(-1));

    // Feasibility of the printed coefficients: look for a combination C of
    // homogeneity >= 3 monomials with both
    //   C(x1..x5) - C(x1,x2,x4,x3,x5) = LHS    in As(5)
    //   C(a,a,a,b,b) = B                        in the free algebra on {a,b}
    // as one linear system over the evaluation columns.
    {
        // all degree-(3,2) words in a, b index the polarized block
        std::vector<std::string> ab_words;
        {
            std::string base = "aaabb";
            std::sort(base.begin(), base.end());
            do {
                ab_words.push_back(base);
            } while (std::next_permutation(base.begin(), base.end()));
        }
        const int as_rows = reg.size();
        exact::Echelon ech;
        std::vector<exact::SparseVec> columns;
        auto swap34 = [](const Term& t) {
            std::function<Term(const Term&)> rec = [&](const Term& u) -> Term {
                if (u.is_leaf()) {
                    if (u.leaf == 3) return term_leaf(4);
                    if (u.leaf == 4) return term_leaf(3);
                    return u;
                }
                Term r;
                r.gen = u.gen;
                for (auto& c : u.children) r.children.push_back(rec(c));
                return r;
            };
            return rec(t);
        };
        std::map<std::string, int> ab_index;
        for (size_t i = 0; i < ab_words.size(); ++i) ab_index[ab_words[i]] = (int)i;
        for (auto& t : free_operad_basis(p.generators, 5)) {
            if (count_gens(t) < 3) continue;
            AsElement diff = evaluate_as(t, p.generators, assign) -
                             evaluate_as(swap34(t), p.generators, assign);
            exact::SparseVec col;
            for (auto& [w, c] : diff.terms) col.emplace_back(reg.index(w), c);
            NCPoly pol = specialize(evaluate_as(t, p.generators, assign), "aaabb");
            for (auto& [w, c] : pol) col.emplace_back(as_rows + ab_index.at(w), c);
            exact::sort_and_compress(col);
            columns.push_back(std::move(col));
        }
        for (auto& col : columns) ech.insert(col);
        exact::SparseVec target = lhs_vec;
        for (auto& [w, c] : B) target.emplace_back(as_rows + ab_index.at(w), c);
        exact::sort_and_compress(target);
        rep.polarized_b_consistent = ech.reduce(target).empty();
    }
    return rep;
}

// ----- Hopf coideal check for Pois_1^odd -----

namespace detail {

using TensorChain = std::map<std::pair<Term, Term>, Rational>;

inline void tensor_add(TensorChain& t, const Term& a, const Term& b, const Rational& c,
                       const std::vector<Generator>& gens) {
    auto na = normalize_term(a, gens), nb = normalize_term(b, gens);
    if (!na || !nb || is_zero(c)) return;
    Rational v = c * na->second * nb->second;
    auto key = std::make_pair(na->first, nb->first);
    auto it = t.find(key);
    if (it == t.end())
        t.emplace(std::move(key), v);
    else {
        it->second += v;
        if (is_zero(it->second)) t.erase(it);
    }
}

// Hopf coproduct on the free operad over {mu2, nu3}, defined on the
// generators by Delta(mu2) = mu2 (x) mu2 and
// Delta(nu3) = mu3 (x) nu3 + nu3 (x) mu3 with mu3 = mu2(mu2(-,-),-),
// extended as an operad map into the tensor-product operad (Koszul signs
// from the degree of nu3).
inline TensorChain delta_term(const Term& t, const std::vector<Generator>& gens) {
    TensorChain out;
    if (t.is_leaf()) {
        tensor_add(out, t, t, Rational(1), gens);
        return out;
    }
    using namespace build;
    std::vector<std::pair<Term, Term>> delta_gen;
    if (gens[t.gen].name == "mu2") {
        Term mu = apply(t.gen, {x(1), x(2)});
        delta_gen.emplace_back(mu, mu);
    } else {  // nu3
        int mu_idx = -1;
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == "mu2") mu_idx = (int)i;
        Term mu3 = apply(mu_idx, {apply(mu_idx, {x(1), x(2)}), x(3)});
        Term nu3 = apply(t.gen, {x(1), x(2), x(3)});
        delta_gen.emplace_back(mu3, nu3);
        delta_gen.emplace_back(nu3, mu3);
    }
    // recurse on children
    std::vector<TensorChain> child_delta;
    for (auto& c : t.children) child_delta.push_back(delta_term(c, gens));
    for (auto& [A, B] : delta_gen) {
        int degB = term_degree(B, gens);
        // iterate over all choices of child tensor components
        std::vector<std::vector<std::pair<std::pair<Term, Term>, Rational>>> opts;
        for (auto& cd : child_delta)
            opts.emplace_back(cd.begin(), cd.end());
        std::vector<size_t> idx(opts.size(), 0);
        while (true) {
            Rational coef(1);
            int sign_exp = 0;
            int prefix_b_deg = degB;
            std::vector<TermChain> left_args, right_args;
            for (size_t q = 0; q < opts.size(); ++q) {
                auto& [pair_q, c_q] = opts[q][idx[q]];
                coef *= c_q;
                int deg_aq = term_degree(pair_q.first, gens);
                sign_exp += deg_aq * prefix_b_deg;
                prefix_b_deg += term_degree(pair_q.second, gens);
                left_args.push_back(TermChain{{pair_q.first, Rational(1)}});
                right_args.push_back(TermChain{{pair_q.second, Rational(1)}});
            }
            if (sign_exp % 2) coef = -coef;
            TermChain left = graft_all(A, left_args, gens);
            TermChain right = graft_all(B, right_args, gens);
            for (auto& [lt, lc] : left)
                for (auto& [rt, rc] : right)
                    tensor_add(out, lt, rt, coef * lc * rc, gens);
            size_t q = 0;
            while (q < idx.size() && ++idx[q] == opts[q].size()) idx[q++] = 0;
            if (q == idx.size()) break;
        }
    }
    return out;
}

}  // namespace detail

// True iff Delta maps the arity-n defining relation(s) of Pois_1^odd into
// ideal (x) free + free (x) ideal, i.e. the image vanishes in the quotient
// tensor square.
inline bool check_hopf_coideal(int n) {
    if (n < 3 || n > 5) throw std::invalid_argument("check_hopf_coideal: 3 <= n <= 5");
    auto p = preset_pois1_odd();
    auto basis = free_operad_basis(p.generators, n);
    exact::BasisRegistry<std::vector<int>> reg;
    for (auto& t : basis) reg.add(term_encoding(t));
    reg.freeze();
    const int D = reg.size();

    exact::RationalMatrix ideal(D, 0);
    {
        auto chains = ideal_span(p.generators, p.relations, n);
        ideal = exact::RationalMatrix(D, (int)chains.size());
        for (int j = 0; j < (int)chains.size(); ++j)
            for (auto& [t, c] : chains[j]) ideal.add(reg.index(term_encoding(t)), j, c);
    }
    auto functionals = exact::kernel_basis(ideal.transpose());
    exact::RationalMatrix K(D, (int)functionals.size());
    for (int j = 0; j < (int)functionals.size(); ++j)
        for (auto& [i, c] : functionals[j]) K.add(i, j, c);

    for (auto& [arity, rel] : p.relations) {
        if (arity != n) continue;
        detail::TensorChain V;
        for (auto& [t, c] : rel) {
            auto dt = detail::delta_term(t, p.generators);
            for (auto& [pr, v] : dt) {
                auto it = V.find(pr);
                if (it == V.end())
                    V.emplace(pr, v * c);
                else {
                    it->second += v * c;
                    if (is_zero(it->second)) V.erase(it);
                }
            }
        }
        exact::RationalMatrix vm(D, D);
        for (auto& [pr, c] : V)
            vm.add(reg.index(term_encoding(pr.first)), reg.index(term_encoding(pr.second)), c);
        auto reduced = exact::multiply(exact::multiply(K.transpose(), vm), K);
        if (!reduced.is_zero_matrix()) return false;
    }
    return true;
}

// ----- the quadratic cohomology algebra of Mbar_{0,n+1}(R) -----

// Graded dimensions of the skew-commutative algebra on degree-one
// generators nu_T (T a 3-subset of {1..n}) modulo
//   nu_ijk nu_ijl = 0   and the five-term cyclic relations.
inline std::vector<int> cohomology_algebra_dims(int n, int max_degree) {
    if (max_degree > 3) throw std::invalid_argument("cohomology_algebra_dims: degree <= 3");
    std::vector<std::array<int, 3>> gens;
    std::map<std::array<int, 3>, int> gen_index;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                gen_index[{i, j, k}] = (int)gens.size();
                gens.push_back({i, j, k});
            }
    const int G = (int)gens.size();
    auto nu = [&](int i, int j, int k) -> std::pair<int, int> {
        if (i == j || j == k || i == k) return {0, -1};
        int sign = 1;
        if (i > j) { std::swap(i, j); sign = -sign; }
        if (j > k) { std::swap(j, k); sign = -sign; }
        if (i > j) { std::swap(i, j); sign = -sign; }
        return {sign, gen_index.at({i, j, k})};
    };
    // wedge-pair index in Lambda^2
    auto pair_id = [&](int a, int b) { return a < b ? a * G + b : b * G + a; };
    exact::BasisRegistry<int> reg2;
    for (int a = 0; a < G; ++a)
        for (int b = a + 1; b < G; ++b) reg2.add(a * G + b);
    reg2.freeze();

    std::vector<exact::SparseVec> quad_rels;
    auto wedge = [&](std::pair<int, int> u, std::pair<int, int> v)
        -> std::optional<std::pair<int, Rational>> {
        auto [su, gu] = u;
        auto [sv, gv] = v;
        if (su == 0 || sv == 0 || gu == gv) return std::nullopt;
        int sign = su * sv * (gu < gv ? 1 : -1);
        return std::pair{reg2.index(pair_id(gu, gv)), Rational(sign)};
    };
    // nu_ijk nu_ijl = 0 whenever the triples share two indices
    for (int a = 0; a < G; ++a)
        for (int b = a + 1; b < G; ++b) {
            int common = 0;
            for (int x : gens[a])
                for (int y : gens[b])
                    if (x == y) ++common;
            if (common >= 2) quad_rels.push_back({{reg2.index(pair_id(a, b)), Rational(1)}});
        }
    // five-term relations over all arrangements of five distinct indices
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 1);
    if (n >= 5) {
        std::vector<int> sel(5);
        std::function<void(int, int)> choose = [&](int pos, int next) {
            if (pos == 5) {
                std::sort(sel.begin(), sel.end());
                do {
                    int i = sel[0], j = sel[1], k = sel[2], l = sel[3], m = sel[4];
                    exact::SparseVec rel;
                    auto add_term = [&](std::pair<int, int> u, std::pair<int, int> v) {
                        auto w = wedge(u, v);
                        if (w) rel.emplace_back(w->first, w->second);
                    };
                    add_term(nu(i, j, k), nu(k, l, m));
                    add_term(nu(j, k, l), nu(l, m, i));
                    add_term(nu(k, l, m), nu(m, i, j));
                    add_term(nu(l, m, i), nu(i, j, k));
                    add_term(nu(m, i, j), nu(j, k, l));
                    exact::sort_and_compress(rel);
                    if (!rel.empty()) quad_rels.push_back(std::move(rel));
                } while (std::next_permutation(sel.begin(), sel.end()));
                return;
            }
            for (int v = next; v <= n; ++v) {
                sel[pos] = v;
                choose(pos + 1, v + 1);
            }
        };
        choose(0, 1);
    }

    std::vector<int> dims{1};
    if (max_degree >= 1) dims.push_back(G);
    exact::Echelon ech2;
    for (auto& r : quad_rels) ech2.insert(r);
    if (max_degree >= 2) dims.push_back(reg2.size() - ech2.rank());
    if (max_degree >= 3) {
        exact::BasisRegistry<std::vector<int>> reg3;
        for (int a = 0; a < G; ++a)
            for (int b = a + 1; b < G; ++b)
                for (int c = b + 1; c < G; ++c) reg3.add({a, b, c});
        reg3.freeze();
        exact::Echelon ech3;
        for (auto& r : quad_rels) {
            for (int g = 0; g < G; ++g) {
                exact::SparseVec v3;
                for (auto& [pid, coef] : r) {
                    int a = reg2.key(pid) / G, b = reg2.key(pid) % G;
                    if (g == a || g == b) continue;
                    // sort (a, b, g) with sign
                    std::array<int, 3> tri{a, b, g};
                    int sign = 1;
                    if (tri[0] > tri[1]) { std::swap(tri[0], tri[1]); sign = -sign; }
                    if (tri[1] > tri[2]) { std::swap(tri[1], tri[2]); sign = -sign; }
                    if (tri[0] > tri[1]) { std::swap(tri[0], tri[1]); sign = -sign; }
                    v3.emplace_back(reg3.index({tri[0], tri[1], tri[2]}), coef * sign);
                }
                exact::sort_and_compress(v3);
                if (!v3.empty()) ech3.insert(std::move(v3));
            }
        }
        dims.push_back(reg3.size() - ech3.rank());
    }
    return dims;
}

// ----- JSON (de)serialization of presentations -----

inline nlohmann::json term_to_json(const Term& t, const std::vector<Generator>& gens) {
    if (t.is_leaf()) return t.leaf;
    nlohmann::json j;
    j["gen"] = gens[t.gen].name;
    nlohmann::json args = nlohmann::json::array();
    for (auto& c : t.children) args.push_back(term_to_json(c, gens));
    j["args"] = args;
    return j;
}

inline Term term_from_json(const nlohmann::json& j, const std::vector<Generator>& gens) {
    if (j.is_number_integer()) return term_leaf(j.get<int>());
    Term t;
    std::string name = j.at("gen").get<std::string>();
    t.gen = -1;
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name) t.gen = (int)i;
    if (t.gen < 0) throw std::invalid_argument("unknown generator " + name);
    for (auto& a : j.at("args")) t.children.push_back(term_from_json(a, gens));
    if ((int)t.children.size() != gens[t.gen].arity)
        throw std::invalid_argument("arity mismatch for " + name);
    return t;
}

inline nlohmann::json presentation_to_json(const Presentation& p) {
    nlohmann::json j;
    j["name"] = p.name;
    j["generators"] = nlohmann::json::array();
    for (auto& g : p.generators) {
        std::string sym = g.sym == Symmetry::Symmetric ? "symmetric"
                          : g.sym == Symmetry::Skew    ? "skew"
                                                       : "none";
        j["generators"].push_back(
            {{"name", g.name}, {"arity", g.arity}, {"degree", g.degree}, {"symmetry", sym}});
    }
    j["relations"] = nlohmann::json::array();
    for (auto& [arity, chain] : p.relations) {
        nlohmann::json rel = nlohmann::json::array();
        for (auto& [t, c] : chain)
            rel.push_back({{"coef", to_string(c)}, {"term", term_to_json(t, p.generators)}});
        j["relations"].push_back({{"arity", arity}, {"terms", rel}});
    }
    return j;
}

inline Presentation presentation_from_json(const nlohmann::json& j) {
    Presentation p;
    p.name = j.value("name", "custom");
    for (auto& g : j.at("generators")) {
        Generator gen;
        gen.name = g.at("name").get<std::string>();
        gen.arity = g.at("arity").get<int>();
        gen.degree = g.value("degree", 0);
        std::string sym = g.value("symmetry", "none");
        gen.sym = sym == "symmetric" ? Symmetry::Symmetric
                  : sym == "skew"    ? Symmetry::Skew
                                     : Symmetry::None;
        p.generators.push_back(gen);
    }
    for (auto& r : j.at("relations")) {
        TermChain chain;
        for (auto& t : r.at("terms")) {
            Rational c(t.at("coef").get<std::string>());
            c.canonicalize();
            chain_add(chain, term_from_json(t.at("term"), p.generators), c, p.generators);
        }
        p.relations.emplace_back(r.at("arity").get<int>(), std::move(chain));
    }
    return p;
}

inline Presentation preset_by_name(const std::string& name) {
    if (name == "Com") return preset_com();
    if (name == "Lie") return preset_lie();
    if (name == "As") return preset_as();
    if (name == "Pois1") return preset_pois1();
    if (name == "ComZ2") return preset_com_z2();
    if (name == "LieOdd") return preset_lie_odd();
    if (name == "Pois1Odd") return preset_pois1_odd();
    if (name == "AsZ2") return preset_as_z2();
    throw std::invalid_argument("unknown preset " + name);
}

}  // namespace mosaic::operads
