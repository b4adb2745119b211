#include <catch2/catch_amalgamated.hpp>

#include "mosaic/cacti.hpp"

using namespace mosaic::cacti;

TEST_CASE("interval reversal permutations") {
    CHECK(spq_permutation(3, 1, 3) == Permutation{3, 2, 1});
    CHECK(spq_permutation(5, 2, 4) == Permutation{1, 4, 3, 2, 5});
    CHECK_THROWS(spq_permutation(3, 2, 2));
    CHECK_THROWS(spq_permutation(3, 1, 4));
    for (int n = 2; n <= 6; ++n)
        for (int p = 1; p < n; ++p)
            for (int q = p + 1; q <= n; ++q) {
                auto s = spq_permutation(n, p, q);
                CHECK(compose(s, s) == identity_perm(n));
            }
}

TEST_CASE("specific relation instances") {
    // s13 s12 = s23 s13 (word order = application order)
    CHECK(compose(spq_permutation(3, 1, 3), spq_permutation(3, 1, 2)) ==
          compose(spq_permutation(3, 2, 3), spq_permutation(3, 1, 3)));
    // disjoint intervals commute
    CHECK(compose(spq_permutation(4, 1, 2), spq_permutation(4, 3, 4)) ==
          compose(spq_permutation(4, 3, 4), spq_permutation(4, 1, 2)));
}

TEST_CASE("all relation families hold for n <= 8") {
    for (int n = 2; n <= 8; ++n) {
        auto rep = verify_cacti_relations(n);
        INFO("n=" << n);
        CHECK(rep.ok());
        CHECK(rep.checked > 0);
    }
}

TEST_CASE("commutor factorization") {
    // p = q-1 is a single adjacent block swap
    CHECK(commutor_factorization_check(5, 3, 4));
    // full reversal at n=4
    CHECK(commutor_composite(4, 1, 4) == Permutation{4, 3, 2, 1});
    for (int n = 2; n <= 7; ++n)
        for (int p = 1; p < n; ++p)
            for (int q = p + 1; q <= n; ++q) {
                INFO("n=" << n << " p=" << p << " q=" << q);
                CHECK(commutor_factorization_check(n, p, q));
            }
}

TEST_CASE("pure words") {
    CHECK(is_pure(CactiWord{}, 4));
    CHECK_FALSE(is_pure(CactiWord{{{1, 2}}}, 4));
    CHECK(is_pure(CactiWord{{{1, 2}, {1, 2}}}, 4));
    // the composed permutation decides purity
    CactiWord w{{{1, 2}, {1, 3}, {2, 3}, {1, 3}}};
    auto perm = word_permutation(w, 3);
    CHECK(is_pure(w, 3) == (perm == identity_perm(3)));
}
