#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mosaic/sparse_matrix.hpp"

using namespace mosaic;
using namespace mosaic::exact;

namespace {

RationalMatrix from_rows(std::vector<std::vector<long>> rows) {
    int r = (int)rows.size();
    int c = rows.empty() ? 0 : (int)rows[0].size();
    RationalMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(i, j, rat(rows[i][j]));
    return m;
}

}  // namespace

TEST_CASE("rank basics") {
    CHECK(rank(RationalMatrix(0, 0)) == 0);
    CHECK(rank(RationalMatrix::identity(3)) == 3);
    // [[1,2,3],[2,4,6]] has rank 1 (second row is twice the first).
    CHECK(rank(from_rows({{1, 2, 3}, {2, 4, 6}})) == 1);
    CHECK(rank(from_rows({{1, 2}, {3, 4}})) == 2);
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(RationalMatrix::identity(4)).empty());
    CHECK(kernel_basis(RationalMatrix(2, 2)).size() == 2);

    auto k = kernel_basis(from_rows({{1, 1}}));
    REQUIRE(k.size() == 1);
    // proportional to (1, -1)
    REQUIRE(k[0].size() == 2);
    CHECK(k[0][0].second == -k[0][1].second);

    // every kernel vector is annihilated exactly
    auto m = from_rows({{2, 4, 1, 3}, {0, 5, 2, 2}, {2, 9, 3, 5}});
    for (auto& v : kernel_basis(m)) CHECK(m.apply(v).empty());
    CHECK(rank(m) + (int)kernel_basis(m).size() == m.cols());
}

TEST_CASE("image membership") {
    auto m = from_rows({{1}, {0}});
    CHECK(image_membership(m, {}));                       // zero vector
    CHECK(image_membership(m, {{0, rat(3)}}));            // 3*(1,0)
    CHECK_FALSE(image_membership(m, {{1, rat(1)}}));      // (0,1)
    CHECK(image_membership(RationalMatrix::identity(3), {{0, rat(1)}, {2, rat(-7, 2)}}));
    CHECK_THROWS(image_membership(m, {{5, rat(1)}}));
}

TEST_CASE("rank/kernel identities on random sparse matrices") {
    std::mt19937 rng(20260810);
    std::uniform_int_distribution<int> dim_dist(1, 14), val(-4, 4);
    for (int iter = 0; iter < 40; ++iter) {
        int r = dim_dist(rng), c = dim_dist(rng);
        RationalMatrix m(r, c);
        std::uniform_int_distribution<int> den(1, 3);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (rng() % 3 == 0) m.set(i, j, rat(val(rng), den(rng)));

        int rk = rank(m);
        auto ker = kernel_basis(m);
        CHECK(rk + (int)ker.size() == c);
        CHECK(rank(m.transpose()) == rk);
        for (auto& v : ker) CHECK(m.apply(v).empty());

        // pivot-order invariance: permuting rows and columns preserves rank
        RationalMatrix p(r, c);
        std::vector<int> rp(r), cp(c);
        for (int i = 0; i < r; ++i) rp[i] = i;
        for (int j = 0; j < c; ++j) cp[j] = j;
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) p.set(i, j, m.at(rp[i], cp[j]));
        CHECK(rank(p) == rk);
    }
}

TEST_CASE("matrix multiply and apply") {
    auto a = from_rows({{1, 2}, {3, 4}});
    auto b = from_rows({{0, 1}, {1, 0}});
    auto ab = multiply(a, b);
    CHECK(ab.at(0, 0) == 2);
    CHECK(ab.at(0, 1) == 1);
    CHECK(ab.at(1, 0) == 4);
    CHECK(ab.at(1, 1) == 3);
}

TEST_CASE("basis registry is sorted and deterministic") {
    BasisRegistry<std::string> reg;
    reg.add("b");
    reg.add("a");
    reg.add("c");
    reg.add("a");
    reg.freeze();
    CHECK(reg.size() == 3);
    CHECK(reg.index("a") == 0);
    CHECK(reg.index("b") == 1);
    CHECK(reg.index("c") == 2);
    CHECK(reg.key(2) == "c");
    CHECK_THROWS(reg.index("zz"));
}

TEST_CASE("sparse vector normalization") {
    SparseVec v{{0, rat(-2, 3)}, {4, rat(4, 3)}};
    normalize_primitive(v);
    CHECK(v[0].second == 1);
    CHECK(v[1].second == -2);
}
