#include <doctest.h>

#include "siegel/generate.hpp"
#include "siegel/npoly_matrix.hpp"

using namespace siegel;

namespace {

FieldPtr Q() { return FieldSpec::rationals(); }
FieldPtr F7() { return FieldSpec::finite(7); }
FieldPtr Qt() { return FieldSpec::ratfunc(FieldSpec::rationals(), "theta"); }

}  // namespace

TEST_CASE("basic matrix algebra") {
    Rng rng(1);
    RandomValueOptions opts;
    Mat A = random_mat(rng, Q(), 3, 3, opts);
    CHECK(Mat::identity(Q(), 3) * A == A);
    CHECK(A.transpose().transpose() == A);
    Mat B = random_mat(rng, Q(), 2, 5, opts);
    Mat empty(Q(), 0, 2);
    Mat prod = empty * B;
    CHECK(prod.rows() == 0);
    CHECK(prod.cols() == 5);
    // k x 0 times 0 x j is the k x j zero matrix
    Mat left(Q(), 3, 0), right(Q(), 0, 4);
    CHECK((left * right) == Mat::zero(Q(), 3, 4));
    CHECK_THROWS_AS(A * B, DimensionMismatch);
    CHECK_THROWS_AS(A + B, DimensionMismatch);
}

TEST_CASE("exact solving") {
    Rng rng(2);
    RandomValueOptions opts;
    SUBCASE("identity system") {
        Mat B = random_mat(rng, Q(), 4, 2, opts);
        CHECK(solve_exact(Mat::identity(Q(), 4), B) == B);
    }
    SUBCASE("random 6x6 over Q(theta), multiply back") {
        RandomValueOptions topts{2, 1, 1, 20};
        for (int trial = 0; trial < 5; ++trial) {
            Mat A = random_mat(rng, Qt(), 6, 6, topts);
            if (rank(A) < 6) continue;
            Mat B = random_mat(rng, Qt(), 6, 2, topts);
            CHECK(A * solve_exact(A, B) == B);
        }
    }
    SUBCASE("errors") {
        Mat A(Q(), 2, 2);
        A.set(0, 0, FieldValue::one(Q()));
        A.set(1, 0, FieldValue::one(Q()));  // rank 1
        Mat b(Q(), 2, 1);
        b.set(0, 0, FieldValue::one(Q()));
        CHECK_THROWS_AS(solve_exact(A, b), Inconsistent);
        Mat b2(Q(), 2, 1);
        b2.set(0, 0, FieldValue::one(Q()));
        b2.set(1, 0, FieldValue::one(Q()));
        CHECK_THROWS_AS(solve_exact(A, b2), Singular);  // consistent but rank-deficient
    }
}

TEST_CASE("express_in_span") {
    auto F = Q();
    Mat e1(F, 3, 1), e2(F, 3, 1);
    e1.set(0, 0, FieldValue::one(F));
    e2.set(1, 0, FieldValue::one(F));
    Mat target(F, 3, 1);
    target.set(0, 0, FieldValue::integer(F, 3));
    target.set(1, 0, FieldValue::integer(F, -1));
    Mat c = express_in_span({e1, e2}, target);
    CHECK(c.at(0, 0) == FieldValue::integer(F, 3));
    CHECK(c.at(1, 0) == FieldValue::integer(F, -1));
    Mat outside(F, 3, 1);
    outside.set(2, 0, FieldValue::one(F));
    CHECK_THROWS_AS(express_in_span({e1, e2}, outside), NotInSpan);
}

TEST_CASE("kernel basis spans the right kernel") {
    Rng rng(3);
    RandomValueOptions opts;
    for (int trial = 0; trial < 20; ++trial) {
        Mat A = random_mat(rng, F7(), 3, 5, opts);
        Mat K = kernel_basis(A);
        CHECK(K.cols() == 5 - rank(A));
        CHECK((A * K).is_zero());
        CHECK(rank(K) == K.cols());
    }
}

TEST_CASE("skew block indexing") {
    // shape k = (1,1,1), m = 2: block (2,2) of a 3x3 matrix is the center
    BlockShape shape = BlockShape::skew({1, 1, 1});
    Rng rng(4);
    RandomValueOptions opts;
    Mat M = random_mat(rng, Q(), 3, 3, opts);
    Mat center = block_get(M, shape, 2, 2);
    CHECK(center.rows() == 1);
    CHECK(center.cols() == 1);
    CHECK(center.at(0, 0) == M.at(1, 1));

    // zero-size blocks are legal and set is a no-op on them
    BlockShape zshape = BlockShape::skew({0, 2, 1});
    Mat Z = random_mat(rng, Q(), 3, 3, opts);
    Mat blk = block_get(Z, zshape, 1, 3);  // 0 x 0
    CHECK(blk.rows() == 0);
    Mat before = Z;
    block_set(Z, zshape, 1, 3, blk);
    CHECK(Z == before);

    // reassembling all blocks reproduces M
    Mat R(Q(), 3, 3);
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) block_set(R, shape, a, b, block_get(M, shape, a, b));
    CHECK(R == M);

    CHECK_THROWS_AS(block_get(M, shape, 0, 1), BadBlockIndex);
    CHECK_THROWS_AS(block_set(M, shape, 1, 1, Mat::zero(Q(), 2, 2)), SizeMismatch);
}

TEST_CASE("block unitriangular inversion") {
    auto F = F7();
    SUBCASE("identity") {
        CHECK(block_unitriangular_inverse(Mat::identity(F, 4), {2, 2}) == Mat::identity(F, 4));
    }
    SUBCASE("two blocks force the sign flip") {
        Rng rng(5);
        RandomValueOptions opts;
        Mat A = random_mat(rng, F, 2, 3, opts);
        Mat M = Mat::identity(F, 5);
        BlockShape shape = BlockShape::square({2, 3});
        block_set(M, shape, 1, 2, A);
        Mat inv = block_unitriangular_inverse(M, {2, 3});
        CHECK(block_get(inv, shape, 1, 2) == -A);
        CHECK(M * inv == Mat::identity(F, 5));
    }
    SUBCASE("random four-block, multiply back and oracle equivalence") {
        Rng rng(6);
        RandomValueOptions opts;
        std::vector<int> sizes{1, 2, 0, 2};
        BlockShape shape = BlockShape::square(sizes);
        for (int trial = 0; trial < 10; ++trial) {
            Mat M = Mat::identity(F, 5);
            for (int a = 1; a <= 4; ++a)
                for (int b = a + 1; b <= 4; ++b)
                    block_set(M, shape, a, b,
                              random_mat(rng, F, sizes[static_cast<size_t>(a - 1)],
                                         sizes[static_cast<size_t>(b - 1)], opts));
            Mat inv = block_unitriangular_inverse(M, sizes);
            REQUIRE(M * inv == Mat::identity(F, 5));
            REQUIRE(inv * M == Mat::identity(F, 5));
            REQUIRE(inv == solve_exact(M, Mat::identity(F, 5)));
            // padding with empty blocks changes nothing
            Mat inv_padded = block_unitriangular_inverse(M, {0, 1, 2, 0, 0, 2, 0});
            REQUIRE(inv_padded == inv);
        }
    }
    SUBCASE("rejects non-unitriangular input") {
        Mat M = Mat::identity(F, 3);
        M.set(2, 0, FieldValue::one(F));
        CHECK_THROWS_AS(block_unitriangular_inverse(M, {1, 2}), NotUnitriangular);
        Mat M2 = Mat::identity(F, 3);
        M2.set(1, 1, FieldValue::integer(F, 2));
        CHECK_THROWS_AS(block_unitriangular_inverse(M2, {1, 2}), NotUnitriangular);
    }
}

namespace {

NPolyMatrix random_npoly(Rng& rng, const FieldPtr& F, int rows, int cols, int deg,
                         const RandomValueOptions& opts) {
    std::vector<Mat> coeffs;
    for (int i = 0; i <= deg; ++i) coeffs.push_back(random_mat(rng, F, rows, cols, opts));
    return NPolyMatrix(F, rows, cols, std::move(coeffs));
}

}  // namespace

TEST_CASE("npoly matrix product") {
    auto F = F7();
    Rng rng(8);
    RandomValueOptions opts;
    SUBCASE("monomial identities multiply exponents") {
        auto A = NPolyMatrix::scalar_power(F, 3, FieldValue::one(F), 2);
        auto B = NPolyMatrix::scalar_power(F, 3, FieldValue::one(F), 3);
        CHECK(npoly_matmul(A, B) == NPolyMatrix::scalar_power(F, 3, FieldValue::one(F), 5));
    }
    SUBCASE("1x1 case is ordinary polynomial multiplication") {
        auto A = random_npoly(rng, F, 1, 1, 3, opts);
        auto B = random_npoly(rng, F, 1, 1, 2, opts);
        CHECK(npoly_matmul(A, B).entry(0, 0) == A.entry(0, 0) * B.entry(0, 0));
    }
    SUBCASE("random 4x4 degree-3 matches the entrywise convolution oracle") {
        for (int trial = 0; trial < 10; ++trial) {
            auto A = random_npoly(rng, F, 4, 4, 3, opts);
            auto B = random_npoly(rng, F, 4, 4, 3, opts);
            auto C = npoly_matmul(A, B);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    Poly expected = Poly::zero(F);
                    for (int t = 0; t < 4; ++t) expected = expected + A.entry(i, t) * B.entry(t, j);
                    REQUIRE(C.entry(i, j) == expected);
                }
        }
    }
    SUBCASE("associativity, distributivity, transpose anti-homomorphism") {
        for (int trial = 0; trial < 10; ++trial) {
            auto A = random_npoly(rng, F, 2, 3, 2, opts);
            auto B = random_npoly(rng, F, 3, 2, 2, opts);
            auto B2 = random_npoly(rng, F, 3, 2, 2, opts);
            auto C = random_npoly(rng, F, 2, 4, 2, opts);
            REQUIRE(npoly_matmul(npoly_matmul(A, B), C) == npoly_matmul(A, npoly_matmul(B, C)));
            REQUIRE(npoly_matmul(A, B + B2) == npoly_matmul(A, B) + npoly_matmul(A, B2));
            REQUIRE(npoly_matmul(A, B).transpose() ==
                    npoly_matmul(B.transpose(), A.transpose()));
        }
    }
    SUBCASE("zero-dimensional factors") {
        auto A = NPolyMatrix(F, 2, 0);
        auto B = NPolyMatrix(F, 0, 3);
        auto C = npoly_matmul(A, B);
        CHECK(C.rows() == 2);
        CHECK(C.cols() == 3);
        CHECK(C.is_zero());
    }
}

TEST_CASE("npoly entry round trip") {
    auto F = Qt();
    Rng rng(9);
    RandomValueOptions opts{2, 1, 1, 30};
    auto A = random_npoly(rng, F, 2, 2, 2, opts);
    std::vector<std::vector<Poly>> entries;
    for (int i = 0; i < 2; ++i) {
        entries.emplace_back();
        for (int j = 0; j < 2; ++j) entries.back().push_back(A.entry(i, j));
    }
    CHECK(NPolyMatrix::from_entries(F, 2, 2, entries) == A);
}
