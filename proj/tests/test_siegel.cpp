#include <doctest.h>

#include "oracles.hpp"
#include "siegel/generate.hpp"

using namespace siegel;

namespace {

FieldPtr F5() { return FieldSpec::finite(5); }
FieldPtr F7() { return FieldSpec::finite(7); }

/// Tower of independent transcendentals over Q, one per name.
struct GeneratorTower {
    FieldPtr field;
    explicit GeneratorTower(const std::vector<std::string>& names) {
        field = FieldSpec::rationals();
        for (const auto& n : names) field = FieldSpec::ratfunc(field, n);
    }
    FieldValue operator()(const std::string& name) const { return parse_value(field, name); }
    Mat mat1x1(const std::string& name) const {
        Mat m(field, 1, 1);
        m.set(0, 0, (*this)(name));
        return m;
    }
};

}  // namespace

TEST_CASE("tetra index counting and order") {
    CHECK(tetra_indices(1) == std::vector<TetraIndex>{TetraIndex{1, 2, 0}});
    CHECK(tetra_indices(3).size() == 10);
    CHECK(tetra_indices(10).size() == 220);
    for (int m = 1; m <= 10; ++m) {
        // brute-force triple loop over the constraint box
        long count = 0;
        for (int u = 1; u <= m; ++u)
            for (int z = 0; z <= m - 1; ++z)
                for (int y = 1; y <= m + 1; ++y)
                    if (z >= u - 1 && y >= z + 2) ++count;
        CHECK(tetra_count(m) == count);
        CHECK(static_cast<long>(tetra_indices(m).size()) == count);
    }
    // lexicographic in (u, z, y)
    auto idx = tetra_indices(4);
    for (size_t i = 1; i < idx.size(); ++i) CHECK(idx[i - 1] < idx[i]);
}

TEST_CASE("the symmetry s") {
    CHECK(symmetry_s({1, 0, 2, 0}, 1) == Quad{1, 0, 2, 0});
    CHECK(symmetry_s({2, 1, 4, 2}, 3) == Quad{1, 0, 3, 1});
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        int m = static_cast<int>(rng.range(1, 8));
        Quad q{static_cast<int>(rng.range(-5, 10)), static_cast<int>(rng.range(-5, 10)),
               static_cast<int>(rng.range(-5, 10)), static_cast<int>(rng.range(-5, 10))};
        CHECK(symmetry_s(symmetry_s(q, m), m) == q);
    }
    // s maps the Siegel domain bijectively onto the essential-P domain
    for (int m = 1; m <= 6; ++m) {
        std::vector<Quad> images;
        for (const TetraIndex& t : tetra_indices(m)) {
            Quad s = symmetry_s({t.u, t.u - 1, t.y, t.z}, m);
            CHECK(s.c == s.d + 2);                      // essential: y = z + 2
            CHECK(s.b >= s.a - 1);                      // non-trivial domain
            CHECK((s.d >= s.b && s.d <= m - 1));        // (3.19) for z
            images.push_back(s);
        }
        std::sort(images.begin(), images.end(), [](const Quad& a, const Quad& b) {
            return std::tie(a.a, a.b, a.c, a.d) < std::tie(b.a, b.b, b.c, b.d);
        });
        CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());
        CHECK(images.size() == tetra_indices(m).size());
    }
}

TEST_CASE("P reproduces the displayed m = 3 polynomials on independent symbols") {
    GeneratorTower T({"s1020", "s1030", "s1040", "s1031", "s1041", "s1042", "s2131", "s2141",
                      "s2142", "s3242"});
    SiegelObject S(T.field, 3, {1, 1, 1, 1});
    S.set(1, 2, 0, T.mat1x1("s1020"));
    S.set(1, 3, 0, T.mat1x1("s1030"));
    S.set(1, 4, 0, T.mat1x1("s1040"));
    S.set(1, 3, 1, T.mat1x1("s1031"));
    S.set(1, 4, 1, T.mat1x1("s1041"));
    S.set(1, 4, 2, T.mat1x1("s1042"));
    S.set(2, 3, 1, T.mat1x1("s2131"));
    S.set(2, 4, 1, T.mat1x1("s2141"));
    S.set(2, 4, 2, T.mat1x1("s2142"));
    S.set(3, 4, 2, T.mat1x1("s3242"));
    PTable P = compute_P(S);
    auto at = [&](int u, int v, int y, int z) { return P.lookup(u, v, y, z).at(0, 0); };
    CHECK(at(2, 2, 4, 2) == -T("s2131") * T("s3242") + T("s2141"));
    CHECK(at(1, 2, 4, 2) ==
          T("s1020") * T("s2131") * T("s3242") - T("s1020") * T("s2141") -
              T("s1030") * T("s3242") + T("s1040"));
    CHECK(at(1, 1, 3, 1) == -T("s1020") * T("s2131") + T("s1030"));
    CHECK(at(1, 1, 4, 1) == -T("s1020") * T("s2141") + T("s1040"));
    CHECK(at(1, 1, 4, 2) == -T("s1020") * T("s2142") - T("s1031") * T("s3242") + T("s1041"));
}

TEST_CASE("P base layer and trivial-domain conventions") {
    Rng rng(31);
    RandomValueOptions opts;
    auto S = random_siegel(rng, F5(), 3, {1, 2, 1, 1}, opts);
    PTable P = compute_P(S);
    for (const TetraIndex& t : tetra_indices(3))
        CHECK(P.lookup(t.u, t.u - 1, t.y, t.z) == S.at(t));
    // trivial domain: -I at (y, z) = (u, v), 0 elsewhere
    CHECK(P.lookup(3, 0, 3, 0) == -Mat::identity(S.field(), S.k_at(3)));
    CHECK(P.lookup(3, 0, 4, 1).is_zero());
    CHECK_THROWS_AS(P.lookup(1, 0, 2, 3), ShapeMismatch);
}

TEST_CASE("compute_P matches the substitution oracle") {
    Rng rng(32);
    RandomValueOptions opts;
    std::vector<std::pair<FieldPtr, int>> cases = {{F5(), 4}, {F7(), 3}, {FieldSpec::rationals(), 3}};
    for (const auto& [F, m] : cases) {
        for (int trial = 0; trial < 4; ++trial) {
            int r = static_cast<int>(rng.range(1, 6));
            auto k = random_shape(rng, m, r);
            auto S = random_siegel(rng, F, m, k, opts);
            PTable P = compute_P(S);
            for (int u = 1; u <= m; ++u)
                for (int v = u - 1; v <= m - 1; ++v) {
                    auto oracle = testing::substitution_P(S, u, v);
                    for (int z = v; z <= m - 1; ++z)
                        for (int y = z + 2; y <= m + 1; ++y) {
                            Mat expected = Mat::zero(F, S.k_at(u), S.k_at(y));
                            auto it = oracle.find({z, y});
                            if (it != oracle.end()) expected = it->second;
                            REQUIRE(P.lookup(u, v, y, z) == expected);
                        }
                }
        }
    }
}

TEST_CASE("verify_recurrence holds and counts the admissible tuples") {
    Rng rng(33);
    RandomValueOptions opts;
    SUBCASE("m = 1 reduces to the base layer") {
        auto S = random_siegel(rng, F5(), 1, {2, 1}, opts);
        auto rep = verify_recurrence(S);
        CHECK(rep.ok);
        CHECK(rep.tuples_checked == 1);  // i=2, j=1, xi=0, psi=2
    }
    SUBCASE("random m = 3 over F_7 and m = 5 with unit shape") {
        auto S3 = random_siegel(rng, F7(), 3, random_shape(rng, 3, 5), opts);
        CHECK(verify_recurrence(S3).ok);
        auto S5 = random_siegel(rng, F5(), 5, {1, 1, 1, 1, 1, 1}, opts);
        CHECK(verify_recurrence(S5).ok);
    }
}

TEST_CASE("dual Siegel object") {
    Rng rng(34);
    RandomValueOptions opts;
    SUBCASE("m = 1 is the negated transpose") {
        auto S = random_siegel(rng, F7(), 1, {2, 3}, opts);
        auto D = dual_siegel(S);
        CHECK(D.k() == std::vector<int>{3, 2});
        CHECK(D.at(1, 2, 0) == -S.at(1, 2, 0).transpose());
    }
    SUBCASE("m = 3: dual entry (1,4,0) transposes to -P_{1242}") {
        auto S = random_siegel(rng, F7(), 3, {1, 2, 1, 2}, opts);
        auto D = dual_siegel(S);
        PTable P = compute_P(S);
        CHECK(D.at(1, 4, 0).transpose() == -P.lookup(1, 2, 4, 2));
        for (const TetraIndex& t : tetra_indices(3)) {
            CHECK(D.at(t).rows() == S.k_at(3 + 2 - t.u));
            CHECK(D.at(t).cols() == S.k_at(3 + 2 - t.y));
        }
    }
    SUBCASE("double dual returns the original") {
        for (int m = 1; m <= 4; ++m) {
            auto k = random_shape(rng, m, static_cast<int>(rng.range(1, 7)));
            auto S = random_siegel(rng, F5(), m, k, opts);
            CHECK(dual_siegel(dual_siegel(S)) == S);
        }
    }
}

TEST_CASE("B assembles the displayed m = 3 layout") {
    Rng rng(35);
    RandomValueOptions opts;
    std::vector<int> k{1, 2, 1, 2};
    auto S = random_siegel(rng, F7(), 3, k, opts);
    auto C = build_C(S);
    BlockShape shape = BlockShape::skew(k);
    // C_0: last block-column is (I_{k1}, S^t_{1020}, S^t_{1030}, S^t_{1040})
    CHECK(block_get(C[0], shape, 1, 4) == Mat::identity(S.field(), 1));
    CHECK(block_get(C[0], shape, 2, 4) == S.at(1, 2, 0).transpose());
    CHECK(block_get(C[0], shape, 3, 4) == S.at(1, 3, 0).transpose());
    CHECK(block_get(C[0], shape, 4, 4) == S.at(1, 4, 0).transpose());
    for (int b = 1; b <= 3; ++b)
        for (int a = 1; a <= 4; ++a)
            if (!(a == 1 && b == 4)) {
                // every other block of C_0 is zero except the S column
                if (b != 4) CHECK(block_get(C[0], shape, a, b).is_zero());
            }
    // C_3 has only the identity at (4, 1)
    CHECK(block_get(C[3], shape, 4, 1) == Mat::identity(S.field(), 2));
    Mat stripped = C[3];
    block_set(stripped, shape, 4, 1, Mat::zero(S.field(), 2, 2));
    CHECK(stripped.is_zero());
    // every block of every C_i is zero, an identity, or a transposed S block
    for (int i = 0; i <= 3; ++i)
        for (int a = 1; a <= 4; ++a)
            for (int b = 1; b <= 4; ++b) {
                Mat blk = block_get(C[static_cast<size_t>(i)], shape, a, b);
                bool classified = blk.is_zero() ||
                                  (a == i + 1 && b == 3 + 1 - i && blk.is_identity()) ||
                                  (tetra_valid(3, 3 + 2 - b, a, i) &&
                                   blk == S.at(3 + 2 - b, a, i).transpose());
                CHECK(classified);
            }
}

TEST_CASE("m = 1 closed forms for B and Bbar") {
    Rng rng(36);
    RandomValueOptions opts;
    std::vector<int> k{2, 3};
    auto S = random_siegel(rng, F7(), 1, k, opts);
    const Mat& s = S.at(1, 2, 0);
    auto F = S.field();
    BlockShape shape = BlockShape::skew(k);

    auto B = build_B(S);
    // B = [[0, I],[0, S^t]] + [[0,0],[I,0]] N
    CHECK(block_get(B.coeff(0), shape, 1, 2) == Mat::identity(F, 2));
    CHECK(block_get(B.coeff(0), shape, 2, 2) == s.transpose());
    CHECK(block_get(B.coeff(0), shape, 1, 1).is_zero());
    CHECK(block_get(B.coeff(0), shape, 2, 1).is_zero());
    CHECK(block_get(B.coeff(1), shape, 2, 1) == Mat::identity(F, 3));

    auto Bbar = build_Bbar(S);
    // Bbar = [[-S, 0],[I, 0]] + [[0, I],[0, 0]] N
    CHECK(block_get(Bbar.coeff(0), shape, 1, 1) == -s);
    CHECK(block_get(Bbar.coeff(0), shape, 2, 1) == Mat::identity(F, 3));
    CHECK(block_get(Bbar.coeff(1), shape, 1, 2) == Mat::identity(F, 2));

    CHECK(verify_BBbar(S).ok);
}

TEST_CASE("Bbar's m = 3 first block-column displays the negated P") {
    Rng rng(37);
    RandomValueOptions opts;
    std::vector<int> k{1, 1, 2, 1};
    auto S = random_siegel(rng, F5(), 3, k, opts);
    PTable P = compute_P(S);
    auto Cbar = build_Cbar(S, P);
    BlockShape shape = BlockShape::skew(k);
    CHECK(block_get(Cbar[0], shape, 1, 1) == -P.lookup(1, 2, 4, 2));
    CHECK(block_get(Cbar[0], shape, 2, 1) == -P.lookup(2, 2, 4, 2));
    CHECK(block_get(Cbar[0], shape, 3, 1) == -P.lookup(3, 2, 4, 2));
    CHECK(block_get(Cbar[0], shape, 4, 1) == Mat::identity(S.field(), 1));
}

TEST_CASE("B^t Bbar = I N^m across fields and degenerate shapes") {
    Rng rng(38);
    RandomValueOptions opts{3, 1, 1, 25};
    std::vector<FieldPtr> fields = {FieldSpec::rationals(), F5(),
                                    FieldSpec::ratfunc(FieldSpec::rationals(), "theta")};
    for (const auto& F : fields)
        for (int m = 1; m <= 4; ++m)
            for (int trial = 0; trial < 3; ++trial) {
                auto k = random_shape(rng, m, static_cast<int>(rng.range(1, 7)));
                auto S = random_siegel(rng, F, m, k, opts);
                auto rep = verify_BBbar(S);
                REQUIRE(rep.ok);
                REQUIRE(rep.product ==
                        NPolyMatrix::scalar_power(F, S.r(), FieldValue::one(F), m));
            }
    // the degenerate shape from the examples
    auto S = random_siegel(rng, FieldSpec::rationals(), 3, {0, 2, 0, 1}, opts);
    CHECK(verify_BBbar(S).ok);
}

TEST_CASE("recover_Bbar") {
    Rng rng(39);
    RandomValueOptions opts;
    SUBCASE("m = 1 closed form") {
        auto S = random_siegel(rng, F7(), 1, {1, 2}, opts);
        CHECK(recover_Bbar(build_B(S), S.k()) == build_Bbar(S));
    }
    SUBCASE("random instances, m <= 4") {
        for (int m = 1; m <= 4; ++m)
            for (int trial = 0; trial < 4; ++trial) {
                auto k = random_shape(rng, m, static_cast<int>(rng.range(1, 7)));
                auto S = random_siegel(rng, F5(), m, k, opts);
                REQUIRE(recover_Bbar(build_B(S), k) == build_Bbar(S));
            }
    }
    SUBCASE("unknown count matches the index box") {
        for (int m = 1; m <= 6; ++m) {
            long count = 0;
            for (int i = 0; i <= m - 1; ++i)
                for (int b = 1; b <= i + 1; ++b)
                    for (int a = 1; a <= m - i; ++a) ++count;
            long expected = 0;  // sum over i of (i+1)(m-i)
            for (int i = 0; i <= m - 1; ++i) expected += static_cast<long>(i + 1) * (m - i);
            CHECK(count == expected);
        }
    }
    SUBCASE("rejects matrices that are not a valid B") {
        auto S = random_siegel(rng, F7(), 2, {1, 1, 1}, opts);
        auto B = build_B(S);
        Mat C0 = B.coeff(0);
        C0.set(2, 0, FieldValue::one(S.field()));  // below the pattern
        B.set_coeff(0, C0);
        CHECK_THROWS_AS(recover_Bbar(B, S.k()), SystemInconsistent);
        CHECK_THROWS_AS(recover_Bbar(build_B(S), std::vector<int>{1, 2}), SystemInconsistent);
    }
}

TEST_CASE("the unitriangular pair of matrices") {
    Rng rng(40);
    RandomValueOptions opts;
    SUBCASE("m = 1 forms") {
        auto S = random_siegel(rng, F7(), 1, {2, 2}, opts);
        BlockShape shape = BlockShape::square(S.k());
        Mat GS = build_gothic_S(S);
        Mat GP = build_gothic_P(S);
        CHECK(block_get(GS, shape, 1, 2) == S.at(1, 2, 0));
        CHECK(block_get(GP, shape, 1, 2) == -S.at(1, 2, 0));
        CHECK(GP * GS == Mat::identity(S.field(), 4));
    }
    SUBCASE("random m = 3: inverse via back-substitution oracle") {
        for (int trial = 0; trial < 5; ++trial) {
            auto k = random_shape(rng, 3, static_cast<int>(rng.range(1, 8)));
            auto S = random_siegel(rng, F5(), 3, k, opts);
            Mat GS = build_gothic_S(S);
            Mat GP = build_gothic_P(S);
            REQUIRE(GP * GS == Mat::identity(S.field(), S.r()));
            REQUIRE(GS * GP == Mat::identity(S.field(), S.r()));
            REQUIRE(GP == block_unitriangular_inverse(GS, k));
            BlockShape shape = BlockShape::square(k);
            for (int i = 1; i <= 4; ++i)
                REQUIRE(block_get(GS, shape, i, i).is_identity());
        }
    }
}
