#include <doctest.h>

#include "siegel/generate.hpp"
#include "siegel/lattice.hpp"
#include "siegel/partitions.hpp"

using namespace siegel;

TEST_CASE("dual partition by direct count") {
    CHECK(dual_partition(PartitionWithZeroes({2, 1, 0}), 2) == PartitionWithZeroes({2, 1}));
    CHECK(dual_partition(PartitionWithZeroes({0, 0, 0}), 4) == PartitionWithZeroes({0, 0, 0, 0}));
    CHECK_THROWS_AS(dual_partition(PartitionWithZeroes({3, 1}), 2), LengthTooSmall);
    CHECK_THROWS_AS(PartitionWithZeroes({1, 2}), Error);
}

TEST_CASE("dual partition is an involution when lengths suffice") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        int len = static_cast<int>(rng.range(1, 6));
        int maxp = static_cast<int>(rng.range(0, 5));
        auto p = random_partition(rng, len, maxp);
        auto d = dual_partition(p, std::max(1, p.largest()));
        CHECK(dual_partition(d, len) == p);
    }
}

TEST_CASE("jordan data from a partition") {
    SUBCASE("m = 1 gives (k_1, k_2) = (r - n, n)") {
        auto jd = jordan_data(PartitionWithZeroes({1, 1, 1, 0, 0}), 1);
        CHECK(jd.n == 3);
        CHECK(jd.r == 5);
        CHECK(jd.k == std::vector<int>{2, 3});
    }
    SUBCASE("d = (2,1,0), m = 2") {
        auto jd = jordan_data(PartitionWithZeroes({2, 1, 0}), 2);
        CHECK(jd.c == PartitionWithZeroes({2, 1}));
        CHECK(jd.k == std::vector<int>{1, 1, 1});
        CHECK(jd.n == 3);
    }
    SUBCASE("d = (3,3), m = 3") {
        auto jd = jordan_data(PartitionWithZeroes({3, 3}), 3);
        CHECK(jd.c == PartitionWithZeroes({2, 2, 2}));
        CHECK(jd.k == std::vector<int>{0, 0, 0, 2});
        CHECK(jd.n == 6);
    }
    CHECK_THROWS_AS(jordan_data(PartitionWithZeroes({3, 1}), 2), NilpotencyTooSmall);
}

TEST_CASE("jordan data agrees with the kernel-rank oracle") {
    auto F = FieldSpec::rationals();
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        int m = static_cast<int>(rng.range(1, 4));
        int len = static_cast<int>(rng.range(1, 5));
        auto d = random_partition(rng, len, m);
        auto jd = jordan_data(d, m);
        Mat N = make_jordan_matrix(jd, F);
        Mat power = Mat::identity(F, jd.n);
        int prev_kernel = 0;
        for (int i = 1; i <= m; ++i) {
            power = power * N;
            int kernel = jd.n - rank(power);
            CHECK(kernel - prev_kernel == jd.c.part(i));
            prev_kernel = kernel;
        }
    }
}

TEST_CASE("dual jordan data") {
    SUBCASE("d = (2,1,0) is self-dual at m = 2") {
        auto jd = jordan_data(PartitionWithZeroes({2, 1, 0}), 2);
        CHECK(dual_jordan_data(jd).d == jd.d);
    }
    SUBCASE("d = (1,0), m = 1") {
        auto jd = jordan_data(PartitionWithZeroes({1, 0}), 1);
        auto dual = dual_jordan_data(jd);
        CHECK(dual.d == PartitionWithZeroes({1, 0}));
        CHECK(dual.n == 1);
    }
    SUBCASE("k reverses, n + n' = m r, and the dual is an involution") {
        Rng rng(13);
        for (int trial = 0; trial < 500; ++trial) {
            int m = static_cast<int>(rng.range(1, 8));
            int len = static_cast<int>(rng.range(1, 7));
            auto jd = jordan_data(random_partition(rng, len, m), m);
            auto dual = dual_jordan_data(jd);
            REQUIRE(dual.r == jd.r);
            REQUIRE(dual.n + jd.n == m * jd.r);
            for (int i = 1; i <= m + 1; ++i) REQUIRE(dual.k_at(i) == jd.k_at(m + 2 - i));
            REQUIRE(dual_jordan_data(dual) == jd);
        }
    }
}
