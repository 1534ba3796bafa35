#include <doctest.h>

#include <random>

#include "ntors/matrix.hpp"

using namespace ntors;

namespace {

Mat from_rows(int r, int c, std::initializer_list<uint32_t> vals) {
    Mat m(r, c);
    auto it = vals.begin();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = *it++;
    return m;
}

Mat random_mat(const Fp& F, std::mt19937_64& rng, int r, int c) {
    std::uniform_int_distribution<uint32_t> dist(0, F.p - 1);
    Mat m(r, c);
    for (auto& x : m.a) x = dist(rng);
    return m;
}

} // namespace

TEST_CASE("rref on identity and zero") {
    Fp F{5};
    Rref r = rref(F, identity(3));
    CHECK(r.rank == 3);
    CHECK(r.pivots == std::vector<int>{0, 1, 2});
    CHECK(r.R == identity(3));

    Rref z = rref(F, Mat(2, 4));
    CHECK(z.rank == 0);
    CHECK(z.pivots.empty());
    CHECK(z.R.is_zero());
}

TEST_CASE("rref hand example over F_5") {
    Fp F{5};
    Mat A = from_rows(2, 2, {2, 4, 1, 2});
    Rref r = rref(F, A);
    CHECK(r.rank == 1);
    CHECK(r.R == from_rows(2, 2, {1, 2, 0, 0}));
}

TEST_CASE("rref is idempotent and row rank equals column rank") {
    Fp F{5};
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        Mat A = random_mat(F, rng, 1 + t % 5, 1 + (t * 3) % 6);
        Rref r = rref(F, A);
        CHECK(rref(F, r.R).R == r.R);
        CHECK(rank(F, A) == rank(F, transpose(A)));
    }
}

TEST_CASE("solve identity and zero cases") {
    Fp F{5};
    Mat B = from_rows(2, 2, {1, 2, 3, 4});
    Solve s = solve(F, identity(2), B);
    REQUIRE(s.particular.has_value());
    CHECK(*s.particular == B);
    CHECK(s.kernel.cols == 0);

    Solve z = solve(F, Mat(2, 3), Mat(2, 1));
    REQUIRE(z.particular.has_value());
    CHECK(z.particular->is_zero());
    CHECK(z.kernel.cols == 3);
}

TEST_CASE("solve hand example over F_5") {
    Fp F{5};
    Mat A = from_rows(2, 2, {1, 2, 2, 4});
    Mat b = from_rows(2, 1, {1, 2});
    Solve s = solve(F, A, b);
    REQUIRE(s.particular.has_value());
    CHECK(mul(F, A, *s.particular) == b);
    CHECK(s.kernel.cols == 1);
    CHECK(mul(F, A, s.kernel).is_zero());

    Mat bad = from_rows(2, 1, {1, 3});
    CHECK_FALSE(solve(F, A, bad).particular.has_value());
}

TEST_CASE("solve verification property on random systems") {
    Fp F{7};
    std::mt19937_64 rng(13);
    for (int t = 0; t < 60; ++t) {
        Mat A = random_mat(F, rng, 2 + t % 4, 2 + (t * 5) % 5);
        Mat B = random_mat(F, rng, A.rows, 2);
        Solve s = solve(F, A, B);
        if (s.particular) CHECK(mul(F, A, *s.particular) == B);
        CHECK(mul(F, A, s.kernel).is_zero());
        CHECK(rank(F, A) + s.kernel.cols == A.cols);
    }
}

TEST_CASE("intersect_and_sum trivial cases") {
    Fp F{5};
    Mat U = col_canon(F, from_rows(2, 1, {1, 2}));
    SumIntersect same = intersect_and_sum(F, U, U);
    CHECK(same.intersection.cols == 1);
    CHECK(same.sum.cols == 1);

    // Two distinct lines in F_5^2 meet in 0 and span the plane.
    Mat V = col_canon(F, from_rows(2, 1, {1, 3}));
    SumIntersect si = intersect_and_sum(F, U, V);
    CHECK(si.intersection.cols == 0);
    CHECK(si.sum.cols == 2);

    // Ambient against anything.
    SumIntersect amb = intersect_and_sum(F, identity(2), V);
    CHECK(amb.intersection == V);
    CHECK(amb.sum.cols == 2);
}

TEST_CASE("Grassmann dimension identity") {
    Fp F{5};
    std::mt19937_64 rng(99);
    for (int t = 0; t < 60; ++t) {
        int n = 4;
        Mat U = col_canon(F, random_mat(F, rng, n, 1 + t % 3));
        Mat V = col_canon(F, random_mat(F, rng, n, 1 + (t * 7) % 3));
        SumIntersect si = intersect_and_sum(F, U, V);
        CHECK(U.cols + V.cols == si.sum.cols + si.intersection.cols);
    }
}

TEST_CASE("inverse and coords") {
    Fp F{5};
    Mat A = from_rows(2, 2, {1, 1, 0, 1});
    Mat Ai = inverse(F, A);
    CHECK(mul(F, A, Ai) == identity(2));
    auto c = coords_in(F, A, from_rows(2, 1, {2, 1}));
    REQUIRE(c.has_value());
    CHECK(mul(F, A, *c) == from_rows(2, 1, {2, 1}));
}
