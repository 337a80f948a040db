#include <doctest.h>

#include "nheart/matrix.hpp"

using namespace nheart;

TEST_CASE("rref on identity and zero") {
    auto id = FieldMatrix::identity(2, 5);
    auto rr = rref(id);
    CHECK(rr.R == id);
    CHECK(rr.pivots == std::vector<std::size_t>{0, 1});
    CHECK(rr.rank == 2);

    auto z = FieldMatrix::zero(3, 2, 5);
    auto rz = rref(z);
    CHECK(rz.R == z);
    CHECK(rz.pivots.empty());
    CHECK(rz.rank == 0);
}

TEST_CASE("rref of a rank-1 matrix mod 5") {
    FieldMatrix m(2, 2, 5, {1, 2, 2, 4});
    auto rr = rref(m);
    CHECK(rr.rank == 1);
    FieldMatrix expect(2, 2, 5, {1, 2, 0, 0});
    CHECK(rr.R == expect);
}

TEST_CASE("rref is idempotent on random matrices") {
    Rng rng(42);
    for (int t = 0; t < 50; ++t) {
        std::uint32_t p = (t % 2 == 0) ? 2 : 5;
        auto m = FieldMatrix::random(1 + rng.below(6), 1 + rng.below(6), p, rng);
        auto r1 = rref(m).R;
        CHECK(rref(r1).R == r1);
    }
}

TEST_CASE("kernel basis shapes and membership") {
    CHECK(kernel_basis(FieldMatrix::identity(3, 5)).cols() == 0);

    auto z = FieldMatrix::zero(4, 3, 5);
    auto kz = kernel_basis(z);
    CHECK(kz.cols() == 3);
    CHECK(kz.is_identity());

    FieldMatrix row(1, 2, 5, {1, 2});
    auto k = kernel_basis(row);
    REQUIRE(k.cols() == 1);
    CHECK((row * k).is_zero());
    CHECK(k.at(0, 0) == 3);  // (-2, 1) mod 5
    CHECK(k.at(1, 0) == 1);
}

TEST_CASE("rank-nullity on random matrices over F2/F5") {
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        std::uint32_t p = (t % 2 == 0) ? 2 : 5;
        std::size_t r = rng.below(7), c = rng.below(7);
        auto m = FieldMatrix::random(r, c, p, rng);
        auto k = kernel_basis(m);
        CHECK(rank(m) + k.cols() == c);
        CHECK((m * k).is_zero());
        if (k.cols() > 0) CHECK(rank(k) == k.cols());
    }
}

TEST_CASE("solve_linear basics") {
    auto b = FieldMatrix(2, 1, 5, {3, 4});
    auto sol = solve_linear(FieldMatrix::identity(2, 5), b);
    REQUIRE(sol.has_value());
    CHECK(*sol == b);

    CHECK_FALSE(solve_linear(FieldMatrix::zero(2, 2, 5), b).has_value());

    FieldMatrix m(1, 1, 5, {2});
    FieldMatrix rhs(1, 1, 5, {3});
    auto s2 = solve_linear(m, rhs);
    REQUIRE(s2.has_value());
    CHECK(s2->at(0, 0) == 4);  // 2*4 = 8 = 3 mod 5
}

TEST_CASE("solve_linear succeeds iff rank criterion holds") {
    Rng rng(99);
    for (int t = 0; t < 100; ++t) {
        std::uint32_t p = (t % 2 == 0) ? 2 : 5;
        auto m = FieldMatrix::random(rng.below(5), rng.below(5), p, rng);
        auto b = FieldMatrix::random(m.rows(), 1 + rng.below(2), p, rng);
        auto sol = solve_linear(m, b);
        bool solvable = rank(FieldMatrix::hstack(m, b)) == rank(m);
        CHECK(sol.has_value() == solvable);
        if (sol) CHECK(m * *sol == b);
    }
}

TEST_CASE("subquotient full/zero cases") {
    auto full = subquotient(3, FieldMatrix::identity(3, 5), FieldMatrix::zero(3, 0, 5));
    CHECK(full.dim == 3);
    CHECK(full.proj * full.section == FieldMatrix::identity(3, 5));

    auto same = subquotient(3, FieldMatrix::identity(3, 5), FieldMatrix::identity(3, 5));
    CHECK(same.dim == 0);
}

TEST_CASE("subquotient of a line inside the plane over F2") {
    // sub = span{e1, e2}, inside = span{e1}: one-dimensional quotient
    // generated by the class of e2.
    auto sub = FieldMatrix::identity(2, 2);
    FieldMatrix inside(2, 1, 2, {1, 0});
    auto sq = subquotient(2, sub, inside);
    CHECK(sq.dim == 1);
    CHECK(sq.proj * sq.section == FieldMatrix::identity(1, 2));
    // e1 is killed, e2 maps to the generator.
    FieldMatrix e1(2, 1, 2, {1, 0}), e2(2, 1, 2, {0, 1});
    CHECK((sq.proj * e1).is_zero());
    CHECK_FALSE((sq.proj * e2).is_zero());
}

TEST_CASE("subquotient rejects containment violation") {
    FieldMatrix sub(2, 1, 5, {1, 0});
    FieldMatrix inside(2, 1, 5, {0, 1});
    CHECK_THROWS_AS(subquotient(2, sub, inside), std::invalid_argument);
}

TEST_CASE("Fp rejects non-primes and accepts edge primes") {
    CHECK_THROWS_AS(Fp(4), std::invalid_argument);
    CHECK_THROWS_AS(Fp(1), std::invalid_argument);
    CHECK(Fp(2).modulus() == 2);
    CHECK(Fp(2147483647).inv(2) == 1073741824);
}
