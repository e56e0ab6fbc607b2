#include <random>

#include "doctest.h"
#include "sq2/f2.hpp"

using namespace sq2;

namespace {

F2Matrix random_matrix(int rows, int cols, std::mt19937& rng) {
    F2Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, rng() & 1);
    return m;
}

}  // namespace

TEST_CASE("bit vector basics") {
    F2Vector v(130);
    CHECK(v.is_zero());
    CHECK(v.first_set() == -1);
    v.set(0, true);
    v.set(64, true);
    v.set(129, true);
    CHECK(v.get(64));
    CHECK_FALSE(v.get(63));
    CHECK(v.popcount() == 3);
    CHECK(v.first_set() == 0);
    CHECK(v.support() == std::vector<int>{0, 64, 129});
    v.flip(0);
    CHECK(v.first_set() == 64);

    F2Vector w(130, {64, 100});
    v.add(w);
    CHECK(v.support() == std::vector<int>{100, 129});

    F2Vector small = v.resized(101);
    CHECK(small.support() == std::vector<int>{100});
}

TEST_CASE("rref is canonical") {
    F2Matrix m{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    RrefResult r = rref(m);
    CHECK(r.rank == 2);
    CHECK(r.pivot_columns == std::vector<int>{0, 1});
    // third row is the sum of the first two, so it reduces away
    CHECK(r.reduced.row(0).support() == std::vector<int>{0, 2});
    CHECK(r.reduced.row(1).support() == std::vector<int>{1, 2});
    CHECK(r.reduced.row(2).is_zero());
}

TEST_CASE("kernel and solve") {
    F2Matrix m{{1, 1, 0}, {1, 0, 1}};
    auto kernel = kernel_basis(m);
    REQUIRE(kernel.size() == 1);
    CHECK(multiply(m, kernel[0]).is_zero());
    CHECK(kernel[0].support() == std::vector<int>{0, 1, 2});

    F2Vector b(2, {0});
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(multiply(m, *x) == b);

    // inconsistent system: rows sum to zero but targets do not
    F2Matrix singular{{1, 1}, {1, 1}};
    CHECK_FALSE(solve(singular, F2Vector(2, {0})).has_value());
}

TEST_CASE("rank properties on random matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int rows = 1 + int(rng() % 8), cols = 1 + int(rng() % 8);
        F2Matrix m = random_matrix(rows, cols, rng);
        RrefResult r = rref(m);
        CHECK(r.rank <= std::min(rows, cols));
        CHECK(r.rank == rref(transpose(m)).rank);
        auto kernel = kernel_basis(m);
        CHECK(int(kernel.size()) == cols - r.rank);
        for (const F2Vector& v : kernel) CHECK(multiply(m, v).is_zero());
        // any reachable target is solved exactly
        F2Vector x(cols);
        for (int j = 0; j < cols; ++j) x.set(j, rng() & 1);
        F2Vector b = multiply(m, x);
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        CHECK(multiply(m, *sol) == b);
    }
}

TEST_CASE("matrix product against direct evaluation") {
    std::mt19937 rng(11);
    F2Matrix a = random_matrix(4, 5, rng), b = random_matrix(5, 3, rng);
    F2Matrix ab = multiply(a, b);
    for (int j = 0; j < 3; ++j) CHECK(ab.column(j) == multiply(a, b.column(j)));
    CHECK(multiply(identity_matrix(4), a) == a);
    CHECK(add(a, a) == F2Matrix(4, 5));
}

TEST_CASE("echelon accumulator") {
    EchelonBasis basis(4);
    CHECK(basis.add(F2Vector(4, {0, 1})));
    CHECK(basis.add(F2Vector(4, {1, 2})));
    CHECK_FALSE(basis.add(F2Vector(4, {0, 2})));  // dependent on the first two
    CHECK(basis.rank() == 2);
    CHECK(basis.contains(F2Vector(4, {0, 2})));
    CHECK_FALSE(basis.contains(F2Vector(4, {3})));
    CHECK(basis.reduce(F2Vector(4, {0, 1, 3})).support() == std::vector<int>{3});
}

TEST_CASE("quotient coordinates") {
    std::vector<F2Vector> sub = {F2Vector(3, {0, 1})};
    QuotientMap q = quotient_coordinates(sub, 3);
    CHECK(q.dim() == 2);
    // the subspace projects to zero, and lift is a section of project
    CHECK(q.project(F2Vector(3, {0, 1})).is_zero());
    F2Vector coords = q.project(F2Vector(3, {0}));
    CHECK(q.project(q.lift(coords)) == coords);
}
