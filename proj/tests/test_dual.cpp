#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "sq2/dual.hpp"

using namespace sq2;

namespace {

const DualMonomial kXi1 = {1};
const DualMonomial kXi2 = {0, 1};
const DualMonomial kXi3 = {0, 0, 1};

DualMonomial random_monomial(std::mt19937& rng, int max_degree) {
    for (;;) {
        DualMonomial m;
        for (int i = 1; i <= 3; ++i) m.push_back(int(rng() % 4));
        while (!m.empty() && m.back() == 0) m.pop_back();
        if (monomial_degree(m) <= max_degree) return m;
    }
}

}  // namespace

TEST_CASE("monomial degrees and order") {
    CHECK(monomial_degree({}) == 0);
    CHECK(monomial_degree(kXi1) == 1);
    CHECK(monomial_degree(kXi2) == 3);
    CHECK(monomial_degree(kXi3) == 7);
    CHECK(monomial_degree({8, 4, 2}) == 8 + 12 + 14);
    CHECK(monomial_product({1, 2}, {3, 0, 1}) == DualMonomial{4, 2, 1});
    // descending lexicographic: larger xi_1 power first
    CHECK(monomial_before({5, 1}, {2, 2}));
    CHECK(monomial_before({2, 2}, {1, 0, 1}));
    CHECK_FALSE(monomial_before({1, 0, 1}, {5, 1}));
}

TEST_CASE("element arithmetic") {
    DualElement a(kXi1);
    a += DualElement(kXi2);
    CHECK(a.terms().size() == 2);
    a += DualElement(kXi1);  // cancels
    CHECK(a == DualElement(kXi2));
    CHECK(multiply(DualElement(kXi1), DualElement(kXi1)) == DualElement(DualMonomial{2}));
    CHECK(power(DualElement(kXi1), 8) == DualElement(DualMonomial{8}));
    // squaring is additive on sums (Frobenius)
    DualElement sum = DualElement(kXi2) + DualElement(DualMonomial{3});
    CHECK(power(sum, 2) == DualElement(DualMonomial{0, 2}) + DualElement(DualMonomial{6}));
}

TEST_CASE("coproduct") {
    CoproductPairs xi1 = coproduct(kXi1);
    REQUIRE(xi1.size() == 2);
    std::set<std::pair<DualMonomial, DualMonomial>> xi1_pairs(xi1.begin(), xi1.end());
    CHECK(xi1_pairs.count({{}, kXi1}) == 1);
    CHECK(xi1_pairs.count({kXi1, {}}) == 1);

    // psi(xi2) = xi2 (x) 1 + xi1^2 (x) xi1 + 1 (x) xi2
    CoproductPairs xi2 = coproduct(kXi2);
    REQUIRE(xi2.size() == 3);
    bool has_middle = false;
    for (const auto& [l, r] : xi2)
        if (l == DualMonomial{2} && r == kXi1) has_middle = true;
    CHECK(has_middle);

    // multiplicativity: psi(xi1^2) = psi(xi1)^2
    CoproductPairs sq = coproduct({2});
    REQUIRE(sq.size() == 2);
    for (const auto& [l, r] : sq) CHECK(monomial_degree(l) + monomial_degree(r) == 2);
}

TEST_CASE("coproduct is coassociative") {
    // (psi (x) 1) psi = (1 (x) psi) psi as multisets of triples
    for (int d = 0; d <= 23; ++d)
        for (const DualMonomial& m : dual_quotient_basis(d, DualBasisKind::whole)) {
            std::multiset<std::vector<DualMonomial>> left, right;
            for (const auto& [a, bc] : coproduct(m))
                for (const auto& [b, c] : coproduct(bc)) right.insert({a, b, c});
            for (const auto& [ab, c] : coproduct(m))
                for (const auto& [a, b] : coproduct(ab)) left.insert({a, b, c});
            CHECK(left == right);
        }
}

TEST_CASE("conjugated generators") {
    CHECK(conjugate_generator(1) == DualElement(kXi1));
    CHECK(conjugate_generator(2) == DualElement(kXi2) + DualElement(DualMonomial{3}));
    CHECK(conjugate_generator(3).degree() == 7);
    // defining identity: xi_n + sum_{j=1..n} xi_{n-j}^{2^j} chi(xi_j) = 0
    for (int n = 1; n <= 4; ++n) {
        DualElement acc;
        DualMonomial xi_n(size_t(n), 0);
        xi_n[n - 1] = 1;
        acc += DualElement(xi_n);
        for (int j = 1; j <= n; ++j) {
            DualElement factor = conjugate_generator(j);
            if (n - j > 0) {
                DualMonomial pow(size_t(n - j), 0);
                pow[n - j - 1] = 1 << j;
                factor = multiply(DualElement(pow), factor);
            }
            acc += factor;
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("right action of total squares") {
    CHECK(right_total_sq(DualElement(kXi1), 0) == DualElement(kXi1));
    CHECK(right_total_sq(DualElement(kXi1), 1) == DualElement::one());
    CHECK(right_total_sq(DualElement(kXi2), 2) == DualElement(kXi1));
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        DualElement x(random_monomial(rng, 12));
        CHECK(right_total_sq(x, 0) == x);
        // Cartan convolution on products
        DualElement y(random_monomial(rng, 8));
        DualElement xy = multiply(x, y);
        for (int n = 0; n <= 4; ++n) {
            DualElement direct = right_total_sq(xy, n);
            DualElement conv;
            for (int i = 0; i <= n; ++i)
                conv += multiply(right_total_sq(x, i), right_total_sq(y, n - i));
            CHECK(direct == conv);
        }
    }
}

TEST_CASE("milnor pairing and change of basis") {
    CHECK(pairing(Word{2}, DualMonomial{2}));
    CHECK(pairing(Word{3}, DualMonomial{3}));
    CHECK(pairing(Word{3}, kXi2));  // Sq3 = Sq(3) + Sq(0,1)
    CHECK(admissible_to_milnor({3}) == DualElement(DualMonomial{3}) + DualElement(kXi2));
    CHECK(milnor_to_admissible(kXi2) == AlgebraElement({3}) + AlgebraElement({2, 1}));  // Q_1

    // dual-basis property in every degree through 12
    for (int d = 0; d <= 12; ++d) {
        auto monomials = dual_quotient_basis(d, DualBasisKind::whole);
        for (const DualMonomial& m : monomials) {
            AlgebraElement dual_elt = milnor_to_admissible(m);
            for (const DualMonomial& other : monomials)
                CHECK(pairing(dual_elt, other) == (m == other));
        }
    }
}

TEST_CASE("graded bases by profile") {
    // height-2 subalgebra: 64 monomials, top degree 23, empty above --
    // including degrees past the computation cap
    int total = 0;
    for (int d = 0; d <= 23; ++d)
        total += int(dual_quotient_basis(d, DualBasisKind::subalgebra, 2).size());
    CHECK(total == 64);
    CHECK(dual_quotient_basis(24, DualBasisKind::subalgebra, 2).empty());
    CHECK(dual_quotient_basis(49, DualBasisKind::subalgebra, 2).empty());
    CHECK(dual_quotient_basis(60, DualBasisKind::subalgebra, 2).empty());

    // quotient profile: one monomial in each slot degree
    for (int d : {8, 12, 14, 15, 20, 22, 23})
        CHECK(dual_quotient_basis(d, DualBasisKind::quotient, 2).size() == 1);
    for (int d : {1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 13})
        CHECK(dual_quotient_basis(d, DualBasisKind::quotient, 2).empty());
    CHECK(dual_quotient_basis(8, DualBasisKind::quotient, 2)[0] == DualMonomial{8});
    CHECK(dual_quotient_basis(12, DualBasisKind::quotient, 2)[0] == DualMonomial{0, 4});
    CHECK(dual_quotient_basis(14, DualBasisKind::quotient, 2)[0] == DualMonomial{0, 0, 2});
    CHECK(dual_quotient_basis(15, DualBasisKind::quotient, 2)[0] == DualMonomial{0, 0, 0, 1});

    // subalgebra degree 8 in descending-lex order
    auto deg8 = dual_quotient_basis(8, DualBasisKind::subalgebra, 2);
    REQUIRE(deg8.size() == 3);
    CHECK(deg8[0] == DualMonomial{5, 1});
    CHECK(deg8[1] == DualMonomial{2, 2});
    CHECK(deg8[2] == DualMonomial{1, 0, 1});

    // beyond-cap request on the unbounded families still throws
    CHECK_THROWS_AS(dual_quotient_basis(49, DualBasisKind::whole), std::out_of_range);
}

TEST_CASE("profile membership and splitting") {
    CHECK(in_subalgebra_profile({7, 3, 1}, 2));
    CHECK_FALSE(in_subalgebra_profile({8}, 2));
    CHECK(in_quotient_profile({8}, 2));
    CHECK_FALSE(in_quotient_profile({4}, 2));
    auto [sub, quot] = split_by_profile({9, 5, 1}, 2);
    CHECK(sub == DualMonomial{1, 1, 1});
    CHECK(quot == DualMonomial{8, 4});
    CHECK(monomial_product(sub, quot) == DualMonomial{9, 5, 1});
}

TEST_CASE("dual element text round trip") {
    DualElement parsed = parse_dual_element("xi1^8 xi2^4");
    CHECK(parsed == DualElement(DualMonomial{8, 4}));
    CHECK(parse_dual_element("1") == DualElement::one());
    DualElement sum = parse_dual_element("xi1^5 xi2 + xi3");
    CHECK(sum.terms().size() == 2);
    CHECK(parse_dual_element(sum.to_string()) == sum);
}
