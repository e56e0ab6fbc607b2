#include <random>

#include "doctest.h"
#include "sq2/dual.hpp"
#include "sq2/steenrod.hpp"

using namespace sq2;

namespace {

AlgebraElement random_element(std::mt19937& rng, int max_degree) {
    AlgebraElement out;
    int terms = 1 + int(rng() % 2);
    for (int k = 0; k < terms; ++k) {
        Word w;
        int degree = 0;
        while (degree < max_degree && (rng() % 3)) {
            int i = 1 + int(rng() % 4);
            if (degree + i > max_degree) break;
            w.push_back(i);
            degree += i;
        }
        out += adem_reduce(w);
    }
    return out;
}

}  // namespace

TEST_CASE("adem reduction on the classical pairs") {
    CHECK(adem_reduce({1, 1}).is_zero());
    CHECK(adem_reduce({2, 2}) == AlgebraElement({3, 1}));
    CHECK(adem_reduce({1, 2}) == AlgebraElement({3}));
    CHECK(adem_reduce({2, 3}) == AlgebraElement({5}) + AlgebraElement({4, 1}));
    CHECK(adem_reduce({3, 1}) == AlgebraElement({3, 1}));  // already admissible
    CHECK(adem_reduce({}) == AlgebraElement::one());
}

TEST_CASE("adem output is admissible and degree-preserving") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        Word w;
        int degree = 0;
        int len = 1 + int(rng() % 4);
        for (int k = 0; k < len; ++k) {
            int i = 1 + int(rng() % 6);
            w.push_back(i);
            degree += i;
        }
        AlgebraElement reduced = adem_reduce(w);
        for (const Word& term : reduced.terms()) {
            CHECK(is_admissible(term));
            CHECK(word_degree(term) == degree);
        }
    }
}

TEST_CASE("multiplication is associative and unital") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        AlgebraElement a = random_element(rng, 6), b = random_element(rng, 5),
                       c = random_element(rng, 4);
        CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
        CHECK(multiply(a, AlgebraElement::one()) == a);
        CHECK(multiply(AlgebraElement::one(), a) == a);
    }
}

TEST_CASE("antipode") {
    CHECK(antipode(AlgebraElement::sq(1)) == AlgebraElement::sq(1));
    CHECK(antipode(AlgebraElement::sq(2)) == AlgebraElement::sq(2));
    CHECK(antipode(AlgebraElement::sq(3)) == AlgebraElement({2, 1}));
    // involution on every admissible basis element in low degrees
    for (int d = 0; d <= 16; ++d)
        for (const Word& w : admissible_basis(d, Profile::A())) {
            AlgebraElement x(w);
            CHECK(antipode(antipode(x)) == x);
        }
    // anti-homomorphism
    std::mt19937 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        AlgebraElement a = random_element(rng, 5), b = random_element(rng, 5);
        CHECK(antipode(multiply(a, b)) == multiply(antipode(b), antipode(a)));
    }
}

TEST_CASE("exterior primitives") {
    CHECK(milnor_primitive(0) == AlgebraElement::sq(1));
    CHECK(milnor_primitive(1) == AlgebraElement({3}) + AlgebraElement({2, 1}));
    CHECK(milnor_primitive(2).degree() == 7);
    for (int n = 0; n <= 2; ++n) {
        AlgebraElement q = milnor_primitive(n);
        CHECK(q.degree() == (1 << (n + 1)) - 1);
        CHECK(multiply(q, q).is_zero());
        // Q_n commutes with everything in A(n)
        for (int d = 1; d <= (1 << (n + 1)) - 1; ++d)
            for (const Word& w : admissible_basis(d, Profile::An(n))) {
                AlgebraElement x(w);
                CHECK(multiply(q, x) == multiply(x, q));
            }
    }
}

TEST_CASE("mod-2 binomials") {
    CHECK(binom_mod2(0, 0));
    CHECK(binom_mod2(3, 1));
    CHECK_FALSE(binom_mod2(4, 2));
    CHECK(binom_mod2(5, 4));
    // Lucas: C(n, k) odd iff k's bits are a subset of n's
    for (int n = 0; n < 32; ++n)
        for (int k = 0; k <= n; ++k) CHECK(binom_mod2(n, k) == ((n & k) == k));
}

TEST_CASE("graded bases") {
    // the height-2 subalgebra has total dimension 64 and top degree 23
    int total = 0;
    for (int d = 0; d <= 23; ++d) total += int(admissible_basis(d, Profile::An(2)).size());
    CHECK(total == 64);
    CHECK(admissible_basis(24, Profile::An(2)).empty());

    // whole-algebra dimension agrees with the count of dual monomials
    for (int d = 0; d <= 20; ++d)
        CHECK(admissible_basis(d, Profile::A()).size() ==
              dual_quotient_basis(d, DualBasisKind::whole).size());

    // admissible words only
    for (int d = 0; d <= 12; ++d)
        for (const Word& w : admissible_basis(d, Profile::A())) CHECK(is_admissible(w));
}

TEST_CASE("profiles parse and print") {
    CHECK(parse_profile("A") == Profile::A());
    CHECK(parse_profile("A2") == Profile::An(2));
    CHECK(parse_profile("EQ2") == Profile::EQ(2));
    CHECK_THROWS_AS(parse_profile("B3"), std::invalid_argument);
    CHECK(Profile::A().top_generator() == -1);
    CHECK(Profile::An(1).top_generator() == 3);
    CHECK(Profile::EQ(2).top_generator() == 7);
    CHECK(parse_profile(Profile::An(2).to_string()) == Profile::An(2));
}

TEST_CASE("element text round trip") {
    AlgebraElement parsed = parse_algebra_element("Sq2 Sq2");
    CHECK(parsed == AlgebraElement({3, 1}));  // reduced on input
    CHECK(parse_algebra_element("0").is_zero());
    CHECK(parse_algebra_element("1") == AlgebraElement::one());
    AlgebraElement sum = parse_algebra_element("Sq5 + Sq4 Sq1");
    CHECK(sum == adem_reduce({2, 3}));
    CHECK(parse_algebra_element(sum.to_string()) == sum);
}
