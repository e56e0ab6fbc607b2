#pragma once

// The dual algebra: a polynomial algebra on generators xi_i of degree 2^i - 1.
// Monomials are exponent tuples; elements are mod-2 sums of monomials. This
// layer provides the coproduct, the conjugated generators zeta_i, the right
// action of total squares, the Milnor pairing against admissible words, and
// graded monomial bases for A(n)_*, (A // A(n))_*, and the whole dual.
//
// All graded computations here are capped at degree 48; requests beyond the
// cap throw std::out_of_range.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sq2/steenrod.hpp"

namespace sq2 {

inline constexpr int kDualDegreeCap = 48;

// Exponent tuple (e_1, e_2, ...), trailing zeros trimmed; empty = unit.
using DualMonomial = std::vector<int>;

int monomial_degree(const DualMonomial& m);
DualMonomial monomial_product(const DualMonomial& a, const DualMonomial& b);
std::string monomial_to_string(const DualMonomial& m);

// Canonical order used for every per-degree monomial enumeration: descending
// lexicographic on the exponent tuple (largest xi_1-exponent first).
bool monomial_before(const DualMonomial& a, const DualMonomial& b);

// A mod-2 sum of monomials, kept sorted by monomial_before with no repeats.
class DualElement {
public:
    DualElement() = default;
    explicit DualElement(DualMonomial m) { terms_.push_back(std::move(m)); }
    static DualElement zero() { return DualElement(); }
    static DualElement one() { return DualElement(DualMonomial{}); }

    const std::vector<DualMonomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // homogeneous degree; -1 for zero

    void add_term(const DualMonomial& m);
    DualElement& operator+=(const DualElement& other);
    friend DualElement operator+(DualElement a, const DualElement& b) {
        a += b;
        return a;
    }
    bool operator==(const DualElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const DualElement& o) const { return !(*this == o); }
    std::string to_string() const;

private:
    std::vector<DualMonomial> terms_;
};

DualElement multiply(const DualElement& a, const DualElement& b);
DualElement power(const DualElement& a, int e);  // Frobenius-aware square-and-multiply

// Which graded monomial family to enumerate.
enum class DualBasisKind {
    whole,        // all monomials of A_*
    subalgebra,   // A(n)_*: exponent of xi_i < 2^{n+2-i}, xi_i absent for i > n+1
    quotient,     // (A // A(n))_*: exponent of xi_i divisible by 2^{n+2-i} up to i = n+1
};

// Monomials of the given degree in descending-lex order.
//  - whole:      every exponent tuple
//  - subalgebra: the profile of A(n)
//  - quotient:   exponent of xi_i divisible by 2^{n+2-i} for i <= n+1, free beyond
// 'n' is ignored for kind == whole.
std::vector<DualMonomial> dual_quotient_basis(int degree, DualBasisKind kind, int n = 2);

bool in_subalgebra_profile(const DualMonomial& m, int n);
bool in_quotient_profile(const DualMonomial& m, int n);

// Splits m uniquely as (subalgebra part) * (quotient part) for A(n):
// the subalgebra part takes each exponent mod its profile bound.
std::pair<DualMonomial, DualMonomial> split_by_profile(const DualMonomial& m, int n);

// Full coproduct of a monomial: the sorted list of (left, right) pairs with
// odd coefficient, ends included.
using CoproductPairs = std::vector<std::pair<DualMonomial, DualMonomial>>;
const CoproductPairs& coproduct(const DualMonomial& m);

// chi(xi_i) expanded in xi-monomials (zeta_i up to the naming convention).
const DualElement& conjugate_generator(int i);

// Right action of the total square, restricted to codegree i:
// (x) Sq^i is the degree (deg x - i) part of x evaluated at xi_k -> xi_k + xi_{k-1}.
DualElement right_total_sq(const DualElement& x, int i);

// Milnor pairing of an admissible-basis element against a monomial.
bool pairing(const Word& admissible, const DualMonomial& m);
bool pairing(const AlgebraElement& a, const DualMonomial& m);

// Coordinates of an admissible word in the Milnor basis of its degree: the
// sum of all monomials pairing to 1 (the dual-basis expansion).
DualElement admissible_to_milnor(const Word& w);

// Inverse change of basis: the admissible-form element pairing to 1 on the
// given monomial and to 0 on every other monomial of that degree.
AlgebraElement milnor_to_admissible(const DualMonomial& m);

// Parses "xi1^8 xi2^4", "1", or '+'-joined sums of such monomials.
DualElement parse_dual_element(const std::string& text);

}  // namespace sq2
