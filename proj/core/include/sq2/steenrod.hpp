#pragma once

// The mod-2 Steenrod algebra in the admissible-monomial basis: Adem
// reduction, products, antipode, exterior primitives Q_n, and graded bases
// for the whole algebra and its finite subalgebras A(n).

#include <string>
#include <vector>

#include "sq2/f2.hpp"

namespace sq2 {

// A word Sq^{i1} Sq^{i2} ... Sq^{ik}; entries are >= 1, the empty word is 1.
using Word = std::vector<int>;

inline int word_degree(const Word& w) {
    int d = 0;
    for (int i : w) d += i;
    return d;
}
inline bool is_admissible(const Word& w) {
    for (size_t j = 0; j + 1 < w.size(); ++j)
        if (w[j] < 2 * w[j + 1]) return false;
    return true;
}

// A sum of admissible words (canonical form: sorted descending, no repeats).
class AlgebraElement {
public:
    AlgebraElement() = default;
    explicit AlgebraElement(Word admissible_word);
    static AlgebraElement zero() { return AlgebraElement(); }
    static AlgebraElement one() { return AlgebraElement(Word{}); }
    static AlgebraElement sq(int i) { return AlgebraElement(Word{i}); }

    const std::vector<Word>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Degree of a homogeneous element; -1 for zero.
    int degree() const;

    void add_term(const Word& w);  // mod-2: inserts or cancels
    AlgebraElement& operator+=(const AlgebraElement& other);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
        a += b;
        return a;
    }
    bool operator==(const AlgebraElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    std::vector<Word> terms_;
};

// Rewrites an arbitrary word as a sum of admissible words via the Adem
// relations Sq^a Sq^b = sum_c C(b-1-c, a-2c) Sq^{a+b-c} Sq^c  (a < 2b).
AlgebraElement adem_reduce(const Word& w);

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

// Antipode: chi(Sq^n) = sum_{i=1..n} Sq^i chi(Sq^{n-i}), extended as an
// anti-homomorphism.
AlgebraElement antipode(const AlgebraElement& a);

// Q_0 = Sq^1, Q_n = Sq^{2^n} Q_{n-1} + Q_{n-1} Sq^{2^n}.
AlgebraElement milnor_primitive(int n);

bool binom_mod2(long long n, long long k);

// ---------------------------------------------------------------------------
// Profiles: the whole algebra A, a finite subalgebra A(n), or the exterior
// algebra E(Q_n) on one primitive.

struct Profile {
    enum class Kind { full_a, sub_a, ext_q };
    Kind kind = Kind::full_a;
    int n = 0;

    static Profile A() { return {Kind::full_a, 0}; }
    static Profile An(int n) { return {Kind::sub_a, n}; }
    static Profile EQ(int n) { return {Kind::ext_q, n}; }

    bool operator==(const Profile& o) const { return kind == o.kind && (kind == Kind::full_a || n == o.n); }
    bool operator!=(const Profile& o) const { return !(*this == o); }

    // Largest k for which Sq^k (resp. Q_n) belongs to the algebra; -1 = no bound.
    int top_generator() const;
    std::string to_string() const;
};

// Parses "A", "A0".."A9", "EQ0".."EQ9"; throws std::invalid_argument otherwise.
Profile parse_profile(const std::string& text);

// Graded basis in admissible form. For the full algebra this is every
// admissible word of the degree. For A(n) it is the set of admissible words
// that correspond to the subalgebra's Milnor basis under the unitriangular
// change of basis (r_j = i_j - 2 i_{j+1} componentwise in-profile); the
// individual words then span A(n)'s graded piece jointly with the identical
// leading terms, and the count equals dim A(n)_degree.
std::vector<Word> admissible_basis(int degree, const Profile& profile);

// Element text: terms joined by '+', each term whitespace-separated factors
// "SqN", or "1" for the unit, "0" for zero. Input words need not be
// admissible; the result is Adem-reduced.
AlgebraElement parse_algebra_element(const std::string& text);

}  // namespace sq2
