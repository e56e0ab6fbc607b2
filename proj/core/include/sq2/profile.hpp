#pragma once

// Graded-basis view of the coefficient algebras that module validation and
// minimal resolutions run over:
//   - the whole algebra, in the admissible-word basis;
//   - a finite subalgebra A(n), in its Milnor basis (indexed by the
//     in-profile monomials of its dual), with products read off from dual
//     coproduct structure constants and module actions evaluated through a
//     straightening table over the generators Sq^1, Sq^2, ..., Sq^{2^n};
//   - an exterior algebra E(Q_n) on one primitive of degree 2^{n+1} - 1.
//
// Instances cache heavily and are not thread-safe; use one per thread.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sq2/dual.hpp"
#include "sq2/steenrod.hpp"

namespace sq2 {

class AlgebraBasis {
public:
    explicit AlgebraBasis(Profile profile) : profile_(profile) {}

    const Profile& profile() const { return profile_; }

    int dim(int degree) const;
    std::string element_name(int degree, int index) const;

    // Admissible word of basis element (full algebra only).
    const Word& word(int degree, int index) const;
    // Dual monomial indexing the Milnor basis element (subalgebra only).
    const DualMonomial& monomial(int degree, int index) const;
    int monomial_index(int degree, const DualMonomial& m) const;  // -1 if absent

    // Coordinates of basis(d1,i1) * basis(d2,i2) in basis(d1+d2).
    const F2Vector& product(int d1, int i1, int d2, int i2) const;

    // Degrees of a generating set of the algebra, absolute value <= cap.
    std::vector<int> generator_degrees(int cap) const;

    // Subalgebra straightening: basis(d, i) = sum over (k, j) of
    // Sq^k * basis(d-k, j), with k ranging over generator degrees.
    const std::vector<std::pair<int, int>>& straightening(int degree, int index) const;

private:
    Profile profile_;
    mutable std::map<int, std::vector<Word>> words_;
    mutable std::map<int, std::vector<DualMonomial>> monomials_;
    mutable std::map<int, std::map<DualMonomial, int>> monomial_index_;
    mutable std::map<int, std::map<Word, int>> word_index_;
    mutable std::map<std::pair<int, int>, std::vector<std::vector<F2Vector>>> products_;
    mutable std::map<int, std::vector<std::vector<std::pair<int, int>>>> straightening_;

    const std::vector<Word>& words_at(int degree) const;
    const std::vector<DualMonomial>& monomials_at(int degree) const;
    const std::vector<std::vector<F2Vector>>& product_table(int d1, int d2) const;
};

}  // namespace sq2
