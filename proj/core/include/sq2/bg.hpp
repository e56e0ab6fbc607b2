#pragma once

// The weight splitting of the quotient coalgebra F2[zeta_1^8, zeta_2^4,
// zeta_3^2, zeta_4, zeta_5, ...]: the weight-8j span, desuspended by 8j, is
// an A(2)-module; its action is obtained by expanding the zeta-monomials in
// the xi-basis, coacting, and dualizing.

#include <string>
#include <vector>

#include "sq2/dual.hpp"
#include "sq2/module.hpp"

namespace sq2 {

// exponents[i] = power of the i-th polynomial generator, which is
// zeta_{i+1}^{8 / 2^i} for i <= 3 (zeta_1^8, zeta_2^4, zeta_3^2, zeta_4) and
// zeta_{i+1} afterwards; trailing zeros trimmed
struct BGMonomial {
    std::vector<int> exponents;

    bool operator==(const BGMonomial& o) const = default;
};

// exponent of zeta_{i} (1-based) inside the generator it powers
int bg_generator_exponent(int i);
int bg_generator_degree(int i);   // degree of the i-th generator (1-based)
int bg_generator_weight(int i);   // weight, with wt(zeta_i) = 2^{i-1}

int bg_degree(const BGMonomial& m);
int bg_weight(const BGMonomial& m);
std::string bg_to_string(const BGMonomial& m);  // e.g. "z2^4 z4"

// the zeta-monomial expanded into the xi-basis via the conjugation formulas
DualElement bg_expansion(const BGMonomial& m);

// all monomials of weight exactly 8j, ascending degree then descending
// lexicographic on exponents
std::vector<BGMonomial> bg_basis(int j);

// the weight-8j summand as an A(2)-module, desuspended by 8j; j <= 4
// (j = 4 exceeds the dual-arithmetic degree cap and raises that error)
const FiniteModule& bg_module(int j);

}  // namespace sq2
