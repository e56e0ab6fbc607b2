#pragma once

// Assembly of the filtered Ext chart ("E1 page") obtained by stacking, for
// each composition (j_1..j_n), the E(Q_2)-decomposition of the tensor product
// of weight-8j Brown-Gitler modules, shifted by 8*sum(j): each trivial
// summand contributes a v2-tower, each free summand a single class.  The
// dual-smash variant is a direct sum of 32 degree-translated copies, one per
// exterior generator pair (xi1^i1, xi2^i2).  Known structure: multiplicative
// generator names on filtration-pure classes, and the single tabled d2.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sq2/bg.hpp"
#include "sq2/eq2.hpp"

namespace sq2 {

struct E1Class {
    int s = 0, t = 0, n = 0;  // homological filtration, internal degree, column filtration

    // provenance
    std::vector<int> composition;  // (j_1..j_n)
    int shift = 0;                 // summand shift inside the decomposition
    bool free_summand = false;     // E(Q2) summand (single class) vs F2 (tower)
    int tower = 0;                 // v2-power above the tower base; s = n + tower
    // one tag per composition factor when every chosen summand has a unique
    // generator monomial at its shift; absent otherwise
    std::optional<std::vector<BGMonomial>> factors;

    std::string may_name;                           // set by assign_may_names
    std::optional<std::pair<int, int>> translate;   // (i1, i2) copy tag for self pages
    bool killed = false;

    // Fully rendered chart label: May name or v2-power base, plus the
    // translate suffix "g(xi1^a xi2^b)"; empty when the class has no name.
    std::string label() const;

    bool operator==(const E1Class& o) const = default;
};

struct E1Page {
    int max_stem = 0, max_s = 0;
    std::vector<E1Class> classes;
    // indices into classes: the tabled d2 pairs
    std::vector<std::pair<int, int>> differentials;
};

// Page for the rank-32 quotient module itself.  Compositions are enumerated
// while 8*sum(j) - n <= max_stem + 1; classes are clipped to t-s <= max_stem,
// s <= max_s.  Compositions needing a Brown-Gitler module beyond max_j throw.
E1Page assemble_e1(int max_stem, int max_s, int max_j = 3, int workers = 1);

// Direct sum of 32 copies of assemble_e1(max_stem, max_s), copy (i1, i2)
// translated by t -> t - (i1 + 3*i2), 0 <= i1 <= 7, 0 <= i2 <= 3.
E1Page assemble_e1_self(int max_stem, int max_s, int max_j = 3, int workers = 1);

// Names classes with s == n whose factor tags are all single-generator
// monomials with power-of-two exponents; other classes are left unnamed.
E1Page assign_may_names(E1Page page);

// Records the one tabled d2 per translate copy: source labeled h_{2,2}^2 at
// (2, 24, 2), target h_3^3 at (3, 24, 3), both in the copy's coordinates.
// Applied only when both endpoints fit the page window; present-but-missing
// endpoints throw (chart inconsistency).  Both ends are marked killed.
E1Page apply_known_differentials(E1Page page);

// May-name helper exposed for rendering: product over factors of h_{i,j}
// (written h_j when i = 1) for factor monomials z_i^(2^j); "" when any factor
// is not such a monomial.  Empty factor list -> "".
std::string may_name_from_factors(const std::vector<BGMonomial>& factors);

}  // namespace sq2
