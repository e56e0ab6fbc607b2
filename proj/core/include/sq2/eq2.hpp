#pragma once

// Structural Ext over the exterior algebra E(Q_2): every module splits into
// shifted copies of E(Q_2) and of F_2, so Ext charts can be read off from the
// decomposition instead of a resolution, and tensor products reduce to a
// convolution of summand shifts.

#include <map>
#include <string>
#include <utility>

#include "sq2/module.hpp"

namespace sq2 {

struct Eq2Decomposition {
    std::map<int, int> free_shifts;     // shift -> number of E(Q2) summands based there
    std::map<int, int> trivial_shifts;  // shift -> number of F2 summands there

    int free_count() const;
    int trivial_count() const;
    bool operator==(const Eq2Decomposition& o) const = default;
};

// Splits a module with a Q2 action (exterior profile, or any profile
// containing Q2) into irreducibles.  Free summand count per degree is the
// rank of Q2 there; trivial summand count is the Margolis homology dimension.
Eq2Decomposition decompose(const FiniteModule& m);

// Decomposition of a tensor product from the factors' decompositions:
// F2 (x) F2 = F2, F2 (x) E = E, E (x) E = E + (shift-7 E), shifts adding.
Eq2Decomposition tensor_decomp(const Eq2Decomposition& a, const Eq2Decomposition& b);

// Ext chart: each trivial summand at shift d contributes a v2-tower
// (s, 7s + d) for 0 <= s <= s_max; each free summand one class at (0, d).
std::map<std::pair<int, int>, int> ext_chart_from_decomp(const Eq2Decomposition& d, int s_max);

// rendering like "E(Q2) + S^4 F2 + S^6 F2"
std::string decomposition_to_string(const Eq2Decomposition& d);

}  // namespace sq2
