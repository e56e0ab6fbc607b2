#pragma once

// Enumeration of the 2^18 choice vectors parametrizing extensions of the
// rank-one free module over the height-2 subalgebra to a module over the
// whole algebra, via degree-preserving sections j of the dual projection
// pi: A_* -> A(2)_*.  A choice vector pins 18 coordinates of the section:
// 14 coordinates in degrees 8, 12, 14, 15 (one per subalgebra basis
// monomial there, against the unique quotient-profile monomial of that
// degree) and 4 coordinates in degree 16 (the coefficients of xi_1^16 that
// the lower coordinates never determine).  The remaining coefficients are
// forced degree by degree by coassociativity of the induced coaction
// rho = (1 (x) pi) o psi o j; the choice is admissible exactly when the
// forcing never meets a contradiction, and each admissible choice carries a
// distinct module structure.

#include <cstdint>
#include <vector>

#include "sq2/dual.hpp"
#include "sq2/module.hpp"

namespace sq2 {

// An 18-bit choice vector; bit k pins coordinate k as described above.
using SMap = uint32_t;
inline constexpr int kSMapBits = 18;
inline constexpr uint32_t kSMapCount = uint32_t(1) << kSMapBits;

struct SMapSlot {
    int degree = 0;
    DualMonomial monomial;  // subalgebra basis monomial the bit belongs to
    DualMonomial target;    // the unique quotient-profile monomial of that degree
};

// The 18 slots: every subalgebra basis monomial in the seven degrees 8, 12,
// 14, 15, 20, 22, 23 (slot counts 3, 4, 4, 3, 2, 1, 1), ordered
// degree-ascending and descending-lex within a degree. Each of those degrees
// carries exactly one quotient-profile monomial, the slot's target. Bits
// 0..13 pin the coefficient of the target in the j-value of the monomial;
// bits 14..17 pin the degree-16 coordinates listed by completion_monomials()
// instead (the four slot monomials of degrees 20..23 keep naming the bits,
// but those coordinates of an admissible section are forced, not free).
const std::vector<SMapSlot>& smap_slots();

// The 64 subalgebra basis monomials, degree-ascending then descending-lex.
// Everything below indexes generators in this order.
const std::vector<DualMonomial>& a2_basis_order();

// The four degree-16 basis monomials whose xi_1^16-coefficients in the
// section are independent of all lower coordinates; bits 14..17 pin them in
// this order. (The fifth degree-16 basis monomial's coefficient is forced.)
const std::vector<DualMonomial>& completion_monomials();

// j-values of all 64 basis monomials, index-aligned with a2_basis_order().
// `coassociative` is true when the values were forced by the admissible-
// choice solver; false when they are the raw inductive transcript below.
struct JTable {
    std::vector<DualElement> values;
    bool coassociative = false;
};

// The admissible section for s when one exists (coassociative = true);
// otherwise the inductive transcript of recursion_table(s). Either way
// pi(j(a)) = a for every basis monomial and j(1) = 1.
JTable j_table(SMap s);

// The literal inductive reading of the section: j(a) = a + s(a) + the sum
// over middle coproduct pairs of j(pi(a')) * sbar(a''), where s places the
// slot targets gated by the bits and sbar extends s through the tensor
// splitting of A_* by carrying the quotient part along (sbar(q) = q on
// quotient-profile monomials, sbar(m*q) = s(m)*q on mixed ones). This
// transcript is a section of pi but is coassociative only on a thin slice
// of the choice space; j_table prefers the solver and falls back to this.
JTable recursion_table(SMap s);

// True when the 18 pinned coordinates extend to a (then unique) section
// with coassociative coaction — the obstruction lives in the top degree of
// the forcing. Exactly the admissible choices induce module structures.
bool roth_criterion(SMap s);

// Exhaustive scan of all 2^18 candidates; `valid` is ascending and is
// independent of the worker count.
struct RothScan {
    std::vector<SMap> valid;
};
RothScan enumerate_valid(int workers = 1);

// The 64-dimensional module over the whole algebra carried by an admissible
// choice: the matrix entry of Sq^i between generators y, x is the
// coefficient of x in pi((j(y)) Sq^i) under the right action of total
// squares. Requires roth_criterion(s); the output is checked against the
// algebra relations and a failure throws.
FiniteModule module_from_smap(SMap s);

// True when the composite Q_2 Sq^8 Q_2 annihilates the degree-0 generator,
// the obstruction governing the quotient below.
bool quotient_condition(const FiniteModule& a2);

// Quotient of a2 by the submodule generated by Q_2 of its degree-0
// generator; throws std::runtime_error when quotient_condition fails.
FiniteModule b2_from_a2(const FiniteModule& a2);

}  // namespace sq2
