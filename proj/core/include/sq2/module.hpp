#pragma once

// Finite graded modules with generator-indexed Steenrod actions, stored the
// way module-definition files spell them: a list of generator degrees plus
// sparse action lines "i k l j1 ... jl" meaning Sq^k(g_i) = g_j1 + ... + g_jl
// (unlisted actions are zero). For an exterior profile E(Q_n), the single
// action key 2^{n+1}-1 denotes Q_n rather than Sq^{2^{n+1}-1}.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sq2/dual.hpp"
#include "sq2/f2.hpp"
#include "sq2/profile.hpp"
#include "sq2/steenrod.hpp"

namespace sq2 {

class FiniteModule {
public:
    FiniteModule() = default;
    FiniteModule(Profile profile, std::vector<int> generator_degrees);

    const Profile& profile() const { return profile_; }
    void set_profile(Profile p) { profile_ = p; }

    int dim() const { return int(gen_degree_.size()); }
    int dim_at(int degree) const;
    const std::vector<int>& generator_degrees() const { return gen_degree_; }
    int generator_degree(int gen) const { return gen_degree_[gen]; }
    int min_degree() const;  // 0 for the empty module
    int max_degree() const;
    int span() const { return dim() ? max_degree() - min_degree() : 0; }

    // Generators of one degree, ascending by generator id.
    const std::vector<int>& generators_at(int degree) const;
    // Position of gen within generators_at(its degree).
    int index_in_degree(int gen) const;

    // Replaces the Sq^k row of one generator; targets are checked for range
    // and degree consistency.
    void set_action(int k, int gen, std::vector<int> targets);
    const std::vector<int>& action_targets(int k, int gen) const;
    std::vector<int> action_keys() const;  // keys with any nonzero row

    // Matrix of Sq^k from the degree-d piece to the degree-(d+k) piece,
    // rows/columns in generators_at order.
    F2Matrix action_matrix(int k, int degree) const;

    // Applies a (degree, coordinates) module element through an admissible-
    // form algebra element; words act letter by letter through the stored
    // action matrices, missing keys acting as zero.
    std::pair<int, F2Vector> apply_element(const AlgebraElement& a, int degree,
                                           const F2Vector& coords) const;

    bool operator==(const FiniteModule& o) const;

private:
    Profile profile_ = Profile::A();
    std::vector<int> gen_degree_;
    std::map<int, std::vector<int>> gens_by_degree_;
    std::vector<int> index_in_degree_;
    std::map<int, std::vector<std::vector<int>>> actions_;  // k -> per-gen targets
};

// --- module-definition text -------------------------------------------------

struct ParseError {
    int line = 0;
    std::string message;
};

// Parses the text format; throws std::runtime_error carrying line info on
// malformed input, out-of-range indices, degree mismatches, or duplicate
// (generator, k) lines. The profile of the result defaults to the whole
// algebra; set_profile() afterwards as needed.
FiniteModule parse_bruner(const std::string& text);

// Byte-stable writer: generator count, blank line, degree line, blank line,
// then action lines sorted by (generator, k) with ascending targets.
std::string write_bruner(const FiniteModule& m);

// --- validation ---------------------------------------------------------------

// Checks that the stored actions satisfy the algebra they claim. Returns
// human-readable violations; empty means valid.
//  - whole algebra: every Adem pair (a < 2b, a + b <= span) holds as matrices,
//    missing actions read as zero;
//  - A(n): no stored action with k >= 2^{n+1} may be nonzero, stored actions
//    must agree with the Milnor-basis operators evaluated through the
//    generator straightening table, and those operators must satisfy the
//    subalgebra's multiplication table on every basis element (complete by
//    induction on generator words);
//  - E(Q_n): the stored Q action squares to zero degreewise.
std::vector<std::string> validate(const FiniteModule& m);

// --- constructions ------------------------------------------------------------

FiniteModule tensor(const FiniteModule& a, const FiniteModule& b);
FiniteModule dual_module(const FiniteModule& m);
FiniteModule suspend(const FiniteModule& m, int t);

// A(n) as a left module over itself, Milnor basis ordered degree-ascending
// then descending-lex; action matrices are left multiplication by Sq^k.
FiniteModule canonical_algebra_module(const Profile& profile);  // profile = A(n), n <= 2

// The canonical quotient of A(n) by the right ideal A(n)Q_n.
FiniteModule canonical_quotient_module(int n);  // n <= 2

// Right multiplication by Q_n on A(n): image, ambient, and quotient, with the
// degreewise inclusion and projection matrices.
struct QRightSes {
    FiniteModule sub, total, quot;
    std::map<int, F2Matrix> inclusion;   // sub_t -> total_t coordinates
    std::map<int, F2Matrix> projection;  // total_t -> quot_t coordinates
};
QRightSes q_right_ses(int n);  // n <= 2

// Margolis homology with respect to Q_n: degree -> dim H(M; Q_n).
std::map<int, int> margolis_homology(const FiniteModule& m, int n);

// Forgets actions outside the target profile (e.g. view an A-module over
// A(1) by dropping Sq^k for k >= 4).
FiniteModule restrict_profile(const FiniteModule& m, const Profile& target);

// --- submodules / quotients ---------------------------------------------------

struct SubmoduleResult {
    FiniteModule module;
    // Rows of the echelon basis per degree, as ambient coordinate vectors.
    std::map<int, std::vector<F2Vector>> basis;
};

// Smallest action-closed submodule containing the seeds (degree -> vectors).
SubmoduleResult submodule_closure(const FiniteModule& m,
                                  const std::map<int, std::vector<F2Vector>>& seeds);

struct QuotientResult {
    FiniteModule module;
    std::map<int, QuotientMap> maps;  // ambient degree -> projection data
};

// Quotient of m by an action-closed subspace (degree -> spanning vectors).
QuotientResult quotient_module(const FiniteModule& m,
                               const std::map<int, std::vector<F2Vector>>& subspace);

// --- comparison ----------------------------------------------------------------

// Searches for a degree-preserving generator relabeling turning a into b
// (actions matched exactly). Returns the permutation p with p[a_gen] = b_gen,
// or nullopt.
std::optional<std::vector<int>> find_generator_permutation(const FiniteModule& a,
                                                           const FiniteModule& b);

// Checks that a degreewise matrix family (degree -> map source_d -> target_d,
// columns indexed by source basis) commutes with every stored Sq^k action of
// both modules. Missing degrees are treated as zero maps; each failure is
// reported as a human-readable string.
std::vector<std::string> map_violations(const FiniteModule& source,
                                        const FiniteModule& target,
                                        const std::map<int, F2Matrix>& matrices);

}  // namespace sq2
