#pragma once

// Minimal free resolutions over the coefficient algebra a module carries,
// computed degreewise; Ext groups are read off as generator counts.

#include <map>
#include <utility>
#include <vector>

#include "sq2/module.hpp"
#include "sq2/profile.hpp"

namespace sq2 {

// Action matrices for arbitrary algebra basis elements on a module, derived
// from the stored actions: admissible words for the whole algebra, the
// straightening table over Sq^1..Sq^{2^n} for a subalgebra, and Q itself for
// an exterior profile.  Caches matrices; not thread-safe.
class ModuleOperators {
public:
    ModuleOperators(const AlgebraBasis& alg, const FiniteModule& m);

    // matrix of basis element (d, i) from the degree-t piece into degree t+d
    const F2Matrix& matrix(int d, int i, int t);

private:
    const AlgebraBasis& alg_;
    const FiniteModule& m_;
    std::map<std::tuple<int, int, int>, F2Matrix> memo_;
};

struct ResolutionOptions {
    // guard on the basis size of any single (level, degree) piece; exceeding
    // it aborts the computation with an explicit error
    int max_basis_per_degree = 20000;
};

class MinimalResolution {
public:
    MinimalResolution(Profile profile, int s_max, int t_max,
                      std::vector<std::vector<int>> generator_degrees)
        : profile_(profile), s_max_(s_max), t_max_(t_max), gens_(std::move(generator_degrees)) {}

    const Profile& profile() const { return profile_; }
    int s_max() const { return s_max_; }
    int t_max() const { return t_max_; }

    // generator degrees of the level-s free module, ascending
    const std::vector<int>& level_generator_degrees(int s) const { return gens_.at(s); }

    // dim Ext^{s,t}; throws std::out_of_range outside the computed window
    int ext_dim(int s, int t) const;

    // all nonzero (s, t) -> dim entries in the window
    std::map<std::pair<int, int>, int> ext_table() const;

private:
    Profile profile_;
    int s_max_;
    int t_max_;
    std::vector<std::vector<int>> gens_;
};

// Minimal resolution of m by free modules over its own coefficient algebra,
// through homological degree s_max and internal degree t_max.
MinimalResolution minimal_resolution(const FiniteModule& m, int s_max, int t_max,
                                     ResolutionOptions options = {});

// dim Ext^{s,t}(m, F2) for s <= s_max, t <= t_max, nonzero entries only
std::map<std::pair<int, int>, int> ext_dims(const FiniteModule& m, int s_max, int t_max,
                                            ResolutionOptions options = {});

// Ext^{s,t}(m, m) computed as the Ext of dual(m) (x) m
MinimalResolution ext_self(const FiniteModule& m, int s_max, int t_max,
                           ResolutionOptions options = {});

}  // namespace sq2
