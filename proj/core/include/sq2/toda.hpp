#pragma once

// Realizability tests for a finite module over the whole Steenrod algebra:
// two vanishing-line criteria on Ext charts, and the 2^dim count of distinct
// realizations read off Ext^{2,1}(M, M).

#include <string>
#include <vector>

#include "sq2/module.hpp"
#include "sq2/resolve.hpp"

namespace sq2 {

struct CriterionWitness {
    int s = 0, t = 0, dim = 0;
};

struct CriterionReport {
    bool verdict = false;
    int s_cap = 0;  // "true" always means "true for 3 <= s <= s_cap"
    std::vector<CriterionWitness> witnesses;

    std::string to_string() const;
};

// Checks Ext^{s, n+s-2}(m, F2) = 0 for every degree n where m is nonzero and
// 3 <= s <= s_cap, reading dims from the supplied resolution of m.  Throws
// std::out_of_range when the resolution window does not cover the check.
CriterionReport toda_criterion_one(const FiniteModule& m, const MinimalResolution& chart,
                                   int s_cap = 10);

// Checks Ext^{s, s-2}(m, m) = 0 for 3 <= s <= s_cap, computing the self-Ext
// resolution internally.
CriterionReport toda_criterion_two(const FiniteModule& m, int s_cap = 10);

// 2^(dim Ext^{2,1}(m, m)).  Requires Ext^{s,s-1}(m, m) = 0 for 3 <= s <= s_cap
// (the count formula's hypothesis); throws std::runtime_error otherwise.
long realization_count(const FiniteModule& m, int s_cap = 8);

}  // namespace sq2
