#include "sq2/toda.hpp"

#include <set>
#include <stdexcept>

namespace sq2 {

std::string CriterionReport::to_string() const {
    if (verdict) return "true (checked 3 <= s <= " + std::to_string(s_cap) + ")";
    std::string out = "false:";
    for (const CriterionWitness& w : witnesses)
        out += " Ext^{" + std::to_string(w.s) + "," + std::to_string(w.t) +
               "} has dim " + std::to_string(w.dim);
    return out;
}

CriterionReport toda_criterion_one(const FiniteModule& m, const MinimalResolution& chart,
                                   int s_cap) {
    if (chart.s_max() < s_cap)
        throw std::out_of_range("toda_criterion_one: chart computed to s <= " +
                                std::to_string(chart.s_max()) + ", need " +
                                std::to_string(s_cap));
    CriterionReport report;
    report.s_cap = s_cap;
    std::set<int> degrees;
    for (int d : m.generator_degrees()) degrees.insert(d);
    for (int n : degrees)
        for (int s = 3; s <= s_cap; ++s) {
            int dim = chart.ext_dim(s, n + s - 2);  // throws when t is uncovered
            if (dim) report.witnesses.push_back({s, n + s - 2, dim});
        }
    report.verdict = report.witnesses.empty();
    return report;
}

CriterionReport toda_criterion_two(const FiniteModule& m, int s_cap) {
    MinimalResolution chart = ext_self(m, s_cap, s_cap - 2);
    CriterionReport report;
    report.s_cap = s_cap;
    for (int s = 3; s <= s_cap; ++s) {
        int dim = chart.ext_dim(s, s - 2);
        if (dim) report.witnesses.push_back({s, s - 2, dim});
    }
    report.verdict = report.witnesses.empty();
    return report;
}

long realization_count(const FiniteModule& m, int s_cap) {
    MinimalResolution chart = ext_self(m, s_cap, s_cap - 1);
    for (int s = 3; s <= s_cap; ++s)
        if (int dim = chart.ext_dim(s, s - 1))
            throw std::runtime_error(
                "realization_count: the count formula needs Ext^{s,s-1}(M,M) = 0 for "
                "3 <= s <= " +
                std::to_string(s_cap) + ", but dim Ext^{" + std::to_string(s) + "," +
                std::to_string(s - 1) + "} = " + std::to_string(dim));
    return 1L << chart.ext_dim(2, 1);
}

}  // namespace sq2
