#include "sq2/eq2.hpp"

#include <stdexcept>

namespace sq2 {

int Eq2Decomposition::free_count() const {
    int total = 0;
    for (const auto& [d, c] : free_shifts) total += c;
    return total;
}

int Eq2Decomposition::trivial_count() const {
    int total = 0;
    for (const auto& [d, c] : trivial_shifts) total += c;
    return total;
}

Eq2Decomposition decompose(const FiniteModule& m) {
    int n = m.profile().kind == Profile::Kind::ext_q ? m.profile().n : 2;
    int q = (1 << (n + 1)) - 1;

    std::map<int, int> q_rank;
    if (m.profile().kind == Profile::Kind::ext_q) {
        for (int d = m.min_degree(); d <= m.max_degree(); ++d)
            q_rank[d] = rref(m.action_matrix(q, d)).rank;
    } else {
        if (m.profile().kind == Profile::Kind::sub_a && m.profile().n < n)
            throw std::invalid_argument("decompose: Q2 lies outside the module's profile");
        AlgebraElement qn = milnor_primitive(n);
        for (int d = m.min_degree(); d <= m.max_degree(); ++d) {
            F2Matrix mat(m.dim_at(d + q), m.dim_at(d));
            for (int c = 0; c < m.dim_at(d); ++c) {
                F2Vector e(m.dim_at(d));
                e.set(c, true);
                auto [td, image] = m.apply_element(qn, d, e);
                for (int r : image.support()) mat.set(r, c, true);
            }
            q_rank[d] = rref(mat).rank;
        }
    }

    Eq2Decomposition out;
    for (int d = m.min_degree(); d <= m.max_degree(); ++d) {
        int rank_here = q_rank.count(d) ? q_rank[d] : 0;
        int rank_below = q_rank.count(d - q) ? q_rank[d - q] : 0;
        if (rank_here > 0) out.free_shifts[d] = rank_here;
        int trivial = m.dim_at(d) - rank_here - rank_below;
        if (trivial < 0)
            throw std::logic_error("decompose: Q2 ranks exceed the graded dimension");
        if (trivial > 0) out.trivial_shifts[d] = trivial;
    }
    return out;
}

Eq2Decomposition tensor_decomp(const Eq2Decomposition& a, const Eq2Decomposition& b) {
    Eq2Decomposition out;
    for (const auto& [da, ca] : a.trivial_shifts)
        for (const auto& [db, cb] : b.trivial_shifts) out.trivial_shifts[da + db] += ca * cb;
    for (const auto& [da, ca] : a.trivial_shifts)
        for (const auto& [db, cb] : b.free_shifts) out.free_shifts[da + db] += ca * cb;
    for (const auto& [da, ca] : a.free_shifts)
        for (const auto& [db, cb] : b.trivial_shifts) out.free_shifts[da + db] += ca * cb;
    for (const auto& [da, ca] : a.free_shifts)
        for (const auto& [db, cb] : b.free_shifts) {
            out.free_shifts[da + db] += ca * cb;
            out.free_shifts[da + db + 7] += ca * cb;
        }
    return out;
}

std::map<std::pair<int, int>, int> ext_chart_from_decomp(const Eq2Decomposition& d, int s_max) {
    std::map<std::pair<int, int>, int> out;
    for (const auto& [shift, count] : d.trivial_shifts)
        for (int s = 0; s <= s_max; ++s) out[{s, 7 * s + shift}] += count;
    for (const auto& [shift, count] : d.free_shifts) out[{0, shift}] += count;
    return out;
}

std::string decomposition_to_string(const Eq2Decomposition& d) {
    // all summands in ascending shift order, free before trivial on ties
    std::string out;
    auto append = [&](int shift, int count, const std::string& base) {
        for (int i = 0; i < count; ++i) {
            if (!out.empty()) out += " + ";
            if (shift != 0) out += "S^" + std::to_string(shift) + " ";
            out += base;
        }
    };
    auto f = d.free_shifts.begin();
    auto t = d.trivial_shifts.begin();
    while (f != d.free_shifts.end() || t != d.trivial_shifts.end()) {
        bool take_free = t == d.trivial_shifts.end() ||
                         (f != d.free_shifts.end() && f->first <= t->first);
        if (take_free) {
            append(f->first, f->second, "E(Q2)");
            ++f;
        } else {
            append(t->first, t->second, "F2");
            ++t;
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace sq2
