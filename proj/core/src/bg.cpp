#include "sq2/bg.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sq2 {

int bg_generator_exponent(int i) { return i <= 4 ? (1 << (4 - i)) : 1; }

int bg_generator_degree(int i) { return bg_generator_exponent(i) * ((1 << i) - 1); }

int bg_generator_weight(int i) { return bg_generator_exponent(i) * (1 << (i - 1)); }

int bg_degree(const BGMonomial& m) {
    int d = 0;
    for (size_t i = 0; i < m.exponents.size(); ++i)
        d += m.exponents[i] * bg_generator_degree(int(i) + 1);
    return d;
}

int bg_weight(const BGMonomial& m) {
    int w = 0;
    for (size_t i = 0; i < m.exponents.size(); ++i)
        w += m.exponents[i] * bg_generator_weight(int(i) + 1);
    return w;
}

std::string bg_to_string(const BGMonomial& m) {
    std::string out;
    for (size_t i = 0; i < m.exponents.size(); ++i) {
        if (m.exponents[i] == 0) continue;
        if (!out.empty()) out += ' ';
        int total = m.exponents[i] * bg_generator_exponent(int(i) + 1);
        out += "z" + std::to_string(i + 1);
        if (total > 1) out += "^" + std::to_string(total);
    }
    return out.empty() ? "1" : out;
}

DualElement bg_expansion(const BGMonomial& m) {
    DualElement out(DualMonomial{});
    for (size_t i = 0; i < m.exponents.size(); ++i) {
        if (m.exponents[i] == 0) continue;
        int e = m.exponents[i] * bg_generator_exponent(int(i) + 1);
        out = multiply(out, power(conjugate_generator(int(i) + 1), e));
    }
    return out;
}

namespace {

bool bg_before(const BGMonomial& a, const BGMonomial& b) {
    int da = bg_degree(a), db = bg_degree(b);
    if (da != db) return da < db;
    // descending lexicographic on exponent tuples within a degree
    size_t k = std::max(a.exponents.size(), b.exponents.size());
    for (size_t i = 0; i < k; ++i) {
        int ea = i < a.exponents.size() ? a.exponents[i] : 0;
        int eb = i < b.exponents.size() ? b.exponents[i] : 0;
        if (ea != eb) return ea > eb;
    }
    return false;
}

void enumerate_weight(int i, int remaining, std::vector<int>& current,
                      std::vector<BGMonomial>& out) {
    if (remaining == 0) {
        BGMonomial m{current};
        while (!m.exponents.empty() && m.exponents.back() == 0) m.exponents.pop_back();
        out.push_back(std::move(m));
        return;
    }
    if (bg_generator_weight(i) > remaining) return;
    for (int e = 0; e * bg_generator_weight(i) <= remaining; ++e) {
        current.push_back(e);
        enumerate_weight(i + 1, remaining - e * bg_generator_weight(i), current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<BGMonomial> bg_basis(int j) {
    if (j < 0) throw std::invalid_argument("bg_basis: j must be >= 0");
    std::vector<BGMonomial> out;
    std::vector<int> current;
    enumerate_weight(1, 8 * j, current, out);
    std::sort(out.begin(), out.end(), bg_before);
    return out;
}

namespace {

// expresses x as a combination of the expansions of the degree-matching
// basis monomials; nullopt when x falls outside their span
std::optional<F2Vector> solve_into_basis(const DualElement& x,
                                         const std::vector<int>& candidates,
                                         const std::vector<DualElement>& expansions) {
    std::map<DualMonomial, int> row_of;
    auto intern = [&](const DualMonomial& m) {
        auto it = row_of.find(m);
        if (it == row_of.end()) it = row_of.emplace(m, int(row_of.size())).first;
        return it->second;
    };
    std::vector<std::vector<int>> col_rows(candidates.size());
    for (size_t c = 0; c < candidates.size(); ++c)
        for (const DualMonomial& t : expansions[candidates[c]].terms())
            col_rows[c].push_back(intern(t));
    std::vector<int> target_rows;
    for (const DualMonomial& t : x.terms()) target_rows.push_back(intern(t));

    F2Matrix mat(int(row_of.size()), int(candidates.size()));
    for (size_t c = 0; c < candidates.size(); ++c)
        for (int r : col_rows[c]) mat.set(r, int(c), true);
    F2Vector rhs(int(row_of.size()));
    for (int r : target_rows) rhs.set(r, true);
    return solve(mat, rhs);
}

FiniteModule build_bg_module(int j) {
    if (j < 0 || j > 4) throw std::invalid_argument("bg_module: j must be between 0 and 4");
    std::vector<BGMonomial> basis = bg_basis(j);
    std::vector<DualElement> expansions;
    std::vector<int> degrees;
    std::map<int, std::vector<int>> by_degree;
    for (size_t u = 0; u < basis.size(); ++u) {
        int d = bg_degree(basis[u]);
        if (d > kDualDegreeCap)
            throw std::out_of_range("bg_module: basis monomial " + bg_to_string(basis[u]) +
                                    " has degree " + std::to_string(d) +
                                    " above the dual-computation cap " +
                                    std::to_string(kDualDegreeCap));
        degrees.push_back(d - 8 * j);
        by_degree[d].push_back(int(u));
        expansions.push_back(bg_expansion(basis[u]));
    }

    FiniteModule out(Profile::An(2), degrees);
    std::map<std::pair<int, int>, std::vector<int>> rows;  // (k, source gen) -> targets
    for (size_t u = 0; u < basis.size(); ++u) {
        // coaction: the left coproduct factor carries the subalgebra part
        // (it pairs against the acting Sq^k), the right factor stays in the
        // weight span
        std::map<DualMonomial, DualElement> span_sums;
        for (const DualMonomial& mono : expansions[u].terms())
            for (const auto& [l, r] : coproduct(mono))
                if (in_subalgebra_profile(l, 2)) span_sums[l].add_term(r);

        for (const auto& [l, rest] : span_sums) {
            if (rest.is_zero()) continue;
            int source_degree = bg_degree(basis[u]) - monomial_degree(l);
            std::vector<int> candidates;
            auto found = by_degree.find(source_degree);
            if (found != by_degree.end()) candidates = found->second;
            std::optional<F2Vector> coords = solve_into_basis(rest, candidates, expansions);
            if (!coords)
                throw std::runtime_error(
                    "bg_module: coaction of " + bg_to_string(basis[u]) +
                    " leaves the weight-" + std::to_string(8 * j) +
                    " span (the weight rule fails)");
            // the xi_1^k component of the coaction gives the Sq^k action on
            // the dual basis: Sq^k(e_w) hits e_u exactly when w appears here
            if (l.size() == 1 && l[0] >= 1)
                for (int c : coords->support())
                    rows[{l[0], candidates[c]}].push_back(int(u));
        }
    }
    for (auto& [key, targets] : rows) out.set_action(key.first, key.second, std::move(targets));
    return out;
}

}  // namespace

const FiniteModule& bg_module(int j) {
    static std::mutex lock;
    static std::map<int, FiniteModule> cache;
    std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find(j);
    if (it == cache.end()) it = cache.emplace(j, build_bg_module(j)).first;
    return it->second;
}

}  // namespace sq2
