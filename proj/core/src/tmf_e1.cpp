#include "sq2/tmf_e1.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>

namespace sq2 {

namespace {

struct Summand {
    int shift = 0;
    bool free_summand = false;
    std::optional<std::vector<BGMonomial>> tags;
};

// decomposition of one Brown-Gitler factor, each summand tagged with the
// basis monomial at its shift when that monomial is unique
std::vector<Summand> factor_summands(int j) {
    const FiniteModule& mod = bg_module(j);
    Eq2Decomposition dec = decompose(mod);
    std::map<int, std::vector<BGMonomial>> at_degree;
    for (const BGMonomial& m : bg_basis(j)) at_degree[bg_degree(m) - 8 * j].push_back(m);
    auto tag_at = [&](int shift) -> std::optional<std::vector<BGMonomial>> {
        auto it = at_degree.find(shift);
        if (it == at_degree.end() || it->second.size() != 1) return std::nullopt;
        return std::vector<BGMonomial>{it->second.front()};
    };
    std::vector<Summand> out;
    for (const auto& [shift, count] : dec.free_shifts)
        for (int c = 0; c < count; ++c) out.push_back({shift, true, tag_at(shift)});
    for (const auto& [shift, count] : dec.trivial_shifts)
        for (int c = 0; c < count; ++c) out.push_back({shift, false, tag_at(shift)});
    return out;
}

std::optional<std::vector<BGMonomial>> concat_tags(
    const std::optional<std::vector<BGMonomial>>& a,
    const std::optional<std::vector<BGMonomial>>& b) {
    if (!a || !b) return std::nullopt;
    std::vector<BGMonomial> out = *a;
    out.insert(out.end(), b->begin(), b->end());
    return out;
}

std::vector<Summand> tensor_fold(const std::vector<Summand>& acc,
                                 const std::vector<Summand>& factor) {
    std::vector<Summand> out;
    for (const Summand& a : acc)
        for (const Summand& b : factor) {
            int shift = a.shift + b.shift;
            if (!a.free_summand && !b.free_summand) {
                out.push_back({shift, false, concat_tags(a.tags, b.tags)});
            } else if (a.free_summand && b.free_summand) {
                out.push_back({shift, true, concat_tags(a.tags, b.tags)});
                out.push_back({shift + 7, true, std::nullopt});
            } else {
                out.push_back({shift, true, concat_tags(a.tags, b.tags)});
            }
        }
    return out;
}

std::vector<E1Class> composition_classes(const std::vector<int>& comp,
                                         const std::vector<std::vector<Summand>>& factors,
                                         int max_stem, int max_s) {
    int n = int(comp.size()), weight = 0;
    for (int j : comp) weight += j;
    std::vector<Summand> summands{{0, false, std::vector<BGMonomial>{}}};
    for (int j : comp) summands = tensor_fold(summands, factors[j]);

    std::vector<E1Class> out;
    for (const Summand& sm : summands) {
        if (sm.free_summand) {
            int s = n, t = sm.shift + 8 * weight;
            if (s <= max_s && t - s <= max_stem) {
                E1Class c;
                c.s = s, c.t = t, c.n = n;
                c.composition = comp, c.shift = sm.shift;
                c.free_summand = true, c.factors = sm.tags;
                out.push_back(std::move(c));
            }
        } else {
            for (int sigma = 0;; ++sigma) {
                int s = n + sigma, t = 7 * sigma + sm.shift + 8 * weight;
                if (s > max_s || t - s > max_stem) break;
                E1Class c;
                c.s = s, c.t = t, c.n = n;
                c.composition = comp, c.shift = sm.shift;
                c.free_summand = false, c.tower = sigma, c.factors = sm.tags;
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

void enumerate_compositions(std::vector<int>& current, int weight, int bound, int max_j,
                            std::vector<std::vector<int>>& out) {
    out.push_back(current);
    for (int j = 1;; ++j) {
        int n = int(current.size()) + 1;
        if (8 * (weight + j) - n > bound) break;
        if (j > max_j)
            throw std::runtime_error(
                "assemble_e1: the window needs the weight-" + std::to_string(8 * j) +
                " module, above the materialized bound (max_j = " + std::to_string(max_j) +
                "); raise max_j");
        current.push_back(j);
        enumerate_compositions(current, weight + j, bound, max_j, out);
        current.pop_back();
    }
}

int translate_rank(const std::optional<std::pair<int, int>>& tr) {
    return tr ? tr->first * 4 + tr->second : -1;
}

bool class_before(const E1Class& a, const E1Class& b) {
    if (a.s != b.s) return a.s < b.s;
    if (a.t != b.t) return a.t < b.t;
    if (a.n != b.n) return a.n < b.n;
    if (translate_rank(a.translate) != translate_rank(b.translate))
        return translate_rank(a.translate) < translate_rank(b.translate);
    if (a.composition != b.composition) return a.composition < b.composition;
    if (a.shift != b.shift) return a.shift < b.shift;
    if (a.free_summand != b.free_summand) return b.free_summand;
    return a.tower < b.tower;
}

std::string translate_string(const std::pair<int, int>& tr) {
    std::string inner;
    auto part = [&](const char* name, int e) {
        if (e == 0) return;
        if (!inner.empty()) inner += ' ';
        inner += name;
        if (e > 1) inner += "^" + std::to_string(e);
    };
    part("xi1", tr.first);
    part("xi2", tr.second);
    return "g(" + (inner.empty() ? "1" : inner) + ")";
}

}  // namespace

std::string may_name_from_factors(const std::vector<BGMonomial>& factors) {
    if (factors.empty()) return "";
    std::map<std::pair<int, int>, int> counts;  // (i, j) -> multiplicity
    for (const BGMonomial& m : factors) {
        int gen = 0;
        for (size_t i = 0; i < m.exponents.size(); ++i)
            if (m.exponents[i]) {
                if (gen) return "";  // more than one generator
                gen = int(i) + 1;
            }
        if (!gen) return "";
        int e = m.exponents[gen - 1] * bg_generator_exponent(gen);
        if (e & (e - 1)) return "";  // not a power of two
        int j = 0;
        while ((1 << j) < e) ++j;
        ++counts[{gen, j}];
    }
    std::string out;
    for (const auto& [ij, mult] : counts) {
        if (!out.empty()) out += ' ';
        out += ij.first == 1 ? "h_" + std::to_string(ij.second)
                             : "h_{" + std::to_string(ij.first) + "," +
                                   std::to_string(ij.second) + "}";
        if (mult > 1) out += "^" + std::to_string(mult);
    }
    return out;
}

std::string E1Class::label() const {
    std::string base;
    if (n == 0) {
        base = tower == 0 ? "1" : tower == 1 ? "v2" : "v2^" + std::to_string(tower);
    } else {
        std::string name = factors ? may_name_from_factors(*factors) : "";
        if (!name.empty())
            base = tower == 0
                       ? name
                       : (tower == 1 ? "v2 " : "v2^" + std::to_string(tower) + " ") + name;
    }
    if (base.empty()) return "";
    if (translate) base += " " + translate_string(*translate);
    return base;
}

E1Page assemble_e1(int max_stem, int max_s, int max_j, int workers) {
    if (max_stem < 0 || max_s < 0) throw std::invalid_argument("assemble_e1: bounds must be >= 0");
    std::vector<std::vector<Summand>> factors(max_j + 1);
    std::vector<std::vector<int>> comps;
    {
        std::vector<int> current;
        enumerate_compositions(current, 0, max_stem + 1, max_j, comps);
    }
    int top_j = 0;
    for (const auto& comp : comps)
        for (int j : comp) top_j = std::max(top_j, j);
    for (int j = 1; j <= top_j; ++j) factors[j] = factor_summands(j);

    std::vector<std::vector<E1Class>> results(comps.size());
    auto run = [&](size_t begin, size_t step) {
        for (size_t i = begin; i < comps.size(); i += step)
            results[i] = composition_classes(comps[i], factors, max_stem, max_s);
    };
    if (workers <= 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, size_t(w), size_t(workers));
        for (auto& th : pool) th.join();
    }

    E1Page page;
    page.max_stem = max_stem, page.max_s = max_s;
    for (auto& group : results)
        for (auto& c : group) page.classes.push_back(std::move(c));
    std::sort(page.classes.begin(), page.classes.end(), class_before);
    return page;
}

E1Page assemble_e1_self(int max_stem, int max_s, int max_j, int workers) {
    E1Page base = assemble_e1(max_stem, max_s, max_j, workers);
    E1Page page;
    page.max_stem = max_stem, page.max_s = max_s;
    for (int i1 = 0; i1 <= 7; ++i1)
        for (int i2 = 0; i2 <= 3; ++i2)
            for (E1Class c : base.classes) {
                c.t -= i1 + 3 * i2;
                c.translate = std::make_pair(i1, i2);
                page.classes.push_back(std::move(c));
            }
    std::sort(page.classes.begin(), page.classes.end(), class_before);
    return page;
}

E1Page assign_may_names(E1Page page) {
    for (E1Class& c : page.classes)
        if (c.s == c.n && c.n > 0 && c.factors) c.may_name = may_name_from_factors(*c.factors);
    return page;
}

E1Page apply_known_differentials(E1Page page) {
    bool source_covered = page.max_stem >= 22 && page.max_s >= 2;
    bool target_covered = page.max_stem >= 21 && page.max_s >= 3;
    if (!source_covered || !target_covered) return page;

    std::map<int, std::pair<int, int>> found;  // translate rank -> (source, target)
    for (size_t i = 0; i < page.classes.size(); ++i) {
        const E1Class& c = page.classes[i];
        if (c.tower != 0 || !c.factors) continue;
        int dt = c.translate ? c.translate->first + 3 * c.translate->second : 0;
        int rank = translate_rank(c.translate);
        if (c.s == 2 && c.n == 2 && c.t == 24 - dt &&
            may_name_from_factors(*c.factors) == "h_{2,2}^2") {
            auto& slot = found.emplace(rank, std::make_pair(-1, -1)).first->second;
            slot.first = int(i);
        } else if (c.s == 3 && c.n == 3 && c.t == 24 - dt &&
                   may_name_from_factors(*c.factors) == "h_3^3") {
            auto& slot = found.emplace(rank, std::make_pair(-1, -1)).first->second;
            slot.second = int(i);
        }
    }
    std::vector<int> ranks;
    for (size_t i = 0; i < page.classes.size(); ++i) {
        int rank = translate_rank(page.classes[i].translate);
        if (ranks.empty() || ranks.back() != rank) ranks.push_back(rank);
    }
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    for (int rank : ranks) {
        auto it = found.find(rank);
        if (it == found.end() || it->second.first < 0 || it->second.second < 0)
            throw std::runtime_error(
                "apply_known_differentials: the tabled d2 endpoints (h_{2,2}^2 at "
                "(2,24,2), h_3^3 at (3,24,3)) are inside the window but missing from "
                "the page");
        page.classes[it->second.first].killed = true;
        page.classes[it->second.second].killed = true;
        page.differentials.emplace_back(it->second.first, it->second.second);
    }
    return page;
}

}  // namespace sq2
