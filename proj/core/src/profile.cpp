#include "sq2/profile.hpp"

#include <algorithm>
#include <stdexcept>

namespace sq2 {

namespace {

int eq_top(const Profile& p) { return (1 << (p.n + 1)) - 1; }

}  // namespace

const std::vector<Word>& AlgebraBasis::words_at(int degree) const {
    auto found = words_.find(degree);
    if (found != words_.end()) return found->second;
    auto& slot = words_[degree] = admissible_basis(degree, Profile::A());
    auto& index = word_index_[degree];
    for (size_t i = 0; i < slot.size(); ++i) index[slot[i]] = int(i);
    return slot;
}

const std::vector<DualMonomial>& AlgebraBasis::monomials_at(int degree) const {
    auto found = monomials_.find(degree);
    if (found != monomials_.end()) return found->second;
    auto& slot = monomials_[degree] =
        dual_quotient_basis(degree, DualBasisKind::subalgebra, profile_.n);
    auto& index = monomial_index_[degree];
    for (size_t i = 0; i < slot.size(); ++i) index[slot[i]] = int(i);
    return slot;
}

int AlgebraBasis::dim(int degree) const {
    if (degree < 0) return 0;
    switch (profile_.kind) {
        case Profile::Kind::full_a:
            return int(words_at(degree).size());
        case Profile::Kind::sub_a:
            return int(monomials_at(degree).size());
        case Profile::Kind::ext_q:
            return (degree == 0 || degree == eq_top(profile_)) ? 1 : 0;
    }
    return 0;
}

std::string AlgebraBasis::element_name(int degree, int index) const {
    switch (profile_.kind) {
        case Profile::Kind::full_a: {
            AlgebraElement e{Word(words_at(degree)[index])};
            return e.to_string();
        }
        case Profile::Kind::sub_a:
            return "dual " + monomial_to_string(monomials_at(degree)[index]);
        case Profile::Kind::ext_q:
            return degree == 0 ? "1" : "Q" + std::to_string(profile_.n);
    }
    return "?";
}

const Word& AlgebraBasis::word(int degree, int index) const {
    if (profile_.kind != Profile::Kind::full_a)
        throw std::logic_error("word(): full-algebra basis only");
    return words_at(degree)[index];
}

const DualMonomial& AlgebraBasis::monomial(int degree, int index) const {
    if (profile_.kind != Profile::Kind::sub_a)
        throw std::logic_error("monomial(): subalgebra basis only");
    return monomials_at(degree)[index];
}

int AlgebraBasis::monomial_index(int degree, const DualMonomial& m) const {
    if (profile_.kind != Profile::Kind::sub_a)
        throw std::logic_error("monomial_index(): subalgebra basis only");
    monomials_at(degree);
    const auto& index = monomial_index_[degree];
    auto it = index.find(m);
    return it == index.end() ? -1 : it->second;
}

const std::vector<std::vector<F2Vector>>& AlgebraBasis::product_table(int d1, int d2) const {
    auto key = std::make_pair(d1, d2);
    auto found = products_.find(key);
    if (found != products_.end()) return found->second;

    int n1 = dim(d1), n2 = dim(d2), nt = dim(d1 + d2);
    std::vector<std::vector<F2Vector>> table(n1, std::vector<F2Vector>(n2, F2Vector(nt)));
    switch (profile_.kind) {
        case Profile::Kind::full_a: {
            words_at(d1 + d2);
            const auto& index = word_index_[d1 + d2];
            for (int i = 0; i < n1; ++i) {
                for (int j = 0; j < n2; ++j) {
                    Word w = words_at(d1)[i];
                    const Word& v = words_at(d2)[j];
                    w.insert(w.end(), v.begin(), v.end());
                    AlgebraElement reduced = adem_reduce(w);
                    for (const Word& term : reduced.terms())
                        table[i][j].flip(index.at(term));
                }
            }
            break;
        }
        case Profile::Kind::sub_a: {
            // <Sq(R) Sq(R'), xi^T> = coefficient of xi^R (x) xi^R' in psi(xi^T)
            monomials_at(d1);
            monomials_at(d2);
            const auto& index1 = monomial_index_[d1];
            const auto& index2 = monomial_index_[d2];
            for (int t = 0; t < nt; ++t) {
                for (const auto& [left, right] : coproduct(monomials_at(d1 + d2)[t])) {
                    if (monomial_degree(left) != d1) continue;
                    auto i = index1.find(left);
                    if (i == index1.end()) continue;
                    auto j = index2.find(right);
                    if (j == index2.end()) continue;
                    table[i->second][j->second].flip(t);
                }
            }
            break;
        }
        case Profile::Kind::ext_q: {
            for (int i = 0; i < n1; ++i)
                for (int j = 0; j < n2; ++j)
                    if (d1 == 0 || d2 == 0)  // 1*x = x; Q*Q = 0
                        table[i][j].set(0, true);
            break;
        }
    }
    return products_.emplace(key, std::move(table)).first->second;
}

const F2Vector& AlgebraBasis::product(int d1, int i1, int d2, int i2) const {
    return product_table(d1, d2)[i1][i2];
}

std::vector<int> AlgebraBasis::generator_degrees(int cap) const {
    std::vector<int> out;
    switch (profile_.kind) {
        case Profile::Kind::full_a:
            for (int k = 1; k <= cap; k <<= 1) out.push_back(k);
            break;
        case Profile::Kind::sub_a:
            for (int k = 1; k <= std::min(cap, 1 << profile_.n); k <<= 1) out.push_back(k);
            break;
        case Profile::Kind::ext_q:
            if (eq_top(profile_) <= cap) out.push_back(eq_top(profile_));
            break;
    }
    return out;
}

const std::vector<std::pair<int, int>>& AlgebraBasis::straightening(int degree, int index) const {
    if (profile_.kind != Profile::Kind::sub_a)
        throw std::logic_error("straightening(): subalgebra basis only");
    auto found = straightening_.find(degree);
    if (found != straightening_.end()) return found->second[index];

    int n = dim(degree);
    std::vector<std::vector<std::pair<int, int>>> exprs(n);
    if (degree > 0) {
        // candidate products Sq^k * basis(degree-k, j), generators only
        std::vector<std::pair<int, int>> candidates;
        F2Matrix rows(0, n);
        for (int k : generator_degrees(degree)) {
            DualMonomial sq_k{k};
            int ki = monomial_index(k, sq_k);
            if (ki < 0) continue;
            for (int j = 0; j < dim(degree - k); ++j) {
                candidates.push_back({k, j});
                rows.append_row(product(k, ki, degree - k, j));
            }
        }
        F2Matrix system = transpose(rows);  // columns = candidates
        for (int r = 0; r < n; ++r) {
            F2Vector target(n);
            target.set(r, true);
            auto sol = solve(system, target);
            if (!sol)
                throw std::logic_error("subalgebra basis element not generated in degree " +
                                       std::to_string(degree));
            for (int c : sol->support()) exprs[r].push_back(candidates[c]);
        }
    }
    return straightening_.emplace(degree, std::move(exprs)).first->second[index];
}

}  // namespace sq2
