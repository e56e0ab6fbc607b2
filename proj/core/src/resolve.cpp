#include "sq2/resolve.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sq2 {

ModuleOperators::ModuleOperators(const AlgebraBasis& alg, const FiniteModule& m)
    : alg_(alg), m_(m) {}

const F2Matrix& ModuleOperators::matrix(int d, int i, int t) {
    auto key = std::make_tuple(d, i, t);
    auto found = memo_.find(key);
    if (found != memo_.end()) return found->second;
    F2Matrix out;
    if (d == 0) {
        out = identity_matrix(m_.dim_at(t));
    } else {
        switch (alg_.profile().kind) {
            case Profile::Kind::full_a: {
                const Word& w = alg_.word(d, i);
                out = identity_matrix(m_.dim_at(t));
                int at = t;
                for (auto it = w.rbegin(); it != w.rend(); ++it) {
                    out = multiply(m_.action_matrix(*it, at), out);
                    at += *it;
                }
                break;
            }
            case Profile::Kind::sub_a: {
                out = F2Matrix(m_.dim_at(t + d), m_.dim_at(t));
                for (const auto& [k, j] : alg_.straightening(d, i))
                    out = add(out, multiply(m_.action_matrix(k, t + d - k), matrix(d - k, j, t)));
                break;
            }
            case Profile::Kind::ext_q:
                out = m_.action_matrix(d, t);
                break;
        }
    }
    return memo_.emplace(key, std::move(out)).first->second;
}

int MinimalResolution::ext_dim(int s, int t) const {
    if (s < 0 || s > s_max_ || t > t_max_)
        throw std::out_of_range("ext_dim: bidegree (" + std::to_string(s) + ", " +
                                std::to_string(t) + ") lies outside the computed window (s <= " +
                                std::to_string(s_max_) + ", t <= " + std::to_string(t_max_) + ")");
    int count = 0;
    for (int tg : gens_[s])
        if (tg == t) ++count;
    return count;
}

std::map<std::pair<int, int>, int> MinimalResolution::ext_table() const {
    std::map<std::pair<int, int>, int> out;
    for (int s = 0; s <= s_max_; ++s)
        for (int tg : gens_[s]) ++out[{s, tg}];
    return out;
}

namespace {

struct FreeLevel {
    std::vector<int> gen_deg;    // ascending
    std::vector<F2Vector> dval;  // image of each generator one level down
};

class Resolver {
public:
    Resolver(const FiniteModule& m, int s_max, int t_max, ResolutionOptions options)
        : m_(m), alg_(m.profile()), ops_(alg_, m), options_(options), t_max_(t_max) {
        build_level_zero();
        for (int s = 1; s <= s_max; ++s) build_level(s);
    }

    std::vector<std::vector<int>> generator_degrees() const {
        std::vector<std::vector<int>> out;
        for (const FreeLevel& level : levels_) out.push_back(level.gen_deg);
        return out;
    }

private:
    const FiniteModule& m_;
    AlgebraBasis alg_;
    ModuleOperators ops_;
    ResolutionOptions options_;
    int t_max_;
    std::vector<FreeLevel> levels_;

    // offsets[g] = first basis index of generator g's summand in F_s at
    // internal degree t; offsets.back() = total dimension
    std::vector<int> offsets(int s, int t) const {
        const FreeLevel& level = levels_[s];
        std::vector<int> out(level.gen_deg.size() + 1, 0);
        for (size_t g = 0; g < level.gen_deg.size(); ++g)
            out[g + 1] = out[g] + alg_.dim(t - level.gen_deg[g]);
        if (out.back() > options_.max_basis_per_degree)
            throw std::runtime_error(
                "resolution level " + std::to_string(s) + " needs " +
                std::to_string(out.back()) + " basis elements in internal degree " +
                std::to_string(t) + ", above the per-degree limit of " +
                std::to_string(options_.max_basis_per_degree));
        return out;
    }

    // multiply an element x of F_s (coordinates at degree tx) by algebra
    // basis element (db, bi); result lives at degree tx + db
    F2Vector multiply_free(int s, const F2Vector& x, int tx, int db, int bi,
                           const std::vector<int>& offs_src,
                           const std::vector<int>& offs_dst) const {
        const FreeLevel& level = levels_[s];
        F2Vector out(offs_dst.back());
        for (int p : x.support()) {
            size_t g = size_t(std::upper_bound(offs_src.begin(), offs_src.end(), p) -
                              offs_src.begin()) - 1;
            int i = p - offs_src[g];
            const F2Vector& prod = alg_.product(db, bi, tx - level.gen_deg[g], i);
            for (int j : prod.support()) out.flip(offs_dst[g] + j);
        }
        return out;
    }

    // columns of the differential F_s -> F_{s-1} (or the augmentation
    // F_0 -> m) in internal degree t, in basis order
    std::vector<F2Vector> differential_columns(int s, int t) {
        const FreeLevel& level = levels_[s];
        std::vector<F2Vector> cols;
        std::vector<int> offs_src = s > 0 ? offsets(s - 1, t) : std::vector<int>{};
        for (size_t g = 0; g < level.gen_deg.size(); ++g) {
            int tg = level.gen_deg[g];
            int db = t - tg;
            if (db < 0) continue;
            int nb = alg_.dim(db);
            if (nb == 0) continue;
            if (s == 0) {
                for (int bi = 0; bi < nb; ++bi)
                    cols.push_back(multiply(ops_.matrix(db, bi, tg), level.dval[g]));
            } else {
                std::vector<int> offs_at_tg = offsets(s - 1, tg);
                for (int bi = 0; bi < nb; ++bi)
                    cols.push_back(multiply_free(s - 1, level.dval[g], tg, db, bi,
                                                 offs_at_tg, offs_src));
            }
        }
        return cols;
    }

    int target_dim(int s, int t) const {
        if (s == 0) return m_.dim_at(t);
        return offsets(s - 1, t).back();
    }

    void build_level_zero() {
        FreeLevel level;
        std::vector<int> gens = alg_.generator_degrees(std::max(m_.span(), 1));
        for (int t = m_.min_degree(); t <= std::min(m_.max_degree(), t_max_); ++t) {
            if (m_.dim_at(t) == 0) continue;
            EchelonBasis aug(m_.dim_at(t));
            for (int g : gens) {
                F2Matrix act = m_.action_matrix(g, t - g);
                for (int c = 0; c < act.cols(); ++c) aug.add(act.column(c));
            }
            QuotientMap qc = quotient_coordinates(aug.rows(), m_.dim_at(t));
            for (int col : qc.complement_columns) {
                F2Vector e(m_.dim_at(t));
                e.set(col, true);
                level.gen_deg.push_back(t);
                level.dval.push_back(std::move(e));
            }
        }
        levels_.push_back(std::move(level));
    }

    void build_level(int s) {
        levels_.push_back(FreeLevel{});
        const FreeLevel& below = levels_[s - 1];
        if (below.gen_deg.empty()) return;
        int t_min = below.gen_deg.front();
        for (int t = t_min; t <= t_max_; ++t) {
            std::vector<int> offs = offsets(s - 1, t);
            int n = offs.back();
            if (n == 0) continue;
            F2Matrix d_below(target_dim(s - 1, t), n);
            {
                std::vector<F2Vector> cols = differential_columns(s - 1, t);
                for (int c = 0; c < n; ++c)
                    for (int r : cols[c].support()) d_below.set(r, c, true);
            }
            std::vector<F2Vector> kernel = kernel_basis(d_below);
            if (kernel.empty()) continue;
            EchelonBasis image(n);
            for (const F2Vector& col : differential_columns(s, t)) image.add(col);
            for (F2Vector& v : kernel) {
                if (!image.add(v)) continue;
                levels_[s].gen_deg.push_back(t);
                levels_[s].dval.push_back(std::move(v));
            }
        }
    }
};

}  // namespace

MinimalResolution minimal_resolution(const FiniteModule& m, int s_max, int t_max,
                                     ResolutionOptions options) {
    if (s_max < 0) throw std::invalid_argument("minimal_resolution: s_max must be >= 0");
    Resolver r(m, s_max, t_max, options);
    return MinimalResolution(m.profile(), s_max, t_max, r.generator_degrees());
}

std::map<std::pair<int, int>, int> ext_dims(const FiniteModule& m, int s_max, int t_max,
                                            ResolutionOptions options) {
    return minimal_resolution(m, s_max, t_max, options).ext_table();
}

MinimalResolution ext_self(const FiniteModule& m, int s_max, int t_max,
                           ResolutionOptions options) {
    return minimal_resolution(tensor(dual_module(m), m), s_max, t_max, options);
}

}  // namespace sq2
