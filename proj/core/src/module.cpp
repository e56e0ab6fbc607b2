#include "sq2/module.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace sq2 {

namespace {

const std::vector<int> kNoGens;

std::string degree_list(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(v[i]);
    }
    return out;
}

int subalgebra_top_degree(int n) {
    int top = 0;
    for (int i = 1; i <= n + 1; ++i) top += ((1 << (n + 2 - i)) - 1) * ((1 << i) - 1);
    return top;
}

}  // namespace

FiniteModule::FiniteModule(Profile profile, std::vector<int> generator_degrees)
    : profile_(profile), gen_degree_(std::move(generator_degrees)) {
    index_in_degree_.resize(gen_degree_.size());
    for (size_t i = 0; i < gen_degree_.size(); ++i) {
        auto& bucket = gens_by_degree_[gen_degree_[i]];
        index_in_degree_[i] = int(bucket.size());
        bucket.push_back(int(i));
    }
}

int FiniteModule::dim_at(int degree) const {
    auto it = gens_by_degree_.find(degree);
    return it == gens_by_degree_.end() ? 0 : int(it->second.size());
}

int FiniteModule::min_degree() const {
    return gens_by_degree_.empty() ? 0 : gens_by_degree_.begin()->first;
}

int FiniteModule::max_degree() const {
    return gens_by_degree_.empty() ? 0 : gens_by_degree_.rbegin()->first;
}

const std::vector<int>& FiniteModule::generators_at(int degree) const {
    auto it = gens_by_degree_.find(degree);
    return it == gens_by_degree_.end() ? kNoGens : it->second;
}

int FiniteModule::index_in_degree(int gen) const { return index_in_degree_[gen]; }

void FiniteModule::set_action(int k, int gen, std::vector<int> targets) {
    if (k < 1) throw std::invalid_argument("action key must be >= 1");
    if (gen < 0 || gen >= dim()) throw std::invalid_argument("generator out of range");
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int j : targets) {
        if (j < 0 || j >= dim()) throw std::invalid_argument("action target out of range");
        if (gen_degree_[j] != gen_degree_[gen] + k)
            throw std::invalid_argument("action target degree mismatch");
    }
    auto& rows = actions_[k];
    if (rows.empty()) rows.resize(gen_degree_.size());
    rows[gen] = std::move(targets);
}

const std::vector<int>& FiniteModule::action_targets(int k, int gen) const {
    auto it = actions_.find(k);
    if (it == actions_.end() || it->second[gen].empty()) return kNoGens;
    return it->second[gen];
}

std::vector<int> FiniteModule::action_keys() const {
    std::vector<int> keys;
    for (const auto& [k, rows] : actions_) {
        bool any = false;
        for (const auto& r : rows)
            if (!r.empty()) { any = true; break; }
        if (any) keys.push_back(k);
    }
    return keys;
}

F2Matrix FiniteModule::action_matrix(int k, int degree) const {
    const auto& src = generators_at(degree);
    const auto& dst = generators_at(degree + k);
    F2Matrix out(int(dst.size()), int(src.size()));
    auto it = actions_.find(k);
    if (it == actions_.end()) return out;
    for (size_t c = 0; c < src.size(); ++c)
        for (int j : it->second[src[c]])
            out.set(index_in_degree_[j], int(c), true);
    return out;
}

std::pair<int, F2Vector> FiniteModule::apply_element(const AlgebraElement& a, int degree,
                                                     const F2Vector& coords) const {
    if (a.is_zero()) throw std::invalid_argument("apply_element: zero element has no degree");
    int target = degree + a.degree();
    if (coords.size() != dim_at(degree))
        throw std::invalid_argument("apply_element: coordinate size mismatch");
    F2Vector acc(dim_at(target));
    for (const Word& w : a.terms()) {
        F2Vector cur = coords;
        int d = degree;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            cur = multiply(action_matrix(*it, d), cur);
            d += *it;
        }
        acc.add(cur);
    }
    return {target, acc};
}

bool FiniteModule::operator==(const FiniteModule& o) const {
    if (gen_degree_ != o.gen_degree_) return false;
    for (int g = 0; g < dim(); ++g) {
        std::vector<int> keys = action_keys(), okeys = o.action_keys();
        if (keys != okeys) return false;
        for (int k : keys)
            if (action_targets(k, g) != o.action_targets(k, g)) return false;
    }
    return true;
}

// --- text format -------------------------------------------------------------

namespace {

struct Token {
    long long value;
    int line;
};

std::vector<Token> tokenize_ints(const std::string& text) {
    std::vector<Token> out;
    int line = 1;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') { ++line; ++i; continue; }
        if (isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        bool neg = false;
        size_t start = i;
        if (c == '-') { neg = true; ++i; }
        if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i])))
            throw std::runtime_error("line " + std::to_string(line) + ": unexpected character '" +
                                     std::string(1, text[start]) + "'");
        long long v = 0;
        while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + (text[i] - '0');
            ++i;
        }
        out.push_back({neg ? -v : v, line});
    }
    return out;
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

FiniteModule parse_bruner(const std::string& text) {
    std::vector<Token> toks = tokenize_ints(text);
    size_t at = 0;
    auto need = [&](const char* what) -> Token {
        if (at >= toks.size()) {
            int line = toks.empty() ? 1 : toks.back().line;
            parse_fail(line, std::string("unexpected end of input, expected ") + what);
        }
        return toks[at++];
    };
    Token nt = need("generator count");
    if (nt.value < 0) parse_fail(nt.line, "negative generator count");
    int n = int(nt.value);
    std::vector<int> degrees(n);
    for (int i = 0; i < n; ++i) degrees[i] = int(need("generator degree").value);
    FiniteModule m(Profile::A(), degrees);
    std::map<std::pair<int, int>, bool> seen_pairs;
    while (at < toks.size()) {
        Token it = need("generator index");
        if (it.value < 0 || it.value >= n) parse_fail(it.line, "generator index out of range");
        Token kt = need("action degree");
        if (kt.value < 1) parse_fail(kt.line, "action degree must be >= 1");
        Token lt = need("target count");
        if (lt.value < 0) parse_fail(lt.line, "negative target count");
        int i = int(it.value), k = int(kt.value), l = int(lt.value);
        auto key = std::make_pair(i, k);
        if (seen_pairs.count(key))
            parse_fail(it.line, "duplicate action line for generator " + std::to_string(i) +
                                    ", Sq" + std::to_string(k));
        seen_pairs[key] = true;
        std::vector<int> targets(l);
        for (int t = 0; t < l; ++t) {
            Token jt = need("action target");
            if (jt.value < 0 || jt.value >= n) parse_fail(jt.line, "action target out of range");
            targets[t] = int(jt.value);
            if (degrees[targets[t]] != degrees[i] + k)
                parse_fail(jt.line, "action target degree mismatch: generator " +
                                        std::to_string(targets[t]) + " has degree " +
                                        std::to_string(degrees[targets[t]]) + ", expected " +
                                        std::to_string(degrees[i] + k));
        }
        m.set_action(k, i, std::move(targets));
    }
    return m;
}

std::string write_bruner(const FiniteModule& m) {
    std::string out = std::to_string(m.dim()) + "\n\n" + degree_list(m.generator_degrees()) + "\n";
    std::string lines;
    std::vector<int> keys = m.action_keys();
    for (int g = 0; g < m.dim(); ++g) {
        for (int k : keys) {
            const auto& targets = m.action_targets(k, g);
            if (targets.empty()) continue;
            lines += std::to_string(g) + " " + std::to_string(k) + " " +
                     std::to_string(targets.size());
            for (int j : targets) lines += " " + std::to_string(j);
            lines += "\n";
        }
    }
    if (!lines.empty()) out += "\n" + lines;
    return out;
}

// --- validation ----------------------------------------------------------------

namespace {

// Operators of subalgebra Milnor-basis elements on a module, evaluated
// recursively through the straightening table using generator actions only.
class SubalgebraOperators {
public:
    SubalgebraOperators(const AlgebraBasis& alg, const FiniteModule& m) : alg_(alg), m_(m) {}

    const F2Matrix& matrix(int d, int i, int t) {
        auto key = std::make_tuple(d, i, t);
        auto found = memo_.find(key);
        if (found != memo_.end()) return found->second;
        F2Matrix out;
        if (d == 0) {
            out = identity_matrix(m_.dim_at(t));
        } else {
            out = F2Matrix(m_.dim_at(t + d), m_.dim_at(t));
            for (const auto& [k, j] : alg_.straightening(d, i))
                out = add(out, multiply(m_.action_matrix(k, t + d - k), matrix(d - k, j, t)));
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    const AlgebraBasis& alg_;
    const FiniteModule& m_;
    std::map<std::tuple<int, int, int>, F2Matrix> memo_;
};

void validate_full(const FiniteModule& m, std::vector<std::string>& out) {
    int span = m.span();
    for (int b = 1; b <= span; ++b) {
        for (int a = 1; a < 2 * b && a + b <= span; ++a) {
            for (int d = m.min_degree(); d + a + b <= m.max_degree(); ++d) {
                F2Matrix lhs = multiply(m.action_matrix(a, d + b), m.action_matrix(b, d));
                F2Matrix rhs(m.dim_at(d + a + b), m.dim_at(d));
                for (int c = 0; 2 * c <= a; ++c) {
                    if (!binom_mod2(b - 1 - c, a - 2 * c)) continue;
                    F2Matrix term = c == 0
                                        ? m.action_matrix(a + b, d)
                                        : multiply(m.action_matrix(a + b - c, d + c),
                                                   m.action_matrix(c, d));
                    rhs = add(rhs, term);
                }
                if (lhs != rhs)
                    out.push_back("Adem relation Sq" + std::to_string(a) + " Sq" +
                                  std::to_string(b) + " fails on the degree-" +
                                  std::to_string(d) + " piece");
            }
        }
    }
}

void validate_sub(const FiniteModule& m, std::vector<std::string>& out) {
    int top = m.profile().top_generator();
    for (int k : m.action_keys())
        if (k > top)
            out.push_back("stored action Sq" + std::to_string(k) +
                          " is nonzero but lies outside the subalgebra (top Sq" +
                          std::to_string(top) + ")");

    AlgebraBasis alg(m.profile());
    SubalgebraOperators ops(alg, m);
    std::vector<int> gens = alg.generator_degrees(top);

    // stored non-generator actions must equal the straightened operators
    for (int k = 1; k <= std::min(top, m.span()); ++k) {
        if (std::find(gens.begin(), gens.end(), k) != gens.end()) continue;
        int ki = alg.monomial_index(k, DualMonomial{k});
        for (int t = m.min_degree(); t + k <= m.max_degree(); ++t) {
            if (m.action_matrix(k, t) != ops.matrix(k, ki, t))
                out.push_back("stored Sq" + std::to_string(k) +
                              " disagrees with the subalgebra structure on the degree-" +
                              std::to_string(t) + " piece");
        }
    }

    // associativity against the multiplication table: g * basis = expansion
    int dmax = std::min(m.span(), subalgebra_top_degree(m.profile().n));
    for (int d = 0; d <= dmax; ++d) {
        int nd = alg.dim(d);
        for (int i = 0; i < nd; ++i) {
            for (int g : gens) {
                int gi = alg.monomial_index(g, DualMonomial{g});
                const F2Vector& prod = alg.product(g, gi, d, i);
                for (int t = m.min_degree(); t + d + g <= m.max_degree(); ++t) {
                    F2Matrix lhs = multiply(m.action_matrix(g, t + d), ops.matrix(d, i, t));
                    F2Matrix rhs(m.dim_at(t + d + g), m.dim_at(t));
                    for (int j : prod.support()) rhs = add(rhs, ops.matrix(d + g, j, t));
                    if (lhs != rhs) {
                        out.push_back("Sq" + std::to_string(g) + " * (" +
                                      alg.element_name(d, i) + ") fails on the degree-" +
                                      std::to_string(t) + " piece");
                    }
                }
            }
        }
    }
}

void validate_ext(const FiniteModule& m, std::vector<std::string>& out) {
    int q = m.profile().top_generator();
    for (int k : m.action_keys())
        if (k != q)
            out.push_back("exterior profile stores only the degree-" + std::to_string(q) +
                          " action, found Sq" + std::to_string(k));
    for (int t = m.min_degree(); t + 2 * q <= m.max_degree(); ++t) {
        F2Matrix sq = multiply(m.action_matrix(q, t + q), m.action_matrix(q, t));
        F2Matrix zero(m.dim_at(t + 2 * q), m.dim_at(t));
        if (sq != zero)
            out.push_back("Q" + std::to_string(m.profile().n) +
                          " fails to square to zero on the degree-" + std::to_string(t) +
                          " piece");
    }
}

}  // namespace

std::vector<std::string> validate(const FiniteModule& m) {
    std::vector<std::string> out;
    switch (m.profile().kind) {
        case Profile::Kind::full_a: validate_full(m, out); break;
        case Profile::Kind::sub_a: validate_sub(m, out); break;
        case Profile::Kind::ext_q: validate_ext(m, out); break;
    }
    return out;
}

// --- constructions --------------------------------------------------------------

FiniteModule tensor(const FiniteModule& a, const FiniteModule& b) {
    // result lives over the smaller algebra
    Profile profile = a.profile();
    const Profile& pb = b.profile();
    bool ext_a = a.profile().kind == Profile::Kind::ext_q;
    bool ext_b = pb.kind == Profile::Kind::ext_q;
    if (ext_a != ext_b || (ext_a && a.profile().n != pb.n))
        throw std::invalid_argument("tensor: incompatible profiles " +
                                    a.profile().to_string() + " and " + pb.to_string());
    if (!ext_a) {
        if (pb.kind == Profile::Kind::sub_a &&
            (profile.kind == Profile::Kind::full_a || pb.n < profile.n))
            profile = pb;
    }

    int nb = b.dim();
    std::vector<int> degrees(a.dim() * nb);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < nb; ++j)
            degrees[i * nb + j] = a.generator_degree(i) + b.generator_degree(j);
    FiniteModule out(profile, std::move(degrees));

    if (ext_a) {
        int q = profile.top_generator();
        for (int i = 0; i < a.dim(); ++i) {
            for (int j = 0; j < nb; ++j) {
                std::vector<int> targets;
                for (int u : a.action_targets(q, i)) targets.push_back(u * nb + j);
                for (int v : b.action_targets(q, j)) targets.push_back(i * nb + v);
                std::sort(targets.begin(), targets.end());
                // (u,j) and (i,v) terms never coincide, so no mod-2 cancellation here
                if (!targets.empty()) out.set_action(q, i * nb + j, targets);
            }
        }
        return out;
    }

    int kmax = profile.kind == Profile::Kind::sub_a ? profile.top_generator()
                                                    : a.span() + b.span();
    for (int k = 1; k <= kmax; ++k) {
        for (int i = 0; i < a.dim(); ++i) {
            for (int j = 0; j < nb; ++j) {
                std::vector<int> targets;
                for (int p = 0; p <= k; ++p) {
                    // Sq^p (x) Sq^{k-p}
                    if (p == 0) {
                        for (int v : b.action_targets(k, j)) targets.push_back(i * nb + v);
                    } else if (p == k) {
                        for (int u : a.action_targets(k, i)) targets.push_back(u * nb + j);
                    } else {
                        for (int u : a.action_targets(p, i))
                            for (int v : b.action_targets(k - p, j))
                                targets.push_back(u * nb + v);
                    }
                }
                std::sort(targets.begin(), targets.end());
                // cancel duplicate pairs mod 2
                std::vector<int> reduced;
                for (size_t t = 0; t < targets.size();) {
                    size_t run = t;
                    while (run < targets.size() && targets[run] == targets[t]) ++run;
                    if ((run - t) % 2) reduced.push_back(targets[t]);
                    t = run;
                }
                if (!reduced.empty()) out.set_action(k, i * nb + j, std::move(reduced));
            }
        }
    }
    return out;
}

FiniteModule dual_module(const FiniteModule& m) {
    std::vector<int> degrees(m.dim());
    for (int i = 0; i < m.dim(); ++i) degrees[i] = -m.generator_degree(i);
    FiniteModule out(m.profile(), std::move(degrees));

    if (m.profile().kind == Profile::Kind::ext_q) {
        int q = m.profile().top_generator();
        std::vector<std::vector<int>> rows(m.dim());
        for (int v = 0; v < m.dim(); ++v)
            for (int u : m.action_targets(q, v)) rows[u].push_back(v);
        for (int u = 0; u < m.dim(); ++u)
            if (!rows[u].empty()) out.set_action(q, u, rows[u]);
        return out;
    }

    int kmax = m.profile().kind == Profile::Kind::sub_a ? m.profile().top_generator() : m.span();
    for (int k = 1; k <= kmax; ++k) {
        AlgebraElement chi = antipode(AlgebraElement::sq(k));
        std::vector<std::vector<int>> rows(m.dim());
        for (int v = 0; v < m.dim(); ++v) {
            int d = m.generator_degree(v);
            F2Vector e(m.dim_at(d));
            e.set(m.index_in_degree(v), true);
            auto [td, image] = m.apply_element(chi, d, e);
            const auto& targets = m.generators_at(td);
            for (int pos : image.support()) rows[targets[pos]].push_back(v);
        }
        for (int u = 0; u < m.dim(); ++u)
            if (!rows[u].empty()) out.set_action(k, u, rows[u]);
    }
    return out;
}

FiniteModule suspend(const FiniteModule& m, int t) {
    std::vector<int> degrees(m.dim());
    for (int i = 0; i < m.dim(); ++i) degrees[i] = m.generator_degree(i) + t;
    FiniteModule out(m.profile(), std::move(degrees));
    for (int k : m.action_keys())
        for (int g = 0; g < m.dim(); ++g) {
            const auto& targets = m.action_targets(k, g);
            if (!targets.empty()) out.set_action(k, g, targets);
        }
    return out;
}

FiniteModule canonical_algebra_module(const Profile& profile) {
    if (profile.kind != Profile::Kind::sub_a || profile.n > 2)
        throw std::invalid_argument("canonical_algebra_module: profile must be A(n), n <= 2");
    int n = profile.n;
    int top = subalgebra_top_degree(n);
    std::vector<int> degrees;
    std::vector<DualMonomial> monos;
    std::map<int, int> first_id_at;
    for (int d = 0; d <= top; ++d) {
        first_id_at[d] = int(monos.size());
        for (const DualMonomial& m : dual_quotient_basis(d, DualBasisKind::subalgebra, n)) {
            monos.push_back(m);
            degrees.push_back(d);
        }
    }
    FiniteModule out(profile, degrees);
    int q = profile.top_generator();
    std::map<std::pair<int, int>, std::vector<int>> rows;  // (k, source gen) -> targets
    for (size_t u = 0; u < monos.size(); ++u) {
        for (int k = 1; k <= q && k <= degrees[u]; ++k) {
            DualElement image = right_total_sq(DualElement(monos[u]), k);
            for (const DualMonomial& t : image.terms()) {
                if (!in_subalgebra_profile(t, n)) continue;
                int d = degrees[u] - k;
                const auto& bucket = dual_quotient_basis(d, DualBasisKind::subalgebra, n);
                auto at = std::find(bucket.begin(), bucket.end(), t);
                int v = first_id_at[d] + int(at - bucket.begin());
                rows[{k, v}].push_back(int(u));
            }
        }
    }
    for (auto& [key, targets] : rows) out.set_action(key.first, key.second, std::move(targets));
    return out;
}

QRightSes q_right_ses(int n) {
    if (n > 2 || n < 0) throw std::invalid_argument("q_right_ses: n must be 0, 1, or 2");
    QRightSes ses;
    ses.total = canonical_algebra_module(Profile::An(n));
    AlgebraBasis alg(Profile::An(n));
    int q = (1 << (n + 1)) - 1;
    DualMonomial q_mono(n + 1, 0);
    q_mono[n] = 1;  // xi_{n+1}: the Milnor primitive Q_n
    int qi = alg.monomial_index(q, q_mono);

    std::map<int, std::vector<F2Vector>> image;  // degree -> right-multiples
    for (int d = 0; d + q <= ses.total.max_degree(); ++d)
        for (int i = 0; i < alg.dim(d); ++i)
            image[d + q].push_back(alg.product(d, i, q, qi));

    SubmoduleResult sub = submodule_closure(ses.total, image);
    QuotientResult quot = quotient_module(ses.total, image);
    ses.sub = std::move(sub.module);
    ses.quot = std::move(quot.module);
    for (const auto& [d, rows] : sub.basis) {
        F2Matrix inc(ses.total.dim_at(d), int(rows.size()));
        for (size_t j = 0; j < rows.size(); ++j)
            for (int r : rows[j].support()) inc.set(r, int(j), true);
        ses.inclusion[d] = std::move(inc);
    }
    for (const auto& [d, qm] : quot.maps) {
        F2Matrix proj(qm.dim(), ses.total.dim_at(d));
        for (int c = 0; c < ses.total.dim_at(d); ++c) {
            F2Vector e(ses.total.dim_at(d));
            e.set(c, true);
            for (int r : qm.project(e).support()) proj.set(r, c, true);
        }
        ses.projection[d] = std::move(proj);
    }
    return ses;
}

FiniteModule canonical_quotient_module(int n) { return q_right_ses(n).quot; }

std::map<int, int> margolis_homology(const FiniteModule& m, int n) {
    int q = (1 << (n + 1)) - 1;
    std::map<int, F2Matrix> q_matrix;
    if (m.profile().kind == Profile::Kind::ext_q) {
        if (m.profile().n != n)
            throw std::invalid_argument("margolis_homology: module is over a different E(Q_n)");
        for (int d = m.min_degree(); d <= m.max_degree(); ++d)
            q_matrix[d] = m.action_matrix(q, d);
    } else {
        if (m.profile().kind == Profile::Kind::sub_a && n > m.profile().n)
            throw std::invalid_argument("margolis_homology: Q_n lies outside the profile");
        AlgebraElement qn = milnor_primitive(n);
        for (int d = m.min_degree(); d <= m.max_degree(); ++d) {
            F2Matrix mat(m.dim_at(d + q), m.dim_at(d));
            for (int c = 0; c < m.dim_at(d); ++c) {
                F2Vector e(m.dim_at(d));
                e.set(c, true);
                auto [td, image] = m.apply_element(qn, d, e);
                for (int r : image.support()) mat.set(r, c, true);
            }
            q_matrix[d] = std::move(mat);
        }
    }
    std::map<int, int> out;
    for (int d = m.min_degree(); d <= m.max_degree(); ++d) {
        int dim_kernel = m.dim_at(d) - rref(q_matrix[d]).rank;
        int dim_image = 0;
        auto prev = q_matrix.find(d - q);
        if (prev != q_matrix.end()) dim_image = rref(prev->second).rank;
        int h = dim_kernel - dim_image;
        if (h != 0) out[d] = h;
    }
    return out;
}

FiniteModule restrict_profile(const FiniteModule& m, const Profile& target) {
    FiniteModule out(target, m.generator_degrees());
    int top = target.top_generator();
    for (int k : m.action_keys()) {
        if (top >= 0 && k > top) continue;
        for (int g = 0; g < m.dim(); ++g) {
            const auto& targets = m.action_targets(k, g);
            if (!targets.empty()) out.set_action(k, g, targets);
        }
    }
    return out;
}

// --- submodules / quotients ------------------------------------------------------

SubmoduleResult submodule_closure(const FiniteModule& m,
                                  const std::map<int, std::vector<F2Vector>>& seeds) {
    std::map<int, EchelonBasis> span;
    std::deque<std::pair<int, F2Vector>> work;
    auto basis_at = [&](int d) -> EchelonBasis& {
        auto it = span.find(d);
        if (it == span.end()) it = span.emplace(d, EchelonBasis(m.dim_at(d))).first;
        return it->second;
    };
    for (const auto& [d, vectors] : seeds)
        for (const F2Vector& v : vectors)
            if (basis_at(d).add(v)) work.push_back({d, v});
    std::vector<int> keys = m.action_keys();
    while (!work.empty()) {
        auto [d, v] = work.front();
        work.pop_front();
        for (int k : keys) {
            if (m.dim_at(d + k) == 0) continue;
            F2Vector image = multiply(m.action_matrix(k, d), v);
            if (!image.is_zero() && basis_at(d + k).add(image)) work.push_back({d + k, image});
        }
    }

    SubmoduleResult out;
    std::vector<int> degrees;
    std::map<int, int> first_id_at;
    for (const auto& [d, basis] : span) {
        if (basis.rank() == 0) continue;
        first_id_at[d] = int(degrees.size());
        for (int i = 0; i < basis.rank(); ++i) degrees.push_back(d);
        out.basis[d] = basis.rows();
    }
    out.module = FiniteModule(m.profile(), degrees);
    for (const auto& [d, rows] : out.basis) {
        for (int k : keys) {
            auto tspan = span.find(d + k);
            for (size_t j = 0; j < rows.size(); ++j) {
                F2Vector image = multiply(m.action_matrix(k, d), rows[j]);
                if (image.is_zero()) continue;
                if (tspan == span.end())
                    throw std::logic_error("submodule_closure: span not closed");
                // coordinates of image over the echelon rows = its pivot entries
                std::vector<int> targets;
                const auto& trows = tspan->second.rows();
                const auto& tpivots = tspan->second.pivots();
                F2Vector rem = image;
                for (size_t r = 0; r < trows.size(); ++r) {
                    if (rem.get(tpivots[r])) {
                        rem.add(trows[r]);
                        targets.push_back(first_id_at[d + k] + int(r));
                    }
                }
                if (!rem.is_zero()) throw std::logic_error("submodule_closure: span not closed");
                if (!targets.empty())
                    out.module.set_action(k, first_id_at[d] + int(j), std::move(targets));
            }
        }
    }
    return out;
}

QuotientResult quotient_module(const FiniteModule& m,
                               const std::map<int, std::vector<F2Vector>>& subspace) {
    // close the subspace first so the quotient action is well defined
    SubmoduleResult closed = submodule_closure(m, subspace);
    QuotientResult out;
    std::vector<int> degrees;
    std::map<int, int> first_id_at;
    std::map<int, QuotientMap> maps;
    for (int d = m.min_degree(); d <= m.max_degree(); ++d) {
        if (m.dim_at(d) == 0) continue;
        std::vector<F2Vector> rows;
        auto it = closed.basis.find(d);
        if (it != closed.basis.end()) rows = it->second;
        QuotientMap qm = quotient_coordinates(rows, m.dim_at(d));
        if (qm.dim() > 0) {
            first_id_at[d] = int(degrees.size());
            for (int i = 0; i < qm.dim(); ++i) degrees.push_back(d);
        }
        maps[d] = std::move(qm);
    }
    out.module = FiniteModule(m.profile(), degrees);
    for (const auto& [d, qm] : maps) {
        if (qm.dim() == 0) continue;
        for (int k : m.action_keys()) {
            auto t = maps.find(d + k);
            if (t == maps.end() || t->second.dim() == 0) continue;
            for (int j = 0; j < qm.dim(); ++j) {
                F2Vector rep = qm.lift([&] {
                    F2Vector e(qm.dim());
                    e.set(j, true);
                    return e;
                }());
                F2Vector image = t->second.project(multiply(m.action_matrix(k, d), rep));
                std::vector<int> targets;
                for (int r : image.support()) targets.push_back(first_id_at.at(d + k) + r);
                if (!targets.empty())
                    out.module.set_action(k, first_id_at.at(d) + j, std::move(targets));
            }
        }
    }
    out.maps = std::move(maps);
    return out;
}

// --- comparison --------------------------------------------------------------------

namespace {

bool rows_match_under(const FiniteModule& a, const FiniteModule& b,
                      const std::vector<int>& p, int gen, int k) {
    std::vector<int> mapped;
    for (int j : a.action_targets(k, gen)) {
        if (p[j] < 0) return true;  // target not assigned yet; defer
        mapped.push_back(p[j]);
    }
    std::sort(mapped.begin(), mapped.end());
    return mapped == b.action_targets(k, p[gen]);
}

struct PermSearch {
    const FiniteModule& a;
    const FiniteModule& b;
    std::vector<int> keys;
    std::vector<int> degrees;  // distinct degrees ascending
    std::vector<int> p;        // a-gen -> b-gen or -1

    bool assign_degree(size_t di) {
        if (di == degrees.size()) return true;
        int d = degrees[di];
        const auto& agens = a.generators_at(d);
        const auto& bgens = b.generators_at(d);
        std::vector<int> order(bgens.begin(), bgens.end());
        std::sort(order.begin(), order.end());
        std::vector<bool> used(order.size(), false);
        return try_assign(di, 0, agens, order, used);
    }

    bool try_assign(size_t di, size_t pos, const std::vector<int>& agens,
                    const std::vector<int>& border, std::vector<bool>& used) {
        if (pos == agens.size()) {
            // all rows whose source and targets are now assigned must match
            if (!check_complete_rows(degrees[di])) return false;
            return assign_degree(di + 1);
        }
        for (size_t c = 0; c < border.size(); ++c) {
            if (used[c]) continue;
            p[agens[pos]] = border[c];
            used[c] = true;
            if (try_assign(di, pos + 1, agens, border, used)) return true;
            used[c] = false;
            p[agens[pos]] = -1;
        }
        return false;
    }

    // checks every action row whose target degree is d and whose source is
    // assigned (targets at degree d are all assigned once the degree is done)
    bool check_complete_rows(int d) {
        for (int k : keys) {
            const auto& sources = a.generators_at(d - k);
            for (int g : sources) {
                if (p[g] < 0) continue;
                std::vector<int> mapped;
                bool ready = true;
                for (int j : a.action_targets(k, g)) {
                    if (p[j] < 0) { ready = false; break; }
                    mapped.push_back(p[j]);
                }
                if (!ready) continue;
                std::sort(mapped.begin(), mapped.end());
                if (mapped != b.action_targets(k, p[g])) return false;
            }
        }
        return true;
    }
};

}  // namespace

std::optional<std::vector<int>> find_generator_permutation(const FiniteModule& a,
                                                           const FiniteModule& b) {
    if (a.dim() != b.dim()) return std::nullopt;
    std::vector<int> sorted_a = a.generator_degrees(), sorted_b = b.generator_degrees();
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a != sorted_b) return std::nullopt;
    std::vector<int> keys_a = a.action_keys(), keys_b = b.action_keys();
    std::vector<int> keys = keys_a;
    for (int k : keys_b)
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    std::sort(keys.begin(), keys.end());

    PermSearch search{a, b, keys, {}, std::vector<int>(a.dim(), -1)};
    for (int d : sorted_a)
        if (search.degrees.empty() || search.degrees.back() != d) search.degrees.push_back(d);
    if (!search.assign_degree(0)) return std::nullopt;
    // final full verification
    for (int k : keys)
        for (int g = 0; g < a.dim(); ++g)
            if (!rows_match_under(a, b, search.p, g, k)) return std::nullopt;
    return search.p;
}

std::vector<std::string> map_violations(const FiniteModule& source,
                                        const FiniteModule& target,
                                        const std::map<int, F2Matrix>& matrices) {
    std::vector<std::string> out;
    for (const auto& [d, m] : matrices)
        if (m.rows() != target.dim_at(d) || m.cols() != source.dim_at(d))
            out.push_back("degree " + std::to_string(d) + ": matrix is " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                          ", expected " + std::to_string(target.dim_at(d)) + "x" +
                          std::to_string(source.dim_at(d)));
    if (!out.empty() || source.dim() == 0) return out;

    auto mat_at = [&](int d) {
        auto it = matrices.find(d);
        if (it != matrices.end()) return it->second;
        return F2Matrix(target.dim_at(d), source.dim_at(d));
    };
    std::vector<int> keys = source.action_keys();
    for (int k : target.action_keys())
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    for (int k : keys)
        for (int d = source.min_degree(); d <= source.max_degree(); ++d) {
            if (source.dim_at(d) == 0) continue;
            F2Matrix lhs = multiply(mat_at(d + k), source.action_matrix(k, d));
            F2Matrix rhs = multiply(target.action_matrix(k, d), mat_at(d));
            if (lhs != rhs)
                out.push_back("Sq^" + std::to_string(k) +
                              " fails to commute with the map on the degree-" +
                              std::to_string(d) + " piece");
        }
    return out;
}

}  // namespace sq2
