#include "sq2/dual.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sq2 {

namespace {

void trim_trailing_zeros(DualMonomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

void check_cap(int degree, const char* what) {
    if (degree > kDualDegreeCap)
        throw std::out_of_range(std::string(what) + ": degree " + std::to_string(degree) +
                                " exceeds the dual-computation cap " + std::to_string(kDualDegreeCap));
}

}  // namespace

int monomial_degree(const DualMonomial& m) {
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += m[i] * ((1 << (i + 1)) - 1);
    return d;
}

DualMonomial monomial_product(const DualMonomial& a, const DualMonomial& b) {
    DualMonomial out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    trim_trailing_zeros(out);
    return out;
}

std::string monomial_to_string(const DualMonomial& m) {
    if (m.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += ' ';
        out += "xi" + std::to_string(i + 1);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out;
}

bool monomial_before(const DualMonomial& a, const DualMonomial& b) {
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        int ai = i < a.size() ? a[i] : 0;
        int bi = i < b.size() ? b[i] : 0;
        if (ai != bi) return ai > bi;
    }
    return false;
}

int DualElement::degree() const {
    if (terms_.empty()) return -1;
    int d = monomial_degree(terms_.front());
    for (const DualMonomial& m : terms_)
        if (monomial_degree(m) != d) throw std::logic_error("inhomogeneous dual element has no degree");
    return d;
}

void DualElement::add_term(const DualMonomial& m) {
    DualMonomial mm = m;
    trim_trailing_zeros(mm);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mm, monomial_before);
    if (it != terms_.end() && *it == mm)
        terms_.erase(it);
    else
        terms_.insert(it, mm);
}

DualElement& DualElement::operator+=(const DualElement& other) {
    for (const DualMonomial& m : other.terms_) add_term(m);
    return *this;
}

std::string DualElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (size_t t = 0; t < terms_.size(); ++t) {
        if (t) out += " + ";
        out += monomial_to_string(terms_[t]);
    }
    return out;
}

DualElement multiply(const DualElement& a, const DualElement& b) {
    DualElement out;
    for (const DualMonomial& ma : a.terms())
        for (const DualMonomial& mb : b.terms())
            out.add_term(monomial_product(ma, mb));
    return out;
}

namespace {

DualElement frobenius(const DualElement& a, int times) {
    DualElement out;
    for (DualMonomial m : a.terms()) {
        for (int& e : m) e <<= times;
        out.add_term(m);
    }
    return out;
}

}  // namespace

DualElement power(const DualElement& a, int e) {
    if (e < 0) throw std::invalid_argument("negative power");
    DualElement out = DualElement::one();
    for (int bit = 0; (1 << bit) <= e; ++bit)
        if (e & (1 << bit)) out = multiply(out, frobenius(a, bit));
    return out;
}

namespace {

// Shared enumeration: exponent tuples of the given degree, letter i carrying
// degree 2^i - 1, with a per-letter admissibility callback. Descending lex.
void enumerate_monomials(int degree, int letter_index, int max_letter,
                         const std::function<bool(int, int)>& allowed,
                         const std::function<int(int)>& step_of,
                         DualMonomial& acc, std::vector<DualMonomial>& out) {
    if (degree == 0) {
        DualMonomial m = acc;
        trim_trailing_zeros(m);
        out.push_back(m);
        return;
    }
    if (letter_index > max_letter) return;
    int letter_degree = (1 << letter_index) - 1;
    int step = step_of(letter_index);
    int hi = (degree / letter_degree) / step * step;
    for (int r = hi; r >= 0; r -= step) {
        if (!allowed(letter_index, r)) continue;
        acc.push_back(r);
        enumerate_monomials(degree - r * letter_degree, letter_index + 1, max_letter,
                            allowed, step_of, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<DualMonomial> dual_quotient_basis(int degree, DualBasisKind kind, int n) {
    if (degree < 0) return {};
    if (kind == DualBasisKind::subalgebra) {
        // the subalgebra is finite; above its top degree the basis is empty,
        // regardless of the arithmetic cap
        int top = 0;
        for (int i = 1; i <= n + 1; ++i) top += ((1 << (n + 2 - i)) - 1) * ((1 << i) - 1);
        if (degree > top) return {};
    }
    check_cap(degree, "dual_quotient_basis");
    int max_letter = 1;
    while ((1 << (max_letter + 1)) - 1 <= degree) ++max_letter;
    std::function<bool(int, int)> allowed;
    std::function<int(int)> step_of = [](int) { return 1; };
    switch (kind) {
        case DualBasisKind::whole:
            allowed = [](int, int) { return true; };
            break;
        case DualBasisKind::subalgebra:
            allowed = [n](int i, int r) {
                if (i > n + 1) return r == 0;
                return r < (1 << (n + 2 - i));
            };
            break;
        case DualBasisKind::quotient:
            allowed = [](int, int) { return true; };
            step_of = [n](int i) { return i <= n + 1 ? (1 << (n + 2 - i)) : 1; };
            break;
    }
    std::vector<DualMonomial> out;
    DualMonomial acc;
    enumerate_monomials(degree, 1, max_letter, allowed, step_of, acc, out);
    return out;
}

bool in_subalgebra_profile(const DualMonomial& m, int n) {
    for (size_t i = 0; i < m.size(); ++i) {
        int letter = int(i) + 1;
        if (letter > n + 1) {
            if (m[i] != 0) return false;
        } else if (m[i] >= (1 << (n + 2 - letter))) {
            return false;
        }
    }
    return true;
}

bool in_quotient_profile(const DualMonomial& m, int n) {
    for (size_t i = 0; i < m.size(); ++i) {
        int letter = int(i) + 1;
        if (letter <= n + 1 && m[i] % (1 << (n + 2 - letter)) != 0) return false;
    }
    return true;
}

std::pair<DualMonomial, DualMonomial> split_by_profile(const DualMonomial& m, int n) {
    DualMonomial sub = m, quot = m;
    for (size_t i = 0; i < m.size(); ++i) {
        int letter = int(i) + 1;
        int bound = letter <= n + 1 ? (1 << (n + 2 - letter)) : 1;
        sub[i] = m[i] % bound;
        quot[i] = m[i] - sub[i];
    }
    trim_trailing_zeros(sub);
    trim_trailing_zeros(quot);
    return {sub, quot};
}

namespace {

// Toggle-accumulating pair list: mod-2 coefficients.
void toggle_pair(CoproductPairs& pairs, std::pair<DualMonomial, DualMonomial> p) {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), p);
    if (it != pairs.end() && *it == p)
        pairs.erase(it);
    else
        pairs.insert(it, std::move(p));
}

// psi(xi_k^e), e >= 1: assign each binary digit of e to one of the buckets
// i = 0..k; bucket i contributes xi_{k-i}^{2^i c_i} (x) xi_i^{c_i}.
// Assignments are in bijection with the odd-coefficient terms.
CoproductPairs coproduct_letter_power(int k, int e) {
    std::vector<int> bits;
    for (int b = 0; (1 << b) <= e; ++b)
        if (e & (1 << b)) bits.push_back(1 << b);
    CoproductPairs out;
    std::vector<int> bucket(bits.size(), 0);
    while (true) {
        DualMonomial left, right;
        for (size_t t = 0; t < bits.size(); ++t) {
            int i = bucket[t];
            if (i < k) {
                if (int(left.size()) < k - i) left.resize(k - i, 0);
                left[k - i - 1] += bits[t] << i;
            }
            if (i > 0) {
                if (int(right.size()) < i) right.resize(i, 0);
                right[i - 1] += bits[t];
            }
        }
        trim_trailing_zeros(left);
        trim_trailing_zeros(right);
        toggle_pair(out, {left, right});
        // odometer over bucket assignments
        size_t t = 0;
        while (t < bits.size()) {
            if (++bucket[t] <= k) break;
            bucket[t] = 0;
            ++t;
        }
        if (t == bits.size()) break;
    }
    return out;
}

CoproductPairs convolve(const CoproductPairs& a, const CoproductPairs& b) {
    CoproductPairs out;
    for (const auto& pa : a)
        for (const auto& pb : b)
            toggle_pair(out, {monomial_product(pa.first, pb.first),
                              monomial_product(pa.second, pb.second)});
    return out;
}

}  // namespace

const CoproductPairs& coproduct(const DualMonomial& m) {
    static thread_local std::map<DualMonomial, CoproductPairs> memo;
    DualMonomial key = m;
    trim_trailing_zeros(key);
    auto found = memo.find(key);
    if (found != memo.end()) return found->second;
    CoproductPairs pairs{{DualMonomial{}, DualMonomial{}}};
    for (size_t i = 0; i < key.size(); ++i) {
        if (key[i] == 0) continue;
        pairs = convolve(pairs, coproduct_letter_power(int(i) + 1, key[i]));
    }
    return memo.emplace(std::move(key), std::move(pairs)).first->second;
}

const DualElement& conjugate_generator(int i) {
    if (i < 1) throw std::invalid_argument("conjugate_generator: i must be >= 1");
    static thread_local std::map<int, DualElement> memo;
    auto found = memo.find(i);
    if (found != memo.end()) return found->second;
    DualMonomial xi(i, 0);
    xi[i - 1] = 1;
    DualElement chi(xi);
    for (int k = 1; k < i; ++k) {
        DualMonomial head(i - k, 0);
        head[i - k - 1] = 1 << k;  // xi_{i-k}^{2^k}
        chi += multiply(DualElement(head), conjugate_generator(k));
    }
    return memo.emplace(i, std::move(chi)).first->second;
}

namespace {

// Full expansion of (m)Sq: substitute xi_k -> xi_k + xi_{k-1} (xi_0 = 1) and
// expand; memoized as a mixed-degree term list.
const std::vector<DualMonomial>& right_sq_expansion(const DualMonomial& m) {
    static thread_local std::map<DualMonomial, std::vector<DualMonomial>> memo;
    DualMonomial key = m;
    trim_trailing_zeros(key);
    auto found = memo.find(key);
    if (found != memo.end()) return found->second;
    std::vector<DualMonomial> acc{DualMonomial{}};
    for (size_t idx = 0; idx < key.size(); ++idx) {
        int k = int(idx) + 1, e = key[idx];
        if (e == 0) continue;
        // (xi_k + xi_{k-1})^e = sum over bit-subsets j of e
        std::vector<DualMonomial> factor;
        for (int j = e;; j = (j - 1) & e) {
            DualMonomial t(k, 0);
            t[k - 1] = j;
            if (k >= 2) t[k - 2] += e - j;
            trim_trailing_zeros(t);
            factor.push_back(t);
            if (j == 0) break;
        }
        std::vector<DualMonomial> next;
        for (const DualMonomial& a : acc)
            for (const DualMonomial& f : factor) {
                DualMonomial p = monomial_product(a, f);
                auto it = std::lower_bound(next.begin(), next.end(), p, monomial_before);
                if (it != next.end() && *it == p)
                    next.erase(it);
                else
                    next.insert(it, p);
            }
        acc = std::move(next);
    }
    return memo.emplace(std::move(key), std::move(acc)).first->second;
}

}  // namespace

DualElement right_total_sq(const DualElement& x, int i) {
    if (i < 0) return DualElement::zero();
    DualElement out;
    for (const DualMonomial& m : x.terms()) {
        int target = monomial_degree(m) - i;
        if (target < 0) continue;
        for (const DualMonomial& t : right_sq_expansion(m))
            if (monomial_degree(t) == target) out.add_term(t);
    }
    return out;
}

bool pairing(const Word& w, const DualMonomial& m) {
    static thread_local std::map<std::pair<Word, DualMonomial>, bool> memo;
    DualMonomial key = m;
    while (!key.empty() && key.back() == 0) key.pop_back();
    if (w.empty()) return key.empty();
    if (word_degree(w) != monomial_degree(key)) return false;
    auto found = memo.find({w, key});
    if (found != memo.end()) return found->second;
    // peel the first letter: <Sq^a rest, m> = sum_{psi(m): left = xi_1^a} <rest, right>
    int a = w.front();
    Word rest(w.begin() + 1, w.end());
    bool acc = false;
    for (const auto& [left, right] : coproduct(key)) {
        bool is_xi1_power = left.size() == 1 && left[0] == a;
        if (!is_xi1_power) continue;
        if (pairing(rest, right)) acc = !acc;
    }
    memo.emplace(std::make_pair(w, key), acc);
    return acc;
}

bool pairing(const AlgebraElement& a, const DualMonomial& m) {
    bool acc = false;
    for (const Word& w : a.terms())
        if (pairing(w, m)) acc = !acc;
    return acc;
}

DualElement admissible_to_milnor(const Word& w) {
    int d = word_degree(w);
    check_cap(d, "admissible_to_milnor");
    DualElement out;
    for (const DualMonomial& m : dual_quotient_basis(d, DualBasisKind::whole))
        if (pairing(w, m)) out.add_term(m);
    return out;
}

AlgebraElement milnor_to_admissible(const DualMonomial& m) {
    int d = monomial_degree(m);
    check_cap(d, "milnor_to_admissible");
    static thread_local std::map<DualMonomial, AlgebraElement> memo;
    DualMonomial key = m;
    trim_trailing_zeros(key);
    auto found = memo.find(key);
    if (found != memo.end()) return found->second;

    std::vector<Word> admissibles = admissible_basis(d, Profile::A());
    std::vector<DualMonomial> monomials = dual_quotient_basis(d, DualBasisKind::whole);
    auto at = std::find(monomials.begin(), monomials.end(), key);
    if (at == monomials.end()) throw std::invalid_argument("milnor_to_admissible: bad monomial");
    F2Matrix eq(int(monomials.size()), int(admissibles.size()));
    for (size_t c = 0; c < admissibles.size(); ++c)
        for (size_t r = 0; r < monomials.size(); ++r)
            if (pairing(admissibles[c], monomials[r])) eq.set(int(r), int(c), true);
    F2Vector rhs(int(monomials.size()));
    rhs.set(int(at - monomials.begin()), true);
    auto sol = solve(eq, rhs);
    if (!sol) throw std::logic_error("milnor_to_admissible: pairing matrix not invertible");
    AlgebraElement out;
    for (int c : sol->support()) out.add_term(admissibles[c]);
    memo.emplace(std::move(key), out);
    return out;
}

DualElement parse_dual_element(const std::string& text) {
    DualElement out;
    std::vector<std::string> pieces;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, '+')) pieces.push_back(piece);
    if (pieces.empty()) throw std::invalid_argument("empty element text");
    for (const std::string& p : pieces) {
        std::stringstream ts(p);
        std::string tok;
        DualMonomial m;
        bool unit = false, zero = false, any = false;
        while (ts >> tok) {
            any = true;
            if (tok == "1") { unit = true; continue; }
            if (tok == "0") { zero = true; continue; }
            if (tok.rfind("xi", 0) != 0)
                throw std::invalid_argument("bad factor '" + tok + "' in dual element text");
            std::string body = tok.substr(2);
            size_t caret = body.find('^');
            int index, exp = 1;
            try {
                size_t used = 0;
                index = std::stoi(body.substr(0, caret), &used);
                if (used != (caret == std::string::npos ? body.size() : caret))
                    throw std::invalid_argument(tok);
                if (caret != std::string::npos) {
                    exp = std::stoi(body.substr(caret + 1), &used);
                    if (used != body.size() - caret - 1) throw std::invalid_argument(tok);
                }
            } catch (...) {
                throw std::invalid_argument("bad factor '" + tok + "' in dual element text");
            }
            if (index < 1 || exp < 0)
                throw std::invalid_argument("bad factor '" + tok + "' in dual element text");
            if (int(m.size()) < index) m.resize(index, 0);
            m[index - 1] += exp;
        }
        if (!any) throw std::invalid_argument("empty term in dual element text");
        if (zero) {
            if (unit || !m.empty())
                throw std::invalid_argument("'0' cannot be combined with factors");
            continue;
        }
        if (unit && !m.empty())
            throw std::invalid_argument("'1' cannot be combined with xi factors");
        out.add_term(m);
    }
    return out;
}

}  // namespace sq2
