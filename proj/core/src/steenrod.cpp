#include "sq2/steenrod.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sq2 {

namespace {

// Descending lexicographic order keeps e.g. Sq5 ahead of Sq4 Sq1.
bool word_before(const Word& a, const Word& b) {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

AlgebraElement::AlgebraElement(Word admissible_word) {
    if (!is_admissible(admissible_word))
        throw std::invalid_argument("AlgebraElement term must be admissible");
    terms_.push_back(std::move(admissible_word));
}

int AlgebraElement::degree() const {
    if (terms_.empty()) return -1;
    int d = word_degree(terms_.front());
    for (const Word& w : terms_)
        if (word_degree(w) != d) throw std::logic_error("inhomogeneous element has no degree");
    return d;
}

void AlgebraElement::add_term(const Word& w) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), w, word_before);
    if (it != terms_.end() && *it == w)
        terms_.erase(it);
    else
        terms_.insert(it, w);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
    for (const Word& w : other.terms_) add_term(w);
    return *this;
}

std::string AlgebraElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (size_t t = 0; t < terms_.size(); ++t) {
        if (t) out += " + ";
        if (terms_[t].empty()) {
            out += "1";
            continue;
        }
        for (size_t j = 0; j < terms_[t].size(); ++j) {
            if (j) out += ' ';
            out += "Sq" + std::to_string(terms_[t][j]);
        }
    }
    return out;
}

bool binom_mod2(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return false;
    return (n & k) == k;
}

AlgebraElement adem_reduce(const Word& w) {
    for (int i : w)
        if (i <= 0) throw std::invalid_argument("word letters must be positive");
    static thread_local std::map<Word, AlgebraElement> memo;
    auto found = memo.find(w);
    if (found != memo.end()) return found->second;

    AlgebraElement result;
    size_t bad = w.size();
    for (size_t j = 0; j + 1 < w.size(); ++j)
        if (w[j] < 2 * w[j + 1]) { bad = j; break; }
    if (bad == w.size()) {
        result.add_term(w);
    } else {
        int a = w[bad], b = w[bad + 1];
        for (int c = 0; 2 * c <= a; ++c) {
            if (!binom_mod2(b - 1 - c, a - 2 * c)) continue;
            Word rewritten(w.begin(), w.begin() + bad);
            rewritten.push_back(a + b - c);
            if (c > 0) rewritten.push_back(c);
            rewritten.insert(rewritten.end(), w.begin() + bad + 2, w.end());
            result += adem_reduce(rewritten);
        }
    }
    memo.emplace(w, result);
    return result;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement out;
    for (const Word& wa : a.terms()) {
        for (const Word& wb : b.terms()) {
            Word prod = wa;
            prod.insert(prod.end(), wb.begin(), wb.end());
            out += adem_reduce(prod);
        }
    }
    return out;
}

namespace {

const AlgebraElement& antipode_sq(int n) {
    static thread_local std::map<int, AlgebraElement> memo;
    auto found = memo.find(n);
    if (found != memo.end()) return found->second;
    AlgebraElement chi;
    if (n == 0) {
        chi = AlgebraElement::one();
    } else {
        for (int i = 1; i <= n; ++i)
            chi += multiply(AlgebraElement::sq(i), antipode_sq(n - i));
    }
    return memo.emplace(n, std::move(chi)).first->second;
}

}  // namespace

AlgebraElement antipode(const AlgebraElement& a) {
    AlgebraElement out;
    for (const Word& w : a.terms()) {
        AlgebraElement prod = AlgebraElement::one();
        // anti-homomorphism: reverse the factors
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            prod = multiply(prod, antipode_sq(*it));
        out += prod;
    }
    return out;
}

AlgebraElement milnor_primitive(int n) {
    if (n < 0) throw std::invalid_argument("milnor_primitive: n must be >= 0");
    static thread_local std::map<int, AlgebraElement> memo;
    auto found = memo.find(n);
    if (found != memo.end()) return found->second;
    AlgebraElement q;
    if (n == 0) {
        q = AlgebraElement::sq(1);
    } else {
        AlgebraElement prev = milnor_primitive(n - 1);
        AlgebraElement top = AlgebraElement::sq(1 << n);
        q = multiply(top, prev) + multiply(prev, top);
    }
    return memo.emplace(n, std::move(q)).first->second;
}

int Profile::top_generator() const {
    switch (kind) {
        case Kind::full_a: return -1;
        case Kind::sub_a: return (1 << (n + 1)) - 1;   // Sq^k in A(n) iff k < 2^{n+1}
        case Kind::ext_q: return (1 << (n + 1)) - 1;   // |Q_n| = 2^{n+1} - 1
    }
    return -1;
}

std::string Profile::to_string() const {
    switch (kind) {
        case Kind::full_a: return "A";
        case Kind::sub_a: return "A" + std::to_string(n);
        case Kind::ext_q: return "EQ" + std::to_string(n);
    }
    return "?";
}

Profile parse_profile(const std::string& text) {
    if (text == "A") return Profile::A();
    auto tail_number = [](const std::string& s, size_t at) -> int {
        if (at >= s.size()) return -1;
        for (size_t i = at; i < s.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(s[i]))) return -1;
        return std::stoi(s.substr(at));
    };
    if (text.size() >= 2 && text[0] == 'A') {
        int n = tail_number(text, 1);
        if (n >= 0) return Profile::An(n);
    }
    if (text.size() >= 3 && text[0] == 'E' && text[1] == 'Q') {
        int n = tail_number(text, 2);
        if (n >= 0) return Profile::EQ(n);
    }
    throw std::invalid_argument("unknown profile '" + text + "' (expected A, A<n>, or EQ<n>)");
}

namespace {

// All admissible words of the given degree, descending lexicographically.
const std::vector<Word>& admissible_words_full(int degree) {
    static thread_local std::map<int, std::vector<Word>> memo;
    auto found = memo.find(degree);
    if (found != memo.end()) return found->second;
    std::vector<Word> out;
    if (degree == 0) {
        out.push_back(Word{});
    } else {
        // first letter a, then an admissible tail of degree-a starting <= a/2
        for (int a = degree; a >= 1; --a) {
            if (a == degree) {
                out.push_back(Word{a});
                continue;
            }
            for (const Word& tail : admissible_words_full(degree - a)) {
                if (!tail.empty() && 2 * tail.front() > a) continue;
                if (tail.empty()) continue;  // degree-a != 0 here
                Word w{a};
                w.insert(w.end(), tail.begin(), tail.end());
                out.push_back(w);
            }
        }
    }
    return memo.emplace(degree, std::move(out)).first->second;
}

// Exponent tuples (r_1, ..., r_m) with sum r_j (2^j - 1) = degree and
// r_j < 2^{n+2-j} (r_j = 0 for j > n+1), descending lexicographically.
void enumerate_profile_tuples(int degree, int n, int j, std::vector<int>& acc,
                              std::vector<std::vector<int>>& out) {
    if (degree == 0) {
        std::vector<int> tuple = acc;
        while (!tuple.empty() && tuple.back() == 0) tuple.pop_back();
        out.push_back(tuple);
        return;
    }
    if (j > n + 1) return;
    int letter = (1 << j) - 1;
    int cap = (1 << (n + 2 - j)) - 1;
    int hi = std::min(cap, degree / letter);
    for (int r = hi; r >= 0; --r) {
        acc.push_back(r);
        enumerate_profile_tuples(degree - r * letter, n, j + 1, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Word> admissible_basis(int degree, const Profile& profile) {
    if (degree < 0) return {};
    switch (profile.kind) {
        case Profile::Kind::full_a:
            return admissible_words_full(degree);
        case Profile::Kind::sub_a: {
            std::vector<std::vector<int>> tuples;
            std::vector<int> acc;
            enumerate_profile_tuples(degree, profile.n, 1, acc, tuples);
            std::vector<Word> out;
            for (const auto& r : tuples) {
                // i_k = r_k + 2 i_{k+1}: the admissible word whose leading
                // Milnor term is this tuple
                Word w(r.size());
                int next = 0;
                for (int k = int(r.size()) - 1; k >= 0; --k) {
                    w[k] = r[k] + 2 * next;
                    next = w[k];
                }
                out.push_back(w);
            }
            return out;
        }
        case Profile::Kind::ext_q: {
            std::vector<Word> out;
            if (degree == 0) out.push_back(Word{});
            // Q_n itself is not a single admissible word; the exterior profile
            // only has a meaningful admissible-word basis in degree 0.
            return out;
        }
    }
    return {};
}

AlgebraElement parse_algebra_element(const std::string& text) {
    AlgebraElement out;
    std::string term;
    std::vector<std::string> pieces;
    std::stringstream ss(text);
    std::string plus_separated;
    while (std::getline(ss, plus_separated, '+')) pieces.push_back(plus_separated);
    if (pieces.empty()) throw std::invalid_argument("empty element text");
    for (const std::string& piece : pieces) {
        std::stringstream ts(piece);
        std::string tok;
        Word w;
        bool unit = false, zero = false, any = false;
        while (ts >> tok) {
            any = true;
            if (tok == "1") { unit = true; continue; }
            if (tok == "0") { zero = true; continue; }
            if (tok.rfind("Sq", 0) != 0)
                throw std::invalid_argument("bad factor '" + tok + "' in element text");
            int v;
            try {
                size_t used = 0;
                v = std::stoi(tok.substr(2), &used);
                if (used != tok.size() - 2) throw std::invalid_argument(tok);
            } catch (...) {
                throw std::invalid_argument("bad factor '" + tok + "' in element text");
            }
            if (v <= 0) throw std::invalid_argument("bad factor '" + tok + "' in element text");
            w.push_back(v);
        }
        if (!any) throw std::invalid_argument("empty term in element text");
        if (zero) {
            if (unit || !w.empty())
                throw std::invalid_argument("'0' cannot be combined with factors");
            continue;
        }
        if (unit && !w.empty())
            throw std::invalid_argument("'1' cannot be combined with Sq factors");
        out += adem_reduce(w);
    }
    return out;
}

}  // namespace sq2
