#include "sq2/roth.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>

#include "sq2/f2.hpp"
#include "sq2/steenrod.hpp"

namespace sq2 {

namespace {

constexpr int kTopDegree = 23;
constexpr int kSlotDegrees[] = {8, 12, 14, 15, 20, 22, 23};
constexpr int kLowSlots = 14;          // bits 0..13 pin slot coordinates directly
constexpr int kCompletionDegree = 16;  // bits 14..17 pin coordinates here

void check_range(SMap s, const char* who) {
    if (s >= kSMapCount)
        throw std::invalid_argument(std::string(who) + ": choice vector " + std::to_string(s) +
                                    " is outside the " + std::to_string(kSMapBits) + "-bit range");
}

using IdPair = std::pair<int, int>;

// Read-only tables shared by every solve: the monomial universe of degree
// <= 23, parity-reduced coproduct pair lists, the per-monomial scatter lists
// feeding the coassociativity systems, the pin positions for the 18 choice
// bits, and the right-action components that read module structures off a
// section.
struct Engine {
    std::vector<DualMonomial> monomials;  // id -> monomial
    std::map<DualMonomial, int> id_of;
    std::vector<int> degree_of;                // per id
    std::vector<char> inprof;                  // per id
    std::vector<std::vector<int>> ins, outs;   // degree -> ids (descending-lex)
    std::vector<int> col_of;                   // id -> column index within outs[deg]
    std::vector<int> a2_id;                    // basis index -> id
    std::vector<int> a2_index;                 // id -> basis index or -1
    std::vector<std::vector<IdPair>> middles;  // id -> middle coproduct pairs (l,r)
    // scatter(y) = [(g, w) from psi(y) with w in-profile], w as basis index
    std::vector<std::vector<IdPair>> scat;
    std::vector<int> slot_uid;                        // slot k -> basis index
    std::vector<int> slot_col;                        // slot k -> column of target
    std::vector<int> slot_of;                         // basis index -> slot or -1
    std::array<int, 4> completion_uid{};              // bit 14+k -> basis index
    int completion_col = 0;                           // column of xi_1^16 in degree 16
    std::vector<std::vector<IdPair>> right_sq;        // id -> (k, basis index)
    int max_cols = 0;
};

const Engine& engine() {
    static const Engine e = [] {
        Engine e;
        for (int e4 = 0; 15 * e4 <= kTopDegree; ++e4)
            for (int e3 = 0; 15 * e4 + 7 * e3 <= kTopDegree; ++e3)
                for (int e2 = 0; 15 * e4 + 7 * e3 + 3 * e2 <= kTopDegree; ++e2)
                    for (int e1 = 0; 15 * e4 + 7 * e3 + 3 * e2 + e1 <= kTopDegree; ++e1) {
                        DualMonomial m = {e1, e2, e3, e4};
                        while (!m.empty() && m.back() == 0) m.pop_back();
                        e.monomials.push_back(std::move(m));
                    }
        std::sort(e.monomials.begin(), e.monomials.end(),
                  [](const DualMonomial& a, const DualMonomial& b) {
                      int da = monomial_degree(a), db = monomial_degree(b);
                      if (da != db) return da < db;
                      return monomial_before(a, b);
                  });
        e.ins.assign(kTopDegree + 1, {});
        e.outs.assign(kTopDegree + 1, {});
        e.col_of.assign(e.monomials.size(), -1);
        e.a2_index.assign(e.monomials.size(), -1);
        for (int id = 0; id < int(e.monomials.size()); ++id) {
            const DualMonomial& m = e.monomials[size_t(id)];
            int d = monomial_degree(m);
            e.id_of.emplace(m, id);
            e.degree_of.push_back(d);
            bool in = in_subalgebra_profile(m, 2);
            e.inprof.push_back(in);
            if (in) {
                e.a2_index[size_t(id)] = int(e.a2_id.size());
                e.a2_id.push_back(id);
                e.ins[size_t(d)].push_back(id);
            } else {
                e.col_of[size_t(id)] = int(e.outs[size_t(d)].size());
                e.outs[size_t(d)].push_back(id);
            }
        }
        if (e.a2_id.size() != 64)
            throw std::logic_error("roth engine: expected 64 subalgebra basis monomials");
        for (int d = 0; d <= kTopDegree; ++d)
            e.max_cols = std::max(e.max_cols, int(e.outs[size_t(d)].size()));
        if (e.max_cols > 64 || std::any_of(e.ins.begin(), e.ins.end(), [](const auto& v) {
                return v.size() > 64;
            }))
            throw std::logic_error("roth engine: a degree slice exceeds one machine word");

        // The basis order used everywhere else must agree with the in-profile
        // universe order; generators are indexed through it.
        const std::vector<DualMonomial>& basis = a2_basis_order();
        for (int i = 0; i < 64; ++i)
            if (!(basis[size_t(i)] == e.monomials[size_t(e.a2_id[size_t(i)])]))
                throw std::logic_error("roth engine: basis order mismatch");

        e.middles.resize(e.monomials.size());
        e.scat.resize(e.monomials.size());
        for (int id = 0; id < int(e.monomials.size()); ++id) {
            std::map<IdPair, int> mid, sc;
            for (const auto& [l, r] : coproduct(e.monomials[size_t(id)])) {
                if (!l.empty() && !r.empty()) mid[{e.id_of.at(l), e.id_of.at(r)}] ^= 1;
                if (in_subalgebra_profile(r, 2))
                    sc[{e.id_of.at(l), e.a2_index[size_t(e.id_of.at(r))]}] ^= 1;
            }
            for (const auto& [k, c] : mid)
                if (c & 1) e.middles[size_t(id)].push_back(k);
            for (const auto& [k, c] : sc)
                if (c & 1) e.scat[size_t(id)].push_back(k);
        }

        const std::vector<SMapSlot>& slots = smap_slots();
        e.slot_of.assign(64, -1);
        for (int k = 0; k < int(slots.size()); ++k) {
            int uid = e.id_of.at(slots[size_t(k)].monomial);
            e.slot_uid.push_back(e.a2_index[size_t(uid)]);
            e.slot_col.push_back(e.col_of[size_t(e.id_of.at(slots[size_t(k)].target))]);
            e.slot_of[size_t(e.a2_index[size_t(uid)])] = k;
        }
        const std::vector<DualMonomial>& comp = completion_monomials();
        for (int k = 0; k < 4; ++k)
            e.completion_uid[size_t(k)] = e.a2_index[size_t(e.id_of.at(comp[size_t(k)]))];
        e.completion_col = e.col_of[size_t(e.id_of.at(DualMonomial{16}))];

        e.right_sq.resize(e.monomials.size());
        for (int id = 0; id < int(e.monomials.size()); ++id)
            for (const auto& [l, r] : coproduct(e.monomials[size_t(id)])) {
                if (l.size() != 1) continue;  // left factor xi_1^k, k >= 1
                if (!in_subalgebra_profile(r, 2)) continue;
                e.right_sq[size_t(id)].push_back({l[0], e.a2_index[size_t(e.id_of.at(r))]});
            }
        return e;
    }();
    return e;
}

// Per-solve scratch: the correction masks (per generator, over the columns of
// its degree) and the scatter of the corrections (the dynamic half of the
// data feeding later degrees; out-of-profile monomials use Engine::scat).
struct SolveState {
    std::array<uint64_t, 64> jmask{};
    std::array<std::vector<IdPair>, 64> delta;

    const std::vector<IdPair>& delta_of(const Engine& e, int id) const {
        if (e.inprof[size_t(id)]) return delta[size_t(e.a2_index[size_t(id)])];
        return e.scat[size_t(id)];
    }

    void refresh_delta(const Engine& e, int basis_index) {
        int d = e.degree_of[size_t(e.a2_id[size_t(basis_index)])];
        std::map<IdPair, int> acc;
        uint64_t mask = jmask[size_t(basis_index)];
        while (mask) {
            int c = std::countr_zero(mask);
            mask &= mask - 1;
            for (const IdPair& p : e.scat[size_t(e.outs[size_t(d)][size_t(c)])]) acc[p] ^= 1;
        }
        auto& out = delta[size_t(basis_index)];
        out.clear();
        for (const auto& [k, c] : acc)
            if (c & 1) out.push_back(k);
    }
};

// Solves the coassociativity system degree by degree with the 18 pins; the
// per-generator systems are independent within a degree, and their solution
// sets are enumerated jointly (in practice each is a single point, but the
// search keeps correctness if a branch only dies later).
bool solve_degree(const Engine& e, SolveState& st, int d, SMap s) {
    if (d > kTopDegree) return true;
    const std::vector<int>& cols = e.outs[size_t(d)];
    const std::vector<int>& us = e.ins[size_t(d)];
    int K = int(cols.size());
    int nu = int(us.size());

    using Triple = std::tuple<int, int, int>;
    std::map<Triple, std::pair<uint64_t, uint64_t>> rows;  // (colmask, rhs per u)
    for (int c = 0; c < K; ++c)
        for (const auto& [l, r] : e.middles[size_t(cols[size_t(c)])])
            for (const IdPair& gw : st.delta_of(e, r)) {
                auto& row = rows[{l, gw.first, gw.second}];
                row.first ^= uint64_t(1) << c;
            }
    for (int ui = 0; ui < nu; ++ui)
        for (const auto& [l, r] : e.middles[size_t(us[size_t(ui)])])
            for (const IdPair& gw : st.delta_of(e, r)) {
                auto& row = rows[{l, gw.first, gw.second}];
                row.second ^= uint64_t(1) << ui;
            }

    std::vector<std::pair<uint64_t, uint64_t>> mat;
    mat.reserve(rows.size());
    for (const auto& [t, rw] : rows)
        if (rw.first || rw.second) mat.push_back(rw);

    std::vector<std::vector<uint64_t>> usol;
    usol.resize(size_t(nu));
    for (int ui = 0; ui < nu; ++ui) {
        int bi = e.a2_index[size_t(us[size_t(ui)])];
        std::vector<std::pair<uint64_t, int>> m2;
        m2.reserve(mat.size() + 2);
        for (const auto& [cm, rm] : mat) m2.push_back({cm, int((rm >> ui) & 1)});
        if (d == 8 || d == 12 || d == 14 || d == 15) {
            int k = e.slot_of[size_t(bi)];
            if (k >= 0 && k < kLowSlots)
                m2.push_back({uint64_t(1) << e.slot_col[size_t(k)], int((s >> k) & 1)});
        } else if (d == kCompletionDegree) {
            for (int k = 0; k < 4; ++k)
                if (e.completion_uid[size_t(k)] == bi)
                    m2.push_back({uint64_t(1) << e.completion_col, int((s >> (kLowSlots + k)) & 1)});
        }
        std::vector<int> pivot_row(size_t(K), -1);
        int rr = 0;
        for (int c = 0; c < K; ++c) {
            int pr = -1;
            for (int i = rr; i < int(m2.size()); ++i)
                if ((m2[size_t(i)].first >> c) & 1) { pr = i; break; }
            if (pr < 0) continue;
            std::swap(m2[size_t(pr)], m2[size_t(rr)]);
            for (int i = 0; i < int(m2.size()); ++i)
                if (i != rr && ((m2[size_t(i)].first >> c) & 1)) {
                    m2[size_t(i)].first ^= m2[size_t(rr)].first;
                    m2[size_t(i)].second ^= m2[size_t(rr)].second;
                }
            pivot_row[size_t(c)] = rr++;
        }
        for (int i = rr; i < int(m2.size()); ++i)
            if (m2[size_t(i)].second) return false;  // inconsistent: choice inadmissible here
        uint64_t part = 0;
        std::vector<int> freecols;
        for (int c = 0; c < K; ++c) {
            if (pivot_row[size_t(c)] < 0) freecols.push_back(c);
            else if (m2[size_t(pivot_row[size_t(c)])].second) part |= uint64_t(1) << c;
        }
        usol[size_t(ui)].push_back(part);
        for (int fc : freecols) {
            uint64_t v = uint64_t(1) << fc;
            for (int c = 0; c < K; ++c)
                if (pivot_row[size_t(c)] >= 0 && ((m2[size_t(pivot_row[size_t(c)])].first >> fc) & 1))
                    v |= uint64_t(1) << c;
            size_t n = usol[size_t(ui)].size();
            for (size_t i = 0; i < n; ++i) usol[size_t(ui)].push_back(usol[size_t(ui)][i] ^ v);
        }
    }

    std::vector<size_t> idx(size_t(nu), 0);
    while (true) {
        for (int ui = 0; ui < nu; ++ui) {
            int bi = e.a2_index[size_t(us[size_t(ui)])];
            st.jmask[size_t(bi)] = usol[size_t(ui)][idx[size_t(ui)]];
            st.refresh_delta(e, bi);
        }
        if (solve_degree(e, st, d + 1, s)) return true;
        int ui = 0;
        while (ui < nu && ++idx[size_t(ui)] == usol[size_t(ui)].size()) {
            idx[size_t(ui)] = 0;
            ++ui;
        }
        if (ui == nu) break;
    }
    return false;
}

bool solve(const Engine& e, SolveState& st, SMap s) {
    st.jmask.fill(0);
    for (auto& v : st.delta) v.clear();
    return solve_degree(e, st, 1, s);
}

JTable materialize(const Engine& e, const SolveState& st) {
    JTable out;
    out.coassociative = true;
    out.values.resize(64);
    for (int i = 0; i < 64; ++i) {
        int d = e.degree_of[size_t(e.a2_id[size_t(i)])];
        DualElement v(e.monomials[size_t(e.a2_id[size_t(i)])]);
        uint64_t mask = st.jmask[size_t(i)];
        while (mask) {
            int c = std::countr_zero(mask);
            mask &= mask - 1;
            v += DualElement(e.monomials[size_t(e.outs[size_t(d)][size_t(c)])]);
        }
        out.values[size_t(i)] = v;
    }
    return out;
}

// sbar on a single monomial under the frozen extension rule: quotient-profile
// monomials pass through, mixed monomials carry s of their subalgebra part.
DualElement sbar_value(const DualMonomial& m, SMap s) {
    auto [sub, quot] = split_by_profile(m, 2);
    if (sub.empty()) return DualElement(m);
    const std::vector<SMapSlot>& slots = smap_slots();
    for (int k = 0; k < int(slots.size()); ++k)
        if (slots[size_t(k)].monomial == sub) {
            if ((s >> k) & 1) return DualElement(monomial_product(slots[size_t(k)].target, quot));
            return DualElement::zero();
        }
    return DualElement::zero();
}

}  // namespace

const std::vector<DualMonomial>& a2_basis_order() {
    static const std::vector<DualMonomial> basis = [] {
        std::vector<DualMonomial> out;
        for (int d = 0; d <= kTopDegree; ++d)
            for (const DualMonomial& m : dual_quotient_basis(d, DualBasisKind::subalgebra, 2))
                out.push_back(m);
        if (out.size() != 64)
            throw std::logic_error("a2_basis_order: expected 64 basis monomials, found " +
                                   std::to_string(out.size()));
        return out;
    }();
    return basis;
}

const std::vector<SMapSlot>& smap_slots() {
    static const std::vector<SMapSlot> slots = [] {
        std::vector<SMapSlot> out;
        for (int d : kSlotDegrees) {
            std::vector<DualMonomial> targets = dual_quotient_basis(d, DualBasisKind::quotient, 2);
            if (targets.size() != 1)
                throw std::logic_error("smap_slots: degree " + std::to_string(d) +
                                       " has " + std::to_string(targets.size()) +
                                       " quotient monomials, expected exactly one");
            for (const DualMonomial& m : dual_quotient_basis(d, DualBasisKind::subalgebra, 2))
                out.push_back({d, m, targets[0]});
        }
        if (out.size() != size_t(kSMapBits))
            throw std::logic_error("smap_slots: expected 18 slots, found " +
                                   std::to_string(out.size()));
        return out;
    }();
    return slots;
}

const std::vector<DualMonomial>& completion_monomials() {
    // The degree-16 basis monomials except xi_1^2 xi_3^2: exactly these four
    // coefficients of xi_1^16 stay free after the lower coordinates are
    // chosen, and together with the 14 low bits they separate all admissible
    // sections. (The exhaustive structure scan pins this down; the quotient
    // square xi_1^2 xi_3^2 = (xi_1 xi_3)^2 is always forced.)
    static const std::vector<DualMonomial> monos = {
        {7, 3}, {6, 1, 1}, {3, 2, 1}, {0, 3, 1}};
    return monos;
}

JTable j_table(SMap s) {
    check_range(s, "j_table");
    const Engine& e = engine();
    SolveState st;
    if (solve(e, st, s)) return materialize(e, st);
    return recursion_table(s);
}

JTable recursion_table(SMap s) {
    check_range(s, "recursion_table");
    const Engine& e = engine();
    JTable out;
    out.coassociative = false;
    out.values.resize(64);
    for (int i = 0; i < 64; ++i) {
        const DualMonomial& a = e.monomials[size_t(e.a2_id[size_t(i)])];
        DualElement v(a);
        int k = e.slot_of[size_t(i)];
        if (k >= 0 && ((s >> k) & 1)) v += DualElement(smap_slots()[size_t(k)].target);
        for (const auto& [l, r] : e.middles[size_t(e.a2_id[size_t(i)])]) {
            if (!e.inprof[size_t(l)]) continue;  // the projection kills the rest
            DualElement sb = sbar_value(e.monomials[size_t(r)], s);
            if (sb.is_zero()) continue;
            v += multiply(out.values[size_t(e.a2_index[size_t(l)])], sb);
        }
        out.values[size_t(i)] = v;
    }
    return out;
}

bool roth_criterion(SMap s) {
    check_range(s, "roth_criterion");
    SolveState st;
    return solve(engine(), st, s);
}

RothScan enumerate_valid(int workers) {
    if (workers < 1) throw std::invalid_argument("enumerate_valid: worker count must be positive");
    const Engine& e = engine();
    std::vector<std::vector<SMap>> parts;
    parts.resize(size_t(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        uint64_t lo = uint64_t(kSMapCount) * uint64_t(w) / uint64_t(workers);
        uint64_t hi = uint64_t(kSMapCount) * uint64_t(w + 1) / uint64_t(workers);
        pool.emplace_back([&e, &parts, w, lo, hi] {
            SolveState st;
            for (uint64_t s = lo; s < hi; ++s)
                if (solve(e, st, SMap(s))) parts[size_t(w)].push_back(SMap(s));
        });
    }
    for (std::thread& t : pool) t.join();
    RothScan scan;
    for (const std::vector<SMap>& part : parts)
        scan.valid.insert(scan.valid.end(), part.begin(), part.end());
    return scan;
}

FiniteModule module_from_smap(SMap s) {
    check_range(s, "module_from_smap");
    const Engine& e = engine();
    SolveState st;
    if (!solve(e, st, s))
        throw std::invalid_argument("module_from_smap: choice " + std::to_string(s) +
                                    " admits no coassociative section and induces no structure");

    // rows[k][src] collects the generators appearing in Sq^k of generator src.
    std::array<std::array<uint64_t, 64>, kTopDegree + 1> rows{};
    for (int u = 0; u < 64; ++u) {
        int d = e.degree_of[size_t(e.a2_id[size_t(u)])];
        for (const auto& [k, src] : e.right_sq[size_t(e.a2_id[size_t(u)])])
            rows[size_t(k)][size_t(src)] ^= uint64_t(1) << u;
        uint64_t mask = st.jmask[size_t(u)];
        while (mask) {
            int c = std::countr_zero(mask);
            mask &= mask - 1;
            int id = e.outs[size_t(d)][size_t(c)];
            for (const auto& [k, src] : e.right_sq[size_t(id)])
                rows[size_t(k)][size_t(src)] ^= uint64_t(1) << u;
        }
    }

    std::vector<int> degrees;
    for (const DualMonomial& m : a2_basis_order()) degrees.push_back(monomial_degree(m));
    FiniteModule out(Profile::A(), degrees);
    for (int k = 1; k <= kTopDegree; ++k)
        for (int src = 0; src < 64; ++src) {
            uint64_t mask = rows[size_t(k)][size_t(src)];
            if (!mask) continue;
            std::vector<int> targets;
            while (mask) {
                targets.push_back(std::countr_zero(mask));
                mask &= mask - 1;
            }
            out.set_action(k, src, targets);
        }

    std::vector<std::string> violations = validate(out);
    if (!violations.empty())
        throw std::runtime_error("module_from_smap: the induced actions break the algebra "
                                 "relations (" + std::to_string(violations.size()) +
                                 " violations; first: " + violations.front() + ")");
    return out;
}

bool quotient_condition(const FiniteModule& a2) {
    if (a2.dim_at(0) != 1)
        throw std::invalid_argument("quotient_condition: expected exactly one degree-0 generator");
    AlgebraElement q2 = milnor_primitive(2);
    AlgebraElement composite = multiply(multiply(q2, AlgebraElement::sq(8)), q2);
    F2Vector iota(1, {0});
    return a2.apply_element(composite, 0, iota).second.is_zero();
}

FiniteModule b2_from_a2(const FiniteModule& a2) {
    if (!quotient_condition(a2))
        throw std::runtime_error("b2_from_a2: the composite Q2 Sq^8 Q2 does not annihilate the "
                                 "degree-0 generator, so the span of Q2 of that generator is not "
                                 "closed under the action and no quotient structure exists");
    F2Vector iota(1, {0});
    auto [vdeg, v] = a2.apply_element(milnor_primitive(2), 0, iota);
    std::map<int, std::vector<F2Vector>> seeds;
    if (!v.is_zero()) seeds[vdeg].push_back(v);
    SubmoduleResult closure = submodule_closure(a2, seeds);
    return quotient_module(a2, closure.basis).module;
}

}  // namespace sq2
