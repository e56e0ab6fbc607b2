#include "sq2/f2.hpp"

#include <algorithm>
#include <stdexcept>

namespace sq2 {

std::string F2Matrix::to_string() const {
    std::string out;
    for (int i = 0; i < rows(); ++i) {
        for (int j = 0; j < cols(); ++j) out += get(i, j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

F2Matrix transpose(const F2Matrix& m) {
    F2Matrix out(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j : m.row(i).support()) out.set(j, i, true);
    return out;
}

F2Vector multiply(const F2Matrix& m, const F2Vector& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("matrix/vector size mismatch");
    F2Vector out(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        if (dot(m.row(i), v)) out.set(i, true);
    return out;
}

F2Matrix multiply(const F2Matrix& a, const F2Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix size mismatch");
    F2Matrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        F2Vector acc(b.cols());
        for (int k : a.row(i).support()) acc.add(b.row(k));
        out.row(i) = acc;
    }
    return out;
}

F2Matrix identity_matrix(int n) {
    F2Matrix out(n, n);
    for (int i = 0; i < n; ++i) out.set(i, i, true);
    return out;
}

F2Matrix add(const F2Matrix& a, const F2Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix size mismatch");
    F2Matrix out = a;
    for (int i = 0; i < out.rows(); ++i) out.row(i).add(b.row(i));
    return out;
}

RrefResult rref(const F2Matrix& m) {
    RrefResult res;
    res.reduced = m;
    F2Matrix& a = res.reduced;
    int pivot_row = 0;
    for (int col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
        int sel = -1;
        for (int i = pivot_row; i < a.rows(); ++i)
            if (a.get(i, col)) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(a.row(pivot_row), a.row(sel));
        for (int i = 0; i < a.rows(); ++i)
            if (i != pivot_row && a.get(i, col)) a.row(i).add(a.row(pivot_row));
        res.pivot_columns.push_back(col);
        ++pivot_row;
    }
    res.rank = pivot_row;
    return res;
}

std::vector<F2Vector> kernel_basis(const F2Matrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivot_columns) is_pivot[c] = true;
    std::vector<F2Vector> out;
    for (int free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        F2Vector v(m.cols());
        v.set(free_col, true);
        for (int i = 0; i < r.rank; ++i)
            if (r.reduced.get(i, free_col)) v.set(r.pivot_columns[i], true);
        out.push_back(v);
    }
    return out;
}

std::optional<F2Vector> solve(const F2Matrix& m, const F2Vector& b) {
    if (m.rows() != b.size()) throw std::invalid_argument("matrix/rhs size mismatch");
    F2Matrix aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j : m.row(i).support()) aug.set(i, j, true);
        if (b.get(i)) aug.set(i, m.cols(), true);
    }
    RrefResult r = rref(aug);
    F2Vector x(m.cols());
    for (int i = 0; i < r.rank; ++i) {
        int p = r.pivot_columns[i];
        if (p == m.cols()) return std::nullopt;  // row (0 ... 0 | 1): inconsistent
        if (r.reduced.get(i, m.cols())) x.set(p, true);
    }
    return x;
}

bool EchelonBasis::add(const F2Vector& v) {
    F2Vector w = reduce(v);
    int p = w.first_set();
    if (p < 0) return false;
    // keep rows mutually reduced so reduce() is a single pass
    for (size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].get(p)) rows_[i].add(w);
    size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < p) ++at;
    rows_.insert(rows_.begin() + at, w);
    pivots_.insert(pivots_.begin() + at, p);
    return true;
}

F2Vector EchelonBasis::reduce(const F2Vector& v) const {
    F2Vector w = v;
    for (size_t i = 0; i < rows_.size(); ++i)
        if (w.get(pivots_[i])) w.add(rows_[i]);
    return w;
}

F2Vector QuotientMap::project(const F2Vector& v) const {
    F2Vector w = subspace.reduce(v);
    F2Vector coords(dim());
    for (int i = 0; i < dim(); ++i)
        if (w.get(complement_columns[i])) coords.set(i, true);
    return coords;
}

F2Vector QuotientMap::lift(const F2Vector& coords) const {
    F2Vector v(ambient);
    for (int i = 0; i < dim(); ++i)
        if (coords.get(i)) v.set(complement_columns[i], true);
    return v;
}

QuotientMap quotient_coordinates(const std::vector<F2Vector>& subspace_basis, int ambient_dim) {
    QuotientMap q;
    q.ambient = ambient_dim;
    q.subspace = EchelonBasis(ambient_dim);
    for (const F2Vector& v : subspace_basis) q.subspace.add(v);
    std::vector<bool> is_pivot(ambient_dim, false);
    for (int p : q.subspace.pivots()) is_pivot[p] = true;
    for (int j = 0; j < ambient_dim; ++j) {
        if (is_pivot[j]) continue;
        q.complement_columns.push_back(j);
        F2Vector e(ambient_dim);
        e.set(j, true);
        q.complement_basis.push_back(e);
    }
    return q;
}

}  // namespace sq2
