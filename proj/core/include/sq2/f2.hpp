#pragma once

// Dense GF(2) linear algebra on bit-packed vectors. All row reduction is
// deterministic: pivots are chosen left-to-right by column, taking the first
// available row, so reduced forms and kernel bases are canonical.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sq2 {

class F2Vector {
public:
    F2Vector() = default;
    explicit F2Vector(int size) : size_(size), words_((size + 63) / 64, 0) {}
    F2Vector(int size, std::initializer_list<int> support) : F2Vector(size) {
        for (int i : support) set(i, true);
    }

    int size() const { return size_; }
    bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i, bool v) {
        uint64_t mask = uint64_t(1) << (i & 63);
        if (v) words_[i >> 6] |= mask; else words_[i >> 6] &= ~mask;
    }
    void flip(int i) { words_[i >> 6] ^= uint64_t(1) << (i & 63); }

    void add(const F2Vector& other) {  // in-place mod-2 sum
        for (size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    }

    bool is_zero() const {
        for (uint64_t w : words_) if (w) return false;
        return true;
    }
    int first_set() const {  // -1 if zero
        for (size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return int(w) * 64 + __builtin_ctzll(words_[w]);
        return -1;
    }
    int popcount() const {
        int n = 0;
        for (uint64_t w : words_) n += __builtin_popcountll(w);
        return n;
    }
    std::vector<int> support() const {
        std::vector<int> out;
        for (size_t w = 0; w < words_.size(); ++w) {
            uint64_t bits = words_[w];
            while (bits) {
                out.push_back(int(w) * 64 + __builtin_ctzll(bits));
                bits &= bits - 1;
            }
        }
        return out;
    }

    // Keeps entries [0, size); used when embedding into a larger ambient space.
    F2Vector resized(int new_size) const {
        F2Vector out(new_size);
        int n = std::min(size_, new_size);
        for (int i = 0; i < n; ++i) if (get(i)) out.set(i, true);
        return out;
    }

    bool operator==(const F2Vector& o) const { return size_ == o.size_ && words_ == o.words_; }
    bool operator!=(const F2Vector& o) const { return !(*this == o); }
    bool operator<(const F2Vector& o) const {
        if (size_ != o.size_) return size_ < o.size_;
        return words_ < o.words_;
    }

    const std::vector<uint64_t>& words() const { return words_; }

private:
    int size_ = 0;
    std::vector<uint64_t> words_;
};

inline bool dot(const F2Vector& a, const F2Vector& b) {
    uint64_t acc = 0;
    for (size_t w = 0; w < a.words().size(); ++w) acc ^= a.words()[w] & b.words()[w];
    return __builtin_popcountll(acc) & 1;
}

class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(int rows, int cols) : cols_(cols), rows_(rows, F2Vector(cols)) {}
    F2Matrix(std::initializer_list<std::initializer_list<int>> entries) {
        for (const auto& r : entries) {
            F2Vector row(int(r.size()));
            int j = 0;
            for (int v : r) { if (v & 1) row.set(j, true); ++j; }
            rows_.push_back(row);
            cols_ = int(r.size());
        }
    }

    int rows() const { return int(rows_.size()); }
    int cols() const { return cols_; }
    bool get(int i, int j) const { return rows_[i].get(j); }
    void set(int i, int j, bool v) { rows_[i].set(j, v); }
    F2Vector& row(int i) { return rows_[i]; }
    const F2Vector& row(int i) const { return rows_[i]; }
    void append_row(const F2Vector& r) {
        rows_.push_back(r);
        if (cols_ == 0) cols_ = r.size();
    }

    F2Vector column(int j) const {
        F2Vector out(rows());
        for (int i = 0; i < rows(); ++i) if (rows_[i].get(j)) out.set(i, true);
        return out;
    }

    bool operator==(const F2Matrix& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }
    bool operator!=(const F2Matrix& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    int cols_ = 0;
    std::vector<F2Vector> rows_;
};

F2Matrix transpose(const F2Matrix& m);
F2Vector multiply(const F2Matrix& m, const F2Vector& v);   // m: (r x c), v: c
F2Matrix multiply(const F2Matrix& a, const F2Matrix& b);   // (r x c)·(c x k)
F2Matrix identity_matrix(int n);
F2Matrix add(const F2Matrix& a, const F2Matrix& b);

struct RrefResult {
    int rank = 0;
    F2Matrix reduced;
    std::vector<int> pivot_columns;
};

RrefResult rref(const F2Matrix& m);

// Canonical kernel basis: one vector per free column, ascending by free column.
std::vector<F2Vector> kernel_basis(const F2Matrix& m);

// Solves m x = b; returns the particular solution with all free variables zero,
// or nullopt when b is outside the column space.
std::optional<F2Vector> solve(const F2Matrix& m, const F2Vector& b);

// Incremental row-echelon accumulator. add() reduces the vector against the
// rows seen so far and keeps it if independent; reduce() only reports the
// remainder. Pivot bookkeeping matches rref()'s column-order convention.
class EchelonBasis {
public:
    explicit EchelonBasis(int ambient) : ambient_(ambient) {}

    bool add(const F2Vector& v);        // true if v enlarged the span
    F2Vector reduce(const F2Vector& v) const;
    bool contains(const F2Vector& v) const { return reduce(v).is_zero(); }
    int rank() const { return int(rows_.size()); }
    int ambient() const { return ambient_; }
    const std::vector<F2Vector>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

private:
    int ambient_;
    std::vector<F2Vector> rows_;   // kept fully reduced against each other
    std::vector<int> pivots_;      // pivots_[i] = pivot column of rows_[i]
};

// Complement of a subspace: the standard basis vectors at the non-pivot
// columns of the subspace's reduced form. project() maps an ambient vector to
// its coordinates on those complement vectors (i.e. the class modulo the
// subspace, in canonical coordinates).
struct QuotientMap {
    int ambient = 0;
    std::vector<int> complement_columns;
    std::vector<F2Vector> complement_basis;
    EchelonBasis subspace{0};

    F2Vector project(const F2Vector& v) const;
    // Lifts complement coordinates back to a canonical ambient representative.
    F2Vector lift(const F2Vector& coords) const;
    int dim() const { return int(complement_columns.size()); }
};

QuotientMap quotient_coordinates(const std::vector<F2Vector>& subspace_basis, int ambient_dim);

}  // namespace sq2
