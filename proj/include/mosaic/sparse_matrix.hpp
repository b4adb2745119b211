#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mosaic/rational.hpp"

namespace mosaic::exact {

// Sparse vector: (index, value) pairs sorted by index, no zero values.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline void sort_and_compress(SparseVec& v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(v.size());
    for (auto& [i, c] : v) {
        if (!out.empty() && out.back().first == i)
            out.back().second += c;
        else
            out.emplace_back(i, c);
    }
    std::erase_if(out, [](const auto& p) { return is_zero(p.second); });
    v = std::move(out);
}

// r += s * coef   (both sorted)
inline void axpy(SparseVec& r, const SparseVec& s, const Rational& coef) {
    if (is_zero(coef) || s.empty()) return;
    SparseVec out;
    out.reserve(r.size() + s.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
        if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || s[j].first < r[i].first) {
            out.emplace_back(s[j].first, s[j].second * coef);
            ++j;
        } else {
            Rational val = r[i].second + s[j].second * coef;
            if (!is_zero(val)) out.emplace_back(r[i].first, std::move(val));
            ++i, ++j;
        }
    }
    r = std::move(out);
}

inline void scale(SparseVec& v, const Rational& c) {
    for (auto& [i, val] : v) val *= c;
}

// Scale to a primitive integer vector with positive first entry.
inline void normalize_primitive(SparseVec& v) {
    if (v.empty()) return;
    Int lcm_den = 1, gcd_num = 0;
    for (auto& [i, c] : v) {
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
                c.get_den().get_mpz_t());
    }
    for (auto& [i, c] : v) {
        Int num = c.get_num() * (lcm_den / c.get_den());
        mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), num.get_mpz_t());
    }
    Rational factor(lcm_den, gcd_num);
    factor.canonicalize();
    if (sgn(v.front().second) < 0) factor = -factor;
    scale(v, factor);
}

// Sparse rational matrix, assembled entry-wise. Indices are 0-based.
class RationalMatrix {
public:
    RationalMatrix(int rows = 0, int cols = 0) : rows_(rows), cols_(cols), row_data_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void add(int r, int c, const Rational& v) {
        check(r, c);
        if (is_zero(v)) return;
        auto& m = row_data_[r];
        auto it = m.find(c);
        if (it == m.end()) {
            m.emplace(c, v);
        } else {
            it->second += v;
            if (is_zero(it->second)) m.erase(it);
        }
    }

    void set(int r, int c, const Rational& v) {
        check(r, c);
        if (is_zero(v))
            row_data_[r].erase(c);
        else
            row_data_[r][c] = v;
    }

    Rational at(int r, int c) const {
        check(r, c);
        auto it = row_data_[r].find(c);
        return it == row_data_[r].end() ? Rational(0) : it->second;
    }

    size_t nnz() const {
        size_t n = 0;
        for (auto& m : row_data_) n += m.size();
        return n;
    }

    SparseVec row(int r) const {
        SparseVec v(row_data_[r].begin(), row_data_[r].end());
        return v;
    }

    std::vector<SparseVec> row_vectors() const {
        std::vector<SparseVec> out(rows_);
        for (int r = 0; r < rows_; ++r) out[r] = row(r);
        return out;
    }

    std::vector<SparseVec> col_vectors() const {
        std::vector<SparseVec> out(cols_);
        for (int r = 0; r < rows_; ++r)
            for (auto& [c, v] : row_data_[r]) out[c].emplace_back(r, v);
        return out;
    }

    RationalMatrix transpose() const {
        RationalMatrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (auto& [c, v] : row_data_[r]) t.set(c, r, v);
        return t;
    }

    static RationalMatrix identity(int n) {
        RationalMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    // v interpreted as a column vector of length cols(); returns m*v.
    SparseVec apply(const SparseVec& v) const {
        SparseVec out;
        for (int r = 0; r < rows_; ++r) {
            Rational acc = 0;
            const auto& m = row_data_[r];
            for (auto& [c, coef] : v) {
                auto it = m.find(c);
                if (it != m.end()) acc += it->second * coef;
            }
            if (!is_zero(acc)) out.emplace_back(r, acc);
        }
        return out;
    }

    bool is_zero_matrix() const { return nnz() == 0; }

private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("RationalMatrix index out of bounds");
    }
    int rows_, cols_;
    std::vector<std::map<int, Rational>> row_data_;
};

inline RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix dims mismatch");
    RationalMatrix out(a.rows(), b.cols());
    auto brows = b.row_vectors();
    for (int r = 0; r < a.rows(); ++r) {
        SparseVec acc;
        for (auto& [k, v] : a.row(r)) axpy(acc, brows[k], v);
        for (auto& [c, v] : acc) out.set(r, c, v);
    }
    return out;
}

// Incremental echelon form over Q. Rows are inserted one at a time and
// reduced against the stored pivot rows; pivot entries are scaled to 1.
// Insertion order fixes the result, so runs are reproducible.
class Echelon {
public:
    // Reduce v against the current echelon rows; v's leading index will
    // have no pivot afterwards (or v is empty).
    SparseVec reduce(SparseVec v) const {
        while (!v.empty()) {
            auto it = pivot_of_col_.find(v.front().first);
            if (it == pivot_of_col_.end()) break;
            Rational coef = -v.front().second;
            axpy(v, rows_[it->second], coef);
        }
        return v;
    }

    // Returns true when v was independent of the span so far.
    bool insert(SparseVec v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        Rational inv = 1 / v.front().second;
        scale(v, inv);
        pivot_of_col_.emplace(v.front().first, (int)rows_.size());
        rows_.push_back(std::move(v));
        return true;
    }

    int rank() const { return (int)rows_.size(); }
    bool has_pivot(int col) const { return pivot_of_col_.count(col) > 0; }
    const std::vector<SparseVec>& rows() const { return rows_; }

private:
    std::vector<SparseVec> rows_;
    std::unordered_map<int, int> pivot_of_col_;
};

inline int rank(const RationalMatrix& m) {
    Echelon e;
    for (int r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    return e.rank();
}

// Basis of the right kernel {x : m x = 0}. Columns are augmented with unit
// tags; a column that reduces to zero on the value part yields a relation.
inline std::vector<SparseVec> kernel_basis(const RationalMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    Echelon e;
    std::vector<SparseVec> kernel;
    auto columns = m.col_vectors();
    for (int j = 0; j < cols; ++j) {
        SparseVec aug = columns[j];
        aug.emplace_back(rows + j, Rational(1));
        aug = e.reduce(std::move(aug));
        if (aug.empty() || aug.front().first >= rows) {
            SparseVec rel;
            for (auto& [i, c] : aug) rel.emplace_back(i - rows, c);
            normalize_primitive(rel);
            kernel.push_back(std::move(rel));
        } else {
            Rational inv = 1 / aug.front().second;
            scale(aug, inv);
            e.insert(std::move(aug));
        }
    }
    return kernel;
}

// True iff v (length rows) lies in the column span of m.
inline bool image_membership(const RationalMatrix& m, const SparseVec& v) {
    for (auto& [i, c] : v)
        if (i < 0 || i >= m.rows())
            throw std::invalid_argument("image_membership: dimension mismatch");
    Echelon e;
    for (auto& col : m.col_vectors()) e.insert(col);
    return e.reduce(v).empty();
}

// Deterministic map from canonical keys to contiguous indices,
// assigned in sorted key order once frozen.
template <typename Key>
class BasisRegistry {
public:
    void add(const Key& k) {
        assert(!frozen_);
        keys_.push_back(k);
    }

    void freeze() {
        std::sort(keys_.begin(), keys_.end());
        keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
        for (int i = 0; i < (int)keys_.size(); ++i) index_[keys_[i]] = i;
        frozen_ = true;
    }

    int index(const Key& k) const {
        auto it = index_.find(k);
        if (it == index_.end()) throw std::out_of_range("unknown basis key");
        return it->second;
    }

    bool contains(const Key& k) const { return index_.count(k) > 0; }
    int size() const { return (int)keys_.size(); }
    const Key& key(int i) const { return keys_.at(i); }
    const std::vector<Key>& keys() const { return keys_; }

private:
    bool frozen_ = false;
    std::vector<Key> keys_;
    std::map<Key, int> index_;
};

}  // namespace mosaic::exact
