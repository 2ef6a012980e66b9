#include "degbound/gf2.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace degbound::gf2 {

// ---------------------------------------------------------------- BitVector

BitVector BitVector::from_indices(std::size_t length, std::span<const std::size_t> ones) {
    BitVector v(length);
    for (std::size_t i : ones) {
        if (i >= length) {
            throw InputError("BitVector index " + std::to_string(i) + " out of range " +
                             std::to_string(length));
        }
        v.flip(i);
    }
    return v;
}

BitVector BitVector::from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i);
        } else if (bits[i] != '0') {
            throw InputError("bit string may only contain '0' and '1'");
        }
    }
    return v;
}

void BitVector::require_same_length(const BitVector& other) const {
    if (length_ != other.length_) {
        throw InputError("BitVector length mismatch: " + std::to_string(length_) + " vs " +
                         std::to_string(other.length_));
    }
}

BitVector& BitVector::operator^=(const BitVector& other) {
    require_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
    require_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
    require_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

bool BitVector::dot(const BitVector& other) const {
    require_same_length(other);
    word_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
}

std::size_t BitVector::count() const {
    std::size_t total = 0;
    for (word_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bool BitVector::any() const {
    return std::any_of(words_.begin(), words_.end(), [](word_t w) { return w != 0; });
}

std::vector<std::size_t> BitVector::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
        word_t w = words_[wi];
        while (w != 0) {
            out.push_back(wi * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

std::string BitVector::to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitMatrix BitMatrix::from_rows(std::size_t cols, std::span<const BitVector> rows) {
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
    if (rows.empty()) return {};
    BitMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, BitVector::from_string(rows[r]));
    return m;
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    std::copy_n(row_ptr(r), stride_, v.words().begin());
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) {
        throw InputError("row length " + std::to_string(v.size()) + " does not match " +
                         std::to_string(cols_) + " columns");
    }
    std::copy_n(v.words().begin(), stride_, row_ptr(r));
}

void BitMatrix::append_row(const BitVector& v) {
    if (rows_ == 0 && stride_ == 0 && cols_ == 0) {
        cols_ = v.size();
        stride_ = words_for(cols_);
    }
    data_.resize((rows_ + 1) * stride_, 0);
    ++rows_;
    set_row(rows_ - 1, v);
}

void BitMatrix::xor_rows(std::size_t dst, std::size_t src) {
    word_t* d = row_ptr(dst);
    const word_t* s = row_ptr(src);
    for (std::size_t i = 0; i < stride_; ++i) d[i] ^= s[i];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row_ptr(a), row_ptr(a) + stride_, row_ptr(b));
}

BitVector BitMatrix::multiply(const BitVector& x) const {
    if (x.size() != cols_) {
        throw InputError("matrix-vector product: vector length " + std::to_string(x.size()) +
                         " != cols " + std::to_string(cols_));
    }
    BitVector out(rows_);
    const auto xw = x.words();
    for (std::size_t r = 0; r < rows_; ++r) {
        const word_t* row = row_ptr(r);
        word_t acc = 0;
        for (std::size_t i = 0; i < stride_; ++i) acc ^= row[i] & xw[i];
        if (std::popcount(acc) & 1) out.set(r);
    }
    return out;
}

BitMatrix BitMatrix::multiply(const BitMatrix& other) const {
    if (other.rows_ != cols_) {
        throw InputError("matrix product shape mismatch");
    }
    BitMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        word_t* dst = out.row_ptr(r);
        for (std::size_t k = 0; k < cols_; ++k) {
            if (!get(r, k)) continue;
            const word_t* src = other.row_ptr(k);
            for (std::size_t i = 0; i < out.stride_; ++i) dst[i] ^= src[i];
        }
    }
    return out;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const word_t* row = row_ptr(r);
        for (std::size_t wi = 0; wi < stride_; ++wi) {
            word_t w = row[wi];
            while (w != 0) {
                t.set(wi * word_bits + static_cast<std::size_t>(std::countr_zero(w)), r);
                w &= w - 1;
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::select_columns(std::span<const std::size_t> columns) const {
    BitMatrix out(rows_, columns.size());
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (get(r, columns[j])) out.set(r, j);
        }
    }
    return out;
}

bool BitMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](word_t w) { return w == 0; });
}

// ---------------------------------------------------------------- elimination

Echelon Echelon::of(BitMatrix m) {
    Echelon e;
    std::size_t next = 0;  // first row not yet holding a pivot
    for (std::size_t c = 0; c < m.cols() && next < m.rows(); ++c) {
        const std::size_t wi = c / word_bits;
        const word_t mask = word_t{1} << (c % word_bits);

        std::size_t pivot = m.rows();
        for (std::size_t r = next; r < m.rows(); ++r) {
            if (m.row_ptr(r)[wi] & mask) {
                pivot = r;
                break;
            }
        }
        if (pivot == m.rows()) continue;

        m.swap_rows(next, pivot);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != next && (m.row_ptr(r)[wi] & mask)) m.xor_rows(r, next);
        }
        e.pivots.push_back(c);
        ++next;
    }
    e.reduced = std::move(m);
    return e;
}

std::size_t rank(const BitMatrix& m) {
    // Forward elimination only; no back substitution needed for the count.
    BitMatrix work = m;
    std::size_t next = 0;
    for (std::size_t c = 0; c < work.cols() && next < work.rows(); ++c) {
        const std::size_t wi = c / word_bits;
        const word_t mask = word_t{1} << (c % word_bits);
        std::size_t pivot = work.rows();
        for (std::size_t r = next; r < work.rows(); ++r) {
            if (work.row_words(r)[wi] & mask) {
                pivot = r;
                break;
            }
        }
        if (pivot == work.rows()) continue;
        work.swap_rows(next, pivot);
        for (std::size_t r = next + 1; r < work.rows(); ++r) {
            if (work.row_words(r)[wi] & mask) work.xor_rows(r, next);
        }
        ++next;
    }
    return next;
}

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b) {
    if (b.size() != m.rows()) {
        throw InputError("solve: right-hand side has length " + std::to_string(b.size()) +
                         " but matrix has " + std::to_string(m.rows()) + " rows");
    }
    // Augment with b as the last column and reduce.
    BitMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m.get(r, c)) aug.set(r, c);
        }
        if (b.get(r)) aug.set(r, m.cols());
    }
    const Echelon e = Echelon::of(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;

    BitVector x(m.cols());
    for (std::size_t i = 0; i < e.rank(); ++i) {
        if (e.reduced.get(i, m.cols())) x.set(e.pivots[i]);
    }
    return x;
}

std::vector<BitVector> nullspace(const BitMatrix& m) {
    const Echelon e = Echelon::of(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;

    std::vector<BitVector> basis;
    basis.reserve(m.cols() - e.rank());
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        BitVector v(m.cols());
        v.set(f);
        for (std::size_t i = 0; i < e.rank(); ++i) {
            if (e.reduced.get(i, f)) v.set(e.pivots[i]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

bool in_row_space(const BitMatrix& m, const BitVector& v) {
    BitMatrix extended = m;
    extended.append_row(v);
    return rank(extended) == rank(m);
}

}  // namespace degbound::gf2
