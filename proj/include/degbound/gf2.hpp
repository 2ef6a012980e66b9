#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace degbound {

/// Thrown when an operation receives arguments of incompatible shape or an
/// out-of-range parameter.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace gf2 {

using word_t = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

inline constexpr std::size_t words_for(std::size_t bits) {
    return (bits + word_bits - 1) / word_bits;
}

/// Fixed-length vector over GF(2), packed 64 entries per word.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t length) : length_(length), words_(words_for(length), 0) {}

    static BitVector from_indices(std::size_t length, std::span<const std::size_t> ones);
    static BitVector from_string(const std::string& bits);  // "0110..."

    [[nodiscard]] std::size_t size() const { return length_; }

    [[nodiscard]] bool get(std::size_t i) const {
        return (words_[i / word_bits] >> (i % word_bits)) & 1u;
    }
    void set(std::size_t i, bool value = true) {
        const word_t mask = word_t{1} << (i % word_bits);
        if (value) {
            words_[i / word_bits] |= mask;
        } else {
            words_[i / word_bits] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i / word_bits] ^= word_t{1} << (i % word_bits); }

    BitVector& operator^=(const BitVector& other);
    BitVector& operator&=(const BitVector& other);
    BitVector& operator|=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
    friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
    friend bool operator==(const BitVector& a, const BitVector& b) = default;

    /// Inner product mod 2.
    [[nodiscard]] bool dot(const BitVector& other) const;
    [[nodiscard]] std::size_t count() const;
    [[nodiscard]] bool any() const;
    [[nodiscard]] bool none() const { return !any(); }
    [[nodiscard]] std::vector<std::size_t> ones() const;
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] std::span<const word_t> words() const { return words_; }
    [[nodiscard]] std::span<word_t> words() { return words_; }

private:
    void require_same_length(const BitVector& other) const;

    std::size_t length_ = 0;
    std::vector<word_t> words_;
};

/// Dense row-major GF(2) matrix. Each row occupies a whole number of words so
/// row operations are straight word-wise XORs.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(std::size_t cols, std::span<const BitVector> rows);
    static BitMatrix from_strings(const std::vector<std::string>& rows);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    [[nodiscard]] bool get(std::size_t r, std::size_t c) const {
        return (data_[r * stride_ + c / word_bits] >> (c % word_bits)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool value = true) {
        word_t& w = data_[r * stride_ + c / word_bits];
        const word_t mask = word_t{1} << (c % word_bits);
        w = value ? (w | mask) : (w & ~mask);
    }
    void flip(std::size_t r, std::size_t c) {
        data_[r * stride_ + c / word_bits] ^= word_t{1} << (c % word_bits);
    }

    [[nodiscard]] BitVector row(std::size_t r) const;
    [[nodiscard]] std::span<const word_t> row_words(std::size_t r) const {
        return {row_ptr(r), stride_};
    }
    void set_row(std::size_t r, const BitVector& v);
    void append_row(const BitVector& v);
    void xor_rows(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    /// m·x, with x indexed by columns.
    [[nodiscard]] BitVector multiply(const BitVector& x) const;
    [[nodiscard]] BitMatrix multiply(const BitMatrix& other) const;
    [[nodiscard]] BitMatrix transpose() const;
    [[nodiscard]] BitMatrix select_columns(std::span<const std::size_t> columns) const;
    [[nodiscard]] bool is_zero() const;

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) = default;

private:
    [[nodiscard]] const word_t* row_ptr(std::size_t r) const { return data_.data() + r * stride_; }
    word_t* row_ptr(std::size_t r) { return data_.data() + r * stride_; }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<word_t> data_;

    friend struct Echelon;
};

/// Reduced row echelon form of a matrix. Pivot rule: columns scanned left to
/// right, pivot row is the lowest-index remaining row with a one in that
/// column. The same input always yields the same form.
struct Echelon {
    BitMatrix reduced;                 // fully reduced, pivot rows first
    std::vector<std::size_t> pivots;   // pivot column of row i, i < rank

    [[nodiscard]] std::size_t rank() const { return pivots.size(); }

    static Echelon of(BitMatrix m);
};

[[nodiscard]] std::size_t rank(const BitMatrix& m);

/// Some x with m·x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
[[nodiscard]] std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b);

/// Basis of {x : m·x = 0}, one vector per free column in increasing order.
[[nodiscard]] std::vector<BitVector> nullspace(const BitMatrix& m);

/// True iff v lies in the row space of m.
[[nodiscard]] bool in_row_space(const BitMatrix& m, const BitVector& v);

}  // namespace gf2
}  // namespace degbound
