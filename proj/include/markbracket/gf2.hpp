#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "markbracket/errors.hpp"

namespace markbracket {

// Dense matrix over GF(2), rows packed into 64-bit words.
class Gf2Matrix {
public:
    Gf2Matrix() = default;

    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64), words_(rows * words_per_row_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool at(std::size_t r, std::size_t c) const {
        check_index(r, c);
        return (words_[r * words_per_row_ + (c >> 6)] >> (c & 63)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool value) {
        check_index(r, c);
        std::uint64_t& w = words_[r * words_per_row_ + (c >> 6)];
        const std::uint64_t bit = std::uint64_t(1) << (c & 63);
        if (value)
            w |= bit;
        else
            w &= ~bit;
    }

    std::size_t rank() const {
        std::vector<std::uint64_t> m = words_;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            const std::size_t word = c >> 6;
            const std::uint64_t bit = std::uint64_t(1) << (c & 63);
            std::size_t pivot = rows_;
            for (std::size_t i = r; i < rows_; ++i) {
                if (m[i * words_per_row_ + word] & bit) {
                    pivot = i;
                    break;
                }
            }
            if (pivot == rows_)
                continue;
            if (pivot != r) {
                for (std::size_t k = 0; k < words_per_row_; ++k)
                    std::swap(m[pivot * words_per_row_ + k], m[r * words_per_row_ + k]);
            }
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r)
                    continue;
                if (m[i * words_per_row_ + word] & bit) {
                    for (std::size_t k = 0; k < words_per_row_; ++k)
                        m[i * words_per_row_ + k] ^= m[r * words_per_row_ + k];
                }
            }
            ++r;
        }
        return r;
    }

    // GF(2)-nullity; defined on square matrices only. nullity(0x0) = 0.
    std::size_t nullity() const {
        if (rows_ != cols_)
            throw DimensionError("nullity requires a square matrix");
        return cols_ - rank();
    }

    // Submatrix with the listed rows and same-numbered columns removed.
    Gf2Matrix without(const std::set<std::size_t>& indices) const {
        for (std::size_t i : indices) {
            if (i >= rows_ || i >= cols_)
                throw DimensionError("delete index out of range");
        }
        std::vector<std::size_t> keep_rows, keep_cols;
        for (std::size_t i = 0; i < rows_; ++i)
            if (!indices.count(i))
                keep_rows.push_back(i);
        for (std::size_t j = 0; j < cols_; ++j)
            if (!indices.count(j))
                keep_cols.push_back(j);
        Gf2Matrix out(keep_rows.size(), keep_cols.size());
        for (std::size_t r = 0; r < keep_rows.size(); ++r)
            for (std::size_t c = 0; c < keep_cols.size(); ++c)
                out.set(r, c, at(keep_rows[r], keep_cols[c]));
        return out;
    }

    bool operator==(const Gf2Matrix& other) const = default;

private:
    void check_index(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_)
            throw DimensionError("matrix index out of range");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> words_;
};

inline std::size_t nullity(const Gf2Matrix& m) { return m.nullity(); }

inline Gf2Matrix delete_row_col(const Gf2Matrix& m, const std::set<std::size_t>& indices) {
    return m.without(indices);
}

} // namespace markbracket
