#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "markbracket/gf2.hpp"
#include "support/generators.hpp"

using namespace markbracket;

namespace {

Gf2Matrix from_rows(const std::vector<std::vector<int>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows[0].size() : 0;
    Gf2Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m.set(i, j, rows[i][j] & 1);
    return m;
}

Gf2Matrix block_diag(const Gf2Matrix& a, const Gf2Matrix& b) {
    Gf2Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m.set(i, j, a.at(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            m.set(a.rows() + i, a.cols() + j, b.at(i, j));
    return m;
}

Gf2Matrix random_square(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> bit(0, 1);
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.set(i, j, bit(rng) == 1);
    return m;
}

} // namespace

TEST_CASE("nullity of small matrices") {
    CHECK(nullity(Gf2Matrix(0, 0)) == 0);
    CHECK(nullity(from_rows({{0}})) == 1);
    CHECK(nullity(from_rows({{1, 1}, {1, 1}})) == 1);
    CHECK(nullity(from_rows({{1, 0}, {0, 1}})) == 0);
}

TEST_CASE("nullity rejects rectangular input") {
    CHECK_THROWS_AS(nullity(Gf2Matrix(2, 3)), DimensionError);
}

TEST_CASE("delete_row_col") {
    const Gf2Matrix id2 = from_rows({{1, 0}, {0, 1}});
    CHECK(delete_row_col(id2, {0}) == from_rows({{1}}));
    CHECK(delete_row_col(id2, {}) == id2);
    const Gf2Matrix empty = delete_row_col(id2, {0, 1});
    CHECK(empty.rows() == 0);
    CHECK(empty.cols() == 0);
    CHECK_THROWS_AS(delete_row_col(id2, {2}), DimensionError);
}

TEST_CASE("out-of-range access throws") {
    Gf2Matrix m(2, 2);
    CHECK_THROWS_AS(m.at(2, 0), DimensionError);
    CHECK_THROWS_AS(m.set(0, 2, true), DimensionError);
}

TEST_CASE("packed eliminator matches the naive one") {
    // Exhaustive up to 2x2, random up to 8x8.
    for (std::size_t n = 0; n <= 2; ++n) {
        const std::size_t cells = n * n;
        for (std::uint32_t bits = 0; bits < (1u << cells); ++bits) {
            std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
            for (std::size_t k = 0; k < cells; ++k)
                rows[k / n][k % n] = (bits >> k) & 1;
            CHECK(from_rows(rows).rank() == static_cast<std::size_t>(testsupport::naive_gf2_rank(rows)));
        }
    }
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial % 6);
        std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
        for (auto& row : rows)
            for (auto& cell : row)
                cell = bit(rng);
        CHECK(from_rows(rows).rank() == static_cast<std::size_t>(testsupport::naive_gf2_rank(rows)));
    }
}

TEST_CASE("nullity plus rank equals the column count") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = static_cast<std::size_t>(trial % 9);
        const Gf2Matrix m = random_square(rng, n);
        CHECK(m.nullity() + m.rank() == n);
    }
}

TEST_CASE("nullity is invariant under simultaneous row/column permutation") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 6);
        const Gf2Matrix m = random_square(rng, n);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Gf2Matrix permuted(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                permuted.set(perm[i], perm[j], m.at(i, j));
        CHECK(permuted.nullity() == m.nullity());
    }
}

TEST_CASE("nullity adds over block diagonals") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const Gf2Matrix a = random_square(rng, static_cast<std::size_t>(trial % 5));
        const Gf2Matrix b = random_square(rng, static_cast<std::size_t>((trial / 5) % 5));
        CHECK(block_diag(a, b).nullity() == a.nullity() + b.nullity());
    }
}
