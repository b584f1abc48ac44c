#pragma once

#include <zom/errors.hh>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zom
{
    /// A (row, column) position. Every public coordinate in this library is
    /// 1-based.
    struct Cell
    {
        std::uint32_t row = 0;
        std::uint32_t col = 0;

        auto operator<=> (const Cell &) const = default;
    };

    /**
     * A small forbidden 0-1 pattern: its dimensions plus the set of
     * 1-positions, kept sorted row-major with no duplicates.
     */
    class Pattern
    {
        public:
            Pattern(std::uint32_t rows, std::uint32_t cols, std::vector<Cell> ones);

            auto rows() const -> std::uint32_t { return _rows; }
            auto cols() const -> std::uint32_t { return _cols; }
            auto ones() const -> std::span<const Cell> { return _ones; }
            auto weight() const -> std::size_t { return _ones.size(); }
            auto at(std::uint32_t row, std::uint32_t col) const -> bool;

            /// Number of 1s in the given row / column.
            auto row_weight(std::uint32_t row) const -> std::size_t;
            auto col_weight(std::uint32_t col) const -> std::size_t;

            auto operator== (const Pattern &) const -> bool = default;

        private:
            std::uint32_t _rows, _cols;
            std::vector<Cell> _ones;
    };

    /// Builds a normalized pattern; throws BoundsError for any point outside
    /// [1, rows] x [1, cols] or for empty dimensions.
    auto pattern_from_points(std::uint32_t rows, std::uint32_t cols, std::span<const Cell> points) -> Pattern;

    enum class Transform
    {
        transpose,
        rot180,
        flip_rows,
        flip_cols,
        anti_transpose
    };

    /// Image of a single cell of a rows x cols matrix under the transform.
    auto transform_cell(Cell cell, std::uint32_t rows, std::uint32_t cols, Transform op) -> Cell;

    auto transform(const Pattern & pattern, Transform op) -> Pattern;

    auto transform_name(Transform op) -> std::string_view;

    /**
     * Named patterns: "R1", "R2", "S1", "S2", "T", "identity(k)" and
     * "one_row(l)". Unknown names throw CatalogError.
     */
    auto catalog(std::string_view name) -> Pattern;

    auto identity_pattern(std::uint32_t k) -> Pattern;
    auto one_row_pattern(std::uint32_t l) -> Pattern;

    inline constexpr std::uint32_t bit_matrix_max_side = 1u << 16;

    class SparseMatrix;

    /// Dense square host matrix stored as fixed-width bit rows.
    class BitMatrix
    {
        public:
            explicit BitMatrix(std::uint32_t n);

            auto n() const -> std::uint32_t { return _n; }
            auto get(std::uint32_t row, std::uint32_t col) const -> bool;
            auto set(std::uint32_t row, std::uint32_t col, bool value = true) -> void;
            auto weight() const -> std::size_t;
            auto row_weight(std::uint32_t row) const -> std::size_t;

            /// Words of one row; bit (c-1) of the row is column c.
            auto row_words(std::uint32_t row) const -> std::span<const std::uint64_t>;

            /// Row-major '0'/'1' string, cell (1,1) first.
            auto bit_string() const -> std::string;

            auto operator== (const BitMatrix &) const -> bool = default;

        private:
            std::uint32_t _n;
            std::size_t _words_per_row;
            std::vector<std::uint64_t> _bits;
    };

    /// Square host matrix as a strictly row-major sorted list of 1-entries.
    class SparseMatrix
    {
        public:
            /// Sorts and validates; duplicates and out-of-range entries throw
            /// BoundsError.
            SparseMatrix(std::uint32_t n, std::vector<Cell> entries);

            auto n() const -> std::uint32_t { return _n; }
            auto entries() const -> std::span<const Cell> { return _entries; }
            auto weight() const -> std::size_t { return _entries.size(); }

            auto operator== (const SparseMatrix &) const -> bool = default;

        private:
            std::uint32_t _n;
            std::vector<Cell> _entries;
    };

    auto to_sparse(const BitMatrix & matrix) -> SparseMatrix;
    auto to_bit_matrix(const SparseMatrix & matrix) -> BitMatrix;

    /// The pattern embedded in the top-left corner of an otherwise empty
    /// square matrix of side max(rows, cols), or `side` when larger.
    auto pattern_as_matrix(const Pattern & pattern, std::uint32_t side = 0) -> BitMatrix;

    auto transform(const BitMatrix & matrix, Transform op) -> BitMatrix;

    inline auto weight(const Pattern & p) -> std::size_t { return p.weight(); }
    inline auto weight(const BitMatrix & m) -> std::size_t { return m.weight(); }
    inline auto weight(const SparseMatrix & m) -> std::size_t { return m.weight(); }
}
