#include <zom/core.hh>

#include <algorithm>
#include <bit>
#include <charconv>
#include <optional>

using std::string;
using std::string_view;
using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace zom
{
    namespace
    {
        auto describe(Cell c) -> string
        {
            return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
        }

        auto parse_parameter(string_view name, string_view prefix) -> std::optional<uint32_t>
        {
            if (! name.starts_with(prefix) || ! name.ends_with(")"))
                return std::nullopt;
            auto digits = name.substr(prefix.size(), name.size() - prefix.size() - 1);
            uint32_t value = 0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (ec != std::errc{} || ptr != digits.data() + digits.size())
                throw CatalogError("bad catalog parameter in '" + string(name) + "'");
            return value;
        }
    }

    Pattern::Pattern(uint32_t rows, uint32_t cols, vector<Cell> ones) :
        _rows(rows),
        _cols(cols),
        _ones(std::move(ones))
    {
        if (rows == 0 || cols == 0)
            throw BoundsError("pattern dimensions must be positive");
        for (auto & c : _ones)
            if (c.row < 1 || c.row > rows || c.col < 1 || c.col > cols)
                throw BoundsError("point " + describe(c) + " outside " + std::to_string(rows) + "x" + std::to_string(cols));
        std::sort(_ones.begin(), _ones.end());
        _ones.erase(std::unique(_ones.begin(), _ones.end()), _ones.end());
    }

    auto Pattern::at(uint32_t row, uint32_t col) const -> bool
    {
        return std::binary_search(_ones.begin(), _ones.end(), Cell{row, col});
    }

    auto Pattern::row_weight(uint32_t row) const -> std::size_t
    {
        return std::count_if(_ones.begin(), _ones.end(), [&] (const Cell & c) { return c.row == row; });
    }

    auto Pattern::col_weight(uint32_t col) const -> std::size_t
    {
        return std::count_if(_ones.begin(), _ones.end(), [&] (const Cell & c) { return c.col == col; });
    }

    auto pattern_from_points(uint32_t rows, uint32_t cols, std::span<const Cell> points) -> Pattern
    {
        return Pattern(rows, cols, vector<Cell>(points.begin(), points.end()));
    }

    auto transform_cell(Cell c, uint32_t rows, uint32_t cols, Transform op) -> Cell
    {
        switch (op) {
            case Transform::transpose:      return {c.col, c.row};
            case Transform::rot180:         return {rows + 1 - c.row, cols + 1 - c.col};
            case Transform::flip_rows:      return {rows + 1 - c.row, c.col};
            case Transform::flip_cols:      return {c.row, cols + 1 - c.col};
            case Transform::anti_transpose: return {cols + 1 - c.col, rows + 1 - c.row};
        }
        return c;
    }

    namespace
    {
        auto swaps_dimensions(Transform op) -> bool
        {
            return op == Transform::transpose || op == Transform::anti_transpose;
        }
    }

    auto transform(const Pattern & pattern, Transform op) -> Pattern
    {
        vector<Cell> ones;
        ones.reserve(pattern.weight());
        for (auto & c : pattern.ones())
            ones.push_back(transform_cell(c, pattern.rows(), pattern.cols(), op));
        if (swaps_dimensions(op))
            return Pattern(pattern.cols(), pattern.rows(), std::move(ones));
        return Pattern(pattern.rows(), pattern.cols(), std::move(ones));
    }

    auto transform_name(Transform op) -> string_view
    {
        switch (op) {
            case Transform::transpose:      return "transpose";
            case Transform::rot180:         return "rot180";
            case Transform::flip_rows:      return "flip_rows";
            case Transform::flip_cols:      return "flip_cols";
            case Transform::anti_transpose: return "anti_transpose";
        }
        return "?";
    }

    auto identity_pattern(uint32_t k) -> Pattern
    {
        if (k == 0)
            throw CatalogError("identity(k) needs k >= 1");
        vector<Cell> ones;
        for (uint32_t i = 1 ; i <= k ; ++i)
            ones.push_back({i, i});
        return Pattern(k, k, std::move(ones));
    }

    auto one_row_pattern(uint32_t l) -> Pattern
    {
        if (l == 0)
            throw CatalogError("one_row(l) needs l >= 1");
        vector<Cell> ones;
        for (uint32_t j = 1 ; j <= l ; ++j)
            ones.push_back({1, j});
        return Pattern(1, l, std::move(ones));
    }

    auto catalog(string_view name) -> Pattern
    {
        if (name == "R1")
            return Pattern(3, 3, {{1, 1}, {1, 2}, {2, 3}, {3, 1}, {3, 3}});
        if (name == "R2")
            return Pattern(2, 4, {{1, 1}, {1, 2}, {1, 4}, {2, 1}, {2, 3}});
        if (name == "S1")
            return Pattern(3, 4, {{1, 1}, {1, 3}, {2, 1}, {2, 4}, {3, 2}, {3, 4}});
        if (name == "S2")
            return Pattern(3, 4, {{1, 2}, {1, 4}, {2, 1}, {2, 3}, {3, 1}, {3, 4}});
        if (name == "T")
            return Pattern(4, 4, {{1, 1}, {1, 4}, {2, 2}, {3, 1}, {3, 3}, {4, 2}, {4, 4}});
        if (auto k = parse_parameter(name, "identity("))
            return identity_pattern(*k);
        if (auto l = parse_parameter(name, "one_row("))
            return one_row_pattern(*l);
        throw CatalogError("unknown catalog pattern '" + string(name) + "'");
    }

    BitMatrix::BitMatrix(uint32_t n) :
        _n(n),
        _words_per_row((n + 63) / 64),
        _bits()
    {
        if (n > bit_matrix_max_side)
            throw ResourceCapError("dense matrices are capped at side " + std::to_string(bit_matrix_max_side));
        _bits.assign(_words_per_row * n, 0);
    }

    auto BitMatrix::get(uint32_t row, uint32_t col) const -> bool
    {
        if (row < 1 || row > _n || col < 1 || col > _n)
            throw BoundsError("cell " + describe({row, col}) + " outside matrix");
        auto bit = col - 1;
        return (_bits[(row - 1) * _words_per_row + bit / 64] >> (bit % 64)) & 1;
    }

    auto BitMatrix::set(uint32_t row, uint32_t col, bool value) -> void
    {
        if (row < 1 || row > _n || col < 1 || col > _n)
            throw BoundsError("cell " + describe({row, col}) + " outside matrix");
        auto bit = col - 1;
        auto & word = _bits[(row - 1) * _words_per_row + bit / 64];
        if (value)
            word |= uint64_t{1} << (bit % 64);
        else
            word &= ~(uint64_t{1} << (bit % 64));
    }

    auto BitMatrix::weight() const -> std::size_t
    {
        std::size_t result = 0;
        for (auto w : _bits)
            result += std::popcount(w);
        return result;
    }

    auto BitMatrix::row_weight(uint32_t row) const -> std::size_t
    {
        std::size_t result = 0;
        for (auto w : row_words(row))
            result += std::popcount(w);
        return result;
    }

    auto BitMatrix::row_words(uint32_t row) const -> std::span<const uint64_t>
    {
        return std::span<const uint64_t>(_bits).subspan((row - 1) * _words_per_row, _words_per_row);
    }

    auto BitMatrix::bit_string() const -> string
    {
        string result;
        result.reserve(std::size_t{_n} * _n);
        for (uint32_t r = 1 ; r <= _n ; ++r)
            for (uint32_t c = 1 ; c <= _n ; ++c)
                result.push_back(get(r, c) ? '1' : '0');
        return result;
    }

    SparseMatrix::SparseMatrix(uint32_t n, vector<Cell> entries) :
        _n(n),
        _entries(std::move(entries))
    {
        for (auto & c : _entries)
            if (c.row < 1 || c.row > n || c.col < 1 || c.col > n)
                throw BoundsError("entry " + describe(c) + " outside " + std::to_string(n) + "x" + std::to_string(n));
        if (! std::is_sorted(_entries.begin(), _entries.end()))
            std::sort(_entries.begin(), _entries.end());
        if (std::adjacent_find(_entries.begin(), _entries.end()) != _entries.end())
            throw BoundsError("duplicate sparse entry");
    }

    auto to_sparse(const BitMatrix & matrix) -> SparseMatrix
    {
        vector<Cell> entries;
        for (uint32_t r = 1 ; r <= matrix.n() ; ++r) {
            auto words = matrix.row_words(r);
            for (std::size_t w = 0 ; w < words.size() ; ++w)
                for (auto bits = words[w] ; bits != 0 ; bits &= bits - 1)
                    entries.push_back({r, static_cast<uint32_t>(w * 64 + std::countr_zero(bits) + 1)});
        }
        return SparseMatrix(matrix.n(), std::move(entries));
    }

    auto to_bit_matrix(const SparseMatrix & matrix) -> BitMatrix
    {
        BitMatrix result(matrix.n());
        for (auto & c : matrix.entries())
            result.set(c.row, c.col);
        return result;
    }

    auto pattern_as_matrix(const Pattern & pattern, uint32_t side) -> BitMatrix
    {
        BitMatrix result(std::max({side, pattern.rows(), pattern.cols()}));
        for (auto & c : pattern.ones())
            result.set(c.row, c.col);
        return result;
    }

    auto transform(const BitMatrix & matrix, Transform op) -> BitMatrix
    {
        BitMatrix result(matrix.n());
        auto sparse = to_sparse(matrix);
        for (auto & c : sparse.entries()) {
            auto image = transform_cell(c, matrix.n(), matrix.n(), op);
            result.set(image.row, image.col);
        }
        return result;
    }
}
