#pragma once

#include <zom/core.hh>

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace zom
{
    /**
     * An occurrence of a pattern: strictly increasing host rows for the
     * pattern rows and strictly increasing host columns for the pattern
     * columns, all 1-based.
     */
    struct Embedding
    {
        std::vector<std::uint32_t> row_map;
        std::vector<std::uint32_t> col_map;

        auto operator<=> (const Embedding &) const = default;
    };

    /**
     * Read-only adjacency index of a square host matrix: sorted neighbour
     * lists for every row and every column. All searches run against this.
     */
    class HostIndex
    {
        public:
            explicit HostIndex(const SparseMatrix & matrix);
            explicit HostIndex(const BitMatrix & matrix);

            auto n() const -> std::uint32_t { return _n; }
            auto weight() const -> std::size_t { return _row_items.size(); }

            /// Columns holding a 1 in the given row, ascending.
            auto row(std::uint32_t r) const -> std::span<const std::uint32_t>;
            /// Rows holding a 1 in the given column, ascending.
            auto col(std::uint32_t c) const -> std::span<const std::uint32_t>;

            auto has(std::uint32_t r, std::uint32_t c) const -> bool;

        private:
            auto build(std::span<const Cell> entries) -> void;

            std::uint32_t _n;
            std::vector<std::size_t> _row_start, _col_start;
            std::vector<std::uint32_t> _row_items, _col_items;
    };

    inline constexpr std::size_t unlimited = std::numeric_limits<std::size_t>::max();

    struct SearchStats
    {
        std::uint64_t nodes = 0;
    };

    struct SearchOptions
    {
        /// Worker threads; results never depend on this.
        unsigned threads = 1;

        /// Maximum number of candidate assignments tried before giving up
        /// with ScaleError; 0 means no limit.
        std::uint64_t node_budget = 0;

        /// When set, receives the number of nodes the search tried.
        SearchStats * stats = nullptr;
    };

    auto contains(const Pattern & pattern, const HostIndex & host, const SearchOptions & options = {}) -> bool;
    auto contains(const Pattern & pattern, const BitMatrix & host, const SearchOptions & options = {}) -> bool;
    auto contains(const Pattern & pattern, const SparseMatrix & host, const SearchOptions & options = {}) -> bool;

    /// A deterministic witness, or nothing when the host avoids the pattern.
    auto find_witness(const Pattern & pattern, const HostIndex & host, const SearchOptions & options = {})
        -> std::optional<Embedding>;
    auto find_witness(const Pattern & pattern, const BitMatrix & host, const SearchOptions & options = {})
        -> std::optional<Embedding>;
    auto find_witness(const Pattern & pattern, const SparseMatrix & host, const SearchOptions & options = {})
        -> std::optional<Embedding>;

    /// Distinct embeddings in lexicographic (row_map, col_map) order, cut
    /// off after `limit`.
    auto enumerate_occurrences(const Pattern & pattern, const HostIndex & host, std::size_t limit = unlimited,
            const SearchOptions & options = {}) -> std::vector<Embedding>;
    auto enumerate_occurrences(const Pattern & pattern, const BitMatrix & host, std::size_t limit = unlimited,
            const SearchOptions & options = {}) -> std::vector<Embedding>;
    auto enumerate_occurrences(const Pattern & pattern, const SparseMatrix & host, std::size_t limit = unlimited,
            const SearchOptions & options = {}) -> std::vector<Embedding>;

    /// Visits every embedding whose first pattern row lands on `host_row`,
    /// in unspecified order. Returns the number of embeddings visited.
    auto for_each_occurrence_at_row(const Pattern & pattern, const HostIndex & host, std::uint32_t host_row,
            const std::function<void (const Embedding &)> & visit, const SearchOptions & options = {}) -> std::uint64_t;

    /// Reference implementation: tries every row subset and column subset.
    /// Refuses hosts larger than 12x12 with OracleScaleError.
    auto contains_naive(const Pattern & pattern, const BitMatrix & host) -> bool;

    inline constexpr std::uint32_t naive_max_side = 12;

    /// Checks an embedding against its definition, independent of the search.
    auto is_valid_embedding(const Pattern & pattern, const HostIndex & host, const Embedding & embedding) -> bool;
    auto is_valid_embedding(const Pattern & pattern, const BitMatrix & host, const Embedding & embedding) -> bool;
}
