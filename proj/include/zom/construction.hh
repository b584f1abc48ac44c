#pragma once

#include <zom/containment.hh>
#include <zom/core.hh>

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace zom
{
    using BigInt = boost::multiprecision::cpp_int;
    using BigRational = boost::multiprecision::cpp_rational;

    /**
     * Parameters of the lexicographic block construction. Indices are
     * strings of t blocks, each holding k coordinates over an alphabet of
     * size m = k^t; the matrix side is n = m^(t k) = k^(t^2 k).
     */
    struct ConstructionParams
    {
        std::uint32_t t = 0;
        std::uint32_t k = 0;
        std::uint64_t m = 0;
        std::uint32_t length = 0;
        std::uint64_t n = 0;

        /// Throws BoundsError unless t >= 2 and k >= 2, and ResourceCapError
        /// when n does not fit in 64 bits.
        static auto make(std::uint32_t t, std::uint32_t k) -> ConstructionParams;

        auto operator== (const ConstructionParams &) const -> bool = default;
    };

    /// An element of the index set: t*k coordinates in [0, m-1], first
    /// coordinate most significant in the lexicographic order.
    class IndexVector
    {
        public:
            IndexVector(const ConstructionParams & params, std::vector<std::uint32_t> coords);

            auto coords() const -> std::span<const std::uint32_t> { return _coords; }

            /// Block p (1-based), k coordinates.
            auto block(std::uint32_t p) const -> std::span<const std::uint32_t>;

            /// Coordinate q (1-based) of block p (1-based).
            auto coord(std::uint32_t p, std::uint32_t q) const -> std::uint32_t;

            auto params() const -> const ConstructionParams & { return _params; }

            auto operator<=> (const IndexVector & other) const -> std::strong_ordering
            {
                return _coords <=> other._coords;
            }
            auto operator== (const IndexVector & other) const -> bool { return _coords == other._coords; }

        private:
            ConstructionParams _params;
            std::vector<std::uint32_t> _coords;
    };

    /// One eligible offset v[j_1..j_t]: zero except coordinate (r, j_r),
    /// which holds angle(j_1..j_{r-1}).
    struct OffsetVector
    {
        std::vector<std::uint32_t> j;
        std::vector<std::uint32_t> coords;

        auto operator<=> (const OffsetVector &) const = default;
    };

    /// Injective code of a tuple over [k]: 1 + sum (p_i - 1) k^(len - i).
    auto angle(std::span<const std::uint32_t> prefix, std::uint32_t k) -> std::uint64_t;

    auto make_offset(std::span<const std::uint32_t> j, const ConstructionParams & params) -> OffsetVector;

    /// All k^t offsets, lexicographic by j-tuple.
    auto enumerate_offsets(const ConstructionParams & params) -> std::vector<OffsetVector>;

    /// Mixed-radix rank in [0, n-1], base m.
    auto index_rank(const IndexVector & a) -> std::uint64_t;
    auto index_unrank(std::uint64_t rank, const ConstructionParams & params) -> IndexVector;

    inline constexpr std::uint64_t default_construction_cap = std::uint64_t{1} << 20;

    /// The matrix with a 1 at (rank(a)+1, rank(b)+1) exactly when b - a is
    /// an eligible offset. Refuses n above `cap` with ResourceCapError.
    auto build_construction(const ConstructionParams & params, std::uint64_t cap = default_construction_cap) -> SparseMatrix;

    /// Closed-form weight of the construction: sum over j of
    /// m^(t(k-1)) * prod_r (m - angle(j_1..j_{r-1})).
    auto exact_weight_formula(const ConstructionParams & params) -> BigInt;

    struct DensityCheck
    {
        BigInt weight;
        BigRational bound;
        bool pass = false;
    };

    /// Compares the exact weight against (1 - 1/(k-1)) n k^t.
    auto density_bound_check(const ConstructionParams & params) -> DensityCheck;

    /// First block (1-based) where two distinct index vectors differ;
    /// TypeUndefinedError for equal inputs.
    auto type_of(const IndexVector & a, const IndexVector & b) -> std::uint32_t;

    /**
     * Precomputed helpers for working with host indices of the
     * construction directly (1-based matrix indices, rank + 1).
     */
    class IndexArithmetic
    {
        public:
            explicit IndexArithmetic(const ConstructionParams & params);

            auto params() const -> const ConstructionParams & { return _params; }

            /// type_of for 1-based matrix indices.
            auto type(std::uint64_t a, std::uint64_t b) const -> std::uint32_t;

            /// Coordinates of a 1-based matrix index.
            auto coords(std::uint64_t index) const -> std::vector<std::uint32_t>;

            /// First coordinate where two indices differ, as (block, position),
            /// both 1-based.
            auto first_difference(std::uint64_t a, std::uint64_t b) const -> std::pair<std::uint32_t, std::uint32_t>;

            /// The j-tuple with b - a = v[j], if any.
            auto decode_offset(std::uint64_t a, std::uint64_t b) const -> std::optional<std::vector<std::uint32_t>>;

        private:
            ConstructionParams _params;
            std::vector<std::uint64_t> _block_divisor;
    };

    /// Alternating 2 x 2t pattern: the first and last rows of X_t without
    /// its first column.
    auto gen_Pt(std::uint32_t t) -> Pattern;

    /// anti_transpose(P_t), a 2t x 2 pattern.
    auto gen_Qt(std::uint32_t t) -> Pattern;

    /// The 2t x (2t+1) acyclic pattern with 4t ones avoided by the
    /// construction.
    auto gen_Xt(std::uint32_t t) -> Pattern;
}
