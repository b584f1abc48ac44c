#pragma once

#include <zom/core.hh>

#include <cstdint>
#include <string>
#include <string_view>

namespace zom
{
    enum class ExtremalMethod
    {
        bnb,
        exhaustive,
        greedy
    };

    auto method_name(ExtremalMethod method) -> std::string_view;
    auto parse_method(std::string_view name) -> ExtremalMethod;

    struct ExtremalResult
    {
        std::uint64_t value = 0;
        BitMatrix maximizer{0};
        std::uint64_t nodes_explored = 0;
        ExtremalMethod method = ExtremalMethod::bnb;
    };

    inline constexpr std::uint32_t bnb_max_side = 8;
    inline constexpr std::uint32_t exhaustive_max_side = 4;
    inline constexpr std::uint32_t greedy_max_side = 512;

    /// Ex(P, n) with a P-free maximizer. Among all maximizers the one with
    /// the lexicographically least row-major bit string is reported.
    auto extremal_exact(const Pattern & pattern, std::uint32_t n, ExtremalMethod method = ExtremalMethod::bnb)
        -> ExtremalResult;

    /// A lower bound from inserting 1s in a seeded random order, keeping
    /// each one that leaves the matrix P-free.
    auto extremal_greedy_lb(const Pattern & pattern, std::uint32_t n, std::uint64_t seed) -> ExtremalResult;

    /// A in the top-left, B in the bottom-right, the southeast corner 1 of A
    /// identified with the northwest corner 1 of B.
    auto join(const Pattern & a, const Pattern & b) -> Pattern;
}
