#pragma once

#include <zom/core.hh>

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace zom
{
    auto is_light(const Pattern & pattern) -> bool;
    auto is_permutation(const Pattern & pattern) -> bool;

    /// The bipartite graph of rows and columns, one edge per 1, is a forest.
    auto is_acyclic(const Pattern & pattern) -> bool;

    /// Least s for which the pattern is class-s degenerate, or nothing when
    /// it is not degenerate at all. Cuts are contiguous horizontal splits.
    auto degeneracy_class(const Pattern & pattern) -> std::optional<int>;

    enum class Removal
    {
        column,
        row
    };

    struct Orientation
    {
        Removal removal = Removal::column;

        /// Neighbouring lines j-1 and j+1 swap roles.
        bool mirrored = false;

        auto operator== (const Orientation &) const -> bool = default;
    };

    auto orientation_name(Orientation o) -> std::string_view;

    /**
     * Deleting a line holding a single 1. For a column j with its 1 in row
     * i0, the witness needs a second row i1 with 1s at (i0, j+1), (i1, j-1)
     * and (i1, j+1); mirrored swaps j-1 and j+1, and row removal is the
     * same with rows and columns exchanged.
     */
    struct ReductionStep
    {
        Orientation orientation;

        /// The deleted line, 1-based.
        std::uint32_t removed = 0;

        /// The perpendicular line through the lone 1 (i0), and its partner (i1).
        std::uint32_t single = 0;
        std::uint32_t partner = 0;

        /// The three 1s the step relies on, in original coordinates.
        auto witness() const -> std::vector<Cell>;

        auto operator== (const ReductionStep &) const -> bool = default;
    };

    /// Checks a step directly on the pattern, without going through transforms.
    auto is_valid_step(const Pattern & pattern, const ReductionStep & step) -> bool;

    /// Every valid step, ordered by orientation, then removed line, then
    /// partner.
    auto find_reductions(const Pattern & pattern) -> std::vector<ReductionStep>;

    auto apply_reduction(const Pattern & pattern, const ReductionStep & step) -> Pattern;

    struct ReductionChain
    {
        Pattern start;
        std::vector<ReductionStep> steps;
        Pattern final_pattern;

        /// One logarithmic factor per step.
        auto implied_exponent() const -> std::size_t { return steps.size(); }
    };

    inline constexpr std::size_t reduce_chain_max_patterns = 1'000'000;

    /// A shortest chain down to weight at most `target_weight`, found
    /// breadth first, or nothing if no chain gets there.
    auto reduce_chain(const Pattern & pattern, std::size_t target_weight) -> std::optional<ReductionChain>;

    /// Replays the steps from the start and checks every one of them.
    auto replays(const ReductionChain & chain) -> bool;
}
