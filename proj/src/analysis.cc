#include <zom/analysis.hh>

#include <algorithm>
#include <array>
#include <tuple>
#include <numeric>
#include <string>
#include <unordered_map>

using std::optional;
using std::string;
using std::uint32_t;
using std::vector;

namespace zom
{
    auto is_light(const Pattern & pattern) -> bool
    {
        for (uint32_t c = 1 ; c <= pattern.cols() ; ++c)
            if (pattern.col_weight(c) != 1)
                return false;
        return true;
    }

    auto is_permutation(const Pattern & pattern) -> bool
    {
        if (pattern.rows() != pattern.cols() || ! is_light(pattern))
            return false;
        for (uint32_t r = 1 ; r <= pattern.rows() ; ++r)
            if (pattern.row_weight(r) != 1)
                return false;
        return true;
    }

    auto is_acyclic(const Pattern & pattern) -> bool
    {
        // rows are nodes 0..rows-1, columns follow
        vector<uint32_t> parent(pattern.rows() + pattern.cols());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&] (uint32_t x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        for (auto & c : pattern.ones()) {
            auto a = find(c.row - 1), b = find(pattern.rows() + c.col - 1);
            if (a == b)
                return false;
            parent[a] = b;
        }
        return true;
    }

    auto degeneracy_class(const Pattern & pattern) -> optional<int>
    {
        auto rows = pattern.rows(), cols = pattern.cols();
        // cls[i][j] for the row interval [i, j], 0-based inclusive
        vector<vector<optional<int>>> cls(rows, vector<optional<int>>(rows));

        // columns with a 1 somewhere in rows i..j
        auto column_set = [&] (uint32_t i, uint32_t j) {
            vector<char> used(cols, 0);
            for (auto & c : pattern.ones())
                if (c.row - 1 >= i && c.row - 1 <= j)
                    used[c.col - 1] = 1;
            return used;
        };
        auto occupied_rows = [&] (uint32_t i, uint32_t j) {
            uint32_t count = 0;
            for (auto r = i ; r <= j ; ++r)
                if (pattern.row_weight(r + 1) != 0)
                    ++count;
            return count;
        };

        for (uint32_t len = 1 ; len <= rows ; ++len)
            for (uint32_t i = 0 ; i + len <= rows ; ++i) {
                auto j = i + len - 1;
                if (occupied_rows(i, j) <= 1) {
                    cls[i][j] = 0;
                    continue;
                }
                optional<int> best;
                for (auto h = i ; h < j ; ++h) {
                    auto top = cls[i][h], bottom = cls[h + 1][j];
                    if (! top || ! bottom)
                        continue;
                    auto upper = column_set(i, h), lower = column_set(h + 1, j);
                    uint32_t shared = 0;
                    for (uint32_t c = 0 ; c < cols ; ++c)
                        shared += upper[c] && lower[c];
                    if (shared > 1)
                        continue;
                    auto value = 1 + std::max(*top, *bottom);
                    if (! best || value < *best)
                        best = value;
                }
                cls[i][j] = best;
            }
        return cls[0][rows - 1];
    }

    auto orientation_name(Orientation o) -> std::string_view
    {
        if (o.removal == Removal::column)
            return o.mirrored ? "column-mirrored" : "column-as-stated";
        return o.mirrored ? "row-mirrored" : "row-as-stated";
    }

    auto ReductionStep::witness() const -> vector<Cell>
    {
        auto near = orientation.mirrored ? removed - 1 : removed + 1;
        vector<Cell> cells{{single, near}, {partner, removed - 1}, {partner, removed + 1}};
        if (orientation.removal == Removal::row)
            for (auto & c : cells)
                std::swap(c.row, c.col);
        return cells;
    }

    auto is_valid_step(const Pattern & pattern, const ReductionStep & step) -> bool
    {
        bool by_column = step.orientation.removal == Removal::column;
        auto length = by_column ? pattern.cols() : pattern.rows();
        auto across = by_column ? pattern.rows() : pattern.cols();
        if (step.removed < 2 || step.removed + 1 > length)
            return false;
        if (step.single < 1 || step.single > across || step.partner < 1 || step.partner > across
                || step.single == step.partner)
            return false;

        auto line_weight = by_column ? pattern.col_weight(step.removed) : pattern.row_weight(step.removed);
        auto lone = by_column ? pattern.at(step.single, step.removed) : pattern.at(step.removed, step.single);
        if (line_weight != 1 || ! lone)
            return false;

        for (auto & c : step.witness())
            if (! pattern.at(c.row, c.col))
                return false;
        return true;
    }

    namespace
    {
        /// Column steps exactly as the lemma states them, in frame coordinates.
        auto as_stated_columns(const Pattern & p) -> vector<std::array<uint32_t, 3>>
        {
            vector<std::array<uint32_t, 3>> found;
            for (uint32_t j = 2 ; j + 1 <= p.cols() ; ++j) {
                if (p.col_weight(j) != 1)
                    continue;
                uint32_t i0 = 0;
                for (uint32_t r = 1 ; r <= p.rows() ; ++r)
                    if (p.at(r, j))
                        i0 = r;
                if (! p.at(i0, j + 1))
                    continue;
                for (uint32_t i1 = 1 ; i1 <= p.rows() ; ++i1)
                    if (i1 != i0 && p.at(i1, j - 1) && p.at(i1, j + 1))
                        found.push_back({j, i0, i1});
            }
            return found;
        }
    }

    auto find_reductions(const Pattern & pattern) -> vector<ReductionStep>
    {
        vector<ReductionStep> steps;
        for (auto removal : {Removal::column, Removal::row})
            for (bool mirrored : {false, true}) {
                auto frame = removal == Removal::row ? transform(pattern, Transform::transpose) : pattern;
                if (mirrored)
                    frame = transform(frame, Transform::flip_cols);

                vector<ReductionStep> here;
                for (auto [j, i0, i1] : as_stated_columns(frame)) {
                    ReductionStep s;
                    s.orientation = Orientation{removal, mirrored};
                    s.removed = mirrored ? frame.cols() + 1 - j : j;
                    s.single = i0;
                    s.partner = i1;
                    here.push_back(s);
                }
                std::sort(here.begin(), here.end(), [] (const ReductionStep & a, const ReductionStep & b) {
                    return std::tie(a.removed, a.partner) < std::tie(b.removed, b.partner);
                });
                steps.insert(steps.end(), here.begin(), here.end());
            }
        return steps;
    }

    auto apply_reduction(const Pattern & pattern, const ReductionStep & step) -> Pattern
    {
        if (! is_valid_step(pattern, step))
            throw InvalidStepError("reduction step " + string(orientation_name(step.orientation)) + " on line "
                    + std::to_string(step.removed) + " does not apply");

        vector<Cell> ones;
        bool by_column = step.orientation.removal == Removal::column;
        for (auto c : pattern.ones()) {
            auto & coordinate = by_column ? c.col : c.row;
            if (coordinate == step.removed)
                continue;
            if (coordinate > step.removed)
                --coordinate;
            ones.push_back(c);
        }
        if (by_column)
            return Pattern(pattern.rows(), pattern.cols() - 1, std::move(ones));
        return Pattern(pattern.rows() - 1, pattern.cols(), std::move(ones));
    }

    namespace
    {
        auto key_of(const Pattern & p) -> string
        {
            string key = std::to_string(p.rows()) + "x" + std::to_string(p.cols()) + ":";
            for (auto & c : p.ones())
                key += std::to_string(c.row) + "," + std::to_string(c.col) + ";";
            return key;
        }
    }

    auto reduce_chain(const Pattern & pattern, std::size_t target_weight) -> optional<ReductionChain>
    {
        if (target_weight < 1)
            throw BoundsError("target weight must be at least 1");

        struct Node
        {
            Pattern pattern;
            std::size_t parent;
            ReductionStep step;
        };

        vector<Node> nodes{Node{pattern, 0, {}}};
        std::unordered_map<string, std::size_t> seen{{key_of(pattern), 0}};

        for (std::size_t head = 0 ; head < nodes.size() ; ++head) {
            if (nodes[head].pattern.weight() <= target_weight) {
                ReductionChain chain{pattern, {}, nodes[head].pattern};
                for (auto at = head ; at != 0 ; at = nodes[at].parent)
                    chain.steps.push_back(nodes[at].step);
                std::reverse(chain.steps.begin(), chain.steps.end());
                return chain;
            }
            for (auto & step : find_reductions(nodes[head].pattern)) {
                auto next = apply_reduction(nodes[head].pattern, step);
                auto [it, fresh] = seen.emplace(key_of(next), nodes.size());
                if (! fresh)
                    continue;
                if (nodes.size() == reduce_chain_max_patterns)
                    throw ScaleError("reduction search explored " + std::to_string(reduce_chain_max_patterns) + " patterns");
                nodes.push_back(Node{std::move(next), head, step});
            }
        }
        return std::nullopt;
    }

    auto replays(const ReductionChain & chain) -> bool
    {
        auto current = chain.start;
        for (auto & step : chain.steps) {
            if (! is_valid_step(current, step))
                return false;
            auto next = apply_reduction(current, step);
            if (next.weight() + 1 != current.weight())
                return false;
            current = std::move(next);
        }
        return current == chain.final_pattern;
    }
}
