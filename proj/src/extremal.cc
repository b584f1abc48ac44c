#include <zom/extremal.hh>
#include <zom/containment.hh>

#include "search.hh"

#include <algorithm>
#include <bit>
#include <random>

using std::string;
using std::uint32_t;
using std::uint64_t;
using std::vector;

using zom::innards::DenseHost;
using zom::innards::GrowingHost;
using zom::innards::ThroughCheck;

namespace zom
{
    auto method_name(ExtremalMethod method) -> std::string_view
    {
        switch (method) {
            case ExtremalMethod::bnb: return "bnb";
            case ExtremalMethod::exhaustive: return "exhaustive";
            case ExtremalMethod::greedy: return "greedy";
        }
        return "?";
    }

    auto parse_method(std::string_view name) -> ExtremalMethod
    {
        for (auto m : {ExtremalMethod::bnb, ExtremalMethod::exhaustive, ExtremalMethod::greedy})
            if (method_name(m) == name)
                return m;
        throw BoundsError("unknown extremal method '" + string(name) + "'");
    }

    namespace
    {
        auto require_usable(const Pattern & pattern, uint32_t n) -> void
        {
            if (pattern.weight() == 0)
                throw DegeneratePatternError("every matrix contains the weight-0 pattern, so Ex is undefined");
            if (n == 0)
                throw BoundsError("extremal side must be at least 1");
        }

        class BranchAndBound
        {
            public:
                BranchAndBound(const Pattern & pattern, uint32_t n) :
                    _n(n),
                    _cells(n * n),
                    _host(n),
                    _check(pattern, _host)
                {
                }

                auto solve() -> ExtremalResult
                {
                    maximize(0, 0);
                    _target = _best;
                    least(0, 0);

                    ExtremalResult result;
                    result.value = _best;
                    result.maximizer = BitMatrix(_n);
                    for (uint32_t r = 1 ; r <= _n ; ++r)
                        for (uint32_t c = 1 ; c <= _n ; ++c)
                            if (_host.has(r, c))
                                result.maximizer.set(r, c);
                    result.nodes_explored = _nodes;
                    result.method = ExtremalMethod::bnb;
                    return result;
                }

            private:
                auto cell(uint32_t i) const -> Cell
                {
                    return Cell{i / _n + 1, i % _n + 1};
                }

                /// Tries to add the 1 at cell i; leaves it set only if the
                /// host stays P-free.
                auto try_set(uint32_t i) -> bool
                {
                    _host.set(cell(i).row, cell(i).col, true);
                    if (! _check(cell(i)))
                        return true;
                    _host.set(cell(i).row, cell(i).col, false);
                    return false;
                }

                auto maximize(uint32_t i, uint64_t weight) -> void
                {
                    ++_nodes;
                    if (weight + (_cells - i) <= _best)
                        return;
                    if (i == _cells) {
                        _best = weight;
                        return;
                    }
                    if (try_set(i)) {
                        maximize(i + 1, weight + 1);
                        _host.set(cell(i).row, cell(i).col, false);
                    }
                    maximize(i + 1, weight);
                }

                /// Zero-first search for a matrix of the optimal weight: the
                /// first one reached is the lexicographically least. The
                /// host keeps it on success.
                auto least(uint32_t i, uint64_t weight) -> bool
                {
                    ++_nodes;
                    if (weight + (_cells - i) < _target)
                        return false;
                    if (i == _cells)
                        return true;
                    if (least(i + 1, weight))
                        return true;
                    if (try_set(i)) {
                        if (least(i + 1, weight + 1))
                            return true;
                        _host.set(cell(i).row, cell(i).col, false);
                    }
                    return false;
                }

                uint32_t _n, _cells;
                DenseHost _host;
                ThroughCheck<DenseHost> _check;
                uint64_t _best = 0, _target = 0, _nodes = 0;
        };

        /// Exhaustive search, independent of the backtracking engine: every
        /// candidate is tested with the naive subset oracle.
        class Exhaustive
        {
            public:
                Exhaustive(const Pattern & pattern, uint32_t n) :
                    _pattern(pattern),
                    _n(n),
                    _best(n)
                {
                }

                auto solve() -> ExtremalResult
                {
                    if (_n <= 3)
                        all_matrices();
                    else {
                        BitMatrix current(_n);
                        rows(current, 1, 0);
                    }
                    ExtremalResult result;
                    result.value = _best_weight;
                    result.maximizer = _best;
                    result.nodes_explored = _nodes;
                    result.method = ExtremalMethod::exhaustive;
                    return result;
                }

            private:
                // Cell (1,1) is the most significant bit, so increasing
                // integers visit bit strings in lexicographic order. The
                // all-zero start is P-free, so only heavier matrices matter.
                auto all_matrices() -> void
                {
                    auto cells = _n * _n;
                    for (uint64_t x = 0 ; x < (uint64_t{1} << cells) ; ++x) {
                        ++_nodes;
                        if (static_cast<uint64_t>(std::popcount(x)) <= _best_weight)
                            continue;
                        BitMatrix m(_n);
                        for (uint32_t i = 0 ; i < cells ; ++i)
                            if ((x >> (cells - 1 - i)) & 1)
                                m.set(i / _n + 1, i % _n + 1);
                        if (! contains_naive(_pattern, m)) {
                            _best_weight = m.weight();
                            _best = m;
                        }
                    }
                }

                // Row by row; a prefix that already contains P is dropped
                // along with every completion of it.
                auto rows(BitMatrix & current, uint32_t r, uint64_t weight) -> void
                {
                    ++_nodes;
                    if (r > _n) {
                        if (weight > _best_weight) {
                            _best_weight = weight;
                            _best = current;
                        }
                        return;
                    }
                    if (weight + uint64_t{_n} * (_n - r + 1) <= _best_weight)
                        return;
                    for (uint32_t bits = 0 ; bits < (1u << _n) ; ++bits) {
                        for (uint32_t c = 1 ; c <= _n ; ++c)
                            current.set(r, c, (bits >> (_n - c)) & 1);
                        if (! contains_naive(_pattern, current))
                            rows(current, r + 1, weight + std::popcount(bits));
                    }
                    for (uint32_t c = 1 ; c <= _n ; ++c)
                        current.set(r, c, false);
                }

                const Pattern & _pattern;
                uint32_t _n;
                BitMatrix _best;
                uint64_t _best_weight = 0, _nodes = 0;
        };
    }

    auto extremal_exact(const Pattern & pattern, uint32_t n, ExtremalMethod method) -> ExtremalResult
    {
        require_usable(pattern, n);
        switch (method) {
            case ExtremalMethod::bnb:
                if (n > bnb_max_side)
                    throw ScaleError("branch and bound is capped at n = " + std::to_string(bnb_max_side));
                return BranchAndBound(pattern, n).solve();

            case ExtremalMethod::exhaustive:
                if (n > exhaustive_max_side)
                    throw ScaleError("exhaustive search is capped at n = " + std::to_string(exhaustive_max_side));
                return Exhaustive(pattern, n).solve();

            case ExtremalMethod::greedy:
                break;
        }
        throw BoundsError("greedy is a lower bound, not an exact method");
    }

    auto extremal_greedy_lb(const Pattern & pattern, uint32_t n, uint64_t seed) -> ExtremalResult
    {
        require_usable(pattern, n);
        if (n > greedy_max_side)
            throw ScaleError("greedy lower bound is capped at n = " + std::to_string(greedy_max_side));

        vector<Cell> cells;
        cells.reserve(std::size_t{n} * n);
        for (uint32_t r = 1 ; r <= n ; ++r)
            for (uint32_t c = 1 ; c <= n ; ++c)
                cells.push_back({r, c});
        std::mt19937_64 rng(seed);
        std::shuffle(cells.begin(), cells.end(), rng);

        GrowingHost host(n);
        ThroughCheck<GrowingHost> check(pattern, host);
        ExtremalResult result;
        result.maximizer = BitMatrix(n);
        result.method = ExtremalMethod::greedy;
        for (auto & c : cells) {
            host.set(c.row, c.col, true);
            if (check(c))
                host.set(c.row, c.col, false);
            else {
                result.maximizer.set(c.row, c.col);
                ++result.value;
            }
        }
        result.nodes_explored = check.nodes();
        return result;
    }

    auto join(const Pattern & a, const Pattern & b) -> Pattern
    {
        if (! a.at(a.rows(), a.cols()))
            throw JoinPreconditionError("left pattern needs a 1 in its southeast corner");
        if (! b.at(1, 1))
            throw JoinPreconditionError("right pattern needs a 1 in its northwest corner");

        vector<Cell> ones(a.ones().begin(), a.ones().end());
        for (auto & c : b.ones())
            if (! (c.row == 1 && c.col == 1))
                ones.push_back({c.row + a.rows() - 1, c.col + a.cols() - 1});
        return Pattern(a.rows() + b.rows() - 1, a.cols() + b.cols() - 1, std::move(ones));
    }
}
