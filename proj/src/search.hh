#pragma once

// Ordered-embedding backtracking shared by the containment, extremal and
// verification code. Not installed; include only from src/.

#include <zom/containment.hh>

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace zom::innards
{
    enum class Side : std::uint8_t
    {
        row = 0,
        col = 1
    };

    inline auto other(Side s) -> Side
    {
        return s == Side::row ? Side::col : Side::row;
    }

    /// A pattern line, 0-based.
    struct Line
    {
        Side side;
        std::uint32_t index;
    };

    struct PatternGraph
    {
        explicit PatternGraph(const Pattern & pattern) :
            dims{pattern.rows(), pattern.cols()}
        {
            adj[0].resize(pattern.rows());
            adj[1].resize(pattern.cols());
            for (auto & c : pattern.ones()) {
                adj[0][c.row - 1].push_back(c.col - 1);
                adj[1][c.col - 1].push_back(c.row - 1);
            }
        }

        auto degree(Line l) const -> std::size_t
        {
            return adj[static_cast<int>(l.side)][l.index].size();
        }

        std::array<std::uint32_t, 2> dims;
        std::array<std::vector<std::vector<std::uint32_t>>, 2> adj;
    };

    /**
     * Variable order: the given leading lines first, then repeatedly the
     * non-empty line with the most already-placed neighbours (ties: higher
     * degree, rows before columns, lower index), then the empty lines.
     */
    inline auto search_order(const PatternGraph & graph, std::span<const Line> leading) -> std::vector<Line>
    {
        std::array<std::vector<char>, 2> placed{
            std::vector<char>(graph.dims[0], 0), std::vector<char>(graph.dims[1], 0)};
        std::array<std::vector<std::uint32_t>, 2> placed_neighbours{
            std::vector<std::uint32_t>(graph.dims[0], 0), std::vector<std::uint32_t>(graph.dims[1], 0)};

        std::vector<Line> order;
        auto place = [&] (Line l) {
            auto s = static_cast<int>(l.side);
            placed[s][l.index] = 1;
            order.push_back(l);
            for (auto q : graph.adj[s][l.index])
                ++placed_neighbours[1 - s][q];
        };

        for (auto & l : leading)
            if (! placed[static_cast<int>(l.side)][l.index])
                place(l);

        while (true) {
            bool found = false;
            Line best{Side::row, 0};
            std::uint32_t best_placed = 0;
            std::size_t best_degree = 0;
            for (int s = 0 ; s < 2 ; ++s)
                for (std::uint32_t i = 0 ; i < graph.dims[s] ; ++i) {
                    if (placed[s][i] || graph.adj[s][i].empty())
                        continue;
                    auto p = placed_neighbours[s][i];
                    auto d = graph.adj[s][i].size();
                    if (! found || p > best_placed || (p == best_placed && d > best_degree)) {
                        found = true;
                        best = Line{static_cast<Side>(s), i};
                        best_placed = p;
                        best_degree = d;
                    }
                }
            if (! found)
                break;
            place(best);
        }

        for (int s = 0 ; s < 2 ; ++s)
            for (std::uint32_t i = 0 ; i < graph.dims[s] ; ++i)
                if (! placed[s][i])
                    place(Line{static_cast<Side>(s), i});

        return order;
    }

    /// Sparse host view over a HostIndex.
    class CsrHost
    {
        public:
            explicit CsrHost(const HostIndex & index) : _index(index) { }

            auto n() const -> std::uint32_t { return _index.n(); }

            auto degree(Side s, std::uint32_t x) const -> std::size_t
            {
                return s == Side::row ? _index.row(x).size() : _index.col(x).size();
            }

            auto has(std::uint32_t r, std::uint32_t c) const -> bool { return _index.has(r, c); }

            /// Calls f(y) for neighbours lo <= y <= hi of line x, ascending,
            /// until f returns true.
            template <typename F>
            auto scan(Side s, std::uint32_t x, std::uint32_t lo, std::uint32_t hi, F && f) const -> bool
            {
                auto items = s == Side::row ? _index.row(x) : _index.col(x);
                for (auto it = std::lower_bound(items.begin(), items.end(), lo) ; it != items.end() && *it <= hi ; ++it)
                    if (f(*it))
                        return true;
                return false;
            }

        private:
            const HostIndex & _index;
    };

    inline constexpr std::uint32_t dense_host_max_side = 64;

    /// Mutable bitmask host for sides up to 64, used by the extremal solvers.
    class DenseHost
    {
        public:
            explicit DenseHost(std::uint32_t n) : _n(n) { }

            auto n() const -> std::uint32_t { return _n; }

            auto set(std::uint32_t r, std::uint32_t c, bool value) -> void
            {
                auto rb = std::uint64_t{1} << (c - 1), cb = std::uint64_t{1} << (r - 1);
                if (value) {
                    _rows[r - 1] |= rb;
                    _cols[c - 1] |= cb;
                }
                else {
                    _rows[r - 1] &= ~rb;
                    _cols[c - 1] &= ~cb;
                }
            }

            auto degree(Side s, std::uint32_t x) const -> std::size_t
            {
                return std::popcount(s == Side::row ? _rows[x - 1] : _cols[x - 1]);
            }

            auto has(std::uint32_t r, std::uint32_t c) const -> bool
            {
                return (_rows[r - 1] >> (c - 1)) & 1;
            }

            template <typename F>
            auto scan(Side s, std::uint32_t x, std::uint32_t lo, std::uint32_t hi, F && f) const -> bool
            {
                auto bits = s == Side::row ? _rows[x - 1] : _cols[x - 1];
                bits &= ~std::uint64_t{0} << (lo - 1);
                if (hi < 64)
                    bits &= (std::uint64_t{1} << hi) - 1;
                for ( ; bits != 0 ; bits &= bits - 1)
                    if (f(static_cast<std::uint32_t>(std::countr_zero(bits) + 1)))
                        return true;
                return false;
            }

            auto row_mask(std::uint32_t r) const -> std::uint64_t { return _rows[r - 1]; }

        private:
            std::uint32_t _n;
            std::array<std::uint64_t, dense_host_max_side> _rows{}, _cols{};
    };

    /**
     * Backtracking over pattern lines. The first `pins.size()` lines of the
     * order are fixed to the values passed to run(); every other line is
     * chosen from the host neighbours of an already-placed adjacent line,
     * or from its whole feasible interval when it has none.
     *
     * Same-side lines p < q always satisfy value(q) - value(p) >= q - p, so
     * lines with no 1s can always be slotted in afterwards.
     */
    template <typename Host>
    class Searcher
    {
        public:
            Searcher(const PatternGraph & graph, const Host & host, std::span<const Line> pins,
                    bool all_completions, std::atomic<std::uint64_t> * shared = nullptr, std::uint64_t budget = 0) :
                _graph(graph),
                _host(host),
                _order(search_order(graph, pins)),
                _pin_count(pins.size()),
                _all(all_completions),
                _shared(shared),
                _budget(budget)
            {
                _value[0].assign(graph.dims[0], 0);
                _value[1].assign(graph.dims[1], 0);
            }

            /// Visit(rows, cols) returns true to stop. Returns true if stopped.
            template <typename Visit>
            auto run(std::span<const std::uint32_t> pin_values, Visit && visit) -> bool
            {
                _pin_values = pin_values;
                return descend(0, visit);
            }

            /// Nodes tried so far, including those already flushed.
            auto nodes() const -> std::uint64_t { return _nodes; }

            /// Publishes the local node count to the shared counter and
            /// enforces the budget.
            auto flush() -> void
            {
                if (! _shared)
                    return;
                auto total = _shared->fetch_add(_nodes - _flushed) + (_nodes - _flushed);
                _flushed = _nodes;
                if (_budget != 0 && total > _budget)
                    throw ScaleError("containment search exceeded its budget of " + std::to_string(_budget) + " nodes");
            }

            auto order() const -> const std::vector<Line> & { return _order; }

        private:
            auto value(Side s, std::uint32_t i) -> std::uint32_t &
            {
                return _value[static_cast<int>(s)][i];
            }

            template <typename Visit>
            auto descend(std::size_t depth, Visit & visit) -> bool
            {
                if (depth == _order.size())
                    return visit(std::span<const std::uint32_t>(_value[0]), std::span<const std::uint32_t>(_value[1]));

                auto line = _order[depth];
                auto s = static_cast<int>(line.side);
                auto p = line.index;
                auto count = _graph.dims[s];
                auto n = _host.n();
                if (count > n)
                    return false;

                std::uint32_t lo = p + 1, hi = n - (count - 1 - p);
                for (std::uint32_t q = 0 ; q < count ; ++q) {
                    auto v = _value[s][q];
                    if (v == 0 || q == p)
                        continue;
                    if (q < p)
                        lo = std::max(lo, v + (p - q));
                    else if (v < (q - p))
                        return false;
                    else
                        hi = std::min(hi, v - (q - p));
                }
                if (lo > hi)
                    return false;

                const auto & neighbours = _graph.adj[s][p];
                auto needed = neighbours.size();
                auto other_side = other(line.side);
                int via = -1;
                std::size_t via_degree = 0;
                for (auto q : neighbours) {
                    auto v = _value[1 - s][q];
                    if (v == 0)
                        continue;
                    auto d = _host.degree(other_side, v);
                    if (via == -1 || d < via_degree) {
                        via = static_cast<int>(q);
                        via_degree = d;
                    }
                }

                auto attempt = [&] (std::uint32_t x) -> bool {
                    if ((++_nodes & 4095) == 0)
                        flush();
                    if (_host.degree(line.side, x) < needed)
                        return false;
                    for (auto q : neighbours) {
                        auto v = _value[1 - s][q];
                        if (v == 0 || static_cast<int>(q) == via)
                            continue;
                        if (line.side == Side::row ? ! _host.has(x, v) : ! _host.has(v, x))
                            return false;
                    }
                    _value[s][p] = x;
                    bool stop = descend(depth + 1, visit);
                    _value[s][p] = 0;
                    return stop;
                };

                if (depth < _pin_count) {
                    auto x = _pin_values[depth];
                    if (x < lo || x > hi)
                        return false;
                    if (via != -1 && ! (line.side == Side::row ? _host.has(x, _value[1 - s][via]) : _host.has(_value[1 - s][via], x)))
                        return false;
                    return attempt(x);
                }

                if (via != -1)
                    return _host.scan(other_side, _value[1 - s][via], lo, hi, attempt);

                if (needed == 0 && ! _all)
                    return attempt(lo);

                for (auto x = lo ; x <= hi ; ++x)
                    if (attempt(x))
                        return true;
                return false;
            }

            const PatternGraph & _graph;
            const Host & _host;
            std::vector<Line> _order;
            std::size_t _pin_count;
            bool _all;
            std::atomic<std::uint64_t> * _shared;
            std::uint64_t _budget;
            std::uint64_t _nodes = 0, _flushed = 0;
            std::span<const std::uint32_t> _pin_values;
            std::array<std::vector<std::uint32_t>, 2> _value;
    };

    /**
     * Answers "does some embedding send a pattern 1 onto this host cell?"
     * against a host that may change between calls. One pinned searcher
     * per pattern 1 is kept so repeated checks allocate nothing.
     */
    template <typename Host>
    class ThroughCheck
    {
        public:
            ThroughCheck(const Pattern & pattern, const Host & host) :
                _graph(pattern)
            {
                for (auto & one : pattern.ones()) {
                    _pins.push_back({Line{Side::row, one.row - 1}, Line{Side::col, one.col - 1}});
                }
                _searchers.reserve(_pins.size());
                for (auto & p : _pins)
                    _searchers.emplace_back(_graph, host, std::span<const Line>(p), false);
            }

            ThroughCheck(const ThroughCheck &) = delete;

            auto operator() (Cell cell) -> bool
            {
                std::array<std::uint32_t, 2> values{cell.row, cell.col};
                for (auto & s : _searchers)
                    if (s.run(values, [] (auto, auto) { return true; }))
                        return true;
                return false;
            }

            auto nodes() const -> std::uint64_t
            {
                std::uint64_t total = 0;
                for (auto & s : _searchers)
                    total += s.nodes();
                return total;
            }

        private:
            PatternGraph _graph;
            std::vector<std::array<Line, 2>> _pins;
            std::vector<Searcher<Host>> _searchers;
    };

    /// Growable sparse host for sides beyond the dense limit.
    class GrowingHost
    {
        public:
            explicit GrowingHost(std::uint32_t n) : _n(n), _rows(n), _cols(n) { }

            auto n() const -> std::uint32_t { return _n; }

            auto set(std::uint32_t r, std::uint32_t c, bool value) -> void
            {
                update(_rows[r - 1], c, value);
                update(_cols[c - 1], r, value);
            }

            auto degree(Side s, std::uint32_t x) const -> std::size_t
            {
                return (s == Side::row ? _rows : _cols)[x - 1].size();
            }

            auto has(std::uint32_t r, std::uint32_t c) const -> bool
            {
                auto & items = _rows[r - 1];
                return std::binary_search(items.begin(), items.end(), c);
            }

            template <typename F>
            auto scan(Side s, std::uint32_t x, std::uint32_t lo, std::uint32_t hi, F && f) const -> bool
            {
                auto & items = (s == Side::row ? _rows : _cols)[x - 1];
                for (auto it = std::lower_bound(items.begin(), items.end(), lo) ; it != items.end() && *it <= hi ; ++it)
                    if (f(*it))
                        return true;
                return false;
            }

        private:
            static auto update(std::vector<std::uint32_t> & items, std::uint32_t x, bool value) -> void
            {
                auto it = std::lower_bound(items.begin(), items.end(), x);
                bool present = it != items.end() && *it == x;
                if (value && ! present)
                    items.insert(it, x);
                else if (! value && present)
                    items.erase(it);
            }

            std::uint32_t _n;
            std::vector<std::vector<std::uint32_t>> _rows, _cols;
    };
}
