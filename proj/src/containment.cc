#include <zom/containment.hh>

#include "parallel.hh"
#include "search.hh"

#include <algorithm>
#include <bit>
#include <mutex>

using std::optional;
using std::size_t;
using std::span;
using std::uint32_t;
using std::uint64_t;
using std::vector;

using zom::innards::CsrHost;
using zom::innards::Line;
using zom::innards::PatternGraph;
using zom::innards::Searcher;
using zom::innards::Side;

namespace zom
{
    HostIndex::HostIndex(const SparseMatrix & matrix) :
        _n(matrix.n())
    {
        build(matrix.entries());
    }

    HostIndex::HostIndex(const BitMatrix & matrix) :
        _n(matrix.n())
    {
        build(to_sparse(matrix).entries());
    }

    auto HostIndex::build(span<const Cell> entries) -> void
    {
        _row_start.assign(size_t{_n} + 2, 0);
        _col_start.assign(size_t{_n} + 2, 0);
        for (auto & c : entries) {
            ++_row_start[c.row + 1];
            ++_col_start[c.col + 1];
        }
        for (size_t i = 1 ; i < _row_start.size() ; ++i) {
            _row_start[i] += _row_start[i - 1];
            _col_start[i] += _col_start[i - 1];
        }

        _row_items.resize(entries.size());
        _col_items.resize(entries.size());
        auto row_fill = _row_start, col_fill = _col_start;
        // entries are row-major sorted, so both lists come out ascending
        for (auto & c : entries) {
            _row_items[row_fill[c.row]++] = c.col;
            _col_items[col_fill[c.col]++] = c.row;
        }
    }

    auto HostIndex::row(uint32_t r) const -> span<const uint32_t>
    {
        return span<const uint32_t>(_row_items).subspan(_row_start[r], _row_start[r + 1] - _row_start[r]);
    }

    auto HostIndex::col(uint32_t c) const -> span<const uint32_t>
    {
        return span<const uint32_t>(_col_items).subspan(_col_start[c], _col_start[c + 1] - _col_start[c]);
    }

    auto HostIndex::has(uint32_t r, uint32_t c) const -> bool
    {
        auto items = row(r);
        return std::binary_search(items.begin(), items.end(), c);
    }

    namespace
    {
        auto require_nonempty(const Pattern & pattern) -> void
        {
            if (pattern.weight() == 0)
                throw DegeneratePatternError("containment of a weight-0 pattern is vacuous");
        }

        auto fits(const Pattern & pattern, uint32_t n) -> bool
        {
            return pattern.rows() <= n && pattern.cols() <= n;
        }

        auto make_embedding(span<const uint32_t> rows, span<const uint32_t> cols) -> Embedding
        {
            return Embedding{vector<uint32_t>(rows.begin(), rows.end()), vector<uint32_t>(cols.begin(), cols.end())};
        }

        /// Host lines that can carry the given pattern line.
        auto root_candidates(const PatternGraph & graph, const CsrHost & host, Line root) -> vector<uint32_t>
        {
            auto count = graph.dims[static_cast<int>(root.side)];
            auto needed = graph.degree(root);
            vector<uint32_t> result;
            for (uint32_t x = root.index + 1 ; x <= host.n() - (count - 1 - root.index) ; ++x)
                if (host.degree(root.side, x) >= needed)
                    result.push_back(x);
            return result;
        }
    }

    auto find_witness(const Pattern & pattern, const HostIndex & index, const SearchOptions & options) -> optional<Embedding>
    {
        require_nonempty(pattern);
        if (! fits(pattern, index.n()))
            return std::nullopt;

        PatternGraph graph(pattern);
        CsrHost host(index);
        auto root = innards::search_order(graph, {})[0];
        auto candidates = root_candidates(graph, host, root);
        std::array<Line, 1> pins{root};

        std::atomic<uint64_t> nodes{0};
        std::atomic<size_t> best{candidates.size()};
        optional<Embedding> result;
        std::mutex result_mutex;

        innards::parallel_for(candidates.size(), options.threads, [&] (size_t i) {
            if (i > best.load())
                return;
            Searcher<CsrHost> searcher(graph, host, pins, false, &nodes, options.node_budget);
            optional<Embedding> found;
            std::array<uint32_t, 1> value{candidates[i]};
            searcher.run(value, [&] (span<const uint32_t> rows, span<const uint32_t> cols) {
                found = make_embedding(rows, cols);
                return true;
            });
            searcher.flush();
            if (found) {
                std::lock_guard lock(result_mutex);
                if (i < best.load()) {
                    best = i;
                    result = std::move(found);
                }
            }
        });

        if (options.stats)
            options.stats->nodes = nodes.load();
        return result;
    }

    auto contains(const Pattern & pattern, const HostIndex & host, const SearchOptions & options) -> bool
    {
        return find_witness(pattern, host, options).has_value();
    }

    auto enumerate_occurrences(const Pattern & pattern, const HostIndex & index, size_t limit,
            const SearchOptions & options) -> vector<Embedding>
    {
        require_nonempty(pattern);
        if (limit == 0)
            throw BoundsError("enumeration limit must be at least 1");
        vector<Embedding> result;
        if (! fits(pattern, index.n()))
            return result;

        PatternGraph graph(pattern);
        CsrHost host(index);
        Line root{Side::row, 0};
        auto candidates = root_candidates(graph, host, root);
        std::array<Line, 1> pins{root};
        std::atomic<uint64_t> nodes{0};

        // The first row is the most significant key, so finishing candidate
        // groups in order yields a lexicographic prefix.
        size_t chunk = std::max<size_t>(64, size_t{options.threads} * 16);
        for (size_t start = 0 ; start < candidates.size() && result.size() < limit ; start += chunk) {
            auto count = std::min(chunk, candidates.size() - start);
            vector<vector<Embedding>> groups(count);
            innards::parallel_for(count, options.threads, [&] (size_t i) {
                Searcher<CsrHost> searcher(graph, host, pins, true, &nodes, options.node_budget);
                std::array<uint32_t, 1> value{candidates[start + i]};
                searcher.run(value, [&] (span<const uint32_t> rows, span<const uint32_t> cols) {
                    groups[i].push_back(make_embedding(rows, cols));
                    return false;
                });
                searcher.flush();
                std::sort(groups[i].begin(), groups[i].end());
            });
            for (auto & group : groups)
                for (auto & e : group) {
                    if (result.size() == limit) {
                        if (options.stats)
                            options.stats->nodes = nodes.load();
                        return result;
                    }
                    result.push_back(std::move(e));
                }
        }
        if (options.stats)
            options.stats->nodes = nodes.load();
        return result;
    }

    auto for_each_occurrence_at_row(const Pattern & pattern, const HostIndex & index, uint32_t host_row,
            const std::function<void (const Embedding &)> & visit, const SearchOptions & options) -> uint64_t
    {
        require_nonempty(pattern);
        if (! fits(pattern, index.n()) || host_row < 1 || host_row > index.n())
            return 0;

        PatternGraph graph(pattern);
        CsrHost host(index);
        std::array<Line, 1> pins{Line{Side::row, 0}};
        std::array<uint32_t, 1> value{host_row};
        std::atomic<uint64_t> nodes{0};
        Searcher<CsrHost> searcher(graph, host, pins, true, &nodes, options.node_budget);
        uint64_t visited = 0;
        searcher.run(value, [&] (span<const uint32_t> rows, span<const uint32_t> cols) {
            ++visited;
            visit(make_embedding(rows, cols));
            return false;
        });
        searcher.flush();
        if (options.stats)
            options.stats->nodes = nodes.load();
        return visited;
    }

    auto contains(const Pattern & pattern, const BitMatrix & host, const SearchOptions & options) -> bool
    {
        return contains(pattern, HostIndex(host), options);
    }

    auto contains(const Pattern & pattern, const SparseMatrix & host, const SearchOptions & options) -> bool
    {
        return contains(pattern, HostIndex(host), options);
    }

    auto find_witness(const Pattern & pattern, const BitMatrix & host, const SearchOptions & options) -> optional<Embedding>
    {
        return find_witness(pattern, HostIndex(host), options);
    }

    auto find_witness(const Pattern & pattern, const SparseMatrix & host, const SearchOptions & options) -> optional<Embedding>
    {
        return find_witness(pattern, HostIndex(host), options);
    }

    auto enumerate_occurrences(const Pattern & pattern, const BitMatrix & host, size_t limit,
            const SearchOptions & options) -> vector<Embedding>
    {
        return enumerate_occurrences(pattern, HostIndex(host), limit, options);
    }

    auto enumerate_occurrences(const Pattern & pattern, const SparseMatrix & host, size_t limit,
            const SearchOptions & options) -> vector<Embedding>
    {
        return enumerate_occurrences(pattern, HostIndex(host), limit, options);
    }

    auto contains_naive(const Pattern & pattern, const BitMatrix & host) -> bool
    {
        require_nonempty(pattern);
        auto n = host.n();
        if (n > naive_max_side)
            throw OracleScaleError("naive containment is limited to hosts of side " + std::to_string(naive_max_side));
        if (! fits(pattern, n))
            return false;

        vector<uint32_t> masks(n);
        for (uint32_t r = 1 ; r <= n ; ++r)
            masks[r - 1] = static_cast<uint32_t>(host.row_words(r)[0]);

        auto subsets = [n] (uint32_t size) {
            vector<vector<uint32_t>> result;
            for (uint32_t bits = 0 ; bits < (1u << n) ; ++bits)
                if (static_cast<uint32_t>(std::popcount(bits)) == size) {
                    vector<uint32_t> members;
                    for (uint32_t i = 0 ; i < n ; ++i)
                        if (bits & (1u << i))
                            members.push_back(i);
                    result.push_back(std::move(members));
                }
            return result;
        };

        auto row_sets = subsets(pattern.rows()), col_sets = subsets(pattern.cols());
        for (auto & rows : row_sets)
            for (auto & cols : col_sets) {
                bool ok = true;
                for (auto & one : pattern.ones())
                    if (! ((masks[rows[one.row - 1]] >> cols[one.col - 1]) & 1)) {
                        ok = false;
                        break;
                    }
                if (ok)
                    return true;
            }
        return false;
    }

    namespace
    {
        template <typename Has>
        auto valid_embedding(const Pattern & pattern, uint32_t n, const Embedding & e, Has && has) -> bool
        {
            if (e.row_map.size() != pattern.rows() || e.col_map.size() != pattern.cols())
                return false;
            for (auto * map : {&e.row_map, &e.col_map}) {
                for (size_t i = 0 ; i < map->size() ; ++i) {
                    auto v = (*map)[i];
                    if (v < 1 || v > n || (i > 0 && (*map)[i - 1] >= v))
                        return false;
                }
            }
            for (auto & one : pattern.ones())
                if (! has(e.row_map[one.row - 1], e.col_map[one.col - 1]))
                    return false;
            return true;
        }
    }

    auto is_valid_embedding(const Pattern & pattern, const HostIndex & host, const Embedding & e) -> bool
    {
        return valid_embedding(pattern, host.n(), e, [&] (uint32_t r, uint32_t c) { return host.has(r, c); });
    }

    auto is_valid_embedding(const Pattern & pattern, const BitMatrix & host, const Embedding & e) -> bool
    {
        return valid_embedding(pattern, host.n(), e, [&] (uint32_t r, uint32_t c) { return host.get(r, c); });
    }
}
