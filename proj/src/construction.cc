#include <zom/construction.hh>

#include <algorithm>
#include <limits>

using std::optional;
using std::span;
using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace zom
{
    namespace
    {
        auto checked_power(uint64_t base, uint64_t exponent) -> optional<uint64_t>
        {
            uint64_t result = 1;
            for (uint64_t i = 0 ; i < exponent ; ++i) {
                if (result > std::numeric_limits<uint64_t>::max() / base)
                    return std::nullopt;
                result *= base;
            }
            return result;
        }

        auto power(uint64_t base, uint64_t exponent) -> uint64_t
        {
            uint64_t result = 1;
            for (uint64_t i = 0 ; i < exponent ; ++i)
                result *= base;
            return result;
        }

        /// Advances a j-tuple over [k]^len in lexicographic order.
        auto next_tuple(vector<uint32_t> & j, uint32_t k) -> bool
        {
            for (auto i = j.size() ; i-- > 0 ; ) {
                if (j[i] < k) {
                    ++j[i];
                    return true;
                }
                j[i] = 1;
            }
            return false;
        }
    }

    auto ConstructionParams::make(uint32_t t, uint32_t k) -> ConstructionParams
    {
        if (t < 2)
            throw BoundsError("construction needs t >= 2");
        if (k < 2)
            throw BoundsError("construction needs k >= 2");

        ConstructionParams p;
        p.t = t;
        p.k = k;
        auto m = checked_power(k, t);
        if (! m || *m > std::numeric_limits<uint32_t>::max())
            throw ResourceCapError("alphabet size k^t too large");
        p.m = *m;
        p.length = t * k;
        auto n = checked_power(p.m, p.length);
        if (! n)
            throw ResourceCapError("matrix side k^(t^2 k) does not fit in 64 bits");
        p.n = *n;
        return p;
    }

    IndexVector::IndexVector(const ConstructionParams & params, vector<uint32_t> coords) :
        _params(params),
        _coords(std::move(coords))
    {
        if (_coords.size() != params.length)
            throw BoundsError("index vector must have t*k coordinates");
        for (auto c : _coords)
            if (c >= params.m)
                throw BoundsError("index coordinate outside [0, m-1]");
    }

    auto IndexVector::block(uint32_t p) const -> span<const uint32_t>
    {
        if (p < 1 || p > _params.t)
            throw BoundsError("block index outside [1, t]");
        return span<const uint32_t>(_coords).subspan((p - 1) * _params.k, _params.k);
    }

    auto IndexVector::coord(uint32_t p, uint32_t q) const -> uint32_t
    {
        if (q < 1 || q > _params.k)
            throw BoundsError("coordinate index outside [1, k]");
        return block(p)[q - 1];
    }

    auto angle(span<const uint32_t> prefix, uint32_t k) -> uint64_t
    {
        uint64_t result = 0;
        for (auto v : prefix) {
            if (v < 1 || v > k)
                throw BoundsError("angle entries must lie in [1, k]");
            result = result * k + (v - 1);
        }
        return result + 1;
    }

    auto make_offset(span<const uint32_t> j, const ConstructionParams & params) -> OffsetVector
    {
        if (j.size() != params.t)
            throw BoundsError("offset needs exactly t indices");
        OffsetVector v;
        v.j.assign(j.begin(), j.end());
        v.coords.assign(params.length, 0);
        for (uint32_t r = 1 ; r <= params.t ; ++r) {
            if (j[r - 1] < 1 || j[r - 1] > params.k)
                throw BoundsError("offset indices must lie in [1, k]");
            v.coords[(r - 1) * params.k + (j[r - 1] - 1)] = static_cast<uint32_t>(angle(j.subspan(0, r - 1), params.k));
        }
        return v;
    }

    auto enumerate_offsets(const ConstructionParams & params) -> vector<OffsetVector>
    {
        vector<OffsetVector> result;
        vector<uint32_t> j(params.t, 1);
        do
            result.push_back(make_offset(j, params));
        while (next_tuple(j, params.k));
        return result;
    }

    auto index_rank(const IndexVector & a) -> uint64_t
    {
        uint64_t rank = 0;
        for (auto c : a.coords())
            rank = rank * a.params().m + c;
        return rank;
    }

    auto index_unrank(uint64_t rank, const ConstructionParams & params) -> IndexVector
    {
        if (rank >= params.n)
            throw BoundsError("rank outside [0, n-1]");
        vector<uint32_t> coords(params.length);
        for (auto i = params.length ; i-- > 0 ; ) {
            coords[i] = static_cast<uint32_t>(rank % params.m);
            rank /= params.m;
        }
        return IndexVector(params, std::move(coords));
    }

    auto build_construction(const ConstructionParams & params, uint64_t cap) -> SparseMatrix
    {
        if (params.n > cap)
            throw ResourceCapError("construction side " + std::to_string(params.n) + " exceeds the cap of " + std::to_string(cap));

        struct Step
        {
            vector<std::pair<uint32_t, uint32_t>> positions; // (coordinate, added value)
            uint64_t rank;
        };

        vector<Step> steps;
        for (auto & v : enumerate_offsets(params)) {
            Step s;
            s.rank = 0;
            for (uint32_t i = 0 ; i < params.length ; ++i) {
                s.rank = s.rank * params.m + v.coords[i];
                if (v.coords[i] != 0)
                    s.positions.emplace_back(i, v.coords[i]);
            }
            steps.push_back(std::move(s));
        }

        vector<Cell> entries;
        vector<uint32_t> coords(params.length, 0), row;
        auto m = static_cast<uint32_t>(params.m);
        for (uint64_t a = 0 ; a < params.n ; ++a) {
            row.clear();
            for (auto & s : steps) {
                bool inside = true;
                for (auto [pos, add] : s.positions)
                    if (coords[pos] + add >= m) {
                        inside = false;
                        break;
                    }
                // no coordinate overflows, so ranks add without carries
                if (inside)
                    row.push_back(static_cast<uint32_t>(a + s.rank + 1));
            }
            std::sort(row.begin(), row.end());
            for (auto c : row)
                entries.push_back({static_cast<uint32_t>(a + 1), c});

            for (auto i = params.length ; i-- > 0 ; ) {
                if (++coords[i] < m)
                    break;
                coords[i] = 0;
            }
        }
        return SparseMatrix(static_cast<uint32_t>(params.n), std::move(entries));
    }

    auto exact_weight_formula(const ConstructionParams & params) -> BigInt
    {
        BigInt free_rows = 1;
        for (uint32_t i = 0 ; i < params.t * (params.k - 1) ; ++i)
            free_rows *= params.m;

        BigInt total = 0;
        vector<uint32_t> j(params.t, 1);
        do {
            BigInt product = 1;
            for (uint32_t r = 1 ; r <= params.t ; ++r)
                product *= BigInt(params.m) - BigInt(angle(span<const uint32_t>(j).subspan(0, r - 1), params.k));
            total += product;
        } while (next_tuple(j, params.k));
        return total * free_rows;
    }

    auto density_bound_check(const ConstructionParams & params) -> DensityCheck
    {
        DensityCheck result;
        result.weight = exact_weight_formula(params);
        BigInt scale = BigInt(params.n);
        for (uint32_t i = 0 ; i < params.t ; ++i)
            scale *= params.k;
        result.bound = BigRational(BigInt(params.k - 2), BigInt(params.k - 1)) * BigRational(scale);
        result.pass = BigRational(result.weight) >= result.bound;
        return result;
    }

    auto type_of(const IndexVector & a, const IndexVector & b) -> uint32_t
    {
        if (a.params() != b.params())
            throw BoundsError("type of index vectors from different constructions");
        for (uint32_t p = 1 ; p <= a.params().t ; ++p) {
            auto x = a.block(p), y = b.block(p);
            if (! std::equal(x.begin(), x.end(), y.begin()))
                return p;
        }
        throw TypeUndefinedError("type of equal index vectors is undefined");
    }

    IndexArithmetic::IndexArithmetic(const ConstructionParams & params) :
        _params(params)
    {
        for (uint32_t p = 1 ; p <= params.t ; ++p)
            _block_divisor.push_back(power(params.m, uint64_t{params.k} * (params.t - p)));
    }

    auto IndexArithmetic::type(uint64_t a, uint64_t b) const -> uint32_t
    {
        if (a == b)
            throw TypeUndefinedError("type of equal index vectors is undefined");
        --a;
        --b;
        for (uint32_t p = 0 ; p < _params.t ; ++p)
            if (a / _block_divisor[p] != b / _block_divisor[p])
                return p + 1;
        return _params.t;
    }

    auto IndexArithmetic::coords(uint64_t index) const -> vector<uint32_t>
    {
        auto v = index_unrank(index - 1, _params);
        return vector<uint32_t>(v.coords().begin(), v.coords().end());
    }

    auto IndexArithmetic::first_difference(uint64_t a, uint64_t b) const -> std::pair<uint32_t, uint32_t>
    {
        auto x = coords(a), y = coords(b);
        for (uint32_t i = 0 ; i < _params.length ; ++i)
            if (x[i] != y[i])
                return {i / _params.k + 1, i % _params.k + 1};
        throw TypeUndefinedError("equal index vectors have no differing coordinate");
    }

    auto IndexArithmetic::decode_offset(uint64_t a, uint64_t b) const -> optional<vector<uint32_t>>
    {
        if (b <= a)
            return std::nullopt;
        auto x = coords(a), y = coords(b);
        vector<uint32_t> j;
        for (uint32_t r = 1 ; r <= _params.t ; ++r) {
            uint32_t position = 0;
            for (uint32_t q = 1 ; q <= _params.k ; ++q) {
                auto i = (r - 1) * _params.k + (q - 1);
                if (y[i] < x[i])
                    return std::nullopt;
                if (y[i] != x[i]) {
                    if (position != 0)
                        return std::nullopt;
                    position = q;
                }
            }
            if (position == 0)
                return std::nullopt;
            auto i = (r - 1) * _params.k + (position - 1);
            if (y[i] - x[i] != angle(span<const uint32_t>(j), _params.k))
                return std::nullopt;
            j.push_back(position);
        }
        return j;
    }

    auto gen_Xt(uint32_t t) -> Pattern
    {
        if (t < 2)
            throw BoundsError("X_t needs t >= 2");
        auto rows = 2 * t, cols = 2 * t + 1;
        vector<Cell> ones;
        for (uint32_t c = 2 ; c <= 2 * t ; c += 2)
            ones.push_back({1, c});
        ones.push_back({1, cols});
        for (uint32_t c = 1 ; c <= 2 * t - 1 ; c += 2)
            ones.push_back({rows, c});
        ones.push_back({rows, cols});
        for (uint32_t r = 3 ; r <= 2 * t - 1 ; r += 2)
            ones.push_back({r, 2});
        for (uint32_t r = 2 ; r <= 2 * t - 2 ; r += 2)
            ones.push_back({r, cols});
        return Pattern(rows, cols, std::move(ones));
    }

    auto gen_Pt(uint32_t t) -> Pattern
    {
        auto x = gen_Xt(t);
        vector<Cell> ones;
        for (auto & c : x.ones())
            if ((c.row == 1 || c.row == x.rows()) && c.col >= 2)
                ones.push_back({c.row == 1 ? 1u : 2u, c.col - 1});
        return Pattern(2, 2 * t, std::move(ones));
    }

    auto gen_Qt(uint32_t t) -> Pattern
    {
        return transform(gen_Pt(t), Transform::anti_transpose);
    }
}
