#include <doctest.h>

#include <zom/analysis.hh>
#include <zom/construction.hh>
#include <zom/containment.hh>

#include <random>
#include <set>

using namespace zom;

namespace
{
    auto params22() -> ConstructionParams { return ConstructionParams::make(2, 2); }

    auto column_weights(const SparseMatrix & m) -> std::vector<std::size_t>
    {
        std::vector<std::size_t> w(m.n() + 1, 0);
        for (auto & c : m.entries())
            ++w[c.col];
        return w;
    }
}

TEST_CASE("construction parameters")
{
    auto p = params22();
    CHECK(p.m == 4);
    CHECK(p.length == 4);
    CHECK(p.n == 256);
    CHECK(ConstructionParams::make(2, 3).n == 531441);
    CHECK(ConstructionParams::make(3, 2).n == 262144);
    CHECK_THROWS_AS(ConstructionParams::make(1, 2), BoundsError);
    CHECK_THROWS_AS(ConstructionParams::make(2, 1), BoundsError);
    CHECK_THROWS_AS(ConstructionParams::make(4, 4), ResourceCapError);
}

TEST_CASE("angle encoding")
{
    CHECK(angle({}, 3) == 1);
    std::vector<std::uint32_t> j{2, 1, 3};
    CHECK(angle(j, 3) == 12);
    std::vector<std::uint32_t> ones{1, 1, 1, 1};
    CHECK(angle(ones, 2) == 1);
    std::vector<std::uint32_t> bad{3};
    CHECK_THROWS_AS(angle(bad, 2), BoundsError);
}

TEST_CASE("offset vectors")
{
    auto p = params22();
    std::vector<std::uint32_t> j12{1, 2}, j21{2, 1};
    CHECK(make_offset(j12, p).coords == std::vector<std::uint32_t>{1, 0, 0, 1});
    CHECK(make_offset(j21, p).coords == std::vector<std::uint32_t>{0, 1, 2, 0});

    for (auto [t, k, count] : {std::tuple{2u, 2u, 4u}, {2u, 3u, 9u}, {3u, 2u, 8u}}) {
        auto params = ConstructionParams::make(t, k);
        auto offsets = enumerate_offsets(params);
        CHECK(offsets.size() == count);
        std::set<std::vector<std::uint32_t>> distinct;
        for (auto & v : offsets) {
            distinct.insert(v.coords);
            // one nonzero per block, equal to the angle of the prefix
            for (std::uint32_t r = 0 ; r < t ; ++r) {
                std::uint32_t nonzero = 0;
                for (std::uint32_t q = 0 ; q < k ; ++q)
                    nonzero += v.coords[r * k + q] != 0;
                CHECK(nonzero == 1);
                CHECK(v.coords[r * k + v.j[r] - 1] == angle(std::span(v.j).subspan(0, r), k));
            }
        }
        CHECK(distinct.size() == count);
    }
}

TEST_CASE("index vectors, ranks and blocks")
{
    auto p = params22();
    CHECK(index_rank(IndexVector(p, {0, 0, 0, 0})) == 0);
    CHECK(index_rank(IndexVector(p, {0, 0, 0, 1})) == 1);
    CHECK(index_rank(IndexVector(p, {1, 0, 0, 0})) == 64);
    CHECK_THROWS_AS(IndexVector(p, {4, 0, 0, 0}), BoundsError);
    CHECK_THROWS_AS(IndexVector(p, {0, 0, 0}), BoundsError);

    IndexVector v(p, {0, 1, 2, 3});
    CHECK(v.block(2)[0] == 2);
    CHECK(v.coord(1, 2) == 1);
    CHECK_THROWS_AS(v.block(3), BoundsError);

    for (std::uint64_t r = 0 ; r < p.n ; ++r) {
        CHECK(index_rank(index_unrank(r, p)) == r);
        if (r > 0)
            CHECK(index_unrank(r - 1, p) < index_unrank(r, p));
    }
    CHECK_THROWS_AS(index_unrank(p.n, p), BoundsError);
}

TEST_CASE("construction weights against the enumeration oracle")
{
    auto a = build_construction(params22());
    CHECK(a.n() == 256);
    CHECK(a.weight() == 480);
    CHECK(exact_weight_formula(params22()) == 480);

    auto p23 = ConstructionParams::make(2, 3);
    CHECK(exact_weight_formula(p23) == 3306744);
    auto p32 = ConstructionParams::make(3, 2);
    CHECK(exact_weight_formula(p32) == 1039360);
    CHECK(build_construction(p32).weight() == 1039360);

    CHECK_THROWS_AS(build_construction(p23, 1000), ResourceCapError);
}

TEST_CASE("rows and columns of the construction hold at most k^t ones")
{
    auto p = ConstructionParams::make(3, 2);
    auto a = build_construction(p);
    HostIndex h(a);
    std::size_t max_row = 0;
    for (std::uint32_t r = 1 ; r <= a.n() ; ++r)
        max_row = std::max(max_row, h.row(r).size());
    auto cols = column_weights(a);
    CHECK(max_row <= p.m);
    CHECK(*std::max_element(cols.begin(), cols.end()) <= p.m);
}

TEST_CASE("every 1 of the construction is an in-range offset")
{
    auto p = params22();
    auto a = build_construction(p);
    IndexArithmetic ar(p);
    std::set<std::pair<std::uint32_t, std::uint32_t>> ones;
    for (auto & c : a.entries()) {
        ones.insert({c.row, c.col});
        CHECK(ar.decode_offset(c.row, c.col));
    }
    for (std::uint32_t x = 1 ; x <= a.n() ; ++x)
        for (std::uint32_t y = 1 ; y <= a.n() ; ++y)
            CHECK(ones.contains({x, y}) == ar.decode_offset(x, y).has_value());
}

TEST_CASE("density bound")
{
    auto check = density_bound_check(ConstructionParams::make(2, 3));
    CHECK(check.weight == 3306744);
    CHECK(check.bound == BigRational(4782969, 2));
    CHECK(check.pass);

    auto vacuous = density_bound_check(params22());
    CHECK(vacuous.bound == 0);
    CHECK(vacuous.pass);

    for (auto [t, k] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {2u, 4u}, {3u, 3u}}) {
        auto params = ConstructionParams::make(t, k);
        CHECK(exact_weight_formula(params) <= BigInt(params.n) * params.m);
    }
}

TEST_CASE("type of two index vectors")
{
    auto p = params22();
    CHECK(type_of(IndexVector(p, {0, 1, 2, 3}), IndexVector(p, {0, 1, 3, 3})) == 2);
    CHECK(type_of(IndexVector(p, {1, 1, 2, 3}), IndexVector(p, {0, 1, 2, 3})) == 1);
    CHECK_THROWS_AS(type_of(IndexVector(p, {0, 0, 0, 0}), IndexVector(p, {0, 0, 0, 0})), TypeUndefinedError);

    IndexArithmetic ar(p);
    CHECK_THROWS_AS(ar.type(5, 5), TypeUndefinedError);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> pick(1, p.n);
    for (int i = 0 ; i < 2000 ; ++i) {
        auto a = pick(rng), b = pick(rng);
        if (a == b)
            continue;
        auto va = index_unrank(a - 1, p), vb = index_unrank(b - 1, p);
        CHECK(ar.type(a, b) == type_of(va, vb));
        auto [block, pos] = ar.first_difference(a, b);
        CHECK(block == ar.type(a, b));
        CHECK(va.coord(block, pos) != vb.coord(block, pos));
    }
}

TEST_CASE("pattern families")
{
    for (std::uint32_t t = 2 ; t <= 6 ; ++t) {
        auto x = gen_Xt(t);
        CHECK(x.rows() == 2 * t);
        CHECK(x.cols() == 2 * t + 1);
        CHECK(x.weight() == 4 * t);
        CHECK(is_acyclic(x));

        // Q_t is formed by the second and last columns of X_t
        std::vector<Cell> q;
        for (auto & c : x.ones())
            if (c.col == 2 || c.col == x.cols())
                q.push_back({c.row, c.col == 2 ? 1u : 2u});
        CHECK(gen_Qt(t) == Pattern(2 * t, 2, q));
        CHECK(transform(gen_Pt(t), Transform::anti_transpose) == gen_Qt(t));

        // outside P_t (first and last rows minus column 1) and Q_t only (2t, 1) is left
        std::vector<Cell> rest;
        for (auto & c : x.ones()) {
            bool in_p = (c.row == 1 || c.row == x.rows()) && c.col >= 2;
            bool in_q = c.col == 2 || c.col == x.cols();
            if (! in_p && ! in_q)
                rest.push_back(c);
        }
        CHECK(rest == std::vector<Cell>{{2 * t, 1}});
    }
    CHECK(gen_Pt(2) == Pattern(2, 4, {{1, 1}, {1, 3}, {1, 4}, {2, 2}, {2, 4}}));
    CHECK_THROWS_AS(gen_Xt(1), BoundsError);
}
