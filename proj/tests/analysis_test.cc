#include <doctest.h>

#include <zom/analysis.hh>
#include <zom/construction.hh>

#include "generators.hh"

#include <functional>

using namespace zom;

namespace
{
    /// Cycle search by depth-first walks over the row/column graph.
    auto has_cycle_brute(const Pattern & p) -> bool
    {
        auto nodes = p.rows() + p.cols();
        std::vector<std::vector<std::uint32_t>> adj(nodes);
        for (auto & c : p.ones()) {
            adj[c.row - 1].push_back(p.rows() + c.col - 1);
            adj[p.rows() + c.col - 1].push_back(c.row - 1);
        }
        std::vector<int> state(nodes, 0);
        std::function<bool (std::uint32_t, int)> visit = [&] (std::uint32_t x, int from) {
            state[x] = 1;
            for (auto y : adj[x]) {
                if (static_cast<int>(y) == from)
                    continue;
                if (state[y] == 1 || (state[y] == 0 && visit(y, static_cast<int>(x))))
                    return true;
            }
            state[x] = 2;
            return false;
        };
        for (std::uint32_t x = 0 ; x < nodes ; ++x)
            if (state[x] == 0 && visit(x, -1))
                return true;
        return false;
    }
}

TEST_CASE("class predicates")
{
    CHECK(is_permutation(identity_pattern(4)));
    CHECK(is_light(identity_pattern(4)));
    CHECK(! is_permutation(one_row_pattern(3)));
    CHECK(is_light(one_row_pattern(3)));
    CHECK(! is_light(catalog("T")));
    CHECK(! is_permutation(Pattern(2, 3, {{1, 1}, {2, 2}})));
    CHECK(! is_acyclic(Pattern(2, 2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}})));
    for (auto name : {"R1", "R2", "S1", "S2", "T"})
        CHECK(is_acyclic(catalog(name)));
    for (std::uint32_t t = 2 ; t <= 5 ; ++t)
        CHECK(is_acyclic(gen_Xt(t)));
}

TEST_CASE("acyclicity agrees with a brute-force cycle search")
{
    for (std::uint32_t r = 1 ; r <= 3 ; ++r)
        for (std::uint32_t c = 1 ; c <= 3 ; ++c)
            for (auto & p : testing::all_patterns(r, c))
                CHECK(is_acyclic(p) == ! has_cycle_brute(p));

    std::mt19937_64 rng(61);
    for (int i = 0 ; i < 3000 ; ++i) {
        auto p = testing::random_pattern(rng, 4, 4, 0.35);
        CHECK(is_acyclic(p) == ! has_cycle_brute(p));
    }
}

TEST_CASE("degeneracy classes")
{
    CHECK(degeneracy_class(catalog("S1")) == 2);
    CHECK(degeneracy_class(catalog("S2")) == 2);
    CHECK(! degeneracy_class(catalog("T")));
    CHECK(! degeneracy_class(transform(catalog("T"), Transform::transpose)));
    // every horizontal cut of transpose(S1) shares at least two columns
    CHECK(! degeneracy_class(transform(catalog("S1"), Transform::transpose)));
    for (std::uint32_t l = 1 ; l <= 6 ; ++l)
        CHECK(degeneracy_class(one_row_pattern(l)) == 0);
    CHECK(degeneracy_class(identity_pattern(2)) == 1);

    std::mt19937_64 rng(67);
    for (int i = 0 ; i < 500 ; ++i) {
        auto p = testing::random_pattern(rng, 5, 5, 0.3);
        CHECK(degeneracy_class(p) == degeneracy_class(transform(p, Transform::flip_cols)));
    }
}

TEST_CASE("reduction steps on X_2")
{
    auto x = gen_Xt(2);
    auto steps = find_reductions(x);
    REQUIRE(! steps.empty());

    bool row2 = false;
    for (auto & s : steps) {
        CHECK(is_valid_step(x, s));
        CHECK(apply_reduction(x, s).weight() + 1 == x.weight());
        if (s.orientation.removal == Removal::row && s.removed == 2)
            row2 = true;
    }
    CHECK(row2);

    ReductionStep first{Orientation{Removal::row, true}, 2, 5, 2};
    CHECK(is_valid_step(x, first));
    auto once = apply_reduction(x, first);
    CHECK(apply_reduction(x, first) == once);
    ReductionStep second{Orientation{Removal::row, true}, 2, 2, 5};
    auto twice = apply_reduction(once, second);
    CHECK(twice == Pattern(2, 5, {{1, 2}, {1, 4}, {1, 5}, {2, 1}, {2, 3}, {2, 5}}));
    CHECK(twice.rows() + 1 == once.rows());

    CHECK(find_reductions(one_row_pattern(3)).empty());
    CHECK_THROWS_AS(apply_reduction(one_row_pattern(3), ReductionStep{{}, 2, 1, 1}), InvalidStepError);
}

TEST_CASE("every found step is valid under its declared orientation")
{
    std::mt19937_64 rng(71);
    for (int i = 0 ; i < 2000 ; ++i) {
        auto p = testing::random_pattern(rng, 5, 5, 0.4);
        auto steps = find_reductions(p);
        for (auto & s : steps) {
            CHECK(is_valid_step(p, s));
            auto q = apply_reduction(p, s);
            CHECK(q.weight() + 1 == p.weight());
            bool by_column = s.orientation.removal == Removal::column;
            CHECK(q.rows() + (by_column ? 0 : 1) == p.rows());
            CHECK(q.cols() + (by_column ? 1 : 0) == p.cols());
        }
        // the transposed pattern has the same steps with rows and columns exchanged
        CHECK(find_reductions(transform(p, Transform::transpose)).size() == steps.size());
    }
}

TEST_CASE("reduction chains for X_t have length 4t-3")
{
    for (std::uint32_t t = 2 ; t <= 4 ; ++t) {
        CAPTURE(t);
        auto chain = reduce_chain(gen_Xt(t), 3);
        REQUIRE(chain);
        CHECK(chain->steps.size() == 4 * t - 3);
        CHECK(chain->implied_exponent() == 4 * t - 3);
        CHECK(chain->final_pattern.weight() == 3);
        CHECK(replays(*chain));
    }

    auto empty = reduce_chain(gen_Xt(2), 8);
    REQUIRE(empty);
    CHECK(empty->steps.empty());
    CHECK(! reduce_chain(one_row_pattern(3), 1));
    CHECK_THROWS_AS(reduce_chain(gen_Xt(2), 0), BoundsError);
}

TEST_CASE("tampered chains do not replay")
{
    auto chain = *reduce_chain(gen_Xt(2), 3);
    auto broken = chain;
    broken.steps.pop_back();
    CHECK(! replays(broken));
    broken = chain;
    std::swap(broken.steps.front().single, broken.steps.front().partner);
    CHECK(! replays(broken));
}
