#include <doctest.h>

#include <zom/containment.hh>
#include <zom/extremal.hh>

#include "generators.hh"

using namespace zom;

namespace
{
    auto check_result(const Pattern & p, const ExtremalResult & r) -> void
    {
        CHECK(r.maximizer.weight() == r.value);
        CHECK(! contains(p, r.maximizer));
    }
}

TEST_CASE("trivial extremal values")
{
    Pattern single(1, 1, {{1, 1}});
    for (std::uint32_t n = 1 ; n <= 4 ; ++n)
        CHECK(extremal_exact(single, n).value == 0);
    CHECK(extremal_exact(one_row_pattern(2), 4).value == 4);
    CHECK(extremal_exact(one_row_pattern(2), 4, ExtremalMethod::exhaustive).value == 4);
}

TEST_CASE("identity(2) against the brute-force oracle")
{
    // values and lexicographically least maximizers frozen from the oracle
    std::vector<std::pair<std::uint64_t, std::string>> expected{
        {1, "1"}, {3, "0111"}, {5, "001001111"}, {7, "0001000100011111"}};
    auto p = identity_pattern(2);
    for (std::uint32_t n = 1 ; n <= 4 ; ++n) {
        CAPTURE(n);
        for (auto method : {ExtremalMethod::bnb, ExtremalMethod::exhaustive}) {
            auto r = extremal_exact(p, n, method);
            CHECK(r.value == expected[n - 1].first);
            CHECK(r.maximizer.bit_string() == expected[n - 1].second);
            check_result(p, r);
        }
    }
    CHECK(extremal_exact(p, 5).value == 9);
}

TEST_CASE("further oracle values")
{
    auto r = extremal_exact(one_row_pattern(2), 3);
    CHECK(r.value == 3);
    CHECK(r.maximizer.bit_string() == "001001001");

    auto square = extremal_exact(Pattern(2, 2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}), 3);
    CHECK(square.value == 6);
    CHECK(square.maximizer.bit_string() == "011101110");

    CHECK(extremal_exact(Pattern(1, 1, {{1, 1}}), 2).maximizer.bit_string() == "0000");
}

TEST_CASE("branch and bound agrees with exhaustive search on small patterns")
{
    std::mt19937_64 rng(41);
    int tried = 0;
    while (tried < 40) {
        auto p = testing::random_pattern(rng, 3, 3, 0.4);
        if (p.weight() > 5)
            continue;
        ++tried;
        auto a = extremal_exact(p, 3, ExtremalMethod::bnb), b = extremal_exact(p, 3, ExtremalMethod::exhaustive);
        CHECK(a.value == b.value);
        CHECK(a.maximizer == b.maximizer);
        check_result(p, a);
    }
}

TEST_CASE("extremal values are monotone in n, symmetric, and bounded")
{
    std::mt19937_64 rng(43);
    for (int i = 0 ; i < 12 ; ++i) {
        auto p = testing::random_pattern(rng, 2, 3, 0.5);
        std::uint64_t previous = 0;
        for (std::uint32_t n = 1 ; n <= 4 ; ++n) {
            auto v = extremal_exact(p, n).value;
            CHECK(v >= previous);
            CHECK(v <= n * n);
            CHECK((v == n * n) == ! contains(p, testing::all_ones(n)));
            CHECK(extremal_exact(transform(p, Transform::transpose), n).value == v);
            CHECK(extremal_exact(transform(p, Transform::rot180), n).value == v);
            previous = v;
        }
    }
}

TEST_CASE("greedy lower bounds")
{
    auto p = identity_pattern(2);
    auto g = extremal_greedy_lb(p, 10, 1);
    check_result(p, g);
    CHECK(g.value >= 10);
    CHECK(g.value <= 19);
    CHECK(extremal_greedy_lb(p, 10, 1).maximizer == g.maximizer);

    CHECK(extremal_greedy_lb(one_row_pattern(2), 10, 5).value == 10);
    CHECK(extremal_greedy_lb(one_row_pattern(2), 1, 5).value == 1);
    CHECK(extremal_greedy_lb(Pattern(1, 1, {{1, 1}}), 1, 5).value == 0);

    std::mt19937_64 rng(47);
    for (int i = 0 ; i < 20 ; ++i) {
        auto q = testing::random_pattern(rng, 3, 3, 0.4);
        auto lb = extremal_greedy_lb(q, 4, i);
        check_result(q, lb);
        CHECK(lb.value <= extremal_exact(q, 4).value);
    }

    auto wide = extremal_greedy_lb(identity_pattern(3), 80, 2);
    check_result(identity_pattern(3), wide);
}

TEST_CASE("extremal refusals")
{
    CHECK_THROWS_AS(extremal_exact(Pattern(2, 2, {}), 3), DegeneratePatternError);
    CHECK_THROWS_AS(extremal_exact(identity_pattern(2), 9), ScaleError);
    CHECK_THROWS_AS(extremal_exact(identity_pattern(2), 5, ExtremalMethod::exhaustive), ScaleError);
    CHECK_THROWS_AS(extremal_exact(identity_pattern(2), 0), BoundsError);
    CHECK_THROWS_AS(extremal_greedy_lb(identity_pattern(2), 513, 0), ScaleError);
    CHECK_THROWS_AS(parse_method("simplex"), BoundsError);
    CHECK(parse_method("greedy") == ExtremalMethod::greedy);
}

TEST_CASE("join")
{
    auto i2 = identity_pattern(2);
    CHECK(join(i2, i2) == identity_pattern(3));

    std::mt19937_64 rng(53);
    int joined = 0;
    while (joined < 50) {
        auto a = testing::random_pattern(rng, 3, 3), b = testing::random_pattern(rng, 3, 3);
        if (! a.at(a.rows(), a.cols()) || ! b.at(1, 1)) {
            CHECK_THROWS_AS(join(a, b), JoinPreconditionError);
            continue;
        }
        ++joined;
        auto j = join(a, b);
        CHECK(j.weight() == a.weight() + b.weight() - 1);
        CHECK(j.rows() == a.rows() + b.rows() - 1);
        CHECK(j.cols() == a.cols() + b.cols() - 1);
    }
}
