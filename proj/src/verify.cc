#include <zom/verify.hh>

#include "parallel.hh"

#include <algorithm>
#include <functional>
#include <random>

using std::span;
using std::string;
using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace zom
{
    auto mode_name(VerifyMode mode) -> std::string_view
    {
        return mode == VerifyMode::exhaustive ? "exhaustive" : "sampled";
    }

    Construction::Construction(const ConstructionParams & params, uint64_t cap) :
        _params(params),
        _matrix(build_construction(params, cap)),
        _index(_matrix),
        _arithmetic(params)
    {
    }

    namespace
    {
        struct Tally
        {
            std::size_t cap = 0;
            uint64_t examined = 0;
            uint64_t violation_count = 0;
            uint64_t cost = 0;
            vector<vector<uint64_t>> violations;

            auto record(bool ok, std::initializer_list<uint64_t> witness) -> void
            {
                ++examined;
                if (! ok) {
                    ++violation_count;
                    if (violations.size() < cap)
                        violations.emplace_back(witness);
                }
            }

            auto absorb(Tally && other) -> void
            {
                examined += other.examined;
                violation_count += other.violation_count;
                cost += other.cost;
                for (auto & v : other.violations)
                    if (violations.size() < cap)
                        violations.push_back(std::move(v));
            }
        };

        /**
         * A property checked anchor by anchor: exhaustive mode visits every
         * anchor in 1..anchors, sampled mode visits anchors drawn from a
         * seeded generator. Each visit examines every qualifying
         * configuration hanging off its anchor.
         */
        struct AnchorCheck
        {
            string id;
            uint64_t anchors = 0;
            std::function<long double ()> exhaustive_cost;
            std::function<void (uint64_t, Tally &)> visit;
            std::function<uint64_t (std::mt19937_64 &)> draw;
            std::function<void (uint64_t, Tally &)> visit_drawn;
        };

        constexpr uint64_t anchor_chunk = 256;
        constexpr uint64_t sample_batch = 1024;

        auto run(const AnchorCheck & check, const VerifyOptions & options) -> VerificationReport
        {
            Tally total;
            total.cap = options.max_witnesses;

            if (options.mode == VerifyMode::exhaustive) {
                auto cost = check.exhaustive_cost ? check.exhaustive_cost() : 0.0L;
                if (cost > static_cast<long double>(options.exhaustive_budget))
                    throw ScaleError("exhaustive check " + check.id + " needs about " + std::to_string(static_cast<double>(cost))
                            + " checks, above the budget of " + std::to_string(options.exhaustive_budget));

                auto chunks = (check.anchors + anchor_chunk - 1) / anchor_chunk;
                auto per_round = std::max<uint64_t>(1, options.threads) * 4;
                for (uint64_t first = 0 ; first < chunks ; first += per_round) {
                    auto count = std::min(per_round, chunks - first);
                    vector<Tally> tallies(count);
                    innards::parallel_for(count, options.threads, [&] (std::size_t i) {
                        tallies[i].cap = options.max_witnesses;
                        auto begin = (first + i) * anchor_chunk + 1;
                        auto end = std::min(check.anchors, begin + anchor_chunk - 1);
                        for (auto a = begin ; a <= end ; ++a)
                            check.visit(a, tallies[i]);
                    });
                    for (auto & t : tallies)
                        total.absorb(std::move(t));
                    if (total.cost > options.exhaustive_budget)
                        throw ScaleError("exhaustive check " + check.id + " exceeded the budget of "
                                + std::to_string(options.exhaustive_budget) + " search nodes");
                }
            }
            else {
                std::mt19937_64 rng(options.seed);
                auto & visit = check.visit_drawn ? check.visit_drawn : check.visit;
                uint64_t drawn = 0;
                auto max_draws = std::max<uint64_t>(options.samples, 1 << 16) * 64;
                while (total.examined < options.samples && drawn < max_draws) {
                    vector<uint64_t> batch(sample_batch);
                    for (auto & a : batch)
                        a = check.draw(rng);
                    drawn += sample_batch;

                    vector<Tally> tallies(batch.size());
                    innards::parallel_for(batch.size(), options.threads, [&] (std::size_t i) {
                        tallies[i].cap = options.max_witnesses;
                        visit(batch[i], tallies[i]);
                    });
                    for (auto & t : tallies)
                        total.absorb(std::move(t));
                }
            }

            VerificationReport report;
            report.property = check.id;
            report.mode = options.mode;
            if (options.mode == VerifyMode::sampled) {
                report.sample_budget = options.samples;
                report.seed = options.seed;
            }
            report.examined = total.examined;
            report.violation_count = total.violation_count;
            report.violations = std::move(total.violations);
            return report;
        }

        auto uniform_anchor(uint64_t count) -> std::function<uint64_t (std::mt19937_64 &)>
        {
            return [count] (std::mt19937_64 & rng) {
                return std::uniform_int_distribution<uint64_t>(1, count)(rng);
            };
        }

        auto prefix_equal(const vector<uint32_t> & x, const vector<uint32_t> & y, uint32_t r) -> bool
        {
            return std::equal(x.begin(), x.begin() + (r - 1), y.begin());
        }

        auto part1(const Construction & con) -> AnchorCheck
        {
            auto & ar = con.arithmetic();
            auto n = con.params().n;
            AnchorCheck check;
            check.id = "1";
            check.anchors = n;
            check.exhaustive_cost = [n] {
                auto x = static_cast<long double>(n);
                return x * (x - 1) * (x - 2) / 6;
            };
            auto triple = [&ar] (uint64_t a, uint64_t b, uint64_t c, Tally & tally) {
                tally.record(ar.type(a, c) <= ar.type(b, c), {a, b, c});
            };
            check.visit = [n, triple] (uint64_t a, Tally & tally) {
                for (auto b = a + 1 ; b <= n ; ++b)
                    for (auto c = b + 1 ; c <= n ; ++c)
                        triple(a, b, c, tally);
            };
            check.draw = [n] (std::mt19937_64 & rng) {
                std::uniform_int_distribution<uint64_t> pick(1, n);
                uint64_t v[3];
                do {
                    v[0] = pick(rng);
                    v[1] = pick(rng);
                    v[2] = pick(rng);
                } while (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]);
                std::sort(v, v + 3);
                return v[0] | (v[1] << 21) | (v[2] << 42);
            };
            check.visit_drawn = [triple] (uint64_t code, Tally & tally) {
                constexpr uint64_t mask = (uint64_t{1} << 21) - 1;
                triple(code & mask, (code >> 21) & mask, code >> 42, tally);
            };
            return check;
        }

        auto part2(const Construction & con) -> AnchorCheck
        {
            auto & h = con.index();
            auto & ar = con.arithmetic();
            AnchorCheck check;
            check.id = "2";
            check.anchors = con.params().n;
            check.exhaustive_cost = [&h, n = con.params().n] {
                long double cost = 0;
                for (uint64_t c = 1 ; c <= n ; ++c) {
                    long double d = h.col(static_cast<uint32_t>(c)).size();
                    cost += d * (d - 1) / 2;
                }
                return cost;
            };
            check.visit = [&h, &ar] (uint64_t c, Tally & tally) {
                auto rows = h.col(static_cast<uint32_t>(c));
                for (std::size_t x = 0 ; x < rows.size() ; ++x)
                    for (std::size_t y = x + 1 ; y < rows.size() ; ++y) {
                        uint64_t a = rows[x], b = rows[y];
                        auto i = ar.decode_offset(a, c), j = ar.decode_offset(b, c);
                        auto r = ar.type(a, b);
                        bool ok = i && j && prefix_equal(*i, *j, r) && (*i)[r - 1] < (*j)[r - 1]
                            && ar.first_difference(a, b) == std::pair{r, (*i)[r - 1]};
                        tally.record(ok, {a, b, c});
                    }
            };
            check.draw = uniform_anchor(check.anchors);
            return check;
        }

        auto part3(const Construction & con) -> AnchorCheck
        {
            auto & h = con.index();
            auto & ar = con.arithmetic();
            AnchorCheck check;
            check.id = "3";
            check.anchors = con.params().n;
            check.exhaustive_cost = [&h, n = con.params().n] {
                long double cost = 0;
                for (uint64_t a = 1 ; a <= n ; ++a) {
                    long double d = h.row(static_cast<uint32_t>(a)).size();
                    cost += d * (d - 1) / 2;
                }
                return cost;
            };
            check.visit = [&h, &ar] (uint64_t a, Tally & tally) {
                auto cols = h.row(static_cast<uint32_t>(a));
                for (std::size_t x = 0 ; x < cols.size() ; ++x)
                    for (std::size_t y = x + 1 ; y < cols.size() ; ++y) {
                        uint64_t c = cols[x], d = cols[y];
                        auto i = ar.decode_offset(a, c), j = ar.decode_offset(a, d);
                        auto r = ar.type(c, d);
                        bool ok = i && j && prefix_equal(*i, *j, r) && (*i)[r - 1] > (*j)[r - 1]
                            && ar.first_difference(c, d) == std::pair{r, (*j)[r - 1]};
                        tally.record(ok, {a, c, d});
                    }
            };
            check.draw = uniform_anchor(check.anchors);
            return check;
        }

        /// Parts 4 and 5 share their anchor (the last column d) and the
        /// rows a < b meeting it; part 5 adds a column c0 < c1 in row a.
        auto part45(const Construction & con, int part) -> AnchorCheck
        {
            auto & h = con.index();
            auto & ar = con.arithmetic();
            AnchorCheck check;
            check.id = std::to_string(part);
            check.anchors = con.params().n;
            check.exhaustive_cost = [&h, part, n = con.params().n] {
                long double cost = 0;
                for (uint64_t d = 1 ; d <= n ; ++d) {
                    auto rows = h.col(static_cast<uint32_t>(d));
                    for (std::size_t x = 0 ; x < rows.size() ; ++x)
                        for (std::size_t y = x + 1 ; y < rows.size() ; ++y) {
                            long double da = h.row(rows[x]).size(), db = h.row(rows[y]).size();
                            cost += part == 4 ? da * db : da * da * db;
                        }
                }
                return cost;
            };
            check.visit = [&h, &ar, part] (uint64_t d, Tally & tally) {
                auto rows = h.col(static_cast<uint32_t>(d));
                for (std::size_t x = 0 ; x < rows.size() ; ++x)
                    for (std::size_t y = x + 1 ; y < rows.size() ; ++y) {
                        uint64_t a = rows[x], b = rows[y];
                        auto tab = ar.type(a, b);
                        for (uint64_t c2 : h.row(static_cast<uint32_t>(a))) {
                            if (c2 >= d)
                                break;
                            auto t2 = ar.type(c2, d);
                            for (uint64_t c1 : h.row(static_cast<uint32_t>(b))) {
                                if (c1 >= c2)
                                    break;
                                if (part == 4) {
                                    auto t1 = ar.type(c1, d);
                                    tally.record(! (tab == t1 && t1 == t2), {a, b, c1, c2, d});
                                    continue;
                                }
                                for (uint64_t c0 : h.row(static_cast<uint32_t>(a))) {
                                    if (c0 >= c1)
                                        break;
                                    auto t0 = ar.type(c0, d);
                                    tally.record(! (tab <= t0) || t0 < t2, {a, b, c0, c1, c2, d});
                                }
                            }
                        }
                    }
            };
            check.draw = uniform_anchor(check.anchors);
            return check;
        }

        /// Reflections of parts 4 and 5, anchored at the top row a1 whose
        /// two 1s are the columns c < d.
        auto reflected45(const Construction & con, int part) -> AnchorCheck
        {
            auto & h = con.index();
            auto & ar = con.arithmetic();
            AnchorCheck check;
            check.id = "r" + std::to_string(part);
            check.anchors = con.params().n;
            check.exhaustive_cost = [&h, part, n = con.params().n] {
                long double cost = 0;
                for (uint64_t a = 1 ; a <= n ; ++a) {
                    auto cols = h.row(static_cast<uint32_t>(a));
                    for (std::size_t x = 0 ; x < cols.size() ; ++x)
                        for (std::size_t y = x + 1 ; y < cols.size() ; ++y) {
                            long double dc = h.col(cols[x]).size(), dd = h.col(cols[y]).size();
                            cost += part == 4 ? dc * dd : dd * dd * dc;
                        }
                }
                return cost;
            };
            check.visit = [&h, &ar, part] (uint64_t a1, Tally & tally) {
                auto cols = h.row(static_cast<uint32_t>(a1));
                for (std::size_t x = 0 ; x < cols.size() ; ++x)
                    for (std::size_t y = x + 1 ; y < cols.size() ; ++y) {
                        uint64_t c = cols[x], d = cols[y];
                        auto tcd = ar.type(c, d);
                        for (uint64_t a2 : h.col(static_cast<uint32_t>(d))) {
                            if (a2 <= a1)
                                continue;
                            auto t2 = ar.type(a1, a2);
                            for (uint64_t a3 : h.col(static_cast<uint32_t>(c))) {
                                if (a3 <= a2)
                                    continue;
                                if (part == 4) {
                                    auto t3 = ar.type(a1, a3);
                                    tally.record(! (tcd == t3 && t3 == t2), {a1, a2, a3, c, d});
                                    continue;
                                }
                                for (uint64_t a4 : h.col(static_cast<uint32_t>(d))) {
                                    if (a4 <= a3)
                                        continue;
                                    auto t4 = ar.type(a1, a4);
                                    tally.record(! (tcd <= t4) || t4 < t2, {a1, a2, a3, a4, c, d});
                                }
                            }
                        }
                    }
            };
            check.draw = uniform_anchor(check.anchors);
            return check;
        }

        auto lemma(const Construction & con, bool is_p, const VerifyOptions & options) -> AnchorCheck
        {
            auto & h = con.index();
            auto & ar = con.arithmetic();
            AnchorCheck check;
            check.id = is_p ? "P" : "Q";
            check.anchors = con.params().n;
            auto pattern = is_p ? gen_Pt(con.params().t) : gen_Qt(con.params().t);
            auto node_budget = options.mode == VerifyMode::exhaustive ? options.exhaustive_budget : 0;
            check.visit = [&h, &ar, is_p, pattern, node_budget] (uint64_t a, Tally & tally) {
                SearchStats stats;
                SearchOptions search;
                search.node_budget = node_budget;
                search.stats = &stats;
                for_each_occurrence_at_row(pattern, h, static_cast<uint32_t>(a), [&] (const Embedding & e) {
                    uint64_t ra = e.row_map.front(), rb = is_p ? e.row_map[1] : e.row_map.back();
                    uint64_t cc = e.col_map.front(), cd = is_p ? e.col_map.back() : e.col_map[1];
                    auto tab = ar.type(ra, rb), tcd = ar.type(cc, cd);
                    bool hypothesis = is_p ? tab <= tcd : tab >= tcd;
                    tally.record(! hypothesis || (tab == 1 && tcd == 1), {ra, rb, cc, cd});
                }, search);
                tally.cost += stats.nodes;
            };
            check.draw = uniform_anchor(check.anchors);
            return check;
        }
    }

    auto verify_property(int part, const Construction & construction, const VerifyOptions & options) -> VerificationReport
    {
        switch (part) {
            case 1: return run(part1(construction), options);
            case 2: return run(part2(construction), options);
            case 3: return run(part3(construction), options);
            case 4: return run(part45(construction, 4), options);
            case 5: return run(part45(construction, 5), options);
        }
        throw BoundsError("property part must be in 1..5");
    }

    auto verify_reflected_property(int part, const Construction & construction, const VerifyOptions & options)
        -> VerificationReport
    {
        if (part != 4 && part != 5)
            throw BoundsError("reflected property part must be 4 or 5");
        return run(reflected45(construction, part), options);
    }

    auto verify_lemma_P(const Construction & construction, const VerifyOptions & options) -> VerificationReport
    {
        return run(lemma(construction, true, options), options);
    }

    auto verify_lemma_Q(const Construction & construction, const VerifyOptions & options) -> VerificationReport
    {
        return run(lemma(construction, false, options), options);
    }

    auto verify_avoidance(const Construction & construction, const VerifyOptions & options) -> VerificationReport
    {
        SearchStats stats;
        SearchOptions search;
        search.threads = options.threads;
        search.node_budget = options.exhaustive_budget;
        search.stats = &stats;
        auto witness = find_witness(gen_Xt(construction.params().t), construction.index(), search);

        VerificationReport report;
        report.property = "avoidance";
        report.mode = VerifyMode::exhaustive;
        report.examined = stats.nodes;
        if (witness) {
            report.violation_count = 1;
            vector<uint64_t> flat(witness->row_map.begin(), witness->row_map.end());
            flat.insert(flat.end(), witness->col_map.begin(), witness->col_map.end());
            report.violations.push_back(std::move(flat));
        }
        return report;
    }

    auto verify_check(std::string_view id, const Construction & construction, const VerifyOptions & options)
        -> VerificationReport
    {
        if (id.size() == 1 && id[0] >= '1' && id[0] <= '5')
            return verify_property(id[0] - '0', construction, options);
        if (id == "r4" || id == "r5")
            return verify_reflected_property(id[1] - '0', construction, options);
        if (id == "P")
            return verify_lemma_P(construction, options);
        if (id == "Q")
            return verify_lemma_Q(construction, options);
        if (id == "avoidance")
            return verify_avoidance(construction, options);
        throw BoundsError("unknown check '" + string(id) + "'");
    }
}
