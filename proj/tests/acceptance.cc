// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance          run every criterion
//   acceptance 3 7      run the listed criteria

#include <zom/analysis.hh>
#include <zom/construction.hh>
#include <zom/containment.hh>
#include <zom/extremal.hh>
#include <zom/verify.hh>

#include "generators.hh"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace zom;

namespace
{
    using Clock = std::chrono::steady_clock;

    auto seconds_since(Clock::time_point start) -> double
    {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }

    struct Outcome
    {
        bool pass = true;
        std::ostringstream detail;

        auto require(bool condition, const std::string & what) -> void
        {
            if (! condition) {
                pass = false;
                detail << " [failed: " << what << "]";
            }
        }
    };

    // Node budget for the X_3 avoidance search at n = 262144.
    constexpr std::uint64_t avoidance_budget = 1'000'000'000;

    auto construction_exactness(Outcome & o) -> void
    {
        auto start = Clock::now();
        for (auto [t, k, n, w] : {std::tuple{2u, 2u, 256ull, 480ull}, {2u, 3u, 531441ull, 3306744ull}}) {
            auto params = ConstructionParams::make(t, k);
            auto a = build_construction(params);
            o.detail << " t=" << t << ",k=" << k << ": n=" << a.n() << " weight=" << a.weight() << ";";
            o.require(a.n() == n, "side");
            o.require(a.weight() == w, "weight");
            o.require(exact_weight_formula(params) == a.weight(), "formula");
        }
        auto elapsed = seconds_since(start);
        o.detail << " " << elapsed << "s";
        o.require(elapsed < 30, "runtime");
    }

    auto density_bound(Outcome & o) -> void
    {
        auto start = Clock::now();
        auto p23 = ConstructionParams::make(2, 3);
        auto check = density_bound_check(p23);
        auto built = build_construction(p23).weight();
        o.detail << " t=2,k=3: weight=" << check.weight << " bound=" << check.bound << ";";
        o.require(check.bound == BigRational(4782969, 2), "bound value");
        o.require(check.pass && BigRational(BigInt(built)) >= check.bound, "weight below bound");

        auto p32 = ConstructionParams::make(3, 2);
        auto vacuous = density_bound_check(p32);
        auto built32 = build_construction(p32).weight();
        o.detail << " t=3,k=2: bound=" << vacuous.bound << " (vacuous) exact weight=" << built32 << ";";
        o.require(vacuous.bound == 0, "t=3 bound vacuous");
        o.require(vacuous.weight == built32, "t=3 weight");
        auto elapsed = seconds_since(start);
        o.detail << " " << elapsed << "s";
        o.require(elapsed < 120, "runtime");
    }

    auto avoidance(Outcome & o) -> void
    {
        auto start = Clock::now();
        auto a2 = build_construction(ConstructionParams::make(2, 2));
        bool x2 = contains(gen_Xt(2), a2);
        auto first = seconds_since(start);
        o.detail << " X_2 in A_2 (n=256): " << (x2 ? "contained" : "avoided") << " " << first << "s;";
        o.require(! x2, "X_2 avoided");
        o.require(first < 60, "X_2 runtime");

        start = Clock::now();
        auto a3 = build_construction(ConstructionParams::make(3, 2));
        SearchStats stats;
        SearchOptions options;
        options.node_budget = avoidance_budget;
        options.stats = &stats;
        bool x3 = contains(gen_Xt(3), a3, options);
        o.detail << " X_3 in A_3 (n=262144): " << (x3 ? "contained" : "avoided") << " after " << stats.nodes
            << " nodes (budget " << avoidance_budget << ") " << seconds_since(start) << "s";
        o.require(! x3, "X_3 avoided");
    }

    auto appearance(Outcome & o) -> void
    {
        for (std::uint32_t k : {2u, 3u}) {
            auto a = build_construction(ConstructionParams::make(2, k));
            HostIndex host(a);
            bool all = true;
            for (auto [name, p] : {std::pair{"P_2", gen_Pt(2)}, {"Q_2", gen_Qt(2)}}) {
                auto w = find_witness(p, host);
                bool ok = w && is_valid_embedding(p, host, *w);
                all = all && ok;
                o.detail << " " << name << " at k=" << k << ": ";
                if (ok) {
                    o.detail << "rows";
                    for (auto r : w->row_map)
                        o.detail << " " << r;
                    o.detail << " cols";
                    for (auto c : w->col_map)
                        o.detail << " " << c;
                    o.detail << ";";
                }
                else
                    o.detail << "none;";
            }
            if (all)
                return;
        }
        o.require(false, "no validated witnesses at k=2 or k=3");
    }

    auto properties(Outcome & o) -> void
    {
        auto start = Clock::now();
        Construction small(ConstructionParams::make(2, 2));
        VerifyOptions exhaustive;
        for (auto id : {"1", "2", "3", "4", "5", "r4", "r5"}) {
            auto r = verify_check(id, small, exhaustive);
            o.detail << " " << id << ":" << r.examined << "/" << r.violation_count;
            o.require(r.passed() && r.examined > 0, std::string("exhaustive ") + id);
        }
        o.detail << " (t=2,k=2 exhaustive);";

        Construction big(ConstructionParams::make(3, 2));
        VerifyOptions sampled;
        sampled.mode = VerifyMode::sampled;
        sampled.samples = 1'000'000;
        for (auto id : {"1", "2", "3", "4", "5", "r4", "r5"}) {
            auto r = verify_check(id, big, sampled);
            o.detail << " " << id << ":" << r.examined << "/" << r.violation_count;
            o.require(r.passed() && r.examined >= sampled.samples, std::string("sampled ") + id);
        }
        o.detail << " (t=3,k=2 sampled, seed " << sampled.seed << ");";
        auto elapsed = seconds_since(start);
        o.detail << " " << elapsed << "s";
        o.require(elapsed < 300, "runtime");
    }

    auto lemmas(Outcome & o) -> void
    {
        Construction small(ConstructionParams::make(2, 2));
        for (auto id : {"P", "Q"}) {
            auto r = verify_check(id, small);
            o.detail << " " << id << ": " << r.examined << " occurrences, " << r.violation_count << " violations;";
            o.require(r.passed(), std::string("lemma ") + id);
            o.require(r.examined > 0, std::string("occurrences of ") + id);
        }
    }

    auto reduction(Outcome & o) -> void
    {
        for (std::uint32_t t = 2 ; t <= 4 ; ++t) {
            auto chain = reduce_chain(gen_Xt(t), 3);
            if (! chain) {
                o.require(false, "no chain for t=" + std::to_string(t));
                continue;
            }
            o.detail << " t=" << t << ": length " << chain->steps.size() << ", final weight "
                << chain->final_pattern.weight() << ";";
            o.require(chain->steps.size() == 4 * t - 3, "length 4t-3");
            o.require(chain->final_pattern.weight() == 3, "final weight");
            o.require(replays(*chain), "replay");
        }
    }

    auto classification(Outcome & o) -> void
    {
        auto s1 = degeneracy_class(catalog("S1")), s2 = degeneracy_class(catalog("S2"));
        o.require(s1 == 2 && s2 == 2, "S1, S2 class 2");
        o.require(! degeneracy_class(catalog("T")), "T not degenerate");
        o.require(! degeneracy_class(transform(catalog("T"), Transform::transpose)), "transpose(T) not degenerate");
        for (auto name : {"R1", "R2", "S1", "S2", "T"})
            o.require(is_acyclic(catalog(name)), std::string(name) + " acyclic");
        for (std::uint32_t t = 2 ; t <= 5 ; ++t)
            o.require(is_acyclic(gen_Xt(t)), "X_" + std::to_string(t) + " acyclic");
        o.require(! is_acyclic(Pattern(2, 2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}})), "2x2 all-ones cyclic");
        o.detail << " S1 class " << (s1 ? std::to_string(*s1) : "none") << ", S2 class "
            << (s2 ? std::to_string(*s2) : "none") << ", T and transpose(T) NotDegenerate, acyclicity goldens";
    }

    auto oracle_equivalence(Outcome & o) -> void
    {
        std::mt19937_64 rng(20240601);
        std::uniform_int_distribution<std::uint32_t> side(1, 8);
        std::uniform_real_distribution<double> density(0.1, 0.8);
        int disagreements = 0, contained = 0;
        constexpr int instances = 10'000;
        for (int i = 0 ; i < instances ; ++i) {
            auto p = testing::random_pattern(rng, 3, 3, density(rng));
            auto m = testing::random_matrix(rng, side(rng), density(rng));
            bool fast = contains(p, m);
            contained += fast;
            if (fast != contains_naive(p, m))
                ++disagreements;
        }
        o.detail << " " << instances << " instances (seed 20240601), " << contained << " contained, "
            << disagreements << " disagreements";
        o.require(disagreements == 0, "agreement");
    }

    auto extremal_solver(Outcome & o) -> void
    {
        auto i2 = identity_pattern(2);
        o.detail << " Ex(identity(2), n) for n=1..5:";
        for (std::uint32_t n = 1 ; n <= 5 ; ++n) {
            auto r = extremal_exact(i2, n, ExtremalMethod::bnb);
            o.detail << " " << r.value;
            o.require(r.value == 2 * n - 1, "identity(2) at n=" + std::to_string(n));
            o.require(r.maximizer.weight() == r.value && ! contains(i2, r.maximizer), "maximizer");
            if (n <= 3)
                o.require(extremal_exact(i2, n, ExtremalMethod::exhaustive).value == r.value, "exhaustive agreement");
        }
        o.detail << ";";

        std::mt19937_64 rng(7);
        int symmetric = 0;
        std::vector<Pattern> shapes{i2, catalog("R1"), catalog("R2"), one_row_pattern(2)};
        for (int i = 0 ; i < 8 ; ++i)
            shapes.push_back(testing::random_pattern(rng, 3, 3, 0.4));
        for (auto & p : shapes)
            for (std::uint32_t n = 1 ; n <= 4 ; ++n) {
                auto v = extremal_exact(p, n).value;
                bool same = extremal_exact(transform(p, Transform::transpose), n).value == v
                    && extremal_exact(transform(p, Transform::rot180), n).value == v;
                o.require(same, "symmetry");
                symmetric += same;
            }
        o.detail << " symmetry held on " << symmetric << " (pattern, n) cases;";

        int pairs = 0;
        while (pairs < 24) {
            auto a = testing::random_pattern(rng, 2, 3, 0.5), b = testing::random_pattern(rng, 3, 2, 0.5);
            if (! a.at(a.rows(), a.cols()) || ! b.at(1, 1))
                continue;
            auto j = join(a, b);
            auto n = 3 + pairs % 2;
            auto lhs = extremal_exact(j, n).value, rhs = extremal_exact(a, n).value + extremal_exact(b, n).value;
            o.require(lhs <= rhs, "join subadditivity");
            ++pairs;
        }
        o.detail << " join subadditivity held on " << pairs << " pairs at n=3,4";
    }

    struct Criterion
    {
        int id;
        const char * name;
        std::function<void (Outcome &)> run;
    };
}

auto main(int argc, char * argv[]) -> int
{
    std::vector<Criterion> criteria{
        {1, "construction exactness", construction_exactness},
        {2, "density bound", density_bound},
        {3, "avoidance of X_t", avoidance},
        {4, "appearance of P_2 and Q_2", appearance},
        {5, "structural properties", properties},
        {6, "lemmas P and Q", lemmas},
        {7, "reduction certificate", reduction},
        {8, "classification goldens", classification},
        {9, "containment oracle equivalence", oracle_equivalence},
        {10, "extremal solver", extremal_solver}};

    std::vector<int> chosen;
    for (int i = 1 ; i < argc ; ++i)
        chosen.push_back(std::stoi(argv[i]));

    bool all = true;
    for (auto & c : criteria) {
        if (! chosen.empty() && std::find(chosen.begin(), chosen.end(), c.id) == chosen.end())
            continue;
        Outcome o;
        try {
            c.run(o);
        }
        catch (const std::exception & e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "):" << o.detail.str()
            << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
