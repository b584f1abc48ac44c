#include <zom/cli.hh>

#include <zom/analysis.hh>
#include <zom/construction.hh>
#include <zom/containment.hh>
#include <zom/extremal.hh>
#include <zom/io.hh>
#include <zom/verify.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using std::string;
using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace zom
{
    namespace
    {
        using json = nlohmann::ordered_json;
        using Clock = std::chrono::steady_clock;

        constexpr uint64_t default_seed = 20240601;

        struct Common
        {
            unsigned threads = 1;
            string json_path;
            bool timings = false;
        };

        auto add_common(CLI::App * app, Common & common, bool json_option = true) -> void
        {
            app->add_option("--threads", common.threads, "worker threads; results do not depend on this")
                ->check(CLI::Range(1u, 1024u));
            if (json_option)
                app->add_option("--json", common.json_path, "write the JSON report here ('-' for stdout)");
            app->add_flag("--timings", common.timings, "include wall-clock timings in the report");
        }

        class Report
        {
            public:
                Report(string subcommand, json parameters) :
                    _start(Clock::now())
                {
                    _doc["subcommand"] = std::move(subcommand);
                    _doc["version"] = string(tool_version);
                    _doc["parameters"] = std::move(parameters);
                }

                auto seed(uint64_t s) -> void { _doc["seed"] = s; }
                auto results() -> json & { return _doc["results"]; }

                auto emit(const Common & common, std::ostream & out) -> void
                {
                    if (common.timings)
                        _doc["timings"] = json{{"total_seconds",
                            std::chrono::duration<double>(Clock::now() - _start).count()}};
                    if (common.json_path.empty())
                        return;
                    auto text = _doc.dump(2) + "\n";
                    if (common.json_path == "-") {
                        out << text;
                        return;
                    }
                    std::ofstream file(common.json_path);
                    if (! (file << text))
                        throw Error("cannot write report to '" + common.json_path + "'");
                }

            private:
                json _doc;
                Clock::time_point _start;
        };

        auto embedding_json(const Embedding & e) -> json
        {
            return json{{"rows", e.row_map}, {"cols", e.col_map}};
        }

        auto pattern_rows(const Pattern & p) -> json
        {
            json rows = json::array();
            std::istringstream text(format_pattern(p));
            string line;
            std::getline(text, line);
            while (std::getline(text, line))
                rows.push_back(line);
            return rows;
        }

        auto report_json(const VerificationReport & r) -> json
        {
            json j;
            j["property"] = r.property;
            j["mode"] = string(mode_name(r.mode));
            if (r.mode == VerifyMode::sampled) {
                j["sample_budget"] = r.sample_budget;
                j["seed"] = r.seed;
            }
            j["examined"] = r.examined;
            j["violation_count"] = r.violation_count;
            j["violations"] = r.violations;
            j["passed"] = r.passed();
            return j;
        }

        auto step_json(const ReductionStep & s) -> json
        {
            json witness = json::array();
            for (auto & c : s.witness())
                witness.push_back({c.row, c.col});
            return json{{"orientation", string(orientation_name(s.orientation))}, {"removed", s.removed},
                {"single", s.single}, {"partner", s.partner}, {"witness", witness}};
        }

        struct GenConstruction
        {
            uint32_t t = 2, k = 2;
            string output;
            uint64_t cap = default_construction_cap;
        };

        struct GenPattern
        {
            string family, catalog_name;
            uint32_t t = 2;
            string output;
        };

        struct Contains
        {
            string pattern, matrix;
            bool witness = false;
            std::size_t count = 0;
        };

        struct Verify
        {
            uint32_t t = 2, k = 2;
            vector<string> checks{"1", "2", "3", "4", "5", "r4", "r5", "P", "Q", "avoidance"};
            uint64_t samples = 0, seed = default_seed, budget = VerifyOptions{}.exhaustive_budget;
            uint64_t cap = default_construction_cap;
        };

        struct Density
        {
            uint32_t t = 2, k = 2;
        };

        struct Extremal
        {
            string pattern, method = "bnb";
            uint32_t n = 1;
            uint64_t seed = default_seed;
        };

        struct Classify
        {
            string pattern;
        };

        struct Reduce
        {
            string pattern;
            std::size_t target = 3;
        };

        auto run_gen_construction(const GenConstruction & o, const Common & common, std::ostream & out) -> int
        {
            Report report("gen construction", json{{"t", o.t}, {"k", o.k}, {"output", o.output}});
            auto params = ConstructionParams::make(o.t, o.k);
            auto matrix = build_construction(params, o.cap);
            save_sparse_matrix(o.output, matrix);
            report.results() = json{{"n", params.n}, {"weight", matrix.weight()}};
            report.emit(common, out);
            return exit_code::ok;
        }

        auto run_gen_pattern(const GenPattern & o, const Common & common, std::ostream & out) -> int
        {
            if (o.family.empty() == o.catalog_name.empty())
                throw BoundsError("give exactly one of --family and --catalog");
            Report report("gen pattern", json{{"family", o.family}, {"catalog", o.catalog_name}, {"t", o.t},
                {"output", o.output}});
            auto pattern = ! o.catalog_name.empty() ? catalog(o.catalog_name)
                : o.family == "Pt" ? gen_Pt(o.t)
                : o.family == "Qt" ? gen_Qt(o.t)
                : gen_Xt(o.t);
            save_pattern(o.output, pattern);
            report.results() = json{{"rows", pattern.rows()}, {"cols", pattern.cols()}, {"weight", pattern.weight()}};
            report.emit(common, out);
            return exit_code::ok;
        }

        auto run_contains(const Contains & o, Common common, std::ostream & out) -> int
        {
            Report report("contains", json{{"pattern", o.pattern}, {"matrix", o.matrix}, {"witness", o.witness},
                {"count", o.count}});
            auto pattern = load_pattern(o.pattern);
            HostIndex host(load_sparse_matrix(o.matrix));
            SearchStats stats;
            SearchOptions options;
            options.threads = common.threads;
            options.stats = &stats;

            bool contained;
            auto & results = report.results();
            if (o.count > 0) {
                auto found = enumerate_occurrences(pattern, host, o.count, options);
                contained = ! found.empty();
                results["contained"] = contained;
                results["occurrences"] = found.size();
                json list = json::array();
                for (auto & e : found)
                    list.push_back(embedding_json(e));
                results["embeddings"] = list;
            }
            else {
                auto witness = find_witness(pattern, host, options);
                contained = witness.has_value();
                results["contained"] = contained;
                if (o.witness)
                    results["witness"] = witness ? embedding_json(*witness) : json(nullptr);
            }
            results["nodes"] = stats.nodes;

            if (common.json_path.empty() && (o.witness || o.count > 0))
                common.json_path = "-";
            report.emit(common, out);
            return contained ? exit_code::ok : exit_code::avoided;
        }

        auto run_verify(const Verify & o, const Common & common, std::ostream & out, std::ostream & err) -> int
        {
            bool sampled = o.samples > 0;
            Report report("verify", json{{"t", o.t}, {"k", o.k}, {"checks", o.checks},
                {"mode", sampled ? "sampled" : "exhaustive"}, {"samples", o.samples}, {"budget", o.budget}});
            if (sampled)
                report.seed(o.seed);

            VerifyOptions options;
            options.mode = sampled ? VerifyMode::sampled : VerifyMode::exhaustive;
            options.samples = o.samples;
            options.seed = o.seed;
            options.exhaustive_budget = o.budget;
            options.threads = common.threads;

            Construction construction(ConstructionParams::make(o.t, o.k), o.cap);
            json checks = json::array();
            bool all_passed = true;
            for (auto & id : o.checks) {
                auto r = verify_check(id, construction, options);
                all_passed = all_passed && r.passed();
                err << "check " << id << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.examined
                    << " examined, " << r.violation_count << " violations)\n";
                checks.push_back(report_json(r));
            }
            report.results() = json{{"n", construction.params().n}, {"weight", construction.matrix().weight()},
                {"all_passed", all_passed}, {"checks", checks}};
            report.emit(common, out);
            return all_passed ? exit_code::ok : exit_code::avoided;
        }

        auto run_density(const Density & o, const Common & common, std::ostream & out) -> int
        {
            Report report("density", json{{"t", o.t}, {"k", o.k}});
            auto params = ConstructionParams::make(o.t, o.k);
            auto check = density_bound_check(params);
            report.results() = json{{"n", params.n}, {"weight", check.weight.str()}, {"bound", check.bound.str()},
                {"vacuous", check.bound == 0}, {"pass", check.pass}};
            report.emit(common, out);
            return check.pass ? exit_code::ok : exit_code::avoided;
        }

        auto run_extremal(const Extremal & o, const Common & common, std::ostream & out) -> int
        {
            auto method = parse_method(o.method);
            Report report("extremal", json{{"pattern", o.pattern}, {"n", o.n}, {"method", o.method}});
            if (method == ExtremalMethod::greedy)
                report.seed(o.seed);
            auto pattern = load_pattern(o.pattern);
            auto result = method == ExtremalMethod::greedy ? extremal_greedy_lb(pattern, o.n, o.seed)
                : extremal_exact(pattern, o.n, method);
            report.results() = json{{"value", result.value}, {"exact", method != ExtremalMethod::greedy},
                {"maximizer", result.maximizer.bit_string()}, {"nodes_explored", result.nodes_explored}};
            report.emit(common, out);
            return exit_code::ok;
        }

        auto run_classify(const Classify & o, const Common & common, std::ostream & out) -> int
        {
            Report report("classify", json{{"pattern", o.pattern}});
            auto pattern = load_pattern(o.pattern);
            auto cls = degeneracy_class(pattern);
            report.results() = json{{"rows", pattern.rows()}, {"cols", pattern.cols()}, {"weight", pattern.weight()},
                {"light", is_light(pattern)}, {"permutation", is_permutation(pattern)},
                {"acyclic", is_acyclic(pattern)}, {"degeneracy", cls ? json(*cls) : json("NotDegenerate")}};
            report.emit(common, out);
            return exit_code::ok;
        }

        auto run_reduce(const Reduce & o, const Common & common, std::ostream & out) -> int
        {
            Report report("reduce", json{{"pattern", o.pattern}, {"target_weight", o.target}});
            auto pattern = load_pattern(o.pattern);
            auto chain = reduce_chain(pattern, o.target);
            auto & results = report.results();
            results["found"] = chain.has_value();
            if (chain) {
                json steps = json::array();
                for (auto & s : chain->steps)
                    steps.push_back(step_json(s));
                results["length"] = chain->steps.size();
                results["implied_exponent"] = chain->implied_exponent();
                results["steps"] = steps;
                results["final"] = pattern_rows(chain->final_pattern);
                results["final_weight"] = chain->final_pattern.weight();
            }
            report.emit(common, out);
            return chain ? exit_code::ok : exit_code::avoided;
        }
    }

    auto run_cli(const vector<string> & args, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app{"Forbidden 0-1 matrix toolkit", "zom"};
        app.require_subcommand(1);
        app.set_version_flag("--version", string(tool_version));
        Common common;

        auto gen = app.add_subcommand("gen", "write a construction matrix or a pattern");
        gen->require_subcommand(1);
        GenConstruction gc;
        auto gen_construction = gen->add_subcommand("construction", "the avoiding construction A_t");
        gen_construction->add_option("--t", gc.t)->required();
        gen_construction->add_option("--k", gc.k)->required();
        gen_construction->add_option("-o,--output", gc.output)->required();
        gen_construction->add_option("--cap", gc.cap, "largest side that will be built");
        add_common(gen_construction, common);

        GenPattern gp;
        auto gen_pattern = gen->add_subcommand("pattern", "a pattern family member or a catalog pattern");
        gen_pattern->add_option("--family", gp.family)->check(CLI::IsMember({"Pt", "Qt", "Xt"}));
        gen_pattern->add_option("--catalog", gp.catalog_name, "R1, R2, S1, S2, T, identity(k), one_row(l)");
        gen_pattern->add_option("--t", gp.t);
        gen_pattern->add_option("-o,--output", gp.output)->required();
        add_common(gen_pattern, common);

        Contains co;
        auto contains_cmd = app.add_subcommand("contains", "does the matrix contain the pattern? exit 0 if so, 1 if not");
        contains_cmd->add_option("--pattern", co.pattern)->required();
        contains_cmd->add_option("--matrix", co.matrix)->required();
        contains_cmd->add_flag("--witness", co.witness, "report the first embedding");
        contains_cmd->add_option("--count", co.count, "enumerate up to this many embeddings")->check(CLI::PositiveNumber);
        add_common(contains_cmd, common);

        Verify ve;
        auto verify_cmd = app.add_subcommand("verify", "check the structural properties of the construction");
        verify_cmd->add_option("--t", ve.t)->required();
        verify_cmd->add_option("--k", ve.k)->required();
        verify_cmd->add_option("--checks", ve.checks)->delimiter(',')
            ->check(CLI::IsMember({"1", "2", "3", "4", "5", "r4", "r5", "P", "Q", "avoidance"}));
        verify_cmd->add_option("--samples", ve.samples, "sample this many configurations instead of all");
        verify_cmd->add_option("--seed", ve.seed);
        verify_cmd->add_option("--budget", ve.budget, "largest exhaustive check or search tree allowed");
        verify_cmd->add_option("--cap", ve.cap, "largest side that will be built");
        add_common(verify_cmd, common);

        Density de;
        auto density_cmd = app.add_subcommand("density", "exact weight against the density bound");
        density_cmd->add_option("--t", de.t)->required();
        density_cmd->add_option("--k", de.k)->required();
        add_common(density_cmd, common);

        Extremal ex;
        auto extremal_cmd = app.add_subcommand("extremal", "Ex(P, n) exactly, or a greedy lower bound");
        extremal_cmd->add_option("--pattern", ex.pattern)->required();
        extremal_cmd->add_option("--n", ex.n)->required();
        extremal_cmd->add_option("--method", ex.method)->check(CLI::IsMember({"bnb", "exhaustive", "greedy"}));
        extremal_cmd->add_option("--seed", ex.seed);
        add_common(extremal_cmd, common);

        Classify cl;
        auto classify_cmd = app.add_subcommand("classify", "lightness, permutation, acyclicity, degeneracy class");
        classify_cmd->add_option("--pattern", cl.pattern)->required();
        add_common(classify_cmd, common);

        Reduce re;
        auto reduce_cmd = app.add_subcommand("reduce", "shortest column/row removal chain");
        reduce_cmd->add_option("--pattern", re.pattern)->required();
        reduce_cmd->add_option("--target-weight", re.target)->check(CLI::PositiveNumber);
        add_common(reduce_cmd, common);

        try {
            vector<string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::ParseError & e) {
            auto code = app.exit(e, out, err);
            return code == 0 ? exit_code::ok : exit_code::usage;
        }

        // Commands with no --json still print their report when asked for
        // nothing else, so a bare run is never silent.
        auto defaulted = [&] (CLI::App * sub) {
            if (common.json_path.empty() && sub != contains_cmd && sub != gen_construction && sub != gen_pattern)
                common.json_path = "-";
        };

        try {
            if (gen_construction->parsed())
                return run_gen_construction(gc, common, out);
            if (gen_pattern->parsed())
                return run_gen_pattern(gp, common, out);
            if (contains_cmd->parsed())
                return run_contains(co, common, out);
            for (auto sub : {verify_cmd, density_cmd, extremal_cmd, classify_cmd, reduce_cmd})
                if (sub->parsed())
                    defaulted(sub);
            if (verify_cmd->parsed())
                return run_verify(ve, common, out, err);
            if (density_cmd->parsed())
                return run_density(de, common, out);
            if (extremal_cmd->parsed())
                return run_extremal(ex, common, out);
            if (classify_cmd->parsed())
                return run_classify(cl, common, out);
            if (reduce_cmd->parsed())
                return run_reduce(re, common, out);
        }
        catch (const ScaleFailure & e) {
            err << "zom: " << e.what() << "\n";
            return exit_code::scale;
        }
        catch (const Error & e) {
            err << "zom: " << e.what() << "\n";
            return exit_code::usage;
        }
        catch (const std::exception & e) {
            err << "zom: internal error: " << e.what() << "\n";
            return exit_code::failure;
        }
        return exit_code::usage;
    }
}
