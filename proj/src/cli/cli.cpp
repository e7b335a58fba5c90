#include "boolnl/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "boolnl/analysis.hpp"
#include "boolnl/errors.hpp"
#include "boolnl/report.hpp"
#include "boolnl/search.hpp"

#ifndef BOOLNL_DEFAULT_DATA_DIR
#define BOOLNL_DEFAULT_DATA_DIR "data"
#endif

namespace boolnl::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Globals {
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out_dir;
    std::string format = "csv";
    std::string data_dir = BOOLNL_DEFAULT_DATA_DIR;
};

struct PlanFlags {
    bool exhaustive = false;
    bool allow_large = false;
    double fraction = 0;
    std::uint64_t samples = 0;
    int enumerate_below = 0;
};

struct AnalyzeFlags {
    std::string op;
    std::string kind = "single-point-mid";
    int n = 4;
    std::uint64_t pairs_per_cell = 10000;
    PlanFlags plan;
};

struct SearchFlags {
    std::string algo = "ls";
    int fitness = 2;
    std::vector<std::string> ops{"2bit/bit"};
    int n = 8;
    std::size_t runs = 30;
    std::uint64_t budget = 500000;
    bool no_restart = false;
    bool canonical = false;
    bool full_eval = false;
    std::string revert_mode = "chain";
    std::string crossover = "uniform";
    std::string ga_mutations = "bit/2bit/mixing";
    std::size_t population = 100;
    double mutation_prob = 0.5;
    std::size_t trajectory_every = 1;
};

struct ReproduceFlags {
    std::string table = "all";
    std::uint64_t pairs_per_cell = 100000;
    double fraction = 0.01;
    int enumerate_below = 5;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_plan_flags(CLI::App* app, PlanFlags& p) {
    app->add_flag("--exhaustive", p.exhaustive, "Walk the whole function space (default for n <= 4)");
    app->add_flag("--allow-large-exhaustive", p.allow_large, "Permit an exhaustive walk at n = 5");
    app->add_option("--sample-fraction", p.fraction, "Uniform sample as a fraction of all functions");
    app->add_option("--samples", p.samples, "Uniform sample size");
    app->add_option("--enumerate-below", p.enumerate_below, "Enumerate every function with nl below this value");
}

analysis::SamplePlan make_plan(const PlanFlags& p, int n, const Globals& g) {
    const bool sampled = p.fraction > 0 || p.samples > 0 || p.enumerate_below > 0;
    if (p.exhaustive && sampled) throw UsageError("--exhaustive cannot be combined with sampling flags");
    if (p.fraction > 0 && p.samples > 0) throw UsageError("give either --sample-fraction or --samples");
    analysis::SamplePlan plan;
    if (sampled) {
        plan = p.fraction > 0 ? analysis::SamplePlan::sampled_fraction(n, p.fraction, g.seed, g.threads)
                              : analysis::SamplePlan::sampled(p.samples, g.seed, g.threads);
        plan.enumerate_below_nl = p.enumerate_below;
    } else {
        if (!p.exhaustive && n > 4) throw UsageError("n > 4 needs --sample-fraction or --samples");
        plan = analysis::SamplePlan::exhaustive(g.threads);
        plan.allow_large_exhaustive = p.allow_large;
    }
    plan.validate(n);
    return plan;
}

fs::path output_dir(const Globals& g) {
    if (!g.out_dir.empty()) return g.out_dir;
    if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
    return ".";
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Writer {
public:
    Writer(const Globals& g, std::vector<std::string> args, std::ostream& out)
        : dir_(output_dir(g)), globals_(g), args_(std::move(args)), out_(out) {}

    void primary(const std::string& name, const std::string& content) {
        write_file(dir_ / name, content);
        files_.push_back(name);
        out_ << "wrote " << (dir_ / name).string() << '\n';
    }

    void meta(const std::string& stem, const json& config) {
        json j{{"tool", "boolnl"},
               {"version", kVersion},
               {"arguments", args_},
               {"seed", globals_.seed},
               {"threads", globals_.threads},
               {"format", globals_.format},
               {"config", config},
               {"outputs", files_},
               {"created", timestamp()}};
        write_file(dir_ / (stem + ".meta.json"), j.dump(2) + "\n");
        files_.clear();
    }

    bool json_format() const { return globals_.format == "json"; }

private:
    fs::path dir_;
    const Globals& globals_;
    std::vector<std::string> args_;
    std::ostream& out_;
    std::vector<std::string> files_;
};

json plan_config(const analysis::SamplePlan& plan) {
    return {{"plan", plan.describe()}, {"pairs_per_cell", plan.pairs_per_cell}};
}

MutationKind need_kind(const std::string& text) {
    const auto kind = parse_kind(text);
    if (!kind) throw UsageError("unknown operator '" + text + "'");
    return *kind;
}

/// Writes either the table view or the JSON document, plus the sidecar.
void emit(Writer& w, const std::string& stem, const report::Grid& grid, const std::string& json_text, json config) {
    if (w.json_format()) {
        w.primary(stem + ".json", json_text);
    } else {
        w.primary(stem + ".csv", report::to_csv(grid));
    }
    w.meta(stem, config);
}

int cmd_analyze(const std::string& study, const AnalyzeFlags& f, const Globals& g, Writer& w) {
    const std::string n_tag = "_n" + std::to_string(f.n);
    if (study == "consistency") {
        const auto kind = need_kind(f.op);
        const auto plan = make_plan(f.plan, f.n, g);
        const auto r = analysis::consistency_study(kind, f.n, plan);
        const std::string name(kind_name(kind));
        const std::string stem = (kind == MutationKind::BitSet ? "table2_" : "consistency_") + name + n_tag;
        auto config = plan_config(plan);
        config["study"] = study;
        config["operator"] = name;
        config["n"] = f.n;
        emit(w, stem, report::consistency_grid(r), report::to_json(r), config);
        return kOk;
    }
    if (study == "transitions") {
        const auto kind = need_kind(f.op);
        const auto plan = make_plan(f.plan, f.n, g);
        const auto t = analysis::transition_study(kind, f.n, plan);
        const std::string name(kind_name(kind));
        std::string stem = "transitions_" + name + n_tag;
        if (kind == MutationKind::BitFlip || kind == MutationKind::TwoBitFlip) stem = "table3_" + name + n_tag;
        if (kind == MutationKind::Rotation) stem = "table4_rot" + n_tag;
        auto config = plan_config(plan);
        config["study"] = study;
        config["operator"] = name;
        config["n"] = f.n;
        emit(w, stem, report::transition_grid(t), report::to_json(t), config);
        return kOk;
    }
    if (study == "reachability") {
        const auto plan = make_plan(f.plan, f.n, g);
        const auto c = analysis::reachability_study(f.n, plan);
        const bool exhaustive = plan.mode == analysis::SamplePlan::Mode::Exhaustive;
        const std::string stem = (exhaustive ? "table5" : "table6") + n_tag;
        auto config = plan_config(plan);
        config["study"] = study;
        config["n"] = f.n;
        emit(w, stem, report::reachability_grid(c, !exhaustive), report::to_json(c), config);
        return kOk;
    }
    if (study == "crossover") {
        const auto kind = parse_crossover(f.kind);
        if (!kind) throw UsageError("unknown crossover '" + f.kind + "'");
        if (f.plan.fraction > 0 || f.plan.samples > 0 || f.plan.enumerate_below > 0) {
            throw UsageError("crossover studies take --pairs-per-cell, not sampling flags");
        }
        auto plan = f.plan.exhaustive ? analysis::SamplePlan::exhaustive(g.threads)
                                      : analysis::SamplePlan::sampled(0, g.seed, g.threads);
        plan.pairs_per_cell = f.pairs_per_cell;
        const auto m = analysis::crossover_study(*kind, f.n, plan);
        std::string stem = "crossover_" + std::string(crossover_name(*kind)) + n_tag;
        if (*kind == CrossoverKind::SinglePointMid) stem = "table7_singlepoint" + n_tag;
        if (*kind == CrossoverKind::UniformEvenOdd) stem = "table8_uniform" + n_tag;
        auto config = plan_config(plan);
        config["study"] = study;
        config["kind"] = crossover_name(*kind);
        config["n"] = f.n;
        emit(w, stem, report::crossover_grid(m), report::to_json(m), config);
        return kOk;
    }
    throw UsageError("unknown study '" + study + "'");
}

int cmd_census(int n, const PlanFlags& p, const Globals& g, Writer& w) {
    const auto plan = make_plan(p, n, g);
    const auto c = analysis::nl_census(n, plan);
    auto config = plan_config(plan);
    config["n"] = n;
    emit(w, "census_n" + std::to_string(n), report::census_grid(c), report::to_json(c), config);
    return kOk;
}

std::vector<search::GaMutation> parse_ga_mutations(const std::string& text) {
    std::vector<search::GaMutation> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, '/')) {
        if (part == "bit" || part == "bitflip") {
            out.push_back(search::GaMutation::BitFlip);
        } else if (part == "2bit" || part == "2bitflip") {
            out.push_back(search::GaMutation::TwoBitFlip);
        } else if (part == "mixing" || part == "mix") {
            out.push_back(search::GaMutation::Mixing);
        } else {
            throw UsageError("unknown GA mutation '" + part + "'");
        }
    }
    return out;
}

int cmd_search(const SearchFlags& f, const Globals& g, Writer& w) {
    if (f.runs == 0) throw UsageError("--runs must be at least 1");
    if (f.fitness != 1 && f.fitness != 2) throw UsageError("--fitness must be 1 or 2");
    const auto fitness = f.fitness == 1 ? FitnessKind::Nonlinearity : FitnessKind::MaxCountRefined;
    const std::string fit_tag = "f" + std::to_string(f.fitness);
    std::vector<search::ExperimentEntry> entries;
    if (f.algo == "ga") {
        search::GaConfig c;
        c.num_vars = f.n;
        c.fitness = fitness;
        c.budget = f.budget;
        c.population_size = f.population;
        c.mutation_probability = f.mutation_prob;
        c.mutation_ops = parse_ga_mutations(f.ga_mutations);
        const auto kind = parse_crossover(f.crossover);
        if (!kind) throw UsageError("unknown crossover '" + f.crossover + "'");
        c.crossover = *kind;
        entries.push_back({"ga-" + fit_tag + "-" + std::string(crossover_name(*kind)), c});
    } else if (f.algo == "ls" || f.algo == "ls-r") {
        if (f.revert_mode != "chain" && f.revert_mode != "single") throw UsageError("--revert-mode is chain or single");
        for (const auto& ops : f.ops) {
            search::LsConfig c;
            c.num_vars = f.n;
            try {
                c.operators = parse_operator_list(ops);
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
            c.revert = f.algo == "ls-r";
            c.revert_mode = f.revert_mode == "chain" ? search::RevertMode::Chain : search::RevertMode::Single;
            c.fitness = fitness;
            c.budget = f.budget;
            c.restart_on_convergence = !f.no_restart;
            c.randomized_order = !f.canonical;
            c.incremental = !f.full_eval;
            entries.push_back({f.algo + "-" + fit_tag + "-" + format_operator_list(c.operators), c});
        }
    } else {
        throw UsageError("--algo must be ga, ls or ls-r");
    }

    const auto result = search::run_experiment(entries, f.runs, g.seed, g.threads);
    std::string stem = "search_" + f.algo + "_" + fit_tag + "_n" + std::to_string(f.n);
    if (f.algo != "ga" && f.ops.size() == 1) {
        std::string ops = format_operator_list(std::get<search::LsConfig>(entries[0].config).operators);
        for (auto& ch : ops) {
            if (ch == '/') ch = '-';
        }
        stem += "_" + ops;
    }
    json records = json::array();
    for (const auto& c : result.configs) {
        for (std::size_t r = 0; r < c.runs.size(); ++r) {
            auto j = json::parse(search::to_json(c.runs[r], f.trajectory_every));
            j["config_id"] = c.id;
            j["run_id"] = r;
            records.push_back(std::move(j));
        }
    }
    w.primary(stem + "_runs.csv", search::runs_csv(result));
    w.primary(stem + "_summary.csv", search::summary_csv(result));
    w.primary(stem + "_records.json", records.dump(2) + "\n");
    json config{{"algo", f.algo}, {"fitness", f.fitness}, {"ops", f.ops}, {"n", f.n}, {"runs", f.runs}, {"budget", f.budget}};
    json configs = json::array();
    for (const auto& e : entries) {
        configs.push_back(json::parse(std::visit([](const auto& c) { return search::config_json(c); }, e.config)));
    }
    config["entries"] = configs;
    w.meta(stem, config);
    return kOk;
}

int cmd_reproduce(const ReproduceFlags& f, const Globals& g, Writer& w, std::ostream& out) {
    std::vector<int> ids;
    if (f.table == "all") {
        ids = report::reproducible_tables();
    } else {
        try {
            std::size_t used = 0;
            ids.push_back(std::stoi(f.table, &used));
            if (used != f.table.size()) throw std::invalid_argument(f.table);
        } catch (const std::exception&) {
            throw UsageError("--table takes a table id or 'all'");
        }
        const auto known = report::reproducible_tables();
        if (std::find(known.begin(), known.end(), ids[0]) == known.end()) {
            throw UsageError("no reproducible table " + f.table);
        }
    }
    report::ReproduceOptions options;
    options.seed = g.seed;
    options.threads = g.threads;
    options.pairs_per_cell = f.pairs_per_cell;
    options.sample_fraction = f.fraction;
    options.enumerate_below_nl = f.enumerate_below;
    options.golden_dir = fs::path(g.data_dir) / "golden";
    bool all_ok = true;
    for (int id : ids) {
        for (const auto& t : report::reproduce_table(id, options)) {
            if (w.json_format()) {
                w.primary(t.stem + ".json", t.json);
            } else {
                w.primary(t.stem + ".csv", report::to_csv(t.grid));
            }
            const std::string summary = t.diff.summary();
            w.primary(t.stem + ".diff.txt", summary);
            out << summary;
            all_ok = all_ok && t.diff.passed();
            w.meta(t.stem, {{"table", id},
                            {"pairs_per_cell", f.pairs_per_cell},
                            {"sample_fraction", f.fraction},
                            {"enumerate_below_nl", f.enumerate_below},
                            {"golden", (options.golden_dir / (t.stem + ".csv")).string()},
                            {"passed", t.diff.passed()}});
        }
    }
    return all_ok ? kOk : kDiffFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Boolean function nonlinearity: operator analysis and search", "boolnl"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Base random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker thread cap")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--out", g.out_dir, std::string("Output directory (default: $") + kOutDirEnv + " or .)");
    app.add_option("--format", g.format, "Primary output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--data-dir", g.data_dir, "Directory holding golden/ tables")->capture_default_str();

    auto* analyze = app.add_subcommand("analyze", "Operator studies on the function space");
    analyze->require_subcommand(1);
    AnalyzeFlags af;
    for (const char* study : {"consistency", "transitions", "reachability", "crossover"}) {
        auto* sub = analyze->add_subcommand(study);
        sub->add_option("--n", af.n, "Number of variables")->capture_default_str();
        add_plan_flags(sub, af.plan);
        const std::string name = study;
        if (name == "consistency" || name == "transitions") {
            sub->add_option("--op", af.op, "Mutation operator, e.g. bitset, bitflip, 2bitflip, rot")->required();
        }
        if (name == "crossover") {
            sub->add_option("--kind", af.kind, "single-point-mid, uniform-evenodd, single-point, uniform")
                ->capture_default_str();
            sub->add_option("--pairs-per-cell", af.pairs_per_cell, "Parent pairs per (nl1, nl2) cell")
                ->capture_default_str();
        }
    }

    auto* census = app.add_subcommand("census", "Nonlinearity distribution");
    int census_n = 4;
    PlanFlags census_plan;
    census->add_option("--n", census_n, "Number of variables")->capture_default_str();
    add_plan_flags(census, census_plan);

    auto* search_cmd = app.add_subcommand("search", "Run GA / LS / LS-R experiments");
    SearchFlags sf;
    search_cmd->add_option("--algo", sf.algo, "ga, ls or ls-r")->capture_default_str();
    search_cmd->add_option("--fitness", sf.fitness, "1 = nl, 2 = nl refined by max count")->capture_default_str();
    search_cmd->add_option("--ops", sf.ops, "LS operator sequences, e.g. 2bit/bit; comma separates several")
        ->delimiter(',');
    search_cmd->add_option("--n", sf.n, "Number of variables")->capture_default_str();
    search_cmd->add_option("--runs", sf.runs, "Runs per configuration")->capture_default_str();
    search_cmd->add_option("--budget", sf.budget, "Evaluations per run")->capture_default_str();
    search_cmd->add_flag("--no-restart", sf.no_restart, "LS: stop at the first convergence");
    search_cmd->add_flag("--canonical-order", sf.canonical, "LS: scan neighborhoods in canonical order");
    search_cmd->add_flag("--full-eval", sf.full_eval, "LS: full transform for every candidate");
    search_cmd->add_option("--revert-mode", sf.revert_mode, "LS-R: chain or single")->capture_default_str();
    search_cmd->add_option("--crossover", sf.crossover, "GA crossover: uniform or single-point")->capture_default_str();
    search_cmd->add_option("--ga-mutations", sf.ga_mutations, "GA mutations, e.g. bit/2bit/mixing")->capture_default_str();
    search_cmd->add_option("--pop-size", sf.population, "GA population")->capture_default_str();
    search_cmd->add_option("--mutation-prob", sf.mutation_prob, "GA mutation probability")->capture_default_str();
    search_cmd->add_option("--trajectory-every", sf.trajectory_every, "Keep every k-th trajectory point in records")
        ->capture_default_str();

    auto* reproduce = app.add_subcommand("reproduce", "Re-run a published table and diff it against its golden copy");
    ReproduceFlags rf;
    reproduce->add_option("--table", rf.table, "2, 3, 4, 5, 6, 7, 8 or all")->capture_default_str();
    reproduce->add_option("--pairs-per-cell", rf.pairs_per_cell, "Tables 7-8")->capture_default_str();
    reproduce->add_option("--sample-fraction", rf.fraction, "Table 6")->capture_default_str();
    reproduce->add_option("--enumerate-below", rf.enumerate_below, "Table 6")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion& e) {
        out << kVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    std::vector<std::string> echo{"boolnl"};
    echo.insert(echo.end(), args.begin(), args.end());
    try {
        Writer w(g, echo, out);
        if (analyze->parsed()) {
            for (auto* sub : analyze->get_subcommands()) return cmd_analyze(sub->get_name(), af, g, w);
        }
        if (census->parsed()) return cmd_census(census_n, census_plan, g, w);
        if (search_cmd->parsed()) return cmd_search(sf, g, w);
        if (reproduce->parsed()) return cmd_reproduce(rf, g, w, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    return run(args, out, err);
}

}  // namespace boolnl::cli
