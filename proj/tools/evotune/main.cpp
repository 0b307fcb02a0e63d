// evotune: search kernel network parameters for throughput with a GA.
//
// Exit codes: 0 success, 1 bad input or configuration, 2 runtime failure
// (evaluator/benchmark/abort) after the system has been restored.

#include <atomic>
#include <cinttypes>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evotune/engine.hpp"
#include "evotune/live_evaluator.hpp"
#include "evotune/replay.hpp"
#include "evotune/report_io.hpp"
#include "evotune/sim_model.hpp"
#include "evotune/sys_apply.hpp"

namespace {

std::atomic<bool> g_abort{false};

void on_signal(int) { g_abort.store(true, std::memory_order_relaxed); }

void install_signal_handlers() {
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
}

bool env_dry_run() {
    const char* env = std::getenv("EVOTUNE_DRY_RUN");
    return env && std::string_view(env) == "1";
}

struct SpaceArgs {
    std::string params_path;
    std::string catalog;
};

void add_space_flags(CLI::App* cmd, SpaceArgs& args) {
    auto* params = cmd->add_option("--params", args.params_path, "Parameter file to tune");
    auto* catalog =
        cmd->add_option("--catalog", args.catalog, "Built-in parameter catalog")
            ->check(CLI::IsMember(evotune::builtin_catalog_names()));
    params->excludes(catalog);
    catalog->excludes(params);
}

// Loads the space and names it for the summary line.
std::pair<evotune::ParameterSpace, std::string> load_space(const SpaceArgs& args) {
    if (!args.params_path.empty() && !args.catalog.empty()) {
        throw evotune::Error("use exactly one of --params and --catalog");
    }
    if (!args.params_path.empty()) {
        return {evotune::load_param_file(args.params_path), args.params_path};
    }
    if (!args.catalog.empty()) {
        return {evotune::builtin_catalog(args.catalog), args.catalog};
    }
    throw evotune::Error("one of --params or --catalog is required");
}

std::string range_text(const evotune::ValueKind& kind) {
    if (const auto* ir = std::get_if<evotune::IntRange>(&kind)) {
        return std::to_string(ir->min) + " .. " + std::to_string(ir->max);
    }
    const auto& tr = std::get<evotune::TripleRange>(kind);
    auto triple = [](const evotune::Triple& t) {
        return "'" + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " +
               std::to_string(t[2]) + "'";
    };
    return triple(tr.min) + " .. " + triple(tr.max);
}

const char* mechanism_text(evotune::Mechanism m) {
    switch (m) {
        case evotune::Mechanism::SysctlWrite: return "sysctl";
        case evotune::Mechanism::InterfaceMtu: return "mtu";
        case evotune::Mechanism::InterfaceTxqueuelen: return "txqueuelen";
    }
    return "?";
}

// Live evaluator stand-in for --dry-run: pushes every chromosome through the
// dry-run session (which executes nothing) so the would-be commands are
// visible, and scores everything zero.
class DryRunEvaluator final : public evotune::FitnessEvaluator {
public:
    explicit DryRunEvaluator(evotune::ApplySession& session) : session_(session) {}

    double evaluate(const evotune::ParameterSpace& space,
                    const evotune::Chromosome& c) override {
        auto outcome = session_.apply(space, c);
        for (const auto& status : outcome.per_command) {
            std::printf("[dry-run] %s\n", status.command.display().c_str());
        }
        return 0.0;
    }
    bool deterministic() const override { return true; }
    bool safe_for_parallel() const override { return false; }

private:
    evotune::ApplySession& session_;
};

struct RunArgs {
    SpaceArgs space;
    std::string evaluator;
    std::string sim_fixture;
    std::string replay_cache;
    std::string record_cache;
    std::string benchmark_cmd = "netperf -H {host} -p {port} -l {duration}";
    std::string benchmark_parser = "netperf";
    std::string host = "127.0.0.1";
    int port = 12865;
    int duration_s = 10;
    int grace_s = 15;
    evotune::GaConfig ga;
    std::string report_path;
    std::string csv_path;
    bool dry_run = false;
    bool legacy_ifconfig = false;
    bool mutate_survivors = false;
};

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

int run_command(const RunArgs& args) {
    using namespace evotune;

    const bool dry = args.dry_run || env_dry_run();
    const RenderStyle style =
        args.legacy_ifconfig ? RenderStyle::LegacyIfconfig : RenderStyle::IpLink;

    // Setup phase: everything that can be rejected before touching the system.
    ParameterSpace space;
    std::string space_name;
    std::unique_ptr<FitnessEvaluator> owned_eval;
    std::optional<SimModel> model;
    ExecCommandRunner exec_runner;
    std::optional<ApplySession> session;
    Chromosome default_chromosome;

    try {
        validate(args.ga);
        auto loaded = load_space(args.space);
        space = std::move(loaded.first);
        space_name = std::move(loaded.second);
        if (space.empty()) {
            throw Error("parameter space is empty; nothing to tune");
        }

        if (args.evaluator == "sim") {
            if (args.sim_fixture.empty()) {
                throw Error("--evaluator sim requires --sim-fixture");
            }
            model = SimModel::load(args.sim_fixture);
            owned_eval = std::make_unique<SimEvaluator>(*model, space);
            default_chromosome = range_min_chromosome(space);
        } else if (args.evaluator == "replay") {
            if (args.replay_cache.empty()) {
                throw Error("--evaluator replay requires --replay-cache");
            }
            owned_eval =
                std::make_unique<ReplayEvaluator>(ReplayCache::load(args.replay_cache), space);
            default_chromosome = range_min_chromosome(space);
        } else { // live
            session.emplace(exec_runner, dry ? ApplyMode::DryRun : ApplyMode::Live, style);
            if (dry) {
                std::fprintf(stderr,
                             "warning: live evaluator in dry-run mode; commands are logged, "
                             "nothing is executed, and every fitness is 0\n");
                session->take_snapshot(space);
                owned_eval = std::make_unique<DryRunEvaluator>(*session);
                default_chromosome = range_min_chromosome(space);
            } else {
                BenchmarkCommand bench;
                bench.argv_template = split_ws(args.benchmark_cmd);
                if (bench.argv_template.empty()) {
                    throw Error("--benchmark-cmd is empty");
                }
                bench.host = args.host;
                bench.port = args.port;
                bench.duration_s = args.duration_s;
                bench.grace_s = args.grace_s;
                bench.parser = args.benchmark_parser == "iperf" ? BenchmarkParser::Iperf
                                                                : BenchmarkParser::Netperf;
                session->take_snapshot(space);
                default_chromosome = session->default_chromosome_from_snapshot(space);
                owned_eval = std::make_unique<LiveEvaluator>(*session, exec_runner, bench);
            }
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "evotune: error: %s\n", e.what());
        return 1;
    }

    // Run phase: from here on failures are runtime errors (exit 2) and a live
    // session is restored before the process exits, either explicitly below
    // or by the session destructor during unwinding.
    install_signal_handlers();

    FitnessEvaluator* eval = owned_eval.get();
    std::optional<RecordingEvaluator> recorder;
    if (!args.record_cache.empty()) {
        recorder.emplace(*eval, space);
        eval = &*recorder;
    }

    RunOptions opts;
    opts.mutate_survivors = args.mutate_survivors;
    opts.abort = &g_abort;

    RunReport report;
    try {
        report = run(space, args.ga, *eval, default_chromosome, opts);
    } catch (const AbortedError&) {
        if (session) session->restore();
        std::fprintf(stderr, "evotune: interrupted; system restored\n");
        return 2;
    } catch (const Error& e) {
        if (session) session->restore();
        std::fprintf(stderr, "evotune: error: %s\n", e.what());
        return 2;
    }
    if (session) session->restore();

    try {
        if (!args.report_path.empty()) write_report_json(report, args.report_path);
        if (!args.csv_path.empty()) write_report_csv(report, args.csv_path);
        if (recorder && !args.record_cache.empty()) {
            recorder->cache().save(args.record_cache);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "evotune: error: %s\n", e.what());
        return 2;
    }

    // Summary. The default baseline is re-measured every generation, so the
    // comparison basis is its mean across the run.
    double default_mean = 0.0;
    double mean_best = 0.0;
    for (const auto& g : report.per_generation) {
        default_mean += g.default_fitness;
        mean_best += g.best;
    }
    const auto gens = static_cast<double>(report.per_generation.size());
    default_mean /= gens;
    mean_best /= gens;
    const double best = report.overall_best.fitness.value_or(0.0);

    std::printf("space: %s (%s)\n", space_name.c_str(), report.space_hash.c_str());
    std::printf("evaluations: %" PRIu64 "\n", report.evaluation_count);
    std::printf("best: %.2f Mbit/s (individual %" PRIu64 ", born generation %d)\n", best,
                report.overall_best.id, report.overall_best.birth_generation);
    std::printf("default mean: %.2f Mbit/s\n", default_mean);
    if (default_mean > 0.0) {
        std::printf("best vs default-mean: %+.1f%%\n",
                    (best - default_mean) / default_mean * 100.0);
        std::printf("mean-best vs default-mean: %+.1f%%\n",
                    (mean_best - default_mean) / default_mean * 100.0);
    } else {
        std::printf("best vs default-mean: n/a (default mean is 0)\n");
        std::printf("mean-best vs default-mean: n/a (default mean is 0)\n");
    }
    std::printf("apply commands for best:\n");
    for (const auto& cmd : render_apply_commands(space, report.overall_best.chromosome, style)) {
        std::printf("  %s\n", cmd.display().c_str());
    }
    return 0;
}

int validate_command(const std::string& path) {
    using namespace evotune;
    ParameterSpace space;
    try {
        space = load_param_file(path);
    } catch (const Error& e) {
        std::fprintf(stderr, "evotune: error: %s: %s\n", path.c_str(), e.what());
        return 1;
    }
    for (const auto& spec : space.specs()) {
        std::printf("%-40s %-11s %s\n", spec.key.c_str(), mechanism_text(spec.mechanism),
                    range_text(spec.kind).c_str());
    }
    if (space.empty()) {
        std::printf("0 parameters\n");
        std::fprintf(stderr, "warning: '%s' defines nothing to tune\n", path.c_str());
    } else {
        std::printf("%zu parameters OK\n", space.size());
    }
    return 0;
}

int plan_command(const SpaceArgs& space_args, std::uint64_t seed, bool legacy) {
    using namespace evotune;
    try {
        auto [space, name] = load_space(space_args);
        if (space.empty()) {
            throw Error("parameter space is empty; nothing to plan");
        }
        RandomSource rng(seed);
        Chromosome c = sample_chromosome(space, rng);
        auto style = legacy ? RenderStyle::LegacyIfconfig : RenderStyle::IpLink;
        for (const auto& cmd : render_apply_commands(space, c, style)) {
            std::printf("%s\n", cmd.display().c_str());
        }
        return 0;
    } catch (const Error& e) {
        std::fprintf(stderr, "evotune: error: %s\n", e.what());
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolutionary search for high-throughput kernel network settings"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Optimize a parameter space");
    add_space_flags(run_cmd, run_args.space);
    run_cmd->add_option("--evaluator", run_args.evaluator, "Fitness source")
        ->required()
        ->check(CLI::IsMember({"sim", "replay", "live"}));
    run_cmd->add_option("--sim-fixture", run_args.sim_fixture,
                        "Simulated throughput surface (JSON)");
    run_cmd->add_option("--replay-cache", run_args.replay_cache, "Recorded measurements (JSON)");
    run_cmd->add_option("--record-cache", run_args.record_cache,
                        "Record every measurement to this cache file");
    run_cmd->add_option("--benchmark-cmd", run_args.benchmark_cmd,
                        "Benchmark argv; {host} {port} {duration} are substituted");
    run_cmd->add_option("--benchmark-parser", run_args.benchmark_parser,
                        "How to read benchmark output")
        ->check(CLI::IsMember({"netperf", "iperf"}));
    run_cmd->add_option("--host", run_args.host, "Benchmark peer host");
    run_cmd->add_option("--port", run_args.port, "Benchmark peer port");
    run_cmd->add_option("--duration", run_args.duration_s, "Benchmark duration, seconds");
    run_cmd->add_option("--grace", run_args.grace_s,
                        "Extra seconds past the duration before a benchmark counts as hung");
    run_cmd->add_option("--population", run_args.ga.population_size, "Population size");
    run_cmd->add_option("--generations", run_args.ga.generations, "Generations to run");
    run_cmd->add_option("--selection", run_args.ga.selection_fraction,
                        "Fraction culled and bred each generation");
    run_cmd->add_option("--crossover", run_args.ga.crossover_probability,
                        "Per-gene swap probability");
    run_cmd->add_option("--mutation", run_args.ga.mutation_probability,
                        "Per-offspring mutation probability");
    run_cmd->add_option("--seed", run_args.ga.seed, "Random seed");
    run_cmd->add_option("--report", run_args.report_path, "Write the run report JSON here");
    run_cmd->add_option("--csv", run_args.csv_path, "Write the per-generation CSV here");
    run_cmd->add_flag("--dry-run", run_args.dry_run, "Execute nothing; log what would run");
    run_cmd->add_flag("--legacy-ifconfig", run_args.legacy_ifconfig,
                      "Render interface changes as ifconfig commands");
    run_cmd->add_flag("--mutate-survivors", run_args.mutate_survivors,
                      "Also roll mutation for every survivor each generation");

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Parse a parameter file and report it");
    validate_cmd->add_option("path", validate_path, "Parameter file")->required();

    SpaceArgs plan_space;
    std::uint64_t plan_seed = 1;
    bool plan_legacy = false;
    auto* plan_cmd =
        app.add_subcommand("plan", "Sample one configuration and print its commands");
    add_space_flags(plan_cmd, plan_space);
    plan_cmd->add_option("--seed", plan_seed, "Random seed");
    plan_cmd->add_flag("--legacy-ifconfig", plan_legacy,
                       "Render interface changes as ifconfig commands");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (app.got_subcommand(run_cmd)) return run_command(run_args);
    if (app.got_subcommand(validate_cmd)) return validate_command(validate_path);
    if (app.got_subcommand(plan_cmd)) return plan_command(plan_space, plan_seed, plan_legacy);
    return 1;
}
