#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "chordalnet/cli.hpp"

using chordalnet::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"chordalnet - exact structure learning for chordal Markov networks"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string instance;
    bool wcnf2022 = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--workers", cfg.workers, "worker threads (0 = hardware parallelism)");
        sub->add_option("--seed", cfg.seed, "seed for randomized helpers");
    };

    CLI::App* score = app.add_subcommand("score", "score clique candidates from a CSV dataset");
    score->add_option("csv", cfg.input_path, "input CSV (header + integer rows)")->required();
    score->add_option("-o,--out", cfg.output_path, "score file path (default stdout)");
    score->add_option("--prior", cfg.prior, "per-cell Dirichlet pseudocount (default 0.5)");
    score->add_option("--max-clique", cfg.max_clique, "cap candidate subset size (0 = none)");
    add_common(score);

    CLI::App* encode = app.add_subcommand("encode", "translate a score file into weighted MaxSAT");
    encode->add_option("scores", cfg.input_path, "score file")->required();
    encode->add_option("-o,--out", cfg.output_path, "WCNF path (sidecar <out>.vars)")->required();
    encode->add_option("--scale", cfg.scale, "integer scale factor (default 1000)");
    encode->add_flag("--wcnf2022", wcnf2022, "reserved: 2022 WCNF output format");
    add_common(encode);

    CLI::App* solve = app.add_subcommand("solve", "find and certify an optimal network");
    solve->add_option("scores", cfg.input_path, "score file")->required();
    solve->add_option("-o,--out", cfg.output_path, "report path (default stdout)");
    solve->add_flag("--oracle", cfg.oracle, "exhaustive graph enumeration");
    solve->add_option("--solver", cfg.solver, "external MaxSAT command, {} = instance path");
    solve->add_option("--scale", cfg.scale, "integer scale factor (default 1000)");
    solve->add_option("--instance", instance, "keep the emitted WCNF at this path");
    solve->add_flag("--allow-large", cfg.allow_large, "allow oracle runs with 7 or 8 variables");
    add_common(solve);

    CLI::App* certify = app.add_subcommand("certify", "verify a network report against a score file");
    certify->add_option("network", cfg.input_path, "network or report JSON")->required();
    certify->add_option("scores", cfg.aux_input_path, "score file")->required();
    certify->add_option("-o,--out", cfg.output_path, "certificate path (default stdout)");
    add_common(certify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : chordalnet::kExitUsage;
    }

    if (wcnf2022) {
        std::fprintf(stderr, "error: the 2022 WCNF format is reserved but not implemented\n");
        return chordalnet::kExitUsage;
    }
    if (!instance.empty()) cfg.instance_path = instance;
    cfg.subcommand = app.get_subcommands().front()->get_name();
    return chordalnet::run_cli(cfg);
}
