#include "chordalnet/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "chordalnet/dataset.hpp"
#include "chordalnet/encoder.hpp"
#include "chordalnet/errors.hpp"
#include "chordalnet/scoring.hpp"
#include "chordalnet/solve.hpp"

namespace chordalnet {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw InputError("read failure on '" + path + "'");
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
    if (!out) throw InputError("write failure on '" + path + "'");
}

void emit_output(const std::string& path, const std::string& content) {
    if (path.empty())
        std::fwrite(content.data(), 1, content.size(), stdout);
    else
        write_file(path, content);
}

} // namespace

int cmd_score(const RunConfig& cfg) {
    Dataset data = load_dataset(read_file(cfg.input_path));
    PriorSpec prior{cfg.prior};
    ScoreTable table = build_score_table(data, prior, cfg.max_clique, cfg.workers);
    emit_output(cfg.output_path, write_score_file(table));

    const int n = data.n_vars();
    std::fprintf(stderr,
                 "scored %zu clique candidates over %d variables "
                 "(2^%d = %llu subsets counting the empty set, %llu nonempty)\n",
                 table.size(), n, n,
                 static_cast<unsigned long long>(1ull << n),
                 static_cast<unsigned long long>((1ull << n) - 1));
    if (table.max_subset_size() < n)
        std::fprintf(stderr,
                     "warning: clique size capped at %d; optimality is relative to the "
                     "capped hypothesis space\n",
                     table.max_subset_size());
    return kExitOk;
}

int cmd_encode(const RunConfig& cfg) {
    if (cfg.output_path.empty())
        throw InputError("encode requires an output path for the WCNF instance");
    ScoreTable table = read_score_file(read_file(cfg.input_path));
    IntScoreTable int_table = integer_scale(table, cfg.scale);
    Encoding enc = build_encoding(int_table);

    std::string wcnf = emit_wcnf(enc);
    write_file(cfg.output_path, wcnf);
    write_file(cfg.output_path + ".vars", emit_varmap(enc));

    auto chord = enc.section_range(Section::chordality);
    std::fprintf(stderr,
                 "%d variables, %zu hard + %zu soft clauses (%u chordality), %zu bytes -> %s\n",
                 enc.var_count, enc.hard.size(), enc.soft.size(), chord.second - chord.first,
                 wcnf.size(), cfg.output_path.c_str());
    return kExitOk;
}

int cmd_solve(const RunConfig& cfg) {
    ScoreTable table = read_score_file(read_file(cfg.input_path));
    const int n = table.n_vars();

    SolveResult result;
    if (cfg.oracle) {
        ProgressFn progress;
        if (n >= 7) {
            progress = [last = std::uint64_t{0}](std::uint64_t done, std::uint64_t total) mutable {
                if (done < last + total / 100 && done != total) return;
                last = done;
                std::fprintf(stderr, "oracle: %llu / %llu graphs\n",
                             static_cast<unsigned long long>(done),
                             static_cast<unsigned long long>(total));
            };
        }
        result = exhaustive_optimum(table, n, cfg.workers, cfg.allow_large, cfg.scale,
                                    progress);
    } else if (!cfg.solver.empty()) {
        IntScoreTable int_table = integer_scale(table, cfg.scale);
        Encoding enc = build_encoding(int_table);

        std::string instance = cfg.instance_path
                                   ? *cfg.instance_path
                                   : (std::filesystem::temp_directory_path() /
                                      ("chordalnet-" + std::to_string(getpid()) + ".wcnf"))
                                         .string();
        write_file(instance, emit_wcnf(enc));
        write_file(instance + ".vars", emit_varmap(enc));

        Assignment model;
        try {
            model = run_external(enc, SolverCommand{cfg.solver}, instance);
        } catch (...) {
            if (!cfg.instance_path) {
                std::error_code ec;
                std::filesystem::remove(instance, ec);
                std::filesystem::remove(instance + ".vars", ec);
            }
            throw;
        }
        if (!cfg.instance_path) {
            std::error_code ec;
            std::filesystem::remove(instance, ec);
            std::filesystem::remove(instance + ".vars", ec);
        }

        DecodedNetwork decoded = decode_model(enc, model, int_table);
        result.network = decoded.network;
        result.network.score = network_score(table, decoded.network.cliques,
                                             decoded.network.separators);
        result.objective = result.network.score;
        result.objective_int = decoded.objective;
        result.scale = cfg.scale;
        result.method = "external";
    } else {
        throw InputError("solve needs either --oracle or --solver");
    }

    result.certificate = certify(result.network, table);
    emit_output(cfg.output_path, solve_report_json(result));

    std::fprintf(stderr, "%s optimum: %.6f (integer %lld at scale %lld), certificate %s\n",
                 result.method.c_str(), result.objective,
                 static_cast<long long>(result.objective_int),
                 static_cast<long long>(result.scale),
                 result.certificate.all_pass() ? "all-pass" : "FAILED");
    if (result.visited_graphs != 0)
        std::fprintf(stderr, "visited %llu graphs, %llu chordal\n",
                     static_cast<unsigned long long>(result.visited_graphs),
                     static_cast<unsigned long long>(result.chordal_graphs));
    if (!result.certificate.all_pass()) {
        std::fprintf(stderr, "certificate failure: %s\n", result.certificate.detail.c_str());
        return kExitCertify;
    }
    return kExitOk;
}

int cmd_certify(const RunConfig& cfg) {
    ChordalNetwork net = network_from_json(read_file(cfg.input_path));
    ScoreTable table = read_score_file(read_file(cfg.aux_input_path));
    Certificate cert = certify(net, table);

    emit_output(cfg.output_path, certificate_json(cert));

    std::fprintf(stderr, "certificate: %s%s%s\n",
                 cert.all_pass() ? "all-pass" : "FAILED",
                 cert.detail.empty() ? "" : " - ", cert.detail.c_str());
    return cert.all_pass() ? kExitOk : kExitCertify;
}

int run_cli(const RunConfig& cfg) {
    try {
        if (cfg.subcommand == "score") return cmd_score(cfg);
        if (cfg.subcommand == "encode") return cmd_encode(cfg);
        if (cfg.subcommand == "solve") return cmd_solve(cfg);
        if (cfg.subcommand == "certify") return cmd_certify(cfg);
        std::fprintf(stderr, "error: unknown subcommand '%s'\n", cfg.subcommand.c_str());
        return kExitUsage;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSolver;
    } catch (const VerifyError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCertify;
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
}

} // namespace chordalnet
