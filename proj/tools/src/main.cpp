// qfimirror — quantum Fisher information of a two-level atom near a mirror
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 I/O error.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::string format;
    int threads = 1;
    bool dump_config = false;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--config", opts.config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_path, "output path (default: output.path or stdout)");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", opts.threads, "worker threads for grid evaluation")
        ->check(CLI::Range(1, 1024));
    cmd->add_flag("--dump-config", opts.dump_config,
                  "echo the resolved configuration as JSON and exit");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum Fisher information of a two-level atom coupled to vacuum\n"
                 "fluctuations, in free space and near a perfectly reflecting boundary"};
    app.require_subcommand(1);

    CliOptions opts;
    using qfim::cli::Command;
    CLI::App* scan = app.add_subcommand(
        "scan-boundary", "boundary response functions and 1 - f over a zeta grid");
    CLI::App* evolve = app.add_subcommand("evolve", "Bloch-vector trajectory on a time grid");
    CLI::App* qfi = app.add_subcommand(
        "qfi", "QFI of theta, phi or omega0 computed by the requested engines");
    CLI::App* freq = app.add_subcommand(
        "freq-opt", "optimal measurement time: single shot or Ramsey sequence");
    for (CLI::App* cmd : {scan, evolve, qfi, freq}) add_common_options(cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        qfim::cli::RunConfig config = qfim::cli::load_config(opts.config_path);
        if (scan->parsed()) config.command = Command::scan_boundary;
        if (evolve->parsed()) config.command = Command::evolve;
        if (qfi->parsed()) config.command = Command::qfi;
        if (freq->parsed()) config.command = Command::freq_opt;
        if (!opts.out_path.empty()) config.output.path = opts.out_path;
        if (opts.format == "csv") config.output.format = qfim::cli::FileFormat::csv;
        if (opts.format == "json") config.output.format = qfim::cli::FileFormat::json;

        if (opts.dump_config) {
            qfim::cli::validate_for_command(config);
            std::cout << qfim::cli::dump_config(config).dump(2) << "\n";
            return 0;
        }
        qfim::cli::run_command(config, opts.threads);
        return 0;
    } catch (const qfim::cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qfim::cli::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
