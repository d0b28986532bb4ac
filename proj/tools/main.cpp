#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
    grext::cli::JobConfig job;
    std::string positional;
    CLI::App app{"grext: filtered Ext, minimal resolutions and p-adic certificates"};
    app.add_option("name", positional, "subcommand (alternative to --command)");
    app.add_option("--command", job.command, "subcommand")->check(CLI::IsMember(grext::cli::command_names()));
    app.add_option("--input", job.inputs, "JSON input files, merged in order");
    app.add_option("--output", job.output, "JSON report path (table written alongside as .txt)");
    app.add_option("--seed", job.seed, "seed for sampled checks");
    app.add_option("--max-bar-degree", job.max_bar_degree, "cap on bar/cochain degree")->check(CLI::PositiveNumber);
    app.add_option("--max-dim", job.max_dim, "cap on cochain and algebra dimension")->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (job.command.empty()) job.command = positional;
    if (job.command.empty()) {
        std::cerr << "error: command: none given; one of";
        for (const auto& n : grext::cli::command_names()) std::cerr << ' ' << n;
        std::cerr << '\n';
        return 1;
    }
    return grext::cli::run(job, std::cout, std::cerr);
}
