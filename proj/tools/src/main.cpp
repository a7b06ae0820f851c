#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sdf_cli/instance.hpp"
#include "sdf_cli/run.hpp"

// Exit codes: 0 all checks ok, 1 some check failed, 2 bad input or usage.
int main(int argc, char** argv) {
    CLI::App app{"Verify scenario decision forests and action-path instances"};
    app.require_subcommand(1);

    std::string format = "text";
    sdf::cli::RunOptions opts;
    bool timing = false;
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--max-x", opts.max_x, "Largest move count checked exhaustively for axiom 3e");
    app.add_option("--max-time-subsets", opts.max_time_subsets,
                   "Largest time axis checked over all subsets for AP.W2");
    app.add_flag("--timing", timing, "Include timings in JSON reports");

    // Subcommands inherit this, so global options may follow positionals.
    app.fallthrough();

    std::string file, builtin;
    std::vector<std::string> checks;
    CLI::App* verify = app.add_subcommand("verify", "Check an instance file");
    verify->add_option("file", file, "Instance JSON")->required();
    verify->add_option("checks", checks, "Checks to run (default depends on the instance)");
    CLI::App* bi = app.add_subcommand("builtin", "Check a built-in instance");
    bi->add_option("name", builtin, "simple, variant, timing or upandout")
        ->required()
        ->check(CLI::IsMember(sdf::cli::builtin_names()));
    bi->add_option("checks", checks, "Checks to run (default depends on the instance)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        sdf::cli::Instance in;
        if (*verify) {
            std::ifstream f(file, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot read " << file << "\n";
                return 2;
            }
            std::ostringstream text;
            text << f.rdbuf();
            in = sdf::cli::parse_instance(text.str());
        } else {
            in = sdf::cli::load_builtin(builtin);
        }
        if (checks.empty()) checks = sdf::cli::default_commands(in);
        sdf::cli::Report rep = sdf::cli::run(in, checks, opts);
        std::cout << (format == "json" ? sdf::cli::render_json(rep, timing) : sdf::cli::render_text(rep));
        return rep.ok() ? 0 : 1;
    } catch (const sdf::Error& e) {
        std::cerr << "error: " << sdf::to_string(e.kind()) << ": " << e.what() << "\n";
        return 2;
    }
}
