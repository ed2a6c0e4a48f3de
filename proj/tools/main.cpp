#include "cascade/runner.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Financial-network cascade engine"};
    app.require_subcommand(1);

    std::string run_config;
    CLI::App* run = app.add_subcommand("run", "Run a cascade from a config file");
    run->add_option("config", run_config, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);

    std::string cmp_a, cmp_b, cmp_out = "compare.csv";
    CLI::App* cmp =
        app.add_subcommand("compare", "Diff the terminal states of two runs");
    cmp->add_option("config_a", cmp_a, "Baseline run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    cmp->add_option("config_b", cmp_b, "Comparison run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    cmp->add_option("-o,--out", cmp_out, "Output CSV path");

    std::string val_system;
    CLI::App* val = app.add_subcommand("validate", "Check a system file's identities");
    val->add_option("system", val_system, "System JSON file")
        ->required()
        ->check(CLI::ExistingFile);

    std::string gen_spec, gen_out = "system.json";
    CLI::App* gen = app.add_subcommand("generate", "Generate a random system");
    gen->add_option("spec", gen_spec, "Generator spec JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    gen->add_option("-o,--out", gen_out, "Output system JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0
                   ? 0
                   : static_cast<int>(cascade::ExitCode::config_error);
    }

    if (*run) return cascade::run_command(run_config);
    if (*cmp) return cascade::compare_command(cmp_a, cmp_b, cmp_out);
    if (*val) return cascade::validate_command(val_system);
    if (*gen) return cascade::generate_command(gen_spec, gen_out);
    return static_cast<int>(cascade::ExitCode::config_error);
}
