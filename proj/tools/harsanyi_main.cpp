#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "harsanyi/commands.hpp"
#include "harsanyi/report.hpp"

namespace {

struct SubArgs {
    std::string config_path;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, SubArgs& args) {
    sub->add_option("config", args.config_path, "run configuration file (key = value lines)")
        ->required();
    sub->add_option("--set", args.overrides, "override a config key (key=value), repeatable");
}

harsanyi::RunConfig load(const SubArgs& args) {
    harsanyi::RunConfig cfg = harsanyi::parse_config_file(args.config_path);
    for (const std::string& assignment : args.overrides) {
        harsanyi::apply_override(cfg, assignment);
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harsanyi-dividend interaction concept toolkit"};
    app.set_version_flag("--version", std::string(harsanyi::kToolVersion));
    app.require_subcommand(1);

    SubArgs args;
    CLI::App* train = app.add_subcommand("train", "train an MLP and persist the weights");
    CLI::App* extract =
        app.add_subcommand("extract", "extract interaction tables for selected samples");
    CLI::App* metrics =
        app.add_subcommand("metrics", "compute concept-quality metrics from tables");
    CLI::App* noise =
        app.add_subcommand("noise-study", "retrain across the noise grids and track trends");
    CLI::App* synth =
        app.add_subcommand("synth-check", "run the axiom suite over synthetic games");
    for (CLI::App* sub : {train, extract, metrics, noise, synth}) add_common(sub, args);

    CLI11_PARSE(app, argc, argv);

    try {
        const harsanyi::RunConfig cfg = load(args);
        if (train->parsed()) {
            harsanyi::cmd_train(cfg);
        } else if (extract->parsed()) {
            harsanyi::cmd_extract(cfg);
        } else if (metrics->parsed()) {
            harsanyi::cmd_metrics(cfg);
        } else if (noise->parsed()) {
            harsanyi::cmd_noise_study(cfg);
        } else if (synth->parsed()) {
            const auto results = harsanyi::cmd_synth_check(cfg);
            for (const auto& r : results) {
                if (!r.pass) return harsanyi::kExitInvariantViolation;
            }
        }
    } catch (const harsanyi::CommandError& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return harsanyi::kExitInputError;
    }
    return harsanyi::kExitOk;
}
