// Command-line front end: `refnet simulate` builds a synthetic society and
// writes its data files; `refnet test` runs one reference-model test.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "refnet/error.hpp"
#include "refnet/io.hpp"
#include "refnet/pipeline.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kData = 3, kIncompatible = 4, kConstruction = 5 };

nlohmann::json load_json(const std::string& path) {
    const std::string text = refnet::io::read_text(path);
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw refnet::ConfigError(path + ": " + e.what());
    }
}

void print_summary(const refnet::TestOutcome& out, const std::string& output) {
    const auto& run = out.run;
    std::printf("observed   %.6f\n", run.observed);
    std::printf("references %zu (pool %zu)\n", run.references.size(), run.references.size() + 1);
    std::printf("p_paper    %.6f\n", run.p_paper);
    std::printf("p_upper    %.6f\n", run.p_upper);
    std::printf("95%% pool   [%.6f, %.6f]\n", run.ci_low, run.ci_high);
    std::printf("verdict    %s\n", refnet::to_string(run.verdict));
    if (out.acceptance_rate) std::printf("acceptance %.6f\n", *out.acceptance_rate);
    std::printf("results    %s\n", output.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reference models for animal social network analysis"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;

    auto* simulate = app.add_subcommand("simulate", "Simulate a society and write its data files");
    std::string society_path;
    std::string out_dir = "society";
    int focal_group = 1;
    simulate->add_option("--config", society_path, "Society config (JSON); defaults when omitted");
    simulate->add_option("--out,--output", out_dir, "Output directory");
    simulate->add_option("--seed", seed, "Random seed")->required();
    simulate->add_option("--focal-group", focal_group, "Group whose interactions are simulated (1-based)");

    auto* test = app.add_subcommand("test", "Run a reference-model test");
    std::string pipeline_path;
    std::size_t replicates = 0, burn_in = 0, thin = 0;
    std::vector<std::string> constraints;
    std::string statistic, model, output;
    test->add_option("--config", pipeline_path, "Pipeline config (JSON)")->required();
    test->add_option("--seed", seed, "Random seed")->required();
    auto* opt_replicates = test->add_option("--replicates", replicates, "Number of reference values");
    auto* opt_burnin = test->add_option("--burnin", burn_in, "Chain burn-in steps");
    auto* opt_thin = test->add_option("--thin", thin, "Chain thinning interval");
    auto* opt_constraint = test->add_option(
        "--constraint", constraints,
        "same_day | same_attr=<name> | class_pair=<attr>:<a>,<b> | nonzero_only | all_dyads | include_diagonal");
    test->add_option("--statistic", statistic, "Statistic kind, optionally kind:attribute");
    test->add_option("--model", model, "Reference model");
    test->add_option("--out,--output", output, "results.json path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*simulate) {
            refnet::SocietyConfig cfg;
            if (!society_path.empty()) {
                const nlohmann::json j = load_json(society_path);
                cfg = refnet::io::society_config_from_json(j);
                if (j.contains("focal_group") && simulate->count("--focal-group") == 0)
                    focal_group = j.at("focal_group").get<int>();
            }
            const auto out = refnet::cmd_simulate(cfg, focal_group, out_dir, seed);
            std::printf("groups      %zu\n", out.society.gbis.size());
            std::printf("individuals %zu\n", out.society.individuals.size());
            std::printf("files       %zu written to %s\n", out.files.size(), out_dir.c_str());
            return kOk;
        }

        const std::filesystem::path config_path(pipeline_path);
        refnet::PipelineConfig cfg =
            refnet::pipeline_config_from_json(load_json(pipeline_path), config_path.parent_path());
        cfg.seed = seed;
        if (*opt_replicates) cfg.replicates = replicates;
        if (*opt_burnin) cfg.burn_in = burn_in;
        if (*opt_thin) cfg.thin = thin;
        if (*opt_constraint) cfg.constraints = constraints;
        if (!model.empty()) cfg.model = model;
        if (!statistic.empty()) {
            const auto colon = statistic.find(':');
            cfg.statistic["kind"] = statistic.substr(0, colon);
            if (colon != std::string::npos) cfg.statistic["attribute"] = statistic.substr(colon + 1);
        }
        if (!output.empty()) {
            cfg.output = output;
        } else {
            cfg.output = cfg.resolve(cfg.output).string();
        }
        const auto out = refnet::cmd_test(cfg);
        print_summary(out, cfg.output);
        return kOk;
    } catch (const refnet::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const refnet::NotRealizable& e) {
        std::cerr << "construction failure: " << e.what() << '\n';
        return kConstruction;
    } catch (const refnet::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const refnet::ModelIncompatible& e) {
        std::cerr << "incompatible model: " << e.what() << '\n';
        return kIncompatible;
    } catch (const refnet::ConstructionFailed& e) {
        std::cerr << "construction failure: " << e.what() << '\n';
        return kConstruction;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    }
}
