// rulecp: conformal prediction sets for rule-based binary classifiers.

#include "rulecp/dataset.hpp"
#include "rulecp/pipeline.hpp"
#include "rulecp/toy.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

using namespace rulecp;

struct GridArgs {
    std::string ruleset;
    Label label = 1;
    std::size_t resolution = 101;
    std::string out;
};

struct GenerateArgs {
    std::string kind = "blobs";
    std::size_t n = 10000;
    std::size_t dims = 2;
    double separation = 3.0;
    double spread = 1.0;
    std::string out;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rule-geometry conformal prediction: induce, calibrate, predict, extract critical sets"};
    app.set_config("--config", "", "Key = value config file; every key can be overridden by its flag");
    app.fallthrough();
    app.require_subcommand(1);

    PipelineConfig cfg;
    std::string data_path, output_dir = cfg.output_dir.string();
    std::vector<double> split{cfg.split.train, cfg.split.calib, cfg.split.test};
    std::string kernel = "reciprocal", ratio_policy = "strict";

    app.add_option("--data", data_path, "Input CSV (header row, last column = label 0/1)");
    app.add_option("--output-dir", output_dir, "Directory for artifacts")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for the split and the rule inducer")->capture_default_str();
    app.add_option("--epsilon", cfg.epsilons, "Error levels to calibrate/predict/evaluate")->capture_default_str();
    app.add_option("--ccs-epsilon", cfg.ccs_epsilon, "Error level for the conformal critical set")
        ->capture_default_str();
    app.add_option("--split", split, "train calib test fractions")->expected(3)->capture_default_str();
    app.add_option("--kernel", kernel, "Distance kernel: reciprocal | exponential")->capture_default_str();
    app.add_option("--alpha", cfg.score.alpha, "Exponential kernel rate")->capture_default_str();
    app.add_option("--ratio-policy", ratio_policy, "strict | smoothed")->capture_default_str();
    app.add_option("--kappa", cfg.score.kappa, "Additive smoothing for the smoothed ratio policy")
        ->capture_default_str();
    app.add_option("--distance-floor", cfg.score.distance_floor, "Lower clamp on boundary distances")
        ->capture_default_str();
    app.add_option("--max-rules", cfg.inducer.max_rules, "Maximum rules per class")->capture_default_str();
    app.add_option("--min-covering", cfg.inducer.min_covering, "Drop rules covering less of their class")
        ->capture_default_str();
    app.add_option("--max-error", cfg.inducer.max_error, "Maximum rule error on the other class")
        ->capture_default_str();
    app.add_option("--grid-resolution", cfg.inducer.grid_resolution, "Inducer grid cells per feature")
        ->capture_default_str();
    app.add_flag("--explain", cfg.explain, "Include per-rule score breakdowns in predictions");
    app.add_flag("!--no-embed-scores", cfg.embed_scores, "Store only the digest of calibration scores");
    app.add_flag("--timing", cfg.with_timing, "Record calibration scoring time (makes reports run-dependent)");

    app.add_subcommand("induce", "Split the data and induce a ruleset on the training part");
    app.add_subcommand("calibrate", "Calibrate one predictor per epsilon on the calibration split");
    app.add_subcommand("predict", "Write prediction sets for the test split");
    app.add_subcommand("ccs", "Relabel by conformal critical set membership and retrain");
    app.add_subcommand("eval", "Write the error/size report and CCS metrics");
    app.add_subcommand("run", "induce, calibrate, predict, ccs and eval in sequence");

    std::string toy_variant, toy_out;
    auto* toy = app.add_subcommand("toy", "Write one of the hand-written 2D toy rulesets");
    toy->add_option("variant", toy_variant, "adjacent | low | high")->required();
    toy->add_option("--out", toy_out, "Output path (default <output-dir>/toy_<variant>.json)");

    GridArgs grid_args;
    auto* grid = app.add_subcommand("grid", "Dump s(x, label) over a uniform grid of a 2D ruleset");
    grid->add_option("--ruleset", grid_args.ruleset, "Ruleset JSON")->required();
    grid->add_option("--label", grid_args.label, "Label to score")->capture_default_str();
    grid->add_option("--resolution", grid_args.resolution, "Points per axis")->capture_default_str();
    grid->add_option("--out", grid_args.out, "Output CSV (default <output-dir>/grid_label<label>.csv)");

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a seeded synthetic dataset");
    generate->add_option("--kind", gen.kind, "blobs | xor")->capture_default_str();
    generate->add_option("--n", gen.n, "Number of rows")->capture_default_str();
    generate->add_option("--dims", gen.dims, "Features (blobs only)")->capture_default_str();
    generate->add_option("--separation", gen.separation, "Blob centre offset per feature")->capture_default_str();
    generate->add_option("--spread", gen.spread, "Blob standard deviation")->capture_default_str();
    generate->add_option("--out", gen.out, "Output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        cfg.data_path = data_path;
        cfg.output_dir = output_dir;
        cfg.split = {split[0], split[1], split[2]};
        cfg.score.kernel = parse_kernel(kernel);
        cfg.score.ratio_policy = parse_ratio_policy(ratio_policy);

        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "induce") {
            cmd_induce(cfg);
        } else if (name == "calibrate") {
            cmd_calibrate(cfg);
        } else if (name == "predict") {
            cmd_predict(cfg);
        } else if (name == "ccs") {
            cmd_ccs(cfg);
        } else if (name == "eval") {
            cmd_eval(cfg);
        } else if (name == "run") {
            cmd_run(cfg);
        } else if (name == "toy") {
            const auto variant = parse_toy_variant(toy_variant);
            if (variant == ToyVariant::high) {
                std::cerr << "note: the published high-overlap thresholds repeat the low-overlap ones\n";
            }
            cmd_toy(variant, toy_out.empty() ? cfg.output_dir / ("toy_" + toy_variant + ".json")
                                             : std::filesystem::path(toy_out));
        } else if (name == "grid") {
            const auto out = grid_args.out.empty()
                                 ? cfg.output_dir / ("grid_label" + std::to_string(grid_args.label) + ".csv")
                                 : std::filesystem::path(grid_args.out);
            cmd_grid(grid_args.ruleset, grid_args.label, grid_args.resolution, cfg.score, out);
        } else if (name == "generate") {
            Dataset data;
            if (gen.kind == "blobs") {
                data = make_blobs(gen.n, gen.dims, gen.separation, gen.spread, cfg.seed);
            } else if (gen.kind == "xor") {
                data = make_xor(gen.n, cfg.seed);
            } else {
                std::cerr << "error: unknown dataset kind '" << gen.kind << "'\n";
                return 2;
            }
            write_csv(data, gen.out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}
