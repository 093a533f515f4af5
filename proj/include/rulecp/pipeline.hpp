#pragma once

#include "rulecp/dataset.hpp"
#include "rulecp/inducer.hpp"
#include "rulecp/scoring.hpp"
#include "rulecp/toy.hpp"

#include <cstdint>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

namespace rulecp {

struct PipelineConfig {
    std::filesystem::path data_path;
    SplitFractions split;
    std::vector<double> epsilons{0.01, 0.05, 0.1, 0.2};
    double ccs_epsilon = 0.05;
    ScoreConfig score;
    InducerConfig inducer;
    std::uint64_t seed = 42;
    std::filesystem::path output_dir = "out";
    bool explain = false;
    bool embed_scores = true;
    bool with_timing = false;

    void validate() const;
};

// Artifact names inside output_dir.
namespace artifact {
inline constexpr const char* train = "train.csv";
inline constexpr const char* calib = "calib.csv";
inline constexpr const char* test = "test.csv";
inline constexpr const char* ruleset = "ruleset.json";
inline constexpr const char* induce_log = "induce.log";
inline constexpr const char* ccs_labels = "ccs_labels.csv";
inline constexpr const char* ccs_ruleset = "ccs_ruleset.json";
inline constexpr const char* timing = "calibration_timing.json";
inline constexpr const char* report_json = "report.json";
inline constexpr const char* report_txt = "report.txt";
std::string predictor(double epsilon);
std::string predictions(double epsilon);
} // namespace artifact

// Reads the CSV, splits it, induces a ruleset on the training part and writes
// the three splits, the ruleset and an induction log.
void cmd_induce(const PipelineConfig& config);
// One predictor file per epsilon, calibrated on calib.csv.
void cmd_calibrate(const PipelineConfig& config);
// Prediction sets for test.csv per epsilon, with breakdowns when explain is set.
void cmd_predict(const PipelineConfig& config);
// Relabels train.csv by CCS membership at ccs_epsilon and retrains. Throws
// EmptyCcsError when the CCS is empty.
void cmd_ccs(const PipelineConfig& config);
// Error/size table per epsilon, the CCS TPR/PPV/F1 block and per-rule audits.
void cmd_eval(const PipelineConfig& config);
// induce, calibrate, predict, ccs, eval.
void cmd_run(const PipelineConfig& config);

void cmd_toy(ToyVariant variant, const std::filesystem::path& out);
// CSV of (x1, x2, score) on a resolution x resolution grid spanning the bounds.
// Throws InvalidInput unless the ruleset is 2D.
void cmd_grid(const std::filesystem::path& ruleset_path, Label label, std::size_t resolution,
              const ScoreConfig& score, const std::filesystem::path& out);
std::string grid_csv(const Ruleset& ruleset, Label label, std::size_t resolution, const ScoreConfig& score);

// 0 success, 2 input error, 3 schema error, 4 empty CCS, 1 anything else.
int exit_code_for(const std::exception& e);

} // namespace rulecp
