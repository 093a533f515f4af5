#pragma once

#include "rulecp/conformal.hpp"
#include "rulecp/evaluation.hpp"
#include "rulecp/ruleset.hpp"
#include "rulecp/scoring.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace rulecp {

using Json = nlohmann::json;

// Ruleset document:
//   { feature_names, classes, bounds: {lower[], upper[]},
//     rules: [{id, label, intervals: [{low, high, low_open, high_open}], covering, error, relevance}] }
// `classes` is optional on read and defaults to [0, 1].
Json to_json(const Ruleset& ruleset);
Ruleset ruleset_from_json(const Json& doc);

Json to_json(const ScoreConfig& config);
ScoreConfig score_config_from_json(const Json& doc);

Json to_json(const ScoreBreakdown& breakdown);
Json to_json(const SetMetrics& metrics);
Json to_json(const CcsMetrics& metrics);
Json to_json(const RuleAudit& audit);
Json to_json(const EvaluationReport& report);

struct RulesetRef {
    std::string path;   // relative to the predictor file
    std::string digest; // content_digest of the serialized ruleset
};

// Predictor document:
//   { epsilon, s_eps (null = +infinity), n_c, score_config, ruleset_ref: {path, digest},
//     calib_scores_digest, calib_scores? }
Json to_json(const CalibratedPredictor& predictor, const RulesetRef& ref, bool embed_scores);

// Reads a predictor document, loading the ruleset it references (resolved
// against `base_dir`) and checking both digests. Embedded scores must
// reproduce the stored threshold; without them the predictor is restored from
// the stored threshold alone.
CalibratedPredictor predictor_from_json(const Json& doc, const std::filesystem::path& base_dir);

// FNV-1a 64-bit, lower-case hex.
std::string content_digest(const std::string& bytes);
std::string scores_digest(std::span<const double> scores);

// Two-space indented, trailing newline.
std::string dump(const Json& doc);
Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

Ruleset read_ruleset(const std::filesystem::path& path);
void write_ruleset(const Ruleset& ruleset, const std::filesystem::path& path);

} // namespace rulecp
