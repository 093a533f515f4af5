#include "rulecp/serialize.hpp"

#include "rulecp/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rulecp {

namespace {

Json optional_number(const std::optional<double>& v) {
    return v ? Json(*v) : Json(nullptr);
}

// Field access that turns every nlohmann type/lookup error into SchemaError.
template <typename T>
T field(const Json& doc, const char* key, const char* what) {
    if (!doc.is_object() || !doc.contains(key)) {
        throw SchemaError(std::string(what) + ": missing field '" + key + "'");
    }
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string(what) + ": field '" + key + "' has the wrong type");
    }
}

} // namespace

Json to_json(const Ruleset& ruleset) {
    Json rules = Json::array();
    for (const auto& r : ruleset.rules()) {
        Json intervals = Json::array();
        for (const auto& c : r.intervals) {
            intervals.push_back({{"low", c.low}, {"high", c.high}, {"low_open", c.low_open}, {"high_open", c.high_open}});
        }
        rules.push_back({{"id", r.id},
                         {"label", r.label},
                         {"intervals", std::move(intervals)},
                         {"covering", r.covering},
                         {"error", r.error},
                         {"relevance", r.relevance}});
    }
    return {{"feature_names", ruleset.feature_names()},
            {"classes", {ruleset.classes()[0], ruleset.classes()[1]}},
            {"bounds", {{"lower", ruleset.bounds().lower()}, {"upper", ruleset.bounds().upper()}}},
            {"rules", std::move(rules)}};
}

Ruleset ruleset_from_json(const Json& doc) {
    constexpr const char* what = "ruleset";
    auto names = field<std::vector<std::string>>(doc, "feature_names", what);
    const auto& b = doc.contains("bounds") ? doc.at("bounds") : throw SchemaError("ruleset: missing field 'bounds'");
    auto lower = field<std::vector<double>>(b, "lower", "ruleset.bounds");
    auto upper = field<std::vector<double>>(b, "upper", "ruleset.bounds");
    std::array<Label, 2> classes{0, 1};
    if (doc.contains("classes")) {
        auto c = field<std::vector<Label>>(doc, "classes", what);
        if (c.size() != 2) {
            throw SchemaError("ruleset: 'classes' must have two entries");
        }
        classes = {c[0], c[1]};
    }
    const auto rules_doc = field<Json>(doc, "rules", what);
    if (!rules_doc.is_array()) {
        throw SchemaError("ruleset: 'rules' must be an array");
    }
    std::vector<Rule> rules;
    for (const auto& rd : rules_doc) {
        Rule r;
        r.id = field<std::string>(rd, "id", "rule");
        r.label = field<Label>(rd, "label", "rule");
        r.covering = field<double>(rd, "covering", "rule");
        r.error = field<double>(rd, "error", "rule");
        r.relevance = field<double>(rd, "relevance", "rule");
        const auto ivs = field<Json>(rd, "intervals", "rule");
        if (!ivs.is_array()) {
            throw SchemaError("rule: 'intervals' must be an array");
        }
        for (const auto& iv : ivs) {
            r.intervals.push_back(Interval{field<double>(iv, "low", "interval"), field<double>(iv, "high", "interval"),
                                           field<bool>(iv, "low_open", "interval"),
                                           field<bool>(iv, "high_open", "interval")});
        }
        rules.push_back(std::move(r));
    }
    try {
        return Ruleset(std::move(rules), FeatureBounds(std::move(lower), std::move(upper)), std::move(names), classes);
    } catch (const InvalidInput& e) {
        throw SchemaError(e.what());
    }
}

Json to_json(const ScoreConfig& config) {
    return {{"kernel", to_string(config.kernel)},
            {"alpha", config.alpha},
            {"ratio_policy", to_string(config.ratio_policy)},
            {"kappa", config.kappa},
            {"distance_floor", config.distance_floor}};
}

ScoreConfig score_config_from_json(const Json& doc) {
    constexpr const char* what = "score_config";
    ScoreConfig c;
    try {
        c.kernel = parse_kernel(field<std::string>(doc, "kernel", what));
        c.alpha = field<double>(doc, "alpha", what);
        c.ratio_policy = parse_ratio_policy(field<std::string>(doc, "ratio_policy", what));
        c.kappa = field<double>(doc, "kappa", what);
        c.distance_floor = field<double>(doc, "distance_floor", what);
        c.validate();
    } catch (const InvalidInput& e) {
        throw SchemaError(e.what());
    }
    return c;
}

Json to_json(const ScoreBreakdown& breakdown) {
    Json per_rule = Json::array();
    for (const auto& f : breakdown.per_rule) {
        per_rule.push_back({{"rule_id", f.rule_id},
                            {"gamma", f.gamma},
                            {"same_class_mean_similarity", f.same_class_mean_similarity},
                            {"opposite_class_mean_similarity", f.opposite_class_mean_similarity},
                            {"gamma_hat", f.gamma_hat},
                            {"ratio_saturated", f.ratio_saturated},
                            {"tau_hat", f.tau_hat},
                            {"relevance_factor", f.relevance_factor}});
    }
    return {{"label", breakdown.label},
            {"ratio_policy", to_string(breakdown.ratio_policy)},
            {"per_rule", std::move(per_rule)},
            {"score", breakdown.score}};
}

Json to_json(const SetMetrics& m) {
    return {{"n", m.n},
            {"avg_err", m.avg_err},
            {"avg_err0", optional_number(m.avg_err0)},
            {"avg_err1", optional_number(m.avg_err1)},
            {"avg_empty", m.avg_empty},
            {"avg_single", m.avg_single},
            {"avg_double", m.avg_double},
            {"avg_single0", m.avg_single0},
            {"avg_single1", m.avg_single1}};
}

Json to_json(const CcsMetrics& m) {
    return {{"tp", m.tp},
            {"fp", m.fp},
            {"fn", m.fn},
            {"tpr", optional_number(m.tpr)},
            {"ppv", optional_number(m.ppv)},
            {"f1", optional_number(m.f1)}};
}

Json to_json(const RuleAudit& a) {
    return {{"id", a.id},
            {"covering", a.covering},
            {"error", a.error},
            {"precision", optional_number(a.precision)},
            {"relevance", a.relevance}};
}

Json to_json(const EvaluationReport& report) {
    Json doc = to_json(report.sets);
    doc["epsilon"] = report.epsilon;
    if (report.calib_seconds) {
        doc["calib_seconds"] = *report.calib_seconds;
    }
    if (report.ccs) {
        doc["ccs"] = to_json(*report.ccs);
    }
    if (!report.per_rule.empty()) {
        Json rules = Json::array();
        for (const auto& a : report.per_rule) {
            rules.push_back(to_json(a));
        }
        doc["per_rule"] = std::move(rules);
    }
    return doc;
}

Json to_json(const CalibratedPredictor& predictor, const RulesetRef& ref, bool embed_scores) {
    Json doc = {{"epsilon", predictor.epsilon()},
                {"s_eps", predictor.threshold_is_infinite() ? Json(nullptr) : Json(predictor.threshold())},
                {"n_c", predictor.n_calib()},
                {"score_config", to_json(predictor.config())},
                {"ruleset_ref", {{"path", ref.path}, {"digest", ref.digest}}},
                {"calib_scores_digest", scores_digest(predictor.calib_scores())}};
    if (embed_scores) {
        doc["calib_scores"] = predictor.calib_scores();
    }
    return doc;
}

CalibratedPredictor predictor_from_json(const Json& doc, const std::filesystem::path& base_dir) {
    constexpr const char* what = "predictor";
    const double epsilon = field<double>(doc, "epsilon", what);
    const auto n_c = field<std::size_t>(doc, "n_c", what);
    if (!doc.contains("s_eps")) {
        throw SchemaError("predictor: missing field 's_eps'");
    }
    const double threshold = doc.at("s_eps").is_null() ? kInfiniteThreshold : field<double>(doc, "s_eps", what);
    const auto config = score_config_from_json(field<Json>(doc, "score_config", what));
    const auto ref = field<Json>(doc, "ruleset_ref", what);
    const auto path = base_dir / field<std::string>(ref, "path", "predictor.ruleset_ref");
    const auto digest = field<std::string>(ref, "digest", "predictor.ruleset_ref");

    std::string text;
    try {
        text = read_text(path);
    } catch (const InvalidInput& e) {
        throw SchemaError(std::string("predictor: referenced ruleset is missing: ") + e.what());
    }
    if (content_digest(text) != digest) {
        throw SchemaError("predictor: ruleset digest mismatch for " + path.string());
    }
    Ruleset ruleset;
    try {
        ruleset = ruleset_from_json(Json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("predictor: referenced ruleset is not valid JSON");
    }

    try {
        if (doc.contains("calib_scores")) {
            auto scores = field<std::vector<double>>(doc, "calib_scores", what);
            if (scores_digest(scores) != field<std::string>(doc, "calib_scores_digest", what)) {
                throw SchemaError("predictor: calib_scores digest mismatch");
            }
            CalibratedPredictor p(std::move(ruleset), config, epsilon, std::move(scores));
            if (p.n_calib() != n_c || p.threshold() != threshold) {
                throw SchemaError("predictor: embedded scores do not reproduce n_c / s_eps");
            }
            return p;
        }
        return CalibratedPredictor::restore(std::move(ruleset), config, epsilon, threshold, n_c);
    } catch (const InvalidInput& e) {
        throw SchemaError(std::string("predictor: ") + e.what());
    }
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string scores_digest(std::span<const double> scores) {
    std::string text;
    char buf[32];
    for (double s : scores) {
        std::snprintf(buf, sizeof buf, "%.17g\n", s);
        text += buf;
    }
    return content_digest(text);
}

std::string dump(const Json& doc) {
    return doc.dump(2) + "\n";
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidInput("cannot write " + path.string());
    }
    out << text;
}

Json read_json(const std::filesystem::path& path) {
    const auto text = read_text(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(path.string() + ": not valid JSON: " + e.what());
    }
}

Ruleset read_ruleset(const std::filesystem::path& path) {
    return ruleset_from_json(read_json(path));
}

void write_ruleset(const Ruleset& ruleset, const std::filesystem::path& path) {
    write_text(path, dump(to_json(ruleset)));
}

} // namespace rulecp
