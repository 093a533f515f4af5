#include "rulecp/pipeline.hpp"

#include "rulecp/conformal.hpp"
#include "rulecp/error.hpp"
#include "rulecp/evaluation.hpp"
#include "rulecp/serialize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace rulecp {

namespace fs = std::filesystem;

void PipelineConfig::validate() const {
    if (split.train <= 0 || split.calib <= 0 || split.test <= 0 ||
        std::abs(split.train + split.calib + split.test - 1.0) > 1e-9) {
        throw InvalidInput("config: split fractions must be positive and sum to 1");
    }
    if (epsilons.empty()) {
        throw InvalidInput("config: epsilon list is empty");
    }
    for (double e : epsilons) {
        if (!(e > 0.0 && e < 1.0)) {
            throw InvalidInput("config: every epsilon must lie in (0, 1)");
        }
    }
    if (!(ccs_epsilon > 0.0 && ccs_epsilon < 1.0)) {
        throw InvalidInput("config: ccs epsilon must lie in (0, 1)");
    }
    score.validate();
    inducer.validate();
}

namespace artifact {

namespace {
std::string eps_tag(double epsilon) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", epsilon);
    return buf;
}
} // namespace

std::string predictor(double epsilon) {
    return "predictor_eps" + eps_tag(epsilon) + ".json";
}

std::string predictions(double epsilon) {
    return "predictions_eps" + eps_tag(epsilon) + ".json";
}

} // namespace artifact

namespace {

Dataset read_split(const PipelineConfig& config, const char* name) {
    const auto path = config.output_dir / name;
    if (!fs::exists(path)) {
        throw InvalidInput("missing artifact " + path.string() + " (run induce first)");
    }
    return read_csv(path);
}

Ruleset read_artifact_ruleset(const fs::path& path) {
    if (!fs::exists(path)) {
        throw InvalidInput("missing artifact " + path.string());
    }
    return read_ruleset(path);
}

CalibratedPredictor read_predictor(const PipelineConfig& config, double epsilon) {
    const auto path = config.output_dir / artifact::predictor(epsilon);
    if (!fs::exists(path)) {
        throw InvalidInput("missing artifact " + path.string() + " (run calibrate with this epsilon)");
    }
    return predictor_from_json(read_json(path), config.output_dir);
}

void check_dims_match(const Ruleset& rs, const Dataset& data, const std::string& what) {
    if (rs.dims() != data.dims()) {
        throw SchemaError(what + ": ruleset has " + std::to_string(rs.dims()) + " features, data has " +
                          std::to_string(data.dims()));
    }
}

std::string describe_rule(const Rule& r, const std::vector<std::string>& names) {
    std::ostringstream os;
    os.precision(6);
    os << r.id << ": if ";
    for (std::size_t i = 0; i < r.dims(); ++i) {
        const auto& c = r.intervals[i];
        os << (i ? " and " : "") << c.low << (c.low_open ? " < " : " <= ") << names[i]
           << (c.high_open ? " < " : " <= ") << c.high;
    }
    os << " then y = " << r.label << "  (covering " << r.covering << ", error " << r.error << ", relevance "
       << r.relevance << ")";
    return os.str();
}

std::string induction_log(const Ruleset& rs, const DataSplit& split) {
    std::ostringstream os;
    os << "train " << split.train.size() << ", calib " << split.calib.size() << ", test " << split.test.size()
       << "\n";
    os << rs.size() << " rules\n";
    for (const auto& r : rs.rules()) {
        os << describe_rule(r, rs.feature_names()) << "\n";
    }
    for (Label y : rs.missing_classes()) {
        os << "warning: no rule predicts class " << y << "\n";
    }
    const auto diag = similarity_diagnostics(rs);
    for (const auto& p : diag.adjacent_zero_similarity) {
        os << "note: " << rs.rule(p.a).id << " and " << rs.rule(p.b).id << " are adjacent with zero similarity\n";
    }
    for (const auto& p : diag.degenerate) {
        os << "warning: " << rs.rule(p.a).id << " and " << rs.rule(p.b).id
           << " have zero union volume; similarity reported as 0\n";
    }
    return os.str();
}

} // namespace

void cmd_induce(const PipelineConfig& config) {
    config.validate();
    const auto data = read_csv(config.data_path);
    fs::create_directories(config.output_dir);
    const auto split = stratified_split(data, config.split, config.seed);
    auto inducer = config.inducer;
    inducer.seed = config.seed;
    const auto rs = induce_rules(split.train, inducer);
    write_csv(split.train, config.output_dir / artifact::train);
    write_csv(split.calib, config.output_dir / artifact::calib);
    write_csv(split.test, config.output_dir / artifact::test);
    write_ruleset(rs, config.output_dir / artifact::ruleset);
    write_text(config.output_dir / artifact::induce_log, induction_log(rs, split));
}

void cmd_calibrate(const PipelineConfig& config) {
    config.validate();
    const auto rs_path = config.output_dir / artifact::ruleset;
    const auto rs = read_artifact_ruleset(rs_path);
    const auto calib = read_split(config, artifact::calib);
    check_dims_match(rs, calib, "calibrate");
    const RulesetRef ref{artifact::ruleset, content_digest(read_text(rs_path))};

    std::vector<double> scores;
    const auto timing = time_calibration([&] { scores = true_label_scores(rs, config.score, calib); });
    const CalibratedPredictor base(rs, config.score, config.epsilons.front(), scores);
    auto epsilons = config.epsilons;
    if (std::find(epsilons.begin(), epsilons.end(), config.ccs_epsilon) == epsilons.end()) {
        epsilons.push_back(config.ccs_epsilon);
    }
    for (double eps : epsilons) {
        const auto p = base.with_epsilon(eps);
        write_text(config.output_dir / artifact::predictor(eps), dump(to_json(p, ref, config.embed_scores)));
    }
    if (config.with_timing) {
        write_text(config.output_dir / artifact::timing,
                   dump(Json{{"seconds", timing.seconds}, {"n_c", calib.size()}, {"rules", rs.size()}}));
    }
}

void cmd_predict(const PipelineConfig& config) {
    config.validate();
    const auto test = read_split(config, artifact::test);
    for (double eps : config.epsilons) {
        const auto p = read_predictor(config, eps);
        check_dims_match(p.ruleset(), test, "predict");
        const auto& classes = p.ruleset().classes();
        Json points = Json::array();
        for (std::size_t i = 0; i < test.size(); ++i) {
            const auto row = test.row(i);
            const auto set = predict_set(p, row);
            Json labels = Json::array();
            if (set.labels.negative) {
                labels.push_back(classes[0]);
            }
            if (set.labels.positive) {
                labels.push_back(classes[1]);
            }
            Json entry = {{"index", i},
                          {"labels", std::move(labels)},
                          {"in_ccs", set.in_ccs},
                          {"scores", {set.score_negative, set.score_positive}}};
            if (config.explain) {
                entry["explain"] = {to_json(score(row, classes[0], p.ruleset(), p.config())),
                                    to_json(score(row, classes[1], p.ruleset(), p.config()))};
            }
            points.push_back(std::move(entry));
        }
        Json doc = {{"epsilon", eps},
                    {"s_eps", p.threshold_is_infinite() ? Json(nullptr) : Json(p.threshold())},
                    {"points", std::move(points)}};
        write_text(config.output_dir / artifact::predictions(eps), dump(doc));
    }
}

void cmd_ccs(const PipelineConfig& config) {
    config.validate();
    const auto train = read_split(config, artifact::train);
    const auto p = read_predictor(config, config.ccs_epsilon);
    check_dims_match(p.ruleset(), train, "ccs");
    auto inducer = config.inducer;
    inducer.seed = config.seed;
    const auto rs = retrain_on_ccs(train, p, inducer);
    write_csv(train.relabeled(relabel_ccs(p, train)), config.output_dir / artifact::ccs_labels);
    write_ruleset(rs, config.output_dir / artifact::ccs_ruleset);
}

void cmd_eval(const PipelineConfig& config) {
    config.validate();
    const auto test = read_split(config, artifact::test);
    const auto original = read_artifact_ruleset(config.output_dir / artifact::ruleset);
    check_dims_match(original, test, "eval");

    std::optional<double> calib_seconds;
    if (config.with_timing && fs::exists(config.output_dir / artifact::timing)) {
        calib_seconds = read_json(config.output_dir / artifact::timing).value("seconds", 0.0);
    }

    std::vector<EvaluationReport> rows;
    for (double eps : config.epsilons) {
        const auto p = read_predictor(config, eps);
        std::vector<PredictionSet> sets;
        sets.reserve(test.size());
        for (std::size_t i = 0; i < test.size(); ++i) {
            sets.push_back(predict_set(p, test.row(i)));
        }
        EvaluationReport r;
        r.epsilon = eps;
        r.sets = evaluate_sets(sets, test.labels(), p.ruleset().classes());
        r.calib_seconds = calib_seconds;
        rows.push_back(std::move(r));
    }

    Json doc = {{"rows", Json::array()}};
    for (const auto& r : rows) {
        doc["rows"].push_back(to_json(r));
    }
    std::string text = format_table(rows);

    const Label positive = original.classes()[1];
    Json original_block = {{"aggregate_precision", Json(nullptr)}, {"per_rule", Json::array()}};
    if (auto prec = union_precision(original, positive, test, positive)) {
        original_block["aggregate_precision"] = *prec;
    }
    for (const auto& a : audit_rules(original, positive, test, positive)) {
        original_block["per_rule"].push_back(to_json(a));
    }
    doc["original_rules"] = std::move(original_block);

    const auto ccs_path = config.output_dir / artifact::ccs_ruleset;
    if (fs::exists(ccs_path)) {
        const auto ccs_rs = read_ruleset(ccs_path);
        check_dims_match(ccs_rs, test, "eval");
        const auto m = evaluate_ccs_rules(ccs_rs, test, positive);
        Json block = {{"epsilon", config.ccs_epsilon}, {"metrics", to_json(m)}};
        block["aggregate_precision"] = Json(nullptr);
        if (auto prec = union_precision(ccs_rs, kCritical, test, positive)) {
            block["aggregate_precision"] = *prec;
        }
        block["per_rule"] = Json::array();
        for (const auto& a : audit_rules(ccs_rs, kCritical, test, positive)) {
            block["per_rule"].push_back(to_json(a));
        }
        doc["ccs"] = std::move(block);

        auto cell = [](const std::optional<double>& v) {
            char buf[32];
            if (!v) {
                return std::string("undef");
            }
            std::snprintf(buf, sizeof buf, "%.3f", *v);
            return std::string(buf);
        };
        char line[160];
        std::snprintf(line, sizeof line, "\nCCS rules (eps %g)  TPR %s  PPV %s  F1 %s\n", config.ccs_epsilon,
                      cell(m.tpr).c_str(), cell(m.ppv).c_str(), cell(m.f1).c_str());
        text += line;
    }
    write_text(config.output_dir / artifact::report_json, dump(doc));
    write_text(config.output_dir / artifact::report_txt, text);
}

void cmd_run(const PipelineConfig& config) {
    cmd_induce(config);
    cmd_calibrate(config);
    cmd_predict(config);
    cmd_ccs(config);
    cmd_eval(config);
}

void cmd_toy(ToyVariant variant, const fs::path& out) {
    if (out.has_parent_path()) {
        fs::create_directories(out.parent_path());
    }
    write_ruleset(toy_ruleset(variant), out);
}

std::string grid_csv(const Ruleset& ruleset, Label label, std::size_t resolution, const ScoreConfig& score) {
    if (ruleset.dims() != 2) {
        throw InvalidInput("grid: ruleset must be two-dimensional, got " + std::to_string(ruleset.dims()) +
                           " features");
    }
    if (resolution < 2) {
        throw InvalidInput("grid: resolution must be >= 2");
    }
    score.validate();
    const auto& lo = ruleset.bounds().lower();
    const auto& hi = ruleset.bounds().upper();
    std::string out = "x1,x2,score\n";
    char buf[96];
    const auto steps = static_cast<double>(resolution - 1);
    for (std::size_t i = 0; i < resolution; ++i) {
        const double x1 = lo[0] + (hi[0] - lo[0]) * static_cast<double>(i) / steps;
        for (std::size_t j = 0; j < resolution; ++j) {
            const double x2 = lo[1] + (hi[1] - lo[1]) * static_cast<double>(j) / steps;
            const std::array<double, 2> x{x1, x2};
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x1, x2, score_value(x, label, ruleset, score));
            out += buf;
        }
    }
    return out;
}

void cmd_grid(const fs::path& ruleset_path, Label label, std::size_t resolution, const ScoreConfig& score,
              const fs::path& out) {
    const auto rs = read_artifact_ruleset(ruleset_path);
    const auto text = grid_csv(rs, label, resolution, score);
    if (out.has_parent_path()) {
        fs::create_directories(out.parent_path());
    }
    write_text(out, text);
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const EmptyCcsError*>(&e)) {
        return 4;
    }
    if (dynamic_cast<const SchemaError*>(&e)) {
        return 3;
    }
    if (dynamic_cast<const InvalidInput*>(&e)) {
        return 2;
    }
    return 1;
}

} // namespace rulecp
