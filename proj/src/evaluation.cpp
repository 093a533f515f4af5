#include "rulecp/evaluation.hpp"

#include "rulecp/error.hpp"
#include "rulecp/inducer.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace rulecp {

SetMetrics evaluate_sets(std::span<const PredictionSet> sets, std::span<const Label> true_labels,
                         std::array<Label, 2> classes) {
    if (sets.size() != true_labels.size()) {
        throw InvalidInput("evaluate_sets: prediction and label counts differ");
    }
    if (sets.empty()) {
        throw InvalidInput("evaluate_sets: no samples");
    }
    std::size_t err = 0, empty = 0, single = 0, dbl = 0, single0 = 0, single1 = 0;
    std::array<std::size_t, 2> n_class{0, 0}, err_class{0, 0};
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto& s = sets[i];
        const Label y = true_labels[i];
        const bool miss = !s.contains(y, classes);
        err += miss;
        for (std::size_t c = 0; c < 2; ++c) {
            if (y == classes[c]) {
                ++n_class[c];
                err_class[c] += miss;
            }
        }
        switch (s.labels.size()) {
        case 0:
            ++empty;
            break;
        case 1:
            ++single;
            ++(s.labels.negative ? single0 : single1);
            break;
        default:
            ++dbl;
        }
    }
    const auto n = static_cast<double>(sets.size());
    SetMetrics m;
    m.n = sets.size();
    m.avg_err = static_cast<double>(err) / n;
    if (n_class[0] > 0) {
        m.avg_err0 = static_cast<double>(err_class[0]) / static_cast<double>(n_class[0]);
    }
    if (n_class[1] > 0) {
        m.avg_err1 = static_cast<double>(err_class[1]) / static_cast<double>(n_class[1]);
    }
    m.avg_empty = static_cast<double>(empty) / n;
    m.avg_single = static_cast<double>(single) / n;
    m.avg_double = static_cast<double>(dbl) / n;
    m.avg_single0 = static_cast<double>(single0) / n;
    m.avg_single1 = static_cast<double>(single1) / n;
    return m;
}

CcsMetrics ccs_metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
    CcsMetrics m;
    m.tp = tp;
    m.fp = fp;
    m.fn = fn;
    if (tp + fn > 0) {
        m.tpr = static_cast<double>(tp) / static_cast<double>(tp + fn);
    }
    if (tp + fp > 0) {
        m.ppv = static_cast<double>(tp) / static_cast<double>(tp + fp);
    }
    if (m.tpr && m.ppv) {
        const double sum = *m.tpr + *m.ppv;
        m.f1 = sum > 0.0 ? 2.0 * *m.tpr * *m.ppv / sum : 0.0;
    }
    return m;
}

CcsMetrics evaluate_ccs_rules(const Ruleset& retrained, const Dataset& test_data, Label critical_class) {
    if (retrained.dims() != test_data.dims()) {
        throw InvalidInput("evaluate_ccs_rules: dimensionality mismatch");
    }
    const Label predicted_critical = retrained.classes()[1];
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < test_data.size(); ++i) {
        const bool pred = assign_class(retrained, test_data.row(i)).label == predicted_critical;
        const bool truth = test_data.label(i) == critical_class;
        if (pred && truth) {
            ++tp;
        } else if (pred) {
            ++fp;
        } else if (truth) {
            ++fn;
        }
    }
    return ccs_metrics_from_counts(tp, fp, fn);
}

std::vector<RuleAudit> audit_rules(const Ruleset& ruleset, Label rule_label, const Dataset& data,
                                   Label data_positive) {
    std::vector<RuleAudit> out;
    for (const auto& r : ruleset.rules()) {
        if (r.label != rule_label) {
            continue;
        }
        Rule probe = r;
        probe.label = data_positive;
        const auto s = rule_stats(probe, data);
        RuleAudit a;
        a.id = r.id;
        a.covering = s.covering;
        a.error = s.error;
        if (s.tp + s.fp > 0) {
            a.precision = static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fp);
        }
        a.relevance = r.relevance;
        out.push_back(std::move(a));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const RuleAudit& a, const RuleAudit& b) { return a.relevance > b.relevance; });
    return out;
}

std::optional<double> union_precision(const Ruleset& ruleset, Label rule_label, const Dataset& data,
                                      Label data_positive) {
    std::size_t hit = 0, correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto row = data.row(i);
        const bool fires = std::any_of(ruleset.rules().begin(), ruleset.rules().end(), [&](const Rule& r) {
            return r.label == rule_label && satisfies(r, row);
        });
        if (fires) {
            ++hit;
            correct += data.label(i) == data_positive;
        }
    }
    if (hit == 0) {
        return std::nullopt;
    }
    return static_cast<double>(correct) / static_cast<double>(hit);
}

CalibrationTiming time_calibration(const std::function<void()>& scoring_run, std::size_t repeats) {
    if (!scoring_run || repeats == 0) {
        return {};
    }
    std::vector<double> samples;
    for (std::size_t r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        scoring_run();
        const auto t1 = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(samples.begin(), samples.end());
    return {samples[samples.size() / 2], true, repeats};
}

CalibrationTiming time_calibration(const Ruleset& ruleset, const ScoreConfig& config, const Dataset& calibration_data,
                                   std::size_t repeats) {
    volatile double sink = 0.0;
    return time_calibration(
        [&] {
            double acc = 0.0;
            for (double s : true_label_scores(ruleset, config, calibration_data)) {
                acc += s;
            }
            sink = sink + acc;
        },
        repeats);
}

std::string format_table(std::span<const EvaluationReport> rows) {
    auto cell = [](std::optional<double> v) {
        char buf[32];
        if (!v) {
            return std::string("undef");
        }
        std::snprintf(buf, sizeof buf, "%.3f", *v);
        return std::string(buf);
    };
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-8s %8s %8s %8s %9s %10s %10s\n", "eps", "avgErr", "avgErr0", "avgErr1",
                  "avgEmpty", "avgSingle", "avgDouble");
    out += line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-8g %8s %8s %8s %9s %10s %10s\n", r.epsilon, cell(r.sets.avg_err).c_str(),
                      cell(r.sets.avg_err0).c_str(), cell(r.sets.avg_err1).c_str(), cell(r.sets.avg_empty).c_str(),
                      cell(r.sets.avg_single).c_str(), cell(r.sets.avg_double).c_str());
        out += line;
    }
    return out;
}

} // namespace rulecp
