#pragma once

#include "rulecp/conformal.hpp"
#include "rulecp/dataset.hpp"
#include "rulecp/ruleset.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rulecp {

// Error and size rates of a batch of prediction sets. Conditional errors are
// nullopt (reported as "undefined") when the class is absent.
struct SetMetrics {
    std::size_t n = 0;
    double avg_err = 0.0;
    std::optional<double> avg_err0;
    std::optional<double> avg_err1;
    double avg_empty = 0.0;
    double avg_single = 0.0;
    double avg_double = 0.0;
    // Singleton breakdown: rate of {0} and rate of {+1} sets over all samples.
    double avg_single0 = 0.0;
    double avg_single1 = 0.0;
};

// Throws InvalidInput on a length mismatch or an empty batch.
SetMetrics evaluate_sets(std::span<const PredictionSet> sets, std::span<const Label> true_labels,
                         std::array<Label, 2> classes = {0, 1});

struct CcsMetrics {
    std::size_t tp = 0, fp = 0, fn = 0;
    std::optional<double> tpr;
    std::optional<double> ppv;
    std::optional<double> f1;
};

// Binary metrics from counts. TPR is undefined without positives, PPV without
// positive predictions, F1 unless both are defined.
CcsMetrics ccs_metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

// Predicts with assign_class on a {-1, +1} ruleset and scores the +1
// predictions against ground-truth y == 1. -1 predictions are never compared
// with class 0.
CcsMetrics evaluate_ccs_rules(const Ruleset& retrained, const Dataset& test_data, Label critical_class = 1);

struct RuleAudit {
    std::string id;
    double covering = 0.0;
    double error = 0.0;
    std::optional<double> precision; // undefined when the rule fires on no sample
    double relevance = 0.0;          // as stored in the ruleset
};

// Covering/error/precision on `data` of each rule predicting `rule_label`,
// treating data label `data_positive` as the rule's class. Sorted by stored
// relevance, highest first.
std::vector<RuleAudit> audit_rules(const Ruleset& ruleset, Label rule_label, const Dataset& data, Label data_positive);

// Precision of the union of all rules predicting `rule_label`: among samples
// satisfying at least one such rule, the fraction with label `data_positive`.
std::optional<double> union_precision(const Ruleset& ruleset, Label rule_label, const Dataset& data,
                                      Label data_positive);

struct CalibrationTiming {
    double seconds = 0.0;
    bool measured = false;
    std::size_t repeats = 0;
};

// Wall-clock seconds (monotonic clock) of `scoring_run`. With repeats > 1 the
// median is reported. A null callable yields {0, unmeasured}.
CalibrationTiming time_calibration(const std::function<void()>& scoring_run, std::size_t repeats = 1);

// Times scoring the full calibration split.
CalibrationTiming time_calibration(const Ruleset& ruleset, const ScoreConfig& config, const Dataset& calibration_data,
                                   std::size_t repeats = 1);

struct EvaluationReport {
    double epsilon = 0.0;
    SetMetrics sets;
    std::optional<double> calib_seconds;
    std::optional<CcsMetrics> ccs;
    std::vector<RuleAudit> per_rule;
};

// Plain-text table with the columns eps, avgErr, avgErr0, avgErr1, avgEmpty,
// avgSingle, avgDouble.
std::string format_table(std::span<const EvaluationReport> rows);

} // namespace rulecp
