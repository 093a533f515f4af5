#include "rulecp/scoring.hpp"

#include "rulecp/error.hpp"

#include <algorithm>
#include <cmath>

namespace rulecp {

void ScoreConfig::validate() const {
    if (kernel == DistanceKernel::exponential && !(alpha > 0.0)) {
        throw InvalidInput("score config: alpha must be > 0 for the exponential kernel");
    }
    if (ratio_policy == RatioPolicy::smoothed && !(kappa > 0.0)) {
        throw InvalidInput("score config: kappa must be > 0 for the smoothed ratio policy");
    }
    if (!(distance_floor > 0.0)) {
        throw InvalidInput("score config: distance_floor must be > 0");
    }
}

OverlapRatio resolve_overlap_ratio(double same_mean, double opposite_mean, const ScoreConfig& config) {
    if (config.ratio_policy == RatioPolicy::smoothed) {
        return {(same_mean + config.kappa) / (opposite_mean + config.kappa), false};
    }
    if (opposite_mean == 0.0) {
        if (same_mean == 0.0) {
            return {1.0, false};
        }
        return {std::numeric_limits<double>::infinity(), true};
    }
    return {same_mean / opposite_mean, false};
}

double kernel(double distance, const ScoreConfig& config) {
    const double d = std::max(distance, config.distance_floor);
    return config.kernel == DistanceKernel::reciprocal ? 1.0 / d : std::exp(-config.alpha * d);
}

double gamma(std::span<const double> point, const Rule& rule, const ScoreConfig& config) {
    check_dims(point, rule.dims());
    double g = 0.0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        const auto& c = rule.intervals[i];
        g += kernel(std::abs(point[i] - c.low), config) + kernel(std::abs(point[i] - c.high), config);
    }
    return g;
}

namespace {

// gamma_hat for rule k given the already computed satisfied set.
GammaHatTerms gamma_hat_terms(std::span<const double> point, std::size_t k, std::span<const std::size_t> satisfied,
                              const Ruleset& ruleset, const ScoreConfig& config) {
    const Rule& rule = ruleset.rule(k);
    double same_sum = 0.0, opp_sum = 0.0;
    std::size_t same_n = 0, opp_n = 0;
    for (std::size_t j : satisfied) {
        if (j == k) {
            continue;
        }
        if (ruleset.rule(j).label == rule.label) {
            same_sum += ruleset.similarity(k, j);
            ++same_n;
        } else {
            opp_sum += ruleset.similarity(k, j);
            ++opp_n;
        }
    }
    GammaHatTerms t;
    t.gamma = gamma(point, rule, config);
    t.same_class_mean_similarity = same_n ? same_sum / static_cast<double>(same_n) : 0.0;
    t.opposite_class_mean_similarity = opp_n ? opp_sum / static_cast<double>(opp_n) : 0.0;
    t.ratio = resolve_overlap_ratio(t.same_class_mean_similarity, t.opposite_class_mean_similarity, config);
    t.gamma_hat = t.ratio.saturated ? kSaturatedGammaHat : t.gamma * t.ratio.value;
    return t;
}

} // namespace

GammaHatTerms gamma_hat(std::span<const double> point, std::size_t k, const Ruleset& ruleset,
                        const ScoreConfig& config) {
    if (k >= ruleset.size()) {
        throw ContractViolation("gamma_hat: rule index out of range");
    }
    auto satisfied = ruleset.satisfied_by(point);
    if (std::find(satisfied.begin(), satisfied.end(), k) == satisfied.end()) {
        throw ContractViolation("gamma_hat: point does not satisfy rule '" + ruleset.rule(k).id + "'");
    }
    return gamma_hat_terms(point, k, satisfied, ruleset, config);
}

double tau_hat(double gamma_hat_value) {
    if (gamma_hat_value >= kTauSaturation) {
        return 1.0;
    }
    return 1.0 / (1.0 + std::exp(-gamma_hat_value));
}

ScoreBreakdown score(std::span<const double> point, Label label, const Ruleset& ruleset, const ScoreConfig& config) {
    auto satisfied = ruleset.satisfied_by(point);
    ScoreBreakdown out;
    out.label = label;
    out.ratio_policy = config.ratio_policy;
    for (std::size_t k : satisfied) {
        const Rule& rule = ruleset.rule(k);
        if (rule.label != label) {
            continue;
        }
        const auto t = gamma_hat_terms(point, k, satisfied, ruleset, config);
        RuleFactor f;
        f.rule_id = rule.id;
        f.gamma = t.gamma;
        f.same_class_mean_similarity = t.same_class_mean_similarity;
        f.opposite_class_mean_similarity = t.opposite_class_mean_similarity;
        f.gamma_hat = t.gamma_hat;
        f.ratio_saturated = t.ratio.saturated;
        f.tau_hat = tau_hat(t.gamma_hat);
        f.relevance_factor = 1.0 - rule.relevance;
        out.score *= f.factor();
        out.per_rule.push_back(std::move(f));
    }
    return out;
}

double score_value(std::span<const double> point, Label label, const Ruleset& ruleset, const ScoreConfig& config) {
    auto satisfied = ruleset.satisfied_by(point);
    double s = 1.0;
    for (std::size_t k : satisfied) {
        const Rule& rule = ruleset.rule(k);
        if (rule.label != label) {
            continue;
        }
        const auto t = gamma_hat_terms(point, k, satisfied, ruleset, config);
        s *= tau_hat(t.gamma_hat) * (1.0 - rule.relevance);
    }
    return s;
}

std::vector<double> true_label_scores(const Ruleset& ruleset, const ScoreConfig& config, const Dataset& data) {
    std::vector<double> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        out[i] = score_value(data.row(i), data.label(i), ruleset, config);
    }
    return out;
}

std::string to_string(DistanceKernel k) {
    return k == DistanceKernel::reciprocal ? "reciprocal" : "exponential";
}

std::string to_string(RatioPolicy p) {
    return p == RatioPolicy::strict ? "strict" : "smoothed";
}

DistanceKernel parse_kernel(const std::string& s) {
    if (s == "reciprocal") {
        return DistanceKernel::reciprocal;
    }
    if (s == "exponential") {
        return DistanceKernel::exponential;
    }
    throw InvalidInput("unknown kernel '" + s + "' (expected reciprocal or exponential)");
}

RatioPolicy parse_ratio_policy(const std::string& s) {
    if (s == "strict") {
        return RatioPolicy::strict;
    }
    if (s == "smoothed") {
        return RatioPolicy::smoothed;
    }
    throw InvalidInput("unknown ratio policy '" + s + "' (expected strict or smoothed)");
}

} // namespace rulecp
