#pragma once

#include "rulecp/ruleset.hpp"

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace rulecp {

enum class DistanceKernel { reciprocal, exponential };
enum class RatioPolicy { strict, smoothed };

// Configuration of the rule-geometry score.
//
// kernel      phi(d) = 1/d (reciprocal) or exp(-alpha * d) (exponential).
// ratio       how the same-class / opposite-class mean-similarity ratio is
//             resolved when a mean is zero. strict: 0/0 -> 1, a/0 -> saturate,
//             0/b -> 0. smoothed: (same + kappa) / (opp + kappa).
// floor       boundary distances are clamped below by this value.
struct ScoreConfig {
    DistanceKernel kernel = DistanceKernel::reciprocal;
    double alpha = 1.0;
    RatioPolicy ratio_policy = RatioPolicy::strict;
    double kappa = 1.0;
    double distance_floor = 1e-12;

    // Throws InvalidInput on non-positive alpha/kappa/floor.
    void validate() const;
};

// gamma_hat value used when the strict ratio is a/0 with a > 0.
inline constexpr double kSaturatedGammaHat = std::numeric_limits<double>::max();
// tau_hat returns exactly 1 at or above this gamma_hat.
inline constexpr double kTauSaturation = 40.0;

struct OverlapRatio {
    double value = 1.0;
    bool saturated = false; // strict a/0 case: gamma_hat -> kSaturatedGammaHat
};

OverlapRatio resolve_overlap_ratio(double same_mean, double opposite_mean, const ScoreConfig& config);

double kernel(double distance, const ScoreConfig& config);

// Sum over features of phi(|x_i - l_i|) + phi(|x_i - u_i|). Callers only pass
// rules the point satisfies.
double gamma(std::span<const double> point, const Rule& rule, const ScoreConfig& config);

struct GammaHatTerms {
    double gamma = 0.0;
    double same_class_mean_similarity = 0.0;
    double opposite_class_mean_similarity = 0.0;
    OverlapRatio ratio;
    double gamma_hat = 0.0;
};

// Throws ContractViolation when the point does not satisfy rule `k`.
GammaHatTerms gamma_hat(std::span<const double> point, std::size_t k, const Ruleset& ruleset,
                        const ScoreConfig& config);

double tau_hat(double gamma_hat_value);

struct RuleFactor {
    std::string rule_id;
    double gamma = 0.0;
    double same_class_mean_similarity = 0.0;
    double opposite_class_mean_similarity = 0.0;
    double gamma_hat = 0.0;
    bool ratio_saturated = false;
    double tau_hat = 0.0;
    double relevance_factor = 0.0; // 1 - R(r_k)

    double factor() const { return tau_hat * relevance_factor; }
};

struct ScoreBreakdown {
    Label label = 0;
    RatioPolicy ratio_policy = RatioPolicy::strict;
    std::vector<RuleFactor> per_rule;
    double score = 1.0;
};

// s(x, y): product over satisfied rules predicting y of tau_hat * (1 - R).
// The empty product is 1.
ScoreBreakdown score(std::span<const double> point, Label label, const Ruleset& ruleset, const ScoreConfig& config);

// Same value as score(...).score without building the breakdown.
double score_value(std::span<const double> point, Label label, const Ruleset& ruleset, const ScoreConfig& config);

// s(x_i, y_i) at each sample's own label.
std::vector<double> true_label_scores(const Ruleset& ruleset, const ScoreConfig& config, const Dataset& data);

std::string to_string(DistanceKernel k);
std::string to_string(RatioPolicy p);
DistanceKernel parse_kernel(const std::string& s);
RatioPolicy parse_ratio_policy(const std::string& s);

} // namespace rulecp
