#pragma once

#include "rulecp/dataset.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace rulecp {

// Global per-feature bounds L_i < U_i of the feature space.
class FeatureBounds {
public:
    FeatureBounds() = default;
    FeatureBounds(std::vector<double> lower, std::vector<double> upper);

    // Per-feature min/max of the data. Constant features are widened by 0.5
    // on each side so the strict lower < upper invariant holds.
    static FeatureBounds from_data(const Dataset& data);

    std::size_t dims() const { return lower_.size(); }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

// One condition low (<|<=) x (<|<=) high. Openness only matters for membership.
struct Interval {
    double low = 0.0;
    double high = 0.0;
    bool low_open = false;
    bool high_open = false;

    bool contains(double x) const {
        return (low_open ? x > low : x >= low) && (high_open ? x < high : x <= high);
    }
    double width() const { return high - low; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// An if-then rule: conjunction of one interval per feature (unconstrained
// features span the full bounds) and the predicted class.
struct Rule {
    std::string id;
    std::vector<Interval> intervals;
    Label label = 0;
    double covering = 0.0;
    double error = 0.0;
    double relevance = 0.0;

    std::size_t dims() const { return intervals.size(); }
};

struct RuleStats {
    double covering = 0.0;
    double error = 0.0;
    double relevance = 0.0;
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    bool no_matching_samples = false; // covering defined as 0
    bool no_other_samples = false;    // error defined as 0
};

bool satisfies(const Rule& rule, std::span<const double> point);
double volume(const Rule& rule);
bool overlaps(const Rule& a, const Rule& b);
// Zero when the rules do not overlap.
double overlap_volume(const Rule& a, const Rule& b);
// Intersection-over-union of the two boxes. Zero when the union volume is zero.
double similarity(const Rule& a, const Rule& b);
RuleStats rule_stats(const Rule& rule, const Dataset& data);
Rule with_stats(Rule rule, const RuleStats& stats);

// Immutable collection of rules over shared bounds. Rule volumes and the
// pairwise similarity matrix are computed once at construction.
class Ruleset {
public:
    Ruleset() = default;

    // Throws InvalidInput when a rule has the wrong dimensionality, lies outside
    // the bounds, has low > high, breaks relevance == covering * (1 - error),
    // predicts a label outside `classes`, or reuses an id.
    Ruleset(std::vector<Rule> rules, FeatureBounds bounds, std::vector<std::string> feature_names,
            std::array<Label, 2> classes = {0, 1});

    std::size_t size() const { return rules_.size(); }
    std::size_t dims() const { return bounds_.dims(); }
    const std::vector<Rule>& rules() const { return rules_; }
    const Rule& rule(std::size_t k) const { return rules_[k]; }
    const FeatureBounds& bounds() const { return bounds_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }

    // {negative, positive}. Original problems use {0, 1}; CCS rulesets {-1, +1}.
    const std::array<Label, 2>& classes() const { return classes_; }

    double volume(std::size_t k) const { return volumes_[k]; }
    double similarity(std::size_t a, std::size_t b) const { return similarity_[a * rules_.size() + b]; }

    // Indices of the rules the point satisfies, in rule order.
    std::vector<std::size_t> satisfied_by(std::span<const double> point) const;

    // Classes with no rule at all (degenerate but allowed).
    std::vector<Label> missing_classes() const;

private:
    std::vector<Rule> rules_;
    FeatureBounds bounds_;
    std::vector<std::string> feature_names_;
    std::array<Label, 2> classes_{0, 1};
    std::vector<double> volumes_;
    std::vector<double> similarity_;
};

struct RulePair {
    std::size_t a = 0;
    std::size_t b = 0;
};

struct SimilarityDiagnostics {
    // Boxes that touch (overlap condition holds) but share zero volume, so q == 0.
    std::vector<RulePair> adjacent_zero_similarity;
    // Pairs whose union volume is zero; q is reported as 0.
    std::vector<RulePair> degenerate;
};

SimilarityDiagnostics similarity_diagnostics(const Ruleset& ruleset);

// Recompute covering/error/relevance of every rule on `data`.
Ruleset restat(const Ruleset& ruleset, const Dataset& data);

void check_dims(std::span<const double> point, std::size_t dims);

} // namespace rulecp
