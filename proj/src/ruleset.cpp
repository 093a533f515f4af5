#include "rulecp/ruleset.hpp"

#include "rulecp/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace rulecp {

FeatureBounds::FeatureBounds(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size() || lower_.empty()) {
        throw InvalidInput("feature bounds: lower and upper must have the same non-zero length");
    }
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (!(lower_[i] < upper_[i])) {
            std::ostringstream os;
            os << "feature bounds: feature " << i << " has lower " << lower_[i] << " >= upper " << upper_[i];
            throw InvalidInput(os.str());
        }
    }
}

FeatureBounds FeatureBounds::from_data(const Dataset& data) {
    if (data.empty()) {
        throw InvalidInput("feature bounds: empty dataset");
    }
    const auto d = data.dims();
    std::vector<double> lo(data.row(0).begin(), data.row(0).end());
    std::vector<double> hi = lo;
    for (std::size_t i = 1; i < data.size(); ++i) {
        auto r = data.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], r[j]);
            hi[j] = std::max(hi[j], r[j]);
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        if (lo[j] == hi[j]) {
            lo[j] -= 0.5;
            hi[j] += 0.5;
        }
    }
    return FeatureBounds(std::move(lo), std::move(hi));
}

void check_dims(std::span<const double> point, std::size_t dims) {
    if (point.size() != dims) {
        std::ostringstream os;
        os << "dimension mismatch: point has " << point.size() << " features, expected " << dims;
        throw InvalidInput(os.str());
    }
}

bool satisfies(const Rule& rule, std::span<const double> point) {
    check_dims(point, rule.dims());
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (!rule.intervals[i].contains(point[i])) {
            return false;
        }
    }
    return true;
}

double volume(const Rule& rule) {
    double v = 1.0;
    for (const auto& c : rule.intervals) {
        v *= std::abs(c.high - c.low);
    }
    return v;
}

bool overlaps(const Rule& a, const Rule& b) {
    if (a.dims() != b.dims()) {
        throw InvalidInput("overlaps: rules have different dimensionality");
    }
    for (std::size_t i = 0; i < a.dims(); ++i) {
        if (std::max(a.intervals[i].low, b.intervals[i].low) > std::min(a.intervals[i].high, b.intervals[i].high)) {
            return false;
        }
    }
    return true;
}

double overlap_volume(const Rule& a, const Rule& b) {
    if (!overlaps(a, b)) {
        return 0.0;
    }
    double v = 1.0;
    for (std::size_t i = 0; i < a.dims(); ++i) {
        v *= std::abs(std::min(a.intervals[i].high, b.intervals[i].high) -
                      std::max(a.intervals[i].low, b.intervals[i].low));
    }
    return v;
}

double similarity(const Rule& a, const Rule& b) {
    const double inter = overlap_volume(a, b);
    const double uni = volume(a) + volume(b) - inter;
    if (inter <= 0.0 || uni <= 0.0) {
        return 0.0;
    }
    return std::clamp(inter / uni, 0.0, 1.0);
}

RuleStats rule_stats(const Rule& rule, const Dataset& data) {
    if (data.empty()) {
        throw InvalidInput("rule_stats: empty dataset");
    }
    if (data.dims() != rule.dims()) {
        throw InvalidInput("rule_stats: dataset dimensionality does not match the rule");
    }
    RuleStats s;
    for (std::size_t j = 0; j < data.size(); ++j) {
        const bool hit = satisfies(rule, data.row(j));
        const bool match = data.label(j) == rule.label;
        if (hit) {
            ++(match ? s.tp : s.fp);
        } else {
            ++(match ? s.fn : s.tn);
        }
    }
    s.no_matching_samples = s.tp + s.fn == 0;
    s.no_other_samples = s.tn + s.fp == 0;
    s.covering = s.no_matching_samples ? 0.0 : static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fn);
    s.error = s.no_other_samples ? 0.0 : static_cast<double>(s.fp) / static_cast<double>(s.tn + s.fp);
    s.relevance = s.covering * (1.0 - s.error);
    return s;
}

Rule with_stats(Rule rule, const RuleStats& stats) {
    rule.covering = stats.covering;
    rule.error = stats.error;
    rule.relevance = stats.relevance;
    return rule;
}

Ruleset::Ruleset(std::vector<Rule> rules, FeatureBounds bounds, std::vector<std::string> feature_names,
                 std::array<Label, 2> classes)
    : rules_(std::move(rules)), bounds_(std::move(bounds)), feature_names_(std::move(feature_names)),
      classes_(classes) {
    const auto d = bounds_.dims();
    if (d == 0) {
        throw InvalidInput("ruleset: bounds are empty");
    }
    if (feature_names_.size() != d) {
        throw InvalidInput("ruleset: feature_names length does not match bounds");
    }
    if (classes_[0] == classes_[1]) {
        throw InvalidInput("ruleset: the two classes must differ");
    }
    std::set<std::string> ids;
    for (const auto& r : rules_) {
        const std::string who = "ruleset: rule '" + r.id + "'";
        if (!ids.insert(r.id).second) {
            throw InvalidInput(who + " has a duplicate id");
        }
        if (r.dims() != d) {
            throw InvalidInput(who + " has the wrong number of intervals");
        }
        if (r.label != classes_[0] && r.label != classes_[1]) {
            throw InvalidInput(who + " predicts a label outside the ruleset classes");
        }
        for (std::size_t i = 0; i < d; ++i) {
            const auto& c = r.intervals[i];
            if (!(c.low <= c.high)) {
                throw InvalidInput(who + " has an interval with low > high");
            }
            if (c.low < bounds_.lower()[i] || c.high > bounds_.upper()[i]) {
                throw InvalidInput(who + " extends outside the feature bounds on feature " + feature_names_[i]);
            }
        }
        const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
        if (!in_unit(r.covering) || !in_unit(r.error) || !in_unit(r.relevance)) {
            throw InvalidInput(who + " has covering/error/relevance outside [0,1]");
        }
        if (std::abs(r.relevance - r.covering * (1.0 - r.error)) > 1e-12) {
            throw InvalidInput(who + " breaks relevance == covering * (1 - error)");
        }
    }

    const auto m = rules_.size();
    volumes_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        volumes_[k] = rulecp::volume(rules_[k]);
    }
    similarity_.assign(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        similarity_[a * m + a] = volumes_[a] > 0.0 ? 1.0 : 0.0;
        for (std::size_t b = a + 1; b < m; ++b) {
            const double q = rulecp::similarity(rules_[a], rules_[b]);
            similarity_[a * m + b] = q;
            similarity_[b * m + a] = q;
        }
    }
}

std::vector<std::size_t> Ruleset::satisfied_by(std::span<const double> point) const {
    check_dims(point, dims());
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < rules_.size(); ++k) {
        if (satisfies(rules_[k], point)) {
            out.push_back(k);
        }
    }
    return out;
}

std::vector<Label> Ruleset::missing_classes() const {
    std::vector<Label> out;
    for (Label y : classes_) {
        if (std::none_of(rules_.begin(), rules_.end(), [y](const Rule& r) { return r.label == y; })) {
            out.push_back(y);
        }
    }
    return out;
}

SimilarityDiagnostics similarity_diagnostics(const Ruleset& ruleset) {
    SimilarityDiagnostics diag;
    for (std::size_t a = 0; a < ruleset.size(); ++a) {
        for (std::size_t b = a + 1; b < ruleset.size(); ++b) {
            const auto& ra = ruleset.rule(a);
            const auto& rb = ruleset.rule(b);
            const double inter = overlap_volume(ra, rb);
            if (ruleset.volume(a) + ruleset.volume(b) - inter <= 0.0) {
                diag.degenerate.push_back({a, b});
            } else if (overlaps(ra, rb) && inter == 0.0) {
                diag.adjacent_zero_similarity.push_back({a, b});
            }
        }
    }
    return diag;
}

Ruleset restat(const Ruleset& ruleset, const Dataset& data) {
    std::vector<Rule> rules;
    rules.reserve(ruleset.size());
    for (const auto& r : ruleset.rules()) {
        rules.push_back(with_stats(r, rule_stats(r, data)));
    }
    return Ruleset(std::move(rules), ruleset.bounds(), ruleset.feature_names(), ruleset.classes());
}

} // namespace rulecp
