#pragma once

#include "rulecp/ruleset.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace rulecp::testing {

// (low, high]
inline Interval lo_open(double low, double high) {
    return {low, high, true, false};
}

inline Interval closed(double low, double high) {
    return {low, high, false, false};
}

inline Rule make_rule(std::string id, Label label, std::vector<Interval> intervals, double relevance = 0.0) {
    Rule r;
    r.id = std::move(id);
    r.label = label;
    r.intervals = std::move(intervals);
    r.covering = relevance;
    r.error = 0.0;
    r.relevance = relevance;
    return r;
}

inline Ruleset unit_ruleset(std::vector<Rule> rules, std::size_t dims = 2) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < dims; ++i) {
        names.push_back("x" + std::to_string(i + 1));
    }
    return Ruleset(std::move(rules), FeatureBounds(std::vector<double>(dims, 0.0), std::vector<double>(dims, 1.0)),
                   std::move(names));
}

// Box inside the unit cube with random corners.
inline Rule random_box(std::mt19937_64& rng, std::size_t dims, std::string id, Label label) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Interval> iv;
    for (std::size_t i = 0; i < dims; ++i) {
        double a = u(rng), b = u(rng);
        if (a > b) {
            std::swap(a, b);
        }
        iv.push_back(lo_open(a, b));
    }
    return make_rule(std::move(id), label, std::move(iv));
}

// Monte-Carlo intersection-over-union: uniform samples over the hull of the
// two boxes, membership by plain comparisons.
inline double monte_carlo_iou(const Rule& a, const Rule& b, std::size_t samples, std::mt19937_64& rng) {
    const std::size_t d = a.intervals.size();
    std::vector<std::uniform_real_distribution<double>> axis;
    for (std::size_t i = 0; i < d; ++i) {
        axis.emplace_back(std::min(a.intervals[i].low, b.intervals[i].low),
                          std::max(a.intervals[i].high, b.intervals[i].high));
    }
    std::vector<double> x(d);
    std::size_t in_a = 0, in_b = 0, in_both = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = axis[i](rng);
        }
        bool ia = true, ib = true;
        for (std::size_t i = 0; i < d; ++i) {
            ia = ia && x[i] >= a.intervals[i].low && x[i] <= a.intervals[i].high;
            ib = ib && x[i] >= b.intervals[i].low && x[i] <= b.intervals[i].high;
        }
        in_a += ia;
        in_b += ib;
        in_both += ia && ib;
    }
    const std::size_t uni = in_a + in_b - in_both;
    return uni == 0 ? 0.0 : static_cast<double>(in_both) / static_cast<double>(uni);
}

inline double sigmoid(double z) {
    return 1.0 / (1.0 + std::exp(-z));
}

} // namespace rulecp::testing
