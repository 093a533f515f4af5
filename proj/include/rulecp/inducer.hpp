#pragma once

#include "rulecp/conformal.hpp"
#include "rulecp/dataset.hpp"
#include "rulecp/ruleset.hpp"

#include <array>
#include <cstdint>
#include <span>

namespace rulecp {

struct ClassAssignment {
    Label label = 0;
    bool no_rule_fired = false; // label is the tie-break default
};

// Relevance-weighted vote: for each class y, the summed relevance of the
// satisfied rules predicting y divided by the summed relevance of all rules
// predicting y (0 when that total is 0). Highest ratio wins; ties go to
// classes()[0].
ClassAssignment assign_class(const Ruleset& ruleset, std::span<const double> point);

struct InducerConfig {
    std::size_t max_rules = 8; // per class
    double min_covering = 0.02;
    double max_error = 0.1;
    std::size_t grid_resolution = 10;
    std::uint64_t seed = 42;

    void validate() const;
};

// Greedy sequential covering over a uniform grid.
//
// For each class in turn: pick an uncovered sample of that class as seed
// (first in a seeded shuffle), start from its grid cell and repeatedly apply
// the single-face extension (one or more cells in one direction) that covers
// the most weighted samples of the class while the rule error on the other
// class stays <= max_error. Covered samples are down-weighted, so later rules
// favour new ground but may still overlap earlier ones. Rules covering less
// than min_covering of their class are dropped. Bounds come from the data;
// rule statistics are measured on the training data.
//
// Labels must take exactly the two values in `classes`.
Ruleset induce_rules(const Dataset& training_data, const InducerConfig& config, std::array<Label, 2> classes = {0, 1});

// Relabels `original_data` with relabel_ccs and induces a {-1, +1} ruleset on
// it. Throws EmptyCcsError when no point lands in the CCS.
Ruleset retrain_on_ccs(const Dataset& original_data, const CalibratedPredictor& predictor, const InducerConfig& config);

} // namespace rulecp
