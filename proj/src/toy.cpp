#include "rulecp/toy.hpp"

#include "rulecp/error.hpp"

namespace rulecp {

ToyVariant parse_toy_variant(const std::string& name) {
    if (name == "adjacent") {
        return ToyVariant::adjacent;
    }
    if (name == "low") {
        return ToyVariant::low;
    }
    if (name == "high") {
        return ToyVariant::high;
    }
    throw InvalidInput("unknown toy variant '" + name + "' (expected adjacent, low or high)");
}

namespace {

// low < x <= high
Interval left_open(double low, double high) {
    return {low, high, true, false};
}

// low < x < high
Interval open(double low, double high) {
    return {low, high, true, true};
}

Rule toy_rule(std::string id, Interval x1, Interval x2, Label y) {
    return Rule{std::move(id), {x1, x2}, y, 0.0, 0.0, 0.0};
}

} // namespace

Ruleset toy_ruleset(ToyVariant variant) {
    // r2 is written with a strict upper bound on X1 in every variant.
    const Rule r2 = toy_rule("r2", open(0.27, 0.8), left_open(0.4, 0.75), 1);
    std::vector<Rule> rules;
    switch (variant) {
    case ToyVariant::adjacent:
        rules = {toy_rule("r1", left_open(0.07, 0.27), left_open(0.6, 1.0), 0), r2,
                 toy_rule("r3", left_open(0.8, 1.1), left_open(0.24, 0.55), 1)};
        break;
    case ToyVariant::low:
    case ToyVariant::high:
        rules = {toy_rule("r1", left_open(0.1, 0.3), left_open(0.6, 1.0), 0), r2,
                 toy_rule("r3", left_open(0.65, 0.95), left_open(0.24, 0.55), 1)};
        break;
    }
    return Ruleset(std::move(rules), FeatureBounds({0.0, 0.0}, {1.1, 1.0}), {"X1", "X2"});
}

} // namespace rulecp
