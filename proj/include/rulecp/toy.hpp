#pragma once

#include "rulecp/ruleset.hpp"

#include <string>

namespace rulecp {

enum class ToyVariant { adjacent, low, high };

ToyVariant parse_toy_variant(const std::string& name);

// Three hand-written 2D rulesets over X1 in [0, 1.1], X2 in [0, 1] with
// increasing overlap between r1 (class 0), r2 and r3 (class 1). All
// relevances are 0 so only the geometry shapes the score.
//
// The published "high" thresholds are identical to the "low" ones; the
// fixture keeps them as printed.
Ruleset toy_ruleset(ToyVariant variant);

} // namespace rulecp
