#include "rulecp/inducer.hpp"

#include "rulecp/error.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

namespace rulecp {

ClassAssignment assign_class(const Ruleset& ruleset, std::span<const double> point) {
    const auto& classes = ruleset.classes();
    std::array<double, 2> fired{0.0, 0.0};
    std::array<double, 2> total{0.0, 0.0};
    bool any = false;
    for (std::size_t k = 0; k < ruleset.size(); ++k) {
        const Rule& r = ruleset.rule(k);
        const std::size_t c = r.label == classes[1] ? 1 : 0;
        total[c] += r.relevance;
        if (satisfies(r, point)) {
            fired[c] += r.relevance;
            any = true;
        }
    }
    std::array<double, 2> ratio{0.0, 0.0};
    for (std::size_t c = 0; c < 2; ++c) {
        ratio[c] = total[c] > 0.0 ? fired[c] / total[c] : 0.0;
    }
    return {ratio[1] > ratio[0] ? classes[1] : classes[0], !any};
}

void InducerConfig::validate() const {
    if (max_rules < 1) {
        throw InvalidInput("inducer: max_rules must be >= 1");
    }
    if (grid_resolution < 2) {
        throw InvalidInput("inducer: grid_resolution must be >= 2");
    }
    if (!(min_covering > 0.0 && min_covering < 1.0)) {
        throw InvalidInput("inducer: min_covering must lie in (0, 1)");
    }
    if (!(max_error > 0.0 && max_error < 1.0)) {
        throw InvalidInput("inducer: max_error must lie in (0, 1)");
    }
}

namespace {

// Weight of a positive sample once an earlier rule of its class covers it.
constexpr double kCoveredWeight = 0.3;

struct Box {
    std::vector<std::size_t> lo; // inclusive cell indices
    std::vector<std::size_t> hi;
};

class Grid {
public:
    Grid(const Dataset& data, const FeatureBounds& bounds, std::size_t resolution)
        : dims_(data.dims()), resolution_(resolution), n_(data.size()) {
        edges_.resize(dims_);
        for (std::size_t j = 0; j < dims_; ++j) {
            const double lo = bounds.lower()[j];
            const double hi = bounds.upper()[j];
            auto& e = edges_[j];
            e.resize(resolution + 1);
            for (std::size_t k = 0; k <= resolution; ++k) {
                e[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(resolution);
            }
            e.front() = lo;
            e.back() = hi;
        }
        // Cells are (e[k], e[k+1]] except the first, which also holds e[0].
        cells_.resize(n_ * dims_);
        for (std::size_t i = 0; i < n_; ++i) {
            auto r = data.row(i);
            for (std::size_t j = 0; j < dims_; ++j) {
                const auto& e = edges_[j];
                auto it = std::lower_bound(e.begin() + 1, e.end(), r[j]);
                auto k = static_cast<std::size_t>(std::distance(e.begin() + 1, it));
                cells_[i * dims_ + j] = std::min(k, resolution - 1);
            }
        }
    }

    std::size_t cell(std::size_t i, std::size_t j) const { return cells_[i * dims_ + j]; }
    std::size_t resolution() const { return resolution_; }
    std::size_t dims() const { return dims_; }

    bool inside(std::size_t i, const Box& b, std::size_t skip_dim) const {
        for (std::size_t j = 0; j < dims_; ++j) {
            if (j == skip_dim) {
                continue;
            }
            const auto c = cell(i, j);
            if (c < b.lo[j] || c > b.hi[j]) {
                return false;
            }
        }
        return true;
    }

    std::vector<Interval> to_intervals(const Box& b) const {
        std::vector<Interval> out(dims_);
        for (std::size_t j = 0; j < dims_; ++j) {
            out[j] = Interval{edges_[j][b.lo[j]], edges_[j][b.hi[j] + 1], b.lo[j] > 0, false};
        }
        return out;
    }

private:
    std::size_t dims_;
    std::size_t resolution_;
    std::size_t n_;
    std::vector<std::vector<double>> edges_;
    std::vector<std::size_t> cells_;
};

struct Candidate {
    double objective;
    std::size_t negatives;
    std::size_t dim;
    std::size_t lo;
    std::size_t hi;
};

// Grow `box` greedily: objective = weighted positives - negatives, subject to
// negatives <= max_negatives.
Box grow(const Grid& grid, Box box, std::span<const double> weight, std::span<const char> positive,
         std::size_t max_negatives) {
    const auto g = grid.resolution();
    const auto n = weight.size();
    std::vector<double> pos_hist(g);
    std::vector<std::size_t> neg_hist(g);

    auto current_objective = [&] {
        double w = 0.0;
        std::size_t neg = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (grid.inside(i, box, grid.dims())) {
                if (positive[i]) {
                    w += weight[i];
                } else {
                    ++neg;
                }
            }
        }
        return w - static_cast<double>(neg);
    };
    double best_objective = current_objective();

    while (true) {
        std::optional<Candidate> best;
        for (std::size_t j = 0; j < grid.dims(); ++j) {
            std::fill(pos_hist.begin(), pos_hist.end(), 0.0);
            std::fill(neg_hist.begin(), neg_hist.end(), 0);
            for (std::size_t i = 0; i < n; ++i) {
                if (grid.inside(i, box, j)) {
                    const auto c = grid.cell(i, j);
                    if (positive[i]) {
                        pos_hist[c] += weight[i];
                    } else {
                        ++neg_hist[c];
                    }
                }
            }
            // Sum over the current extent in dim j.
            double base_w = 0.0;
            std::size_t base_neg = 0;
            for (std::size_t c = box.lo[j]; c <= box.hi[j]; ++c) {
                base_w += pos_hist[c];
                base_neg += neg_hist[c];
            }
            auto consider = [&](double w, std::size_t neg, std::size_t lo, std::size_t hi) {
                if (neg > max_negatives) {
                    return;
                }
                const double obj = w - static_cast<double>(neg);
                if (obj <= best_objective + 1e-12) {
                    return;
                }
                if (!best || obj > best->objective + 1e-12 ||
                    (obj > best->objective - 1e-12 && neg < best->negatives)) {
                    best = Candidate{obj, neg, j, lo, hi};
                }
            };
            double w = base_w;
            std::size_t neg = base_neg;
            for (std::size_t hi = box.hi[j] + 1; hi < g; ++hi) {
                w += pos_hist[hi];
                neg += neg_hist[hi];
                consider(w, neg, box.lo[j], hi);
            }
            w = base_w;
            neg = base_neg;
            for (std::size_t lo = box.lo[j]; lo-- > 0;) {
                w += pos_hist[lo];
                neg += neg_hist[lo];
                consider(w, neg, lo, box.hi[j]);
            }
        }
        if (!best) {
            return box;
        }
        box.lo[best->dim] = best->lo;
        box.hi[best->dim] = best->hi;
        best_objective = best->objective;
    }
}

} // namespace

Ruleset induce_rules(const Dataset& training_data, const InducerConfig& config, std::array<Label, 2> classes) {
    config.validate();
    if (training_data.empty()) {
        throw InvalidInput("induce_rules: empty training data");
    }
    for (Label y : training_data.labels()) {
        if (y != classes[0] && y != classes[1]) {
            throw InvalidInput("induce_rules: label " + std::to_string(y) + " is not one of the two classes");
        }
    }
    for (Label y : classes) {
        if (training_data.count(y) == 0) {
            throw InvalidInput("induce_rules: single-class data (no samples of class " + std::to_string(y) + ")");
        }
        if (training_data.count(y) < 2) {
            throw InvalidInput("induce_rules: need at least 2 samples of class " + std::to_string(y));
        }
    }

    const auto bounds = FeatureBounds::from_data(training_data);
    const Grid grid(training_data, bounds, config.grid_resolution);
    const auto n = training_data.size();
    const auto d = training_data.dims();

    std::mt19937_64 rng(config.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<Rule> rules;
    std::size_t next_id = 1;
    for (Label y : classes) {
        const std::size_t class_size = training_data.count(y);
        const std::size_t other_size = n - class_size;
        const auto max_negatives = static_cast<std::size_t>(config.max_error * static_cast<double>(other_size));

        std::vector<char> positive(n);
        std::vector<double> weight(n, 0.0);
        std::vector<bool> covered(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            positive[i] = training_data.label(i) == y;
            weight[i] = positive[i] ? 1.0 : 0.0;
        }

        std::size_t accepted = 0;
        std::size_t attempts = 0;
        auto seed_it = order.begin();
        while (accepted < config.max_rules && attempts < 4 * config.max_rules) {
            seed_it = std::find_if(seed_it, order.end(), [&](std::size_t i) { return positive[i] && !covered[i]; });
            if (seed_it == order.end()) {
                break;
            }
            ++attempts;
            const std::size_t seed = *seed_it;
            Box box{std::vector<std::size_t>(d), std::vector<std::size_t>(d)};
            for (std::size_t j = 0; j < d; ++j) {
                box.lo[j] = box.hi[j] = grid.cell(seed, j);
            }
            box = grow(grid, std::move(box), weight, positive, max_negatives);

            Rule rule{"", grid.to_intervals(box), y, 0.0, 0.0, 0.0};
            std::size_t hits = 0, negatives = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (satisfies(rule, training_data.row(i))) {
                    if (positive[i]) {
                        ++hits;
                        covered[i] = true;
                        weight[i] = kCoveredWeight;
                    } else {
                        ++negatives;
                    }
                }
            }
            covered[seed] = true;
            weight[seed] = std::min(weight[seed], kCoveredWeight);

            const double cov = static_cast<double>(hits) / static_cast<double>(class_size);
            if (cov < config.min_covering || negatives > max_negatives) {
                continue;
            }
            rule.id = "r" + std::to_string(next_id++);
            rules.push_back(with_stats(std::move(rule), {}));
            ++accepted;
        }
    }

    for (auto& r : rules) {
        r = with_stats(std::move(r), rule_stats(r, training_data));
    }
    return Ruleset(std::move(rules), bounds, training_data.feature_names(), classes);
}

Ruleset retrain_on_ccs(const Dataset& original_data, const CalibratedPredictor& predictor, const InducerConfig& config) {
    auto labels = relabel_ccs(predictor, original_data);
    const auto critical = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), kCritical));
    if (critical == 0) {
        throw EmptyCcsError("conformal critical set is empty at epsilon " + std::to_string(predictor.epsilon()));
    }
    return induce_rules(original_data.relabeled(std::move(labels)), config, {kNotCritical, kCritical});
}

} // namespace rulecp
