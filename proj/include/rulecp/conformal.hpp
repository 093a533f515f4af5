#pragma once

#include "rulecp/ruleset.hpp"
#include "rulecp/scoring.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace rulecp {

inline constexpr double kInfiniteThreshold = std::numeric_limits<double>::infinity();

// 1-indexed rank ceil((n_c + 1)(1 - epsilon)) of the calibration quantile.
// A 1e-9 slack absorbs binary representation error in epsilon, so e.g.
// n_c = 99, epsilon = 0.05 gives rank 95 rather than 96.
std::size_t conformal_rank(std::size_t n_c, double epsilon);

// The rank-th smallest of `sorted_scores` (duplicates kept), or +infinity
// when the rank exceeds the number of scores.
double conformal_quantile(std::span<const double> sorted_scores, double epsilon);

class CalibratedPredictor {
public:
    CalibratedPredictor(Ruleset ruleset, ScoreConfig config, double epsilon, std::vector<double> calib_scores);

    // Restores a predictor from a stored threshold when the calibration scores
    // were not kept. calib_scores() is then empty; n_calib() still reports n_c.
    static CalibratedPredictor restore(Ruleset ruleset, ScoreConfig config, double epsilon, double threshold,
                                       std::size_t n_c);

    const Ruleset& ruleset() const { return ruleset_; }
    const ScoreConfig& config() const { return config_; }
    double epsilon() const { return epsilon_; }
    double threshold() const { return s_eps_; }
    bool threshold_is_infinite() const { return s_eps_ == kInfiniteThreshold; }
    std::size_t n_calib() const { return n_c_; }
    // Non-decreasing.
    const std::vector<double>& calib_scores() const { return calib_scores_; }

    // Same calibration scores, different epsilon. Requires retained scores.
    CalibratedPredictor with_epsilon(double epsilon) const;

private:
    Ruleset ruleset_;
    ScoreConfig config_;
    double epsilon_;
    std::vector<double> calib_scores_;
    std::size_t n_c_ = 0;
    double s_eps_ = kInfiniteThreshold;
};

// Scores every calibration sample at its true label and stores the quantile.
// Throws InvalidInput on an empty calibration set or epsilon outside (0,1).
CalibratedPredictor calibrate(const Ruleset& ruleset, const ScoreConfig& config, const Dataset& calibration_data,
                              double epsilon);

// Subset of {negative, positive} classes.
struct LabelSet {
    bool negative = false;
    bool positive = false;

    std::size_t size() const { return static_cast<std::size_t>(negative) + static_cast<std::size_t>(positive); }
    bool empty() const { return size() == 0; }
    friend bool operator==(const LabelSet&, const LabelSet&) = default;
};

struct PredictionSet {
    LabelSet labels;
    bool in_ccs = false;
    double score_negative = 1.0; // s(x, 0)
    double score_positive = 1.0; // s(x, +1)

    bool contains(Label y, const std::array<Label, 2>& classes) const {
        return y == classes[0] ? labels.negative : (y == classes[1] && labels.positive);
    }
};

// {y : s(x,y) <= s_eps}; in_ccs iff the set is exactly {+1}.
PredictionSet make_prediction_set(double score_negative, double score_positive, double threshold);

PredictionSet predict_set(const CalibratedPredictor& predictor, std::span<const double> point);

// +1 for points in the conformal critical set, -1 otherwise (empty or double
// sets, and {0} singletons). Never conflated with the original class 0.
inline constexpr Label kCritical = +1;
inline constexpr Label kNotCritical = -1;

std::vector<Label> relabel_ccs(const CalibratedPredictor& predictor, const Dataset& points);

} // namespace rulecp
