#include "rulecp/conformal.hpp"

#include "rulecp/error.hpp"

#include <algorithm>
#include <cmath>

namespace rulecp {

namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw InvalidInput("epsilon must lie in (0, 1)");
    }
}

} // namespace

std::size_t conformal_rank(std::size_t n_c, double epsilon) {
    check_epsilon(epsilon);
    const double target = static_cast<double>(n_c + 1) * (1.0 - epsilon);
    return static_cast<std::size_t>(std::ceil(target - 1e-9));
}

double conformal_quantile(std::span<const double> sorted_scores, double epsilon) {
    const auto rank = conformal_rank(sorted_scores.size(), epsilon);
    if (rank == 0) {
        return sorted_scores.empty() ? kInfiniteThreshold : sorted_scores.front();
    }
    if (rank > sorted_scores.size()) {
        return kInfiniteThreshold;
    }
    return sorted_scores[rank - 1];
}

CalibratedPredictor::CalibratedPredictor(Ruleset ruleset, ScoreConfig config, double epsilon,
                                         std::vector<double> calib_scores)
    : ruleset_(std::move(ruleset)), config_(config), epsilon_(epsilon), calib_scores_(std::move(calib_scores)) {
    check_epsilon(epsilon_);
    config_.validate();
    if (calib_scores_.empty()) {
        throw InvalidInput("calibration set is empty");
    }
    std::sort(calib_scores_.begin(), calib_scores_.end());
    n_c_ = calib_scores_.size();
    s_eps_ = conformal_quantile(calib_scores_, epsilon_);
}

CalibratedPredictor CalibratedPredictor::restore(Ruleset ruleset, ScoreConfig config, double epsilon,
                                                 double threshold, std::size_t n_c) {
    if (n_c == 0) {
        throw InvalidInput("calibration set is empty");
    }
    CalibratedPredictor p(std::move(ruleset), config, epsilon, std::vector<double>{0.0});
    p.calib_scores_.clear();
    p.n_c_ = n_c;
    p.s_eps_ = threshold;
    return p;
}

CalibratedPredictor CalibratedPredictor::with_epsilon(double epsilon) const {
    if (calib_scores_.empty()) {
        throw ContractViolation("with_epsilon: predictor was restored without calibration scores");
    }
    return CalibratedPredictor(ruleset_, config_, epsilon, calib_scores_);
}

CalibratedPredictor calibrate(const Ruleset& ruleset, const ScoreConfig& config, const Dataset& calibration_data,
                              double epsilon) {
    check_epsilon(epsilon);
    if (calibration_data.empty()) {
        throw InvalidInput("calibration set is empty");
    }
    if (calibration_data.dims() != ruleset.dims()) {
        throw InvalidInput("calibration data dimensionality does not match the ruleset");
    }
    config.validate();
    return CalibratedPredictor(ruleset, config, epsilon, true_label_scores(ruleset, config, calibration_data));
}

PredictionSet make_prediction_set(double score_negative, double score_positive, double threshold) {
    PredictionSet p;
    p.score_negative = score_negative;
    p.score_positive = score_positive;
    p.labels.negative = score_negative <= threshold;
    p.labels.positive = score_positive <= threshold;
    p.in_ccs = p.labels.positive && !p.labels.negative;
    return p;
}

PredictionSet predict_set(const CalibratedPredictor& predictor, std::span<const double> point) {
    const auto& rs = predictor.ruleset();
    return make_prediction_set(score_value(point, rs.classes()[0], rs, predictor.config()),
                               score_value(point, rs.classes()[1], rs, predictor.config()), predictor.threshold());
}

std::vector<Label> relabel_ccs(const CalibratedPredictor& predictor, const Dataset& points) {
    std::vector<Label> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        out[i] = predict_set(predictor, points.row(i)).in_ccs ? kCritical : kNotCritical;
    }
    return out;
}

} // namespace rulecp
