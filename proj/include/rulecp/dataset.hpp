#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace rulecp {

using Label = int;

// Row-major table of D real features plus one integer label per row.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<std::string> feature_names, std::vector<double> values, std::vector<Label> labels);

    std::size_t size() const { return labels_.size(); }
    std::size_t dims() const { return feature_names_.size(); }
    bool empty() const { return labels_.empty(); }

    std::span<const double> row(std::size_t i) const { return {values_.data() + i * dims(), dims()}; }
    Label label(std::size_t i) const { return labels_[i]; }

    const std::vector<std::string>& feature_names() const { return feature_names_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<Label>& labels() const { return labels_; }

    std::size_t count(Label y) const;

    // Rows at the given indices, in that order.
    Dataset subset(std::span<const std::size_t> indices) const;
    // Same points, new labels.
    Dataset relabeled(std::vector<Label> labels) const;

private:
    std::vector<std::string> feature_names_;
    std::vector<double> values_;
    std::vector<Label> labels_;
};

// CSV: header row, last column is the label (0 or 1), '.' decimal separator.
// Errors name the offending line and column.
Dataset read_csv(const std::filesystem::path& path);
Dataset parse_csv(const std::string& text, const std::string& source_name = "<memory>");
// When `allowed_labels` is non-empty every label must be one of them.
Dataset parse_csv(const std::string& text, const std::string& source_name, std::span<const Label> allowed_labels);
void write_csv(const Dataset& data, const std::filesystem::path& path);
std::string format_csv(const Dataset& data);

struct SplitFractions {
    double train = 0.6;
    double calib = 0.2;
    double test = 0.2;
};

struct DataSplit {
    Dataset train;
    Dataset calib;
    Dataset test;
};

// Seeded stratified split. Each class is shuffled independently and cut by the
// fractions, so class proportions are preserved in every part.
DataSplit stratified_split(const Dataset& data, SplitFractions fractions, std::uint64_t seed);

// Two isotropic Gaussian blobs, class 0 centred at the origin and class 1 at
// (separation, ..., separation). Balanced classes, rows interleaved.
Dataset make_blobs(std::size_t n, std::size_t dims, double separation, double spread, std::uint64_t seed);

// Uniform points on [0,1]^2; label 1 when exactly one coordinate exceeds 0.5.
Dataset make_xor(std::size_t n, std::uint64_t seed);

} // namespace rulecp
