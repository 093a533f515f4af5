#include "rulecp/dataset.hpp"

#include "rulecp/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace rulecp {

Dataset::Dataset(std::vector<std::string> feature_names, std::vector<double> values, std::vector<Label> labels)
    : feature_names_(std::move(feature_names)), values_(std::move(values)), labels_(std::move(labels)) {
    if (feature_names_.empty()) {
        throw InvalidInput("dataset needs at least one feature");
    }
    if (values_.size() != labels_.size() * feature_names_.size()) {
        throw InvalidInput("dataset value count does not match rows x features");
    }
}

std::size_t Dataset::count(Label y) const {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), y));
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    std::vector<double> values;
    std::vector<Label> labels;
    values.reserve(indices.size() * dims());
    labels.reserve(indices.size());
    for (std::size_t i : indices) {
        auto r = row(i);
        values.insert(values.end(), r.begin(), r.end());
        labels.push_back(labels_[i]);
    }
    return Dataset(feature_names_, std::move(values), std::move(labels));
}

Dataset Dataset::relabeled(std::vector<Label> labels) const {
    if (labels.size() != size()) {
        throw InvalidInput("relabel: label count does not match dataset size");
    }
    return Dataset(feature_names_, values_, std::move(labels));
}

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

std::string where(const std::string& source, std::size_t line, const std::string& column) {
    std::ostringstream os;
    os << source << ": line " << line << ", column '" << column << "'";
    return os.str();
}

} // namespace

Dataset parse_csv(const std::string& text, const std::string& source_name) {
    static constexpr std::array<Label, 2> kBinary{0, 1};
    return parse_csv(text, source_name, kBinary);
}

Dataset parse_csv(const std::string& text, const std::string& source_name, std::span<const Label> allowed_labels) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split_fields(line);
            break;
        }
    }
    if (header.size() < 2) {
        throw InvalidInput(source_name + ": header must name at least one feature and the label column");
    }
    std::vector<std::string> features(header.begin(), header.end() - 1);
    const std::string& label_name = header.back();

    std::vector<double> values;
    std::vector<Label> labels;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            std::ostringstream os;
            os << source_name << ": line " << line_no << ": expected " << header.size() << " fields, got "
               << fields.size();
            throw InvalidInput(os.str());
        }
        for (std::size_t c = 0; c < features.size(); ++c) {
            const std::string& f = fields[c];
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
                throw InvalidInput(where(source_name, line_no, features[c]) + ": not a number: '" + f + "'");
            }
            if (!std::isfinite(v)) {
                throw InvalidInput(where(source_name, line_no, features[c]) + ": non-finite value '" + f + "'");
            }
            values.push_back(v);
        }
        const std::string& lf = fields.back();
        long long y = 0;
        auto [ptr, ec] = std::from_chars(lf.data(), lf.data() + lf.size(), y);
        if (lf.empty() || ec != std::errc() || ptr != lf.data() + lf.size()) {
            throw InvalidInput(where(source_name, line_no, label_name) + ": label is not an integer: '" + lf + "'");
        }
        if (!allowed_labels.empty() &&
            std::find(allowed_labels.begin(), allowed_labels.end(), static_cast<Label>(y)) == allowed_labels.end()) {
            throw InvalidInput(where(source_name, line_no, label_name) + ": non-binary label '" + lf + "'");
        }
        labels.push_back(static_cast<Label>(y));
    }
    return Dataset(std::move(features), std::move(values), std::move(labels));
}

Dataset read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path.string());
}

std::string format_csv(const Dataset& data) {
    std::string out;
    for (const auto& name : data.feature_names()) {
        out += name;
        out += ',';
    }
    out += "label\n";
    char buf[32];
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (double v : data.row(i)) {
            std::snprintf(buf, sizeof buf, "%.17g,", v);
            out += buf;
        }
        out += std::to_string(data.label(i));
        out += '\n';
    }
    return out;
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidInput("cannot write " + path.string());
    }
    out << format_csv(data);
}

DataSplit stratified_split(const Dataset& data, SplitFractions fractions, std::uint64_t seed) {
    if (fractions.train <= 0 || fractions.calib <= 0 || fractions.test <= 0 ||
        std::abs(fractions.train + fractions.calib + fractions.test - 1.0) > 1e-9) {
        throw InvalidInput("split fractions must be positive and sum to 1");
    }
    std::vector<Label> classes(data.labels());
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> train, calib, test;
    for (Label y : classes) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (data.label(i) == y) {
                idx.push_back(i);
            }
        }
        std::shuffle(idx.begin(), idx.end(), rng);
        const auto n = idx.size();
        const auto n_train = static_cast<std::size_t>(std::llround(fractions.train * static_cast<double>(n)));
        const auto n_calib = std::min(n - n_train,
                                      static_cast<std::size_t>(std::llround(fractions.calib * static_cast<double>(n))));
        train.insert(train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
        calib.insert(calib.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train),
                     idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_calib));
        test.insert(test.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_calib), idx.end());
    }
    // Restore original row order inside each part.
    std::sort(train.begin(), train.end());
    std::sort(calib.begin(), calib.end());
    std::sort(test.begin(), test.end());
    return {data.subset(train), data.subset(calib), data.subset(test)};
}

Dataset make_blobs(std::size_t n, std::size_t dims, double separation, double spread, std::uint64_t seed) {
    if (dims == 0 || spread <= 0) {
        throw InvalidInput("make_blobs: dims must be >= 1 and spread > 0");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, spread);
    std::vector<std::string> names;
    for (std::size_t d = 0; d < dims; ++d) {
        names.push_back("x" + std::to_string(d + 1));
    }
    std::vector<double> values;
    std::vector<Label> labels;
    values.reserve(n * dims);
    for (std::size_t i = 0; i < n; ++i) {
        const Label y = static_cast<Label>(i % 2);
        const double centre = y == 1 ? separation : 0.0;
        for (std::size_t d = 0; d < dims; ++d) {
            values.push_back(centre + noise(rng));
        }
        labels.push_back(y);
    }
    return Dataset(std::move(names), std::move(values), std::move(labels));
}

Dataset make_xor(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> values;
    std::vector<Label> labels;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = unit(rng);
        const double b = unit(rng);
        values.push_back(a);
        values.push_back(b);
        labels.push_back((a > 0.5) != (b > 0.5) ? 1 : 0);
    }
    return Dataset({"x1", "x2"}, std::move(values), std::move(labels));
}

} // namespace rulecp
