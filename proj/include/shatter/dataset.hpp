#pragma once

#include "shatter/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace shatter {

/// A set of n labeled points in R^d.
///
/// Coordinates are stored row-major. Labels are dense class ids in [0, C) and
/// every id has at least one point. Instances are immutable once constructed.
class labeled_dataset {
  public:
    labeled_dataset(std::vector<double> coords, std::size_t dim, std::vector<int> labels,
                    std::vector<std::string> class_names = {}, std::vector<std::string> feature_names = {})
        : coords_(std::move(coords)),
          labels_(std::move(labels)),
          class_names_(std::move(class_names)),
          feature_names_(std::move(feature_names)),
          dim_(dim) {
        if (dim_ == 0) {
            throw input_error("dataset must have at least one feature column");
        }
        if (labels_.empty()) {
            throw input_error("dataset is empty");
        }
        if (coords_.size() != labels_.size() * dim_) {
            throw input_error("coordinate count does not match n * d");
        }
        for (const double v : coords_) {
            if (!std::isfinite(v)) {
                throw input_error("dataset contains a non-finite coordinate");
            }
        }
        const int max_label = *std::max_element(labels_.begin(), labels_.end());
        if (*std::min_element(labels_.begin(), labels_.end()) < 0) {
            throw input_error("class labels must be non-negative");
        }
        num_classes_ = static_cast<std::size_t>(max_label) + 1;
        std::vector<bool> seen(num_classes_, false);
        for (const int y : labels_) {
            seen[static_cast<std::size_t>(y)] = true;
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
            throw input_error("class ids must be dense: every class in [0, C) needs a point");
        }
        if (class_names_.empty()) {
            for (std::size_t c = 0; c < num_classes_; ++c) {
                class_names_.push_back(std::to_string(c));
            }
        } else if (class_names_.size() != num_classes_) {
            throw input_error("class name count does not match the number of classes");
        }
        if (feature_names_.empty()) {
            for (std::size_t j = 0; j < dim_; ++j) {
                feature_names_.push_back("x" + std::to_string(j));
            }
        } else if (feature_names_.size() != dim_) {
            throw input_error("feature name count does not match the dimensionality");
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t num_classes() const noexcept { return num_classes_; }

    [[nodiscard]] std::span<const double> point(std::size_t i) const noexcept {
        return {coords_.data() + i * dim_, dim_};
    }
    [[nodiscard]] int label(std::size_t i) const noexcept { return labels_[i]; }

    [[nodiscard]] const std::vector<double>& coords() const noexcept { return coords_; }
    [[nodiscard]] const std::vector<int>& labels() const noexcept { return labels_; }
    [[nodiscard]] const std::vector<std::string>& class_names() const noexcept { return class_names_; }
    [[nodiscard]] const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }

    /// Sub-dataset made of the given rows. Class ids are re-encoded densely in
    /// order of first appearance among the selected rows.
    [[nodiscard]] labeled_dataset subset(std::span<const std::size_t> rows) const {
        std::vector<double> coords;
        coords.reserve(rows.size() * dim_);
        std::vector<int> labels;
        labels.reserve(rows.size());
        std::vector<int> remap(num_classes_, -1);
        std::vector<std::string> names;
        for (const std::size_t r : rows) {
            const auto p = point(r);
            coords.insert(coords.end(), p.begin(), p.end());
            int& id = remap[static_cast<std::size_t>(labels_[r])];
            if (id < 0) {
                id = static_cast<int>(names.size());
                names.push_back(class_names_[static_cast<std::size_t>(labels_[r])]);
            }
            labels.push_back(id);
        }
        return {std::move(coords), dim_, std::move(labels), std::move(names), feature_names_};
    }

    [[nodiscard]] friend bool operator==(const labeled_dataset&, const labeled_dataset&) = default;

  private:
    std::vector<double> coords_;
    std::vector<int> labels_;
    std::vector<std::string> class_names_;
    std::vector<std::string> feature_names_;
    std::size_t dim_{};
    std::size_t num_classes_{};
};

/// Per-axis min/max of a dataset, used to map points into [0,1]^d.
struct unit_cube_scaling {
    std::vector<double> min;
    std::vector<double> max;

    [[nodiscard]] static unit_cube_scaling fit(const labeled_dataset& data) {
        unit_cube_scaling s;
        const auto first = data.point(0);
        s.min.assign(first.begin(), first.end());
        s.max.assign(first.begin(), first.end());
        for (std::size_t i = 1; i < data.size(); ++i) {
            const auto p = data.point(i);
            for (std::size_t j = 0; j < data.dim(); ++j) {
                s.min[j] = std::min(s.min[j], p[j]);
                s.max[j] = std::max(s.max[j], p[j]);
            }
        }
        return s;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return min.size(); }

    // constant axes map to the cube centre
    [[nodiscard]] double apply(std::size_t axis, double v) const noexcept {
        const double span = max[axis] - min[axis];
        if (span == 0.0) {
            return 0.5;
        }
        return (v - min[axis]) / span;
    }

    void apply_in_place(std::span<double> p) const noexcept {
        for (std::size_t j = 0; j < p.size(); ++j) {
            p[j] = apply(j, p[j]);
        }
    }
};

/// Min-max rescaling of every axis into [0,1]. Axes with zero extent map to 0.5.
[[nodiscard]] inline labeled_dataset normalize_unit_cube(const labeled_dataset& raw) {
    const auto scaling = unit_cube_scaling::fit(raw);
    std::vector<double> coords = raw.coords();
    for (std::size_t i = 0; i < raw.size(); ++i) {
        scaling.apply_in_place(std::span<double>(coords.data() + i * raw.dim(), raw.dim()));
    }
    return {std::move(coords), raw.dim(), raw.labels(), raw.class_names(), raw.feature_names()};
}

/// Number of pairs of points with identical coordinates but different labels.
[[nodiscard]] inline std::size_t count_conflicting_duplicates(const labeled_dataset& data) {
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    auto less = [&](std::size_t a, std::size_t b) {
        const auto pa = data.point(a);
        const auto pb = data.point(b);
        return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    };
    std::sort(order.begin(), order.end(), less);
    std::size_t conflicts = 0;
    std::size_t run_start = 0;
    for (std::size_t k = 1; k <= order.size(); ++k) {
        if (k < order.size() && !less(order[run_start], order[k])) {
            continue;
        }
        for (std::size_t a = run_start; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                if (data.label(order[a]) != data.label(order[b])) {
                    ++conflicts;
                }
            }
        }
        run_start = k;
    }
    return conflicts;
}

/// Number of points whose coordinates repeat an earlier point, regardless of label.
[[nodiscard]] inline std::size_t count_duplicate_points(const labeled_dataset& data) {
    std::vector<std::vector<double>> rows;
    rows.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto p = data.point(i);
        rows.emplace_back(p.begin(), p.end());
    }
    std::sort(rows.begin(), rows.end());
    return static_cast<std::size_t>(rows.end() - std::unique(rows.begin(), rows.end()));
}

struct csv_options {
    /// Column holding the class label: a header name, or "#k" for the 0-based
    /// column index k. Empty selects the last column.
    std::string label;
    char delimiter = ',';
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
    while (!s.empty() && !not_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && !not_space(s.back())) {
        s.remove_suffix(1);
    }
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

inline std::vector<std::string> split_row(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::string_view rest(line);
    while (true) {
        const auto pos = rest.find(delim);
        cells.emplace_back(trim(rest.substr(0, pos)));
        if (pos == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(pos + 1);
    }
    return cells;
}

inline std::optional<double> parse_real(std::string_view cell) {
    if (!cell.empty() && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    double value{};
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

inline std::size_t resolve_label_column(const std::vector<std::string>& header, const std::string& column) {
    if (column.empty()) {
        return header.size() - 1;
    }
    if (column.front() == '#') {
        std::size_t idx{};
        const auto [ptr, ec] = std::from_chars(column.data() + 1, column.data() + column.size(), idx);
        if (ec != std::errc{} || ptr != column.data() + column.size()) {
            throw input_error("label column index '" + column + "' is not a non-negative integer");
        }
        if (idx >= header.size()) {
            throw input_error("label column index " + std::to_string(idx) + " is out of range (" +
                              std::to_string(header.size()) + " columns)");
        }
        return idx;
    }
    const auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end()) {
        throw input_error("label column '" + column + "' not found in header");
    }
    return static_cast<std::size_t>(it - header.begin());
}

}  // namespace detail

/// Reads a headered CSV. Every column other than the label column must hold
/// finite reals; labels are categorical and re-encoded by first appearance.
[[nodiscard]] inline labeled_dataset parse_csv(std::istream& in, const csv_options& opts = {},
                                               const std::string& source = "<stream>") {
    std::string line;
    if (!std::getline(in, line)) {
        throw input_error(source + ": empty dataset (no header row)");
    }
    const auto header = detail::split_row(line, opts.delimiter);
    if (header.size() < 2) {
        throw input_error(source + ": need at least one feature column and one label column");
    }
    const std::size_t label_col = detail::resolve_label_column(header, opts.label);

    std::vector<std::string> feature_names;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c != label_col) {
            feature_names.push_back(header[c]);
        }
    }

    std::vector<double> coords;
    std::vector<int> labels;
    std::vector<std::string> class_names;
    std::unordered_map<std::string, int> class_ids;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) {
            continue;
        }
        const auto cells = detail::split_row(line, opts.delimiter);
        if (cells.size() != header.size()) {
            throw input_error(source + ": row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                              " cells, header has " + std::to_string(header.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c == label_col) {
                continue;
            }
            const auto v = detail::parse_real(cells[c]);
            if (!v) {
                throw input_error(source + ": non-numeric feature cell at row " + std::to_string(row) +
                                  ", column '" + header[c] + "': '" + cells[c] + "'");
            }
            coords.push_back(*v);
        }
        const auto [it, inserted] = class_ids.try_emplace(cells[label_col], static_cast<int>(class_names.size()));
        if (inserted) {
            class_names.push_back(cells[label_col]);
        }
        labels.push_back(it->second);
    }
    if (labels.empty()) {
        throw input_error(source + ": empty dataset (header only)");
    }
    return {std::move(coords), header.size() - 1, std::move(labels), std::move(class_names),
            std::move(feature_names)};
}

[[nodiscard]] inline labeled_dataset load_csv(const std::string& path, const csv_options& opts = {}) {
    std::ifstream in(path);
    if (!in) {
        throw input_error("cannot open dataset file '" + path + "'");
    }
    return parse_csv(in, opts, path);
}

/// Unlabeled points: every column is a feature. Row-major coordinates plus
/// the column count.
struct feature_table {
    std::vector<double> coords;
    std::size_t dim{};
};

[[nodiscard]] inline feature_table load_feature_csv(const std::string& path, char delimiter = ',') {
    std::ifstream in(path);
    if (!in) {
        throw input_error("cannot open query file '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw input_error(path + ": empty file (no header row)");
    }
    const auto header = detail::split_row(line, delimiter);
    feature_table t;
    t.dim = header.size();
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) {
            continue;
        }
        const auto cells = detail::split_row(line, delimiter);
        if (cells.size() != t.dim) {
            throw input_error(path + ": row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                              " cells, header has " + std::to_string(t.dim));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto v = detail::parse_real(cells[c]);
            if (!v) {
                throw input_error(path + ": non-numeric feature cell at row " + std::to_string(row) + ", column '" +
                                  header[c] + "': '" + cells[c] + "'");
            }
            t.coords.push_back(*v);
        }
    }
    return t;
}

/// Writes a dataset in the format accepted by `load_csv` (label column last).
inline void write_csv(std::ostream& out, const labeled_dataset& data, const std::string& label_header = "label") {
    std::ostringstream buf;
    buf.precision(17);
    for (const auto& name : data.feature_names()) {
        buf << name << ',';
    }
    buf << label_header << '\n';
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (const double v : data.point(i)) {
            buf << v << ',';
        }
        buf << data.class_names()[static_cast<std::size_t>(data.label(i))] << '\n';
    }
    out << buf.str();
}

}  // namespace shatter
