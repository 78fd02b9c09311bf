#pragma once

#include "shatter/dataset.hpp"
#include "shatter/equivalence.hpp"
#include "shatter/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace shatter {

/// Memory-based classifier: one Gaussian kernel per training point, with a
/// width tied to that point's open-ball radius. A query gets the class whose
/// kernels sum highest; ties go to the smaller class id.
struct rbf_classifier {
    static constexpr int format_version = 1;

    std::size_t dim{};
    std::vector<double> centers;  // row-major, already in the unit cube
    std::vector<double> sigmas;
    std::vector<int> labels;
    std::vector<std::string> class_names;
    unit_cube_scaling scaling;
    metric kind = metric::euclidean;

    [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
    [[nodiscard]] std::size_t num_classes() const noexcept { return class_names.size(); }
    [[nodiscard]] std::span<const double> center(std::size_t i) const noexcept {
        return {centers.data() + i * dim, dim};
    }
};

inline constexpr double default_width_scale = 0.5;

/// `data` must already be normalized; `scaling` is the map that normalized it
/// and is reapplied to queries. Zero or infinite radii fall back to the
/// smallest positive finite radius, or 1 when there is none.
[[nodiscard]] inline rbf_classifier build_classifier(const labeled_dataset& data, const open_ball_set& balls,
                                                     const unit_cube_scaling& scaling,
                                                     double width_scale = default_width_scale) {
    if (!(width_scale > 0.0) || !std::isfinite(width_scale)) {
        throw input_error("width scale must be a positive finite number");
    }
    if (balls.radii.size() != data.size()) {
        throw input_error("open-ball set does not match the dataset size");
    }
    if (scaling.dim() != data.dim()) {
        throw input_error("normalization does not match the dataset dimensionality");
    }
    double fallback = std::numeric_limits<double>::infinity();
    for (const double r : balls.radii) {
        if (r > 0.0 && std::isfinite(r)) {
            fallback = std::min(fallback, r);
        }
    }
    if (!std::isfinite(fallback)) {
        fallback = 1.0;
    }
    rbf_classifier clf;
    clf.dim = data.dim();
    clf.centers = data.coords();
    clf.labels = data.labels();
    clf.class_names = data.class_names();
    clf.scaling = scaling;
    clf.kind = balls.kind;
    clf.sigmas.reserve(data.size());
    for (const double r : balls.radii) {
        const double radius = (r > 0.0 && std::isfinite(r)) ? r : fallback;
        clf.sigmas.push_back(width_scale * radius);
    }
    return clf;
}

/// Class scores for a query that is already in the classifier's unit cube.
[[nodiscard]] inline std::vector<double> class_scores(const rbf_classifier& clf, std::span<const double> q) {
    std::vector<double> scores(clf.num_classes(), 0.0);
    for (std::size_t i = 0; i < clf.size(); ++i) {
        const double dist = distance(clf.kind, q, clf.center(i));
        const double s = clf.sigmas[i];
        scores[static_cast<std::size_t>(clf.labels[i])] += std::exp(-dist * dist / (2.0 * s * s));
    }
    return scores;
}

[[nodiscard]] inline int predict_normalized(const rbf_classifier& clf, std::span<const double> q) {
    const auto scores = class_scores(clf, q);
    // max_element keeps the first maximum, i.e. the smallest class id
    return static_cast<int>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

/// Predicts class ids for raw (un-normalized) queries, given row-major.
[[nodiscard]] inline std::vector<int> apply_classifier(const rbf_classifier& clf, std::span<const double> queries,
                                                       std::size_t query_dim) {
    if (query_dim != clf.dim || (query_dim != 0 && queries.size() % query_dim != 0)) {
        throw input_error("query dimensionality " + std::to_string(query_dim) + " does not match classifier (" +
                          std::to_string(clf.dim) + ")");
    }
    std::vector<int> out;
    std::vector<double> q(clf.dim);
    for (std::size_t off = 0; off < queries.size(); off += clf.dim) {
        std::copy_n(queries.begin() + static_cast<std::ptrdiff_t>(off), clf.dim, q.begin());
        clf.scaling.apply_in_place(q);
        out.push_back(predict_normalized(clf, q));
    }
    return out;
}

[[nodiscard]] inline std::vector<int> apply_classifier(const rbf_classifier& clf, const labeled_dataset& queries) {
    return apply_classifier(clf, queries.coords(), queries.dim());
}

[[nodiscard]] inline nlohmann::json to_json(const rbf_classifier& clf) {
    nlohmann::json centers = nlohmann::json::array();
    for (std::size_t i = 0; i < clf.size(); ++i) {
        const auto c = clf.center(i);
        centers.push_back(std::vector<double>(c.begin(), c.end()));
    }
    return {
        {"format", "shatter-rbf-classifier"},
        {"format_version", rbf_classifier::format_version},
        {"dimension", clf.dim},
        {"metric", std::string(to_string(clf.kind))},
        {"class_names", clf.class_names},
        {"normalization", {{"min", clf.scaling.min}, {"max", clf.scaling.max}}},
        {"centers", centers},
        {"labels", clf.labels},
        {"sigmas", clf.sigmas},
    };
}

[[nodiscard]] inline rbf_classifier classifier_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != "shatter-rbf-classifier") {
            throw input_error("not a classifier file");
        }
        if (j.at("format_version").get<int>() != rbf_classifier::format_version) {
            throw input_error("unsupported classifier format version " + j.at("format_version").dump());
        }
        rbf_classifier clf;
        clf.dim = j.at("dimension").get<std::size_t>();
        clf.kind = parse_metric(j.at("metric").get<std::string>());
        clf.class_names = j.at("class_names").get<std::vector<std::string>>();
        clf.scaling.min = j.at("normalization").at("min").get<std::vector<double>>();
        clf.scaling.max = j.at("normalization").at("max").get<std::vector<double>>();
        clf.labels = j.at("labels").get<std::vector<int>>();
        clf.sigmas = j.at("sigmas").get<std::vector<double>>();
        for (const auto& row : j.at("centers")) {
            const auto c = row.get<std::vector<double>>();
            if (c.size() != clf.dim) {
                throw input_error("classifier center has wrong dimensionality");
            }
            clf.centers.insert(clf.centers.end(), c.begin(), c.end());
        }
        if (clf.labels.size() != clf.sigmas.size() || clf.centers.size() != clf.labels.size() * clf.dim ||
            clf.scaling.dim() != clf.dim || clf.scaling.max.size() != clf.dim) {
            throw input_error("classifier arrays have inconsistent lengths");
        }
        for (const int y : clf.labels) {
            if (y < 0 || static_cast<std::size_t>(y) >= clf.class_names.size()) {
                throw input_error("classifier label out of range");
            }
        }
        for (const double s : clf.sigmas) {
            if (!(s > 0.0) || !std::isfinite(s)) {
                throw input_error("classifier widths must be positive and finite");
            }
        }
        return clf;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("malformed classifier file: ") + e.what());
    }
}

}  // namespace shatter
