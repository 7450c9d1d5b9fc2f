#include "nls/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nls/errors.hpp"

namespace nls {

void require_nonempty(const GridShape& shape) {
    require(shape.height >= 1 && shape.width >= 1, "grid shape must be non-empty");
}

void require_stencil_shape(const GridShape& shape) {
    require(shape.height >= 3 && shape.width >= 3,
            "grid must be at least 3x3, got " + std::to_string(shape.height) + "x" +
                std::to_string(shape.width));
}

ScalarField::ScalarField(GridShape shape, double fill) : shape_(shape), values_(shape.size(), fill) {
    require_nonempty(shape);
    require(std::isfinite(fill), "field fill value must be finite");
}

ScalarField::ScalarField(GridShape shape, std::vector<double> values)
    : shape_(shape), values_(std::move(values)) {
    require_nonempty(shape);
    require(values_.size() == shape.size(), "field value count does not match its shape");
    require(all_finite(), "field values must be finite");
}

bool ScalarField::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

LabelMap::LabelMap(GridShape shape, int region_count, int fill)
    : shape_(shape), region_count_(region_count), labels_(shape.size(), fill) {
    require_nonempty(shape);
    require(region_count >= 2, "label map needs at least two regions");
    require(fill >= 1 && fill <= region_count, "label fill outside {1..n}");
}

LabelMap::LabelMap(GridShape shape, int region_count, std::vector<int> labels)
    : shape_(shape), region_count_(region_count), labels_(std::move(labels)) {
    require_nonempty(shape);
    require(region_count >= 2, "label map needs at least two regions");
    require(labels_.size() == shape.size(), "label count does not match shape");
    for (int l : labels_) require(l >= 1 && l <= region_count, "label outside {1..n}: " + std::to_string(l));
}

void LabelMap::set(std::size_t row, std::size_t col, int label) {
    require(label >= 1 && label <= region_count_, "label outside {1..n}: " + std::to_string(label));
    labels_[shape_.index(row, col)] = label;
}

std::size_t LabelMap::count(int label) const noexcept {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

EdgeLabelMap::EdgeLabelMap(GridShape shape) : shape_(shape), labels_(shape.size(), 0) {
    require_nonempty(shape);
}

EdgeLabelMap::EdgeLabelMap(GridShape shape, std::vector<std::uint8_t> labels)
    : shape_(shape), labels_(std::move(labels)) {
    require_nonempty(shape);
    require(labels_.size() == shape.size(), "edge label count does not match shape");
    for (auto v : labels_) require(v <= 1, "edge labels must be binary");
}

std::size_t EdgeLabelMap::edge_count() const noexcept {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), std::uint8_t{1}));
}

Gradient central_gradient(const ScalarField& field) {
    const auto& s = field.shape();
    require_stencil_shape(s);
    Gradient g{ScalarField(s), ScalarField(s)};
    const std::size_t last_r = s.height - 1;
    const std::size_t last_c = s.width - 1;
    for (std::size_t r = 0; r < s.height; ++r) {
        const std::size_t up = r == 0 ? 0 : r - 1;
        const std::size_t down = r == last_r ? last_r : r + 1;
        for (std::size_t c = 0; c < s.width; ++c) {
            const std::size_t left = c == 0 ? 0 : c - 1;
            const std::size_t right = c == last_c ? last_c : c + 1;
            g.dx(r, c) = 0.5 * (field(r, right) - field(r, left));
            g.dy(r, c) = 0.5 * (field(down, c) - field(up, c));
        }
    }
    return g;
}

ScalarField half_point_average(const ScalarField& field, Axis axis, HalfStep step) {
    const auto& s = field.shape();
    require_stencil_shape(s);
    ScalarField out(s);
    for (std::size_t r = 0; r < s.height; ++r) {
        for (std::size_t c = 0; c < s.width; ++c) {
            std::size_t nr = r;
            std::size_t nc = c;
            if (axis == Axis::Row) {
                if (step == HalfStep::Forward) nr = std::min(r + 1, s.height - 1);
                else nr = r == 0 ? 0 : r - 1;
            } else {
                if (step == HalfStep::Forward) nc = std::min(c + 1, s.width - 1);
                else nc = c == 0 ? 0 : c - 1;
            }
            out(r, c) = 0.5 * (field(r, c) + field(nr, nc));
        }
    }
    return out;
}

}  // namespace nls
