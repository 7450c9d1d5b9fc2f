#pragma once

// Grid containers and finite-difference stencils.
//
// Conventions used throughout the library:
//   - storage is row-major, indexed (row, col);
//   - x runs along columns and y along rows;
//   - grid spacing is one pixel;
//   - boundaries are replicated (homogeneous Neumann).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nls {

struct GridShape {
    std::size_t height = 0;
    std::size_t width = 0;

    std::size_t size() const noexcept { return height * width; }
    std::size_t index(std::size_t row, std::size_t col) const noexcept { return row * width + col; }

    friend bool operator==(const GridShape&, const GridShape&) = default;
};

/// Throws ContractViolation unless the shape is non-empty.
void require_nonempty(const GridShape& shape);

/// Throws ContractViolation unless both extents are at least 3 (one-cell stencil margin).
void require_stencil_shape(const GridShape& shape);

class ScalarField {
public:
    explicit ScalarField(GridShape shape, double fill = 0.0);

    /// Takes ownership of `values`; they must be finite and exactly shape.size() long.
    ScalarField(GridShape shape, std::vector<double> values);

    template <typename F>
    static ScalarField generate(GridShape shape, F&& fn) {
        ScalarField out(shape);
        for (std::size_t r = 0; r < shape.height; ++r)
            for (std::size_t c = 0; c < shape.width; ++c) out(r, c) = fn(r, c);
        return out;
    }

    const GridShape& shape() const noexcept { return shape_; }
    std::size_t height() const noexcept { return shape_.height; }
    std::size_t width() const noexcept { return shape_.width; }

    double operator()(std::size_t row, std::size_t col) const { return values_[shape_.index(row, col)]; }
    double& operator()(std::size_t row, std::size_t col) { return values_[shape_.index(row, col)]; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    bool all_finite() const noexcept;

    friend bool operator==(const ScalarField&, const ScalarField&) = default;

private:
    GridShape shape_;
    std::vector<double> values_;
};

/// Per-pixel region index in {1..n}.
class LabelMap {
public:
    LabelMap(GridShape shape, int region_count, int fill = 1);
    LabelMap(GridShape shape, int region_count, std::vector<int> labels);

    const GridShape& shape() const noexcept { return shape_; }
    int region_count() const noexcept { return region_count_; }

    int operator()(std::size_t row, std::size_t col) const { return labels_[shape_.index(row, col)]; }

    /// Throws ContractViolation when `label` is outside {1..n}.
    void set(std::size_t row, std::size_t col, int label);

    std::span<const int> labels() const noexcept { return labels_; }

    /// Number of pixels carrying `label`.
    std::size_t count(int label) const noexcept;

    friend bool operator==(const LabelMap&, const LabelMap&) = default;

private:
    GridShape shape_;
    int region_count_;
    std::vector<int> labels_;
};

/// Binary edge map, 1 = edge.
class EdgeLabelMap {
public:
    explicit EdgeLabelMap(GridShape shape);
    EdgeLabelMap(GridShape shape, std::vector<std::uint8_t> labels);

    const GridShape& shape() const noexcept { return shape_; }
    bool operator()(std::size_t row, std::size_t col) const { return labels_[shape_.index(row, col)] != 0; }
    void set(std::size_t row, std::size_t col, bool edge) { labels_[shape_.index(row, col)] = edge ? 1 : 0; }

    std::span<const std::uint8_t> labels() const noexcept { return labels_; }
    std::size_t edge_count() const noexcept;

    friend bool operator==(const EdgeLabelMap&, const EdgeLabelMap&) = default;

private:
    GridShape shape_;
    std::vector<std::uint8_t> labels_;
};

struct Gradient {
    ScalarField dx;  // along columns
    ScalarField dy;  // along rows
};

/// Central differences; at the border the missing neighbour is replaced by
/// the pixel itself, so e.g. dx(r, 0) = (f(r, 1) - f(r, 0)) / 2.
Gradient central_gradient(const ScalarField& field);

enum class Axis { Row, Column };
enum class HalfStep { Forward, Backward };

/// Two-point average onto the staggered half grid: Forward yields the value
/// at i+1/2, Backward at i-1/2, along `axis`. Stored at pixel i.
ScalarField half_point_average(const ScalarField& field, Axis axis, HalfStep step);

}  // namespace nls
