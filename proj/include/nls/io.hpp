#pragma once

// On-disk formats.
//
// Probability stack (.nlsf), little-endian throughout:
//   "NLSF" | u32 version (1) | u32 height | u32 width | u32 n | u32 edge channels (1)
//   | f32 values, channel-major then row-major, region channels first, edge last.
//
// Label and edge maps are binary PGM (P5, maxval 255) holding the raw label
// values (1..n, or 0/1 for edges). Overlays are binary PPM (P6).

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nls/feature.hpp"
#include "nls/field.hpp"
#include "nls/solver.hpp"

namespace nls::io {

inline constexpr std::uint32_t kStackFormatVersion = 1;

std::vector<std::uint8_t> encode_stack(const ProbabilityStack& stack);
ProbabilityStack decode_stack(const std::vector<std::uint8_t>& bytes);

void write_stack(const std::filesystem::path& path, const ProbabilityStack& stack);
ProbabilityStack read_stack(const std::filesystem::path& path);

struct GrayImage {
    GridShape shape;
    std::vector<std::uint8_t> pixels;
};

void write_pgm(const std::filesystem::path& path, const GrayImage& image);
GrayImage read_pgm(const std::filesystem::path& path);

void write_labels(const std::filesystem::path& path, const LabelMap& labels);
/// Throws IoError if any value falls outside {1..region_count}.
LabelMap read_labels(const std::filesystem::path& path, int region_count);

void write_edges(const std::filesystem::path& path, const EdgeLabelMap& edges);
EdgeLabelMap read_edges(const std::filesystem::path& path);

struct RgbImage {
    GridShape shape;
    std::vector<std::uint8_t> pixels;  // interleaved RGB
};

void write_ppm(const std::filesystem::path& path, const RgbImage& image);

/// Grayscale rendering of `background` (values in [0,1]) with the boundary of
/// region 1 drawn in yellow and the outer boundary of region 2 in red.
RgbImage render_overlay(const ScalarField& background, const LabelMap& labels);

/// CSV with header "iteration,energy,max_update".
void write_trace_csv(const std::filesystem::path& path, const SolveReport& report);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace nls::io
