#include "nls/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <limits>
#include <sstream>

#include "nls/errors.hpp"

namespace nls::io {

namespace {

constexpr char kMagic[4] = {'N', 'L', 'S', 'F'};
constexpr std::size_t kHeaderBytes = 4 + 5 * 4;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>((v >> (8 * k)) & 0xffu));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t offset) {
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(in[offset + static_cast<std::size_t>(k)]) << (8 * k);
    return v;
}

std::uint32_t to_u32(std::size_t v) {
    if (v > std::numeric_limits<std::uint32_t>::max()) throw IoError("dimension does not fit in 32 bits");
    return static_cast<std::uint32_t>(v);
}

void put_channel(std::vector<std::uint8_t>& out, const ScalarField& field) {
    for (double v : field.values()) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

}  // namespace

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

std::vector<std::uint8_t> encode_stack(const ProbabilityStack& stack) {
    const GridShape s = stack.shape();
    std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
    out.reserve(kHeaderBytes + 4 * s.size() * static_cast<std::size_t>(stack.region_count() + 1));
    put_u32(out, kStackFormatVersion);
    put_u32(out, to_u32(s.height));
    put_u32(out, to_u32(s.width));
    put_u32(out, to_u32(static_cast<std::size_t>(stack.region_count())));
    put_u32(out, 1);
    for (const auto& ch : stack.regions()) put_channel(out, ch);
    put_channel(out, stack.edge());
    return out;
}

ProbabilityStack decode_stack(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < kHeaderBytes || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin()))
        throw IoError("not a probability stack file (bad magic)");
    const std::uint32_t version = get_u32(bytes, 4);
    if (version != kStackFormatVersion) throw IoError("unsupported stack format version " + std::to_string(version));
    const GridShape s{get_u32(bytes, 8), get_u32(bytes, 12)};
    const std::uint32_t n = get_u32(bytes, 16);
    const std::uint32_t edges = get_u32(bytes, 20);
    if (s.size() == 0) throw IoError("stack file has an empty grid");
    if (n < 2) throw IoError("stack file needs at least two region channels");
    if (edges != 1) throw IoError("stack file must carry exactly one edge channel");
    const std::size_t expected = kHeaderBytes + 4 * s.size() * (static_cast<std::size_t>(n) + 1);
    if (bytes.size() != expected)
        throw IoError("stack file size " + std::to_string(bytes.size()) + " does not match header (expected " +
                      std::to_string(expected) + ")");

    std::size_t offset = kHeaderBytes;
    auto next_channel = [&] {
        std::vector<double> values(s.size());
        for (double& v : values) {
            v = static_cast<double>(std::bit_cast<float>(get_u32(bytes, offset)));
            offset += 4;
        }
        try {
            return ScalarField(s, std::move(values));
        } catch (const ContractViolation& e) {
            throw IoError(std::string("invalid stack channel: ") + e.what());
        }
    };
    std::vector<ScalarField> regions;
    for (std::uint32_t k = 0; k < n; ++k) regions.push_back(next_channel());
    ScalarField edge = next_channel();
    try {
        return ProbabilityStack(std::move(regions), std::move(edge));
    } catch (const ContractViolation& e) {
        throw IoError(std::string("invalid probability stack: ") + e.what());
    }
}

void write_stack(const std::filesystem::path& path, const ProbabilityStack& stack) {
    write_file(path, encode_stack(stack));
}

ProbabilityStack read_stack(const std::filesystem::path& path) { return decode_stack(read_file(path)); }

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
    std::ostringstream header;
    header << "P5\n" << image.shape.width << " " << image.shape.height << "\n255\n";
    const std::string h = header.str();
    std::vector<std::uint8_t> bytes(h.begin(), h.end());
    bytes.insert(bytes.end(), image.pixels.begin(), image.pixels.end());
    write_file(path, bytes);
}

namespace {

// Parses the "Px width height maxval" header; returns the offset of the raster.
std::size_t parse_netpbm_header(const std::vector<std::uint8_t>& bytes, const char* magic, std::size_t& width,
                                std::size_t& height, const std::string& name) {
    if (bytes.size() < 2 || bytes[0] != magic[0] || bytes[1] != magic[1])
        throw IoError(name + ": expected a binary " + std::string(magic) + " file");
    std::size_t pos = 2;
    auto next_number = [&]() -> std::size_t {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(bytes[pos])) {
                ++pos;
            } else {
                break;
            }
        }
        if (pos >= bytes.size() || !std::isdigit(bytes[pos])) throw IoError(name + ": malformed header");
        std::size_t v = 0;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) v = v * 10 + (bytes[pos++] - '0');
        return v;
    };
    width = next_number();
    height = next_number();
    const std::size_t maxval = next_number();
    if (maxval == 0 || maxval > 255) throw IoError(name + ": only 8-bit images are supported");
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) throw IoError(name + ": malformed header");
    return pos + 1;
}

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    GrayImage image;
    const std::size_t start = parse_netpbm_header(bytes, "P5", image.shape.width, image.shape.height, path.string());
    if (image.shape.size() == 0) throw IoError(path.string() + ": empty image");
    if (bytes.size() - start != image.shape.size())
        throw IoError(path.string() + ": raster size does not match header");
    image.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(start), bytes.end());
    return image;
}

void write_labels(const std::filesystem::path& path, const LabelMap& labels) {
    GrayImage image{labels.shape(), {}};
    image.pixels.reserve(labels.shape().size());
    for (int l : labels.labels()) {
        if (l > 255) throw IoError("label " + std::to_string(l) + " does not fit in an 8-bit PGM");
        image.pixels.push_back(static_cast<std::uint8_t>(l));
    }
    write_pgm(path, image);
}

LabelMap read_labels(const std::filesystem::path& path, int region_count) {
    const GrayImage image = read_pgm(path);
    std::vector<int> labels(image.pixels.begin(), image.pixels.end());
    for (int l : labels)
        if (l < 1 || l > region_count)
            throw IoError(path.string() + ": label " + std::to_string(l) + " outside {1.." +
                          std::to_string(region_count) + "}");
    return LabelMap(image.shape, region_count, std::move(labels));
}

void write_edges(const std::filesystem::path& path, const EdgeLabelMap& edges) {
    write_pgm(path, GrayImage{edges.shape(), {edges.labels().begin(), edges.labels().end()}});
}

EdgeLabelMap read_edges(const std::filesystem::path& path) {
    GrayImage image = read_pgm(path);
    for (auto v : image.pixels)
        if (v > 1) throw IoError(path.string() + ": edge labels must be 0 or 1");
    return EdgeLabelMap(image.shape, std::move(image.pixels));
}

void write_ppm(const std::filesystem::path& path, const RgbImage& image) {
    std::ostringstream header;
    header << "P6\n" << image.shape.width << " " << image.shape.height << "\n255\n";
    const std::string h = header.str();
    std::vector<std::uint8_t> bytes(h.begin(), h.end());
    bytes.insert(bytes.end(), image.pixels.begin(), image.pixels.end());
    write_file(path, bytes);
}

RgbImage render_overlay(const ScalarField& background, const LabelMap& labels) {
    if (!(background.shape() == labels.shape())) throw ContractViolation("overlay: shape mismatch");
    const GridShape s = labels.shape();
    RgbImage image{s, std::vector<std::uint8_t>(3 * s.size())};
    for (std::size_t r = 0; r < s.height; ++r) {
        for (std::size_t c = 0; c < s.width; ++c) {
            const int l = labels(r, c);
            bool inner = false;
            bool outer = false;
            auto visit = [&](std::size_t rr, std::size_t cc) {
                const int m = labels(rr, cc);
                if (l == 1 && m != 1) inner = true;
                if (l == 2 && m > 2) outer = true;
            };
            if (r > 0) visit(r - 1, c);
            if (r + 1 < s.height) visit(r + 1, c);
            if (c > 0) visit(r, c - 1);
            if (c + 1 < s.width) visit(r, c + 1);

            std::uint8_t* px = &image.pixels[3 * s.index(r, c)];
            if (inner) {
                px[0] = 255, px[1] = 255, px[2] = 0;
            } else if (outer) {
                px[0] = 255, px[1] = 0, px[2] = 0;
            } else {
                const auto v = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(background(r, c), 0.0, 1.0)));
                px[0] = px[1] = px[2] = v;
            }
        }
    }
    return image;
}

void write_trace_csv(const std::filesystem::path& path, const SolveReport& report) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "iteration,energy,max_update\n" << std::setprecision(17);
    for (const auto& sample : report.energy_trace) {
        const double update =
            sample.iteration == 0 ? 0.0 : report.max_update[static_cast<std::size_t>(sample.iteration - 1)];
        out << sample.iteration << ',' << sample.energy << ',' << update << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace nls::io
