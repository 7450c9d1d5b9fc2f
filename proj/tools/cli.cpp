#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "nls/errors.hpp"
#include "nls/feature.hpp"
#include "nls/io.hpp"
#include "nls/loss.hpp"
#include "nls/metrics.hpp"
#include "nls/parallel.hpp"
#include "nls/pipeline.hpp"

namespace nls::cli {

namespace {

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw CLI::ValidationError("expected a comma-separated number list: " + text);
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("empty number list");
    return out;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_doubles(text)) {
        if (v != static_cast<int>(v)) throw CLI::ValidationError("expected integers: " + text);
        out.push_back(static_cast<int>(v));
    }
    return out;
}

void configure_threads() {
    const char* env = std::getenv("NLS_THREADS");
    unsigned count = 0;
    if (env != nullptr && *env != '\0') {
        try {
            count = static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            count = 0;
        }
    }
    set_thread_count(count);
}

struct SynthArgs {
    std::size_t size = 160;
    std::size_t height = 0;
    std::size_t width = 0;
    std::uint64_t seed = 42;
    double noise = 0.05;
    double blur = 2.0;
    double thickness = 0.0;
    double jitter = 0.0;
    std::string out_dir = ".";
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
    const GridShape shape{a.height ? a.height : a.size, a.width ? a.width : a.size};
    PhantomSpec spec = PhantomSpec::for_shape(shape);
    spec.seed = a.seed;
    spec.flip_rate = a.noise;
    spec.blur_sigma = a.blur;
    spec.geometry_jitter = a.jitter;
    if (a.thickness > 0.0) spec.myocardium_thickness = a.thickness;
    const Phantom phantom = generate_phantom(spec);

    const std::filesystem::path dir(a.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    io::write_stack(dir / "stack.nlsf", phantom.stack);
    io::write_labels(dir / "labels.pgm", phantom.labels);
    io::write_edges(dir / "edges.pgm", phantom.edges);

    out << "synth " << shape.height << "x" << shape.width << " channels=" << phantom.stack.region_count() << "+1"
        << " cavities=" << phantom.labels.count(kCavityChannel)
        << " myocardium=" << phantom.labels.count(kMyocardiumChannel)
        << " background=" << phantom.labels.count(kBackgroundChannel) << " edges=" << phantom.edges.edge_count()
        << "\n";
    return kSuccess;
}

struct SegmentArgs {
    std::string stack;
    std::string out;
    std::string trace;
    std::string overlay;
    double lambda = 1.0;
    double eps = 1.5;
    std::string levels = "0,8";
    double dt = 0.1;
    int iters = 200;
    double threshold = 0.5;
    int init_channel = kCavityChannel;
    double clamp_floor = kDefaultClampFloor;
    double grad_floor = 1e-8;
    int trace_every = 1;
    int redistance_every = 0;
    std::string channel_order;
};

int cmd_segment(const SegmentArgs& a, std::ostream& out) {
    ProbabilityStack stack = io::read_stack(a.stack);
    if (!a.channel_order.empty()) stack = stack.permuted(parse_ints(a.channel_order));

    SegmentOptions options{
        SolverParams{a.lambda, Smoothing(a.eps), Levels(parse_doubles(a.levels)), a.dt, a.iters, a.grad_floor,
                     a.trace_every, a.redistance_every},
        a.init_channel, a.threshold, a.clamp_floor};

    const auto start = std::chrono::steady_clock::now();
    const SegmentResult result = segment(stack, options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    io::write_labels(a.out, result.labels);
    if (!a.trace.empty()) io::write_trace_csv(a.trace, result.report);
    if (!a.overlay.empty()) {
        ScalarField heart(stack.shape());
        const auto bg = stack.regions().back().values();
        for (std::size_t p = 0; p < bg.size(); ++p) heart.values()[p] = 1.0 - bg[p];
        io::write_ppm(a.overlay, io::render_overlay(heart, result.labels));
    }

    const auto& trace = result.report.energy_trace;
    out << std::setprecision(10) << "segment iterations=" << result.report.iterations_run
        << " energy_initial=" << trace.front().energy << " energy_final=" << trace.back().energy
        << " solve_seconds=" << seconds << "\n";
    return kSuccess;
}

int cmd_dice(const std::string& pred_path, const std::string& truth_path, int regions, std::ostream& out) {
    const LabelMap pred = io::read_labels(pred_path, regions);
    const LabelMap truth = io::read_labels(truth_path, regions);
    const DiceReport report = dice_report(pred, truth);
    out << std::setprecision(17) << "region,dice\n";
    for (const auto& [region, value] : report.per_region) out << region << ',' << value << '\n';
    out << "cavities," << report.cavities << '\n' << "myocardium," << report.myocardium << '\n';
    return kSuccess;
}

int cmd_loss(const std::string& stack_path, const std::string& labels_path, const std::string& edges_path,
             double alpha, double clamp_floor, std::ostream& out) {
    const ProbabilityStack stack = io::read_stack(stack_path);
    const LabelMap truth = io::read_labels(labels_path, stack.region_count());
    const EdgeLabelMap edges = edges_path.empty() ? derive_edge_labels(truth) : io::read_edges(edges_path);
    const double lr = region_loss(stack, truth, clamp_floor);
    const double le = edge_loss(stack.edge(), edges, clamp_floor);
    const double combined = combined_loss(stack, truth, edges, LossParams{alpha}, clamp_floor);
    out << std::setprecision(17) << "region_loss,edge_loss,combined\n" << lr << ',' << le << ',' << combined << '\n';
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nested level set multi-region segmentation", "nls"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic short-axis phantom");
    synth_cmd->add_option("--size", synth.size, "Square grid size")->check(CLI::Range(3, 1 << 16));
    synth_cmd->add_option("--height", synth.height, "Grid height (overrides --size)");
    synth_cmd->add_option("--width", synth.width, "Grid width (overrides --size)");
    synth_cmd->add_option("--seed", synth.seed, "Random seed");
    synth_cmd->add_option("--noise", synth.noise, "Label-flip noise rate in [0,1)");
    synth_cmd->add_option("--blur", synth.blur, "Gaussian blur sigma (pixels)");
    synth_cmd->add_option("--thickness", synth.thickness, "Myocardium thickness (pixels)");
    synth_cmd->add_option("--jitter", synth.jitter, "Geometry jitter (pixels)");
    synth_cmd->add_option("--out-dir", synth.out_dir, "Output directory for stack.nlsf, labels.pgm, edges.pgm");

    SegmentArgs seg;
    auto* seg_cmd = app.add_subcommand("segment", "Segment a probability stack");
    seg_cmd->add_option("stack", seg.stack, "Probability stack (.nlsf)")->required();
    seg_cmd->add_option("--out", seg.out, "Output label map (PGM)")->required();
    seg_cmd->add_option("--trace", seg.trace, "Energy trace CSV");
    seg_cmd->add_option("--overlay", seg.overlay, "Contour overlay (PPM)");
    seg_cmd->add_option("--lambda", seg.lambda, "Boundary weight");
    seg_cmd->add_option("--eps", seg.eps, "Heaviside smoothing width");
    seg_cmd->add_option("--levels", seg.levels, "Comma-separated increasing levels");
    seg_cmd->add_option("--dt", seg.dt, "Time step");
    seg_cmd->add_option("--iters", seg.iters, "Iteration count")->check(CLI::NonNegativeNumber);
    seg_cmd->add_option("--threshold", seg.threshold, "Initialization threshold");
    seg_cmd->add_option("--init-channel", seg.init_channel, "Region channel thresholded for initialization");
    seg_cmd->add_option("--clamp-floor", seg.clamp_floor, "Probability floor before the logarithm");
    seg_cmd->add_option("--grad-floor", seg.grad_floor, "Floor on |grad phi| in the curvature");
    seg_cmd->add_option("--trace-every", seg.trace_every, "Energy sampling interval");
    seg_cmd->add_option("--redistance-every", seg.redistance_every, "Re-distance interval, 0 = never");
    seg_cmd->add_option("--channel-order", seg.channel_order,
                        "File channel holding cavities,myocardium,background (1-based)");

    std::string dice_pred;
    std::string dice_truth;
    int dice_regions = 3;
    auto* dice_cmd = app.add_subcommand("dice", "Dice overlap between two label maps");
    dice_cmd->add_option("prediction", dice_pred, "Predicted labels (PGM)")->required();
    dice_cmd->add_option("truth", dice_truth, "Ground truth labels (PGM)")->required();
    dice_cmd->add_option("--regions", dice_regions, "Region count n")->check(CLI::Range(2, 255));

    std::string loss_stack;
    std::string loss_labels;
    std::string loss_edges;
    double loss_alpha = 1.0;
    double loss_floor = kDefaultClampFloor;
    auto* loss_cmd = app.add_subcommand("loss", "Evaluate region, edge and combined losses");
    loss_cmd->add_option("stack", loss_stack, "Probability stack (.nlsf)")->required();
    loss_cmd->add_option("--labels", loss_labels, "Region ground truth (PGM)")->required();
    loss_cmd->add_option("--edges", loss_edges, "Edge ground truth (PGM); derived from labels if omitted");
    loss_cmd->add_option("--alpha", loss_alpha, "Edge loss weight")->check(CLI::NonNegativeNumber);
    loss_cmd->add_option("--clamp-floor", loss_floor, "Probability floor before the logarithm");

    std::vector<std::string> argv_storage{"nls"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    configure_threads();
    try {
        if (*synth_cmd) return cmd_synth(synth, out);
        if (*seg_cmd) return cmd_segment(seg, out);
        if (*dice_cmd) return cmd_dice(dice_pred, dice_truth, dice_regions, out);
        if (*loss_cmd) return cmd_loss(loss_stack, loss_labels, loss_edges, loss_alpha, loss_floor, out);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const NumericInstability& e) {
        err << "error: numeric instability at iteration " << e.iteration() << ": " << e.what() << "\n";
        return kNumericInstability;
    } catch (const InitializationError& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const ContractViolation& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsageError;
}

}  // namespace nls::cli
