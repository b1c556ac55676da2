#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "report.hpp"
#include "subspace/bench.hpp"
#include "subspace/cli.hpp"
#include "subspace/error.hpp"
#include "subspace/image.hpp"
#include "subspace/io.hpp"
#include "subspace/signal.hpp"
#include "subspace/synth.hpp"

namespace subspace::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
    std::uint64_t seed = 1;
    std::string prefix = "subspace";
    bool json = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "Seed for generated data")->capture_default_str();
    cmd->add_option("--output-prefix", c.prefix, "Prefix for every output file")->capture_default_str();
    cmd->add_flag("--json", c.json, "Print the JSON report on stdout");
}

Json common_json(const Common& c) { return Json{{"seed", c.seed}, {"output_prefix", c.prefix}, {"json", c.json}}; }

fs::path output(const Common& c, const std::string& suffix) {
    fs::path p(c.prefix + suffix);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p;
}

double parse_real(const std::string& text, const char* flag) {
    double v = 0.0;
    const char* first = text.data();
    if (!text.empty() && text.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::invalid_input, std::string(flag) + ": not a number: '" + text + "'");
    }
    return v;
}

class Timer {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Json input_json(const fs::path& path, const signal::ChannelSet& s) {
    return Json{{"path", path.string()}, {"channels", s.channel_count()}, {"samples", s.samples_per_channel()}};
}

void finish(const RunReport& report, const Common& c, std::ostream& out, const std::string& summary) {
    if (c.json) {
        out << report.to_json().dump(2) << "\n";
    } else {
        out << summary;
    }
}

// separate

struct SeparateOptions {
    Common common;
    std::string input;
    std::string second;
    std::string method = "svd";
    std::string layout = "channels";
    std::size_t window = 0;
    std::size_t stride = 1;
    std::size_t channel = 0;
    std::size_t cutoffs = 2;
    std::size_t min_separation = 1;
    std::optional<double> tolerance;
};

signal::EmbedLayout make_layout(const SeparateOptions& o, const signal::ChannelSet& s) {
    if (o.layout == "hankel") {
        const std::size_t window = o.window ? o.window : std::max<std::size_t>(2, s.samples_per_channel() / 2);
        return signal::EmbedLayout::hankel(window, o.stride, o.channel);
    }
    if (o.window) {
        const std::vector<std::size_t> offsets(s.channel_count(), 0);
        return signal::EmbedLayout::channel_columns(o.window, offsets);
    }
    return signal::EmbedLayout::whole_channels(s);
}

void write_part(const fs::path& path, const Matrix& part, const signal::EmbedLayout& layout,
                const signal::ChannelSet& source) {
    signal::ChannelSet rebuilt = signal::unembed(part, layout, source.samples_per_channel());
    if (source.labels.size() == rebuilt.channel_count()) rebuilt.labels = source.labels;
    io::write_channels(path, rebuilt);
}

int cmd_separate(const SeparateOptions& o, std::ostream& out) {
    const Timer timer;
    RunReport report;
    report.command = "separate";
    report.parameters = common_json(o.common);
    report.parameters["input"] = o.input;
    report.parameters["second"] = o.second.empty() ? Json(nullptr) : Json(o.second);
    report.parameters["method"] = o.method;
    report.parameters["layout"] = o.layout;
    report.parameters["window"] = o.window;
    report.parameters["stride"] = o.stride;
    report.parameters["channel"] = o.channel;
    report.parameters["cutoffs"] = o.cutoffs;
    report.parameters["min_separation"] = o.min_separation;
    report.parameters["tolerance"] = o.tolerance ? number(*o.tolerance) : Json("default");

    if (o.method == "gsvd" && o.second.empty()) {
        throw Error(ErrorCode::invalid_input, "--method gsvd requires --second");
    }
    const signal::ChannelSet a_sig = io::read_channels(o.input);
    a_sig.validate();
    report.inputs.push_back(input_json(o.input, a_sig));
    const signal::EmbedLayout layout = make_layout(o, a_sig);
    const Matrix a = signal::embed(a_sig, layout);
    report.results["matrix"] = Json{{"rows", a.rows()}, {"cols", a.cols()}};

    signal::CutoffResult cut;
    signal::Separation parts;
    if (o.method == "svd") {
        const linalg::SpectrumResult spec = linalg::svd(a, o.tolerance, linalg::BasisMode::thin);
        const signal::EgvProfile profile = signal::egv_profile(spec);
        cut = o.cutoffs == 2 ? signal::find_two_cutoffs(spec, o.min_separation) : signal::find_cutoff(spec);
        parts = signal::separate(spec, cut);
        report.results["singular_values"] = numbers(spec.singular_values);
        report.results["numerical_rank"] = spec.numerical_rank;
        report.results["profile"] = profile_json(profile);
        report.work_counters["decompositions"] = 1;
    } else {
        const signal::ChannelSet b_sig = io::read_channels(o.second);
        b_sig.validate();
        report.inputs.push_back(input_json(o.second, b_sig));
        const Matrix b = signal::embed(b_sig, make_layout(o, b_sig));
        const linalg::GsvdResult g = linalg::gsvd(a, b, linalg::BasisMode::thin);
        cut = o.cutoffs == 2 ? signal::gsvd_two_cutoffs(g, o.min_separation) : signal::gsvd_cutoff(g);
        parts = signal::separate(g, cut);
        const std::span<const double> finite = std::span<const double>(g.generalized_values).subspan(cut.infinite_count);
        const std::size_t rank =
            linalg::numerical_rank(finite, linalg::default_rank_tolerance(finite.size(), finite.size()));
        report.results["generalized_values"] = numbers(g.generalized_values);
        report.results["alpha"] = numbers(g.alpha);
        report.results["beta"] = numbers(g.beta);
        report.results["profile"] = profile_json(signal::egv_profile(finite, rank));
        report.work_counters["decompositions"] = 3;
    }
    report.results["cutoff"] = cutoff_json(cut);

    const fs::path dominant = output(o.common, "_dominant.csv");
    const fs::path weak = output(o.common, "_weak.csv");
    const fs::path noise = output(o.common, "_noise.csv");
    const fs::path report_path = output(o.common, "_report.json");
    write_part(dominant, parts.dominant, layout, a_sig);
    write_part(weak, parts.weak, layout, a_sig);
    write_part(noise, parts.noise, layout, a_sig);
    report.outputs = {dominant.string(), weak.string(), noise.string(), report_path.string()};
    report.wall_ms = timer.ms();
    write_json(report_path, report.to_json());

    std::ostringstream summary;
    summary << "method " << signal::cutoff_method_name(cut.method) << ": m = " << cut.m;
    if (cut.f) summary << ", f = " << *cut.f;
    summary << "\n";
    for (const auto& w : cut.warnings) summary << "warning: " << w << "\n";
    for (const auto& p : report.outputs) summary << "wrote " << p << "\n";
    finish(report, o.common, out, summary.str());
    return 0;
}

// scan

struct ScanOptions {
    Common common;
    std::string input;
    std::size_t window = 5;
    std::size_t stride = 0;
    std::string metric = "smoothness";
    std::size_t order = 1;
    std::optional<double> auto_order;
    double guard = 1e-6;
    std::size_t density_lo = 1;
    std::optional<std::size_t> density_hi;
    std::optional<double> threshold;
    bool auto_threshold = false;
    std::string polarity = "above";
    unsigned threads = 0;
};

int cmd_scan(const ScanOptions& o, std::ostream& out) {
    const Timer timer;
    RunReport report;
    report.command = "scan";
    image::WindowConfig cfg;
    cfg.window_size = o.window;
    cfg.stride = o.stride ? o.stride : o.window;
    cfg.order_mode = o.auto_order ? image::OrderMode::automatic(*o.auto_order) : image::OrderMode::fixed(o.order);
    cfg.epsilon_guard = o.guard;
    cfg.density_lo = o.density_lo;
    cfg.density_hi = o.density_hi;
    const image::Metric metric = o.metric == "density" ? image::Metric::information_density : image::Metric::smoothness;

    report.parameters = common_json(o.common);
    report.parameters["input"] = o.input;
    report.parameters["window"] = cfg.window_size;
    report.parameters["stride"] = cfg.stride;
    report.parameters["metric"] = std::string(image::metric_name(metric));
    report.parameters["order_mode"] = o.auto_order ? "auto" : "fixed";
    report.parameters["order"] = o.order;
    report.parameters["delta"] = o.auto_order ? number(*o.auto_order) : Json(nullptr);
    report.parameters["epsilon_guard"] = o.guard;
    report.parameters["density_lo"] = o.density_lo;
    report.parameters["density_hi"] = o.density_hi ? Json(*o.density_hi) : Json("rank");
    report.parameters["threshold"] = o.threshold ? number(*o.threshold) : Json(nullptr);
    report.parameters["auto_threshold"] = o.auto_threshold;
    report.parameters["polarity"] = o.polarity;
    report.parameters["threads"] = o.threads;

    const image::GrayImage img = io::load_image(o.input);
    report.inputs.push_back(Json{{"path", o.input}, {"width", img.width}, {"height", img.height}});
    const image::SmoothnessMap map = image::sliding_scan(img, cfg, metric, o.threads);

    const auto [lo, hi] = std::minmax_element(map.grid.begin(), map.grid.end());
    const double mean = std::accumulate(map.grid.begin(), map.grid.end(), 0.0) / static_cast<double>(map.grid.size());
    report.results["grid_cols"] = map.grid_cols;
    report.results["grid_rows"] = map.grid_rows;
    report.results["min"] = *lo;
    report.results["max"] = *hi;
    report.results["mean"] = mean;
    if (!map.orders.empty() && o.auto_order) {
        std::map<std::size_t, std::size_t> histogram;
        for (std::size_t n : map.orders) ++histogram[n];
        Json h = Json::object();
        for (const auto& [n, count] : histogram) h[std::to_string(n)] = count;
        report.results["order_histogram"] = h;
    }
    report.work_counters = Json{{"windows", map.counters.windows},
                                {"decompositions", map.counters.decompositions},
                                {"terms", map.counters.terms}};

    const fs::path map_csv = output(o.common, "_map.csv");
    const fs::path map_pgm = output(o.common, "_map.pgm");
    const fs::path report_path = output(o.common, "_report.json");
    io::write_grid(map_csv, map.grid, map.grid_cols);
    io::write_pgm(map_pgm, io::render_grid(map.grid, map.grid_cols, map.grid_rows));
    report.outputs = {map_csv.string(), map_pgm.string()};

    if (o.threshold || o.auto_threshold) {
        const double theta = o.threshold ? *o.threshold : image::auto_threshold(map);
        const image::Polarity pol = o.polarity == "below" ? image::Polarity::below : image::Polarity::above;
        const image::Mask mask = image::threshold_map(map, theta, pol);
        io::Pgm pgm{mask.cols, mask.rows, 255, {}};
        for (std::uint8_t c : mask.cells) pgm.samples.push_back(c ? 255 : 0);
        const fs::path mask_pgm = output(o.common, "_mask.pgm");
        io::write_pgm(mask_pgm, pgm);
        report.outputs.push_back(mask_pgm.string());
        report.results["threshold_used"] = theta;
        report.results["flagged_windows"] = mask.count();
    }
    report.outputs.push_back(report_path.string());
    report.wall_ms = timer.ms();
    write_json(report_path, report.to_json());

    std::ostringstream summary;
    summary << image::metric_name(metric) << " map " << map.grid_cols << "x" << map.grid_rows << " ("
            << map.counters.decompositions << " decompositions), range [" << *lo << ", " << *hi << "]\n";
    for (const auto& p : report.outputs) summary << "wrote " << p << "\n";
    finish(report, o.common, out, summary.str());
    return 0;
}

// synth

struct SynthOptions {
    Common common;
    std::string kind = "mixture";
    synth::MixtureSpec mixture;
    std::string ratio_dw = "100";
    std::string ratio_wn = "100";
    std::size_t width = 100;
    std::size_t height = 100;
    std::vector<std::string> regions;
    double base_level = 0.5;
    double smooth_noise = 0.002;
    double rough_noise = 0.25;
    double anomaly_noise = 0.002;
};

synth::Region parse_region(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
    if (parts.size() != 5) throw Error(ErrorCode::invalid_input, "--region expects x,y,w,h,tag: '" + text + "'");
    synth::Region r;
    std::size_t* fields[] = {&r.x, &r.y, &r.width, &r.height};
    for (int i = 0; i < 4; ++i) {
        const auto [ptr, ec] = std::from_chars(parts[i].data(), parts[i].data() + parts[i].size(), *fields[i]);
        if (ec != std::errc() || ptr != parts[i].data() + parts[i].size()) {
            throw Error(ErrorCode::invalid_input, "--region: bad integer '" + parts[i] + "'");
        }
    }
    const std::string& tag = parts[4];
    if (tag == "smooth") {
        r.tag = synth::Tag::smooth;
    } else if (tag == "rough") {
        r.tag = synth::Tag::rough;
    } else if (tag == "anomaly" || tag == "anomaly-band") {
        r.tag = synth::Tag::anomaly_band;
    } else {
        throw Error(ErrorCode::invalid_input, "--region: unknown tag '" + tag + "'");
    }
    return r;
}

int cmd_synth(SynthOptions o, std::ostream& out) {
    RunReport report;
    report.command = "synth";
    report.parameters = common_json(o.common);
    report.parameters["kind"] = o.kind;
    Json truth;
    truth["schema_version"] = schema_version;
    truth["kind"] = o.kind;
    truth["seed"] = o.common.seed;

    if (o.kind == "mixture") {
        synth::MixtureSpec& spec = o.mixture;
        spec.seed = o.common.seed;
        spec.ratio_dominant_weak = parse_real(o.ratio_dw, "--ratio-dw");
        spec.ratio_weak_noise = parse_real(o.ratio_wn, "--ratio-wn");
        const Json params{{"samples", spec.samples},
                          {"channels", spec.channels},
                          {"dominant_rank", spec.dominant_rank},
                          {"weak_rank_span", spec.weak_rank_span},
                          {"dominant_period", spec.dominant_period},
                          {"weak_period", spec.effective_weak_period()},
                          {"ratio_dominant_weak", number(spec.ratio_dominant_weak)},
                          {"ratio_weak_noise", number(spec.ratio_weak_noise)}};
        report.parameters.update(params);
        const synth::Mixture mix = synth::gen_mixture(spec);
        truth["spec"] = params;
        truth["k_m"] = mix.truth.k_m;
        truth["k_f"] = mix.truth.k_f;
        truth["energies"] = Json{{"dominant", linalg::frobenius_energy(mix.dominant)},
                                 {"weak", linalg::frobenius_energy(mix.weak)},
                                 {"noise", linalg::frobenius_energy(mix.noise)}};
        const fs::path signals = output(o.common, "_signals.csv");
        io::write_channels(signals, mix.signals);
        report.outputs.push_back(signals.string());
        report.results = Json{{"k_m", mix.truth.k_m}, {"k_f", mix.truth.k_f}};
    } else if (o.kind == "texture") {
        synth::TextureSpec spec;
        if (o.regions.empty()) {
            spec = synth::default_texture_spec(std::min(o.width, o.height), o.common.seed);
            spec.regions.front() = {0, 0, o.width, o.height, synth::Tag::rough};
        }
        for (const auto& r : o.regions) spec.regions.push_back(parse_region(r));
        spec.width = o.width;
        spec.height = o.height;
        spec.seed = o.common.seed;
        spec.base_level = o.base_level;
        spec.smooth_noise = o.smooth_noise;
        spec.rough_noise = o.rough_noise;
        spec.anomaly_noise = o.anomaly_noise;
        Json regions = Json::array();
        for (const auto& r : spec.regions) {
            regions.push_back(Json{{"x", r.x}, {"y", r.y}, {"width", r.width}, {"height", r.height},
                                   {"tag", std::string(synth::tag_name(r.tag))}});
        }
        const Json params{{"width", spec.width},
                          {"height", spec.height},
                          {"regions", regions},
                          {"base_level", spec.base_level},
                          {"smooth_noise", spec.smooth_noise},
                          {"rough_noise", spec.rough_noise},
                          {"anomaly_noise", spec.anomaly_noise}};
        report.parameters.update(params);
        const synth::Texture tex = synth::gen_texture(spec);
        truth["spec"] = params;
        truth["tags"] = Json{{"0", "smooth"}, {"1", "rough"}, {"2", "anomaly-band"}};
        const fs::path image_path = output(o.common, "_image.pgm");
        const fs::path truth_pgm = output(o.common, "_truth.pgm");
        io::write_pgm(image_path, tex.image);
        io::Pgm tags{spec.width, spec.height, 2, {}};
        for (synth::Tag t : tex.truth) tags.samples.push_back(static_cast<std::uint16_t>(t));
        io::write_pgm(truth_pgm, tags, io::PgmFormat::plain);
        report.outputs.push_back(image_path.string());
        report.outputs.push_back(truth_pgm.string());
    } else {
        throw Error(ErrorCode::invalid_input, "--kind must be mixture or texture");
    }

    const fs::path truth_path = output(o.common, "_truth.json");
    write_json(truth_path, truth);
    report.outputs.push_back(truth_path.string());
    std::ostringstream summary;
    for (const auto& p : report.outputs) summary << "wrote " << p << "\n";
    finish(report, o.common, out, summary.str());
    return 0;
}

// bench

struct BenchOptions {
    Common common;
    std::string suite = "cutoff";
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> windows;
    std::size_t reps = 3;
    std::size_t image_side = 128;
    unsigned threads = 1;
    std::string output;
};

int cmd_bench(const BenchOptions& o, std::ostream& out) {
    const Timer timer;
    RunReport report;
    report.command = "bench";
    const bool cutoff = o.suite == "cutoff" || o.suite == "all";
    const bool scan = o.suite == "scan" || o.suite == "all";
    if (!cutoff && !scan) throw Error(ErrorCode::invalid_input, "--suite must be cutoff, scan or all");

    std::vector<std::size_t> cutoff_sizes = {64, 128, 256};
    std::vector<std::size_t> windows = {4, 8, 16};
    if (o.suite == "cutoff" && !o.sizes.empty()) cutoff_sizes = o.sizes;
    if (o.suite == "scan" && !o.sizes.empty()) windows = o.sizes;
    if (o.suite == "all" && !o.sizes.empty()) cutoff_sizes = o.sizes;
    if (!o.windows.empty()) windows = o.windows;

    report.parameters = common_json(o.common);
    report.parameters["suite"] = o.suite;
    report.parameters["sizes"] = cutoff ? Json(cutoff_sizes) : Json(nullptr);
    report.parameters["windows"] = scan ? Json(windows) : Json(nullptr);
    report.parameters["reps"] = o.reps;
    report.parameters["image_side"] = o.image_side;
    report.parameters["threads"] = o.threads;

    std::vector<bench::BenchRecord> records;
    if (cutoff) records = bench::run_cutoff_bench(cutoff_sizes, o.reps, o.common.seed);
    if (scan) {
        auto more = bench::run_scan_bench(windows, o.image_side, o.reps, o.common.seed, o.threads);
        records.insert(records.end(), more.begin(), more.end());
    }
    const auto summaries = bench::summarize(records);

    Json medians = Json::array();
    std::size_t decompositions = 0;
    for (const auto& s : summaries) {
        medians.push_back(Json{{"suite", s.suite},
                               {"size", s.size},
                               {"reps", s.reps},
                               {"median_ms", s.median_ms},
                               {"decompositions", s.decompositions}});
    }
    for (const auto& r : records) decompositions += r.decompositions;
    report.results["rows"] = records.size();
    report.results["medians"] = medians;
    report.work_counters["decompositions"] = decompositions;

    const fs::path csv = o.output.empty() ? output(o.common, "_bench.csv") : fs::path(o.output);
    if (csv.has_parent_path()) fs::create_directories(csv.parent_path());
    const fs::path summary_path = output(o.common, "_summary.json");
    io::write_file(csv, bench::format_records_csv(records));
    report.outputs = {csv.string(), summary_path.string()};
    report.wall_ms = timer.ms();
    write_json(summary_path, report.to_json());

    std::ostringstream summary;
    for (const auto& s : summaries) {
        summary << s.suite << " size " << s.size << ": median " << s.median_ms << " ms, " << s.decompositions
                << " decompositions\n";
    }
    for (const auto& p : report.outputs) summary << "wrote " << p << "\n";
    finish(report, o.common, out, summary.str());
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Subspace separation and texture scanning via SVD / GSVD", "subspace"};
    app.require_subcommand(1);

    SeparateOptions sep;
    auto* separate = app.add_subcommand("separate", "Split multichannel signals into dominant / weak / noise parts");
    add_common(separate, sep.common);
    separate->add_option("input,--input", sep.input, "Signal CSV (one column per channel)")->required();
    separate->add_option("--second", sep.second, "Second signal CSV (reference for --method gsvd)");
    separate->add_option("--method", sep.method)->check(CLI::IsMember({"svd", "gsvd"}))->capture_default_str();
    separate->add_option("--layout", sep.layout)->check(CLI::IsMember({"channels", "hankel"}))->capture_default_str();
    separate->add_option("--window", sep.window, "Window length (hankel: default half the samples)");
    separate->add_option("--stride", sep.stride, "Hankel stride")->capture_default_str();
    separate->add_option("--channel", sep.channel, "Hankel source channel")->capture_default_str();
    separate->add_option("--cutoffs", sep.cutoffs, "1: m only, 2: m and f")->check(CLI::Range(1, 2))->capture_default_str();
    separate->add_option("--min-separation", sep.min_separation)->capture_default_str();
    separate->add_option("--tolerance", sep.tolerance, "Relative rank tolerance");

    ScanOptions sc;
    auto* scan = app.add_subcommand("scan", "Sliding-window smoothness / density map of a grayscale image");
    add_common(scan, sc.common);
    scan->add_option("input,--input", sc.input, "PGM or PNG image")->required();
    scan->add_option("--window", sc.window)->capture_default_str();
    scan->add_option("--stride", sc.stride, "Default: window size");
    scan->add_option("--metric", sc.metric)->check(CLI::IsMember({"smoothness", "density"}))->capture_default_str();
    scan->add_option("--order", sc.order, "Fixed smoothness order")->capture_default_str();
    scan->add_option("--auto-order", sc.auto_order, "Select the order per window with this delta");
    scan->add_option("--guard", sc.guard, "Epsilon guard")->capture_default_str();
    scan->add_option("--density-lo", sc.density_lo)->capture_default_str();
    scan->add_option("--density-hi", sc.density_hi, "Default: window rank");
    scan->add_option("--threshold", sc.threshold, "Write a mask thresholded at this value");
    scan->add_flag("--auto-threshold", sc.auto_threshold, "Write a mask with a two-cluster threshold");
    scan->add_option("--polarity", sc.polarity)->check(CLI::IsMember({"above", "below"}))->capture_default_str();
    scan->add_option("--threads", sc.threads, "0: all cores")->capture_default_str();

    SynthOptions sy;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a seeded mixture or texture with ground truth");
    add_common(synth_cmd, sy.common);
    synth_cmd->add_option("--kind", sy.kind)->check(CLI::IsMember({"mixture", "texture"}))->capture_default_str();
    synth_cmd->add_option("--samples", sy.mixture.samples)->capture_default_str();
    synth_cmd->add_option("--channels", sy.mixture.channels)->capture_default_str();
    synth_cmd->add_option("--dominant-rank", sy.mixture.dominant_rank)->capture_default_str();
    synth_cmd->add_option("--weak-span", sy.mixture.weak_rank_span)->capture_default_str();
    synth_cmd->add_option("--dominant-period", sy.mixture.dominant_period)->capture_default_str();
    synth_cmd->add_option("--weak-period", sy.mixture.weak_period, "Default: half the dominant period");
    synth_cmd->add_option("--ratio-dw", sy.ratio_dw, "Dominant / weak energy ratio")->capture_default_str();
    synth_cmd->add_option("--ratio-wn", sy.ratio_wn, "Weak / noise energy ratio (inf: no noise)")->capture_default_str();
    synth_cmd->add_option("--width", sy.width)->capture_default_str();
    synth_cmd->add_option("--height", sy.height)->capture_default_str();
    synth_cmd->add_option("--region", sy.regions, "x,y,w,h,tag with tag smooth|rough|anomaly");
    synth_cmd->add_option("--base-level", sy.base_level)->capture_default_str();
    synth_cmd->add_option("--smooth-noise", sy.smooth_noise)->capture_default_str();
    synth_cmd->add_option("--rough-noise", sy.rough_noise)->capture_default_str();
    synth_cmd->add_option("--anomaly-noise", sy.anomaly_noise)->capture_default_str();

    BenchOptions be;
    auto* bench_cmd = app.add_subcommand("bench", "Time the cutoff and scan pipelines");
    add_common(bench_cmd, be.common);
    bench_cmd->add_option("--suite", be.suite)->check(CLI::IsMember({"cutoff", "scan", "all"}))->capture_default_str();
    bench_cmd->add_option("--sizes", be.sizes, "Sample counts (cutoff) or window sizes (scan)")->delimiter(',');
    bench_cmd->add_option("--windows", be.windows, "Scan window sizes")->delimiter(',');
    bench_cmd->add_option("--reps", be.reps)->capture_default_str();
    bench_cmd->add_option("--image-side", be.image_side)->capture_default_str();
    bench_cmd->add_option("--threads", be.threads)->capture_default_str();
    bench_cmd->add_option("--output", be.output, "Timing CSV path (default <prefix>_bench.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (separate->parsed()) return cmd_separate(sep, out);
        if (scan->parsed()) return cmd_scan(sc, out);
        if (synth_cmd->parsed()) return cmd_synth(sy, out);
        if (bench_cmd->parsed()) return cmd_bench(be, out);
    } catch (const Error& e) {
        err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
        return 1;
    } catch (const fs::filesystem_error& e) {
        err << "error [io]: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"subspace"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace subspace::cli
