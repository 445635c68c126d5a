#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "less/less.hpp"

namespace fs = std::filesystem;

namespace {

std::string lower_ext(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

less::TimeSeries load_input(const std::string& path, double csv_sample_rate, bool trim,
                            bool amp_norm) {
    const std::string ext = lower_ext(path);
    less::TimeSeries ts;
    if (ext == ".wav")
        ts = less::load_wav(path);
    else if (ext == ".csv")
        ts = less::load_csv(path, csv_sample_rate);
    else
        throw std::runtime_error("unsupported input extension for " + path +
                                 " (expected .wav or .csv)");
    if (trim) ts = less::trim_silence(ts);
    if (amp_norm) ts = less::amplitude_normalize(ts);
    return ts;
}

void write_output(const less::TimeSeries& ts, const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == ".wav")
        less::write_wav(ts, path);
    else if (ext == ".csv")
        less::write_csv(ts, path);
    else
        throw std::runtime_error("unsupported output extension for " + path +
                                 " (expected .wav or .csv)");
}

/// All flags mirror RunConfig field names; values written into `flags`.
void add_config_flags(CLI::App* cmd, less::RunConfig& flags, std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file (flags override its values)");
    cmd->add_option("--J", flags.J, "dyadic scale; frames are 2^J samples");
    cmd->add_option("--Q", flags.Q, "wavelets per octave");
    cmd->add_option("--num-low-freq", flags.num_low_freq, "lowest-frequency wavelets retained");
    cmd->add_option("--max-order", flags.max_order, "scatter depth, 1 or 2");
    cmd->add_option("--normalize-mode", flags.normalize_mode,
                    "per-channel-max | log1p-standardize | none");
    cmd->add_option("--sigma-omega", flags.sigma_omega, "global kernel scale");
    cmd->add_option("--C", flags.C, "neighbor count for adaptive kernel sizes");
    cmd->add_option("--gamma", flags.gamma, "number of embedding eigenvectors");
    cmd->add_option("--k", flags.k, "motif count for k-means");
    cmd->add_option("--seed", flags.seed, "RNG seed");
    cmd->add_option("--metric", flags.metric,
                    "less-levenshtein | dtw-raw | dtw-wavelet | sax-levenshtein | sax-mindist");
    cmd->add_option("--radius", flags.radius, "fastdtw window radius");
    cmd->add_option("--word-length", flags.word_length, "SAX word length");
    cmd->add_option("--alphabet", flags.alphabet, "SAX alphabet size");
    cmd->add_flag("--row-normalize", flags.row_normalize, "unit-norm embedding rows before k-means");
}

/// Precedence: flag > config file > LESS_SEED > built-in defaults.
less::RunConfig resolve_config(const CLI::App* cmd, const less::RunConfig& flags,
                               const std::string& config_path) {
    less::RunConfig cfg;
    if (const char* env = std::getenv("LESS_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw std::runtime_error("LESS_SEED is not an unsigned integer: " + std::string(env));
        cfg.seed = v;
    }
    if (!config_path.empty()) cfg = less::load_run_config(config_path, cfg);
    const auto set = [&](const std::string& name) { return cmd->count(name) > 0; };
    if (set("--J")) cfg.J = flags.J;
    if (set("--Q")) cfg.Q = flags.Q;
    if (set("--num-low-freq")) cfg.num_low_freq = flags.num_low_freq;
    if (set("--max-order")) cfg.max_order = flags.max_order;
    if (set("--normalize-mode")) cfg.normalize_mode = flags.normalize_mode;
    if (set("--sigma-omega")) cfg.sigma_omega = flags.sigma_omega;
    if (set("--C")) cfg.C = flags.C;
    if (set("--gamma")) cfg.gamma = flags.gamma;
    if (set("--k")) cfg.k = flags.k;
    if (set("--seed")) cfg.seed = flags.seed;
    if (set("--metric")) cfg.metric = flags.metric;
    if (set("--radius")) cfg.radius = flags.radius;
    if (set("--word-length")) cfg.word_length = flags.word_length;
    if (set("--alphabet")) cfg.alphabet = flags.alphabet;
    if (set("--row-normalize")) cfg.row_normalize = flags.row_normalize;
    less::parse_normalize_mode(cfg.normalize_mode);
    return cfg;
}

int cmd_segment(const std::string& input, const std::string& out_prefix,
                const less::RunConfig& cfg, double csv_rate, bool trim, bool amp_norm,
                const std::string& heatmap_prefix, const std::string& scatter_prefix) {
    const less::TimeSeries ts = load_input(input, csv_rate, trim, amp_norm);
    less::ScatterRepresentation z = less::scatter_multivariate(ts, cfg.scatter_params());
    z = less::normalize_rep(z, less::parse_normalize_mode(cfg.normalize_mode));
    if (!scatter_prefix.empty())
        less::write_scatter_csv(z, scatter_prefix + ".csv", scatter_prefix + ".channels.json");
    if (!heatmap_prefix.empty()) {
        // rebuild the graph stages for inspection exports
        const Eigen::MatrixXd dist = less::normalize_distances(less::pairwise_distances(z));
        const Eigen::VectorXd sizes = less::adaptive_kernel_sizes(dist, cfg.C);
        const less::AffinityGraph graph = less::affinity(dist, sizes, cfg.sigma_omega, cfg.C);
        less::write_matrix_csv(graph.W, heatmap_prefix + ".affinity.csv");
        less::write_pgm(graph.W, heatmap_prefix + ".affinity.pgm");
        less::write_pgm(dist, heatmap_prefix + ".dist.pgm");
    }
    const less::FrameLabels labels = less::segment(z, cfg.segment_config());
    const less::EventSequence events = less::to_event_sequence(labels, z.subsample);

    less::write_event_json(events, out_prefix + ".events.json");
    less::write_annotation_csv(less::annotate_signal(events, ts.length()),
                               out_prefix + ".annotation.csv");
    std::cout << "l=" << events.tokens.size() << " tokens:";
    for (int tok : events.tokens) std::cout << ' ' << tok;
    std::cout << '\n' << "compact: " << less::format_compact(events) << '\n';
    return 0;
}

std::pair<std::vector<std::string>, std::vector<std::string>> collect_inputs(
    const std::string& input) {
    std::vector<std::string> paths, labels;
    if (fs::is_directory(input)) {
        for (const auto& entry : fs::directory_iterator(input)) {
            const std::string ext = lower_ext(entry.path());
            if (entry.is_regular_file() && (ext == ".wav" || ext == ".csv"))
                paths.push_back(entry.path().string());
        }
        std::sort(paths.begin(), paths.end());
    } else {
        std::ifstream in(input);
        if (!in) throw std::runtime_error("cannot open manifest " + input);
        const fs::path base = fs::path(input).parent_path();
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty() || line == "\r") continue;
            const auto cells = less::detail::split_csv_line(line);
            if (first && !cells.empty() && cells[0] == "path") {
                first = false;
                continue;  // optional header row
            }
            first = false;
            fs::path p(cells[0]);
            if (p.is_relative()) p = base / p;
            paths.push_back(p.string());
            labels.push_back(cells.size() > 1 ? cells[1] : "");
        }
        if (std::any_of(labels.begin(), labels.end(),
                        [](const std::string& s) { return s.empty(); }))
            labels.clear();  // labels only count when every row has one
    }
    if (paths.size() < 2) throw std::runtime_error("need at least 2 input files, got " +
                                                   std::to_string(paths.size()));
    return {paths, labels};
}

int cmd_distmat(const std::string& input, const std::string& out_path,
                const std::string& heatmap_path, const less::RunConfig& cfg, double csv_rate,
                bool trim, bool amp_norm) {
    const auto [paths, labels] = collect_inputs(input);
    std::vector<less::TimeSeries> collection;
    for (const auto& p : paths) collection.push_back(load_input(p, csv_rate, trim, amp_norm));
    const less::DistanceMatrix dm =
        less::distance_matrix(collection, less::parse_metric(cfg.metric), cfg, labels);
    less::write_matrix_csv(dm.values, out_path);
    if (!heatmap_path.empty()) less::write_pgm(dm.values, heatmap_path);
    std::cout << "metric=" << dm.metric_name << " observations=" << paths.size() << '\n';
    if (!dm.labels.empty()) {
        const less::SeparationStats stats = less::class_separation(dm);
        std::cout << "within_mean=" << stats.within_mean << " between_mean=" << stats.between_mean
                  << " ratio=";
        if (stats.infinite_ratio)
            std::cout << "inf\n";
        else
            std::cout << stats.ratio << '\n';
    }
    return 0;
}

less::TimeSeries synth_from_spec(const nlohmann::json& spec) {
    const std::string kind = spec.at("kind").get<std::string>();
    less::TimeSeries ts;
    if (kind == "composite") {
        std::vector<less::SegmentSpec> segments;
        for (const auto& seg : spec.at("segments")) {
            const std::string seg_kind = seg.at("kind").get<std::string>();
            less::SegmentSpec s;
            s.duration_s = seg.at("duration_s").get<double>();
            s.amplitude = seg.value("amplitude", 1.0);
            if (seg_kind == "sine") {
                s.kind = less::SegmentSpec::Kind::sine;
                s.freq_hz = seg.at("freq_hz").get<double>();
            } else if (seg_kind == "chirp") {
                s.kind = less::SegmentSpec::Kind::chirp;
                s.f0_hz = seg.at("f0_hz").get<double>();
                s.f1_hz = seg.at("f1_hz").get<double>();
            } else if (seg_kind == "noise") {
                s.kind = less::SegmentSpec::Kind::noise;
                s.sigma = seg.at("sigma").get<double>();
            } else if (seg_kind == "silence") {
                s.kind = less::SegmentSpec::Kind::silence;
            } else {
                throw std::runtime_error("unknown segment kind: " + seg_kind);
            }
            segments.push_back(s);
        }
        ts = less::synth_composite(segments, spec.at("sample_rate_hz").get<double>(),
                                   spec.value("trend_slope", 0.0),
                                   spec.value("seed", std::uint64_t{42}));
    } else if (kind == "ecg") {
        ts = less::synth_ecg(spec.at("n_beats").get<int>(), spec.at("beat_rate_hz").get<double>(),
                             spec.at("sample_rate_hz").get<double>());
    } else {
        throw std::runtime_error("unknown spec kind: " + kind + " (expected composite or ecg)");
    }
    if (spec.contains("noise_sigma"))
        ts = less::add_gaussian_noise(ts, spec["noise_sigma"].get<double>(),
                                      spec.value("noise_seed", std::uint64_t{42}));
    return ts;
}

int cmd_synth(const std::string& spec_path, const std::string& out_path) {
    std::ifstream in(spec_path);
    if (!in) throw std::runtime_error("cannot open spec " + spec_path);
    nlohmann::json spec;
    in >> spec;
    const less::TimeSeries ts = synth_from_spec(spec);
    write_output(ts, out_path);
    std::cout << "wrote " << out_path << " (dims=" << ts.dims() << " samples=" << ts.length()
              << " rate=" << ts.sample_rate_hz << ")\n";
    return 0;
}

int cmd_bench(const std::string& kind_name, const std::vector<long long>& sizes,
              const std::string& out_path) {
    std::vector<Eigen::Index> idx(sizes.begin(), sizes.end());
    const less::BenchReport report = less::bench_scaling(less::parse_bench_kind(kind_name), idx);
    less::write_bench_csv(report, out_path);
    std::cout << "kind=" << report.kind << " loglog_slope=" << report.loglog_slope << '\n';
    for (const auto& row : report.rows)
        std::cout << "  size=" << static_cast<long long>(row.size)
                  << " median_seconds=" << row.median_seconds << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LESS: event segmentation of time series via wavelet scattering"};
    app.require_subcommand(1);

    less::RunConfig flags;
    std::string config_path;
    double csv_rate = 1.0;
    bool trim = false, amp_norm = false;

    auto* seg = app.add_subcommand("segment", "Segment one signal into an event sequence");
    std::string seg_input, seg_out, seg_heatmap, seg_scatter;
    seg->add_option("input", seg_input, "input .wav or .csv")->required();
    seg->add_option("--out", seg_out, "output prefix (default: input path without extension)");
    seg->add_option("--heatmap", seg_heatmap, "prefix for affinity/distance inspection exports");
    seg->add_option("--dump-scatter", seg_scatter, "prefix for scattering CSV + channel sidecar");

    auto* dis = app.add_subcommand("distmat", "Pairwise distance matrix over a batch");
    std::string dis_input, dis_out = "distmat.csv", dis_heatmap;
    dis->add_option("input", dis_input, "directory of signals, or manifest CSV (path[,label])")
        ->required();
    dis->add_option("--out", dis_out, "output CSV path");
    dis->add_option("--heatmap", dis_heatmap, "also write a PGM heatmap here");

    auto* syn = app.add_subcommand("synth", "Generate a synthetic signal from a JSON spec");
    std::string syn_spec, syn_out;
    syn->add_option("spec", syn_spec, "spec JSON path")->required();
    syn->add_option("--out", syn_out, "output .wav or .csv")->required();

    auto* ben = app.add_subcommand("bench", "Runtime-scaling benchmarks");
    std::string ben_kind, ben_out = "bench.csv";
    std::vector<long long> ben_sizes;
    ben->add_option("--kind", ben_kind, "scatter-vs-t | scatter-vs-D | spectral-vs-n")->required();
    ben->add_option("--sizes", ben_sizes, "ascending sizes")->required()->delimiter(',');
    ben->add_option("--out", ben_out, "report CSV path");

    for (auto* cmd : {seg, dis}) {
        add_config_flags(cmd, flags, config_path);
        cmd->add_option("--sample-rate", csv_rate, "sample rate to assume for CSV inputs");
        cmd->add_flag("--trim-silence", trim, "trim leading/trailing silence before processing");
        cmd->add_flag("--amplitude-normalize", amp_norm, "scale peak amplitude to 1");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (seg->parsed()) {
            const less::RunConfig cfg = resolve_config(seg, flags, config_path);
            if (seg_out.empty()) seg_out = (fs::path(seg_input).parent_path() /
                                            fs::path(seg_input).stem()).string();
            return cmd_segment(seg_input, seg_out, cfg, csv_rate, trim, amp_norm, seg_heatmap,
                               seg_scatter);
        }
        if (dis->parsed()) {
            const less::RunConfig cfg = resolve_config(dis, flags, config_path);
            return cmd_distmat(dis_input, dis_out, dis_heatmap, cfg, csv_rate, trim, amp_norm);
        }
        if (syn->parsed()) return cmd_synth(syn_spec, syn_out);
        if (ben->parsed()) return cmd_bench(ben_kind, ben_sizes, ben_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
