#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "strata/config.hpp"
#include "strata/datasets.hpp"
#include "strata/json_io.hpp"

namespace fs = std::filesystem;
using namespace strata;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_override;
    int64_t seed_override = -1;
    bool reproducible = false;
};

PipelineConfig load_config(const CommonOpts& opts) {
    PipelineConfig cfg = parse_config_file(opts.config_path);
    if (!opts.out_override.empty()) cfg.out_dir = opts.out_override;
    if (opts.seed_override >= 0) cfg.seed = static_cast<uint64_t>(opts.seed_override);
    fs::create_directories(cfg.out_dir);
    return cfg;
}

PointCloud generate_dataset(const PipelineConfig& cfg) {
    const std::string& kind = cfg.dataset_kind;
    const std::size_t n = cfg.dataset_n;
    const uint64_t seed = cfg.seed;
    const double noise = cfg.dataset_noise;
    if (kind == "lemniscate") return lemniscate_family(cfg.dataset_param, n, seed, noise);
    if (kind == "two_circles") return two_circles(n, seed, noise);
    if (kind == "wedge_circles") return wedge_circles(n, seed, noise);
    if (kind == "cyclide") return cyclide(n, seed, noise);
    if (kind == "circle_with_diameter") return circle_with_diameter(n, seed, noise);
    if (kind == "pinched_torus") return pinched_torus(n, seed, noise);
    if (kind == "circle") return unit_circle(n, seed, noise);
    if (kind == "jacobian_lemniscate") {
        VarietySpec spec;
        spec.kind = "lemniscate";
        spec.param = cfg.dataset_param;
        spec.seed = seed;
        spec.noise_sigma = noise;
        spec.tolerance = cfg.dataset_tolerance;
        return sample_variety(spec, n);
    }
    throw ConfigError("unknown dataset.kind '" + kind + "'");
}

PointCloud load_input_cloud(const PipelineConfig& cfg) {
    if (!cfg.input_csv.empty()) {
        if (!fs::exists(cfg.input_csv)) throw DataError("input file missing: " + cfg.input_csv);
        return read_cloud_csv(cfg.input_csv).cloud;
    }
    const std::string generated = cfg.out_dir + "/dataset.csv";
    if (fs::exists(generated)) return read_cloud_csv(generated).cloud;
    if (!cfg.dataset_kind.empty()) return generate_dataset(cfg);
    throw DataError("no input cloud: set input.csv or run generate first");
}

int cmd_generate(const CommonOpts& opts) {
    PipelineConfig cfg = load_config(opts);
    if (cfg.dataset_kind.empty()) throw ConfigError("generate: dataset.kind is required");
    const PointCloud cloud = generate_dataset(cfg);
    write_cloud_csv(cfg.out_dir + "/dataset.csv", cloud);
    std::cout << cfg.out_dir << "/dataset.csv: " << cloud.size() << " points\n";
    return kExitOk;
}

StratifiedSample stratify_cloud(const PipelineConfig& cfg, const PointCloud& cloud,
                                std::vector<double>* s_out) {
    StronglyStratifiedSample strong =
        phi_pushforward(magnification_bundle(cloud, cfg.zeta), cfg.phi);
    if (s_out) *s_out = strong.s;
    return forget_str(strong, cfg.u);
}

int cmd_stratify(const CommonOpts& opts) {
    PipelineConfig cfg = load_config(opts);
    const PointCloud cloud = load_input_cloud(cfg);
    std::vector<double> s;
    const StratifiedSample strat = stratify_cloud(cfg, cloud, &s);
    write_cloud_csv(cfg.out_dir + "/stratified.csv", cloud, &strat.singular_mask, &s);

    const PointCloud singular = strat.singular_part();
    nlohmann::json summary{
        {"points", cloud.size()},
        {"singular_count", strat.singular_count()},
        {"cluster_radius", cfg.cluster_radius},
        {"cluster_count", cluster_count(singular, cfg.cluster_radius)},
        {"zeta", cfg.zeta},
        {"u", cfg.u},
        {"phi_kind", to_string(cfg.phi.kind)}};
    write_text_file(cfg.out_dir + "/stratify_summary.json", summary.dump(2));
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

StratifiedSample load_stratified(const PipelineConfig& cfg, StronglyStratifiedSample* strong_out) {
    const std::string path = !cfg.input_csv.empty() &&
                                     read_cloud_csv(cfg.input_csv).has_stratum
                                 ? cfg.input_csv
                                 : cfg.out_dir + "/stratified.csv";
    if (!fs::exists(path)) throw DataError("stratified CSV missing: " + path);
    CsvCloud csv = read_cloud_csv(path);
    if (!csv.has_stratum && !csv.has_s)
        throw DataError("stratified input lacks both 'stratum' and 's' columns: " + path);
    if (strong_out && csv.has_s)
        *strong_out = StronglyStratifiedSample(csv.cloud, csv.s);
    if (csv.has_stratum) return StratifiedSample(csv.cloud, csv.singular);
    // Only s present: threshold it to recover the mask.
    std::vector<uint8_t> mask(csv.cloud.size(), 0);
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = csv.s[i] <= cfg.u ? 1 : 0;
    return StratifiedSample(csv.cloud, std::move(mask));
}

int cmd_diagram(const CommonOpts& opts) {
    PipelineConfig cfg = load_config(opts);
    const StratifiedSample strat = load_stratified(cfg, nullptr);
    const DiagramSample diag = diagification(strong_str(strat), cfg.diag);
    write_cloud_csv(cfg.out_dir + "/diagram_p.csv", diag.d_p);
    write_cloud_csv(cfg.out_dir + "/diagram_pq.csv", diag.d_pq);
    write_cloud_csv(cfg.out_dir + "/diagram_q.csv", diag.d_q);
    std::cout << "diagram sizes: p=" << diag.d_p.size() << " pq=" << diag.d_pq.size()
              << " q=" << diag.d_q.size() << "\n";
    return kExitOk;
}

int cmd_persist(const CommonOpts& opts) {
    PipelineConfig cfg = load_config(opts);
    const StratifiedSample strat = load_stratified(cfg, nullptr);
    const StratifiedFiltration sf = epers(strat, cfg.diag, cfg.cech_max_dim, cfg.cech_max_radius);
    const StratifiedBarcode sb = stratified_barcodes(sf, cfg.h0_scales);
    write_text_file(cfg.out_dir + "/barcodes.json", stratified_barcode_to_json(sb));
    write_text_file(cfg.out_dir + "/barcodes.svg",
                    stratified_barcode_svg(sb, cfg.plot_top_k, cfg.cech_max_radius,
                                           opts.reproducible));
    std::cout << cfg.out_dir << "/barcodes.json written\n";
    return kExitOk;
}

int cmd_plot(const CommonOpts& opts) {
    PipelineConfig cfg = load_config(opts);
    const std::string path = cfg.out_dir + "/barcodes.json";
    if (!fs::exists(path)) throw DataError("barcodes.json missing: " + path);
    const StratifiedBarcode sb = stratified_barcode_from_json(read_text_file(path));
    write_text_file(cfg.out_dir + "/barcodes.svg",
                    stratified_barcode_svg(sb, cfg.plot_top_k, cfg.cech_max_radius,
                                           opts.reproducible));
    std::cout << cfg.out_dir << "/barcodes.svg written\n";
    return kExitOk;
}

int cmd_pipeline(const CommonOpts& opts) {
    PipelineConfig cfg = load_config(opts);
    const PointCloud cloud =
        cfg.dataset_kind.empty() ? load_input_cloud(cfg) : generate_dataset(cfg);
    write_cloud_csv(cfg.out_dir + "/dataset.csv", cloud);

    std::vector<double> s;
    const StratifiedSample strat = stratify_cloud(cfg, cloud, &s);
    write_cloud_csv(cfg.out_dir + "/stratified.csv", cloud, &strat.singular_mask, &s);

    const DiagramSample diag = diagification(strong_str(strat), cfg.diag);
    write_cloud_csv(cfg.out_dir + "/diagram_p.csv", diag.d_p);
    write_cloud_csv(cfg.out_dir + "/diagram_pq.csv", diag.d_pq);
    write_cloud_csv(cfg.out_dir + "/diagram_q.csv", diag.d_q);

    const StratifiedFiltration sf =
        stratified_cech(diag, cfg.cech_max_dim, cfg.cech_max_radius);
    const StratifiedBarcode sb = stratified_barcodes(sf, cfg.h0_scales);
    write_text_file(cfg.out_dir + "/barcodes.json", stratified_barcode_to_json(sb));
    write_text_file(cfg.out_dir + "/barcodes.svg",
                    stratified_barcode_svg(sb, cfg.plot_top_k, cfg.cech_max_radius,
                                           opts.reproducible));

    const PointCloud singular = strat.singular_part();
    nlohmann::json summary{
        {"points", cloud.size()},
        {"singular_count", strat.singular_count()},
        {"cluster_count", cluster_count(singular, cfg.cluster_radius)},
        {"outputs",
         {"dataset.csv", "stratified.csv", "diagram_p.csv", "diagram_pq.csv", "diagram_q.csv",
          "barcodes.json", "barcodes.svg"}}};
    write_text_file(cfg.out_dir + "/pipeline_summary.json", summary.dump(2));
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

DiagramSample read_diagram_prefix(const std::string& prefix) {
    const std::string pp = prefix + "_p.csv", pqp = prefix + "_pq.csv", qp = prefix + "_q.csv";
    for (const std::string& f : {pp, pqp, qp})
        if (!fs::exists(f)) throw DataError("diagram component missing: " + f);
    return DiagramSample(read_cloud_csv(pp).cloud, read_cloud_csv(pqp).cloud,
                         read_cloud_csv(qp).cloud);
}

int cmd_dist(const std::string& metric, const std::string& a, const std::string& b) {
    double value = 0.0;
    if (metric == "hausdorff") {
        value = hausdorff(read_cloud_csv(a).cloud, read_cloud_csv(b).cloud);
    } else if (metric == "local") {
        value = local_distance(LocalSample(read_cloud_csv(a).cloud),
                               LocalSample(read_cloud_csv(b).cloud));
    } else if (metric == "stratified") {
        auto ca = read_cloud_csv(a), cb = read_cloud_csv(b);
        if (!ca.has_stratum || !cb.has_stratum)
            throw DataError("stratified metric needs 'stratum' columns in both inputs");
        value = stratified_distance(StratifiedSample(ca.cloud, ca.singular),
                                    StratifiedSample(cb.cloud, cb.singular));
    } else if (metric == "strong") {
        auto ca = read_cloud_csv(a), cb = read_cloud_csv(b);
        if (!ca.has_s || !cb.has_s)
            throw DataError("strong metric needs 's' columns in both inputs");
        value = strong_distance(StronglyStratifiedSample(ca.cloud, ca.s),
                                StronglyStratifiedSample(cb.cloud, cb.s));
    } else if (metric == "diagram") {
        value = diagram_distance(read_diagram_prefix(a), read_diagram_prefix(b));
    } else {
        throw ConfigError("unknown metric '" + metric +
                          "' (hausdorff|local|stratified|strong|diagram)");
    }
    if (std::isinf(value))
        std::printf("inf\n");
    else
        std::printf("%.9f\n", value);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stratified persistence pipeline"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string metric, dist_a, dist_b;

    auto add_common = [&](CLI::App* cmd, bool config_required = true) {
        cmd->add_option("--config", opts.config_path, "pipeline config file")
            ->required(config_required);
        cmd->add_option("--seed", opts.seed_override, "override config seed");
        cmd->add_option("--out", opts.out_override, "override output directory");
        cmd->add_flag("--reproducible", opts.reproducible,
                      "suppress timestamps in emitted files");
    };

    add_common(app.add_subcommand("generate", "sample a catalog dataset to CSV"));
    add_common(app.add_subcommand("stratify", "learn a two-strata stratification"));
    add_common(app.add_subcommand("diagram", "write the diagram sample components"));
    add_common(app.add_subcommand("persist", "compute per-flag barcodes and plots"));
    add_common(app.add_subcommand("pipeline", "run generate/stratify/diagram/persist"));
    add_common(app.add_subcommand("plot", "re-render barcodes.json as SVG"));

    CLI::App* dist = app.add_subcommand("dist", "distance between two sample files");
    dist->add_option("--metric", metric, "hausdorff|local|stratified|strong|diagram")->required();
    dist->add_option("a", dist_a, "first input")->required();
    dist->add_option("b", dist_b, "second input")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (app.got_subcommand("generate")) return cmd_generate(opts);
        if (app.got_subcommand("stratify")) return cmd_stratify(opts);
        if (app.got_subcommand("diagram")) return cmd_diagram(opts);
        if (app.got_subcommand("persist")) return cmd_persist(opts);
        if (app.got_subcommand("pipeline")) return cmd_pipeline(opts);
        if (app.got_subcommand("plot")) return cmd_plot(opts);
        if (app.got_subcommand("dist")) return cmd_dist(metric, dist_a, dist_b);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitConfig;
}
