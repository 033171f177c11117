#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "strata/phi.hpp"
#include "strata/strat_persistence.hpp"

namespace strata {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One pipeline per file; flat `dotted.key = value` lines, '#' comments.
struct PipelineConfig {
    // Input: either a catalog dataset or an existing CSV.
    std::string dataset_kind;
    std::size_t dataset_n = 1000;
    double dataset_param = 0.0;
    double dataset_noise = 0.0;
    double dataset_tolerance = 0.05;
    std::string input_csv;

    double zeta = 3.0;
    std::vector<double> zeta_schedule;

    PhiSpec phi;
    double u = 0.6;

    DiagramParams diag;
    std::vector<DiagramParams> diag_grid;

    int cech_max_dim = 2;
    double cech_max_radius = 0.5;

    double cluster_radius = 0.1;
    int plot_top_k = 14;
    std::vector<double> h0_scales;

    std::string out_dir = ".";
    uint64_t seed = 0;

    void validate() const;
};

PipelineConfig parse_config_text(const std::string& text);
PipelineConfig parse_config_file(const std::string& path);

}  // namespace strata
