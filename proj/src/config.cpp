#include "strata/config.hpp"

#include <fstream>
#include <sstream>

namespace strata {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (...) {
        throw ConfigError("config: bad number for '" + key + "': " + v);
    }
}

int64_t to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int64_t i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return i;
    } catch (...) {
        throw ConfigError("config: bad integer for '" + key + "': " + v);
    }
}

}  // namespace

void PipelineConfig::validate() const {
    if (dataset_kind.empty() && input_csv.empty())
        throw ConfigError("config: need dataset.kind or input.csv");
    if (!(zeta > 0)) throw ConfigError("config: zeta must be positive");
    for (std::size_t i = 0; i + 1 < zeta_schedule.size(); ++i)
        if (!(zeta_schedule[i] < zeta_schedule[i + 1]))
            throw ConfigError("config: zeta.schedule must be strictly increasing");
    if (!(u >= 0.0 && u < 1.0)) throw ConfigError("config: u must be in [0,1)");
    try {
        diag.validate();
        for (const auto& v : diag_grid) v.validate();
        phi.validate(0);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (cech_max_dim < 0 || cech_max_dim > 3)
        throw ConfigError("config: cech.max_dim must be in [0,3]");
    if (!(cech_max_radius > 0)) throw ConfigError("config: cech.max_radius must be positive");
    if (!(cluster_radius > 0)) throw ConfigError("config: cluster.radius must be positive");
    if (plot_top_k < 1) throw ConfigError("config: plot.top_k must be >= 1");
}

PipelineConfig parse_config_text(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "dataset.kind") {
            cfg.dataset_kind = value;
        } else if (key == "dataset.n") {
            cfg.dataset_n = static_cast<std::size_t>(to_int(key, value));
        } else if (key == "dataset.param" || key == "dataset.s") {
            cfg.dataset_param = to_double(key, value);
        } else if (key == "dataset.noise_sigma") {
            cfg.dataset_noise = to_double(key, value);
        } else if (key == "dataset.tolerance") {
            cfg.dataset_tolerance = to_double(key, value);
        } else if (key == "input.csv") {
            cfg.input_csv = value;
        } else if (key == "zeta") {
            cfg.zeta = to_double(key, value);
        } else if (key == "zeta.schedule") {
            cfg.zeta_schedule.clear();
            for (const std::string& v : split(value, ','))
                cfg.zeta_schedule.push_back(to_double(key, v));
        } else if (key == "phi.kind") {
            try {
                cfg.phi.kind = phi_kind_from_string(value);
            } catch (const std::exception& e) {
                throw ConfigError(std::string("config: ") + e.what());
            }
        } else if (key == "phi.q") {
            cfg.phi.q = static_cast<int>(to_int(key, value));
        } else if (key == "phi.grid_spacing") {
            cfg.phi.grid_spacing = to_double(key, value);
        } else if (key == "phi.restarts") {
            cfg.phi.restarts = static_cast<int>(to_int(key, value));
        } else if (key == "phi.max_iter") {
            cfg.phi.max_iter = static_cast<int>(to_int(key, value));
        } else if (key == "phi.tol") {
            cfg.phi.tol = to_double(key, value);
        } else if (key == "phi.ref_spacing") {
            cfg.phi.ref_spacing = to_double(key, value);
        } else if (key == "phi.max_fiber_points") {
            cfg.phi.max_fiber_points = static_cast<std::size_t>(to_int(key, value));
        } else if (key == "u") {
            cfg.u = to_double(key, value);
        } else if (key == "diag.v_low") {
            cfg.diag.v_low = to_double(key, value);
        } else if (key == "diag.v_up") {
            cfg.diag.v_up = to_double(key, value);
        } else if (key == "diag.grid") {
            cfg.diag_grid.clear();
            for (const std::string& pair : split(value, ',')) {
                const auto parts = split(pair, ':');
                if (parts.size() != 2)
                    throw ConfigError("config: diag.grid entries must be v_low:v_up");
                cfg.diag_grid.push_back(
                    {to_double(key, parts[0]), to_double(key, parts[1])});
            }
        } else if (key == "cech.max_dim") {
            cfg.cech_max_dim = static_cast<int>(to_int(key, value));
        } else if (key == "cech.max_radius") {
            cfg.cech_max_radius = to_double(key, value);
        } else if (key == "cluster.radius") {
            cfg.cluster_radius = to_double(key, value);
        } else if (key == "plot.top_k") {
            cfg.plot_top_k = static_cast<int>(to_int(key, value));
        } else if (key == "h0.scales") {
            cfg.h0_scales.clear();
            for (const std::string& v : split(value, ','))
                cfg.h0_scales.push_back(to_double(key, v));
        } else if (key == "out") {
            cfg.out_dir = value;
        } else if (key == "seed") {
            cfg.seed = static_cast<uint64_t>(to_int(key, value));
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

PipelineConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace strata
