#include "strata/json_io.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace strata {

using nlohmann::json;

namespace {

json barcode_to_json_value(const Barcode& barcode) {
    json arr = json::array();
    for (int d = 0; d <= barcode.max_degree(); ++d) {
        json bars = json::array();
        for (const Bar& b : barcode.bars(d)) {
            json bar = json::array();
            bar.push_back(b.birth);
            if (b.finite())
                bar.push_back(b.death);
            else
                bar.push_back("inf");
            bars.push_back(bar);
        }
        arr.push_back(json{{"degree", d}, {"bars", bars}});
    }
    return arr;
}

Barcode barcode_from_json_value(const json& arr) {
    Barcode out;
    for (const json& entry : arr) {
        const int d = entry.at("degree").get<int>();
        for (const json& bar : entry.at("bars")) {
            Bar b;
            b.birth = bar.at(0).get<double>();
            if (bar.at(1).is_string())
                b.death = std::numeric_limits<double>::infinity();
            else
                b.death = bar.at(1).get<double>();
            out.add(d, b);
        }
    }
    out.sort();
    return out;
}

json h0_to_json(const H0Map& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols; ++c) row.push_back(static_cast<int>(m.at(r, c)));
        rows.push_back(row);
    }
    return json{{"alpha", m.alpha}, {"matrix", rows}};
}

H0Map h0_from_json(const json& j) {
    H0Map m;
    m.alpha = j.at("alpha").get<double>();
    const json& rows = j.at("matrix");
    m.rows = rows.size();
    m.cols = m.rows ? rows[0].size() : 0;
    for (const json& row : rows)
        for (const json& v : row) m.m.push_back(static_cast<uint8_t>(v.get<int>()));
    return m;
}

}  // namespace

std::string barcode_to_json(const Barcode& barcode) {
    Barcode sorted = barcode;
    sorted.sort();
    return barcode_to_json_value(sorted).dump(2);
}

Barcode barcode_from_json(const std::string& json_text) {
    return barcode_from_json_value(json::parse(json_text));
}

std::string stratified_barcode_to_json(const StratifiedBarcode& sb) {
    StratifiedBarcode sorted = sb;
    sorted.p.sort();
    sorted.pq.sort();
    sorted.q.sort();
    json out{{"p", barcode_to_json_value(sorted.p)},
             {"pq", barcode_to_json_value(sorted.pq)},
             {"q", barcode_to_json_value(sorted.q)}};
    if (!sorted.h0_maps.empty()) {
        json maps = json::array();
        for (const auto& [to_p, to_q] : sorted.h0_maps)
            maps.push_back(json{{"pq_to_p", h0_to_json(to_p)}, {"pq_to_q", h0_to_json(to_q)}});
        out["h0_maps"] = maps;
    }
    return out.dump(2);
}

StratifiedBarcode stratified_barcode_from_json(const std::string& json_text) {
    const json j = json::parse(json_text);
    StratifiedBarcode sb;
    sb.p = barcode_from_json_value(j.at("p"));
    sb.pq = barcode_from_json_value(j.at("pq"));
    sb.q = barcode_from_json_value(j.at("q"));
    if (j.contains("h0_maps")) {
        for (const json& entry : j.at("h0_maps")) {
            sb.h0_maps.emplace_back(h0_from_json(entry.at("pq_to_p")),
                                    h0_from_json(entry.at("pq_to_q")));
            sb.h0_scales.push_back(sb.h0_maps.back().first.alpha);
        }
    }
    return sb;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

struct PlotBar {
    int degree;
    double birth, death;  // death clipped to axis_max for infinite bars
    bool infinite;
};

void collect_bars(const Barcode& bc, int top_k, double axis_max, std::vector<PlotBar>& out) {
    std::vector<PlotBar> all;
    for (int d = 0; d <= bc.max_degree(); ++d)
        for (const Bar& b : bc.bars(d)) {
            PlotBar pb;
            pb.degree = d;
            pb.birth = b.birth;
            pb.infinite = !b.finite();
            pb.death = pb.infinite ? axis_max : std::min(b.death, axis_max);
            all.push_back(pb);
        }
    std::sort(all.begin(), all.end(), [](const PlotBar& a, const PlotBar& b) {
        return (a.death - a.birth) > (b.death - b.birth);
    });
    if (static_cast<int>(all.size()) > top_k) all.resize(top_k);
    std::sort(all.begin(), all.end(), [](const PlotBar& a, const PlotBar& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    out = std::move(all);
}

}  // namespace

std::string stratified_barcode_svg(const StratifiedBarcode& sb, int top_k, double axis_max,
                                   bool reproducible) {
    const char* flag_names[3] = {"p", "pq", "q"};
    const char* degree_colors[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    const double panel_w = 260, panel_h = 200, margin = 36, bar_h = 6;

    std::ostringstream svg;
    svg.setf(std::ios::fixed);
    svg.precision(2);
    const double width = 3 * panel_w + 4 * margin;
    const double height = panel_h + 2 * margin;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    if (!reproducible) {
        const auto now = std::chrono::system_clock::now().time_since_epoch().count();
        svg << "<!-- generated " << now << " -->\n";
    }
    for (int f = 0; f < 3; ++f) {
        const double x0 = margin + f * (panel_w + margin);
        const double y0 = margin;
        svg << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << panel_w
            << "\" height=\"" << panel_h << "\" fill=\"none\" stroke=\"#888\"/>\n";
        svg << "<text x=\"" << x0 + panel_w / 2 << "\" y=\"" << y0 - 8
            << "\" text-anchor=\"middle\" font-size=\"13\">" << flag_names[f] << "</text>\n";
        std::vector<PlotBar> bars;
        collect_bars(sb.flag(f), top_k, axis_max, bars);
        const double step = bars.empty() ? 0 : std::min(bar_h + 4.0, panel_h / bars.size());
        for (std::size_t i = 0; i < bars.size(); ++i) {
            const PlotBar& b = bars[i];
            const double bx = x0 + panel_w * (b.birth / axis_max);
            const double bw = std::max(0.8, panel_w * ((b.death - b.birth) / axis_max));
            const double by = y0 + 6 + i * step;
            svg << "<rect x=\"" << bx << "\" y=\"" << by << "\" width=\"" << bw
                << "\" height=\"" << bar_h << "\" fill=\""
                << degree_colors[b.degree % 4] << "\"";
            if (b.infinite) svg << " opacity=\"0.75\"";
            svg << "/>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace strata
