#pragma once

#include <string>

#include "strata/strat_persistence.hpp"

namespace strata {

// Barcode JSON: array of {"degree": d, "bars": [[birth, death-or-"inf"], ...]}
// sorted by (degree, birth, death).
std::string barcode_to_json(const Barcode& barcode);
Barcode barcode_from_json(const std::string& json_text);

// {"p": <barcode>, "pq": <barcode>, "q": <barcode>, "h0_maps": optional}
std::string stratified_barcode_to_json(const StratifiedBarcode& sb);
StratifiedBarcode stratified_barcode_from_json(const std::string& json_text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Per-flag barcode panels side by side, top_k longest bars per flag.
// The timestamp comment is omitted when reproducible = true.
std::string stratified_barcode_svg(const StratifiedBarcode& sb, int top_k, double axis_max,
                                   bool reproducible);

}  // namespace strata
