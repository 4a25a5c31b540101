#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "mldforge/mld.hpp"

namespace mldforge::cli {

using ojson = nlohmann::ordered_json;

ojson to_json(const MldReport& r);
ojson to_json(const ValidationReport& v);
ojson to_json(const BothSides& b);
ojson to_json(const LscScan& s, unsigned display_order);
std::string point_text(const Vector& v, unsigned display_order);

// Aligned text table; the first row is the header.
std::string table(const std::vector<std::vector<std::string>>& rows);

std::string report_table(const MldReport& r);
std::string findings_table(const ValidationReport& v);

}  // namespace mldforge::cli
