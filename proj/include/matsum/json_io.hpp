#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "matsum/embed.hpp"
#include "matsum/fp_matrix.hpp"
#include "matsum/rational.hpp"
#include "matsum/region.hpp"

namespace matsum {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

// Matrix file: {"n": ..., "p": ..., "entries": [[...], ...]}; entries are
// reduced into canonical residues on load.
Json matrix_to_json(const FpMatrix& m);
FpMatrix matrix_from_json(const Json& j);
FpMatrix load_matrix(const std::string& path);

// Point: {"k": ..., "p": ..., "numerators": [...]}.
Json point_to_json(const UnitPoint& pt);

// Rationals serialize as [num, den]; strings are accepted on input.
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

// Region file: {"k": ..., "boxes": [{"lo": [[num,den],...], "hi": [...]}]}.
Json boxes_to_json(int k, const std::vector<Box>& boxes);
std::vector<Box> boxes_from_json(const Json& j, int* k_out = nullptr);
// Checked non-overlapping union.
RegionUnion load_region(const std::string& path);
// Unchecked family: boxes may overlap, each is evaluated independently.
std::vector<Box> load_boxes(const std::string& path, int* k_out = nullptr);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

} // namespace matsum
