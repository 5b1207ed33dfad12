#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "syncwalk/chain.hpp"
#include "syncwalk/law.hpp"
#include "syncwalk/mapping.hpp"

namespace syncwalk::io {

using nlohmann::json;

// All on-disk formats are 1-based: states are 1..m in image arrays and in
// report keys. In-memory everything is 0-based.

// {"m": int, "rows": [[entry, ...], ...]}, entry = "a/b" on write.
json matrix_to_json(const StochasticMatrix& q);

// Readers accept "a/b" strings, integers, and floating entries. Exact inputs
// are kept exact; if any entry is a non-integral float the whole matrix is
// rounded via rationalize(max_den).
StochasticMatrix matrix_from_json(const json& j, long long max_den = 1'000'000);

// {"m": int, "support": [{"image": [...], "weight": "a/b"}, ...]}
json law_to_json(const MappingLaw& mu);
MappingLaw law_from_json(const json& j);

// {"d": int, "colors": [[...], ...]}; an optional "word" field stores a
// constant-image certificate as indices into "colors" (application order).
json coloring_to_json(const RoadColoring& coloring);
json coloring_to_json(const RoadColoring& coloring, const Word& certificate);
RoadColoring coloring_from_json(const json& j);

// {"m": int, "A": [[int, ...], ...]} with A[y][x] = multiplicity of x -> y.
json graph_to_json(const AdjacencyMatrix& a);
AdjacencyMatrix graph_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace syncwalk::io
