#include "syncwalk/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "syncwalk/errors.hpp"

namespace syncwalk::io {

namespace {

int read_size_field(const json& j) {
  if (!j.is_object() || !j.contains("m") || !j.at("m").is_number_integer())
    throw FormatError("missing integer field \"m\"");
  const long long m = j.at("m").get<long long>();
  if (m < 1 || m > 10000) throw FormatError("state count out of range");
  return static_cast<int>(m);
}

int read_state_label(const json& j, int m, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer state label");
  const long long v = j.get<long long>();
  if (v < 1 || v > m) throw FormatError(std::string(what) + " out of range (labels are 1-based)");
  return static_cast<int>(v - 1);
}

MappingTable read_image(const json& j, int m, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != m)
    throw FormatError(std::string(what) + " must list one target per state");
  MappingTable f;
  f.image.reserve(static_cast<size_t>(m));
  for (const auto& e : j) f.image.push_back(read_state_label(e, m, what));
  return f;
}

json image_to_json(const MappingTable& f) {
  json out = json::array();
  for (int v : f.image) out.push_back(v + 1);
  return out;
}

}  // namespace

json matrix_to_json(const StochasticMatrix& q) {
  json rows = json::array();
  for (int x = 0; x < q.size(); ++x) {
    json row = json::array();
    for (int y = 0; y < q.size(); ++y) row.push_back(rat_to_string(q.q(x, y)));
    rows.push_back(std::move(row));
  }
  return json{{"m", q.size()}, {"rows", std::move(rows)}};
}

StochasticMatrix matrix_from_json(const json& j, long long max_den) {
  const int m = read_size_field(j);
  if (!j.contains("rows") || !j.at("rows").is_array() || static_cast<int>(j.at("rows").size()) != m)
    throw FormatError("field \"rows\" must hold m rows");

  bool inexact = false;
  std::vector<std::vector<Rat>> exact(static_cast<size_t>(m));
  std::vector<std::vector<double>> approx(static_cast<size_t>(m));
  for (int x = 0; x < m; ++x) {
    const auto& row = j.at("rows").at(static_cast<size_t>(x));
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw FormatError("matrix rows must hold m entries");
    for (const auto& e : row) {
      Rat v;
      if (e.is_string()) {
        try {
          v = rat_from_string(e.get<std::string>());
        } catch (const std::invalid_argument& ex) {
          throw FormatError(ex.what());
        }
      } else if (e.is_number_integer()) {
        v = Rat(e.get<long long>());
      } else if (e.is_number_float()) {
        inexact = true;
        const double dv = e.get<double>();
        approx[static_cast<size_t>(x)].push_back(dv);
        exact[static_cast<size_t>(x)].emplace_back(0);
        continue;
      } else {
        throw FormatError("matrix entries must be numbers or \"a/b\" strings");
      }
      if (v < 0) throw FormatError("negative matrix entry");
      approx[static_cast<size_t>(x)].push_back(to_double(v));
      exact[static_cast<size_t>(x)].push_back(std::move(v));
    }
  }
  if (inexact) return rationalize(approx, max_den);
  return StochasticMatrix(std::move(exact));
}

json law_to_json(const MappingLaw& mu) {
  json support = json::array();
  for (const auto& [f, w] : mu.atoms())
    support.push_back(json{{"image", image_to_json(f)}, {"weight", rat_to_string(w)}});
  return json{{"m", mu.state_count()}, {"support", std::move(support)}};
}

MappingLaw law_from_json(const json& j) {
  const int m = read_size_field(j);
  if (!j.contains("support") || !j.at("support").is_array())
    throw FormatError("field \"support\" must hold the law's atoms");
  std::vector<std::pair<MappingTable, Rat>> atoms;
  for (const auto& a : j.at("support")) {
    if (!a.is_object() || !a.contains("image") || !a.contains("weight"))
      throw FormatError("law atoms need \"image\" and \"weight\"");
    MappingTable f = read_image(a.at("image"), m, "atom image");
    Rat w;
    try {
      if (a.at("weight").is_string())
        w = rat_from_string(a.at("weight").get<std::string>());
      else if (a.at("weight").is_number_integer())
        w = Rat(a.at("weight").get<long long>());
      else
        throw std::invalid_argument("atom weights must be \"a/b\" strings");
    } catch (const std::invalid_argument& ex) {
      throw FormatError(ex.what());
    }
    atoms.emplace_back(std::move(f), std::move(w));
  }
  try {
    return MappingLaw(m, std::move(atoms));
  } catch (const PreconditionError& ex) {
    throw FormatError(std::string("invalid mapping law: ") + ex.what());
  }
}

json coloring_to_json(const RoadColoring& coloring) {
  json colors = json::array();
  for (const auto& c : coloring.colors) colors.push_back(image_to_json(c));
  return json{{"d", coloring.out_degree()}, {"colors", std::move(colors)}};
}

json coloring_to_json(const RoadColoring& coloring, const Word& certificate) {
  json out = coloring_to_json(coloring);
  json word = json::array();
  for (const auto& f : certificate.maps) {
    const auto it = std::find(coloring.colors.begin(), coloring.colors.end(), f);
    if (it == coloring.colors.end())
      throw PreconditionError("certificate uses a map outside the coloring");
    word.push_back(static_cast<int>(it - coloring.colors.begin()) + 1);
  }
  out["word"] = std::move(word);
  return out;
}

RoadColoring coloring_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.at("d").is_number_integer())
    throw FormatError("missing integer field \"d\"");
  const long long d = j.at("d").get<long long>();
  if (!j.contains("colors") || !j.at("colors").is_array() ||
      static_cast<long long>(j.at("colors").size()) != d)
    throw FormatError("field \"colors\" must hold d maps");
  if (d < 1) throw FormatError("out-degree must be positive");
  const auto& arr = j.at("colors");
  if (!arr.at(0).is_array() || arr.at(0).empty()) throw FormatError("colors must be image arrays");
  const int m = static_cast<int>(arr.at(0).size());
  RoadColoring out;
  for (const auto& c : arr) out.colors.push_back(read_image(c, m, "color image"));
  return out;
}

json graph_to_json(const AdjacencyMatrix& a) {
  json rows = json::array();
  for (int y = 0; y < a.size(); ++y) {
    json row = json::array();
    for (int x = 0; x < a.size(); ++x) row.push_back(a.count(y, x).template convert_to<long long>());
    rows.push_back(std::move(row));
  }
  return json{{"m", a.size()}, {"A", std::move(rows)}};
}

AdjacencyMatrix graph_from_json(const json& j) {
  const int m = read_size_field(j);
  if (!j.contains("A") || !j.at("A").is_array() || static_cast<int>(j.at("A").size()) != m)
    throw FormatError("field \"A\" must hold m rows");
  std::vector<std::vector<Int>> entries(static_cast<size_t>(m));
  for (int y = 0; y < m; ++y) {
    const auto& row = j.at("A").at(static_cast<size_t>(y));
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw FormatError("adjacency rows must hold m entries");
    for (const auto& e : row) {
      if (!e.is_number_integer() || e.get<long long>() < 0)
        throw FormatError("edge multiplicities must be non-negative integers");
      entries[static_cast<size_t>(y)].emplace_back(e.get<long long>());
    }
  }
  try {
    return AdjacencyMatrix(m, std::move(entries));
  } catch (const PreconditionError& ex) {
    throw FormatError(std::string("invalid graph: ") + ex.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw FormatError("cannot parse " + path.string() + ": " + ex.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace syncwalk::io
