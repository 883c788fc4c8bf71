#include "tame/tamemod/io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace tamemod {

using nlohmann::json;

namespace {

DenseMat mat_from_json(const json& j, int rows, int cols, const std::string& what) {
  if (!j.is_array() || int(j.size()) != rows)
    throw std::invalid_argument("tamemod-v1: " + what + ": expected " + std::to_string(rows) +
                                " rows");
  DenseMat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || int(row.size()) != cols)
      throw std::invalid_argument("tamemod-v1: " + what + ": expected " + std::to_string(cols) +
                                  " columns");
    for (int c = 0; c < cols; ++c) m.at(r, c) = Int(row[c].get<long long>());
  }
  return m;
}

json mat_to_json(const DenseMat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back((long long)m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TruncIFunctor from_json_text(const std::string& text) {
  json j = json::parse(text);
  TruncIFunctor f;
  f.N = j.at("N").get<int>();
  f.grade = j.value("grade", 0);
  if (f.N < 0) throw std::invalid_argument("tamemod-v1: negative N");
  const json& levels = j.at("levels");
  if (int(levels.size()) != f.N + 1)
    throw std::invalid_argument("tamemod-v1: expected N+1 levels");
  for (const json& lv : levels) {
    int g = lv.at("generators").get<int>();
    const json& rel = lv.value("relations", json::array());
    f.levels.emplace_back(g, mat_from_json(rel, int(rel.size()), g, "relations"));
  }
  const json& stab = j.at("stab");
  if (int(stab.size()) != f.N) throw std::invalid_argument("tamemod-v1: expected N stab maps");
  for (int n = 0; n < f.N; ++n)
    f.stab.emplace_back(f.level(n), f.level(n + 1),
                        mat_from_json(stab[n], f.level(n + 1).num_generators(),
                                      f.level(n).num_generators(), "stab"));
  const json& tr = j.value("transpositions", json::object());
  for (int n = 2; n <= f.N; ++n)
    for (int i = 1; i < n; ++i) {
      std::string key = std::to_string(n) + "," + std::to_string(i);
      if (!tr.contains(key))
        throw std::invalid_argument("tamemod-v1: missing transposition " + key);
      int g = f.level(n).num_generators();
      f.transpositions.emplace(std::make_pair(n, i),
                               GroupHom(f.level(n), f.level(n),
                                        mat_from_json(tr.at(key), g, g, "transposition " + key)));
    }
  return f;
}

std::string to_json_text(const TruncIFunctor& f) {
  json j;
  j["N"] = f.N;
  j["grade"] = f.grade;
  json levels = json::array();
  for (int n = 0; n <= f.N; ++n)
    levels.push_back({{"generators", f.level(n).num_generators()},
                      {"relations", mat_to_json(f.level(n).relations())}});
  j["levels"] = std::move(levels);
  json stab = json::array();
  for (int n = 0; n < f.N; ++n) stab.push_back(mat_to_json(f.iota(n).matrix()));
  j["stab"] = std::move(stab);
  json tr = json::object();
  for (const auto& [key, hom] : f.transpositions)
    tr[std::to_string(key.first) + "," + std::to_string(key.second)] = mat_to_json(hom.matrix());
  j["transpositions"] = std::move(tr);
  return j.dump(2) + "\n";
}

TruncIFunctor load_functor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_text(text);
}

void save_functor(const TruncIFunctor& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json_text(f);
}

}  // namespace tamemod
