#include "rocscale/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace rocscale::io {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_unit_real(const std::string& field, std::size_t row,
                       const char* what) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("row " + std::to_string(row) + ": " + what +
                     " is not a decimal number");
  if (!(v >= 0.0 && v <= 1.0))
    throw ParseError("row " + std::to_string(row) + ": " + what +
                     " outside [0,1]");
  return v;
}

void require_keys(const nlohmann::json& doc,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!allowed.contains(key)) throw SpecError("unknown key `" + key + "`");
  }
}

}  // namespace

ScorePool load_pool(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  std::string line;
  bool header_seen = false;
  std::size_t row = 0;
  std::vector<LabeledSample> samples;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!header_seen) {
      if (t != "score,label")
        throw ParseError("expected header `score,label`, got `" + t + "`");
      header_seen = true;
      continue;
    }
    ++row;
    auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos)
      throw ParseError("row " + std::to_string(row) +
                       ": expected exactly two fields");
    double score = parse_unit_real(trim(t.substr(0, comma)), row, "score");
    std::string label = trim(t.substr(comma + 1));
    if (label != "0" && label != "1")
      throw ParseError("row " + std::to_string(row) + ": label must be 0 or 1");
    samples.push_back({score, label == "1" ? 1 : 0});
  }
  if (!header_seen) throw ParseError("missing `score,label` header");
  if (samples.empty()) throw EmptyInputError("pool file has no data rows");
  return ScorePool(std::move(samples));
}

RocCurve load_roc_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw SpecError("invalid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw SpecError("spec must be a JSON object");
  if (!doc.contains("type") || !doc["type"].is_string())
    throw SpecError("missing string field `type`");
  const std::string type = doc["type"];

  try {
    if (type == "empirical") {
      require_keys(doc, {"type", "pool_path"});
      if (!doc.contains("pool_path") || !doc["pool_path"].is_string())
        throw SpecError("`empirical` needs string field `pool_path`");
      std::filesystem::path pp = doc["pool_path"].get<std::string>();
      if (pp.is_relative()) pp = path.parent_path() / pp;
      return empirical_roc(load_pool(pp));
    }
    if (type == "points") {
      require_keys(doc, {"type", "points"});
      if (!doc.contains("points") || !doc["points"].is_array())
        throw SpecError("`points` needs an array field `points`");
      std::vector<RocPoint> pts;
      for (const auto& item : doc["points"]) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
            !item[1].is_number())
          throw SpecError("`points` entries must be [F, T] number pairs");
        pts.push_back({item[0].get<double>(), item[1].get<double>()});
      }
      return RocCurve::from_points(std::move(pts));
    }
    if (type == "linear_slope") {
      require_keys(doc, {"type", "alpha"});
      if (!doc.contains("alpha") || !doc["alpha"].is_number())
        throw SpecError("`linear_slope` needs numeric field `alpha`");
      return RocCurve::linear_slope(doc["alpha"].get<double>());
    }
    if (type == "power") {
      require_keys(doc, {"type", "gamma", "grid"});
      if (!doc.contains("gamma") || !doc["gamma"].is_number())
        throw SpecError("`power` needs numeric field `gamma`");
      int grid = 1024;
      if (doc.contains("grid")) {
        if (!doc["grid"].is_number_integer())
          throw SpecError("`grid` must be an integer");
        grid = doc["grid"].get<int>();
      }
      return RocCurve::power(doc["gamma"].get<double>(), grid);
    }
    if (type == "two_segment") {
      require_keys(doc, {"type", "breakpoint"});
      if (!doc.contains("breakpoint") || !doc["breakpoint"].is_array() ||
          doc["breakpoint"].size() != 2)
        throw SpecError("`two_segment` needs field `breakpoint` as [F, T]");
      return RocCurve::two_segment(doc["breakpoint"][0].get<double>(),
                                   doc["breakpoint"][1].get<double>());
    }
  } catch (const DomainError& e) {
    throw SpecError("invalid `" + type + "` parameters: " + e.what());
  }
  throw SpecError("unknown curve type `" + type + "`");
}

void write_roc_spec(const RocCurve& curve, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["type"] = "points";
  auto& pts = doc["points"] = nlohmann::json::array();
  for (const auto& p : curve.points())
    pts.push_back(nlohmann::json::array({p.fpr, p.tpr}));
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::uint64_t hash = 0xcbf29ce484222325ULL;  // FNV-1a
  char chunk[4096];
  while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(chunk[i]);
      hash *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace rocscale::io
