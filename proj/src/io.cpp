#include "qentropy/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qentropy/json_io.hpp"

namespace qentropy {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

std::vector<double> number_array(const Json& doc, const char* key, const std::string& source) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw InputError(source + ": expected an array field \"" + key + "\"");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < doc[key].size(); ++i) {
    if (!doc[key][i].is_number()) {
      throw InputError(source + ": " + key + "[" + std::to_string(i) + "] is not a number");
    }
    out.push_back(doc[key][i].get<double>());
  }
  return out;
}

std::vector<double> parse_csv(const std::string& text, const std::string& source) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string cell = trim(line);
    if (cell.empty()) continue;
    if (out.empty() && lineno == 1 && cell == "weight") continue;
    double x = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last) {
      throw InputError(source + ":" + std::to_string(lineno) + ": cannot parse '" + cell +
                       "' as a number");
    }
    out.push_back(x);
  }
  if (out.empty()) throw InputError(source + ": no weights found");
  return out;
}

}  // namespace

std::vector<double> parse_weights(const std::string& text, const std::string& source) {
  if (!looks_like_json(text)) return parse_csv(text, source);
  const Json doc = parse_json(text, source);
  if (doc.is_array()) {
    Json wrapped;
    wrapped["weights"] = doc;
    return number_array(wrapped, "weights", source);
  }
  if (doc.is_object() && doc.contains("values") && !doc.contains("weights")) {
    return number_array(doc, "values", source);
  }
  return number_array(doc, "weights", source);
}

std::vector<double> read_weights(const std::string& path) { return parse_weights(slurp(path), path); }

ProbDist<double> read_dist(const std::string& path) {
  const auto w = read_weights(path);
  try {
    return make_dist(w);
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

JointDist<double> parse_joint(const std::string& text, const std::string& source) {
  const Json doc = parse_json(text, source);
  if (!doc.is_object()) throw InputError(source + ": joint file must be a JSON object");
  if (!doc.contains("dims") || !doc["dims"].is_array()) {
    throw InputError(source + ": expected an array field \"dims\"");
  }
  std::vector<std::size_t> dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_unsigned()) throw InputError(source + ": dims must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  const auto cells = number_array(doc, "cells", source);
  try {
    return JointDist<double>::make(std::move(dims), cells);
  } catch (const Error& e) {
    throw InputError(source + ": " + e.what());
  }
}

JointDist<double> read_joint(const std::string& path) { return parse_joint(slurp(path), path); }

std::string echo_dist(const ProbDist<double>& p) {
  Json doc;
  doc["schema"] = "qentropy/1";
  doc["weights"] = std::vector<double>(p.weights().data(), p.weights().data() + p.size());
  return dump_json(doc);
}

}  // namespace qentropy
