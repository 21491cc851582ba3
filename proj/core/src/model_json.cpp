#include "rsh/model_json.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace rsh {

using nlohmann::json;

namespace {

json encode(double x) { return x; }
json encode(const Rational& q) { return format_rational(q); }

template <Scalar T>
std::string encode_model(const StatusModel<T>& model) {
  json doc;
  json errors = json::array();
  for (const auto& x : model.errors) errors.push_back(encode(x));
  json initial = json::array();
  for (const auto& x : model.initial) initial.push_back(encode(x));
  json rows = json::array();
  for (const auto& row : model.transition.rows()) {
    json r = json::array();
    for (const auto& x : row) r.push_back(encode(x));
    rows.push_back(std::move(r));
  }
  doc["errors"] = std::move(errors);
  doc["initial"] = std::move(initial);
  doc["transition"] = std::move(rows);
  doc["numeric_mode"] = std::string(to_string(numeric_mode_of<T>));
  return doc.dump(2);
}

template <Scalar T>
T decode(const json& v, const char* field) {
  if constexpr (is_exact<T>) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw std::invalid_argument(std::string("rational model field '") + field +
                                "' must hold \"p/q\" strings or integers");
  } else {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
    throw std::invalid_argument(std::string("float64 model field '") + field + "' must hold numbers");
  }
}

template <Scalar T>
Vector<T> decode_vector(const json& doc, const char* field) {
  if (!doc.contains(field) || !doc.at(field).is_array()) {
    throw std::invalid_argument(std::string("status model needs an array field '") + field + "'");
  }
  Vector<T> out;
  for (const auto& v : doc.at(field)) out.push_back(decode<T>(v, field));
  return out;
}

template <Scalar T>
StatusModel<T> decode_model(const json& doc) {
  StatusModel<T> model;
  model.errors = decode_vector<T>(doc, "errors");
  model.initial = decode_vector<T>(doc, "initial");
  if (!doc.contains("transition") || !doc.at("transition").is_array()) {
    throw std::invalid_argument("status model needs an array field 'transition'");
  }
  std::vector<Vector<T>> rows;
  for (const auto& row : doc.at("transition")) {
    if (!row.is_array()) throw std::invalid_argument("'transition' must be an array of rows");
    Vector<T> r;
    for (const auto& v : row) r.push_back(decode<T>(v, "transition"));
    rows.push_back(std::move(r));
  }
  model.transition = UpperTriMatrix<T>::from_rows(rows);
  return model;
}

}  // namespace

std::string to_json(const StatusModel<double>& model) { return encode_model(model); }
std::string to_json(const StatusModel<Rational>& model) { return encode_model(model); }

AnyStatusModel status_model_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("status model is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("status model must be a JSON object");
  if (!doc.contains("numeric_mode") || !doc.at("numeric_mode").is_string()) {
    throw std::invalid_argument("status model needs a string field 'numeric_mode'");
  }
  const NumericMode mode = parse_numeric_mode(doc.at("numeric_mode").get<std::string>());
  if (mode == NumericMode::Float64) return decode_model<double>(doc);
  return decode_model<Rational>(doc);
}

AnyStatusModel load_status_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return status_model_from_json(buffer.str());
}

}  // namespace rsh
