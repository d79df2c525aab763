#include "flif/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace flif {

namespace {
using nlohmann::json;

json parse_json(const std::string& text, const std::string& what) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw IoError("invalid JSON in " + what);
  return doc;
}

void check_constant(const std::string& value, const std::string& where) {
  if (value == kPadding || value == kDesignated)
    throw IoError("reserved constant \"" + value + "\" in " + where);
}
} // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::shared_ptr<Instance> load_database_text(const std::string& json_text) {
  json doc = parse_json(json_text, "database");
  if (!doc.is_object() || !doc.contains("relations") ||
      !doc["relations"].is_object())
    throw IoError("database document must be {\"relations\": {...}}");

  Schema schema;
  for (const auto& [name, spec] : doc["relations"].items()) {
    if (!spec.is_object() || !spec.contains("arity") ||
        !spec.contains("input_arity") || !spec["arity"].is_number_unsigned() ||
        !spec["input_arity"].is_number_unsigned())
      throw IoError("relation " + name +
                    " needs unsigned \"arity\" and \"input_arity\"");
    try {
      schema.declare(name, spec["arity"].get<std::size_t>(),
                     spec["input_arity"].get<std::size_t>());
    } catch (const SchemaError& e) {
      throw IoError(e.what());
    }
  }

  auto db = std::make_shared<Instance>(schema);
  for (const auto& [name, spec] : doc["relations"].items()) {
    if (!spec.contains("tuples")) continue;
    if (!spec["tuples"].is_array())
      throw IoError("relation " + name + ": \"tuples\" must be an array");
    for (const auto& row : spec["tuples"]) {
      if (!row.is_array())
        throw IoError("relation " + name + ": each tuple must be an array");
      Tuple t;
      for (const auto& cell : row) {
        if (!cell.is_string())
          throw IoError("relation " + name + ": constants must be strings");
        std::string value = cell.get<std::string>();
        check_constant(value, "relation " + name);
        t.push_back(std::move(value));
      }
      try {
        db->insert(name, std::move(t));
      } catch (const SchemaError& e) {
        throw IoError(e.what());
      }
    }
  }
  db->freeze();
  return db;
}

std::shared_ptr<Instance> load_database_file(const std::string& path) {
  return load_database_text(read_file(path));
}

std::string database_to_text(const Instance& db) {
  json relations = json::object();
  for (const auto& [name, info] : db.schema().entries()) {
    json tuples = json::array();
    for (const Tuple& t : db.relation(name)) tuples.push_back(t);
    relations[name] = {{"arity", info.arity},
                       {"input_arity", info.input_arity},
                       {"tuples", std::move(tuples)}};
  }
  return json{{"relations", std::move(relations)}}.dump(2);
}

namespace {
Valuation valuation_from(const json& obj, const std::string& what) {
  if (!obj.is_object()) throw IoError(what + " must be a JSON object");
  std::map<VarName, Constant> bindings;
  for (const auto& [var, value] : obj.items()) {
    if (!is_identifier(var)) throw IoError("bad variable name: " + var);
    if (!value.is_string())
      throw IoError("binding for " + var + " must be a string");
    std::string c = value.get<std::string>();
    check_constant(c, "bindings");
    bindings.emplace(var, std::move(c));
  }
  return Valuation(std::move(bindings));
}
} // namespace

std::vector<Valuation> load_bindings_text(const std::string& json_text) {
  json doc = parse_json(json_text, "bindings");
  std::vector<Valuation> rows;
  if (doc.is_object()) {
    rows.push_back(valuation_from(doc, "bindings"));
    return rows;
  }
  if (!doc.is_array())
    throw IoError("bindings must be a JSON object or an array of objects");
  for (const auto& item : doc)
    rows.push_back(valuation_from(item, "bindings row"));
  if (!rows.empty()) {
    VarSet domain = rows.front().domain();
    for (const Valuation& row : rows)
      if (row.domain() != domain)
        throw IoError("bindings rows must share one variable set");
  }
  return rows;
}

std::vector<Valuation> load_bindings_file(const std::string& path) {
  return load_bindings_text(read_file(path));
}

std::string valuation_to_json(const Valuation& v) {
  json obj = json::object();
  for (const auto& [var, value] : v.bindings()) obj[var] = value;
  return obj.dump();
}

std::map<VarName, VarName> load_renaming_text(const std::string& json_text) {
  json doc = parse_json(json_text, "renaming");
  if (!doc.is_object()) throw IoError("renaming must be a JSON object");
  std::map<VarName, VarName> out;
  for (const auto& [from, to] : doc.items()) {
    if (!to.is_string() || !is_identifier(to.get<std::string>()) ||
        !is_identifier(from))
      throw IoError("renaming entries must map variable names to variable "
                    "names");
    out.emplace(from, to.get<std::string>());
  }
  return out;
}

std::map<VarName, VarName> load_renaming_file(const std::string& path) {
  return load_renaming_text(read_file(path));
}

} // namespace flif
