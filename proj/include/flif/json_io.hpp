#ifndef FLIF_JSON_IO_HPP
#define FLIF_JSON_IO_HPP

#include <memory>
#include <string>
#include <vector>

#include "flif/core.hpp"

namespace flif {

// Database document:
//   {"relations": {"B": {"arity": 2, "input_arity": 1,
//                        "tuples": [["1","2"], ...]}, ...}}
// Constants are strings; duplicate tuples are silently deduplicated; the
// reserved constants are rejected.
std::shared_ptr<Instance> load_database_text(const std::string& json_text);
std::shared_ptr<Instance> load_database_file(const std::string& path);
std::string database_to_text(const Instance& db);

// Bindings documents: a JSON object {"x": "1"} (one valuation) or an array
// of such objects (an In relation; all rows must share a domain).
std::vector<Valuation> load_bindings_text(const std::string& json_text);
std::vector<Valuation> load_bindings_file(const std::string& path);
std::string valuation_to_json(const Valuation& v);

// Variable renaming document: {"y": "y1", ...}.
std::map<VarName, VarName> load_renaming_text(const std::string& json_text);
std::map<VarName, VarName> load_renaming_file(const std::string& path);

std::string read_file(const std::string& path);

} // namespace flif

#endif
