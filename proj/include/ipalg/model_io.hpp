#ifndef IPALG_MODEL_IO_HPP
#define IPALG_MODEL_IO_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ipalg/labeled.hpp"

namespace ipalg {

using Json = nlohmann::ordered_json;

// Parse or semantic failure in a model document; the message carries the
// offending location (JSON position or key path).
class model_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parsed model: declared variables, named labeled pieces, and a query
// list executed by `run_document`.
struct ModelDocument {
    SpacePtr space;
    std::vector<std::string> piece_names;  // declaration order
    std::map<std::string, LabeledPiece> pieces;
    Json queries = Json::array();
};

ModelDocument parse_model(const std::string& text);
std::string serialize_model(const ModelDocument& doc);

// Executes one query object ({"command": ..., ...}); `derived` holds
// pieces materialized by earlier queries in the same run via "as".
Json run_query(const ModelDocument& doc, std::map<std::string, LabeledPiece>& derived,
               const Json& query);

// Runs every query in the document; the report is byte-identical across
// runs for identical inputs.
Json run_document(const ModelDocument& doc);

std::string dump_report(const Json& report);

// Serialization helpers shared with the CLI.
std::string cell_key(const SpacePtr& sub, size_t index);
Gamble parse_gamble_object(const SpacePtr& sub, const Json& obj, const std::string& where);
Json gamble_to_json(const Gamble& g);
Json piece_summary(const LabeledPiece& piece);

}  // namespace ipalg

#endif
