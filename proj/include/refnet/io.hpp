#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "refnet/graph.hpp"
#include "refnet/society.hpp"

namespace refnet::io {

namespace fs = std::filesystem;

/// Writes to a sibling temporary file, then renames it over `path`.
void write_text_atomic(const fs::path& path, const std::string& content);
std::string read_text(const fs::path& path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text, std::string_view context);

/// Square matrix with a header row of node ids. The corner cell reads
/// "directed" or "undirected".
std::string adjacency_to_csv(const LabeledGraph& g);
LabeledGraph adjacency_from_csv(const std::string& text);

/// Columns event_id, day, group, x, y, then one 0/1 column per individual.
/// event_id is the 0-based row index; x and y are blank without locations.
std::string gbi_to_csv(const GroupByIndividual& gbi);
GroupByIndividual gbi_from_csv(const std::string& text);

/// Columns day, event_id, actor, recipient, kind; actor and recipient are
/// written as node ids and read back as indices into `ids`.
std::string events_to_csv(const InteractionEvents& ev, const std::vector<std::string>& ids);
InteractionEvents events_from_csv(const std::string& text, const std::vector<std::string>& ids);

/// Participant ids in order of first appearance.
std::vector<std::string> event_participants(const std::string& text);

/// Node attributes keyed by id: an `id` column followed by attribute columns.
struct AttributeRows {
    std::vector<std::string> ids;
    std::vector<std::string> columns;  // attribute names in file order
    AttributeTable values;
    friend bool operator==(const AttributeRows&, const AttributeRows&) = default;
};

std::string attributes_to_csv(const AttributeRows& rows);
AttributeRows attributes_from_csv(const std::string& text);

/// id, group, sex, age, nose, clan for every simulated individual.
AttributeRows society_attributes(const SocietyData& data);

/// Attaches the attribute columns of `rows` to `g` by node id.
void attach_attributes(LabeledGraph& g, const AttributeRows& rows);

/// Group network as an undirected adjacency CSV with ids "1".."k".
std::string group_network_to_csv(const GroupNetwork& net);

SocietyConfig society_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SocietyConfig& cfg);

}  // namespace refnet::io
