#include "refnet/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "refnet/error.hpp"

namespace refnet::io {

namespace {

using Row = std::vector<std::string>;

std::vector<Row> parse_csv(const std::string& text) {
    std::vector<Row> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        Row row;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            row.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void check_field(const std::string& s, const char* what) {
    if (s.empty() || s.find_first_of(",\"\r\n") != std::string::npos)
        throw DataError(std::string(what) + " '" + s + "' is empty or contains a delimiter");
}

void append_row(std::string& out, const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
    }
    out += '\n';
}

long parse_long(std::string_view text, std::string_view context) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw DataError(std::string(context) + ": '" + std::string(text) + "' is not an integer");
    return v;
}

void expect_header(const Row& got, const Row& want, const char* file) {
    if (got.size() < want.size() || !std::equal(want.begin(), want.end(), got.begin()))
        throw DataError(std::string(file) + ": unexpected header");
}

const nlohmann::json* find(const nlohmann::json& j, const char* key) {
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

template <class T>
void read_field(const nlohmann::json& j, const char* key, T& dst) {
    if (const auto* v = find(j, key)) {
        try {
            dst = v->get<T>();
        } catch (const nlohmann::json::exception&) {
            throw ConfigError(std::string("config field '") + key + "' has the wrong type");
        }
    }
}

void read_range(const nlohmann::json& j, const char* key, int& lo, int& hi) {
    std::vector<int> range;
    read_field(j, key, range);
    if (find(j, key) == nullptr) return;
    if (range.size() != 2) throw ConfigError(std::string("config field '") + key + "' needs [min, max]");
    lo = range[0];
    hi = range[1];
}

void read_categorical(const nlohmann::json& j, const std::string& name, Categorical& dst) {
    read_field(j, (name + "_levels").c_str(), dst.levels);
    read_field(j, (name + "_probs").c_str(), dst.probs);
}

}  // namespace

void write_text_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw DataError("cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw DataError("cannot write " + path.string());
    }
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

double parse_double(std::string_view text, std::string_view context) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw DataError(std::string(context) + ": '" + std::string(text) + "' is not a number");
    return v;
}

std::string adjacency_to_csv(const LabeledGraph& g) {
    std::string out;
    Row header{g.directed ? "directed" : "undirected"};
    for (const auto& id : g.ids) {
        check_field(id, "node id");
        header.push_back(id);
    }
    append_row(out, header);
    for (std::size_t i = 0; i < g.n(); ++i) {
        Row row{g.ids[i]};
        for (std::size_t j = 0; j < g.n(); ++j) row.push_back(format_double(g.w(i, j)));
        append_row(out, row);
    }
    return out;
}

LabeledGraph adjacency_from_csv(const std::string& text) {
    const auto rows = parse_csv(text);
    if (rows.empty()) throw DataError("adjacency: empty file");
    const Row& header = rows.front();
    LabeledGraph g;
    if (header[0] == "directed") {
        g.directed = true;
    } else if (header[0] == "undirected" || header[0].empty()) {
        g.directed = false;
    } else {
        throw DataError("adjacency: corner cell must be 'directed' or 'undirected'");
    }
    const std::size_t n = header.size() - 1;
    if (rows.size() != n + 1) throw DataError("adjacency: matrix is not square");
    g.ids.assign(header.begin() + 1, header.end());
    g.w = RealMatrix(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Row& row = rows[i + 1];
        if (row.size() != n + 1) throw DataError("adjacency: row " + std::to_string(i + 1) + " has the wrong length");
        if (row[0] != g.ids[i]) throw DataError("adjacency: row id '" + row[0] + "' does not match the header");
        for (std::size_t j = 0; j < n; ++j) g.w(i, j) = parse_double(row[j + 1], "adjacency");
    }
    validate(g);
    return g;
}

std::string gbi_to_csv(const GroupByIndividual& gbi) {
    std::string out;
    Row header{"event_id", "day", "group", "x", "y"};
    for (const auto& id : gbi.ids) {
        check_field(id, "individual id");
        header.push_back(id);
    }
    append_row(out, header);
    for (std::size_t e = 0; e < gbi.events(); ++e) {
        Row row{std::to_string(e), gbi.day.empty() ? "" : std::to_string(gbi.day[e]),
                std::to_string(gbi.group), gbi.loc.empty() ? "" : std::to_string(gbi.loc[e].x),
                gbi.loc.empty() ? "" : std::to_string(gbi.loc[e].y)};
        for (std::size_t i = 0; i < gbi.individuals(); ++i) row.push_back(gbi.m(e, i) ? "1" : "0");
        append_row(out, row);
    }
    return out;
}

GroupByIndividual gbi_from_csv(const std::string& text) {
    const auto rows = parse_csv(text);
    if (rows.empty()) throw DataError("gbi: empty file");
    expect_header(rows.front(), {"event_id", "day", "group", "x", "y"}, "gbi");
    GroupByIndividual gbi;
    gbi.ids.assign(rows.front().begin() + 5, rows.front().end());
    const std::size_t n = gbi.ids.size();
    const std::size_t events = rows.size() - 1;
    gbi.m = BinaryMatrix(events, n, 0);
    const bool full = events > 0 && rows[1].size() == n + 5;
    const bool has_day = full && !rows[1][1].empty();
    const bool has_loc = full && !rows[1][3].empty();
    for (std::size_t e = 0; e < events; ++e) {
        const Row& row = rows[e + 1];
        if (row.size() != n + 5) throw DataError("gbi: row " + std::to_string(e + 1) + " has the wrong length");
        if (parse_long(row[0], "gbi event_id") != static_cast<long>(e))
            throw DataError("gbi: event ids must count up from 0");
        if (has_day != !row[1].empty() || has_loc != (!row[3].empty() && !row[4].empty()))
            throw DataError("gbi: day and location columns must be filled for all rows or none");
        if (has_day) gbi.day.push_back(static_cast<int>(parse_long(row[1], "gbi day")));
        const int group = static_cast<int>(parse_long(row[2], "gbi group"));
        if (e == 0) gbi.group = group;
        if (group != gbi.group) throw DataError("gbi: a file holds a single group");
        if (has_loc)
            gbi.loc.push_back({static_cast<int>(parse_long(row[3], "gbi x")),
                               static_cast<int>(parse_long(row[4], "gbi y"))});
        for (std::size_t i = 0; i < n; ++i) {
            const std::string& cell = row[i + 5];
            if (cell != "0" && cell != "1") throw DataError("gbi: cells must be 0 or 1");
            gbi.m(e, i) = cell == "1" ? 1 : 0;
        }
    }
    validate(gbi);
    return gbi;
}

std::string events_to_csv(const InteractionEvents& ev, const std::vector<std::string>& ids) {
    std::string out = "day,event_id,actor,recipient,kind\n";
    for (const Interaction& r : ev.records) {
        if (r.actor >= ids.size() || r.recipient >= ids.size())
            throw DataError("events: participant index outside the id list");
        append_row(out, {std::to_string(r.day), std::to_string(r.event), ids[r.actor], ids[r.recipient],
                         to_string(r.kind)});
    }
    return out;
}

InteractionEvents events_from_csv(const std::string& text, const std::vector<std::string>& ids) {
    const auto rows = parse_csv(text);
    if (rows.empty()) throw DataError("events: empty file");
    expect_header(rows.front(), {"day", "event_id", "actor", "recipient", "kind"}, "events");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);
    auto lookup = [&](const std::string& id) {
        const auto it = index.find(id);
        if (it == index.end()) throw DataError("events: unknown individual '" + id + "'");
        return it->second;
    };
    InteractionEvents ev;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const Row& row = rows[r];
        if (row.size() != 5) throw DataError("events: row " + std::to_string(r) + " has the wrong length");
        Interaction rec;
        rec.day = static_cast<int>(parse_long(row[0], "events day"));
        const long event = parse_long(row[1], "events event_id");
        if (event < 0) throw DataError("events: negative event_id");
        rec.event = static_cast<std::size_t>(event);
        rec.actor = lookup(row[2]);
        rec.recipient = lookup(row[3]);
        try {
            rec.kind = interaction_kind_from_string(row[4]);
        } catch (const ConfigError& e) {
            throw DataError(std::string("events: ") + e.what());
        }
        ev.records.push_back(rec);
    }
    validate(ev);
    return ev;
}

std::vector<std::string> event_participants(const std::string& text) {
    const auto rows = parse_csv(text);
    std::vector<std::string> ids;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 5) throw DataError("events: row " + std::to_string(r) + " has the wrong length");
        for (std::size_t c : {2, 3})
            if (std::find(ids.begin(), ids.end(), rows[r][c]) == ids.end()) ids.push_back(rows[r][c]);
    }
    return ids;
}

std::string attributes_to_csv(const AttributeRows& rows) {
    std::string out;
    Row header{"id"};
    for (const auto& c : rows.columns) {
        check_field(c, "attribute name");
        header.push_back(c);
    }
    append_row(out, header);
    for (std::size_t i = 0; i < rows.ids.size(); ++i) {
        check_field(rows.ids[i], "node id");
        Row row{rows.ids[i]};
        for (const auto& c : rows.columns) {
            const std::string& v = rows.values.at(c).at(i);
            check_field(v, "attribute value");
            row.push_back(v);
        }
        append_row(out, row);
    }
    return out;
}

AttributeRows attributes_from_csv(const std::string& text) {
    const auto rows = parse_csv(text);
    if (rows.empty() || rows.front().empty() || rows.front()[0] != "id")
        throw DataError("attributes: first column must be 'id'");
    AttributeRows out;
    out.columns.assign(rows.front().begin() + 1, rows.front().end());
    for (const auto& c : out.columns) out.values[c];
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const Row& row = rows[r];
        if (row.size() != out.columns.size() + 1)
            throw DataError("attributes: row " + std::to_string(r) + " has the wrong length");
        out.ids.push_back(row[0]);
        for (std::size_t c = 0; c < out.columns.size(); ++c) out.values[out.columns[c]].push_back(row[c + 1]);
    }
    return out;
}

AttributeRows society_attributes(const SocietyData& data) {
    AttributeRows out;
    out.columns = {"group", "sex", "age", "nose", "clan"};
    for (const Individual& ind : data.individuals) {
        out.ids.push_back(ind.id);
        out.values["group"].push_back(std::to_string(ind.group));
        out.values["sex"].push_back(ind.sex);
        out.values["age"].push_back(ind.age);
        out.values["nose"].push_back(ind.nose);
        out.values["clan"].push_back(ind.clan);
    }
    return out;
}

void attach_attributes(LabeledGraph& g, const AttributeRows& rows) {
    std::map<std::string, std::size_t> row_of;
    for (std::size_t r = 0; r < rows.ids.size(); ++r) row_of.emplace(rows.ids[r], r);
    for (const auto& c : rows.columns) g.attrs[c].clear();
    for (const auto& id : g.ids) {
        const auto it = row_of.find(id);
        if (it == row_of.end()) throw DataError("attributes: no row for node '" + id + "'");
        for (const auto& c : rows.columns) g.attrs[c].push_back(rows.values.at(c)[it->second]);
    }
}

std::string group_network_to_csv(const GroupNetwork& net) {
    LabeledGraph g = LabeledGraph::empty(net.g.rows());
    g.w = net.g;
    for (std::size_t k = 0; k < g.ids.size(); ++k) g.ids[k] = std::to_string(k + 1);
    return adjacency_to_csv(g);
}

SocietyConfig society_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("society config must be a JSON object");
    static const char* const known[] = {
        "grid_min", "grid_max", "grid_x", "grid_y", "group_spacing", "mean_group_size",
        "clan_labels", "p_within_clan", "p_between_clan", "days", "mean_subgroups",
        "nose_assort", "sex_levels", "sex_probs", "age_levels", "age_probs", "nose_levels",
        "nose_probs", "loc_sd", "focal_group"};
    for (const auto& [key, value] : j.items())
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw ConfigError("unknown config field '" + key + "'");

    SocietyConfig cfg;
    if (find(j, "grid_min")) {
        read_field(j, "grid_min", cfg.grid_x_min);
        cfg.grid_y_min = cfg.grid_x_min;
    }
    if (find(j, "grid_max")) {
        read_field(j, "grid_max", cfg.grid_x_max);
        cfg.grid_y_max = cfg.grid_x_max;
    }
    read_range(j, "grid_x", cfg.grid_x_min, cfg.grid_x_max);
    read_range(j, "grid_y", cfg.grid_y_min, cfg.grid_y_max);
    read_field(j, "group_spacing", cfg.group_spacing);
    read_field(j, "mean_group_size", cfg.mean_group_size);
    read_field(j, "clan_labels", cfg.clan_labels);
    read_field(j, "p_within_clan", cfg.p_within_clan);
    read_field(j, "p_between_clan", cfg.p_between_clan);
    read_field(j, "days", cfg.days);
    read_field(j, "mean_subgroups", cfg.mean_subgroups);
    read_field(j, "nose_assort", cfg.nose_assort);
    read_categorical(j, "sex", cfg.sex);
    read_categorical(j, "age", cfg.age);
    read_categorical(j, "nose", cfg.nose);
    read_field(j, "loc_sd", cfg.loc_sd);
    validate(cfg);
    return cfg;
}

nlohmann::json to_json(const SocietyConfig& cfg) {
    return {
        {"grid_x", {cfg.grid_x_min, cfg.grid_x_max}},
        {"grid_y", {cfg.grid_y_min, cfg.grid_y_max}},
        {"group_spacing", cfg.group_spacing},
        {"mean_group_size", cfg.mean_group_size},
        {"clan_labels", cfg.clan_labels},
        {"p_within_clan", cfg.p_within_clan},
        {"p_between_clan", cfg.p_between_clan},
        {"days", cfg.days},
        {"mean_subgroups", cfg.mean_subgroups},
        {"nose_assort", cfg.nose_assort},
        {"sex_levels", cfg.sex.levels},
        {"sex_probs", cfg.sex.probs},
        {"age_levels", cfg.age.levels},
        {"age_probs", cfg.age.probs},
        {"nose_levels", cfg.nose.levels},
        {"nose_probs", cfg.nose.probs},
        {"loc_sd", cfg.loc_sd},
    };
}

}  // namespace refnet::io
