#include "refnet/pipeline.hpp"

#include <algorithm>
#include <functional>

#include "refnet/chain.hpp"
#include "refnet/dist_models.hpp"
#include "refnet/error.hpp"
#include "refnet/generative.hpp"
#include "refnet/io.hpp"
#include "refnet/kernels.hpp"
#include "refnet/permute.hpp"
#include "refnet/resample.hpp"
#include "refnet/stats.hpp"

namespace refnet {

namespace {

using nlohmann::json;

const std::vector<std::string> kModels = {
    "node_label",      "edge_direction", "edge_weight",     "endpoint_rewire",
    "gbi_checkerboard", "actor_swap",    "bootstrap_gbi",   "degree_sequence",
    "poisson_degree",  "chung_lu",       "naive_weighted_er", "gnm",
};

bool is_chain(const std::string& model) {
    return model == "edge_direction" || model == "edge_weight" || model == "endpoint_rewire" ||
           model == "gbi_checkerboard" || model == "actor_swap";
}

bool needs_undirected(const std::string& model) {
    return model == "degree_sequence" || model == "poisson_degree" || model == "chung_lu" ||
           model == "naive_weighted_er" || model == "gnm";
}

struct Constraints {
    SwapKernel kernel;
    bool include_diagonal = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) return out;
        start = pos + 1;
    }
}

// class_pair=<attr>:<a>,<b> where '+' joins several levels into one class.
void parse_class_pair(const std::string& value, SwapKernel& k) {
    const std::size_t colon = value.find(':');
    if (colon == std::string::npos || colon == 0) throw ConfigError("class_pair needs the form <attr>:<a>,<b>");
    const auto sides = split(value.substr(colon + 1), ',');
    if (sides.size() != 2 || sides[0].empty() || sides[1].empty())
        throw ConfigError("class_pair needs exactly two classes");
    k.class_attr = value.substr(0, colon);
    k.class_a = split(sides[0], '+');
    k.class_b = split(sides[1], '+');
}

Constraints parse_constraints(const std::string& model, const std::vector<std::string>& items) {
    Constraints c;
    c.kernel.kind = model == "node_label" || !is_chain(model) ? KernelKind::node_label
                                                             : kernel_kind_from_string(model);
    auto require = [&](const std::string& item, const char* wanted) {
        if (model != wanted)
            throw ConfigError("constraint '" + item + "' does not apply to model '" + model + "'");
    };
    for (const std::string& item : items) {
        const std::size_t eq = item.find('=');
        const std::string key = item.substr(0, eq);
        const std::string value = eq == std::string::npos ? "" : item.substr(eq + 1);
        if (key == "same_day" && eq == std::string::npos) {
            require(item, "gbi_checkerboard");
            c.kernel.same_day = true;
        } else if (key == "same_attr" && !value.empty()) {
            require(item, "gbi_checkerboard");
            c.kernel.same_attr = value;
        } else if (key == "class_pair" && !value.empty()) {
            require(item, "edge_direction");
            parse_class_pair(value, c.kernel);
        } else if (key == "nonzero_only" && eq == std::string::npos) {
            require(item, "edge_weight");
            c.kernel.nonzero_only = true;
        } else if (key == "all_dyads" && eq == std::string::npos) {
            require(item, "edge_weight");
            c.kernel.nonzero_only = false;
        } else if (key == "include_diagonal" && eq == std::string::npos) {
            require(item, "naive_weighted_er");
            c.include_diagonal = true;
        } else {
            throw ConfigError("unknown constraint '" + item + "'");
        }
    }
    if (model == "edge_direction" && !c.kernel.class_attr)
        throw ConfigError("model edge_direction needs a class_pair constraint");
    return c;
}

StatSpec parse_statistic(const json& j, const PipelineConfig& cfg) {
    if (!j.is_object() || !j.contains("kind")) throw ConfigError("statistic needs a 'kind'");
    StatSpec spec;
    try {
        spec.kind = stat_kind_from_string(j.at("kind").get<std::string>());
        if (j.contains("attribute")) spec.attribute = j.at("attribute").get<std::string>();
        if (j.contains("weighted")) spec.weighted = j.at("weighted").get<bool>();
        if (j.contains("mode")) {
            const auto mode = j.at("mode").get<std::string>();
            if (mode == "in") spec.mode = StrengthMode::in;
            else if (mode == "out") spec.mode = StrengthMode::out;
            else if (mode == "all") spec.mode = StrengthMode::all;
            else throw ConfigError("statistic mode must be in, out or all");
        }
        if (j.contains("recode")) spec.recode = j.at("recode").get<std::map<std::string, std::string>>();
        if (j.contains("absolute")) spec.absolute = j.at("absolute").get<bool>();
        if (j.contains("comparison"))
            spec.comparison =
                io::adjacency_from_csv(io::read_text(cfg.resolve(j.at("comparison").get<std::string>()))).w;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("statistic: ") + e.what());
    }
    validate(spec);
    return spec;
}

struct Inputs {
    std::optional<LabeledGraph> adjacency;
    std::optional<GroupByIndividual> gbi;
    std::optional<InteractionEvents> events;
    std::vector<std::string> event_ids;
    std::optional<io::AttributeRows> attributes;
};

Inputs load_inputs(const PipelineConfig& cfg) {
    Inputs in;
    if (cfg.adjacency) in.adjacency = io::adjacency_from_csv(io::read_text(cfg.resolve(*cfg.adjacency)));
    if (cfg.gbi) in.gbi = io::gbi_from_csv(io::read_text(cfg.resolve(*cfg.gbi)));
    if (cfg.events) {
        const std::string text = io::read_text(cfg.resolve(*cfg.events));
        in.event_ids = in.gbi ? in.gbi->ids : io::event_participants(text);
        in.events = io::events_from_csv(text, in.event_ids);
        if (in.gbi) validate(*in.events, &*in.gbi);
    }
    if (cfg.attributes) in.attributes = io::attributes_from_csv(io::read_text(cfg.resolve(*cfg.attributes)));
    return in;
}

std::string network_source(const PipelineConfig& cfg, const Inputs& in) {
    std::string natural;
    if (cfg.model == "gbi_checkerboard" || cfg.model == "bootstrap_gbi") natural = "gbi";
    else if (cfg.model == "actor_swap") natural = "events";
    if (!natural.empty()) {
        if (!cfg.network.empty() && cfg.network != natural)
            throw ModelIncompatible("model " + cfg.model + " works on the " + natural + " network, not " +
                                    cfg.network);
        return natural;
    }
    if (!cfg.network.empty()) return cfg.network;
    if (in.adjacency) return "adjacency";
    if (in.events) return "events";
    if (in.gbi) return "gbi";
    throw ConfigError("no input data given");
}

LabeledGraph build_network(const std::string& source, const Inputs& in) {
    LabeledGraph g;
    if (source == "adjacency") {
        if (!in.adjacency) throw ConfigError("network source adjacency needs an adjacency input");
        g = *in.adjacency;
    } else if (source == "gbi") {
        if (!in.gbi) throw ModelIncompatible("network source gbi needs a gbi input");
        g = sri_from_gbi(*in.gbi);
    } else if (source == "events") {
        if (!in.events) throw ModelIncompatible("network source events needs an events input");
        g = weighted_from_events(*in.events, in.event_ids.size());
        g.ids = in.event_ids;
    } else {
        throw ConfigError("unknown network source '" + source + "'");
    }
    if (in.attributes) io::attach_attributes(g, *in.attributes);
    return g;
}

void check_compatibility(const PipelineConfig& cfg, const Inputs& in, const LabeledGraph& g,
                         const Constraints& c) {
    const std::string& m = cfg.model;
    if ((m == "edge_direction" || m == "endpoint_rewire") && !g.directed)
        throw ModelIncompatible("model " + m + " needs a directed network");
    if (needs_undirected(m) && g.directed) throw ModelIncompatible("model " + m + " needs an undirected network");
    if ((m == "gbi_checkerboard" || m == "bootstrap_gbi") && !in.gbi)
        throw ModelIncompatible("model " + m + " needs a gbi input");
    if (m == "actor_swap" && !in.events) throw ModelIncompatible("model actor_swap needs an events input");
    if (c.kernel.same_day && in.gbi && in.gbi->day.size() != in.gbi->events())
        throw ModelIncompatible("same_day needs event days in the gbi");
    if (c.kernel.same_attr && !g.attrs.contains(*c.kernel.same_attr))
        throw ModelIncompatible("same_attr needs attribute '" + *c.kernel.same_attr + "'");
    if (c.kernel.class_attr && !g.attrs.contains(*c.kernel.class_attr))
        throw ModelIncompatible("class_pair needs attribute '" + *c.kernel.class_attr + "'");
}

std::vector<double> upper_weights(const LabeledGraph& g) {
    std::vector<double> out;
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::size_t j = i + 1; j < g.n(); ++j)
            if (g.w(i, j) != 0.0) out.push_back(g.w(i, j));
    return out;
}

std::size_t edge_count(const LabeledGraph& g) { return upper_weights(g).size(); }

// Gives a binary reference graph the observed node labels and weights drawn
// with replacement from the observed edge weights.
LabeledGraph dress(LabeledGraph ref, const LabeledGraph& observed, const std::vector<double>& weights,
                   Rng& rng) {
    for (std::size_t i = 0; i < ref.n(); ++i)
        for (std::size_t j = i + 1; j < ref.n(); ++j)
            if (ref.w(i, j) != 0.0 && !weights.empty())
                ref.w(i, j) = ref.w(j, i) = weights[uniform_index(rng, weights.size())];
    ref.ids = observed.ids;
    ref.attrs = observed.attrs;
    return ref;
}

struct References {
    std::vector<double> values;
    std::optional<ChainDiagnostics> diagnostics;
    std::optional<double> acceptance_rate;
};

template <class Sampler, class Stat>
References chain_references(Sampler& sampler, const PipelineConfig& cfg, std::uint64_t seed, Stat&& stat) {
    ChainConfig chain;
    chain.burn_in = cfg.burn_in;
    chain.thin = cfg.thin;
    chain.steps = cfg.replicates * cfg.thin;
    chain.seed = seed;
    ChainResult res = run_chain(sampler, chain, stat);
    References out;
    out.acceptance_rate = static_cast<double>(res.accepted) / static_cast<double>(chain.steps);
    if (res.series.size() >= 20) out.diagnostics = chain_diagnostics(res.series);
    out.values = std::move(res.series);
    return out;
}

References generate(const PipelineConfig& cfg, const Inputs& in, const LabeledGraph& g,
                    const Constraints& c, const StatSpec& spec, std::uint64_t seed) {
    const std::string& m = cfg.model;
    const auto graph_stat = [&](const LabeledGraph& h) { return evaluate(spec, h); };

    if (m == "edge_direction") {
        const auto& values = g.attribute(*c.kernel.class_attr);
        EdgeDirectionSampler s(g, nodes_with(values, c.kernel.class_a), nodes_with(values, c.kernel.class_b));
        return chain_references(s, cfg, seed, graph_stat);
    }
    if (m == "edge_weight") {
        EdgeWeightSampler s(g, c.kernel.nonzero_only);
        return chain_references(s, cfg, seed, graph_stat);
    }
    if (m == "endpoint_rewire") {
        EndpointRewireSampler s(g);
        return chain_references(s, cfg, seed, graph_stat);
    }
    if (m == "gbi_checkerboard") {
        CheckerboardConstraints cc;
        cc.same_day = c.kernel.same_day;
        if (c.kernel.same_attr) cc.same_attr = g.attribute(*c.kernel.same_attr);
        CheckerboardSampler s(*in.gbi, cc);
        return chain_references(s, cfg, seed, [&](const GroupByIndividual& state) {
            LabeledGraph h = sri_from_gbi(state);
            h.attrs = g.attrs;
            return evaluate(spec, h);
        });
    }
    if (m == "actor_swap") {
        ActorSwapSampler s(*in.events, true);
        return chain_references(s, cfg, seed, [&](const InteractionEvents& state) {
            LabeledGraph h = weighted_from_events(state, g.n());
            h.ids = g.ids;
            h.attrs = g.attrs;
            return evaluate(spec, h);
        });
    }

    std::function<double(Rng&)> draw;
    const std::vector<double> weights = upper_weights(g);
    if (m == "node_label") {
        draw = [&](Rng& rng) { return evaluate(spec, permute_node_labels(g, rng)); };
    } else if (m == "bootstrap_gbi") {
        draw = [&](Rng& rng) {
            LabeledGraph h = sri_from_gbi(bootstrap_gbi_rows(*in.gbi, rng));
            h.attrs = g.attrs;
            return evaluate(spec, h);
        };
    } else if (m == "degree_sequence") {
        const std::vector<int> deg = degree(g);
        draw = [&, deg](Rng& rng) { return evaluate(spec, dress(graph_from_degree_sequence(deg, rng), g, weights, rng)); };
    } else if (m == "poisson_degree") {
        const std::vector<int> deg = degree(g);
        const double lambda = fit_degree_poisson(deg);
        draw = [&, lambda](Rng& rng) {
            return evaluate(spec, dress(sample_poisson_degree_graph(g.n(), lambda, 1000, rng), g, weights, rng));
        };
    } else if (m == "chung_lu") {
        const std::vector<int> deg = degree(g);
        const std::vector<double> target(deg.begin(), deg.end());
        draw = [&, target](Rng& rng) { return evaluate(spec, dress(chung_lu(target, rng), g, weights, rng)); };
    } else if (m == "naive_weighted_er") {
        const NormalFit fit = fit_weight_normal(g.w, c.include_diagonal);
        const std::size_t edges = edge_count(g);
        draw = [&, fit, edges](Rng& rng) {
            LabeledGraph h = naive_weighted_er(g.n(), edges, fit.mean, fit.sd, rng);
            h.ids = g.ids;
            h.attrs = g.attrs;
            return evaluate(spec, h);
        };
    } else if (m == "gnm") {
        const std::size_t edges = edge_count(g);
        draw = [&, edges](Rng& rng) { return evaluate(spec, dress(gen_gnm(g.n(), edges, rng), g, weights, rng)); };
    } else {
        throw ConfigError("unknown model '" + m + "'");
    }
    References out;
    out.values = kernels::parallel_replicates(cfg.replicates, seed, draw);
    return out;
}

json histogram_json(const Histogram& h) { return {{"edges", h.edges}, {"counts", h.counts}}; }

}  // namespace

fs::path PipelineConfig::resolve(const std::string& path) const {
    const fs::path p(path);
    return p.is_absolute() ? p : base_dir / p;
}

const std::vector<std::string>& model_names() { return kModels; }

PipelineConfig pipeline_config_from_json(const json& j, const fs::path& base_dir) {
    if (!j.is_object()) throw ConfigError("pipeline config must be a JSON object");
    static const char* const known[] = {"adjacency", "gbi",        "events", "attributes", "network",
                                        "model",     "constraints", "statistic", "burn_in", "thin",
                                        "replicates", "histogram_bins", "seed", "output"};
    for (const auto& [key, value] : j.items())
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw ConfigError("unknown config field '" + key + "'");
    PipelineConfig cfg;
    cfg.base_dir = base_dir;
    try {
        for (auto [key, dst] : {std::pair{"adjacency", &cfg.adjacency}, std::pair{"gbi", &cfg.gbi},
                                std::pair{"events", &cfg.events}, std::pair{"attributes", &cfg.attributes}})
            if (j.contains(key)) *dst = j.at(key).get<std::string>();
        if (j.contains("network")) cfg.network = j.at("network").get<std::string>();
        if (j.contains("model")) cfg.model = j.at("model").get<std::string>();
        if (j.contains("constraints")) cfg.constraints = j.at("constraints").get<std::vector<std::string>>();
        if (j.contains("statistic")) cfg.statistic = j.at("statistic");
        if (j.contains("burn_in")) cfg.burn_in = j.at("burn_in").get<std::size_t>();
        if (j.contains("thin")) cfg.thin = j.at("thin").get<std::size_t>();
        if (j.contains("replicates")) cfg.replicates = j.at("replicates").get<std::size_t>();
        if (j.contains("histogram_bins")) cfg.histogram_bins = j.at("histogram_bins").get<std::size_t>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("pipeline config: ") + e.what());
    }
    return cfg;
}

json to_json(const PipelineConfig& cfg) {
    json j;
    for (auto [key, src] : {std::pair{"adjacency", &cfg.adjacency}, std::pair{"gbi", &cfg.gbi},
                            std::pair{"events", &cfg.events}, std::pair{"attributes", &cfg.attributes}})
        j[key] = *src ? json(**src) : json(nullptr);
    j["network"] = cfg.network;
    j["model"] = cfg.model;
    j["constraints"] = cfg.constraints;
    j["statistic"] = cfg.statistic;
    j["burn_in"] = cfg.burn_in;
    j["thin"] = cfg.thin;
    j["replicates"] = cfg.replicates;
    j["histogram_bins"] = cfg.histogram_bins;
    j["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
    return j;
}

TestOutcome run_test(const PipelineConfig& cfg) {
    // Configuration problems surface before any data is touched.
    if (!cfg.seed) throw ConfigError("a seed is required");
    if (std::find(kModels.begin(), kModels.end(), cfg.model) == kModels.end())
        throw ConfigError("unknown model '" + cfg.model + "'");
    if (cfg.replicates < 1) throw ConfigError("replicates must be at least 1");
    if (cfg.thin < 1) throw ConfigError("thin must be at least 1");
    if (cfg.histogram_bins < 1) throw ConfigError("histogram_bins must be at least 1");
    const Constraints constraints = parse_constraints(cfg.model, cfg.constraints);
    const StatSpec spec = parse_statistic(cfg.statistic, cfg);

    const Inputs in = load_inputs(cfg);
    const LabeledGraph g = build_network(network_source(cfg, in), in);
    check_compatibility(cfg, in, g, constraints);

    TestOutcome out;
    const double observed = evaluate(spec, g);
    References refs = generate(cfg, in, g, constraints, spec, *cfg.seed);
    out.diagnostics = refs.diagnostics;
    out.acceptance_rate = refs.acceptance_rate;
    out.run = reference_test(observed, std::move(refs.values));

    std::vector<double> pool = out.run.references;
    pool.push_back(observed);
    out.histogram = histogram(pool, cfg.histogram_bins);

    json diag = nullptr;
    if (out.diagnostics) {
        diag = {{"lag1_autocorr", out.diagnostics->lag1_autocorr ? json(*out.diagnostics->lag1_autocorr)
                                                                 : json(nullptr)},
                {"split_z", out.diagnostics->split_z}};
    }
    if (out.acceptance_rate) {
        if (diag.is_null()) diag = json::object();
        diag["acceptance_rate"] = *out.acceptance_rate;
    }
    out.results = {
        {"observed", out.run.observed},
        {"references", out.run.references},
        {"pool_size", out.run.references.size() + 1},
        {"p_paper", out.run.p_paper},
        {"p_upper", out.run.p_upper},
        {"ci", {{"low", out.run.ci_low}, {"high", out.run.ci_high}}},
        {"verdict", to_string(out.run.verdict)},
        {"diagnostics", diag},
        {"histogram", histogram_json(out.histogram)},
        {"config", to_json(cfg)},
    };
    return out;
}

TestOutcome cmd_test(const PipelineConfig& cfg) {
    TestOutcome out = run_test(cfg);
    io::write_text_atomic(fs::path(cfg.output), out.results.dump(2) + "\n");
    return out;
}

SimulateOutput cmd_simulate(const SocietyConfig& cfg, int focal_group, const fs::path& out_dir,
                            std::uint64_t seed) {
    validate(cfg);
    const std::size_t n_groups = group_centers(cfg).size();
    if (focal_group < 1 || static_cast<std::size_t>(focal_group) > n_groups)
        throw ConfigError("focal_group must name one of the " + std::to_string(n_groups) + " groups");

    SimulateOutput out;
    Rng rng(seed);
    out.society = simulate_society(cfg, rng);
    const auto focal = static_cast<std::size_t>(focal_group - 1);
    const GroupByIndividual& gbi = out.society.gbis[focal];
    const AttributeTable attrs = out.society.group_attributes(focal);
    out.dominance = simulate_interactions(gbi, attrs, InteractionConfig::dominance(), rng);
    out.affiliation = simulate_interactions(gbi, attrs, InteractionConfig::affiliation(), rng);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) throw DataError("cannot create output directory " + out_dir.string());

    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("attributes.csv", io::attributes_to_csv(io::society_attributes(out.society)));
    for (const GroupByIndividual& g : out.society.gbis)
        files.emplace_back("gbi_" + std::to_string(g.group) + ".csv", io::gbi_to_csv(g));
    files.emplace_back("events_dominance.csv", io::events_to_csv(out.dominance, gbi.ids));
    files.emplace_back("events_affiliation.csv", io::events_to_csv(out.affiliation, gbi.ids));
    files.emplace_back("adjacency.csv", io::adjacency_to_csv(out.society.association));
    files.emplace_back("group_net.csv", io::group_network_to_csv(out.society.group_network));

    json names = json::array();
    for (const auto& [name, text] : files) names.push_back(name);
    const json manifest = {
        {"seed", seed},
        {"focal_group", focal_group},
        {"groups", n_groups},
        {"individuals", out.society.individuals.size()},
        {"files", names},
        {"config", io::to_json(cfg)},
    };
    files.emplace_back("manifest.json", manifest.dump(2) + "\n");

    for (const auto& [name, text] : files) {
        io::write_text_atomic(out_dir / name, text);
        out.files.push_back(out_dir / name);
    }
    return out;
}

}  // namespace refnet
