#include "refnet/society.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "refnet/error.hpp"
#include "refnet/kernels.hpp"

namespace refnet {

namespace {

void check_categorical(const Categorical& c, const std::string& field) {
    if (c.levels.empty() || c.levels.size() != c.probs.size())
        throw ConfigError(field + ": levels and probabilities must be nonempty and of equal length");
    double total = 0.0;
    for (double p : c.probs) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(field + ": probabilities must lie in [0, 1]");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError(field + ": probabilities must sum to 1");
}

void check_probability(double p, const std::string& field) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(field + " must lie in [0, 1]");
}

int rounded_offset(Rng& rng, double sd) {
    return static_cast<int>(std::lround(normal(rng, 0.0, sd)));
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct GroupDraw {
    GroupByIndividual gbi;
    std::vector<std::string> sex, age, nose;
};

GroupDraw draw_group(std::size_t size, Point center, const SocietyConfig& cfg, double loc_sd,
                     Rng& rng) {
    GroupDraw out;
    for (std::size_t i = 0; i < size; ++i) out.sex.push_back(cfg.sex.draw(rng));
    for (std::size_t i = 0; i < size; ++i) out.age.push_back(cfg.age.draw(rng));
    for (std::size_t i = 0; i < size; ++i) out.nose.push_back(cfg.nose.draw(rng));
    out.gbi = simulate_group_gbi(out.nose, cfg, rng);
    locate_subgroups(out.gbi, center, loc_sd, rng);
    return out;
}

// Association index for every cross-group dyad; within-group cells stay 0.
RealMatrix cross_group_index(const RealMatrix& counts, std::span<const std::size_t> membership,
                             int days) {
    const std::size_t n = counts.rows();
    RealMatrix w(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (membership[i] != membership[j])
                w(i, j) = between_group_index(counts(i, j), static_cast<double>(days));
    return w;
}

GroupNetwork collapse(RealMatrix w, std::span<const std::size_t> membership, const AbmLayout& layout) {
    LabeledGraph g = LabeledGraph::empty(w.rows());
    g.w = std::move(w);
    GroupNetwork out = collapse_group_network(g, membership, layout.centers.size());
    out.clans = layout.clans;
    out.centers = layout.centers;
    return out;
}

}  // namespace

std::string Categorical::draw(Rng& rng) const {
    return levels[weighted_index(rng, probs)];
}

SocietyConfig SocietyConfig::second_population() {
    SocietyConfig cfg;
    cfg.grid_x_min = 3;
    cfg.grid_x_max = 13;
    cfg.grid_y_min = 3;
    cfg.grid_y_max = 9;
    cfg.nose_assort = 0.1;
    return cfg;
}

void validate(const SocietyConfig& cfg) {
    if (cfg.grid_x_min > cfg.grid_x_max || cfg.grid_y_min > cfg.grid_y_max)
        throw ConfigError("grid: minimum exceeds maximum");
    if (cfg.group_spacing < 1) throw ConfigError("group_spacing must be at least 1");
    if (!(cfg.mean_group_size > 0.0)) throw ConfigError("mean_group_size must be positive");
    if (cfg.clan_labels.empty()) throw ConfigError("clan_labels must be nonempty");
    check_probability(cfg.p_within_clan, "p_within_clan");
    check_probability(cfg.p_between_clan, "p_between_clan");
    if (cfg.days < 1) throw ConfigError("days must be at least 1");
    if (!(cfg.mean_subgroups > 1.0)) throw ConfigError("mean_subgroups must exceed 1");
    if (!(cfg.nose_assort >= 0.0 && cfg.nose_assort < 0.5))
        throw ConfigError("nose_assort must lie in [0, 0.5)");
    check_categorical(cfg.sex, "sex_probs");
    check_categorical(cfg.age, "age_probs");
    check_categorical(cfg.nose, "nose_probs");
    if (!(cfg.loc_sd >= 0.0)) throw ConfigError("loc_sd must be nonnegative");
}

std::vector<Point> group_centers(const SocietyConfig& cfg) {
    std::vector<Point> out;
    for (int y = cfg.grid_y_min; y <= cfg.grid_y_max; ++y)
        for (int x = cfg.grid_x_min; x <= cfg.grid_x_max; ++x)
            if (x % cfg.group_spacing == 0 && y % cfg.group_spacing == 0) out.push_back({x, y});
    return out;
}

std::vector<std::size_t> SocietyData::membership() const {
    std::vector<std::size_t> out;
    out.reserve(individuals.size());
    for (const Individual& ind : individuals) out.push_back(static_cast<std::size_t>(ind.group - 1));
    return out;
}

AttributeTable SocietyData::group_attributes(std::size_t group_index) const {
    AttributeTable out;
    for (const Individual& ind : individuals) {
        if (static_cast<std::size_t>(ind.group - 1) != group_index) continue;
        out["group"].push_back(std::to_string(ind.group));
        out["sex"].push_back(ind.sex);
        out["age"].push_back(ind.age);
        out["nose"].push_back(ind.nose);
        out["clan"].push_back(ind.clan);
    }
    return out;
}

GroupByIndividual simulate_group_gbi(std::span<const std::string> nose, const SocietyConfig& cfg,
                                     Rng& rng) {
    const std::size_t size = nose.size();
    const std::string& first_level = cfg.nose.levels.front();
    GroupByIndividual gbi;
    std::vector<unsigned char> kept;  // nonempty rows, concatenated
    std::vector<double> w_first, w_other;
    std::vector<std::size_t> pick(size);
    for (int d = 1; d <= cfg.days; ++d) {
        const auto n_sg = static_cast<std::size_t>(1 + poisson(rng, cfg.mean_subgroups - 1.0));
        const std::size_t half = n_sg / 2;
        w_first.assign(n_sg, 0.5 - cfg.nose_assort);
        w_other.assign(n_sg, 0.5 + cfg.nose_assort);
        for (std::size_t s = 0; s < half; ++s) {
            w_first[s] = 0.5 + cfg.nose_assort;
            w_other[s] = 0.5 - cfg.nose_assort;
        }
        std::discrete_distribution<std::size_t> first(w_first.begin(), w_first.end());
        std::discrete_distribution<std::size_t> other(w_other.begin(), w_other.end());
        for (std::size_t i = 0; i < size; ++i) pick[i] = nose[i] == first_level ? first(rng) : other(rng);

        BinaryMatrix day_rows(n_sg, size, 0);
        for (std::size_t i = 0; i < size; ++i) day_rows(pick[i], i) = 1;
        for (std::size_t s = 0; s < n_sg; ++s) {
            const auto row = day_rows.row(s);
            if (std::find(row.begin(), row.end(), 1) == row.end()) continue;
            kept.insert(kept.end(), row.begin(), row.end());
            gbi.day.push_back(d);
        }
    }
    gbi.m = BinaryMatrix(gbi.day.size(), size, 0);
    std::copy(kept.begin(), kept.end(), gbi.m.flat().begin());
    return gbi;
}

void locate_subgroups(GroupByIndividual& gbi, Point center, double loc_sd, Rng& rng) {
    gbi.loc.resize(gbi.events());
    for (Point& p : gbi.loc) {
        p.x = center.x + rounded_offset(rng, loc_sd);
        p.y = center.y + rounded_offset(rng, loc_sd);
    }
}

RealMatrix between_group_counts(std::span<const GroupByIndividual> gbis,
                                std::span<const std::string> clans, double p_within_clan,
                                double p_between_clan, int days, Rng& rng) {
    const std::size_t n_groups = gbis.size();
    if (clans.size() != n_groups) throw DataError("need one clan per group");
    std::vector<std::size_t> offset(n_groups + 1, 0);
    for (std::size_t g = 0; g < n_groups; ++g) {
        if (gbis[g].loc.size() != gbis[g].events() || gbis[g].day.size() != gbis[g].events())
            throw DataError("between-group counting needs a day and location for every event");
        offset[g + 1] = offset[g] + gbis[g].individuals();
    }

    // rows_on[g][d - 1] lists the events of group g on day d.
    std::vector<std::vector<std::vector<std::size_t>>> rows_on(n_groups,
                                                               std::vector<std::vector<std::size_t>>(days));
    for (std::size_t g = 0; g < n_groups; ++g)
        for (std::size_t e = 0; e < gbis[g].events(); ++e) {
            const int d = gbis[g].day[e];
            if (d < 1 || d > days) throw DataError("event day outside 1.." + std::to_string(days));
            rows_on[g][static_cast<std::size_t>(d - 1)].push_back(e);
        }

    RealMatrix counts(offset[n_groups], offset[n_groups], 0.0);
    std::vector<std::pair<std::size_t, std::size_t>> matched;
    for (int d = 0; d < days; ++d) {
        for (std::size_t j = 0; j + 1 < n_groups; ++j) {
            for (std::size_t k = j + 1; k < n_groups; ++k) {
                matched.clear();
                for (std::size_t a : rows_on[j][d])
                    for (std::size_t b : rows_on[k][d])
                        if (gbis[j].loc[a] == gbis[k].loc[b]) matched.emplace_back(a, b);
                if (matched.empty()) continue;
                const double p = clans[j] == clans[k] ? p_within_clan : p_between_clan;
                if (!bernoulli(rng, p)) continue;
                for (const auto& [a, b] : matched) {
                    for (std::size_t u : gbis[j].members(a))
                        for (std::size_t v : gbis[k].members(b)) {
                            counts(offset[j] + u, offset[k] + v) += 1.0;
                            counts(offset[k] + v, offset[j] + u) += 1.0;
                        }
                }
            }
        }
    }
    return counts;
}

SocietyData simulate_society(const SocietyConfig& cfg, Rng& rng) {
    validate(cfg);
    SocietyData out;
    out.config = cfg;
    out.centers = group_centers(cfg);
    if (out.centers.empty()) throw ConfigError("grid holds no group positions");
    const std::size_t n_groups = out.centers.size();
    for (std::size_t g = 0; g < n_groups; ++g)
        out.clans.push_back(cfg.clan_labels[uniform_index(rng, cfg.clan_labels.size())]);

    // Groups are independent given their own streams.
    const std::uint64_t base = rng();
    std::vector<GroupDraw> drawn(n_groups);
    const auto count = static_cast<std::ptrdiff_t>(n_groups);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t g = 0; g < count; ++g) {
        const auto gi = static_cast<std::size_t>(g);
        Rng stream = make_stream(base, gi);
        const auto size = static_cast<std::size_t>(std::max(1L, poisson(stream, cfg.mean_group_size)));
        drawn[gi] = draw_group(size, out.centers[gi], cfg, cfg.loc_sd, stream);
    }

    for (std::size_t g = 0; g < n_groups; ++g) {
        GroupDraw& d = drawn[g];
        d.gbi.group = static_cast<int>(g + 1);
        for (std::size_t i = 0; i < d.gbi.individuals(); ++i) {
            Individual ind;
            ind.id = "G" + std::to_string(g + 1) + "_" + std::to_string(i + 1);
            ind.group = static_cast<int>(g + 1);
            ind.sex = d.sex[i];
            ind.age = d.age[i];
            ind.nose = d.nose[i];
            ind.clan = out.clans[g];
            d.gbi.ids.push_back(ind.id);
            out.individuals.push_back(std::move(ind));
        }
        out.gbis.push_back(std::move(d.gbi));
    }

    const RealMatrix counts =
        between_group_counts(out.gbis, out.clans, cfg.p_within_clan, cfg.p_between_clan, cfg.days, rng);
    const std::vector<std::size_t> membership = out.membership();

    LabeledGraph& assoc = out.association;
    assoc.directed = false;
    assoc.w = cross_group_index(counts, membership, cfg.days);
    std::size_t start = 0;
    for (const GroupByIndividual& gbi : out.gbis) {
        const LabeledGraph within = sri_from_gbi(gbi);
        for (std::size_t a = 0; a < gbi.individuals(); ++a)
            for (std::size_t b = 0; b < gbi.individuals(); ++b) assoc.w(start + a, start + b) = within.w(a, b);
        start += gbi.individuals();
    }
    for (const Individual& ind : out.individuals) {
        assoc.ids.push_back(ind.id);
        assoc.attrs["group"].push_back(std::to_string(ind.group));
        assoc.attrs["sex"].push_back(ind.sex);
        assoc.attrs["age"].push_back(ind.age);
        assoc.attrs["nose"].push_back(ind.nose);
        assoc.attrs["clan"].push_back(ind.clan);
    }

    out.group_network = collapse_group_network(assoc, membership, n_groups);
    out.group_network.clans = out.clans;
    out.group_network.centers = out.centers;
    return out;
}

InteractionConfig InteractionConfig::dominance() {
    InteractionConfig cfg;
    cfg.kind = InteractionKind::dominance;
    cfg.effect_by_age = {{"AD", 1.0}, {"SUB", 0.0}, {"JUV", -1.0}};
    cfg.effect_male = -0.5;
    cfg.residual_sd = 0.2;
    cfg.nose_match_bonus = 0.0;
    cfg.mean_rate = 2.0;
    return cfg;
}

InteractionConfig InteractionConfig::affiliation() {
    InteractionConfig cfg;
    cfg.kind = InteractionKind::affiliation;
    cfg.effect_by_age = {{"AD", -1.0}, {"SUB", -1.0}, {"JUV", 1.0}};
    cfg.effect_male = 0.0;
    cfg.residual_sd = 0.2;
    cfg.nose_match_bonus = 1.0;
    cfg.mean_rate = 0.5;
    return cfg;
}

void validate(const InteractionConfig& cfg) {
    if (!(cfg.residual_sd >= 0.0)) throw ConfigError("residual_sd must be nonnegative");
    if (!(cfg.mean_rate >= 0.0) || !std::isfinite(cfg.mean_rate))
        throw ConfigError("mean_rate must be finite and nonnegative");
}

InteractionEvents simulate_interactions(const GroupByIndividual& gbi, const AttributeTable& attrs,
                                        const InteractionConfig& cfg, Rng& rng) {
    validate(cfg);
    const std::size_t n = gbi.individuals();
    auto column = [&](const char* name) -> const std::vector<std::string>& {
        const auto it = attrs.find(name);
        if (it == attrs.end() || it->second.size() != n)
            throw DataError(std::string("interaction simulation needs a '") + name +
                            "' value for every individual");
        return it->second;
    };
    const auto& sex = column("sex");
    const auto& age = column("age");
    const auto& nose = column("nose");

    std::vector<double> score(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto it = cfg.effect_by_age.find(age[i]);
        const double mean = (it == cfg.effect_by_age.end() ? 0.0 : it->second) +
                            (sex[i] == "M" ? cfg.effect_male : 0.0);
        score[i] = normal(rng, mean, cfg.residual_sd);
    }

    InteractionEvents out;
    for (std::size_t e = 0; e < gbi.events(); ++e) {
        const std::vector<std::size_t> members = gbi.members(e);
        if (members.size() < 2) continue;
        const auto total = static_cast<std::size_t>(poisson(rng, cfg.mean_rate)) * members.size();
        for (std::size_t t = 0; t < total; ++t) {
            const std::size_t p = uniform_index(rng, members.size());
            std::size_t q = uniform_index(rng, members.size() - 1);
            if (q >= p) ++q;
            const std::size_t i1 = members[p];
            const std::size_t i2 = members[q];
            const double bonus = nose[i1] == nose[i2] ? cfg.nose_match_bonus : 0.0;
            const bool first_acts = bernoulli(rng, logistic(score[i1] - score[i2] + bonus));
            Interaction rec;
            rec.day = gbi.day.empty() ? 0 : gbi.day[e];
            rec.event = e;
            rec.actor = first_acts ? i1 : i2;
            rec.recipient = first_acts ? i2 : i1;
            rec.kind = cfg.kind;
            out.records.push_back(rec);
        }
    }
    return out;
}

const char* to_string(AbmMode mode) noexcept {
    switch (mode) {
        case AbmMode::individual_spatial: return "individual_spatial";
        case AbmMode::subgroup_spatial: return "subgroup_spatial";
        case AbmMode::social_clan: return "social_clan";
    }
    return "unknown";
}

AbmMode abm_mode_from_string(const std::string& s) {
    for (AbmMode m : {AbmMode::individual_spatial, AbmMode::subgroup_spatial, AbmMode::social_clan})
        if (s == to_string(m)) return m;
    throw ConfigError("unknown agent-based mode '" + s + "'");
}

AbmLayout layout_of(const SocietyData& data) {
    AbmLayout out;
    out.centers = data.centers;
    out.clans = data.clans;
    for (const GroupByIndividual& gbi : data.gbis) out.group_sizes.push_back(gbi.individuals());
    return out;
}

GroupNetwork abm_reference(const AbmLayout& layout, AbmMode mode, const AbmParams& params, Rng& rng) {
    const std::size_t n_groups = layout.centers.size();
    if (n_groups == 0 || layout.clans.size() != n_groups || layout.group_sizes.size() != n_groups)
        throw DataError("layout needs a centre, clan and size for every group");
    if (params.days < 1) throw ConfigError("days must be at least 1");
    if (!(params.loc_sd >= 0.0)) throw ConfigError("loc_sd must be nonnegative");

    std::vector<std::size_t> membership;
    for (std::size_t g = 0; g < n_groups; ++g) membership.insert(membership.end(), layout.group_sizes[g], g);

    if (mode == AbmMode::individual_spatial) {
        const auto steps = static_cast<std::size_t>(params.days);
        std::vector<Point> tracks(membership.size() * steps);
        for (std::size_t i = 0; i < membership.size(); ++i) {
            const Point c = layout.centers[membership[i]];
            for (std::size_t t = 0; t < steps; ++t) {
                Point& p = tracks[i * steps + t];
                p.x = c.x + rounded_offset(rng, params.loc_sd);
                p.y = c.y + rounded_offset(rng, params.loc_sd);
            }
        }
        return collapse(kernels::omp::colocation(tracks, steps), membership, layout);
    }

    SocietyConfig cfg = params.society;
    cfg.days = params.days;
    cfg.loc_sd = params.loc_sd;
    validate(cfg);
    const std::uint64_t base = rng();
    std::vector<GroupByIndividual> gbis(n_groups);
    const auto count = static_cast<std::ptrdiff_t>(n_groups);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t g = 0; g < count; ++g) {
        const auto gi = static_cast<std::size_t>(g);
        Rng stream = make_stream(base, gi);
        gbis[gi] = draw_group(layout.group_sizes[gi], layout.centers[gi], cfg, cfg.loc_sd, stream).gbi;
    }
    const bool clan_gated = mode == AbmMode::social_clan;
    const RealMatrix counts =
        between_group_counts(gbis, layout.clans, clan_gated ? cfg.p_within_clan : 1.0,
                             clan_gated ? cfg.p_between_clan : 1.0, cfg.days, rng);
    return collapse(cross_group_index(counts, membership, cfg.days), membership, layout);
}

}  // namespace refnet
