#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "refnet/graph.hpp"
#include "refnet/random.hpp"

namespace refnet {

struct Categorical {
    std::vector<std::string> levels;
    std::vector<double> probs;

    std::string draw(Rng& rng) const;
};

struct SocietyConfig {
    // Groups sit at grid points whose coordinates are both multiples of
    // group_spacing.
    int grid_x_min = 3, grid_x_max = 18;
    int grid_y_min = 3, grid_y_max = 18;
    int group_spacing = 4;
    double mean_group_size = 20.0;
    std::vector<std::string> clan_labels{"A", "B", "C"};
    double p_within_clan = 1.0;
    double p_between_clan = 0.4;
    int days = 100;
    double mean_subgroups = 5.0;
    /// Preference of the first nose level for the first half of the day's
    /// subgroups (and of the other levels for the second half).
    double nose_assort = 0.15;
    Categorical sex{{"M", "F"}, {0.5, 0.5}};
    Categorical age{{"AD", "SUB", "JUV"}, {0.6, 0.2, 0.2}};
    Categorical nose{{"RED", "ORANGE"}, {0.7, 0.3}};
    double loc_sd = 2.0;

    static SocietyConfig defaults() { return {}; }
    /// Smaller 3..13 x 3..9 landscape with weaker nose assortment.
    static SocietyConfig second_population();
};

/// Throws ConfigError naming the first invalid field.
void validate(const SocietyConfig& cfg);

/// Grid points with both coordinates divisible by the spacing, x varying
/// fastest.
std::vector<Point> group_centers(const SocietyConfig& cfg);

struct Individual {
    std::string id;
    int group = 1;  // 1-based group label
    std::string sex, age, nose, clan;
};

struct SocietyData {
    SocietyConfig config;
    std::vector<std::string> clans;   // per group
    std::vector<Point> centers;       // per group
    std::vector<Individual> individuals;  // ordered by group
    /// One GBI per group with day and location per event; columns follow the
    /// group's slice of `individuals`.
    std::vector<GroupByIndividual> gbis;
    /// Population association network with attributes group/sex/age/nose/clan.
    LabeledGraph association;
    GroupNetwork group_network;

    /// 0-based group index of every individual.
    std::vector<std::size_t> membership() const;
    /// Attribute columns of one group's members, in GBI column order.
    AttributeTable group_attributes(std::size_t group_index) const;
};

SocietyData simulate_society(const SocietyConfig& cfg, Rng& rng);

/// Subgroup membership over `cfg.days` days for individuals with the given
/// nose values. Rows without members are dropped; `day` is 1-based.
GroupByIndividual simulate_group_gbi(std::span<const std::string> nose, const SocietyConfig& cfg,
                                     Rng& rng);

/// Gives every event a location `center + round(Normal(0, loc_sd))` per axis.
void locate_subgroups(GroupByIndividual& gbi, Point center, double loc_sd, Rng& rng);

/// Cross-group co-occurrence day counts over the population (group-major
/// individual order). For each day and group pair with at least one pair of
/// subgroups at the same location, one Bernoulli draw (p_within_clan for
/// equal clans, else p_between_clan) decides whether the meeting groups mix;
/// if so every dyad across each matched subgroup pair gains one count.
RealMatrix between_group_counts(std::span<const GroupByIndividual> gbis,
                                std::span<const std::string> clans, double p_within_clan,
                                double p_between_clan, int days, Rng& rng);

struct InteractionConfig {
    InteractionKind kind = InteractionKind::dominance;
    std::map<std::string, double> effect_by_age;
    double effect_male = 0.0;
    double residual_sd = 0.2;
    double nose_match_bonus = 0.0;
    double mean_rate = 2.0;

    static InteractionConfig dominance();
    static InteractionConfig affiliation();
};

void validate(const InteractionConfig& cfg);

/// Directed interactions inside each subgroup with two or more members.
/// `attrs` needs sex, age and nose columns aligned with the GBI columns.
InteractionEvents simulate_interactions(const GroupByIndividual& gbi, const AttributeTable& attrs,
                                        const InteractionConfig& cfg, Rng& rng);

enum class AbmMode { individual_spatial, subgroup_spatial, social_clan };

const char* to_string(AbmMode mode) noexcept;
AbmMode abm_mode_from_string(const std::string& s);

/// What an agent-based reference keeps from the observed society.
struct AbmLayout {
    std::vector<Point> centers;
    std::vector<std::string> clans;
    std::vector<std::size_t> group_sizes;
};

AbmLayout layout_of(const SocietyData& data);

struct AbmParams {
    double loc_sd = 2.0;
    int days = 100;
    /// Subgroup, attribute and clan rules for the subgroup-level modes.
    SocietyConfig society;
};

/// Between-group network of an agent-based reference:
/// individual_spatial places each individual independently around its
/// group centre every day and scores the fraction of days two individuals
/// share a location; subgroup_spatial resimulates subgroups that always mix
/// when they meet; social_clan gates mixing by clan as in the society model.
GroupNetwork abm_reference(const AbmLayout& layout, AbmMode mode, const AbmParams& params, Rng& rng);

}  // namespace refnet
