#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "equilib/equilibrium.hpp"
#include "equilib/finite_topology.hpp"
#include "equilib/game_model.hpp"
#include "equilib/minimax.hpp"
#include "equilib/random.hpp"

namespace equilib {

using json = nlohmann::json;

/// Rational literals in files: integers, decimal strings, or "p/q" strings.
/// Non-integer JSON numbers are rejected; no value ever passes through a
/// double.
Rational rational_from_json(const json& j, const std::string& where);
ExtRational ext_rational_from_json(const json& j, const std::string& where);
json rational_to_json(const Rational& r);
json ext_rational_to_json(const ExtRational& v);

FiniteTopology load_topology(const std::filesystem::path& file);
json topology_to_json(const FiniteTopology& topology);

AbstractConvexSpace load_space(const std::filesystem::path& file);
json space_to_json(const AbstractConvexSpace& space);

MultiobjectiveGame load_game(const std::filesystem::path& file);
json game_to_json(const MultiobjectiveGame& game);

WeightVector load_weights(const std::filesystem::path& file, const MultiobjectiveGame& game);
json weights_to_json(const MultiobjectiveGame& game, const WeightVector& w);

StrategyProfile load_profile(const std::filesystem::path& file, const MultiobjectiveGame& game);

MinimaxInstance load_instance(const std::filesystem::path& file);

json certificate_to_json(const MultiobjectiveGame& game, const EquilibriumCertificate& cert);
json hypothesis_report_to_json(const HypothesisReport& report, const Labels& points);
json kkm_verdict_to_json(const KkmVerdict& verdict, const AbstractConvexSpace& space);
json infsup_to_json(const InfsupCertificate& cert, const Labels& points);

struct CorpusBounds {
    int max_players = 3;
    int max_strategies = 4;
    int max_criteria = 3;
    int payoff_bound = 5;
};

/// Reproducible random game with small integer payoffs.
MultiobjectiveGame random_game(RandomSource& rng, const CorpusBounds& bounds);

/// Named game documents; identical seeds give byte-identical output.
std::vector<std::pair<std::string, json>> generate_corpus(std::uint64_t seed, int count,
                                                          const CorpusBounds& bounds);

} // namespace equilib
