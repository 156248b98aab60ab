#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "equilib/abstract_convex.hpp"
#include "equilib/rational.hpp"
#include "equilib/sets.hpp"

namespace equilib {

/// One strategy index per player, in player order.
struct StrategyProfile {
    std::vector<int> choices;

    friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
    friend auto operator<=>(const StrategyProfile&, const StrategyProfile&) = default;
};

struct PlayerDef {
    std::string id;
    Labels strategies;
    int criteria = 1;
};

/// Finite strategic game with vector payoffs. Each player carries a payoff
/// tensor mapping every strategy profile to a rational vector of length k_i
/// that the player tries to minimize. Payoff tensors are dense, row-major,
/// player 0's strategy index most significant.
class MultiobjectiveGame {
public:
    MultiobjectiveGame(std::vector<PlayerDef> players,
                       std::vector<std::vector<std::vector<Rational>>> payoffs,
                       std::vector<std::optional<AbstractConvexSpace>> convexity = {});

    int player_count() const { return static_cast<int>(players_.size()); }
    std::uint64_t profile_count() const { return profile_count_; }
    const PlayerDef& player(int i) const { return players_[static_cast<std::size_t>(i)]; }
    int player_index(const std::string& id) const;

    const std::optional<AbstractConvexSpace>& convexity(int i) const {
        return convexity_[static_cast<std::size_t>(i)];
    }
    bool has_full_convexity() const;

    std::uint64_t index_of(const StrategyProfile& x) const;
    StrategyProfile profile_at(std::uint64_t index) const;
    StrategyProfile profile_from_labels(const std::map<std::string, std::string>& choice) const;
    std::map<std::string, std::string> labels_of(const StrategyProfile& x) const;

    void validate_profile(const StrategyProfile& x) const;

    /// Exact tensor lookup of player i's payoff vector at profile x.
    const std::vector<Rational>& payoff(int i, const StrategyProfile& x) const;
    const std::vector<std::vector<Rational>>& payoff_tensor(int i) const {
        return payoffs_[static_cast<std::size_t>(i)];
    }

private:
    std::vector<PlayerDef> players_;
    std::vector<std::vector<std::vector<Rational>>> payoffs_; // [player][profile][criterion]
    std::vector<std::optional<AbstractConvexSpace>> convexity_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t profile_count_ = 1;
};

/// x with player i's coordinate replaced by strategy y_i.
StrategyProfile deviate(const StrategyProfile& x, int player, int strategy);
StrategyProfile deviate(const MultiobjectiveGame& game, const StrategyProfile& x, int player,
                        const std::string& strategy);

/// strict=false: membership in the nonnegative orthant minus the origin.
/// strict=true: membership in the open positive orthant.
bool in_orthant(std::span<const Rational> v, bool strict);

/// Per-player weight vectors, each nonzero with nonnegative entries.
class WeightVector {
public:
    explicit WeightVector(std::vector<std::vector<Rational>> per_player);

    int player_count() const { return static_cast<int>(per_player_.size()); }
    const std::vector<Rational>& weights_for(int player) const {
        return per_player_[static_cast<std::size_t>(player)];
    }
    const std::vector<std::vector<Rational>>& all() const { return per_player_; }

    bool normalized() const;       // every player's weights sum to 1
    bool strictly_positive() const; // every component positive

    void validate_for(const MultiobjectiveGame& game) const;

    friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
    std::vector<std::vector<Rational>> per_player_;
};

/// Product of the per-player convex structures; the product points are the
/// strategy profiles in profile-index order.
AbstractConvexSpace product_strategy_space(const MultiobjectiveGame& game);

} // namespace equilib
