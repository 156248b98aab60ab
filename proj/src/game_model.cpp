#include "equilib/game_model.hpp"

namespace equilib {

MultiobjectiveGame::MultiobjectiveGame(
    std::vector<PlayerDef> players, std::vector<std::vector<std::vector<Rational>>> payoffs,
    std::vector<std::optional<AbstractConvexSpace>> convexity)
    : players_(std::move(players)), payoffs_(std::move(payoffs)), convexity_(std::move(convexity)) {
    if (players_.empty()) throw InputError("game needs at least one player");
    for (const auto& p : players_) {
        if (p.strategies.empty())
            throw InputError("player '" + p.id + "' has an empty strategy set");
        if (p.criteria < 1)
            throw InputError("player '" + p.id + "' needs at least one criterion");
    }
    for (std::size_t i = 1; i < players_.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (players_[i].id == players_[j].id)
                throw InputError("duplicate player id '" + players_[i].id + "'");

    strides_.assign(players_.size(), 1);
    for (int i = player_count() - 2; i >= 0; --i)
        strides_[static_cast<std::size_t>(i)] =
            strides_[static_cast<std::size_t>(i + 1)] *
            static_cast<std::uint64_t>(players_[static_cast<std::size_t>(i + 1)].strategies.size());
    profile_count_ = strides_[0] * static_cast<std::uint64_t>(players_[0].strategies.size());

    if (payoffs_.size() != players_.size())
        throw InputError("payoff tensors must cover every player");
    for (std::size_t i = 0; i < players_.size(); ++i) {
        if (payoffs_[i].size() != profile_count_)
            throw InputError("payoff tensor for player '" + players_[i].id + "' has " +
                             std::to_string(payoffs_[i].size()) + " entries, expected " +
                             std::to_string(profile_count_));
        for (const auto& v : payoffs_[i])
            if (v.size() != static_cast<std::size_t>(players_[i].criteria))
                throw InputError("payoff vector for player '" + players_[i].id +
                                 "' has wrong length");
    }

    if (convexity_.empty()) convexity_.assign(players_.size(), std::nullopt);
    if (convexity_.size() != players_.size())
        throw InputError("convexity table must cover every player");
    for (std::size_t i = 0; i < players_.size(); ++i) {
        if (!convexity_[i]) continue;
        if (!convexity_[i]->points().same_names(players_[i].strategies))
            throw InputError("convex structure for player '" + players_[i].id +
                             "' must use that player's strategies as points (same order)");
    }
}

int MultiobjectiveGame::player_index(const std::string& id) const {
    for (int i = 0; i < player_count(); ++i)
        if (players_[static_cast<std::size_t>(i)].id == id) return i;
    throw InputError("unknown player id '" + id + "'");
}

bool MultiobjectiveGame::has_full_convexity() const {
    for (const auto& c : convexity_)
        if (!c) return false;
    return true;
}

void MultiobjectiveGame::validate_profile(const StrategyProfile& x) const {
    if (x.choices.size() != players_.size())
        throw InputError("profile has a choice count different from the player count");
    for (std::size_t i = 0; i < players_.size(); ++i)
        if (x.choices[i] < 0 || x.choices[i] >= players_[i].strategies.size())
            throw InputError("profile strategy index out of range for player '" +
                             players_[i].id + "'");
}

std::uint64_t MultiobjectiveGame::index_of(const StrategyProfile& x) const {
    validate_profile(x);
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < players_.size(); ++i)
        idx += static_cast<std::uint64_t>(x.choices[i]) * strides_[i];
    return idx;
}

StrategyProfile MultiobjectiveGame::profile_at(std::uint64_t index) const {
    if (index >= profile_count_) throw InputError("profile index out of range");
    StrategyProfile x;
    x.choices.resize(players_.size());
    for (std::size_t i = 0; i < players_.size(); ++i)
        x.choices[i] = static_cast<int>((index / strides_[i]) %
                                        static_cast<std::uint64_t>(players_[i].strategies.size()));
    return x;
}

StrategyProfile MultiobjectiveGame::profile_from_labels(
    const std::map<std::string, std::string>& choice) const {
    if (choice.size() != players_.size())
        throw InputError("profile must name a strategy for every player");
    StrategyProfile x;
    x.choices.resize(players_.size());
    for (const auto& [id, strategy] : choice) {
        const int i = player_index(id);
        x.choices[static_cast<std::size_t>(i)] =
            players_[static_cast<std::size_t>(i)].strategies.index_of(strategy);
    }
    return x;
}

std::map<std::string, std::string> MultiobjectiveGame::labels_of(const StrategyProfile& x) const {
    validate_profile(x);
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < players_.size(); ++i)
        out[players_[i].id] = players_[i].strategies.name(x.choices[i]);
    return out;
}

const std::vector<Rational>& MultiobjectiveGame::payoff(int i, const StrategyProfile& x) const {
    if (i < 0 || i >= player_count()) throw InputError("player index out of range");
    return payoffs_[static_cast<std::size_t>(i)][index_of(x)];
}

StrategyProfile deviate(const StrategyProfile& x, int player, int strategy) {
    if (player < 0 || static_cast<std::size_t>(player) >= x.choices.size())
        throw InputError("deviation names a player outside the profile");
    StrategyProfile out = x;
    out.choices[static_cast<std::size_t>(player)] = strategy;
    return out;
}

StrategyProfile deviate(const MultiobjectiveGame& game, const StrategyProfile& x, int player,
                        const std::string& strategy) {
    game.validate_profile(x);
    if (player < 0 || player >= game.player_count())
        throw InputError("deviation names an unknown player");
    return deviate(x, player, game.player(player).strategies.index_of(strategy));
}

bool in_orthant(std::span<const Rational> v, bool strict) {
    if (v.empty()) throw InputError("orthant test on an empty vector");
    if (strict) {
        for (const auto& c : v)
            if (c.sign() <= 0) return false;
        return true;
    }
    bool nonzero = false;
    for (const auto& c : v) {
        if (c.sign() < 0) return false;
        if (c.sign() > 0) nonzero = true;
    }
    return nonzero;
}

WeightVector::WeightVector(std::vector<std::vector<Rational>> per_player)
    : per_player_(std::move(per_player)) {
    if (per_player_.empty()) throw InputError("weight vector needs at least one player");
    for (const auto& w : per_player_) {
        if (w.empty()) throw InputError("weight vector has an empty per-player entry");
        bool nonzero = false;
        for (const auto& c : w) {
            if (c.sign() < 0) throw InputError("weights must be nonnegative");
            if (c.sign() > 0) nonzero = true;
        }
        if (!nonzero) throw InputError("per-player weights must not all be zero");
    }
}

bool WeightVector::normalized() const {
    for (const auto& w : per_player_) {
        Rational sum(0);
        for (const auto& c : w) sum += c;
        if (!(sum == Rational(1))) return false;
    }
    return true;
}

bool WeightVector::strictly_positive() const {
    for (const auto& w : per_player_)
        for (const auto& c : w)
            if (c.sign() <= 0) return false;
    return true;
}

void WeightVector::validate_for(const MultiobjectiveGame& game) const {
    if (player_count() != game.player_count())
        throw InputError("weight vector player count differs from the game");
    for (int i = 0; i < player_count(); ++i)
        if (per_player_[static_cast<std::size_t>(i)].size() !=
            static_cast<std::size_t>(game.player(i).criteria))
            throw InputError("weight vector for player '" + game.player(i).id +
                             "' has wrong length");
}

AbstractConvexSpace product_strategy_space(const MultiobjectiveGame& game) {
    std::vector<AbstractConvexSpace> factors;
    factors.reserve(static_cast<std::size_t>(game.player_count()));
    for (int i = 0; i < game.player_count(); ++i) {
        if (!game.convexity(i))
            throw InputError("player '" + game.player(i).id + "' has no convex structure");
        factors.push_back(*game.convexity(i));
    }
    return product_space(factors);
}

} // namespace equilib
