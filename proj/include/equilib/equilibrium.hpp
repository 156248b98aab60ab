#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equilib/game_model.hpp"
#include "equilib/minimax.hpp"
#include "equilib/rational.hpp"

namespace equilib {

constexpr std::uint64_t kDefaultProfileCap = std::uint64_t{1} << 20;
constexpr std::uint64_t kDefaultSweepCap = std::uint64_t{1} << 22;

enum class CertificateKind { weighted_nash, weak_pareto, pareto };

std::string to_string(CertificateKind kind);

/// Best deviation found while checking the weighted-Nash inequalities:
/// regret = W_i . T^i(x) - W_i . T^i(x with player i deviating).
struct NashEvidence {
    Rational max_regret;
    int player = 0;
    int deviation = 0;
};

struct ParetoEvidence {
    bool weak = false;
    std::uint64_t deviations_searched = 0;
};

struct EquilibriumCertificate {
    StrategyProfile profile;
    CertificateKind kind = CertificateKind::weighted_nash;
    std::optional<WeightVector> weights;
    std::optional<NashEvidence> nash_evidence;
    std::optional<ParetoEvidence> pareto_evidence;
    bool reverified = false;
};

/// The scalarized aggregate sum over players of
/// W_i . (T^i(x) - T^i(x_{-i}, y_i)); only y's i-th coordinate enters the
/// i-th summand. Zero on the diagonal.
Rational aggregate_f(const MultiobjectiveGame& game, const WeightVector& w,
                     const StrategyProfile& x, const StrategyProfile& y);

struct NashCheck {
    bool holds = false;
    NashEvidence evidence; // maximizing (player, deviation) and its regret
};

/// Weighted-Nash test: every unilateral deviation keeps the deviator's
/// scalarized payoff at least as large.
NashCheck is_weighted_nash(const MultiobjectiveGame& game, const WeightVector& w,
                           const StrategyProfile& x_hat);

struct EfficiencyCheck {
    bool efficient = false;
    std::optional<int> dominating; // deviation strategy index when inefficient
};

/// No unilateral deviation of player i improves i's payoff vector in the
/// orthant sense: closed orthant minus origin for the strict notion
/// (weak=false), open orthant for the weak notion (weak=true).
EfficiencyCheck is_pareto_efficient_strategy(const MultiobjectiveGame& game,
                                             const StrategyProfile& x_hat, int player,
                                             bool weak);

struct ParetoCheck {
    bool holds = false;
    std::optional<std::pair<int, int>> violation; // (player, dominating deviation)
};

ParetoCheck is_pareto_equilibrium(const MultiobjectiveGame& game, const StrategyProfile& x_hat,
                                  bool weak);

std::vector<EquilibriumCertificate> enumerate_weighted_nash(
    const MultiobjectiveGame& game, const WeightVector& w,
    std::uint64_t cap = kDefaultProfileCap);

std::vector<EquilibriumCertificate> enumerate_pareto(const MultiobjectiveGame& game, bool weak,
                                                     std::uint64_t cap = kDefaultProfileCap);

/// The auxiliary function g used by the certification hypotheses: the
/// aggregate itself, identically zero, or a caller-supplied dense matrix over
/// profiles.
struct GSpec {
    enum class Kind { same_as_f, zero, matrix };
    Kind kind = Kind::same_as_f;
    std::vector<std::vector<ExtRational>> values;

    static GSpec same_as_f() { return {Kind::same_as_f, {}}; }
    static GSpec zero() { return {Kind::zero, {}}; }
    static GSpec from_matrix(std::vector<std::vector<ExtRational>> m) {
        return {Kind::matrix, std::move(m)};
    }
};

struct CertifyResult {
    bool success = false;
    std::optional<EquilibriumCertificate> certificate;
    std::optional<HypothesisReport> hypotheses;
    std::optional<KkmVerdict> kkm;
    std::string failure; // names the failing condition when success is false
};

/// Existence-theorem pipeline: builds the product convex structure, verifies
/// the partial KKM principle on it, packages the scalarized aggregate as a
/// minimax instance at level 0, checks the hypotheses, extracts a minimax
/// point, and re-verifies it as a weighted Nash equilibrium.
CertifyResult certify_via_minimax(const MultiobjectiveGame& game, const WeightVector& w,
                                  const GSpec& g, std::optional<CoercivityWitness> witness,
                                  std::uint64_t kkm_cap = kDefaultKkmCap);

/// certify_via_minimax followed by the scalarization classification: strictly
/// positive weights give a Pareto equilibrium, any valid weights a weak one.
/// The claimed kind is re-verified against the direct definition.
CertifyResult pareto_via_weights(const MultiobjectiveGame& game, const WeightVector& w,
                                 const GSpec& g, std::optional<CoercivityWitness> witness,
                                 std::uint64_t kkm_cap = kDefaultKkmCap);

/// Divides each player's weights by their sum; never changes the
/// weighted-Nash predicate.
WeightVector normalize_weights(const WeightVector& w);

struct SweepEntry {
    WeightVector weights;
    std::vector<EquilibriumCertificate> certificates;
};

struct SweepResult {
    std::vector<SweepEntry> entries;                  // weights in grid order
    std::vector<StrategyProfile> distinct_profiles;   // deduplicated hits
    std::uint64_t weight_combination_count = 0;
};

/// Enumerates the normalized weight grid with per-player components in
/// {0, 1/r, ..., 1} summing to 1, runs the weighted-Nash enumeration at every
/// grid point, and classifies hits. The output is a subset of the Pareto and
/// weak-Pareto sets, not necessarily all of either.
SweepResult weight_sweep(const MultiobjectiveGame& game, int resolution,
                         std::uint64_t profile_cap = kDefaultProfileCap,
                         std::uint64_t sweep_cap = kDefaultSweepCap);

} // namespace equilib
