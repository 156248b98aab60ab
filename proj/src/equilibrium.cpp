#include "equilib/equilibrium.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace equilib {

std::string to_string(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::weighted_nash: return "weighted_nash";
        case CertificateKind::weak_pareto: return "weak_pareto";
        default: return "pareto";
    }
}

namespace {

Rational dot(const std::vector<Rational>& w, const std::vector<Rational>& v) {
    if (w.size() != v.size()) throw InputError("weight/payoff dimension mismatch");
    Rational sum(0);
    for (std::size_t j = 0; j < w.size(); ++j) sum += w[j] * v[j];
    return sum;
}

std::vector<Rational> minus(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.size() != b.size()) throw InputError("payoff dimension mismatch");
    std::vector<Rational> out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
    return out;
}

} // namespace

Rational aggregate_f(const MultiobjectiveGame& game, const WeightVector& w,
                     const StrategyProfile& x, const StrategyProfile& y) {
    w.validate_for(game);
    game.validate_profile(x);
    game.validate_profile(y);
    Rational sum(0);
    for (int i = 0; i < game.player_count(); ++i) {
        const auto& at_x = game.payoff(i, x);
        const auto& at_dev = game.payoff(i, deviate(x, i, y.choices[static_cast<std::size_t>(i)]));
        sum += dot(w.weights_for(i), at_x) - dot(w.weights_for(i), at_dev);
    }
    return sum;
}

NashCheck is_weighted_nash(const MultiobjectiveGame& game, const WeightVector& w,
                           const StrategyProfile& x_hat) {
    w.validate_for(game);
    game.validate_profile(x_hat);
    NashCheck check;
    bool first = true;
    for (int i = 0; i < game.player_count(); ++i) {
        const Rational at_hat = dot(w.weights_for(i), game.payoff(i, x_hat));
        for (int s = 0; s < game.player(i).strategies.size(); ++s) {
            const Rational at_dev = dot(w.weights_for(i), game.payoff(i, deviate(x_hat, i, s)));
            const Rational regret = at_hat - at_dev;
            if (first || regret > check.evidence.max_regret) {
                check.evidence = NashEvidence{regret, i, s};
                first = false;
            }
        }
    }
    check.holds = check.evidence.max_regret <= Rational(0);
    return check;
}

EfficiencyCheck is_pareto_efficient_strategy(const MultiobjectiveGame& game,
                                             const StrategyProfile& x_hat, int player,
                                             bool weak) {
    game.validate_profile(x_hat);
    if (player < 0 || player >= game.player_count())
        throw InputError("player index out of range");
    const auto& at_hat = game.payoff(player, x_hat);
    for (int s = 0; s < game.player(player).strategies.size(); ++s) {
        const auto diff = minus(at_hat, game.payoff(player, deviate(x_hat, player, s)));
        if (in_orthant(diff, /*strict=*/weak)) return {false, s};
    }
    return {true, std::nullopt};
}

ParetoCheck is_pareto_equilibrium(const MultiobjectiveGame& game, const StrategyProfile& x_hat,
                                  bool weak) {
    for (int i = 0; i < game.player_count(); ++i) {
        const auto check = is_pareto_efficient_strategy(game, x_hat, i, weak);
        if (!check.efficient) return {false, std::make_pair(i, *check.dominating)};
    }
    return {true, std::nullopt};
}

namespace {

void require_within_cap(const MultiobjectiveGame& game, std::uint64_t cap) {
    if (game.profile_count() > cap)
        throw CapError("profile enumeration exceeds the cap of " + std::to_string(cap));
}

std::uint64_t deviation_count(const MultiobjectiveGame& game) {
    std::uint64_t total = 0;
    for (int i = 0; i < game.player_count(); ++i)
        total += static_cast<std::uint64_t>(game.player(i).strategies.size());
    return total;
}

} // namespace

std::vector<EquilibriumCertificate> enumerate_weighted_nash(const MultiobjectiveGame& game,
                                                            const WeightVector& w,
                                                            std::uint64_t cap) {
    w.validate_for(game);
    require_within_cap(game, cap);
    std::vector<EquilibriumCertificate> out;
    for (std::uint64_t idx = 0; idx < game.profile_count(); ++idx) {
        StrategyProfile x = game.profile_at(idx);
        const auto check = is_weighted_nash(game, w, x);
        if (!check.holds) continue;
        EquilibriumCertificate cert;
        cert.profile = std::move(x);
        cert.kind = CertificateKind::weighted_nash;
        cert.weights = w;
        cert.nash_evidence = check.evidence;
        cert.reverified = true;
        out.push_back(std::move(cert));
    }
    return out;
}

std::vector<EquilibriumCertificate> enumerate_pareto(const MultiobjectiveGame& game, bool weak,
                                                     std::uint64_t cap) {
    require_within_cap(game, cap);
    std::vector<EquilibriumCertificate> out;
    for (std::uint64_t idx = 0; idx < game.profile_count(); ++idx) {
        StrategyProfile x = game.profile_at(idx);
        if (!is_pareto_equilibrium(game, x, weak).holds) continue;
        EquilibriumCertificate cert;
        cert.profile = std::move(x);
        cert.kind = weak ? CertificateKind::weak_pareto : CertificateKind::pareto;
        cert.pareto_evidence = ParetoEvidence{weak, deviation_count(game)};
        cert.reverified = true;
        out.push_back(std::move(cert));
    }
    return out;
}

namespace {

std::string theorem2_failure(const HypothesisReport& report) {
    if (!report.cond_ii)
        return "condition (i) fails: the aggregate level correspondence is neither "
               "intersectionally nor transfer closed-valued";
    if (!report.cond_i)
        return "condition (ii) fails: g(x,x) > 0 somewhere on the diagonal";
    if (!report.cond_iii)
        return "condition (ii) fails: the hull of a strict upper set of the aggregate "
               "escapes the strict upper set of g";
    if (!report.cond_iv) return "condition (iii) fails: the coercivity witness does not hold";
    if (!report.kkm_checked)
        return "partial KKM principle could not be verified under the enumeration cap";
    return "partial KKM principle fails on the product space";
}

} // namespace

CertifyResult certify_via_minimax(const MultiobjectiveGame& game, const WeightVector& w,
                                  const GSpec& g, std::optional<CoercivityWitness> witness,
                                  std::uint64_t kkm_cap) {
    w.validate_for(game);
    if (!game.has_full_convexity())
        throw InputError("certification needs a convex structure for every player");
    for (int i = 0; i < game.player_count(); ++i)
        if (!game.convexity(i)->seeds().same_names(game.player(i).strategies))
            throw InputError("certification requires D_i = X_i: player '" + game.player(i).id +
                             "' has a seed set different from its strategy set");

    CertifyResult result;
    AbstractConvexSpace product = product_strategy_space(game);
    FiniteTopology topology = FiniteTopology::discrete(product.points());

    KkmVerdict kkm = check_kkm_principle(product, topology, ValueMode::closed, kkm_cap);
    result.kkm = kkm;
    if (!kkm.holds) {
        result.failure = "partial KKM principle fails on the product space";
        return result;
    }

    const int n = static_cast<int>(game.profile_count());
    std::vector<std::vector<ExtRational>> f(static_cast<std::size_t>(n),
                                            std::vector<ExtRational>(static_cast<std::size_t>(n)));
    for (int xi = 0; xi < n; ++xi) {
        const StrategyProfile x = game.profile_at(static_cast<std::uint64_t>(xi));
        for (int yi = 0; yi < n; ++yi)
            f[static_cast<std::size_t>(xi)][static_cast<std::size_t>(yi)] = ExtRational(
                aggregate_f(game, w, x, game.profile_at(static_cast<std::uint64_t>(yi))));
    }

    std::vector<std::vector<ExtRational>> g_matrix;
    switch (g.kind) {
        case GSpec::Kind::same_as_f: g_matrix = f; break;
        case GSpec::Kind::zero:
            g_matrix.assign(static_cast<std::size_t>(n),
                            std::vector<ExtRational>(static_cast<std::size_t>(n),
                                                     ExtRational(Rational(0))));
            break;
        case GSpec::Kind::matrix:
            g_matrix = g.values;
            if (g_matrix.size() != static_cast<std::size_t>(n))
                throw InputError("g matrix must be dense over profiles x profiles");
            for (const auto& row : g_matrix)
                if (row.size() != static_cast<std::size_t>(n))
                    throw InputError("g matrix has a short row");
            break;
    }

    MinimaxInstance inst{std::move(product), std::move(topology), std::move(f),
                         std::move(g_matrix), ExtRational(Rational(0)), std::move(witness)};
    HypothesisReport report = check_hypotheses(inst, kkm_cap, &kkm);
    result.hypotheses = report;
    if (!report.verified()) {
        result.failure = theorem2_failure(report);
        return result;
    }

    MinimaxPointResult point = find_minimax_point(inst, report);
    if (!point.point) {
        result.failure = "no minimax point despite verified hypotheses (implementation bug)";
        return result;
    }

    StrategyProfile x_hat = game.profile_at(static_cast<std::uint64_t>(*point.point));
    const auto nash = is_weighted_nash(game, w, x_hat);
    if (!nash.holds) {
        result.failure = "certified profile failed weighted-Nash re-verification "
                         "(implementation bug)";
        return result;
    }

    EquilibriumCertificate cert;
    cert.profile = std::move(x_hat);
    cert.kind = CertificateKind::weighted_nash;
    cert.weights = w;
    cert.nash_evidence = nash.evidence;
    cert.reverified = true;
    result.certificate = std::move(cert);
    result.success = true;
    return result;
}

CertifyResult pareto_via_weights(const MultiobjectiveGame& game, const WeightVector& w,
                                 const GSpec& g, std::optional<CoercivityWitness> witness,
                                 std::uint64_t kkm_cap) {
    CertifyResult result = certify_via_minimax(game, w, g, std::move(witness), kkm_cap);
    if (!result.success) return result;

    auto& cert = *result.certificate;
    const bool strict = w.strictly_positive();
    cert.kind = strict ? CertificateKind::pareto : CertificateKind::weak_pareto;
    const auto check = is_pareto_equilibrium(game, cert.profile, /*weak=*/!strict);
    if (!check.holds)
        throw std::logic_error("weighted Nash equilibrium failed its scalarization "
                               "classification; this contradicts the Pareto lemma");
    cert.pareto_evidence = ParetoEvidence{!strict, deviation_count(game)};
    cert.reverified = true;
    return result;
}

WeightVector normalize_weights(const WeightVector& w) {
    std::vector<std::vector<Rational>> out = w.all();
    for (auto& weights : out) {
        Rational sum(0);
        for (const auto& c : weights) sum += c;
        for (auto& c : weights) c /= sum;
    }
    return WeightVector(std::move(out));
}

namespace {

// Compositions of r into k nonnegative parts, ascending in the first part.
void compositions(int k, int r, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
    if (k == 1) {
        current.push_back(r);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int c = 0; c <= r; ++c) {
        current.push_back(c);
        compositions(k - 1, r - c, current, out);
        current.pop_back();
    }
}

std::vector<std::vector<Rational>> weight_grid(int criteria, int resolution) {
    if (criteria == 1) return {{Rational(1)}};
    std::vector<std::vector<int>> parts;
    std::vector<int> scratch;
    compositions(criteria, resolution, scratch, parts);
    std::vector<std::vector<Rational>> grid;
    grid.reserve(parts.size());
    for (const auto& p : parts) {
        std::vector<Rational> weights;
        weights.reserve(p.size());
        for (int c : p) weights.emplace_back(Rational(c, resolution));
        grid.push_back(std::move(weights));
    }
    return grid;
}

} // namespace

SweepResult weight_sweep(const MultiobjectiveGame& game, int resolution,
                         std::uint64_t profile_cap, std::uint64_t sweep_cap) {
    if (resolution < 1) throw InputError("sweep resolution must be at least 1");
    require_within_cap(game, profile_cap);

    std::vector<std::vector<std::vector<Rational>>> grids;
    std::uint64_t combinations = 1;
    for (int i = 0; i < game.player_count(); ++i) {
        grids.push_back(weight_grid(game.player(i).criteria, resolution));
        combinations *= grids.back().size();
        if (combinations > sweep_cap / std::max<std::uint64_t>(game.profile_count(), 1))
            throw CapError("weight sweep exceeds the cap of " + std::to_string(sweep_cap));
    }

    SweepResult result;
    result.weight_combination_count = combinations;
    std::set<StrategyProfile> seen;

    std::vector<std::size_t> pick(static_cast<std::size_t>(game.player_count()), 0);
    while (true) {
        std::vector<std::vector<Rational>> per_player;
        per_player.reserve(pick.size());
        for (std::size_t i = 0; i < pick.size(); ++i) per_player.push_back(grids[i][pick[i]]);
        WeightVector w(std::move(per_player));

        SweepEntry entry{w, enumerate_weighted_nash(game, w, profile_cap)};
        const bool strict = w.strictly_positive();
        for (auto& cert : entry.certificates) {
            cert.kind = strict ? CertificateKind::pareto : CertificateKind::weak_pareto;
            if (!is_pareto_equilibrium(game, cert.profile, /*weak=*/!strict).holds)
                throw std::logic_error("sweep hit failed its scalarization classification; "
                                       "this contradicts the Pareto lemma");
            cert.pareto_evidence = ParetoEvidence{!strict, deviation_count(game)};
            seen.insert(cert.profile);
        }
        result.entries.push_back(std::move(entry));

        int i = game.player_count() - 1;
        while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == grids[static_cast<std::size_t>(i)].size()) {
            pick[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }

    result.distinct_profiles.assign(seen.begin(), seen.end());
    return result;
}

} // namespace equilib
