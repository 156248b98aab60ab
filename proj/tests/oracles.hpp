// Test-side brute-force oracles. These re-derive expected values straight
// from the definitions, independently of the library's implementation paths.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "equilib/abstract_convex.hpp"
#include "equilib/finite_topology.hpp"
#include "equilib/game_model.hpp"
#include "equilib/rational.hpp"
#include "equilib/sets.hpp"

namespace oracle {

using equilib::Mask;

// Smallest closed superset: scan every subset of the universe, keep those
// that are closed (complement open) and contain s, intersect them.
inline Mask closure(const equilib::FiniteTopology& t, Mask s) {
    Mask out = t.universe();
    for (Mask c = 0;; ++c) {
        if (t.is_open(t.universe() & ~c) && equilib::subset_of(s, c)) out &= c;
        if (c == t.universe()) break;
    }
    return out;
}

// Largest open subset by full scan.
inline Mask interior(const equilib::FiniteTopology& t, Mask s) {
    Mask out = 0;
    for (Mask o = 0;; ++o) {
        if (t.is_open(o) && equilib::subset_of(o, s)) out |= o;
        if (o == t.universe()) break;
    }
    return out;
}

// Gamma hull by scanning every nonempty seed subset.
inline Mask gamma_hull(const equilib::AbstractConvexSpace& space, Mask dprime) {
    Mask out = 0;
    for (Mask a = 1; a < (Mask{1} << space.seeds().size()); ++a)
        if (equilib::subset_of(a, dprime)) out |= space.gamma_table()[a];
    return out;
}

struct KkmOracleResult {
    bool holds = true;
    std::vector<Mask> counterexample_values;
    Mask counterexample_family = 0;
};

// Full enumeration of every closed- (or open-) valued correspondence from
// the whole value pool, KKM test straight from the definition, and the
// finite intersection property over every nonempty subfamily. Assignments
// advance last-seed-fastest, i.e. lexicographically.
inline KkmOracleResult kkm_principle(const equilib::AbstractConvexSpace& space,
                                     const equilib::FiniteTopology& t, bool closed_mode) {
    std::vector<Mask> pool;
    for (Mask o : t.opens()) pool.push_back(closed_mode ? (t.universe() & ~o) : o);
    std::sort(pool.begin(), pool.end());
    const int d = space.seeds().size();
    std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
    while (true) {
        std::vector<Mask> values(static_cast<std::size_t>(d));
        for (int z = 0; z < d; ++z) values[static_cast<std::size_t>(z)] = pool[pick[z]];
        bool kkm = true;
        for (Mask a = 1; kkm && a < (Mask{1} << d); ++a) {
            Mask un = 0;
            for (int z : equilib::mask_bits(a)) un |= values[static_cast<std::size_t>(z)];
            kkm = equilib::subset_of(space.gamma_table()[a], un);
        }
        if (kkm) {
            for (Mask a = 1; a < (Mask{1} << d); ++a) {
                Mask inter = t.universe();
                for (int z : equilib::mask_bits(a)) inter &= values[static_cast<std::size_t>(z)];
                if (inter == 0) return {false, values, a};
            }
        }
        int i = d - 1;
        while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == pool.size()) {
            pick[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return {};
}

inline equilib::Rational dot(const std::vector<equilib::Rational>& a,
                             const std::vector<equilib::Rational>& b) {
    equilib::Rational out(0);
    for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
    return out;
}

// Weighted-Nash test straight from the scalarized inequalities, with its own
// deviation loop and inner product.
inline bool weighted_nash(const equilib::MultiobjectiveGame& game,
                          const equilib::WeightVector& w, const equilib::StrategyProfile& x) {
    for (int i = 0; i < game.player_count(); ++i) {
        const auto lhs = dot(w.weights_for(i), game.payoff(i, x));
        for (int s = 0; s < game.player(i).strategies.size(); ++s) {
            auto y = x;
            y.choices[static_cast<std::size_t>(i)] = s;
            if (!(lhs <= dot(w.weights_for(i), game.payoff(i, y)))) return false;
        }
    }
    return true;
}

// Pareto-efficiency test straight from the orthant definition.
inline bool pareto_equilibrium(const equilib::MultiobjectiveGame& game,
                               const equilib::StrategyProfile& x, bool weak) {
    for (int i = 0; i < game.player_count(); ++i) {
        const auto& at_x = game.payoff(i, x);
        for (int s = 0; s < game.player(i).strategies.size(); ++s) {
            auto y = x;
            y.choices[static_cast<std::size_t>(i)] = s;
            const auto& at_y = game.payoff(i, y);
            bool all_nonneg = true;
            bool all_pos = true;
            bool some_pos = false;
            for (std::size_t j = 0; j < at_x.size(); ++j) {
                const auto d = at_x[j] - at_y[j];
                if (d.sign() < 0) all_nonneg = false;
                if (d.sign() <= 0) all_pos = false;
                if (d.sign() > 0) some_pos = true;
            }
            const bool dominates = weak ? all_pos : (all_nonneg && some_pos);
            if (dominates) return false;
        }
    }
    return true;
}

} // namespace oracle
