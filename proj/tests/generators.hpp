// Seeded random generators for the property suites.
#pragma once

#include <string>
#include <vector>

#include "equilib/abstract_convex.hpp"
#include "equilib/finite_topology.hpp"
#include "equilib/io.hpp"
#include "equilib/minimax.hpp"
#include "equilib/random.hpp"

namespace gen {

using equilib::Mask;

inline equilib::Labels letters(int n) {
    static const char* kNames[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.emplace_back(kNames[i]);
    return equilib::Labels(std::move(names));
}

// Random topology: a few random generators closed under union/intersection.
inline equilib::FiniteTopology random_topology(equilib::RandomSource& rng,
                                               equilib::Labels points) {
    const Mask all = points.universe();
    std::vector<Mask> family = {0, all};
    const int extra = rng.range(0, 3);
    for (int i = 0; i < extra; ++i) family.push_back(rng.next() & all);
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t size = family.size();
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = i + 1; j < size; ++j) {
                for (Mask candidate : {family[i] | family[j], family[i] & family[j]}) {
                    bool known = false;
                    for (Mask m : family) known = known || m == candidate;
                    if (!known) {
                        family.push_back(candidate);
                        grew = true;
                    }
                }
            }
    }
    return equilib::FiniteTopology(std::move(points), std::move(family));
}

inline equilib::SetCorrespondence random_correspondence(equilib::RandomSource& rng,
                                                        equilib::Labels domain, Mask universe) {
    equilib::SetCorrespondence f;
    f.values.assign(static_cast<std::size_t>(domain.size()), 0);
    for (auto& v : f.values) v = rng.next() & universe;
    f.domain = std::move(domain);
    return f;
}

enum class SpaceStyle { constant, anchored, full, identity, random };

inline SpaceStyle pick_style(equilib::RandomSource& rng) {
    const int roll = rng.range(0, 9);
    if (roll < 2) return SpaceStyle::constant;
    if (roll < 5) return SpaceStyle::anchored;
    if (roll < 6) return SpaceStyle::full;
    if (roll < 8) return SpaceStyle::identity;
    return SpaceStyle::random;
}

// Random structure with seeds = points.
inline equilib::AbstractConvexSpace random_square_space(equilib::RandomSource& rng, int n,
                                                        SpaceStyle style) {
    equilib::Labels points = letters(n);
    equilib::Labels seeds = points;
    const Mask all = points.universe();
    switch (style) {
        case SpaceStyle::constant:
            return equilib::AbstractConvexSpace::constant_rule(
                points, seeds, points.name(rng.range(0, n - 1)));
        case SpaceStyle::full:
            return equilib::AbstractConvexSpace::full_rule(points, seeds);
        case SpaceStyle::identity:
            return equilib::AbstractConvexSpace::identity_rule(points, seeds);
        case SpaceStyle::anchored: {
            const Mask anchor = equilib::bit(rng.range(0, n - 1));
            std::vector<Mask> gamma(std::size_t{1} << n, 0);
            for (Mask a = 1; a < gamma.size(); ++a) gamma[a] = anchor | (rng.next() & all);
            return equilib::AbstractConvexSpace(points, seeds, std::move(gamma));
        }
        default: {
            std::vector<Mask> gamma(std::size_t{1} << n, 0);
            for (Mask a = 1; a < gamma.size(); ++a) {
                gamma[a] = rng.next() & all;
                if (gamma[a] == 0) gamma[a] = equilib::bit(rng.range(0, n - 1));
            }
            return equilib::AbstractConvexSpace(points, seeds, std::move(gamma));
        }
    }
}

// Random space where seeds may be a strict subset of points.
inline equilib::AbstractConvexSpace random_space(equilib::RandomSource& rng, int max_points,
                                                 int max_seeds) {
    const int n = rng.range(1, max_points);
    const int d = rng.range(1, max_seeds);
    equilib::Labels points = letters(n);
    std::vector<std::string> seed_names;
    for (int i = 0; i < d; ++i) seed_names.push_back("z" + std::to_string(i + 1));
    equilib::Labels seeds{std::move(seed_names)};
    const Mask all = points.universe();
    std::vector<Mask> gamma(std::size_t{1} << d, 0);
    const bool anchor_all = rng.chance(1, 2);
    const Mask anchor = equilib::bit(rng.range(0, n - 1));
    for (Mask a = 1; a < gamma.size(); ++a) {
        gamma[a] = rng.next() & all;
        if (anchor_all) gamma[a] |= anchor;
        if (gamma[a] == 0) gamma[a] = equilib::bit(rng.range(0, n - 1));
    }
    return equilib::AbstractConvexSpace(std::move(points), std::move(seeds), std::move(gamma));
}

inline equilib::ExtRational random_value(equilib::RandomSource& rng, bool allow_infinite) {
    if (allow_infinite && rng.chance(1, 20))
        return rng.chance(1, 2) ? equilib::ExtRational::pos_inf()
                                : equilib::ExtRational::neg_inf();
    return equilib::ExtRational(equilib::Rational(rng.range(-2, 2)));
}

// Random minimax instance on up to max_points points. Mixes safe shapes (zero
// diagonal, g = f, discrete topology, anchored structures) with fully random
// ones so that a useful fraction passes the hypothesis checks. gamma is always
// sup_x g(x,x), the conclusion-2 premise, which also makes condition (i) hold
// by construction.
inline equilib::MinimaxInstance random_minimax_instance(equilib::RandomSource& rng,
                                                        int max_points,
                                                        bool finite_only = false) {
    const int n = rng.range(1, max_points);
    equilib::AbstractConvexSpace space = random_square_space(rng, n, pick_style(rng));
    equilib::FiniteTopology topology = rng.chance(3, 5)
                                           ? equilib::FiniteTopology::discrete(space.points())
                                           : random_topology(rng, space.points());

    const bool allow_infinite = !finite_only;
    equilib::ExtRational preliminary = rng.chance(1, 2)
                                           ? equilib::ExtRational(equilib::Rational(0))
                                           : random_value(rng, allow_infinite);

    const bool zero_diagonal = rng.chance(1, 2);
    std::vector<std::vector<equilib::ExtRational>> f(
        static_cast<std::size_t>(n), std::vector<equilib::ExtRational>(static_cast<std::size_t>(n)));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            f[x][y] = (zero_diagonal && x == y)
                          ? equilib::ExtRational(equilib::Rational(0))
                          : random_value(rng, allow_infinite && rng.chance(1, 4));

    std::vector<std::vector<equilib::ExtRational>> g = f;
    const int g_shape = rng.range(0, 3);
    if (g_shape == 1) {
        for (int x = 0; x < n; ++x)
            if (g[x][x] > preliminary) g[x][x] = preliminary;
    } else if (g_shape == 2) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) g[x][y] = random_value(rng, allow_infinite);
    }

    equilib::ExtRational gamma = g[0][0];
    for (int x = 1; x < n; ++x)
        if (g[x][x] > gamma) gamma = g[x][x];

    std::optional<equilib::CoercivityWitness> witness;
    const int w_shape = rng.range(0, 9);
    if (w_shape >= 7) {
        // variant (a): M = all points, K = the closure intersection when it
        // is nonempty, otherwise the whole space.
        equilib::CoercivityWitness w;
        Mask inter = space.point_universe();
        for (int y = 0; y < n; ++y) {
            Mask level = 0;
            for (int x = 0; x < n; ++x)
                if (f[x][y] <= gamma) level |= equilib::bit(x);
            inter &= topology.closure(level);
        }
        w.m_set = space.point_universe();
        w.k_set = inter != 0 ? inter : space.point_universe();
        witness = w;
    } else if (w_shape == 6) {
        // variant (b): single entry with X' = X and L_N = X, K = X.
        equilib::CoercivityWitness w;
        w.k_set = space.point_universe();
        w.entries = std::vector<equilib::CoercivityWitnessEntry>{
            {space.point_universe(), space.point_universe(), space.point_universe()}};
        witness = w;
    }

    return equilib::MinimaxInstance{std::move(space), std::move(topology), std::move(f),
                                    std::move(g), gamma, std::move(witness)};
}

} // namespace gen
