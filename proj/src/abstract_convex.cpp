#include "equilib/abstract_convex.hpp"

#include <algorithm>

#include "equilib/random.hpp"

namespace equilib {

AbstractConvexSpace::AbstractConvexSpace(Labels points, Labels seeds, std::vector<Mask> gamma)
    : points_(std::move(points)), seeds_(std::move(seeds)), gamma_(std::move(gamma)) {
    if (points_.empty()) throw InputError("abstract convex space needs a nonempty point set");
    if (seeds_.empty()) throw InputError("abstract convex space needs a nonempty seed set");
    if (seeds_.size() > kMaxSeeds)
        throw CapError("seed set exceeds the Gamma-table cap of " + std::to_string(kMaxSeeds));
    const std::size_t expected = std::size_t{1} << seeds_.size();
    if (gamma_.size() != expected)
        throw InputError("Gamma table must cover every nonempty seed subset (" +
                         std::to_string(expected - 1) + " entries)");
    for (std::size_t a = 1; a < gamma_.size(); ++a) {
        if (gamma_[a] == 0)
            throw InputError("Gamma value for " +
                             join_labels(seeds_.labels_of(static_cast<Mask>(a))) +
                             " is empty");
        if (!subset_of(gamma_[a], points_.universe()))
            throw InputError("Gamma value for " +
                             join_labels(seeds_.labels_of(static_cast<Mask>(a))) +
                             " lies outside the point set");
    }

    std::vector<int> map;
    map.reserve(static_cast<std::size_t>(seeds_.size()));
    bool within = true;
    for (const auto& s : seeds_.names()) {
        if (!points_.contains(s)) {
            within = false;
            break;
        }
        map.push_back(points_.index_of(s));
    }
    if (within) seed_to_point_ = std::move(map);
}

namespace {

void require_seed_cap(const Labels& seeds) {
    if (seeds.size() > kMaxSeeds)
        throw CapError("seed set exceeds the Gamma-table cap of " + std::to_string(kMaxSeeds));
}

} // namespace

AbstractConvexSpace AbstractConvexSpace::identity_rule(Labels points, Labels seeds) {
    require_seed_cap(seeds);
    for (const auto& s : seeds.names())
        if (!points.contains(s))
            throw InputError("identity Gamma rule requires seeds to be points; '" + s +
                             "' is not a point");
    std::vector<Mask> gamma(std::size_t{1} << seeds.size(), 0);
    for (std::size_t a = 1; a < gamma.size(); ++a) {
        Mask value = 0;
        for (int i : mask_bits(static_cast<Mask>(a))) value |= bit(points.index_of(seeds.name(i)));
        gamma[a] = value;
    }
    return AbstractConvexSpace(std::move(points), std::move(seeds), std::move(gamma));
}

AbstractConvexSpace AbstractConvexSpace::constant_rule(Labels points, Labels seeds,
                                                       const std::string& anchor) {
    require_seed_cap(seeds);
    const Mask value = bit(points.index_of(anchor));
    std::vector<Mask> gamma(std::size_t{1} << seeds.size(), value);
    gamma[0] = 0;
    return AbstractConvexSpace(std::move(points), std::move(seeds), std::move(gamma));
}

AbstractConvexSpace AbstractConvexSpace::full_rule(Labels points, Labels seeds) {
    require_seed_cap(seeds);
    std::vector<Mask> gamma(std::size_t{1} << seeds.size(), points.universe());
    gamma[0] = 0;
    return AbstractConvexSpace(std::move(points), std::move(seeds), std::move(gamma));
}

Mask AbstractConvexSpace::gamma(Mask seed_subset) const {
    if (seed_subset == 0) throw PreconditionError("Gamma is defined on nonempty seed subsets");
    if (!subset_of(seed_subset, seed_universe()))
        throw PreconditionError("seed subset lies outside the seed set");
    return gamma_[seed_subset];
}

Mask AbstractConvexSpace::seeds_as_points(Mask seed_subset) const {
    if (!seed_to_point_) throw PreconditionError("seeds are not a subset of the points");
    Mask out = 0;
    for (int i : mask_bits(seed_subset)) out |= bit((*seed_to_point_)[static_cast<std::size_t>(i)]);
    return out;
}

Mask AbstractConvexSpace::points_as_seeds(Mask point_subset) const {
    if (!seed_to_point_) throw PreconditionError("seeds are not a subset of the points");
    Mask out = 0;
    for (int i = 0; i < seeds_.size(); ++i)
        if (point_subset & bit((*seed_to_point_)[static_cast<std::size_t>(i)])) out |= bit(i);
    return out;
}

Mask gamma_hull(const AbstractConvexSpace& space, Mask dprime) {
    if (dprime == 0)
        throw InputError("Gamma-convex hull requires a nonempty seed subset");
    if (!subset_of(dprime, space.seed_universe()))
        throw PreconditionError("hull argument lies outside the seed set");
    Mask hull = 0;
    for (Mask a = dprime; a != 0; a = (a - 1) & dprime) hull |= space.gamma_table()[a];
    return hull;
}

bool is_gamma_convex_relative(const AbstractConvexSpace& space, Mask y, Mask dprime) {
    if (!subset_of(y, space.point_universe()))
        throw PreconditionError("set lies outside the point universe");
    return subset_of(gamma_hull(space, dprime), y);
}

bool is_gamma_convex(const AbstractConvexSpace& space, Mask y) {
    if (!space.seeds_within_points())
        throw PreconditionError("Gamma-convexity needs seeds within points");
    if (!subset_of(y, space.point_universe()))
        throw PreconditionError("set lies outside the point universe");
    Mask meet = space.points_as_seeds(y);
    if (meet == 0) return true;
    return subset_of(gamma_hull(space, meet), y);
}

std::optional<Mask> find_gamma_convex_violation(const AbstractConvexSpace& space, Mask y,
                                                Mask dprime) {
    if (dprime == 0)
        throw InputError("Gamma-convexity relative to an empty seed subset is undefined");
    for (Mask a = 1; a <= dprime; ++a) {
        if (!subset_of(a, dprime)) continue;
        if (!subset_of(space.gamma_table()[a], y)) return a;
    }
    return std::nullopt;
}

AbstractConvexSpace subspace(const AbstractConvexSpace& space, Mask y, Mask dprime) {
    if (!subset_of(y, space.point_universe()))
        throw PreconditionError("subspace carrier lies outside the point universe");
    if (!subset_of(dprime, space.seed_universe()))
        throw PreconditionError("subspace seeds lie outside the seed set");
    if (auto bad = find_gamma_convex_violation(space, y, dprime))
        throw PreconditionError("carrier is not Gamma-convex relative to the seed subset: Gamma" +
                                join_labels(space.seeds().labels_of(*bad)) + " = " +
                                join_labels(space.points().labels_of(space.gamma_table()[*bad])) +
                                " escapes it");

    std::vector<int> new_point_index(static_cast<std::size_t>(space.points().size()), -1);
    std::vector<std::string> point_names;
    for (int i : mask_bits(y)) {
        new_point_index[static_cast<std::size_t>(i)] = static_cast<int>(point_names.size());
        point_names.push_back(space.points().name(i));
    }
    std::vector<std::string> seed_names;
    std::vector<int> old_seed_index;
    for (int i : mask_bits(dprime)) {
        seed_names.push_back(space.seeds().name(i));
        old_seed_index.push_back(i);
    }

    auto remap_points = [&](Mask m) {
        Mask out = 0;
        for (int i : mask_bits(m)) out |= bit(new_point_index[static_cast<std::size_t>(i)]);
        return out;
    };

    const int k = static_cast<int>(seed_names.size());
    std::vector<Mask> gamma(std::size_t{1} << k, 0);
    for (Mask a = 1; a < (Mask{1} << k); ++a) {
        Mask old_a = 0;
        for (int i : mask_bits(a)) old_a |= bit(old_seed_index[static_cast<std::size_t>(i)]);
        gamma[a] = remap_points(space.gamma_table()[old_a]);
    }
    return AbstractConvexSpace(Labels(std::move(point_names)), Labels(std::move(seed_names)),
                               std::move(gamma));
}

namespace {

std::string tuple_label(const std::vector<std::string>& parts) {
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i];
    }
    out += ")";
    return out;
}

} // namespace

AbstractConvexSpace product_space(const std::vector<AbstractConvexSpace>& factors) {
    if (factors.empty()) throw InputError("product of zero abstract convex spaces");
    if (factors.size() == 1) return factors.front();

    const int n = static_cast<int>(factors.size());
    std::uint64_t point_count = 1;
    std::uint64_t seed_count = 1;
    for (const auto& f : factors) {
        point_count *= static_cast<std::uint64_t>(f.points().size());
        seed_count *= static_cast<std::uint64_t>(f.seeds().size());
        if (point_count > kMaxUniverse)
            throw CapError("product point set exceeds " + std::to_string(kMaxUniverse) +
                           " elements");
        if (seed_count > kMaxSeeds)
            throw CapError("product seed set exceeds the Gamma-table cap of " +
                           std::to_string(kMaxSeeds));
    }

    // Mixed-radix layout, factor 0 most significant.
    std::vector<std::uint64_t> point_stride(static_cast<std::size_t>(n), 1);
    std::vector<std::uint64_t> seed_stride(static_cast<std::size_t>(n), 1);
    for (int i = n - 2; i >= 0; --i) {
        point_stride[i] = point_stride[i + 1] *
                          static_cast<std::uint64_t>(factors[i + 1].points().size());
        seed_stride[i] = seed_stride[i + 1] *
                         static_cast<std::uint64_t>(factors[i + 1].seeds().size());
    }

    auto build_names = [&](bool use_points, std::uint64_t count,
                           const std::vector<std::uint64_t>& stride) {
        std::vector<std::string> names;
        names.reserve(count);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<std::string> parts;
            for (int i = 0; i < n; ++i) {
                const Labels& l = use_points ? factors[i].points() : factors[i].seeds();
                auto coord = (idx / stride[i]) % static_cast<std::uint64_t>(l.size());
                parts.push_back(l.name(static_cast<int>(coord)));
            }
            names.push_back(tuple_label(parts));
        }
        return names;
    };
    std::vector<std::string> point_names = build_names(true, point_count, point_stride);
    std::vector<std::string> seed_names = build_names(false, seed_count, seed_stride);

    const int sd = static_cast<int>(seed_count);
    std::vector<Mask> gamma(std::size_t{1} << sd, 0);
    std::vector<Mask> proj(static_cast<std::size_t>(n));
    std::vector<Mask> factor_value(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> factor_points(static_cast<std::size_t>(n));
    for (Mask a = 1; a < (Mask{1} << sd); ++a) {
        std::fill(proj.begin(), proj.end(), 0);
        for (int s : mask_bits(a))
            for (int i = 0; i < n; ++i)
                proj[i] |= bit(static_cast<int>(
                    (static_cast<std::uint64_t>(s) / seed_stride[i]) %
                    static_cast<std::uint64_t>(factors[i].seeds().size())));
        for (int i = 0; i < n; ++i) {
            factor_value[i] = factors[i].gamma(proj[i]);
            factor_points[i] = mask_bits(factor_value[i]);
        }
        // Expand the product of the per-factor value sets.
        Mask value = 0;
        std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
        while (true) {
            std::uint64_t idx = 0;
            for (int i = 0; i < n; ++i)
                idx += static_cast<std::uint64_t>(factor_points[i][pick[i]]) * point_stride[i];
            value |= bit(static_cast<int>(idx));
            int i = n - 1;
            while (i >= 0 && ++pick[i] == factor_points[i].size()) {
                pick[i] = 0;
                --i;
            }
            if (i < 0) break;
        }
        gamma[a] = value;
    }
    return AbstractConvexSpace(Labels(std::move(point_names)), Labels(std::move(seed_names)),
                               std::move(gamma));
}

bool is_kkm_correspondence(const AbstractConvexSpace& space, const SetCorrespondence& f) {
    if (!f.domain.same_names(space.seeds()))
        throw InputError("correspondence domain must equal the seed set (same order)");
    f.validate(space.point_universe());
    const int d = space.seeds().size();
    std::vector<Mask> unions(std::size_t{1} << d, 0);
    for (Mask a = 1; a < (Mask{1} << d); ++a) {
        const int low = mask_bits(a & ~(a - 1)).front();
        unions[a] = unions[a & (a - 1)] | f.values[static_cast<std::size_t>(low)];
        if (!subset_of(space.gamma_table()[a], unions[a])) return false;
    }
    return true;
}

namespace {

// Candidate values for F(z): closed (or open) sets containing Gamma_{z},
// in ascending mask order. Any closed-valued KKM correspondence takes its
// values here: the singleton KKM condition forces Gamma_{z} ⊆ F(z).
std::vector<std::vector<Mask>> kkm_candidates(const AbstractConvexSpace& space,
                                              const FiniteTopology& topology, ValueMode mode) {
    std::vector<Mask> pool;
    if (mode == ValueMode::open) {
        pool = topology.opens();
    } else {
        for (Mask open : topology.opens()) pool.push_back(topology.universe() & ~open);
        std::sort(pool.begin(), pool.end());
    }
    std::vector<std::vector<Mask>> candidates(static_cast<std::size_t>(space.seeds().size()));
    for (int z = 0; z < space.seeds().size(); ++z) {
        const Mask needed = space.gamma_table()[bit(z)];
        for (Mask s : pool)
            if (subset_of(needed, s)) candidates[static_cast<std::size_t>(z)].push_back(s);
    }
    return candidates;
}

void require_same_ground_set(const AbstractConvexSpace& space, const FiniteTopology& topology) {
    if (!topology.points().same_names(space.points()))
        throw InputError("topology points must equal the space points (same order)");
}

// First nonempty seed subset (ascending mask order) whose value family has an
// empty intersection.
Mask first_empty_family(const std::vector<Mask>& values, int d) {
    for (Mask a = 1; a < (Mask{1} << d); ++a) {
        Mask inter = ~Mask{0};
        for (int z : mask_bits(a)) inter &= values[static_cast<std::size_t>(z)];
        if (inter == 0) return a;
    }
    return 0;
}

struct KkmSearch {
    const AbstractConvexSpace& space;
    const std::vector<std::vector<Mask>>& candidates;
    int d;
    std::vector<Mask> values;
    std::vector<Mask> union_dp; // indexed by subset of the assigned prefix

    std::optional<KkmCounterexample> run() { return descend(0); }

    std::optional<KkmCounterexample> descend(int depth) {
        if (depth == d) {
            Mask inter = ~Mask{0};
            for (Mask v : values) inter &= v;
            if (inter != 0) return std::nullopt;
            SetCorrespondence f{space.seeds(), values};
            return KkmCounterexample{std::move(f), first_empty_family(values, d)};
        }
        const Mask prefix = full_mask(depth);
        for (Mask v : candidates[static_cast<std::size_t>(depth)]) {
            bool ok = true;
            // Check the KKM inclusion for every new subset A = A' | {depth}.
            for (Mask ap = 0;; ap = (ap + 1)) {
                if (ap > prefix) break;
                const Mask a = ap | bit(depth);
                const Mask u = union_dp[ap] | v;
                union_dp[a] = u;
                if (!subset_of(space.gamma_table()[a], u)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            values[static_cast<std::size_t>(depth)] = v;
            if (auto found = descend(depth + 1)) return found;
        }
        return std::nullopt;
    }
};

} // namespace

KkmVerdict check_kkm_principle(const AbstractConvexSpace& space, const FiniteTopology& topology,
                               ValueMode mode, std::uint64_t cap) {
    require_same_ground_set(space, topology);
    const int d = space.seeds().size();
    auto candidates = kkm_candidates(space, topology, mode);

    std::uint64_t total = static_cast<std::uint64_t>(d);
    for (const auto& c : candidates) {
        if (c.empty()) {
            // No admissible value at some seed: there is no closed-valued
            // (resp. open-valued) KKM correspondence at all.
            return KkmVerdict{true, true, std::nullopt};
        }
        if (total > cap / c.size())
            throw CapError("KKM enumeration exceeds the cap; use falsify_kkm_random for sampling");
        total *= c.size();
    }

    KkmSearch search{space, candidates, d,
                     std::vector<Mask>(static_cast<std::size_t>(d), 0),
                     std::vector<Mask>(std::size_t{1} << d, 0)};
    if (auto counterexample = search.run())
        return KkmVerdict{false, true, std::move(counterexample)};
    return KkmVerdict{true, true, std::nullopt};
}

KkmVerdict falsify_kkm_random(const AbstractConvexSpace& space, const FiniteTopology& topology,
                              ValueMode mode, int samples, std::uint64_t seed) {
    if (samples < 1) throw InputError("sample count must be at least 1");
    require_same_ground_set(space, topology);
    const int d = space.seeds().size();
    auto candidates = kkm_candidates(space, topology, mode);
    for (const auto& c : candidates)
        if (c.empty()) return KkmVerdict{true, false, std::nullopt};

    RandomSource rng(seed);
    std::vector<Mask> values(static_cast<std::size_t>(d), 0);
    for (int s = 0; s < samples; ++s) {
        for (int z = 0; z < d; ++z) {
            const auto& c = candidates[static_cast<std::size_t>(z)];
            values[static_cast<std::size_t>(z)] = c[rng.below(c.size())];
        }
        Mask inter = ~Mask{0};
        for (Mask v : values) inter &= v;
        if (inter != 0) continue;
        SetCorrespondence f{space.seeds(), values};
        if (!is_kkm_correspondence(space, f)) continue;
        // Independent re-verification before reporting.
        bool valued_ok = true;
        for (Mask v : values)
            valued_ok = valued_ok &&
                        (mode == ValueMode::closed ? topology.is_closed(v) : topology.is_open(v));
        const Mask family = first_empty_family(values, d);
        Mask check = ~Mask{0};
        for (int z : mask_bits(family)) check &= values[static_cast<std::size_t>(z)];
        if (!valued_ok || family == 0 || check != 0)
            throw PreconditionError("sampled KKM counterexample failed re-verification");
        return KkmVerdict{false, false, KkmCounterexample{std::move(f), family}};
    }
    return KkmVerdict{true, false, std::nullopt};
}

namespace {

std::vector<ExtRational> sorted_unique(std::vector<ExtRational> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

} // namespace

bool check_quasi(const AbstractConvexSpace& space, const std::vector<ExtRational>& f,
                 QuasiMode mode) {
    if (!space.seeds_within_points())
        throw PreconditionError("quasiconcavity needs seeds within points");
    if (f.size() != static_cast<std::size_t>(space.points().size()))
        throw InputError("function must be total on the point set");

    std::vector<ExtRational> thresholds = sorted_unique(f);
    if (thresholds.front().is_finite())
        thresholds.insert(thresholds.begin(),
                          ExtRational(thresholds.front().finite_value() - Rational(1)));

    for (const auto& r : thresholds) {
        Mask level = 0;
        for (int x = 0; x < space.points().size(); ++x) {
            const auto& v = f[static_cast<std::size_t>(x)];
            const bool in = mode == QuasiMode::concave ? v > r : v < r;
            if (in) level |= bit(x);
        }
        if (!is_gamma_convex(space, level)) return false;
    }
    return true;
}

bool check_glsc(const AbstractConvexSpace& space, const FiniteTopology& topology,
                const std::vector<std::vector<ExtRational>>& f, SemiSense sense) {
    require_same_ground_set(space, topology);
    if (f.size() != static_cast<std::size_t>(space.seeds().size()))
        throw InputError("function must be total on seeds x points (missing seed rows)");
    std::vector<ExtRational> all;
    for (const auto& row : f) {
        if (row.size() != static_cast<std::size_t>(space.points().size()))
            throw InputError("function must be total on seeds x points (short row)");
        all.insert(all.end(), row.begin(), row.end());
    }

    for (const auto& r : sorted_unique(std::move(all))) {
        SetCorrespondence corr;
        corr.domain = space.seeds();
        corr.values.reserve(f.size());
        for (const auto& row : f) {
            Mask value = 0;
            for (int y = 0; y < space.points().size(); ++y) {
                const auto& v = row[static_cast<std::size_t>(y)];
                const bool in = sense == SemiSense::lower ? v <= r : v >= r;
                if (in) value |= bit(y);
            }
            corr.values.push_back(value);
        }
        if (!classify_correspondence(topology, corr).intersectionally_closed) return false;
    }
    return true;
}

} // namespace equilib
