#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equilib/finite_topology.hpp"
#include "equilib/rational.hpp"
#include "equilib/sets.hpp"

namespace equilib {

/// Seed-set size cap: the Gamma table stores one value per nonempty subset of
/// the seed set, so |D| <= 12 keeps tables at 4095 entries.
constexpr int kMaxSeeds = 12;

/// Default cap on the number of correspondence values walked by the exact
/// KKM-principle enumeration.
constexpr std::uint64_t kDefaultKkmCap = std::uint64_t{1} << 24;

/// Finite abstract convex structure: points X, seeds D, and an exhaustive
/// table assigning a nonempty subset Gamma_A of X to every nonempty A within
/// the seed set.
class AbstractConvexSpace {
public:
    /// gamma is indexed by seed-subset mask; gamma[0] is ignored and gamma
    /// must have 2^|D| entries, all nonempty for indices >= 1.
    AbstractConvexSpace(Labels points, Labels seeds, std::vector<Mask> gamma);

    /// Gamma_A = A. Seeds must all be points.
    static AbstractConvexSpace identity_rule(Labels points, Labels seeds);
    /// Gamma_A = {anchor} for every A.
    static AbstractConvexSpace constant_rule(Labels points, Labels seeds,
                                             const std::string& anchor);
    /// Gamma_A = X for every A.
    static AbstractConvexSpace full_rule(Labels points, Labels seeds);

    const Labels& points() const { return points_; }
    const Labels& seeds() const { return seeds_; }
    Mask point_universe() const { return points_.universe(); }
    Mask seed_universe() const { return seeds_.universe(); }

    Mask gamma(Mask seed_subset) const;
    const std::vector<Mask>& gamma_table() const { return gamma_; }

    /// True when every seed label is also a point label.
    bool seeds_within_points() const { return seed_to_point_.has_value(); }

    /// Point mask of a seed mask (requires seeds within points).
    Mask seeds_as_points(Mask seed_subset) const;
    /// Seed mask of the seeds whose point lies in the given point set
    /// (requires seeds within points). Realizes Y ∩ D.
    Mask points_as_seeds(Mask point_subset) const;

private:
    Labels points_;
    Labels seeds_;
    std::vector<Mask> gamma_;
    std::optional<std::vector<int>> seed_to_point_; // set iff seeds ⊆ points
};

/// Union of Gamma_A over all nonempty A within dprime.
Mask gamma_hull(const AbstractConvexSpace& space, Mask dprime);

/// hull(dprime) ⊆ y.
bool is_gamma_convex_relative(const AbstractConvexSpace& space, Mask y, Mask dprime);

/// co_Gamma(y ∩ D) ⊆ y, vacuously true when y ∩ D is empty.
/// Requires seeds within points.
bool is_gamma_convex(const AbstractConvexSpace& space, Mask y);

/// First nonempty A ⊆ dprime (ascending mask order) with Gamma_A ⊄ y,
/// or nullopt when y is Gamma-convex relative to dprime.
std::optional<Mask> find_gamma_convex_violation(const AbstractConvexSpace& space,
                                                Mask y, Mask dprime);

/// Restriction (Y, D', Gamma') with Gamma'_A = Gamma_A for A within dprime.
/// Rejects (naming the violating A) unless y is Gamma-convex relative to dprime.
AbstractConvexSpace subspace(const AbstractConvexSpace& space, Mask y, Mask dprime);

/// Product structure: points and seeds are coordinate tuples and
/// Gamma(A) is the product over factors of Gamma_i applied to the i-th
/// coordinate projection of A.
AbstractConvexSpace product_space(const std::vector<AbstractConvexSpace>& factors);

/// Gamma_A ⊆ ∪_{y∈A} F(y) for every nonempty A within the seed set.
/// F's domain labels must equal the space's seeds.
bool is_kkm_correspondence(const AbstractConvexSpace& space, const SetCorrespondence& f);

enum class ValueMode { closed, open };

struct KkmCounterexample {
    SetCorrespondence f;  // KKM, closed- (or open-) valued
    Mask empty_family;    // seed subset A with empty ∩_{z∈A} F(z)
};

struct KkmVerdict {
    bool holds = true;
    bool exhaustive = false; // true for full enumeration, false for sampling
    std::optional<KkmCounterexample> counterexample;
};

/// Exhaustively enumerates every closed- (resp. open-) valued KKM
/// correspondence F: D -> 2^X and checks the finite intersection property of
/// {F(z)}. Deterministic: candidate values ascend by mask and assignments are
/// walked lexicographically, so the reported counterexample is the least one.
KkmVerdict check_kkm_principle(const AbstractConvexSpace& space,
                               const FiniteTopology& topology, ValueMode mode,
                               std::uint64_t cap = kDefaultKkmCap);

/// Sampling fallback for instances beyond the enumeration cap. holds=true
/// means "no counterexample found", not a proof. Counterexamples are
/// re-verified before being reported.
KkmVerdict falsify_kkm_random(const AbstractConvexSpace& space,
                              const FiniteTopology& topology, ValueMode mode,
                              int samples, std::uint64_t seed);

enum class QuasiMode { concave, convex };

/// Quasiconcavity (resp. quasiconvexity): every strict upper (resp. lower)
/// level set of f is Gamma-convex. f is indexed by point and must be total.
bool check_quasi(const AbstractConvexSpace& space, const std::vector<ExtRational>& f,
                 QuasiMode mode);

enum class SemiSense { lower, upper };

/// Generally lower (resp. upper) semicontinuous: for each threshold the
/// correspondence z -> {y : f(z,y) <= r} (resp. >= r) is intersectionally
/// closed-valued. f is indexed [seed][point].
bool check_glsc(const AbstractConvexSpace& space, const FiniteTopology& topology,
                const std::vector<std::vector<ExtRational>>& f, SemiSense sense);

} // namespace equilib
