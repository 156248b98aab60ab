#pragma once

#include <string>
#include <vector>

#include "equilib/sets.hpp"

namespace equilib {

/// A finite topological space given by its full open-set family. The family
/// is validated at construction: it must contain the empty set and the whole
/// point set and be closed under pairwise union and intersection (on a finite
/// ground set that is equivalent to closure under arbitrary unions).
class FiniteTopology {
public:
    FiniteTopology(Labels points, std::vector<Mask> opens);

    static FiniteTopology discrete(Labels points);
    static FiniteTopology indiscrete(Labels points);

    const Labels& points() const { return points_; }
    int size() const { return points_.size(); }
    Mask universe() const { return points_.universe(); }
    const std::vector<Mask>& opens() const { return opens_; }

    bool is_open(Mask s) const;
    bool is_closed(Mask s) const { return is_open(universe() & ~s); }

    /// Intersection of all closed sets containing s.
    Mask closure(Mask s) const;
    /// Union of all open subsets of s.
    Mask interior(Mask s) const;

    /// Label-level variants; reject labels outside the point set.
    Mask closure(const std::vector<std::string>& subset) const;
    Mask interior(const std::vector<std::string>& subset) const;

private:
    struct trusted_tag {};
    FiniteTopology(Labels points, std::vector<Mask> opens, trusted_tag);

    void require_subset(Mask s) const;

    Labels points_;
    std::vector<Mask> opens_;
};

/// Correspondence F: D -> 2^X over an explicit finite domain. Values live in
/// the point universe of whatever topology or space the caller pairs it with.
struct SetCorrespondence {
    Labels domain;
    std::vector<Mask> values; // one entry per domain label, may be empty sets

    void validate(Mask point_universe) const;
};

/// The four set-algebra classifications of a correspondence:
///   intersectionally closed-valued:  /\ cl F(z) == cl /\ F(z)
///   transfer closed-valued:          /\ cl F(z) == /\ F(z)
///   unionly open-valued:             int \/ F(z) == \/ int F(z)
///   transfer open-valued:            \/ F(z) == \/ int F(z)
struct ClosednessReport {
    bool intersectionally_closed = false;
    bool transfer_closed = false;
    bool unionly_open = false;
    bool transfer_open = false;
};

ClosednessReport classify_correspondence(const FiniteTopology& topology,
                                         const SetCorrespondence& f);

/// z -> X \ F(z), same domain.
SetCorrespondence complement_correspondence(const SetCorrespondence& f,
                                            const FiniteTopology& topology);

} // namespace equilib
