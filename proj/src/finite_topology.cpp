#include "equilib/finite_topology.hpp"

#include <algorithm>
#include <unordered_set>

namespace equilib {

FiniteTopology::FiniteTopology(Labels points, std::vector<Mask> opens)
    : points_(std::move(points)), opens_(std::move(opens)) {
    if (points_.empty()) throw InputError("topology needs a nonempty point set");
    const Mask all = points_.universe();
    std::unordered_set<Mask> family;
    for (Mask s : opens_) {
        if (!subset_of(s, all))
            throw InputError("open set mentions a point outside the ground set");
        family.insert(s);
    }
    if (!family.count(0)) throw InputError("open-set family is missing the empty set");
    if (!family.count(all)) throw InputError("open-set family is missing the full point set");
    for (Mask a : family)
        for (Mask b : family) {
            if (!family.count(a | b))
                throw InputError("open-set family is not closed under union: missing " +
                                 join_labels(points_.labels_of(a | b)));
            if (!family.count(a & b))
                throw InputError("open-set family is not closed under intersection: missing " +
                                 join_labels(points_.labels_of(a & b)));
        }
    opens_.assign(family.begin(), family.end());
    std::sort(opens_.begin(), opens_.end());
}

FiniteTopology::FiniteTopology(Labels points, std::vector<Mask> opens, trusted_tag)
    : points_(std::move(points)), opens_(std::move(opens)) {
    if (points_.empty()) throw InputError("topology needs a nonempty point set");
    std::sort(opens_.begin(), opens_.end());
}

FiniteTopology FiniteTopology::discrete(Labels points) {
    if (points.size() > 16)
        throw CapError("discrete topology on more than 16 points exceeds the open-family cap");
    std::vector<Mask> opens;
    const Mask all = points.universe();
    for (Mask s = 0;; ++s) {
        opens.push_back(s);
        if (s == all) break;
    }
    return FiniteTopology(std::move(points), std::move(opens), trusted_tag{});
}

FiniteTopology FiniteTopology::indiscrete(Labels points) {
    std::vector<Mask> opens = {0, points.universe()};
    return FiniteTopology(std::move(points), std::move(opens), trusted_tag{});
}

bool FiniteTopology::is_open(Mask s) const {
    return std::binary_search(opens_.begin(), opens_.end(), s);
}

void FiniteTopology::require_subset(Mask s) const {
    if (!subset_of(s, universe()))
        throw PreconditionError("subset lies outside the point universe");
}

Mask FiniteTopology::closure(Mask s) const {
    require_subset(s);
    Mask out = universe();
    for (Mask open : opens_) {
        Mask closed = universe() & ~open;
        if (subset_of(s, closed)) out &= closed;
    }
    return out;
}

Mask FiniteTopology::interior(Mask s) const {
    require_subset(s);
    Mask out = 0;
    for (Mask open : opens_)
        if (subset_of(open, s)) out |= open;
    return out;
}

Mask FiniteTopology::closure(const std::vector<std::string>& subset) const {
    return closure(points_.mask_of(subset));
}

Mask FiniteTopology::interior(const std::vector<std::string>& subset) const {
    return interior(points_.mask_of(subset));
}

void SetCorrespondence::validate(Mask point_universe) const {
    if (domain.empty()) throw InputError("correspondence has an empty domain");
    if (values.size() != static_cast<std::size_t>(domain.size()))
        throw InputError("correspondence is missing a value for some domain element");
    for (Mask v : values)
        if (!subset_of(v, point_universe))
            throw InputError("correspondence value lies outside the point universe");
}

ClosednessReport classify_correspondence(const FiniteTopology& topology,
                                         const SetCorrespondence& f) {
    f.validate(topology.universe());

    Mask inter_cl = topology.universe();
    Mask inter = topology.universe();
    Mask uni = 0;
    Mask uni_int = 0;
    for (Mask v : f.values) {
        inter_cl &= topology.closure(v);
        inter &= v;
        uni |= v;
        uni_int |= topology.interior(v);
    }

    ClosednessReport report;
    report.intersectionally_closed = inter_cl == topology.closure(inter);
    report.transfer_closed = inter_cl == inter;
    report.unionly_open = topology.interior(uni) == uni_int;
    report.transfer_open = uni == uni_int;
    return report;
}

SetCorrespondence complement_correspondence(const SetCorrespondence& f,
                                            const FiniteTopology& topology) {
    f.validate(topology.universe());
    SetCorrespondence out;
    out.domain = f.domain;
    out.values.reserve(f.values.size());
    for (Mask v : f.values) out.values.push_back(topology.universe() & ~v);
    return out;
}

} // namespace equilib
