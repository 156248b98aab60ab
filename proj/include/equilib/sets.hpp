#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "equilib/errors.hpp"

namespace equilib {

/// Subset of a fixed finite universe, one bit per element.
/// Every ground set in this library is capped at 64 elements.
using Mask = std::uint64_t;

constexpr int kMaxUniverse = 64;

constexpr Mask bit(int i) { return Mask{1} << i; }

constexpr Mask full_mask(int n) {
    return n >= kMaxUniverse ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline int popcount(Mask m) { return std::popcount(m); }

inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

inline std::vector<int> mask_bits(Mask m) {
    std::vector<int> out;
    while (m != 0) {
        int i = std::countr_zero(m);
        out.push_back(i);
        m &= m - 1;
    }
    return out;
}

/// Ordered set of unique labels with index lookup and mask conversion.
class Labels {
public:
    Labels() = default;

    explicit Labels(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.size() > static_cast<std::size_t>(kMaxUniverse))
            throw CapError("label set exceeds " + std::to_string(kMaxUniverse) + " elements");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            auto [it, inserted] = index_.emplace(names_[i], static_cast<int>(i));
            if (!inserted) throw InputError("duplicate label '" + names_[i] + "'");
        }
    }

    int size() const { return static_cast<int>(names_.size()); }
    bool empty() const { return names_.empty(); }
    Mask universe() const { return full_mask(size()); }

    const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& names() const { return names_; }

    bool contains(const std::string& label) const { return index_.count(label) != 0; }

    int index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw InputError("unknown label '" + label + "'");
        return it->second;
    }

    Mask mask_of(const std::vector<std::string>& labels) const {
        Mask m = 0;
        for (const auto& l : labels) m |= bit(index_of(l));
        return m;
    }

    std::vector<std::string> labels_of(Mask m) const {
        std::vector<std::string> out;
        for (int i : mask_bits(m)) out.push_back(name(i));
        return out;
    }

    bool same_names(const Labels& other) const { return names_ == other.names_; }

    /// True when both hold the same labels, order ignored.
    bool same_set(const Labels& other) const {
        if (size() != other.size()) return false;
        for (const auto& n : names_)
            if (!other.contains(n)) return false;
        return true;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

inline std::string join_labels(const std::vector<std::string>& labels) {
    std::string out = "{";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ",";
        out += labels[i];
    }
    out += "}";
    return out;
}

} // namespace equilib
