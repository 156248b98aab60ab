#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equilib/abstract_convex.hpp"
#include "equilib/finite_topology.hpp"
#include "equilib/rational.hpp"

namespace equilib {

/// Coercivity data for hypothesis (iv): a compact K plus either variant (a)
/// (a finite M with K ⊇ ∩_{y∈M} cl F(y)) or variant (b) entries.
struct CoercivityWitnessEntry {
    Mask n_set = 0;   // finite N
    Mask x_prime = 0; // X' with N ⊆ X'
    Mask l_set = 0;   // L_N, Gamma-convex relative to X'
};

struct CoercivityWitness {
    Mask k_set = 0;
    std::optional<Mask> m_set;                              // variant (a)
    std::optional<std::vector<CoercivityWitnessEntry>> entries; // variant (b)
};

/// A packaged minimax-inequality instance on a finite abstract convex space
/// with seeds equal to points.
struct MinimaxInstance {
    AbstractConvexSpace space;
    FiniteTopology topology;
    std::vector<std::vector<ExtRational>> f; // f[x][y]
    std::vector<std::vector<ExtRational>> g; // g[x][y]
    ExtRational gamma_level;
    std::optional<CoercivityWitness> witness;

    int size() const { return space.points().size(); }
    void validate() const;

    /// The level correspondence y -> {x : f(x,y) <= gamma}.
    SetCorrespondence level_correspondence() const;
};

enum class ClosednessMode { none, intersectionally, transfer };

/// Outcome of the hypothesis checks. Failures carry the violating points so
/// a verdict can be replayed against the instance.
struct HypothesisReport {
    bool cond_i = false;
    std::optional<std::pair<int, int>> cond_i_violation; // (x, y); y == x on diagonal checks
    bool cond_ii = false;
    ClosednessMode cond_ii_mode = ClosednessMode::none;
    std::optional<int> cond_ii_witness; // point separating ∩cl F from cl ∩F on failure
    bool cond_iii = false;
    std::optional<std::pair<int, int>> cond_iii_violation; // (x, escaping y)
    bool cond_iv = false;
    std::string cond_iv_variant; // "default", "a", "b", "n/a"
    std::string cond_iv_detail;
    bool kkm_checked = false; // exact enumeration completed under the cap
    bool kkm_holds = false;

    bool conditions_hold() const { return cond_i && cond_ii && cond_iii && cond_iv; }
    bool verified() const { return conditions_hold() && kkm_checked && kkm_holds; }
};

/// Checks conditions (i)-(iv) plus the partial KKM principle of the space.
/// A precomputed KKM verdict may be supplied to avoid re-running enumeration.
HypothesisReport check_hypotheses(const MinimaxInstance& inst,
                                  std::uint64_t kkm_cap = kDefaultKkmCap,
                                  const KkmVerdict* precomputed_kkm = nullptr);

struct MinimaxPointResult {
    std::optional<int> point; // x0 with f(x0, y) <= gamma for all y
    bool restricted_to_k = false;
    Mask scanned = 0;
};

/// Scans for x0 with max_y f(x0,y) <= gamma, in point order; the scan is
/// restricted to K when the level correspondence was transfer closed-valued.
/// A missing point under a verified report signals an implementation bug and
/// is surfaced as a violation (empty result), never silently.
MinimaxPointResult find_minimax_point(const MinimaxInstance& inst,
                                      const HypothesisReport& report);

/// Exact evaluation of inf_x sup_y f(x,y) <= sup_x g(x,x) with a replayable
/// certificate: f(argmin_x, argmax_y) and g(arg_diag, arg_diag) reproduce the
/// two sides.
struct InfsupCertificate {
    bool holds = false;
    ExtRational lhs; // inf_x sup_y f(x,y)
    ExtRational rhs; // sup_x g(x,x)
    int lhs_x = -1;
    int lhs_y = -1;
    int rhs_x = -1;
};

InfsupCertificate verify_infsup(const MinimaxInstance& inst);

/// Compact-case variant: (i) f <= g and g(x,x) <= gamma, (ii) the strict
/// upper level correspondence of f is unionly open-valued, (iii) strict upper
/// level sets of g(x,.) are Gamma-convex. Requires finite f, g, gamma.
HypothesisReport check_corollary_1(const MinimaxInstance& inst,
                                   std::uint64_t kkm_cap = kDefaultKkmCap);

/// Compact-case variant: (i) f <= g and g(x,x) <= gamma, (ii) f(.,y) generally
/// lower semicontinuous, (iii) f(x,.) quasiconcave. Requires finite f, g, gamma.
HypothesisReport check_corollary_2(const MinimaxInstance& inst,
                                   std::uint64_t kkm_cap = kDefaultKkmCap);

} // namespace equilib
