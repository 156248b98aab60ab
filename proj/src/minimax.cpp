#include "equilib/minimax.hpp"

namespace equilib {

void MinimaxInstance::validate() const {
    if (!space.seeds().same_names(space.points()))
        throw InputError("minimax instance needs seeds equal to points (same order)");
    if (!topology.points().same_names(space.points()))
        throw InputError("instance topology points must equal the space points (same order)");
    const auto n = static_cast<std::size_t>(size());
    if (f.size() != n || g.size() != n)
        throw InputError("f and g must be dense over points x points (missing rows)");
    for (const auto& row : f)
        if (row.size() != n) throw InputError("f has a short row");
    for (const auto& row : g)
        if (row.size() != n) throw InputError("g has a short row");
    if (witness) {
        const Mask all = space.point_universe();
        if (witness->k_set == 0) throw InputError("coercivity witness needs a nonempty K");
        if (!subset_of(witness->k_set, all))
            throw InputError("coercivity K lies outside the point set");
        if (!witness->m_set && !witness->entries)
            throw InputError("coercivity witness needs variant (a) or (b)");
        if (witness->m_set && *witness->m_set == 0)
            throw InputError("coercivity variant (a) needs a nonempty M");
        if (witness->m_set && !subset_of(*witness->m_set, all))
            throw InputError("coercivity M lies outside the point set");
        if (witness->entries) {
            if (witness->entries->empty())
                throw InputError("coercivity variant (b) needs at least one entry");
            for (const auto& e : *witness->entries) {
                if (e.x_prime == 0)
                    throw InputError("coercivity variant (b) entry needs a nonempty X'");
                if (!subset_of(e.n_set | e.x_prime | e.l_set, all))
                    throw InputError("coercivity variant (b) entry lies outside the point set");
            }
        }
    }
}

SetCorrespondence MinimaxInstance::level_correspondence() const {
    SetCorrespondence corr;
    corr.domain = space.points();
    corr.values.assign(static_cast<std::size_t>(size()), 0);
    for (int y = 0; y < size(); ++y) {
        Mask value = 0;
        for (int x = 0; x < size(); ++x)
            if (f[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] <= gamma_level)
                value |= bit(x);
        corr.values[static_cast<std::size_t>(y)] = value;
    }
    return corr;
}

namespace {

void run_kkm_check(const MinimaxInstance& inst, std::uint64_t kkm_cap,
                   const KkmVerdict* precomputed, HypothesisReport& report) {
    if (precomputed) {
        report.kkm_checked = precomputed->exhaustive;
        report.kkm_holds = precomputed->holds;
        return;
    }
    try {
        KkmVerdict verdict =
            check_kkm_principle(inst.space, inst.topology, ValueMode::closed, kkm_cap);
        report.kkm_checked = true;
        report.kkm_holds = verdict.holds;
    } catch (const CapError&) {
        report.kkm_checked = false;
        report.kkm_holds = false;
    }
}

Mask closure_intersection(const MinimaxInstance& inst, const std::vector<Mask>& level_values,
                          Mask over) {
    Mask inter = inst.space.point_universe();
    for (int y : mask_bits(over))
        inter &= inst.topology.closure(level_values[static_cast<std::size_t>(y)]);
    return inter;
}

void check_coercivity(const MinimaxInstance& inst, const std::vector<Mask>& level_values,
                      HypothesisReport& report) {
    if (!inst.witness) {
        // On a finite model every subset is compact, so K = X together with a
        // singleton M satisfies variant (a) outright.
        report.cond_iv = true;
        report.cond_iv_variant = "default";
        return;
    }
    const auto& w = *inst.witness;
    if (w.m_set) {
        Mask inter = closure_intersection(inst, level_values, *w.m_set);
        if (subset_of(inter, w.k_set)) {
            report.cond_iv = true;
            report.cond_iv_variant = "a";
            return;
        }
        report.cond_iv_detail = "variant (a): intersection of closures over M escapes K";
    }
    if (w.entries) {
        bool all_ok = true;
        for (std::size_t i = 0; i < w.entries->size(); ++i) {
            const auto& e = (*w.entries)[i];
            if (!is_gamma_convex_relative(inst.space, e.l_set, e.x_prime)) {
                report.cond_iv_detail = "variant (b) entry " + std::to_string(i) +
                                        ": L_N is not Gamma-convex relative to X'";
                all_ok = false;
                break;
            }
            if (!subset_of(e.n_set, e.x_prime)) {
                report.cond_iv_detail =
                    "variant (b) entry " + std::to_string(i) + ": N is not within X'";
                all_ok = false;
                break;
            }
            Mask inter = e.l_set & closure_intersection(inst, level_values, e.x_prime);
            if (inter == 0) {
                report.cond_iv_detail = "variant (b) entry " + std::to_string(i) +
                                        ": L_N ∩ closures over X' is empty";
                all_ok = false;
                break;
            }
            if (!subset_of(inter, w.k_set)) {
                report.cond_iv_detail = "variant (b) entry " + std::to_string(i) +
                                        ": L_N ∩ closures over X' escapes K";
                all_ok = false;
                break;
            }
        }
        if (all_ok) {
            report.cond_iv = true;
            report.cond_iv_variant = "b";
            return;
        }
    }
    report.cond_iv = false;
    if (report.cond_iv_variant.empty()) report.cond_iv_variant = w.m_set ? "a" : "b";
}

} // namespace

HypothesisReport check_hypotheses(const MinimaxInstance& inst, std::uint64_t kkm_cap,
                                  const KkmVerdict* precomputed_kkm) {
    inst.validate();
    const int n = inst.size();
    HypothesisReport report;

    report.cond_i = true;
    for (int x = 0; x < n && report.cond_i; ++x) {
        if (!(inst.g[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)] <=
              inst.gamma_level)) {
            report.cond_i = false;
            report.cond_i_violation = {x, x};
        }
    }

    SetCorrespondence level = inst.level_correspondence();
    ClosednessReport closedness = classify_correspondence(inst.topology, level);
    if (closedness.transfer_closed) {
        report.cond_ii = true;
        report.cond_ii_mode = ClosednessMode::transfer;
    } else if (closedness.intersectionally_closed) {
        report.cond_ii = true;
        report.cond_ii_mode = ClosednessMode::intersectionally;
    } else {
        Mask inter_cl = inst.space.point_universe();
        Mask inter = inst.space.point_universe();
        for (Mask v : level.values) {
            inter_cl &= inst.topology.closure(v);
            inter &= v;
        }
        report.cond_ii_witness = mask_bits(inter_cl ^ inst.topology.closure(inter)).front();
    }

    report.cond_iii = true;
    for (int x = 0; x < n && report.cond_iii; ++x) {
        Mask upper_f = 0;
        Mask upper_g = 0;
        for (int y = 0; y < n; ++y) {
            if (inst.f[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] >
                inst.gamma_level)
                upper_f |= bit(y);
            if (inst.g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] >
                inst.gamma_level)
                upper_g |= bit(y);
        }
        if (upper_f == 0) continue; // co_Gamma over an empty family is empty
        Mask hull = gamma_hull(inst.space, upper_f);
        if (!subset_of(hull, upper_g)) {
            report.cond_iii = false;
            report.cond_iii_violation = {x, mask_bits(hull & ~upper_g).front()};
        }
    }

    check_coercivity(inst, level.values, report);
    run_kkm_check(inst, kkm_cap, precomputed_kkm, report);
    return report;
}

MinimaxPointResult find_minimax_point(const MinimaxInstance& inst,
                                      const HypothesisReport& report) {
    if (!report.verified())
        throw PreconditionError(
            "find_minimax_point needs verified hypotheses (conditions and KKM principle)");
    const int n = inst.size();
    MinimaxPointResult result;
    result.restricted_to_k =
        report.cond_ii_mode == ClosednessMode::transfer && inst.witness.has_value();
    result.scanned =
        result.restricted_to_k ? inst.witness->k_set : inst.space.point_universe();

    for (int x = 0; x < n; ++x) {
        if (!(result.scanned & bit(x))) continue;
        bool ok = true;
        for (int y = 0; y < n && ok; ++y)
            ok = inst.f[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] <=
                 inst.gamma_level;
        if (ok) {
            result.point = x;
            return result;
        }
    }
    return result;
}

InfsupCertificate verify_infsup(const MinimaxInstance& inst) {
    inst.validate();
    const int n = inst.size();
    InfsupCertificate cert;
    for (int x = 0; x < n; ++x) {
        ExtRational row_max = inst.f[static_cast<std::size_t>(x)][0];
        int row_arg = 0;
        for (int y = 1; y < n; ++y) {
            const auto& v = inst.f[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
            if (v > row_max) {
                row_max = v;
                row_arg = y;
            }
        }
        if (x == 0 || row_max < cert.lhs) {
            cert.lhs = row_max;
            cert.lhs_x = x;
            cert.lhs_y = row_arg;
        }
    }
    for (int x = 0; x < n; ++x) {
        const auto& v = inst.g[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)];
        if (x == 0 || v > cert.rhs) {
            cert.rhs = v;
            cert.rhs_x = x;
        }
    }
    cert.holds = cert.lhs <= cert.rhs;
    return cert;
}

namespace {

void require_finite(const MinimaxInstance& inst) {
    if (!inst.gamma_level.is_finite())
        throw InputError("corollary checks need a finite gamma");
    for (const auto& row : inst.f)
        for (const auto& v : row)
            if (!v.is_finite()) throw InputError("corollary checks need finite f");
    for (const auto& row : inst.g)
        for (const auto& v : row)
            if (!v.is_finite()) throw InputError("corollary checks need finite g");
}

// (i) of both corollaries: f <= g pointwise and g(x,x) <= gamma.
void check_pointwise_bound(const MinimaxInstance& inst, HypothesisReport& report) {
    const int n = inst.size();
    report.cond_i = true;
    for (int x = 0; x < n && report.cond_i; ++x)
        for (int y = 0; y < n; ++y) {
            const bool diag_ok =
                x != y || inst.g[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)] <=
                              inst.gamma_level;
            if (inst.f[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] >
                    inst.g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] ||
                !diag_ok) {
                report.cond_i = false;
                report.cond_i_violation = {x, y};
                break;
            }
        }
}

} // namespace

HypothesisReport check_corollary_1(const MinimaxInstance& inst, std::uint64_t kkm_cap) {
    inst.validate();
    require_finite(inst);
    const int n = inst.size();
    HypothesisReport report;
    check_pointwise_bound(inst, report);

    // (ii): y -> {x : f(x,y) > gamma} unionly open-valued.
    SetCorrespondence upper;
    upper.domain = inst.space.points();
    upper.values.assign(static_cast<std::size_t>(n), 0);
    for (int y = 0; y < n; ++y) {
        Mask value = 0;
        for (int x = 0; x < n; ++x)
            if (inst.f[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] >
                inst.gamma_level)
                value |= bit(x);
        upper.values[static_cast<std::size_t>(y)] = value;
    }
    report.cond_ii = classify_correspondence(inst.topology, upper).unionly_open;
    report.cond_ii_mode = ClosednessMode::none;

    // (iii): {y : g(x,y) > gamma} Gamma-convex for each x.
    report.cond_iii = true;
    for (int x = 0; x < n && report.cond_iii; ++x) {
        Mask upper_g = 0;
        for (int y = 0; y < n; ++y)
            if (inst.g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] >
                inst.gamma_level)
                upper_g |= bit(y);
        if (!is_gamma_convex(inst.space, upper_g)) {
            report.cond_iii = false;
            Mask meet = inst.space.points_as_seeds(upper_g);
            Mask escape = meet == 0 ? 0 : gamma_hull(inst.space, meet) & ~upper_g;
            report.cond_iii_violation = {x, escape == 0 ? -1 : mask_bits(escape).front()};
        }
    }

    report.cond_iv = true;
    report.cond_iv_variant = "n/a";
    run_kkm_check(inst, kkm_cap, nullptr, report);
    return report;
}

HypothesisReport check_corollary_2(const MinimaxInstance& inst, std::uint64_t kkm_cap) {
    inst.validate();
    require_finite(inst);
    const int n = inst.size();
    HypothesisReport report;
    check_pointwise_bound(inst, report);

    // (ii): for each fixed y, x -> f(x,y) is g.l.s.c.; the transposed matrix
    // makes y the correspondence domain.
    std::vector<std::vector<ExtRational>> transposed(
        static_cast<std::size_t>(n), std::vector<ExtRational>(static_cast<std::size_t>(n)));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            transposed[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] =
                inst.f[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    report.cond_ii = check_glsc(inst.space, inst.topology, transposed, SemiSense::lower);
    report.cond_ii_mode = ClosednessMode::none;

    // (iii): f(x,.) quasiconcave for each x.
    report.cond_iii = true;
    for (int x = 0; x < n && report.cond_iii; ++x)
        report.cond_iii = check_quasi(inst.space, inst.f[static_cast<std::size_t>(x)],
                                      QuasiMode::concave);

    report.cond_iv = true;
    report.cond_iv_variant = "n/a";
    run_kkm_check(inst, kkm_cap, nullptr, report);
    return report;
}

} // namespace equilib
