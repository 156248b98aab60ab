#include "equilib/io.hpp"

#include <fstream>

namespace equilib {

namespace {

json read_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open file '" + file.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError("file '" + file.string() + "' is not valid JSON: " + e.what());
    }
    return j;
}

const json& require_field(const json& j, const char* field, const std::string& where) {
    if (!j.is_object())
        throw InputError(where + ": expected an object with field '" + std::string(field) + "'");
    auto it = j.find(field);
    if (it == j.end()) throw InputError(where + ": missing field '" + std::string(field) + "'");
    return *it;
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array of labels");
    std::vector<std::string> out;
    for (const auto& item : j) {
        if (!item.is_string()) throw InputError(where + ": labels must be strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

} // namespace

Rational rational_from_json(const json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
        if (j.is_string()) return Rational::parse(j.get<std::string>());
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
    if (j.is_number())
        throw InputError(where + ": non-integer numbers must be written as strings "
                                 "(\"1/2\" or \"0.5\") to stay exact");
    throw InputError(where + ": expected a rational literal");
}

ExtRational ext_rational_from_json(const json& j, const std::string& where) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "+inf" || s == "inf") return ExtRational::pos_inf();
        if (s == "-inf") return ExtRational::neg_inf();
    }
    return ExtRational(rational_from_json(j, where));
}

json rational_to_json(const Rational& r) {
    if (r.is_integer()) return json(r.num());
    return json(r.str());
}

json ext_rational_to_json(const ExtRational& v) {
    if (v.is_finite()) return rational_to_json(v.finite_value());
    return json(v.str());
}

FiniteTopology load_topology(const std::filesystem::path& file) {
    const std::string where = "topology file '" + file.string() + "'";
    const json j = read_json_file(file);
    Labels points(string_list(require_field(j, "points", where), where + ", field 'points'"));
    const json& opens_json = require_field(j, "opens", where);
    if (!opens_json.is_array()) throw InputError(where + ": field 'opens' must be an array");
    std::vector<Mask> opens;
    for (const auto& open : opens_json) {
        auto labels = string_list(open, where + ", field 'opens'");
        try {
            opens.push_back(points.mask_of(labels));
        } catch (const InputError& e) {
            throw InputError(where + ", field 'opens': " + e.what());
        }
    }
    try {
        return FiniteTopology(std::move(points), std::move(opens));
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
}

json topology_to_json(const FiniteTopology& topology) {
    json j;
    j["points"] = topology.points().names();
    json opens = json::array();
    for (Mask s : topology.opens()) opens.push_back(topology.points().labels_of(s));
    j["opens"] = std::move(opens);
    return j;
}

namespace {

AbstractConvexSpace space_from_rule(const std::string& rule, Labels points, Labels seeds,
                                    const std::string& where) {
    if (rule == "identity") return AbstractConvexSpace::identity_rule(points, seeds);
    if (rule == "full") return AbstractConvexSpace::full_rule(points, seeds);
    constexpr const char* prefix = "constant:";
    if (rule.rfind(prefix, 0) == 0)
        return AbstractConvexSpace::constant_rule(points, seeds, rule.substr(9));
    throw InputError(where + ": unknown gamma_rule '" + rule +
                     "' (expected identity, full, or constant:<label>)");
}

} // namespace

AbstractConvexSpace load_space(const std::filesystem::path& file) {
    const std::string where = "space file '" + file.string() + "'";
    const json j = read_json_file(file);
    Labels points(string_list(require_field(j, "points", where), where + ", field 'points'"));
    Labels seeds(string_list(require_field(j, "seeds", where), where + ", field 'seeds'"));

    const bool has_table = j.is_object() && j.contains("gamma");
    const bool has_rule = j.is_object() && j.contains("gamma_rule");
    if (has_table == has_rule)
        throw InputError(where + ": give exactly one of 'gamma' or 'gamma_rule'");

    try {
        if (has_rule) {
            const json& rule = j.at("gamma_rule");
            if (!rule.is_string())
                throw InputError("field 'gamma_rule' must be a string");
            return space_from_rule(rule.get<std::string>(), std::move(points), std::move(seeds),
                                   where);
        }

        const json& table = j.at("gamma");
        if (!table.is_array()) throw InputError("field 'gamma' must be an array of entries");
        if (seeds.size() > kMaxSeeds)
            throw CapError(where + ": seed set exceeds the Gamma-table cap of " +
                           std::to_string(kMaxSeeds));
        std::vector<Mask> gamma(std::size_t{1} << seeds.size(), 0);
        std::vector<bool> present(gamma.size(), false);
        for (const auto& entry : table) {
            const std::string entry_where = where + ", field 'gamma'";
            Mask a = seeds.mask_of(string_list(require_field(entry, "A", entry_where),
                                               entry_where + " entry 'A'"));
            if (a == 0) throw InputError("gamma entry with empty 'A'");
            if (present[a]) throw InputError("duplicate gamma entry for A=" +
                                             join_labels(seeds.labels_of(a)));
            present[a] = true;
            gamma[a] = points.mask_of(string_list(require_field(entry, "value", entry_where),
                                                  entry_where + " entry 'value'"));
        }
        for (Mask a = 1; a < gamma.size(); ++a)
            if (!present[a])
                throw InputError("gamma table is missing the entry for A=" +
                                 join_labels(seeds.labels_of(a)));
        return AbstractConvexSpace(std::move(points), std::move(seeds), std::move(gamma));
    } catch (const InputError& e) {
        const std::string msg = e.what();
        if (msg.rfind(where, 0) == 0) throw;
        throw InputError(where + ": " + msg);
    }
}

json space_to_json(const AbstractConvexSpace& space) {
    json j;
    j["points"] = space.points().names();
    j["seeds"] = space.seeds().names();
    json table = json::array();
    for (Mask a = 1; a < space.gamma_table().size(); ++a) {
        json entry;
        entry["A"] = space.seeds().labels_of(a);
        entry["value"] = space.points().labels_of(space.gamma_table()[a]);
        table.push_back(std::move(entry));
    }
    j["gamma"] = std::move(table);
    return j;
}

namespace {

// Dense payoff tensor: nested arrays, one level per player, innermost a
// vector of k_i rationals.
void parse_payoff_level(const json& node, const MultiobjectiveGame* /*unused*/,
                        const std::vector<int>& dims, int criteria, std::size_t depth,
                        std::vector<std::vector<Rational>>& flat, const std::string& where) {
    if (depth == dims.size()) {
        if (!node.is_array() || node.size() != static_cast<std::size_t>(criteria))
            throw InputError(where + ": innermost payoff entries must be arrays of length " +
                             std::to_string(criteria));
        std::vector<Rational> v;
        v.reserve(static_cast<std::size_t>(criteria));
        for (const auto& c : node) v.push_back(rational_from_json(c, where));
        flat.push_back(std::move(v));
        return;
    }
    if (!node.is_array() || node.size() != static_cast<std::size_t>(dims[depth]))
        throw InputError(where + ": payoff tensor is ragged (expected " +
                         std::to_string(dims[depth]) + " entries at depth " +
                         std::to_string(depth) + ")");
    for (const auto& child : node)
        parse_payoff_level(child, nullptr, dims, criteria, depth + 1, flat, where);
}

} // namespace

MultiobjectiveGame load_game(const std::filesystem::path& file) {
    const std::string where = "game file '" + file.string() + "'";
    const json j = read_json_file(file);

    const json& players_json = require_field(j, "players", where);
    if (!players_json.is_array() || players_json.empty())
        throw InputError(where + ": field 'players' must be a nonempty array");

    std::vector<PlayerDef> players;
    std::vector<int> dims;
    for (const auto& p : players_json) {
        const std::string pwhere = where + ", field 'players'";
        PlayerDef def;
        const json& id = require_field(p, "id", pwhere);
        if (!id.is_string()) throw InputError(pwhere + ": player 'id' must be a string");
        def.id = id.get<std::string>();
        try {
            def.strategies = Labels(string_list(require_field(p, "strategies", pwhere),
                                                pwhere + " 'strategies'"));
        } catch (const InputError& e) {
            throw InputError(pwhere + ": " + e.what());
        }
        const json& criteria = require_field(p, "criteria", pwhere);
        if (!criteria.is_number_integer() || criteria.get<int>() < 1)
            throw InputError(pwhere + ": 'criteria' must be a positive integer");
        def.criteria = criteria.get<int>();
        dims.push_back(def.strategies.size());
        players.push_back(std::move(def));
    }

    const json& payoffs_json = require_field(j, "payoffs", where);
    std::vector<std::vector<std::vector<Rational>>> payoffs;
    for (const auto& p : players) {
        const std::string pwhere = where + ", field 'payoffs." + p.id + "'";
        if (!payoffs_json.is_object() || !payoffs_json.contains(p.id))
            throw InputError(where + ": field 'payoffs' is missing player '" + p.id + "'");
        std::vector<std::vector<Rational>> flat;
        parse_payoff_level(payoffs_json.at(p.id), nullptr, dims, p.criteria, 0, flat, pwhere);
        payoffs.push_back(std::move(flat));
    }

    std::vector<std::optional<AbstractConvexSpace>> convexity(players.size(), std::nullopt);
    if (j.contains("convexity")) {
        const json& conv = j.at("convexity");
        if (!conv.is_object())
            throw InputError(where + ": field 'convexity' must be an object");
        for (std::size_t i = 0; i < players.size(); ++i) {
            if (!conv.contains(players[i].id)) continue;
            const json& c = conv.at(players[i].id);
            const std::string cwhere = where + ", field 'convexity." + players[i].id + "'";
            if (!c.is_string())
                throw InputError(cwhere + ": expected a gamma_rule or a space file path");
            const std::string text = c.get<std::string>();
            if (text == "identity" || text == "full" || text.rfind("constant:", 0) == 0) {
                convexity[i] =
                    space_from_rule(text, players[i].strategies, players[i].strategies, cwhere);
            } else {
                auto space = load_space(file.parent_path() / text);
                if (!space.points().same_names(players[i].strategies))
                    throw InputError(cwhere + ": space points must equal the player's "
                                              "strategies (same order)");
                convexity[i] = std::move(space);
            }
        }
    }

    try {
        return MultiobjectiveGame(std::move(players), std::move(payoffs), std::move(convexity));
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
}

namespace {

json payoff_tensor_to_json(const MultiobjectiveGame& game, int player, std::size_t depth,
                           std::uint64_t base, std::uint64_t stride_product) {
    const int dim = game.player(static_cast<int>(depth)).strategies.size();
    const std::uint64_t stride = stride_product / static_cast<std::uint64_t>(dim);
    json out = json::array();
    for (int s = 0; s < dim; ++s) {
        const std::uint64_t idx = base + static_cast<std::uint64_t>(s) * stride;
        if (depth + 1 == static_cast<std::size_t>(game.player_count())) {
            json v = json::array();
            for (const auto& c : game.payoff_tensor(player)[idx]) v.push_back(rational_to_json(c));
            out.push_back(std::move(v));
        } else {
            out.push_back(payoff_tensor_to_json(game, player, depth + 1, idx, stride));
        }
    }
    return out;
}

} // namespace

json game_to_json(const MultiobjectiveGame& game) {
    json j;
    json players = json::array();
    for (int i = 0; i < game.player_count(); ++i) {
        json p;
        p["id"] = game.player(i).id;
        p["strategies"] = game.player(i).strategies.names();
        p["criteria"] = game.player(i).criteria;
        players.push_back(std::move(p));
    }
    j["players"] = std::move(players);
    json payoffs;
    for (int i = 0; i < game.player_count(); ++i)
        payoffs[game.player(i).id] =
            payoff_tensor_to_json(game, i, 0, 0, game.profile_count());
    j["payoffs"] = std::move(payoffs);
    return j;
}

WeightVector load_weights(const std::filesystem::path& file, const MultiobjectiveGame& game) {
    const std::string where = "weight file '" + file.string() + "'";
    const json j = read_json_file(file);
    const json& weights = require_field(j, "weights", where);
    std::vector<std::vector<Rational>> per_player;
    for (int i = 0; i < game.player_count(); ++i) {
        const auto& id = game.player(i).id;
        if (!weights.is_object() || !weights.contains(id))
            throw InputError(where + ": field 'weights' is missing player '" + id + "'");
        const json& w = weights.at(id);
        if (!w.is_array())
            throw InputError(where + ", field 'weights." + id + "': expected an array");
        std::vector<Rational> v;
        for (const auto& c : w)
            v.push_back(rational_from_json(c, where + ", field 'weights." + id + "'"));
        per_player.push_back(std::move(v));
    }
    try {
        WeightVector w(std::move(per_player));
        w.validate_for(game);
        return w;
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
}

json weights_to_json(const MultiobjectiveGame& game, const WeightVector& w) {
    json weights;
    for (int i = 0; i < game.player_count(); ++i) {
        json v = json::array();
        for (const auto& c : w.weights_for(i)) v.push_back(rational_to_json(c));
        weights[game.player(i).id] = std::move(v);
    }
    json j;
    j["weights"] = std::move(weights);
    return j;
}

StrategyProfile load_profile(const std::filesystem::path& file, const MultiobjectiveGame& game) {
    const std::string where = "profile file '" + file.string() + "'";
    const json j = read_json_file(file);
    const json& profile = require_field(j, "profile", where);
    if (!profile.is_object())
        throw InputError(where + ": field 'profile' must map player ids to strategies");
    std::map<std::string, std::string> choice;
    for (const auto& [id, strategy] : profile.items()) {
        if (!strategy.is_string())
            throw InputError(where + ", field 'profile." + id + "': expected a strategy label");
        choice[id] = strategy.get<std::string>();
    }
    try {
        return game.profile_from_labels(choice);
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
}

namespace {

std::vector<std::vector<ExtRational>> load_matrix(const json& j, int n,
                                                  const std::string& where) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(n))
        throw InputError(where + ": expected a dense " + std::to_string(n) + "x" +
                         std::to_string(n) + " matrix");
    std::vector<std::vector<ExtRational>> out;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
            throw InputError(where + ": matrix row has wrong length");
        std::vector<ExtRational> r;
        for (const auto& v : row) r.push_back(ext_rational_from_json(v, where));
        out.push_back(std::move(r));
    }
    return out;
}

Mask mask_field(const json& j, const char* field, const Labels& points,
                const std::string& where) {
    return points.mask_of(string_list(require_field(j, field, where),
                                      where + ", field '" + std::string(field) + "'"));
}

} // namespace

MinimaxInstance load_instance(const std::filesystem::path& file) {
    const std::string where = "instance file '" + file.string() + "'";
    const json j = read_json_file(file);

    const json& space_ref = require_field(j, "space", where);
    const json& topo_ref = require_field(j, "topology", where);
    if (!space_ref.is_string() || !topo_ref.is_string())
        throw InputError(where + ": 'space' and 'topology' must be file paths");
    AbstractConvexSpace space = load_space(file.parent_path() / space_ref.get<std::string>());
    FiniteTopology topology = load_topology(file.parent_path() / topo_ref.get<std::string>());

    const int n = space.points().size();
    auto f = load_matrix(require_field(j, "f", where), n, where + ", field 'f'");
    auto g = load_matrix(require_field(j, "g", where), n, where + ", field 'g'");
    ExtRational gamma =
        ext_rational_from_json(require_field(j, "gamma_level", where), where + ", field 'gamma_level'");

    std::optional<CoercivityWitness> witness;
    if (j.contains("witness")) {
        const json& w = j.at("witness");
        const std::string wwhere = where + ", field 'witness'";
        CoercivityWitness cw;
        cw.k_set = mask_field(w, "k_set", space.points(), wwhere);
        if (w.contains("variant_a"))
            cw.m_set = mask_field(w.at("variant_a"), "m_set", space.points(), wwhere);
        if (w.contains("variant_b")) {
            const json& entries = w.at("variant_b");
            if (!entries.is_array())
                throw InputError(wwhere + ": 'variant_b' must be an array of entries");
            std::vector<CoercivityWitnessEntry> list;
            for (const auto& e : entries) {
                CoercivityWitnessEntry entry;
                entry.n_set = mask_field(e, "n_set", space.points(), wwhere);
                entry.x_prime = mask_field(e, "x_prime", space.points(), wwhere);
                entry.l_set = mask_field(e, "l_set", space.points(), wwhere);
                list.push_back(entry);
            }
            cw.entries = std::move(list);
        }
        witness = std::move(cw);
    }

    MinimaxInstance inst{std::move(space), std::move(topology), std::move(f), std::move(g),
                         gamma, std::move(witness)};
    try {
        inst.validate();
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
    return inst;
}

json certificate_to_json(const MultiobjectiveGame& game, const EquilibriumCertificate& cert) {
    json j;
    j["kind"] = to_string(cert.kind);
    json profile;
    for (const auto& [id, label] : game.labels_of(cert.profile)) profile[id] = label;
    j["profile"] = std::move(profile);
    if (cert.weights) j["weights"] = weights_to_json(game, *cert.weights)["weights"];
    json evidence;
    if (cert.nash_evidence) {
        json nash;
        nash["max_regret"] = rational_to_json(cert.nash_evidence->max_regret);
        nash["player"] = game.player(cert.nash_evidence->player).id;
        nash["deviation"] = game.player(cert.nash_evidence->player)
                                .strategies.name(cert.nash_evidence->deviation);
        nash["reference"] = "Definition 15(ii)";
        evidence["weighted_nash"] = std::move(nash);
    }
    if (cert.pareto_evidence) {
        json pareto;
        pareto["no_dominating_deviation"] = true;
        pareto["weak"] = cert.pareto_evidence->weak;
        pareto["deviations_searched"] = cert.pareto_evidence->deviations_searched;
        pareto["reference"] = "Definition 13 / Definition 14";
        evidence["pareto"] = std::move(pareto);
    }
    j["evidence"] = std::move(evidence);
    j["reverified"] = cert.reverified;
    return j;
}

json hypothesis_report_to_json(const HypothesisReport& report, const Labels& points) {
    json j;
    auto violation = [&](const std::optional<std::pair<int, int>>& v) {
        json out;
        out["x"] = points.name(v->first);
        if (v->second >= 0) out["y"] = points.name(v->second);
        return out;
    };
    j["cond_i"] = {{"holds", report.cond_i}, {"reference", "Theorem 1 (i)"}};
    if (report.cond_i_violation) j["cond_i"]["violation"] = violation(report.cond_i_violation);
    j["cond_ii"] = {{"holds", report.cond_ii}, {"reference", "Theorem 1 (ii)"}};
    j["cond_ii"]["mode"] = report.cond_ii_mode == ClosednessMode::transfer ? "transfer"
                           : report.cond_ii_mode == ClosednessMode::intersectionally
                               ? "intersectionally"
                               : "none";
    if (report.cond_ii_witness) j["cond_ii"]["witness"] = points.name(*report.cond_ii_witness);
    j["cond_iii"] = {{"holds", report.cond_iii}, {"reference", "Theorem 1 (iii)"}};
    if (report.cond_iii_violation)
        j["cond_iii"]["violation"] = violation(report.cond_iii_violation);
    j["cond_iv"] = {{"holds", report.cond_iv},
                    {"variant", report.cond_iv_variant},
                    {"reference", "Theorem 1 (iv)"}};
    if (!report.cond_iv_detail.empty()) j["cond_iv"]["detail"] = report.cond_iv_detail;
    j["kkm"] = {{"checked", report.kkm_checked},
                {"holds", report.kkm_holds},
                {"reference", "Definition 7"}};
    j["verified"] = report.verified();
    return j;
}

json kkm_verdict_to_json(const KkmVerdict& verdict, const AbstractConvexSpace& space) {
    json j;
    j["holds"] = verdict.holds;
    j["exhaustive"] = verdict.exhaustive;
    j["reference"] = "Definition 7";
    if (verdict.counterexample) {
        json c;
        json values;
        for (int z = 0; z < space.seeds().size(); ++z)
            values[space.seeds().name(z)] = space.points().labels_of(
                verdict.counterexample->f.values[static_cast<std::size_t>(z)]);
        c["F"] = std::move(values);
        c["empty_family"] = space.seeds().labels_of(verdict.counterexample->empty_family);
        j["counterexample"] = std::move(c);
    }
    return j;
}

json infsup_to_json(const InfsupCertificate& cert, const Labels& points) {
    json j;
    j["holds"] = cert.holds;
    j["infsup_f"] = ext_rational_to_json(cert.lhs);
    j["sup_diag_g"] = ext_rational_to_json(cert.rhs);
    j["argmin_x"] = points.name(cert.lhs_x);
    j["argmax_y"] = points.name(cert.lhs_y);
    j["arg_diag_x"] = points.name(cert.rhs_x);
    j["reference"] = "Theorem 1 conclusion 2)";
    return j;
}

MultiobjectiveGame random_game(RandomSource& rng, const CorpusBounds& bounds) {
    static const std::vector<std::string> kStrategyNames = {"a", "b", "c", "d", "e", "f"};
    if (bounds.max_players < 1 || bounds.max_players > 6)
        throw InputError("corpus player bound must be between 1 and 6");
    if (bounds.max_strategies < 1 ||
        bounds.max_strategies > static_cast<int>(kStrategyNames.size()))
        throw InputError("corpus strategy bound must be between 1 and 6");
    if (bounds.max_criteria < 1 || bounds.max_criteria > 8)
        throw InputError("corpus criteria bound must be between 1 and 8");
    if (bounds.payoff_bound < 0) throw InputError("corpus payoff bound must be nonnegative");
    const int player_count = rng.range(1, bounds.max_players);
    std::vector<PlayerDef> players;
    std::vector<int> dims;
    for (int i = 0; i < player_count; ++i) {
        PlayerDef def;
        def.id = "p" + std::to_string(i + 1);
        const int strategies = rng.range(1, bounds.max_strategies);
        std::vector<std::string> names(kStrategyNames.begin(),
                                       kStrategyNames.begin() + strategies);
        def.strategies = Labels(std::move(names));
        def.criteria = rng.range(1, bounds.max_criteria);
        dims.push_back(strategies);
        players.push_back(std::move(def));
    }
    std::uint64_t profiles = 1;
    for (int d : dims) profiles *= static_cast<std::uint64_t>(d);

    std::vector<std::vector<std::vector<Rational>>> payoffs;
    for (int i = 0; i < player_count; ++i) {
        std::vector<std::vector<Rational>> tensor;
        tensor.reserve(profiles);
        for (std::uint64_t p = 0; p < profiles; ++p) {
            std::vector<Rational> v;
            for (int c = 0; c < players[static_cast<std::size_t>(i)].criteria; ++c)
                v.emplace_back(rng.range(-bounds.payoff_bound, bounds.payoff_bound));
            tensor.push_back(std::move(v));
        }
        payoffs.push_back(std::move(tensor));
    }
    return MultiobjectiveGame(std::move(players), std::move(payoffs));
}

std::vector<std::pair<std::string, json>> generate_corpus(std::uint64_t seed, int count,
                                                          const CorpusBounds& bounds) {
    if (count < 1) throw InputError("corpus count must be at least 1");
    RandomSource rng(seed);
    std::vector<std::pair<std::string, json>> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        std::string name = "game_" + std::to_string(i + 1);
        while (name.size() < 9) name.insert(5, "0");
        out.emplace_back(name + ".json", game_to_json(random_game(rng, bounds)));
    }
    return out;
}

} // namespace equilib
