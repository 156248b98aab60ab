// equilib: exact equilibrium verification for finite multiobjective games,
// plus a finite-model laboratory for abstract convex spaces, the partial KKM
// principle, and the minimax inequality behind the existence theorems.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "equilib/io.hpp"

namespace {

using equilib::json;

struct RunConfig {
    std::string command;
    std::string game_path;
    std::string weights_path;
    std::string profile_path;
    std::string space_path;
    std::string topology_path;
    std::string instance_path;
    std::string g_file;
    std::string g_preset = "f";
    std::string mode = "closed";
    std::string out_path;
    std::string corpus_dir = "corpus";
    int resolution = 2;
    int corollary = 0;
    int samples = 0;
    int count = 1;
    std::uint64_t seed = 1;
    std::uint64_t kkm_cap = equilib::kDefaultKkmCap;
    std::uint64_t profile_cap = equilib::kDefaultProfileCap;
    std::uint64_t sweep_cap = equilib::kDefaultSweepCap;
    bool enumerate = false;
    bool weak = false;
    equilib::CorpusBounds bounds;
};

constexpr int kExitAffirmative = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

equilib::GSpec make_gspec(const RunConfig& config, int n) {
    if (!config.g_file.empty()) {
        const json j = [&] {
            std::ifstream in(config.g_file);
            if (!in) throw equilib::InputError("cannot open file '" + config.g_file + "'");
            json parsed;
            in >> parsed;
            return parsed;
        }();
        if (!j.is_object() || !j.contains("g"))
            throw equilib::InputError("g file '" + config.g_file + "': missing field 'g'");
        const json& m = j.at("g");
        std::vector<std::vector<equilib::ExtRational>> values;
        if (!m.is_array() || m.size() != static_cast<std::size_t>(n))
            throw equilib::InputError("g file '" + config.g_file + "', field 'g': expected a " +
                                      std::to_string(n) + "x" + std::to_string(n) + " matrix");
        for (const auto& row : m) {
            if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
                throw equilib::InputError("g file '" + config.g_file +
                                          "', field 'g': matrix row has wrong length");
            std::vector<equilib::ExtRational> r;
            for (const auto& v : row)
                r.push_back(equilib::ext_rational_from_json(
                    v, "g file '" + config.g_file + "', field 'g'"));
            values.push_back(std::move(r));
        }
        return equilib::GSpec::from_matrix(std::move(values));
    }
    if (config.g_preset == "zero") return equilib::GSpec::zero();
    if (config.g_preset == "f") return equilib::GSpec::same_as_f();
    throw equilib::InputError("unknown g preset '" + config.g_preset + "' (expected f or zero)");
}

int run_verify(const RunConfig& config, json& report) {
    auto game = equilib::load_game(config.game_path);
    auto weights = equilib::load_weights(config.weights_path, game);
    auto profile = equilib::load_profile(config.profile_path, game);

    const auto nash = equilib::is_weighted_nash(game, weights, profile);
    const auto pareto = equilib::is_pareto_equilibrium(game, profile, false);
    const auto weak = equilib::is_pareto_equilibrium(game, profile, true);

    json verdict;
    verdict["weighted_nash"] = {{"holds", nash.holds}, {"reference", "Definition 15(ii)"}};
    verdict["weighted_nash"]["max_regret"] = equilib::rational_to_json(nash.evidence.max_regret);
    verdict["weighted_nash"]["worst_player"] = game.player(nash.evidence.player).id;
    verdict["weighted_nash"]["worst_deviation"] =
        game.player(nash.evidence.player).strategies.name(nash.evidence.deviation);
    verdict["pareto"] = {{"holds", pareto.holds}, {"reference", "Definition 14"}};
    verdict["weak_pareto"] = {{"holds", weak.holds}, {"reference", "Definition 14"}};
    auto violation_json = [&](const equilib::ParetoCheck& check) {
        json v;
        v["player"] = game.player(check.violation->first).id;
        v["dominating_deviation"] = game.player(check.violation->first)
                                        .strategies.name(check.violation->second);
        return v;
    };
    if (!pareto.holds) verdict["pareto"]["violation"] = violation_json(pareto);
    if (!weak.holds) verdict["weak_pareto"]["violation"] = violation_json(weak);
    report["verdict"] = std::move(verdict);
    report["normalized_weights"] = weights.normalized();
    report["strictly_positive_weights"] = weights.strictly_positive();
    return nash.holds ? kExitAffirmative : kExitNegative;
}

int run_solve(const RunConfig& config, json& report) {
    auto game = equilib::load_game(config.game_path);
    auto weights = equilib::load_weights(config.weights_path, game);

    if (config.enumerate) {
        auto found = equilib::enumerate_weighted_nash(game, weights, config.profile_cap);
        json list = json::array();
        for (const auto& cert : found) list.push_back(equilib::certificate_to_json(game, cert));
        report["equilibria"] = std::move(list);
        report["count"] = found.size();
        report["reference"] = "Definition 15(ii)";
        return found.empty() ? kExitNegative : kExitAffirmative;
    }

    auto gspec = make_gspec(config, static_cast<int>(game.profile_count()));
    auto result =
        equilib::certify_via_minimax(game, weights, gspec, std::nullopt, config.kkm_cap);
    if (result.kkm)
        report["kkm"] = equilib::kkm_verdict_to_json(
            *result.kkm, equilib::product_strategy_space(game));
    if (result.hypotheses)
        report["hypotheses"] = equilib::hypothesis_report_to_json(
            *result.hypotheses, equilib::product_strategy_space(game).points());
    report["reference"] = "Theorem 2";
    if (!result.success) {
        report["failure"] = result.failure;
        return kExitNegative;
    }
    report["certificate"] = equilib::certificate_to_json(game, *result.certificate);
    return kExitAffirmative;
}

int run_pareto(const RunConfig& config, json& report) {
    auto game = equilib::load_game(config.game_path);

    if (!config.weights_path.empty() && !config.enumerate) {
        auto weights = equilib::load_weights(config.weights_path, game);
        auto gspec = make_gspec(config, static_cast<int>(game.profile_count()));
        auto result =
            equilib::pareto_via_weights(game, weights, gspec, std::nullopt, config.kkm_cap);
        report["reference"] = "Theorem 3 via Lemma 2";
        if (result.kkm)
            report["kkm"] = equilib::kkm_verdict_to_json(*result.kkm,
                                                         equilib::product_strategy_space(game));
        if (result.hypotheses)
            report["hypotheses"] = equilib::hypothesis_report_to_json(
                *result.hypotheses, equilib::product_strategy_space(game).points());
        if (!result.success) {
            report["failure"] = result.failure;
            return kExitNegative;
        }
        report["certificate"] = equilib::certificate_to_json(game, *result.certificate);
        return kExitAffirmative;
    }

    auto found = equilib::enumerate_pareto(game, config.weak, config.profile_cap);
    report["reference"] = "Definition 14";
    if (config.enumerate) {
        json list = json::array();
        for (const auto& cert : found) list.push_back(equilib::certificate_to_json(game, cert));
        report["equilibria"] = std::move(list);
        report["count"] = found.size();
    } else {
        report["count"] = found.size();
        if (!found.empty())
            report["certificate"] = equilib::certificate_to_json(game, found.front());
    }
    return found.empty() ? kExitNegative : kExitAffirmative;
}

int run_sweep(const RunConfig& config, json& report) {
    auto game = equilib::load_game(config.game_path);
    auto result =
        equilib::weight_sweep(game, config.resolution, config.profile_cap, config.sweep_cap);
    json entries = json::array();
    for (const auto& entry : result.entries) {
        if (entry.certificates.empty()) continue; // only report weights with hits
        json e;
        e["weights"] = equilib::weights_to_json(game, entry.weights)["weights"];
        json certs = json::array();
        for (const auto& cert : entry.certificates)
            certs.push_back(equilib::certificate_to_json(game, cert));
        e["equilibria"] = std::move(certs);
        entries.push_back(std::move(e));
    }
    report["entries"] = std::move(entries);
    report["weight_combinations"] = result.weight_combination_count;
    json profiles = json::array();
    for (const auto& p : result.distinct_profiles) {
        json m;
        for (const auto& [id, label] : game.labels_of(p)) m[id] = label;
        profiles.push_back(std::move(m));
    }
    report["distinct_profiles"] = std::move(profiles);
    report["classification_reference"] = "Lemma 2";
    report["note"] = "the sweep output is a subset of the Pareto set, not all of it";
    return kExitAffirmative;
}

int run_kkm_check(const RunConfig& config, json& report) {
    auto space = equilib::load_space(config.space_path);
    auto topology = equilib::load_topology(config.topology_path);
    const auto mode =
        config.mode == "open" ? equilib::ValueMode::open : equilib::ValueMode::closed;
    if (config.mode != "open" && config.mode != "closed")
        throw equilib::InputError("unknown mode '" + config.mode + "' (expected closed or open)");
    if (config.samples < 0) throw equilib::InputError("sample count must not be negative");

    equilib::KkmVerdict verdict =
        config.samples > 0
            ? equilib::falsify_kkm_random(space, topology, mode, config.samples, config.seed)
            : equilib::check_kkm_principle(space, topology, mode, config.kkm_cap);
    report["mode"] = config.mode;
    if (config.samples > 0) {
        report["samples"] = config.samples;
        report["seed"] = config.seed;
    }
    report["verdict"] = equilib::kkm_verdict_to_json(verdict, space);
    return verdict.holds ? kExitAffirmative : kExitNegative;
}

int run_minimax_check(const RunConfig& config, json& report) {
    auto inst = equilib::load_instance(config.instance_path);
    const auto& points = inst.space.points();

    equilib::HypothesisReport hypotheses;
    switch (config.corollary) {
        case 0: hypotheses = equilib::check_hypotheses(inst, config.kkm_cap); break;
        case 1: hypotheses = equilib::check_corollary_1(inst, config.kkm_cap); break;
        case 2: hypotheses = equilib::check_corollary_2(inst, config.kkm_cap); break;
        default: throw equilib::InputError("corollary must be 1 or 2");
    }
    report["hypotheses"] = equilib::hypothesis_report_to_json(hypotheses, points);
    if (config.corollary != 0) report["reference"] = "Corollary " + std::to_string(config.corollary);

    bool conclusions_ok = true;
    if (hypotheses.verified() && config.corollary != 2) {
        auto point = equilib::find_minimax_point(inst, hypotheses);
        json c1;
        c1["reference"] = "Theorem 1 conclusion 1)";
        if (point.point) {
            c1["point"] = points.name(*point.point);
            c1["restricted_to_k"] = point.restricted_to_k;
        } else {
            c1["violation"] = "no point satisfies the bound despite verified hypotheses";
            conclusions_ok = false;
        }
        report["conclusion_1"] = std::move(c1);
    }
    auto infsup = equilib::verify_infsup(inst);
    report["conclusion_2"] = equilib::infsup_to_json(infsup, points);
    if (hypotheses.verified() && !infsup.holds) conclusions_ok = false;

    return hypotheses.verified() && conclusions_ok ? kExitAffirmative : kExitNegative;
}

int run_corpus(const RunConfig& config, json& report) {
    auto corpus = equilib::generate_corpus(config.seed, config.count, config.bounds);
    std::filesystem::create_directories(config.corpus_dir);
    json files = json::array();
    for (const auto& [name, doc] : corpus) {
        const auto path = std::filesystem::path(config.corpus_dir) / name;
        std::ofstream out(path);
        if (!out) throw equilib::InputError("cannot write file '" + path.string() + "'");
        out << doc.dump(2) << "\n";
        files.push_back(path.string());
    }
    report["seed"] = config.seed;
    report["count"] = config.count;
    report["files"] = std::move(files);
    return kExitAffirmative;
}

int run(const RunConfig& config, json& report) {
    report["command"] = config.command;
    if (config.command == "verify") return run_verify(config, report);
    if (config.command == "solve") return run_solve(config, report);
    if (config.command == "pareto") return run_pareto(config, report);
    if (config.command == "sweep") return run_sweep(config, report);
    if (config.command == "kkm-check") return run_kkm_check(config, report);
    if (config.command == "minimax-check") return run_minimax_check(config, report);
    if (config.command == "corpus") return run_corpus(config, report);
    throw equilib::InputError("unknown command '" + config.command + "'");
}

void emit(const RunConfig& config, json& report, int exit_code, double ms) {
    report["exit_code"] = exit_code;
    report["timing_ms"] = ms; // excluded from the determinism contract
    std::cout << report.dump(2) << "\n";
    if (!config.out_path.empty()) {
        std::ofstream out(config.out_path);
        if (out) out << report.dump(2) << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact equilibria for finite multiobjective games and finite KKM models"};
    app.require_subcommand(1);
    RunConfig config;

    auto add_caps = [&](CLI::App* cmd) {
        cmd->add_option("--kkm-cap", config.kkm_cap, "cap on enumerated correspondence values");
        cmd->add_option("--profile-cap", config.profile_cap, "cap on enumerated profiles");
        cmd->add_option("--sweep-cap", config.sweep_cap, "cap on sweep grid x profiles");
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", config.out_path, "also write the report to this file");
    };

    auto* verify = app.add_subcommand("verify", "check a profile against its definitions");
    verify->add_option("--game", config.game_path, "game file")->required();
    verify->add_option("--weights", config.weights_path, "weight file")->required();
    verify->add_option("--profile", config.profile_path, "profile file")->required();
    add_out(verify);

    auto* solve = app.add_subcommand("solve", "find or certify a weighted Nash equilibrium");
    solve->add_option("--game", config.game_path, "game file")->required();
    solve->add_option("--weights", config.weights_path, "weight file")->required();
    solve->add_flag("--enumerate", config.enumerate, "list all weighted Nash equilibria");
    solve->add_option("--g-preset", config.g_preset, "auxiliary g: f or zero");
    solve->add_option("--g-file", config.g_file, "auxiliary g as a dense matrix file");
    add_caps(solve);
    add_out(solve);

    auto* pareto = app.add_subcommand("pareto", "find, certify, or list Pareto equilibria");
    pareto->add_option("--game", config.game_path, "game file")->required();
    pareto->add_flag("--weak", config.weak, "use the weak Pareto notion");
    pareto->add_flag("--enumerate", config.enumerate, "list all (weak) Pareto equilibria");
    pareto->add_option("--weights", config.weights_path,
                       "certify through the weighted scalarization instead of enumerating");
    pareto->add_option("--g-preset", config.g_preset, "auxiliary g: f or zero");
    pareto->add_option("--g-file", config.g_file, "auxiliary g as a dense matrix file");
    add_caps(pareto);
    add_out(pareto);

    auto* sweep = app.add_subcommand("sweep", "weighted-Nash survey over a normalized weight grid");
    sweep->add_option("--game", config.game_path, "game file")->required();
    sweep->add_option("--resolution", config.resolution, "grid resolution r (steps of 1/r)")
        ->required();
    add_caps(sweep);
    add_out(sweep);

    auto* kkm = app.add_subcommand("kkm-check", "test the (partial) KKM principle on a space");
    kkm->add_option("--space", config.space_path, "space file")->required();
    kkm->add_option("--topology", config.topology_path, "topology file")->required();
    kkm->add_option("--mode", config.mode, "closed (partial principle) or open");
    kkm->add_option("--samples", config.samples, "sample instead of enumerating");
    kkm->add_option("--seed", config.seed, "sampling seed");
    add_caps(kkm);
    add_out(kkm);

    auto* minimax = app.add_subcommand("minimax-check", "verify a minimax-inequality instance");
    minimax->add_option("--instance", config.instance_path, "instance file")->required();
    minimax->add_option("--corollary", config.corollary, "check corollary 1 or 2 instead");
    add_caps(minimax);
    add_out(minimax);

    auto* corpus = app.add_subcommand("corpus", "generate a reproducible random game corpus");
    corpus->add_option("--seed", config.seed, "generator seed")->required();
    corpus->add_option("--count", config.count, "number of games")->required();
    corpus->add_option("--dir", config.corpus_dir, "output directory");
    corpus->add_option("--max-players", config.bounds.max_players, "player bound");
    corpus->add_option("--max-strategies", config.bounds.max_strategies, "strategy bound");
    corpus->add_option("--max-criteria", config.bounds.max_criteria, "criteria bound");
    corpus->add_option("--payoff-bound", config.bounds.payoff_bound, "payoff magnitude bound");
    add_out(corpus);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInput;
    }
    config.command = app.get_subcommands().front()->get_name();

    json report;
    const auto start = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    };
    try {
        const int code = run(config, report);
        emit(config, report, code, elapsed_ms());
        return code;
    } catch (const equilib::CapError& e) {
        report["error"] = {{"class", "cap"}, {"message", e.what()}};
        emit(config, report, kExitCap, elapsed_ms());
        return kExitCap;
    } catch (const std::exception& e) {
        report["error"] = {{"class", "input"}, {"message", e.what()}};
        emit(config, report, kExitInput, elapsed_ms());
        return kExitInput;
    }
}
