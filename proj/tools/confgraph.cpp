// confgraph: confusability-graph analyses of a scene file.
//
// Exit codes: 0 all selected checks pass or are not applicable, 1 a check
// failed, 2 the input could not be used.

#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "confgraph/channel.hpp"
#include "confgraph/estimation.hpp"
#include "confgraph/graph.hpp"
#include "confgraph/io.hpp"
#include "confgraph/subspace.hpp"

namespace {

using namespace confgraph;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

const std::vector<std::string> kAllChecks = {"prop1", "prop2", "deco", "dfs", "reduce"};

struct Options {
    std::string scene_path;
    std::optional<double> tol;
    std::string format = "json";
    std::string checks;
    std::size_t trials = 100;
    std::uint64_t rng_seed = kDefaultRngSeed;
    bool complete = false;
};

void emit(const Json& j) {
    std::cout << j.dump(2) << '\n';
}

int cmd_graph(const Scene& scene, const Options& opt) {
    const ConfusabilityGraph graph = build_graph(*scene.rep, scene.state, scene.tolerance);
    if (opt.format == "dot") {
        std::cout << to_dot(graph);
    } else {
        emit(graph_to_json(graph));
    }
    return kExitPass;
}

int cmd_family(const Scene& scene, const Options& opt) {
    const ConfusabilityGraph graph = build_graph(*scene.rep, scene.state, scene.tolerance);
    SubspaceFamily family = component_subspaces(*scene.rep, scene.state, graph, scene.tolerance);
    if (opt.complete) {
        family = complete_family(family, scene.tolerance);
    }
    emit(family_to_json(family));
    return kExitPass;
}

std::vector<std::string> select_checks(const Scene& scene, const std::string& list) {
    if (list.empty()) {
        std::vector<std::string> checks;
        for (const auto& c : kAllChecks) {
            if (c != "dfs" || scene.channel_source != ChannelSource::None) {
                checks.push_back(c);
            }
        }
        return checks;
    }
    std::vector<std::string> checks;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (std::find(kAllChecks.begin(), kAllChecks.end(), item) == kAllChecks.end()) {
            throw ParseError("unknown check '" + item + "' (expected prop1, prop2, deco, dfs, reduce)");
        }
        if (std::find(checks.begin(), checks.end(), item) == checks.end()) {
            checks.push_back(item);
        }
    }
    if (std::find(checks.begin(), checks.end(), "dfs") != checks.end() &&
        scene.channel_source == ChannelSource::None) {
        throw ParseError("check 'dfs' needs a channel in the scene");
    }
    return checks;
}

int cmd_verify(const Scene& scene, const Options& opt) {
    const auto checks = select_checks(scene, opt.checks);
    const ProjectiveRep& rep = *scene.rep;
    const Tolerance tol = scene.tolerance;

    Json report;
    report["group"] = scene.group->description();
    report["dim"] = rep.dim();
    report["tolerance"] = tol.eps();
    report["rng_seed"] = opt.rng_seed;
    report["trials"] = opt.trials;
    Json results = Json::object();
    bool passed = true;

    const ConfusabilityGraph graph = build_graph(rep, scene.state, tol);
    std::optional<SubspaceFamily> family;
    std::string family_error;
    try {
        family = component_subspaces(rep, scene.state, graph, tol);
    } catch (const Error& e) {
        family_error = e.what();
    }
    auto family_failure = [&](const char* name) {
        results[name] = {{"verdict", to_string(Verdict::Fail)}, {"error", family_error}};
        passed = false;
    };

    for (const auto& check : checks) {
        if (check == "prop1") {
            const Prop1Report r = verify_prop1(graph);
            Json j = to_json(r);
            bool generated_matches = false;
            try {
                identity_subgroup(graph);
                generated_matches = true;
            } catch (const GraphConsistencyError& e) {
                j["generated_subgroup_error"] = e.what();
            }
            j["generated_subgroup_matches"] = generated_matches;
            passed = passed && r.verdict == Verdict::Pass && generated_matches;
            results["prop1"] = std::move(j);
        } else if (check == "prop2") {
            const Prop2Report r = verify_prop2(rep, scene.state, graph);
            passed = passed && r.verdict != Verdict::Fail;
            results["prop2"] = to_json(r);
        } else if (check == "deco") {
            if (!family) {
                family_failure("deco");
                continue;
            }
            Rng rng(opt.rng_seed);
            const DecoherenceReport r = verify_decoherence(rep, scene.state, *family, rng, 4, 1e-9, tol);
            passed = passed && r.verdict == Verdict::Pass;
            results["deco"] = to_json(r);
        } else if (check == "dfs") {
            const auto channel = scene_channel(scene);
            DfsOptions dfs;
            dfs.trials = opt.trials;
            dfs.rng_seed = opt.rng_seed;
            const DfsReport r = verify_dfs(*channel, rep, scene.state, dfs, tol);
            const OrbitFixedPointReport orbit_report = orbit_fixed_points(*channel, rep, scene.state, tol);
            Json j = to_json(r);
            j["orbit_fixed_points"] = to_json(orbit_report);
            passed = passed && r.verdict == Verdict::Pass && orbit_report.consistent;
            results["dfs"] = std::move(j);
        } else if (check == "reduce") {
            if (!family) {
                family_failure("reduce");
                continue;
            }
            const ReductionReport r = verify_reduction(rep, scene.state, *family, 1e-9, tol);
            passed = passed && r.verdict == Verdict::Pass;
            results["reduce"] = to_json(r);
        }
    }
    report["checks"] = std::move(results);
    report["passed"] = passed;
    emit(report);
    return passed ? kExitPass : kExitFail;
}

int cmd_estimate(const Scene& scene) {
    if (!scene.povm_seed || !scene.cost) {
        throw ParseError("estimate needs both povm_seed and cost in the scene");
    }
    Json report;
    report["group"] = scene.group->description();
    report["tolerance"] = scene.tolerance.eps();
    try {
        const CovariantPovm povm = validate_povm(*scene.rep, *scene.povm_seed, scene.tolerance);
        const CostReport cost = evaluate_cost(*scene.rep, scene.state, povm, *scene.cost, scene.tolerance);
        report["valid"] = true;
        report["completeness_residual"] = povm.completeness_residual();
        report["min_eigenvalue"] = povm.min_eigenvalue();
        const Json cost_json = to_json(cost);
        for (auto& [key, value] : cost_json.items()) {
            report[key] = value;
        }
        emit(report);
        return kExitPass;
    } catch (const PovmError& e) {
        report["valid"] = false;
        report["error"] = e.what();
        report["residual"] = e.residual();
        emit(report);
        std::cerr << "confgraph: " << e.what() << '\n';
        return kExitFail;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Confusability graphs of group orbits: components, subspaces, channels, estimation"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    double tol_value = 0.0;
    app.add_option("--scene", opt.scene_path, "Scene JSON file")->required()->check(CLI::ExistingFile);
    auto* tol_opt = app.add_option("--tol", tol_value, "Overlap threshold eps, overrides the scene");
    app.add_option("--format", opt.format, "Graph output format")->check(CLI::IsMember({"dot", "json"}));
    app.add_option("--checks", opt.checks, "Comma-separated subset of prop1,prop2,deco,dfs,reduce");
    app.add_option("--trials", opt.trials, "Random trials per component for the dfs check");
    app.add_option("--rng-seed", opt.rng_seed, "Seed for every randomized check");
    app.add_flag("--complete", opt.complete, "family: append the orthogonal complement");

    auto* graph_cmd = app.add_subcommand("graph", "Confusability graph as DOT or JSON");
    auto* family_cmd = app.add_subcommand("family", "Component subspaces and projectors as JSON");
    auto* verify_cmd = app.add_subcommand("verify", "Run structural and channel checks");
    auto* estimate_cmd = app.add_subcommand("estimate", "Worst-case cost of a covariant POVM");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }
    if (*tol_opt) {
        opt.tol = tol_value;
    }

    Scene scene;
    try {
        scene = load_scene(opt.scene_path, opt.tol);
    } catch (const std::exception& e) {
        std::cerr << "confgraph: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        if (graph_cmd->parsed()) {
            return cmd_graph(scene, opt);
        }
        if (family_cmd->parsed()) {
            return cmd_family(scene, opt);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(scene, opt);
        }
        if (estimate_cmd->parsed()) {
            return cmd_estimate(scene);
        }
    } catch (const ParseError& e) {
        std::cerr << "confgraph: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "confgraph: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitInput;
}
