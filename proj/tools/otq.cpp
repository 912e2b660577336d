// Command-line surface: validation, closed invariants with move-stability
// reports, datum axiom checks, state spaces and graph evaluation.
//
// Exit codes: 0 success, 1 validation failure, 2 tolerance breach, 3 I/O.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "otq/evaluator.hpp"
#include "otq/moves.hpp"
#include "otq/wilson.hpp"

using namespace otq;

namespace {

std::string fixture(const std::string& rel) { return std::string(FIXTURES_DIR) + "/" + rel; }

FusionCategory load_category(const std::string& spec) {
    if (spec.find('/') != std::string::npos || spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
        return FusionCategory::load_file(spec);
    }
    return FusionCategory::load_file(fixture("categories/" + spec + ".json"));
}

Skeleton load_manifold(const std::string& spec) {
    if (spec.find('/') != std::string::npos) return Skeleton::load_file(spec);
    return library_skeleton(spec);
}

void emit(const nlohmann::json& doc, const std::string& out) {
    if (out == "tsv") {
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            std::cout << it.key() << '\t'
                      << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
                      << '\n';
        }
    } else {
        std::cout << doc.dump(2) << '\n';
    }
}

struct Options {
    std::string cat, manifold, surface = "t2", graph, out = "json";
    uint64_t seed = 1;
    int moves = 0;
    double tol = 1e-9;
    std::size_t cap = 10'000'000;
};

int cmd_validate(const Options& opt) {
    nlohmann::json doc;
    if (!opt.cat.empty()) {
        FusionCategory cat = load_category(opt.cat);
        auto rep = cat.check_pentagon();
        doc["category"] = opt.cat;
        doc["pentagon_residual"] = rep.max_residual;
        if (rep.max_residual > opt.tol) {
            doc["worst_tuple"] = rep.worst_tuple;
            emit(doc, opt.out);
            return 1;
        }
    }
    if (!opt.manifold.empty()) {
        Skeleton sk = load_manifold(opt.manifold);
        auto errs = sk.validate();
        doc["manifold"] = opt.manifold;
        doc["skeleton_id"] = sk.id;
        doc["violations"] = errs;
        if (!errs.empty()) {
            emit(doc, opt.out);
            return 1;
        }
        doc["order_found"] = !solve_local_order(sk, {1, true}).empty();
    }
    doc["ok"] = true;
    emit(doc, opt.out);
    return 0;
}

int cmd_invariant(const Options& opt) {
    FusionCategory cat = load_category(opt.cat);
    OrbifoldDatum datum = datum_from_spherical(cat);
    Skeleton sk = load_manifold(opt.manifold);
    SolveOptions first{1, true};
    auto orders = solve_local_order(sk, first);
    if (orders.empty()) throw validation_error("skeleton admits no orientation order");
    cplx value = evaluate_closed(sk, orders[0], datum, opt.cap);
    double drift = 0.0;
    nlohmann::json log = nlohmann::json::array();
    if (opt.moves > 0) {
        WalkResult walk = random_walk(sk, orders[0], opt.moves, opt.seed);
        drift = std::abs(evaluate_closed(walk.sk, walk.bits, datum, opt.cap) - value);
        log = walk.log;
    }
    nlohmann::json doc{{"manifold", opt.manifold},   {"category", opt.cat},
                       {"value_re", value.real()},   {"value_im", value.imag()},
                       {"skeleton_id", sk.id},       {"move_log_hash", move_log_hash(log)},
                       {"moves", opt.moves},         {"max_drift", drift}};
    emit(doc, opt.out);
    return drift > opt.tol ? 2 : 0;
}

int cmd_axioms(const Options& opt) {
    FusionCategory cat = load_category(opt.cat);
    OrbifoldDatum datum = datum_from_spherical(cat);
    AxiomReport report = check_O_axioms(datum);
    nlohmann::json axioms = nlohmann::json::array();
    for (const auto& ax : report.axioms) {
        axioms.push_back({{"name", ax.name}, {"residual", ax.residual}});
    }
    nlohmann::json doc{{"category", opt.cat},
                       {"axioms", axioms},
                       {"max_residual", report.max_residual()}};
    emit(doc, opt.out);
    return report.max_residual() > opt.tol ? 2 : 0;
}

int cmd_statespace(const Options& opt) {
    FusionCategory cat = load_category(opt.cat);
    OrbifoldDatum datum = datum_from_spherical(cat);
    std::string kind;
    if (opt.surface == "s2") kind = "s2_parallel";
    else if (opt.surface == "t2") kind = "t2_theta";
    else throw validation_error("unknown surface (use s2 or t2): " + opt.surface);
    StateSpace space = state_space(make_cylinder(kind), datum, 1e-6, opt.cap);
    nlohmann::json doc{{"category", opt.cat},
                       {"surface", opt.surface},
                       {"cylinder", kind},
                       {"dimension", space.dimension}};
    emit(doc, opt.out);
    return 0;
}

int cmd_graph(const Options& opt) {
    FusionCategory cat = load_category(opt.cat);
    OrbifoldDatum datum = datum_from_spherical(cat);
    Skeleton sk = load_manifold(opt.manifold);
    std::string path = opt.graph.find('/') != std::string::npos ? opt.graph
                                                                : fixture("graphs/" + opt.graph);
    std::ifstream in(path);
    if (!in) throw io_error("cannot open graph file: " + path);
    nlohmann::json graph_doc = nlohmann::json::parse(in);
    RibbonDiagramDecorated diagram = decorate_diagram(sk, graph_doc, datum);
    cplx value = evaluate_graph(diagram, opt.cap);
    nlohmann::json doc{{"manifold", opt.manifold}, {"category", opt.cat},
                       {"graph", opt.graph},       {"value_re", value.real()},
                       {"value_im", value.imag()}, {"skeleton_id", sk.id}};
    emit(doc, opt.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbifold graph TQFT toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--cat", opt.cat, "category name (fixture) or JSON file");
        sub->add_option("--tol", opt.tol, "tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--cap", opt.cap, "contraction size cap");
        sub->add_option("--out", opt.out, "output format: json or tsv")
            ->check(CLI::IsMember({"json", "tsv"}));
    };

    CLI::App* validate = app.add_subcommand("validate", "validate a category and/or skeleton");
    add_common(validate);
    validate->add_option("--manifold", opt.manifold, "skeleton name or JSON file");

    CLI::App* invariant = app.add_subcommand("invariant", "closed invariant with move stability");
    add_common(invariant);
    invariant->add_option("--manifold", opt.manifold, "skeleton name or JSON file")->required();
    invariant->add_option("--seed", opt.seed, "random-walk seed");
    invariant->add_option("--moves", opt.moves, "number of stability moves");

    CLI::App* axioms = app.add_subcommand("axioms", "datum identity residuals");
    add_common(axioms);

    CLI::App* statespace = app.add_subcommand("statespace", "surface state-space dimension");
    add_common(statespace);
    statespace->add_option("--surface", opt.surface, "surface: s2 or t2");

    CLI::App* graph = app.add_subcommand("graph", "evaluate a colored ribbon graph");
    add_common(graph);
    graph->add_option("--manifold", opt.manifold, "skeleton name or JSON file")->required();
    graph->add_option("--graph", opt.graph, "graph fixture name or JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (invariant->parsed()) {
            if (opt.cat.empty()) throw validation_error("--cat is required");
            return cmd_invariant(opt);
        }
        if (axioms->parsed()) {
            if (opt.cat.empty()) throw validation_error("--cat is required");
            return cmd_axioms(opt);
        }
        if (statespace->parsed()) {
            if (opt.cat.empty()) throw validation_error("--cat is required");
            return cmd_statespace(opt);
        }
        if (graph->parsed()) {
            if (opt.cat.empty()) throw validation_error("--cat is required");
            return cmd_graph(opt);
        }
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 1;
    } catch (const tolerance_error& e) {
        std::cerr << "tolerance error: " << e.what() << '\n';
        return 2;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
