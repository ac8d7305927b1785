#include "lie2kit/workspace.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace lie2kit;
namespace ws = lie2kit::workspace;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitMalformed = 2;

int degree_ceiling() {
    const char* env = std::getenv("LIE2KIT_DEGREE_CEILING");
    if (!env) return 4;
    return std::atoi(env);
}

int report_outcome(const std::string& label, const CheckReport& rep) {
    if (rep.ok()) {
        std::cout << label << ": pass\n";
        return kExitPass;
    }
    std::cout << label << ": FAIL\n";
    for (const auto& f : rep.failures) std::cout << "  " << f.str() << "\n";
    return kExitMathFailure;
}

int validate_entity(const ws::json& w, const std::string& name) {
    std::string kind = ws::entity_kind(w, name);
    if (kind.empty()) throw ws::WorkspaceError(name, "unresolved reference");
    if (kind == "spaces") {
        ws::parse_space(w.at("spaces").at(name), "spaces." + name);
        std::cout << name << ": pass (space)\n";
        return kExitPass;
    }
    if (kind == "algebras") return report_outcome(name, check_lie2(ws::get_algebra(w, name)));
    if (kind == "modules") return report_outcome(name, check_action(ws::get_module(w, name)));
    if (kind == "homomorphisms") return report_outcome(name, check_hom(ws::get_hom(w, name)));
    if (kind == "crossed_modules")
        return report_outcome(name, check_crossed_module(ws::get_crossed_module(w, name)));
    if (kind == "lie3_algebras")
        return report_outcome(name, check_lie3_strict(ws::get_lie3(w, name)));
    if (kind == "cochains") {
        ws::get_cochain(w, name);
        std::cout << name << ": pass (cochain shapes)\n";
        return kExitPass;
    }
    if (kind == "splices")
        return report_outcome(name, check_module_ses(ws::get_splice(w, name).ses));
    if (kind == "gauge_setups") {
        ws::GaugeSetup g = ws::get_gauge(w, name);
        return report_outcome(name, check_lambda_condition(g.datum).report);
    }
    throw ws::WorkspaceError(name, "unknown entity kind");
}

std::vector<std::string> all_entities(const ws::json& w) {
    std::vector<std::string> names;
    for (const char* kind : {"spaces", "algebras", "modules", "homomorphisms", "crossed_modules",
                             "cochains", "lie3_algebras", "splices", "gauge_setups"}) {
        if (!w.contains(kind)) continue;
        for (const auto& [name, value] : w.at(kind).items()) {
            (void)value;
            names.push_back(name);
        }
    }
    return names;
}

void emit(ws::json& w, const std::string& out_file) {
    if (out_file.empty()) return;
    ws::write_file(out_file, w);
    std::cout << "wrote " << out_file << "\n";
}

void print_class(const Vec& cls) {
    std::cout << "class_id = [";
    for (size_t i = 0; i < cls.size(); ++i) std::cout << (i ? " " : "") << cls[i].str();
    std::cout << "]\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "lie2kit: exact computations with Lie 2-algebras, their cohomology and crossed modules"};
    app.require_subcommand(1);

    std::string file, entity, out_file;
    int degree = 3;

    auto add_common = [&](CLI::App* cmd, bool need_entity) {
        cmd->add_option("--file", file, "workspace JSON file")->required();
        auto* opt = cmd->add_option("--entity", entity, "entity name");
        if (need_entity) opt->required();
        cmd->add_option("--out", out_file, "write constructed entities to this workspace file");
        return cmd;
    };

    CLI::App* validate = add_common(app.add_subcommand("validate", "run the named checks"), false);
    CLI::App* cohomology_cmd =
        add_common(app.add_subcommand("cohomology", "betti number and representatives"), true);
    cohomology_cmd->add_option("--degree", degree, "cohomology degree")->required();
    CLI::App* product =
        add_common(app.add_subcommand("crossed-product", "crossed product of g and m"), true);
    CLI::App* cone =
        add_common(app.add_subcommand("mapping-cone", "strict Lie 3-algebra on the cone"), true);
    CLI::App* derivations =
        add_common(app.add_subcommand("derivations", "Der(g,m) as a strict Lie 2-algebra"), true);
    CLI::App* h1cmd =
        add_common(app.add_subcommand("h1", "Lie algebra structure on H^1(g,m)"), true);
    CLI::App* mucmd =
        add_common(app.add_subcommand("mu", "classifying 3-cocycle and its class"), true);
    CLI::App* gauge_cmd =
        add_common(app.add_subcommand("gauge", "gauge transformation between epsilons"), true);
    CLI::App* splice_cmd =
        add_common(app.add_subcommand("splice", "crossed module from a module extension"), true);
    CLI::App* connecting_cmd = add_common(
        app.add_subcommand("connecting", "connecting homomorphism of a module sequence"), true);
    connecting_cmd->add_option("--degree", degree, "source degree")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitMalformed;
    }

    try {
        ws::json w = ws::read_file(file);

        if (validate->parsed()) {
            int worst = kExitPass;
            std::vector<std::string> targets =
                entity.empty() ? all_entities(w) : std::vector<std::string>{entity};
            for (const auto& name : targets) worst = std::max(worst, validate_entity(w, name));
            return worst;
        }

        if (cohomology_cmd->parsed()) {
            if (degree > degree_ceiling()) {
                std::cerr << "degree " << degree << " exceeds the configured ceiling "
                          << degree_ceiling() << " (set LIE2KIT_DEGREE_CEILING to raise it)\n";
                return kExitMalformed;
            }
            Lie2Module m = ws::get_module(w, entity);
            CheckReport action = check_action(m);
            if (!action.ok()) return report_outcome(entity, action);
            CohomologyResult h = cohomology(m, degree);
            std::cout << "H^" << degree << "(" << entity << "): betti = " << h.betti << "\n";
            ws::json blocks = ws::json::array();
            for (const auto& rep : h.representatives)
                blocks.push_back(ws::cochain_blocks_to_json(rep));
            ws::json result;
            result["degree"] = degree;
            result["betti"] = h.betti;
            result["representatives"] = blocks;
            std::cout << result.dump(2) << "\n";
            if (!out_file.empty()) {
                int k = 0;
                for (const auto& rep : h.representatives)
                    w["cochains"][entity + "_h" + std::to_string(degree) + "_rep" +
                                  std::to_string(k++)] =
                        ws::cochain_to_json(rep, w.at("modules").at(entity).at("algebra"), entity);
                emit(w, out_file);
            }
            return kExitPass;
        }

        if (product->parsed()) {
            CrossedModule cm = ws::get_crossed_module(w, entity);
            CheckReport act = check_deriv_action(cm.m, cm.action);
            if (!act.ok()) return report_outcome(entity + " action", act);
            Lie2Algebra prod = crossed_product(cm.g, cm.m, cm.action);
            CheckReport rep = check_lie2(prod);
            if (!rep.ok()) return report_outcome(entity + " product", rep);
            w["algebras"][entity + "_product"] = ws::algebra_to_json(prod);
            std::cout << entity << "_product: dims (" << prod.space.dim0 << ", "
                      << prod.space.dim1 << "), pass\n";
            emit(w, out_file);
            return kExitPass;
        }

        if (cone->parsed()) {
            CrossedModule cm = ws::get_crossed_module(w, entity);
            CheckReport pre = check_crossed_module(cm);
            if (!pre.ok()) return report_outcome(entity, pre);
            Lie3Algebra t = mapping_cone(cm);
            CheckReport rep = check_lie3_strict(t);
            if (!rep.ok()) return report_outcome(entity + " cone", rep);
            w["lie3_algebras"][entity + "_cone"] = ws::lie3_to_json(t);
            std::cout << entity << "_cone: dims (" << t.space.dim0 << ", " << t.space.dim1 << ", "
                      << t.space.dim2 << "), pass\n";
            emit(w, out_file);
            return kExitPass;
        }

        if (derivations->parsed()) {
            CrossedModule cm = ws::get_crossed_module(w, entity);
            DerComplexResult d = der_complex(cm);
            CheckReport rep = check_lie2(d.alg);
            if (!rep.ok()) return report_outcome(entity + " derivations", rep);
            w["algebras"][entity + "_der"] = ws::algebra_to_json(d.alg);
            std::cout << entity << "_der: Der0 dim " << d.alg.space.dim0 << ", Der1 dim "
                      << d.alg.space.dim1 << ", pass\n";
            emit(w, out_file);
            return kExitPass;
        }

        if (h1cmd->parsed()) {
            CrossedModule cm = ws::get_crossed_module(w, entity);
            H1Result h = h1_lie_algebra(cm);
            if (!h.inn_closed) {
                std::cout << entity << ": FAIL\n  inner derivations are not an ideal\n";
                return kExitMathFailure;
            }
            std::cout << "H^1(" << entity << "): betti = " << h.betti << "\n";
            ws::json result;
            result["betti"] = h.betti;
            result["bracket"] = ws::tensor_to_json(h.bracket);
            std::cout << result.dump(2) << "\n";
            return kExitPass;
        }

        if (mucmd->parsed()) {
            CrossedModule cm = ws::get_crossed_module(w, entity);
            CheckReport pre = check_crossed_module(cm);
            if (!pre.ok()) return report_outcome(entity, pre);
            MuResult m = mu(cm);
            print_class(m.class_id);
            std::cout << "H^3(h, V): betti = " << m.h3.betti << "\n";
            if (!out_file.empty()) {
                w["algebras"][entity + "_h"] = ws::algebra_to_json(m.four.h);
                w["modules"][entity + "_hV"] = ws::module_to_json(m.four.action, entity + "_h");
                w["cochains"][entity + "_theta"] =
                    ws::cochain_to_json(m.theta, entity + "_h", entity + "_hV");
                emit(w, out_file);
            }
            return kExitPass;
        }

        if (gauge_cmd->parsed()) {
            ws::GaugeSetup setup = ws::get_gauge(w, entity);
            GaugeResult g = gauge_transform(setup.datum, setup.a, setup.r_on_h);
            int outcome = report_outcome(entity + " morphism", g.morphism);
            if (outcome != kExitPass) return outcome;
            MuResult ms = mu(g.source), mt = mu(g.target);
            if (ms.class_id != mt.class_id) {
                std::cout << entity << ": FAIL\n  gauge transformation moved the class\n";
                return kExitMathFailure;
            }
            print_class(ms.class_id);
            if (!out_file.empty()) {
                w["algebras"][entity + "_m_src"] = ws::algebra_to_json(g.source.m);
                w["algebras"][entity + "_m_dst"] = ws::algebra_to_json(g.target.m);
                w["homomorphisms"][entity + "_F"] =
                    ws::hom_to_json(g.f, entity + "_m_src", entity + "_m_dst");
                emit(w, out_file);
            }
            return kExitPass;
        }

        if (splice_cmd->parsed()) {
            ws::SpliceSetup setup = ws::get_splice(w, entity);
            CrossedModule cm = splice(setup.ses, setup.lambda);
            CheckReport rep = check_crossed_module(cm);
            if (!rep.ok()) return report_outcome(entity + " crossed module", rep);
            std::cout << entity << ": strong crossed module on dims (" << cm.m.space.dim0 << ","
                      << cm.m.space.dim1 << ") -> (" << cm.g.space.dim0 << "," << cm.g.space.dim1
                      << "), pass\n";
            if (!out_file.empty()) {
                w["algebras"][entity + "_m"] = ws::algebra_to_json(cm.m);
                w["algebras"][entity + "_g"] = ws::algebra_to_json(cm.g);
                w["modules"][entity + "_action"] =
                    ws::module_to_json(cm.action.base, entity + "_g");
                w["crossed_modules"][entity + "_cm"] = ws::crossed_module_to_json(
                    cm, entity + "_m", entity + "_g", entity + "_action");
                emit(w, out_file);
            }
            return kExitPass;
        }

        if (connecting_cmd->parsed()) {
            ws::SpliceSetup setup = ws::get_splice(w, entity);
            ConnectingMap con = connecting_map(setup.ses, degree);
            std::cout << "connecting H^" << degree << "(h,Q) -> H^" << degree + 1
                      << "(h,V): " << con.hq.betti << " -> " << con.hv.betti << "\n";
            std::cout << con.map.str() << "\n";
            auto lam_cls = class_coordinates(con.hq, flatten(setup.lambda, con.hq.layout));
            if (lam_cls) {
                std::cout << "image of [lambda]:\n";
                print_class(con.map.apply(*lam_cls));
            }
            return kExitPass;
        }
    } catch (const ws::WorkspaceError& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::runtime_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitMathFailure;
    }
    return kExitMalformed;
}
