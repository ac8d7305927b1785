#ifndef LIE2KIT_WORKSPACE_HPP
#define LIE2KIT_WORKSPACE_HPP

#include "lie2kit/classify.hpp"

#include <json.hpp>

#include <string>

namespace lie2kit::workspace {

using json = nlohmann::ordered_json;

/// Malformed input: missing field, unresolved reference, bad shape. Carries
/// the JSON path of the offending spot.
class WorkspaceError : public std::runtime_error {
public:
    WorkspaceError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

json read_file(const std::string& filename);
void write_file(const std::string& filename, const json& ws);

// ---------------------------------------------------------------------------
// Readers. All throw WorkspaceError on malformed input.
// ---------------------------------------------------------------------------

RationalMatrix parse_matrix(const json& j, int rows, int cols, const std::string& path);
MultiTensor parse_tensor(const json& j, int p, int q, int dim_anti, int dim_sym, int target,
                         const std::string& path);
TwoTermSpace parse_space(const json& j, const std::string& path);

Lie2Algebra get_algebra(const json& ws, const std::string& name);
Lie2Module get_module(const json& ws, const std::string& name);
Lie2Hom get_hom(const json& ws, const std::string& name);
CrossedModule get_crossed_module(const json& ws, const std::string& name);
Cochain get_cochain(const json& ws, const std::string& name);
Lie3Algebra get_lie3(const json& ws, const std::string& name);

struct SpliceSetup {
    ModuleSES ses;
    Cochain lambda;
};
SpliceSetup get_splice(const json& ws, const std::string& name);

struct GaugeSetup {
    ExtensionDatum datum;
    Cochain a;
    Cochain r_on_h;  // on the quotient, shaped against lambda_context
};
GaugeSetup get_gauge(const json& ws, const std::string& name);

/// Section of the workspace holding the named entity, or empty string.
std::string entity_kind(const json& ws, const std::string& name);

// ---------------------------------------------------------------------------
// Writers (deterministic layouts; write-then-read is bit-identical)
// ---------------------------------------------------------------------------

json matrix_to_json(const RationalMatrix& m);
json tensor_to_json(const MultiTensor& t);
json space_to_json(const TwoTermSpace& s);
json algebra_to_json(const Lie2Algebra& g);
json module_to_json(const Lie2Module& m, const std::string& algebra_name);
json hom_to_json(const Lie2Hom& f, const std::string& source, const std::string& target);
json crossed_module_to_json(const CrossedModule& cm, const std::string& m_name,
                            const std::string& g_name, const std::string& module_name);
json cochain_to_json(const Cochain& c, const std::string& algebra_name,
                     const std::string& module_name);
json cochain_blocks_to_json(const Cochain& c);
json lie3_to_json(const Lie3Algebra& t);

}  // namespace lie2kit::workspace

#endif
