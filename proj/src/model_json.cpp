#include "ifacemetrics/model_json.hpp"
#include "ifacemetrics/errors.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <nlohmann/json.hpp>
#include <sstream>

namespace ifacemetrics {
namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& at, std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> optional = {}) {
    if (!obj.is_object()) throw SchemaError(at, "expected an object");
    for (const auto& key : required)
        if (!obj.contains(key)) throw SchemaError(at + "/" + std::string(key), "missing required field");
    for (const auto& [key, value] : obj.items()) {
        const auto known = [&](auto list) {
            return std::find(list.begin(), list.end(), key) != list.end();
        };
        if (!known(required) && !known(optional)) throw SchemaError(at + "/" + key, "unknown field");
    }
}

const std::string& as_string(const json& v, const std::string& at) {
    if (!v.is_string()) throw SchemaError(at, "expected a string");
    return v.get_ref<const std::string&>();
}

bool as_bool(const json& v, const std::string& at) {
    if (!v.is_boolean()) throw SchemaError(at, "expected a boolean");
    return v.get<bool>();
}

const json& as_array(const json& v, const std::string& at) {
    if (!v.is_array()) throw SchemaError(at, "expected an array");
    return v;
}

TypeName as_type_name(const json& v, const std::string& at) {
    try {
        return TypeName(as_string(v, at));
    } catch (const DomainError& e) {
        throw SchemaError(at, e.what());
    }
}

MethodSignature read_signature(const json& node, const std::string& at) {
    require_keys(node, at, {"name", "returns", "params"});
    std::vector<std::string> params;
    const json& ps = as_array(node["params"], at + "/params");
    for (std::size_t k = 0; k < ps.size(); ++k) params.push_back(as_string(ps[k], at + "/params/" + std::to_string(k)));
    try {
        MethodSignature sig = normalize_signature(as_string(node["name"], at + "/name"),
                                                  as_string(node["returns"], at + "/returns"), params);
        return sig;
    } catch (const NormalizationError& e) {
        throw SchemaError(at, e.what());
    }
}

TypeDecl read_type(const json& node, const std::string& at) {
    require_keys(node, at, {"name", "kind"}, {"signatures", "supertypes", "flags"});
    TypeDecl decl;
    decl.id = as_type_name(node["name"], at + "/name");
    const std::string& kind = as_string(node["kind"], at + "/kind");
    if (kind == "interface") decl.kind = TypeKind::Interface;
    else if (kind == "class") decl.kind = TypeKind::Class;
    else throw SchemaError(at + "/kind", "expected \"interface\" or \"class\", got \"" + kind + "\"");

    if (node.contains("signatures")) {
        const json& sigs = as_array(node["signatures"], at + "/signatures");
        for (std::size_t k = 0; k < sigs.size(); ++k) {
            const std::string here = at + "/signatures/" + std::to_string(k);
            if (!decl.signatures.insert(read_signature(sigs[k], here)).second)
                throw SchemaError(here, "duplicate signature");
        }
    }
    if (node.contains("supertypes")) {
        const json& supers = as_array(node["supertypes"], at + "/supertypes");
        for (std::size_t k = 0; k < supers.size(); ++k)
            decl.declared_supertypes.push_back(as_type_name(supers[k], at + "/supertypes/" + std::to_string(k)));
    }
    if (node.contains("flags")) {
        const json& flags = node["flags"];
        require_keys(flags, at + "/flags", {}, {"test", "external"});
        if (flags.contains("test")) decl.flags.is_test = as_bool(flags["test"], at + "/flags/test");
        if (flags.contains("external")) decl.flags.is_external = as_bool(flags["external"], at + "/flags/external");
    }
    return decl;
}

}  // namespace

std::vector<TypeDecl> model_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    require_keys(doc, "", {"schema", "types"});
    if (as_string(doc["schema"], "/schema") != kModelSchema)
        throw SchemaError("/schema", "expected \"" + std::string(kModelSchema) + "\"");
    const json& types = as_array(doc["types"], "/types");
    std::vector<TypeDecl> out;
    out.reserve(types.size());
    for (std::size_t k = 0; k < types.size(); ++k) out.push_back(read_type(types[k], "/types/" + std::to_string(k)));
    return out;
}

std::string model_to_json(const std::vector<TypeDecl>& decls) {
    std::vector<const TypeDecl*> sorted;
    for (const auto& decl : decls) sorted.push_back(&decl);
    std::sort(sorted.begin(), sorted.end(), [](const TypeDecl* a, const TypeDecl* b) { return a->id < b->id; });

    json types = json::array();
    for (const TypeDecl* d : sorted) {
        const TypeDecl& decl = *d;
        json sigs = json::array();
        for (const auto& sig : decl.signatures)
            sigs.push_back({{"name", sig.name}, {"returns", sig.return_type}, {"params", sig.param_types}});
        json supers = json::array();
        for (const auto& s : decl.declared_supertypes) supers.push_back(s.qualified());
        types.push_back({{"name", decl.id.qualified()},
                         {"kind", std::string(to_string(decl.kind))},
                         {"signatures", std::move(sigs)},
                         {"supertypes", std::move(supers)},
                         {"flags", {{"test", decl.flags.is_test}, {"external", decl.flags.is_external}}}});
    }
    json doc = {{"schema", std::string(kModelSchema)}, {"types", std::move(types)}};
    return doc.dump(2) + "\n";
}

std::vector<TypeDecl> load_model_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

void save_model_json(const CodeModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << model_to_json(model.declarations());
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace ifacemetrics
