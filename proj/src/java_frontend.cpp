#include "ifacemetrics/errors.hpp"
#include "ifacemetrics/java_frontend.hpp"

#include <algorithm>
#include <fnmatch.h>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace ifacemetrics::java {
namespace fs = std::filesystem;

namespace {

/// Qualified names declared by the corpus, with a simple-name index.
class Corpus {
public:
    void add(const std::string& qualified) {
        if (!names_.insert(qualified).second) return;
        const auto dot = qualified.rfind('.');
        by_simple_[dot == std::string::npos ? qualified : qualified.substr(dot + 1)].push_back(qualified);
    }

    bool has(const std::string& qualified) const { return names_.count(qualified) != 0; }

    std::optional<std::string> unique_simple(const std::string& simple) const {
        const auto it = by_simple_.find(simple);
        if (it == by_simple_.end() || it->second.size() != 1) return std::nullopt;
        return it->second.front();
    }

private:
    std::set<std::string> names_;
    std::map<std::string, std::vector<std::string>> by_simple_;
};

class Resolver {
public:
    Resolver(const Corpus& corpus, const SourceUnit& unit) : corpus_(corpus), unit_(unit) {}

    /// Corpus name for `ref`, or the best qualified guess (import target),
    /// or `ref` unchanged.
    std::string resolve(const std::string& ref, const RawTypeDecl& from) const {
        const auto dot = ref.find('.');
        if (dot == std::string::npos) return resolve_simple(ref, from).value_or(ref);

        if (corpus_.has(ref)) return ref;
        const std::string head = ref.substr(0, dot);
        const std::string tail = ref.substr(dot);
        if (auto h = resolve_simple(head, from)) return *h + tail;
        return ref;
    }

private:
    std::optional<std::string> resolve_simple(const std::string& simple, const RawTypeDecl& from) const {
        // Member types of enclosing declarations, innermost first.
        for (auto it = from.enclosing.rbegin(); it != from.enclosing.rend(); ++it) {
            const std::string candidate = *it + "." + simple;
            if (corpus_.has(candidate)) return candidate;
        }
        for (const auto& imp : unit_.imports) {
            if (imp.wildcard) continue;
            const auto dot = imp.target.rfind('.');
            if (imp.target.substr(dot == std::string::npos ? 0 : dot + 1) == simple) return imp.target;
        }
        const std::string same_pkg = unit_.package_name.empty() ? simple : unit_.package_name + "." + simple;
        if (corpus_.has(same_pkg)) return same_pkg;

        std::optional<std::string> wildcard;
        int hits = 0;
        for (const auto& imp : unit_.imports) {
            if (!imp.wildcard) continue;
            const std::string candidate = imp.target + "." + simple;
            if (corpus_.has(candidate) && candidate != wildcard) {
                wildcard = candidate;
                ++hits;
            }
        }
        if (hits == 1) return wildcard;
        if (hits > 1) return std::nullopt;
        return corpus_.unique_simple(simple);
    }

    const Corpus& corpus_;
    const SourceUnit& unit_;
};

bool under_test_directory(const fs::path& relative) {
    for (const auto& part : relative.parent_path())
        if (part == "test" || part == "tests") return true;
    return false;
}

bool matches_any(const std::vector<std::string>& patterns, const std::string& text) {
    return std::any_of(patterns.begin(), patterns.end(),
                       [&](const std::string& p) { return fnmatch(p.c_str(), text.c_str(), 0) == 0; });
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

ScanResult to_type_decls(const std::vector<SourceUnit>& units, const ScanOptions& options) {
    ScanResult result;
    Corpus corpus;
    for (const auto& unit : units)
        for (const auto& decl : unit.declarations) corpus.add(decl.qualified);

    std::set<std::string> emitted;
    for (const auto& unit : units) {
        const Resolver resolver(corpus, unit);
        for (const auto& raw : unit.declarations) {
            if (!emitted.insert(raw.qualified).second) {
                result.warnings.push_back(unit.path.string() + ":" + std::to_string(raw.line) +
                                          ": duplicate type '" + raw.qualified + "' ignored");
                continue;
            }
            TypeDecl decl;
            decl.id = TypeName(raw.qualified);
            decl.kind = raw.kind;
            decl.flags.is_test = unit.in_test_directory;
            for (const auto& ref : raw.supertypes) decl.declared_supertypes.emplace_back(resolver.resolve(ref, raw));

            for (const auto& m : raw.methods) {
                if (m.is_static || m.is_private) continue;
                if (raw.kind == TypeKind::Interface && m.is_default && !options.include_default_methods) continue;
                try {
                    decl.signatures.insert(normalize_signature(m.name, m.return_text, m.param_texts));
                } catch (const NormalizationError& e) {
                    result.warnings.push_back(unit.path.string() + ":" + std::to_string(m.line) + ": " + e.what());
                }
            }
            result.types.push_back(std::move(decl));
        }
    }
    return result;
}

ScanResult scan_paths(const std::vector<fs::path>& roots, const ScanOptions& options) {
    struct File {
        fs::path path;
        fs::path relative;
    };
    std::vector<File> files;
    for (const auto& root : roots) {
        std::error_code ec;
        const auto status = fs::status(root, ec);
        if (ec || !fs::exists(status)) throw Error("cannot read input path " + root.string());
        if (fs::is_regular_file(status)) {
            files.push_back({root, root.filename()});
            continue;
        }
        fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
        if (ec) throw Error("cannot read input path " + root.string() + ": " + ec.message());
        for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
            if (ec) throw Error("error while scanning " + root.string() + ": " + ec.message());
            if (!it->is_regular_file() || it->path().extension() != ".java") continue;
            const fs::path rel = it->path().lexically_relative(root);
            if (matches_any(options.exclude_path_patterns, rel.generic_string())) continue;
            files.push_back({it->path(), rel});
        }
    }
    std::sort(files.begin(), files.end(),
              [](const File& a, const File& b) { return a.path.generic_string() < b.path.generic_string(); });

    std::vector<SourceUnit> units;
    std::vector<std::string> warnings;
    for (const auto& file : files) {
        try {
            units.push_back(parse_source(read_file(file.path), file.path));
            units.back().in_test_directory = under_test_directory(file.relative);
        } catch (const Error& e) {
            warnings.emplace_back(e.what());
        }
    }

    ScanResult result = to_type_decls(units, options);
    warnings.insert(warnings.end(), result.warnings.begin(), result.warnings.end());
    result.warnings = std::move(warnings);
    return result;
}

}  // namespace ifacemetrics::java
