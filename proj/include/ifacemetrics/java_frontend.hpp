#pragma once

#include "ifacemetrics/code_model.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ifacemetrics::java {

/// A method header as written. Texts are raw token runs; normalization
/// happens when the unit is converted to TypeDecls.
struct RawMethod {
    std::string name;
    std::string return_text;
    std::vector<std::string> param_texts;
    bool is_static = false;
    bool is_default = false;
    bool is_private = false;
    int line = 0;
};

struct RawTypeDecl {
    TypeKind kind = TypeKind::Class;
    /// Package + enclosing types + simple name, dot-separated.
    std::string qualified;
    /// Qualified names of enclosing types, outermost first.
    std::vector<std::string> enclosing;
    /// `extends` then `implements` references, type arguments stripped.
    std::vector<std::string> supertypes;
    std::vector<RawMethod> methods;
    int line = 0;
};

struct Import {
    std::string target;
    bool wildcard = false;
};

/// One parsed file. Nested types are flattened as `Outer.Inner`; enums,
/// annotation types and member bodies are skipped.
struct SourceUnit {
    std::filesystem::path path;
    std::string package_name;
    std::vector<Import> imports;
    std::vector<RawTypeDecl> declarations;
    /// Set by scan_paths for files below a `test`/`tests` directory.
    bool in_test_directory = false;
};

/// Throws ParseError (path and line) on unbalanced braces or truncated
/// declarations.
SourceUnit parse_source(std::string_view text, const std::filesystem::path& path);

struct ScanOptions {
    /// Count `default` interface methods toward the interface's signatures.
    /// Static and private interface methods never count.
    bool include_default_methods = true;
    /// fnmatch(3) globs matched against file paths relative to their root.
    std::vector<std::string> exclude_path_patterns;
};

struct ScanResult {
    std::vector<TypeDecl> types;
    std::vector<std::string> warnings;
};

/// Converts parsed units into TypeDecls. Supertype references are resolved
/// against the units (nested members, single-type imports, same package,
/// unique wildcard-import candidate, unique simple name); unresolvable
/// references are kept as written. Units are processed in the given order
/// and a repeated qualified name keeps the first occurrence with a warning.
ScanResult to_type_decls(const std::vector<SourceUnit>& units, const ScanOptions& options);

/// Recursively parses `*.java` under each root, lexicographically by path.
/// Files under a `test` or `tests` directory are flagged as tests. Parse
/// failures become warnings. Throws Error when a root cannot be read.
ScanResult scan_paths(const std::vector<std::filesystem::path>& roots, const ScanOptions& options = {});

}  // namespace ifacemetrics::java
