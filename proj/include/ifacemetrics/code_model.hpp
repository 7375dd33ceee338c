#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ifacemetrics {

/// Dot-separated qualified type name. Equality and ordering use the
/// qualified form only.
class TypeName {
public:
    TypeName() = default;
    /// Throws DomainError on an empty or malformed name.
    explicit TypeName(std::string qualified);

    const std::string& qualified() const noexcept { return qualified_; }
    std::string_view simple() const noexcept;
    /// Package / enclosing prefix, empty for unqualified names.
    std::string_view prefix() const noexcept;
    bool is_qualified() const noexcept;

    friend bool operator==(const TypeName&, const TypeName&) = default;
    friend auto operator<=>(const TypeName& a, const TypeName& b) {
        return a.qualified_ <=> b.qualified_;
    }

private:
    std::string qualified_;
};

/// (return type, name, parameter types) with every type text normalized:
/// no whitespace, no package qualifiers, varargs written as arrays.
struct MethodSignature {
    std::string name;
    std::string return_type;
    std::vector<std::string> param_types;

    friend bool operator==(const MethodSignature&, const MethodSignature&) = default;
    friend auto operator<=>(const MethodSignature& a, const MethodSignature& b) {
        if (auto c = a.return_type <=> b.return_type; c != 0) return c;
        if (auto c = a.name <=> b.name; c != 0) return c;
        return a.param_types <=> b.param_types;
    }
};

/// Normalizes one Java type expression (`java.util.List<java.lang.String>`
/// becomes `List<String>`, `byte [ ]` becomes `byte[]`, `T...` becomes
/// `T[]`). Annotations and `final` are dropped. Throws NormalizationError.
std::string normalize_type(std::string_view text);

/// Normalizes a raw method header. Parameter texts may carry a parameter
/// name, modifiers and annotations; all of those are discarded. Throws
/// NormalizationError naming the offending text.
MethodSignature normalize_signature(std::string_view raw_name, std::string_view raw_return,
                                    const std::vector<std::string>& raw_params);

/// Java identifier check (ASCII letters, digits, `_`, `$`, any non-ASCII byte).
bool is_valid_identifier(std::string_view s);

/// `returnType name(p1,p2)`; injective over normalized signatures.
std::string signature_key(const MethodSignature& sig);

enum class TypeKind { Interface, Class };

std::string_view to_string(TypeKind kind);

struct TypeFlags {
    bool is_test = false;
    bool is_external = false;

    friend bool operator==(const TypeFlags&, const TypeFlags&) = default;
};

/// One class or interface as declared. Supertype references are kept as
/// written (possibly already qualified by the frontend).
struct TypeDecl {
    TypeName id;
    TypeKind kind = TypeKind::Class;
    std::set<MethodSignature> signatures;
    std::vector<TypeName> declared_supertypes;
    TypeFlags flags;

    bool is_interface() const noexcept { return kind == TypeKind::Interface; }
    /// Interfaces without methods: markers and constants-only interfaces.
    bool is_marker() const noexcept { return is_interface() && signatures.empty(); }

    friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

struct UnresolvedReference {
    TypeName declaring;
    std::string reference;

    friend bool operator==(const UnresolvedReference&, const UnresolvedReference&) = default;
};

/// Why filter_model took a type out of metric scope.
enum class ExclusionReason { External, Marker, Test, Pattern };

std::string_view to_string(ExclusionReason reason);

struct Exclusion {
    TypeName type;
    ExclusionReason reason;

    friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

/// Which types filter_model removes. Defaults mirror the usual study setup:
/// library types, markers and tests are left out.
struct ExclusionPolicy {
    bool exclude_external = true;
    bool exclude_markers = true;
    bool exclude_tests = true;
    /// fnmatch(3) globs matched against qualified type names.
    std::vector<std::string> exclude_patterns;
};

using TypeSet = std::set<TypeName>;

/// Immutable resolved type graph. Construct with build_model().
class CodeModel {
public:
    CodeModel() = default;

    const std::map<TypeName, TypeDecl>& types() const noexcept { return types_; }
    /// Direct subtypes (dSub) of every type that has any.
    const std::map<TypeName, TypeSet>& subtype_edges() const noexcept { return subtypes_; }
    /// Resolved direct supertypes, in declaration order.
    const std::map<TypeName, std::vector<TypeName>>& supertype_edges() const noexcept {
        return supertypes_;
    }
    /// signature_key -> interfaces declaring that signature.
    const std::map<std::string, TypeSet>& signature_index() const noexcept { return index_; }
    const std::vector<UnresolvedReference>& unresolved() const noexcept { return unresolved_; }
    /// Types removed by filter_model, in name order.
    const std::vector<Exclusion>& exclusions() const noexcept { return exclusions_; }

    bool contains(const TypeName& name) const { return types_.count(name) != 0; }
    /// Throws DomainError when absent.
    const TypeDecl& at(const TypeName& name) const;
    const TypeSet& direct_subtypes(const TypeName& name) const;
    const std::vector<TypeName>& direct_supertypes(const TypeName& name) const;

    /// Interfaces in name order.
    std::vector<TypeName> interfaces() const;
    std::vector<TypeName> classes() const;

    /// The declarations in name order, as accepted by build_model().
    std::vector<TypeDecl> declarations() const;

    /// Copy of this model without the given resolved edges (subtype, supertype).
    CodeModel without_edges(const std::vector<std::pair<TypeName, TypeName>>& edges) const;

    friend bool operator==(const CodeModel&, const CodeModel&) = default;

private:
    friend CodeModel build_model(std::vector<TypeDecl> decls);
    friend CodeModel filter_model(const CodeModel& model, const ExclusionPolicy& policy);

    void rebuild_derived();

    std::map<TypeName, TypeDecl> types_;
    std::map<TypeName, std::vector<TypeName>> supertypes_;
    std::map<TypeName, TypeSet> subtypes_;
    std::map<std::string, TypeSet> index_;
    std::vector<UnresolvedReference> unresolved_;
    std::vector<Exclusion> exclusions_;
};

/// Resolves supertype references (exact qualified match, else unique
/// simple-name match for unqualified references), inverts the edges and
/// checks acyclicity. Throws ModelError on duplicates or cycles.
CodeModel build_model(std::vector<TypeDecl> decls);

/// Removes external types, markers, tests and pattern matches from metric
/// scope. Edges to removed types are dropped; nothing is re-resolved.
CodeModel filter_model(const CodeModel& model, const ExclusionPolicy& policy);

/// i_size: number of signatures an interface declares. Throws DomainError
/// if `name` is not an interface of the model.
std::size_t interface_size(const CodeModel& model, const TypeName& name);

/// Throws DomainError unless `name` is an interface of the model.
void require_interface(const CodeModel& model, const TypeName& name);

}  // namespace ifacemetrics
