#include "ifacemetrics/code_model.hpp"
#include "ifacemetrics/errors.hpp"

#include <algorithm>
#include <fnmatch.h>
#include <optional>

namespace ifacemetrics {

TypeName::TypeName(std::string qualified) : qualified_(std::move(qualified)) {
    if (qualified_.empty()) throw DomainError("empty type name");
    std::size_t start = 0;
    for (;;) {
        const std::size_t dot = qualified_.find('.', start);
        const std::string_view segment =
            std::string_view(qualified_).substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!is_valid_identifier(segment)) throw DomainError("malformed type name '" + qualified_ + "'");
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
}

std::string_view TypeName::simple() const noexcept {
    const auto dot = qualified_.rfind('.');
    return dot == std::string::npos ? std::string_view(qualified_)
                                    : std::string_view(qualified_).substr(dot + 1);
}

std::string_view TypeName::prefix() const noexcept {
    const auto dot = qualified_.rfind('.');
    return dot == std::string::npos ? std::string_view() : std::string_view(qualified_).substr(0, dot);
}

bool TypeName::is_qualified() const noexcept {
    return qualified_.find('.') != std::string::npos;
}

std::string_view to_string(TypeKind kind) {
    return kind == TypeKind::Interface ? "interface" : "class";
}

std::string_view to_string(ExclusionReason reason) {
    switch (reason) {
        case ExclusionReason::External: return "external";
        case ExclusionReason::Marker: return "marker";
        case ExclusionReason::Test: return "test";
        case ExclusionReason::Pattern: return "pattern";
    }
    return "unknown";
}

const TypeDecl& CodeModel::at(const TypeName& name) const {
    const auto it = types_.find(name);
    if (it == types_.end()) throw DomainError("unknown type '" + name.qualified() + "'");
    return it->second;
}

const TypeSet& CodeModel::direct_subtypes(const TypeName& name) const {
    static const TypeSet empty;
    const auto it = subtypes_.find(name);
    return it == subtypes_.end() ? empty : it->second;
}

const std::vector<TypeName>& CodeModel::direct_supertypes(const TypeName& name) const {
    static const std::vector<TypeName> empty;
    const auto it = supertypes_.find(name);
    return it == supertypes_.end() ? empty : it->second;
}

std::vector<TypeName> CodeModel::interfaces() const {
    std::vector<TypeName> out;
    for (const auto& [name, decl] : types_)
        if (decl.is_interface()) out.push_back(name);
    return out;
}

std::vector<TypeName> CodeModel::classes() const {
    std::vector<TypeName> out;
    for (const auto& [name, decl] : types_)
        if (!decl.is_interface()) out.push_back(name);
    return out;
}

std::vector<TypeDecl> CodeModel::declarations() const {
    std::vector<TypeDecl> out;
    out.reserve(types_.size());
    for (const auto& [name, decl] : types_) out.push_back(decl);
    return out;
}

CodeModel CodeModel::without_edges(const std::vector<std::pair<TypeName, TypeName>>& edges) const {
    CodeModel copy = *this;
    for (const auto& [sub, super] : edges) {
        auto it = copy.supertypes_.find(sub);
        if (it == copy.supertypes_.end()) continue;
        auto& supers = it->second;
        supers.erase(std::remove(supers.begin(), supers.end(), super), supers.end());
        if (supers.empty()) copy.supertypes_.erase(it);
    }
    copy.rebuild_derived();
    return copy;
}

void CodeModel::rebuild_derived() {
    subtypes_.clear();
    index_.clear();
    for (const auto& [sub, supers] : supertypes_)
        for (const auto& super : supers) subtypes_[super].insert(sub);
    for (const auto& [name, decl] : types_) {
        if (!decl.is_interface()) continue;
        for (const auto& sig : decl.signatures) index_[signature_key(sig)].insert(name);
    }
}

namespace {

enum class Mark { White, Grey, Black };

void check_acyclic(const std::map<TypeName, std::vector<TypeName>>& supertypes,
                   const std::map<TypeName, TypeDecl>& types) {
    std::map<TypeName, Mark> marks;
    std::vector<TypeName> stack;

    auto visit = [&](auto&& self, const TypeName& node) -> void {
        marks[node] = Mark::Grey;
        stack.push_back(node);
        if (const auto it = supertypes.find(node); it != supertypes.end()) {
            for (const auto& next : it->second) {
                const Mark m = marks.count(next) ? marks[next] : Mark::White;
                if (m == Mark::Grey) {
                    std::string cycle;
                    auto from = std::find(stack.begin(), stack.end(), next);
                    for (auto p = from; p != stack.end(); ++p) cycle += p->qualified() + " -> ";
                    cycle += next.qualified();
                    throw ModelError("supertype cycle: " + cycle);
                }
                if (m == Mark::White) self(self, next);
            }
        }
        stack.pop_back();
        marks[node] = Mark::Black;
    };

    for (const auto& [name, decl] : types)
        if (!marks.count(name)) visit(visit, name);
}

bool is_test_package(const TypeName& name) {
    std::string_view rest = name.prefix();
    while (!rest.empty()) {
        const auto dot = rest.find('.');
        const auto seg = rest.substr(0, dot);
        if (seg == "test" || seg == "tests") return true;
        rest = dot == std::string_view::npos ? std::string_view() : rest.substr(dot + 1);
    }
    return false;
}

bool inherits_test_case(const CodeModel& model, const TypeName& start) {
    std::vector<TypeName> work{start};
    TypeSet seen{start};
    while (!work.empty()) {
        const TypeName current = work.back();
        work.pop_back();
        for (const auto& ref : model.at(current).declared_supertypes)
            if (ref.simple() == "TestCase") return true;
        for (const auto& super : model.direct_supertypes(current))
            if (seen.insert(super).second) work.push_back(super);
    }
    return false;
}

bool matches_any(const std::vector<std::string>& patterns, const std::string& text) {
    return std::any_of(patterns.begin(), patterns.end(), [&](const std::string& p) {
        return fnmatch(p.c_str(), text.c_str(), 0) == 0;
    });
}

}  // namespace

CodeModel build_model(std::vector<TypeDecl> decls) {
    CodeModel model;
    std::map<std::string, std::vector<TypeName>, std::less<>> by_simple;
    for (auto& decl : decls) {
        const TypeName id = decl.id;
        if (!model.types_.emplace(id, std::move(decl)).second)
            throw ModelError("duplicate type '" + id.qualified() + "'");
        by_simple[std::string(id.simple())].push_back(id);
    }

    for (const auto& [name, decl] : model.types_) {
        std::vector<TypeName> resolved;
        for (const auto& ref : decl.declared_supertypes) {
            std::optional<TypeName> target;
            if (model.types_.count(ref)) {
                target = ref;
            } else if (!ref.is_qualified()) {
                const auto it = by_simple.find(ref.qualified());
                if (it != by_simple.end() && it->second.size() == 1) target = it->second.front();
            }
            if (!target) {
                model.unresolved_.push_back({name, ref.qualified()});
                continue;
            }
            if (std::find(resolved.begin(), resolved.end(), *target) == resolved.end())
                resolved.push_back(*target);
        }
        if (!resolved.empty()) model.supertypes_.emplace(name, std::move(resolved));
    }

    check_acyclic(model.supertypes_, model.types_);
    model.rebuild_derived();
    return model;
}

CodeModel filter_model(const CodeModel& model, const ExclusionPolicy& policy) {
    std::vector<Exclusion> removed;
    for (const auto& [name, decl] : model.types_) {
        std::optional<ExclusionReason> reason;
        if (policy.exclude_external && decl.flags.is_external) {
            reason = ExclusionReason::External;
        } else if (policy.exclude_tests &&
                   (decl.flags.is_test || is_test_package(name) ||
                    (!decl.is_interface() && inherits_test_case(model, name)))) {
            reason = ExclusionReason::Test;
        } else if (policy.exclude_markers && decl.is_marker()) {
            reason = ExclusionReason::Marker;
        } else if (matches_any(policy.exclude_patterns, name.qualified())) {
            reason = ExclusionReason::Pattern;
        }
        if (reason) removed.push_back({name, *reason});
    }

    CodeModel out;
    TypeSet gone;
    for (const auto& e : removed) gone.insert(e.type);
    for (const auto& [name, decl] : model.types_)
        if (!gone.count(name)) out.types_.emplace(name, decl);
    for (const auto& [sub, supers] : model.supertypes_) {
        if (gone.count(sub)) continue;
        std::vector<TypeName> kept;
        for (const auto& s : supers)
            if (!gone.count(s)) kept.push_back(s);
        if (!kept.empty()) out.supertypes_.emplace(sub, std::move(kept));
    }
    for (const auto& u : model.unresolved_)
        if (!gone.count(u.declaring)) out.unresolved_.push_back(u);

    out.exclusions_ = model.exclusions_;
    out.exclusions_.insert(out.exclusions_.end(), removed.begin(), removed.end());
    std::sort(out.exclusions_.begin(), out.exclusions_.end(),
              [](const Exclusion& a, const Exclusion& b) { return a.type < b.type; });
    out.rebuild_derived();
    return out;
}

void require_interface(const CodeModel& model, const TypeName& name) {
    if (!model.at(name).is_interface())
        throw DomainError("'" + name.qualified() + "' is not an interface");
}

std::size_t interface_size(const CodeModel& model, const TypeName& name) {
    require_interface(model, name);
    return model.at(name).signatures.size();
}

}  // namespace ifacemetrics
