#include "ifacemetrics/anomaly_report.hpp"
#include "ifacemetrics/errors.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ifacemetrics {

std::string_view to_string(FindingKind kind) {
    switch (kind) {
        case FindingKind::SuspectSimilarity: return "suspect-similarity";
        case FindingKind::SuspectClone: return "suspect-clone";
        case FindingKind::IdenticalInterfaces: return "identical-interfaces";
        case FindingKind::FullClone: return "full-clone";
        case FindingKind::RedundantEdge: return "redundant-edge";
    }
    return "unknown";
}

std::string_view to_string(SuggestionAction action) {
    switch (action) {
        case SuggestionAction::MergeInterfaces: return "merge-interfaces";
        case SuggestionAction::ExtractSubInterface: return "extract-sub-interface";
        case SuggestionAction::RemoveRedundantEdge: return "remove-redundant-edge";
    }
    return "unknown";
}

std::string format_ratio(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::vector<Finding> detect_findings(const CodeModel& model, const SimilarityReport& similarity,
                                     const HierarchyReport& hierarchy, double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("threshold must lie in [0, 1]");
    std::vector<Finding> out;

    for (const auto& [name, entry] : similarity.per_interface) {
        if (entry.iis.value > threshold && entry.iis.partner) {
            out.push_back({FindingKind::SuspectSimilarity, {name, *entry.iis.partner}, entry.iis.value,
                           shared_signature_keys(name, *entry.iis.partner, model)});
        }
        if (entry.iic.value > threshold && entry.iic.partner) {
            out.push_back({FindingKind::SuspectClone, {name, *entry.iic.partner}, entry.iic.value,
                           shared_signature_keys(name, *entry.iic.partner, model)});
        }
    }

    for (const auto& pair : similarity_pairs(model, 0.0)) {
        if (pair.is == 1.0) {
            out.push_back({FindingKind::IdenticalInterfaces, {pair.a, pair.b}, 1.0,
                           shared_signature_keys(pair.a, pair.b, model)});
            continue;
        }
        if (pair.ic_ab == 1.0)
            out.push_back({FindingKind::FullClone, {pair.a, pair.b}, 1.0, shared_signature_keys(pair.a, pair.b, model)});
        if (pair.ic_ba == 1.0)
            out.push_back({FindingKind::FullClone, {pair.b, pair.a}, 1.0, shared_signature_keys(pair.a, pair.b, model)});
    }

    for (const auto& edge : hierarchy.redundant_edges) {
        Finding f{FindingKind::RedundantEdge, {edge.subtype, edge.interface}, 1.0, {}};
        for (const auto& step : edge.witness) f.evidence.push_back(step.qualified());
        out.push_back(std::move(f));
    }

    std::sort(out.begin(), out.end(), [](const Finding& a, const Finding& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.score != b.score) return a.score > b.score;
        return a.subjects < b.subjects;
    });
    return out;
}

namespace {

using SignatureSet = std::set<MethodSignature>;

/// Mutable stand-in for a model while suggestions are planned or applied.
/// Only resolved edges take part.
class Workspace {
public:
    explicit Workspace(const CodeModel& model) {
        for (const auto& [name, decl] : model.types()) {
            auto& node = nodes_[name];
            node.decl = decl;
            node.decl.declared_supertypes.clear();
            for (const auto& s : model.direct_supertypes(name)) node.supers.insert(s);
        }
    }

    bool contains(const TypeName& n) const { return nodes_.count(n) != 0; }

    /// Current name of a type that may have been merged away.
    TypeName current(TypeName n) const {
        for (auto it = merged_.find(n); it != merged_.end(); it = merged_.find(n)) n = it->second;
        return n;
    }

    bool reaches(const TypeName& from, const TypeName& to) const {
        std::vector<TypeName> work{from};
        TypeSet seen{from};
        while (!work.empty()) {
            const TypeName n = work.back();
            work.pop_back();
            for (const auto& s : nodes_.at(n).supers) {
                if (s == to) return true;
                if (seen.insert(s).second) work.push_back(s);
            }
        }
        return false;
    }

    /// Union of declared signatures over every interface reachable from `n`
    /// (itself included).
    SignatureSet closure(const TypeName& n) const {
        SignatureSet out;
        std::vector<TypeName> work{n};
        TypeSet seen{n};
        while (!work.empty()) {
            const TypeName at = work.back();
            work.pop_back();
            const auto& node = nodes_.at(at);
            if (node.decl.is_interface()) out.insert(node.decl.signatures.begin(), node.decl.signatures.end());
            for (const auto& s : node.supers)
                if (seen.insert(s).second) work.push_back(s);
        }
        return out;
    }

    const SignatureSet& declared(const TypeName& n) const { return nodes_.at(n).decl.signatures; }

    void remove_edge(const TypeName& sub, const TypeName& super) { nodes_.at(current(sub)).supers.erase(current(super)); }

    void merge(const TypeName& kept, const TypeName& removed) {
        auto gone = std::move(nodes_.at(removed));
        nodes_.erase(removed);
        merged_[removed] = kept;
        auto& keep = nodes_.at(kept);
        for (const auto& s : gone.supers)
            if (s != kept) keep.supers.insert(s);
        for (auto& [name, node] : nodes_) {
            if (node.supers.erase(removed) && name != kept) node.supers.insert(kept);
        }
    }

    void extract(const TypeName& contained, const TypeName& container) {
        auto& node = nodes_.at(container);
        for (const auto& sig : nodes_.at(contained).decl.signatures) node.decl.signatures.erase(sig);
        node.supers.insert(contained);
    }

    CodeModel build() const {
        std::vector<TypeDecl> decls;
        for (const auto& [name, node] : nodes_) {
            TypeDecl d = node.decl;
            d.declared_supertypes.assign(node.supers.begin(), node.supers.end());
            decls.push_back(std::move(d));
        }
        return build_model(std::move(decls));
    }

private:
    struct Node {
        TypeDecl decl;
        TypeSet supers;
    };
    std::map<TypeName, Node> nodes_;
    std::map<TypeName, TypeName> merged_;
};

std::string join_path(const std::vector<std::string>& steps) {
    std::string out;
    for (std::size_t k = 0; k < steps.size(); ++k) {
        if (k) out += " -> ";
        out += steps[k];
    }
    return out;
}

/// Groups of mutually identical interfaces, each sorted, groups by first member.
std::vector<std::vector<TypeName>> identical_groups(const std::vector<Finding>& findings) {
    std::map<TypeName, TypeName> parent;
    auto find = [&](TypeName n) {
        while (parent.count(n) && parent.at(n) != n) n = parent.at(n);
        return n;
    };
    for (const auto& f : findings) {
        if (f.kind != FindingKind::IdenticalInterfaces) continue;
        for (const auto& s : f.subjects) parent.try_emplace(s, s);
        TypeName a = find(f.subjects[0]);
        TypeName b = find(f.subjects[1]);
        if (a == b) continue;
        if (b < a) std::swap(a, b);
        parent[b] = a;
    }
    std::map<TypeName, std::vector<TypeName>> groups;
    for (const auto& [n, p] : parent) groups[find(n)].push_back(n);
    std::vector<std::vector<TypeName>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

}  // namespace

std::vector<Suggestion> suggest(const std::vector<Finding>& findings, const CodeModel& model) {
    std::vector<Suggestion> out;
    Workspace ws(model);

    // Redundant edges go first: dropping an implied edge never changes
    // reachability, so later checks are unaffected.
    for (const auto& f : findings) {
        if (f.kind != FindingKind::RedundantEdge) continue;
        out.push_back({SuggestionAction::RemoveRedundantEdge, f.subjects,
                       "'" + f.subjects[0].qualified() + "' already reaches '" + f.subjects[1].qualified() +
                           "' through " + join_path(f.evidence) + "; the explicit declaration only repeats it"});
        ws.remove_edge(f.subjects[0], f.subjects[1]);
    }

    for (const auto& group : identical_groups(findings)) {
        // Members may only be merged when they oblige implementers to the
        // same inherited services; partition by closure.
        std::vector<std::pair<SignatureSet, std::vector<TypeName>>> parts;
        for (const auto& member : group) {
            if (!ws.contains(member)) continue;
            SignatureSet c = ws.closure(member);
            auto it = std::find_if(parts.begin(), parts.end(), [&](const auto& p) { return p.first == c; });
            if (it == parts.end()) parts.push_back({std::move(c), {member}});
            else it->second.push_back(member);
        }
        for (auto& [closure, members] : parts) {
            if (members.size() < 2) continue;
            const TypeName kept = members.front();
            std::vector<TypeName> subjects{kept};
            for (std::size_t k = 1; k < members.size(); ++k) {
                const TypeName& other = members[k];
                // Merging two types joined by a path would close a cycle.
                if (ws.reaches(kept, other) || ws.reaches(other, kept)) continue;
                ws.merge(kept, other);
                subjects.push_back(other);
            }
            if (subjects.size() < 2) continue;
            std::string rationale = "identical declarations; keep '" + kept.qualified() + "', retarget dependents of";
            for (std::size_t k = 1; k < subjects.size(); ++k) rationale += " '" + subjects[k].qualified() + "'";
            rationale += " to it and delete the duplicates";
            out.push_back({SuggestionAction::MergeInterfaces, std::move(subjects), std::move(rationale)});
        }
    }

    std::set<std::pair<TypeName, TypeName>> done;
    for (const auto& f : findings) {
        if (f.kind != FindingKind::FullClone) continue;
        const TypeName contained = ws.current(f.subjects[0]);
        const TypeName container = ws.current(f.subjects[1]);
        if (contained == container || !done.insert({contained, container}).second) continue;
        if (ws.reaches(contained, container)) continue;
        const SignatureSet inner = ws.closure(contained);
        const SignatureSet outer = ws.closure(container);
        if (!std::includes(outer.begin(), outer.end(), inner.begin(), inner.end())) continue;

        std::string rationale;
        if (ws.reaches(container, contained)) {
            rationale = "'" + container.qualified() + "' already inherits '" + contained.qualified() +
                        "'; delete its redeclared methods";
        } else {
            rationale = "every method of '" + contained.qualified() + "' is redeclared in '" + container.qualified() +
                        "'; make '" + container.qualified() + "' extend '" + contained.qualified() +
                        "' and delete the copies (alternatively only delete the copies if the two should stay "
                        "unrelated)";
        }
        ws.extract(contained, container);
        out.push_back({SuggestionAction::ExtractSubInterface, {contained, container}, std::move(rationale)});
    }
    return out;
}

CodeModel apply_suggestions(const CodeModel& model, const std::vector<Suggestion>& suggestions) {
    Workspace ws(model);
    for (const auto& s : suggestions) {
        switch (s.action) {
            case SuggestionAction::RemoveRedundantEdge:
                ws.remove_edge(s.subjects.at(0), s.subjects.at(1));
                break;
            case SuggestionAction::MergeInterfaces:
                for (std::size_t k = 1; k < s.subjects.size(); ++k)
                    ws.merge(ws.current(s.subjects[0]), ws.current(s.subjects[k]));
                break;
            case SuggestionAction::ExtractSubInterface:
                ws.extract(ws.current(s.subjects.at(0)), ws.current(s.subjects.at(1)));
                break;
        }
    }
    return ws.build();
}

CorpusStats corpus_stats(const CodeModel& model) {
    CorpusStats stats;
    std::size_t implementing = 0;
    for (const auto& [name, decl] : model.types()) {
        if (decl.is_interface()) {
            ++stats.interface_count;
            const std::size_t size = decl.signatures.size();
            stats.size_sum += size;
            stats.size_min = stats.size_min ? std::min(*stats.size_min, size) : size;
            stats.size_max = stats.size_max ? std::max(*stats.size_max, size) : size;
        } else {
            ++stats.class_count;
            const auto& supers = model.direct_supertypes(name);
            if (std::any_of(supers.begin(), supers.end(),
                            [&](const TypeName& s) { return model.at(s).is_interface(); }))
                ++implementing;
        }
    }
    if (stats.class_count)
        stats.pct_classes_implementing = static_cast<double>(implementing) / static_cast<double>(stats.class_count);
    return stats;
}

std::string corpus_stats_table(const std::string& system, const CorpusStats& stats) {
    auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
    std::ostringstream os;
    const long pct = static_cast<long>(stats.pct_classes_implementing * 100.0 + 0.5);
    os << "System\t|C|\t|I|\t|C_I|%\tmin\tmax\tsum\n";
    os << system << '\t' << stats.class_count << '\t' << stats.interface_count << '\t' << pct << "%\t"
       << opt(stats.size_min) << '\t' << opt(stats.size_max) << '\t' << stats.size_sum << '\n';
    return os.str();
}

std::string similarity_csv(const SimilarityReport& similarity) {
    std::vector<std::pair<const TypeName*, const InterfaceSimilarity*>> rows;
    for (const auto& [name, entry] : similarity.per_interface) rows.emplace_back(&name, &entry);
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second->size < b.second->size; });
    std::string out = "name,size,iis,iic\n";
    for (const auto& [name, entry] : rows)
        out += name->qualified() + "," + std::to_string(entry->size) + "," + format_ratio(entry->iis.value) + "," +
               format_ratio(entry->iic.value) + "\n";
    return out;
}

std::string hierarchy_csv(const HierarchyReport& hierarchy) {
    std::vector<std::pair<const TypeName*, const InterfaceHierarchy*>> rows;
    for (const auto& [name, entry] : hierarchy.per_interface) rows.emplace_back(&name, &entry);
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.second->subh_size < b.second->subh_size; });
    std::string out = "name,subh,irih\n";
    for (const auto& [name, entry] : rows)
        out += name->qualified() + "," + std::to_string(entry->subh_size) + "," + format_ratio(entry->irih) + "\n";
    return out;
}

}  // namespace ifacemetrics
