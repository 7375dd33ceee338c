#include "ifacemetrics/hierarchy.hpp"
#include "ifacemetrics/errors.hpp"

#include <algorithm>
#include <deque>

namespace ifacemetrics {
namespace {

using Bag = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

Bag merge(const Bag& a, const Bag& b) {
    Bag out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            out.push_back(*ia++);
        } else if (ia == a.end() || ib->first < ia->first) {
            out.push_back(*ib++);
        } else {
            out.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return out;
}

}  // namespace

HierarchyIndex::HierarchyIndex(const CodeModel& model) : HierarchyIndex(model, [&] {
    std::vector<TypeName> all;
    for (const auto& [name, decl] : model.types()) all.push_back(name);
    return all;
}()) {}

HierarchyIndex::HierarchyIndex(const CodeModel& model, const std::vector<TypeName>& roots) : model_(&model) {
    for (const auto& [name, decl] : model.types()) {
        ids_.emplace(name, static_cast<std::uint32_t>(names_.size()));
        names_.push_back(name);
    }
    subs_.resize(names_.size());
    for (const auto& [super, subs] : model.subtype_edges())
        for (const auto& sub : subs) subs_[ids_.at(super)].push_back(ids_.at(sub));
    with_sub_.resize(names_.size());
    ready_.assign(names_.size(), false);
    compute(roots);
}

std::uint32_t HierarchyIndex::id_of(const TypeName& name) const {
    const auto it = ids_.find(name);
    if (it == ids_.end()) throw DomainError("unknown type '" + name.qualified() + "'");
    return it->second;
}

void HierarchyIndex::compute(const std::vector<TypeName>& roots) {
    // Iterative post-order over subtype edges; grey nodes detect cycles.
    std::vector<bool> grey(names_.size(), false);
    for (const auto& root : roots) {
        const std::uint32_t start = id_of(root);
        if (ready_[start]) continue;
        std::vector<std::pair<std::uint32_t, std::size_t>> stack{{start, 0}};
        grey[start] = true;
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < subs_[node].size()) {
                const std::uint32_t child = subs_[node][next++];
                if (ready_[child]) continue;
                if (grey[child]) throw ModelError("subtype cycle through '" + names_[child].qualified() + "'");
                grey[child] = true;
                stack.emplace_back(child, 0);
                continue;
            }
            Bag bag{{node, 1}};
            for (const std::uint32_t child : subs_[node]) bag = merge(bag, with_sub_[child]);
            with_sub_[node] = std::move(bag);
            ready_[node] = true;
            grey[node] = false;
            stack.pop_back();
        }
    }
}

HierarchyIndex::Bag HierarchyIndex::merged_subtypes(std::uint32_t node) const {
    Bag bag;
    for (const std::uint32_t child : subs_[node]) {
        if (!ready_[child]) throw DomainError("sub-hierarchy of '" + names_[node].qualified() + "' was not computed");
        bag = merge(bag, with_sub_[child]);
    }
    return bag;
}

HierarchyBag HierarchyIndex::to_bag(const TypeName& root, const Bag& bag) const {
    HierarchyBag out;
    out.root = root;
    for (const auto& [id, count] : bag) {
        out.counts.emplace(names_[id], count);
        out.total += count;
    }
    return out;
}

HierarchyBag HierarchyIndex::with_sub_h(const TypeName& x) const {
    const std::uint32_t id = id_of(x);
    if (!ready_[id]) throw DomainError("sub-hierarchy of '" + x.qualified() + "' was not computed");
    return to_bag(x, with_sub_[id]);
}

HierarchyBag HierarchyIndex::sub_h(const TypeName& i) const {
    require_interface(*model_, i);
    return to_bag(i, merged_subtypes(id_of(i)));
}

std::uint64_t HierarchyIndex::occurrences(const TypeName& x, const TypeName& i) const {
    const HierarchyBag bag = sub_h(i);
    const auto it = bag.counts.find(x);
    if (it == bag.counts.end())
        throw DomainError("'" + x.qualified() + "' is not in the sub-hierarchy of '" + i.qualified() + "'");
    return it->second;
}

std::uint64_t HierarchyIndex::rep_node(const TypeName& x, const TypeName& i) const {
    return occurrences(x, i) - 1;
}

std::uint64_t HierarchyIndex::rep_total(const TypeName& i) const {
    std::uint64_t rep = 0;
    for (const auto& [node, count] : sub_h(i).counts) rep += count - 1;
    return rep;
}

double HierarchyIndex::irih(const TypeName& i) const {
    const HierarchyBag bag = sub_h(i);
    if (bag.empty()) return 0.0;
    std::uint64_t rep = 0;
    for (const auto& [node, count] : bag.counts) rep += count - 1;
    return static_cast<double>(rep) / static_cast<double>(bag.total);
}

HierarchyBag with_sub_h(const TypeName& x, const CodeModel& model) {
    return HierarchyIndex(model, {x}).with_sub_h(x);
}

HierarchyBag sub_h(const TypeName& i, const CodeModel& model) {
    return HierarchyIndex(model, {i}).sub_h(i);
}

std::uint64_t occurrences(const TypeName& x, const TypeName& i, const CodeModel& model) {
    return HierarchyIndex(model, {i}).occurrences(x, i);
}

std::uint64_t rep_node(const TypeName& x, const TypeName& i, const CodeModel& model) {
    return HierarchyIndex(model, {i}).rep_node(x, i);
}

std::uint64_t rep_total(const TypeName& i, const CodeModel& model) {
    return HierarchyIndex(model, {i}).rep_total(i);
}

double irih(const TypeName& i, const CodeModel& model) {
    return HierarchyIndex(model, {i}).irih(i);
}

namespace {

/// Shortest upward path from `from` to `target` that does not start with
/// the direct edge from -> target. Empty when none exists.
std::vector<TypeName> alternate_path(const CodeModel& model, const TypeName& from, const TypeName& target) {
    std::map<TypeName, TypeName> parent;
    std::deque<TypeName> queue;
    for (const auto& super : model.direct_supertypes(from)) {
        if (super == target || parent.count(super)) continue;
        parent.emplace(super, from);
        queue.push_back(super);
    }
    while (!queue.empty()) {
        const TypeName node = queue.front();
        queue.pop_front();
        for (const auto& super : model.direct_supertypes(node)) {
            if (parent.count(super)) continue;
            parent.emplace(super, node);
            if (super == target) {
                std::vector<TypeName> path{target};
                for (TypeName at = node; at != from; at = parent.at(at)) path.push_back(at);
                path.push_back(from);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(super);
        }
    }
    return {};
}

}  // namespace

std::vector<RedundantEdge> redundant_edges(const CodeModel& model) {
    std::vector<RedundantEdge> out;
    for (const auto& [sub, supers] : model.supertype_edges()) {
        for (const auto& super : supers) {
            if (!model.at(super).is_interface()) continue;
            auto witness = alternate_path(model, sub, super);
            if (!witness.empty()) out.push_back({sub, super, std::move(witness)});
        }
    }
    std::sort(out.begin(), out.end(), [](const RedundantEdge& a, const RedundantEdge& b) {
        if (a.subtype != b.subtype) return a.subtype < b.subtype;
        return a.interface < b.interface;
    });
    return out;
}

HierarchyReport hierarchy_report(const CodeModel& model) {
    HierarchyReport report;
    const auto interfaces = model.interfaces();
    const HierarchyIndex index(model, interfaces);
    std::vector<double> nonempty;
    for (const auto& i : interfaces) {
        const HierarchyBag bag = index.sub_h(i);
        InterfaceHierarchy h;
        h.subh_size = bag.total;
        h.distinct = bag.distinct();
        h.rep = bag.total - bag.distinct();
        h.irih = bag.empty() ? 0.0 : static_cast<double>(h.rep) / static_cast<double>(bag.total);
        if (!bag.empty()) nonempty.push_back(h.irih);
        report.per_interface.emplace(i, h);
    }
    // ascending summation keeps the mean independent of interface names
    std::sort(nonempty.begin(), nonempty.end());
    double sum = 0.0;
    for (const double v : nonempty) sum += v;
    report.system_irih = nonempty.empty() ? 0.0 : sum / static_cast<double>(nonempty.size());
    report.redundant_edges = redundant_edges(model);
    return report;
}

}  // namespace ifacemetrics
