#pragma once

#include "ifacemetrics/code_model.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace ifacemetrics {

/// Multiset of types below a root: each node appears once per distinct
/// downward path from the root.
struct HierarchyBag {
    TypeName root;
    std::map<TypeName, std::uint64_t> counts;
    std::uint64_t total = 0;

    bool empty() const noexcept { return total == 0; }
    std::size_t distinct() const noexcept { return counts.size(); }

    friend bool operator==(const HierarchyBag&, const HierarchyBag&) = default;
};

/// A declared edge `subtype -> interface` that is also implied by the
/// alternate path `witness` (starting at subtype, ending at the interface).
struct RedundantEdge {
    TypeName subtype;
    TypeName interface;
    std::vector<TypeName> witness;

    friend bool operator==(const RedundantEdge&, const RedundantEdge&) = default;
};

/// Memoized sub-hierarchy bags. All bags reachable from the requested roots
/// are computed in the constructor; queries are const and thread-safe.
class HierarchyIndex {
public:
    /// Bags for every type of the model.
    explicit HierarchyIndex(const CodeModel& model);
    /// Bags only for the given roots and their descendants.
    HierarchyIndex(const CodeModel& model, const std::vector<TypeName>& roots);

    /// {x} plus the with_sub_h bags of its direct subtypes.
    HierarchyBag with_sub_h(const TypeName& x) const;
    /// Union of with_sub_h over the direct subtypes of interface `i`; `i`
    /// itself is not a member.
    HierarchyBag sub_h(const TypeName& i) const;

    /// Throws DomainError when `x` is not in sub_h(i).
    std::uint64_t occurrences(const TypeName& x, const TypeName& i) const;
    std::uint64_t rep_node(const TypeName& x, const TypeName& i) const;
    /// Sum of rep_node over the distinct members of sub_h(i).
    std::uint64_t rep_total(const TypeName& i) const;
    /// rep_total / |sub_h|, 0 for an empty sub-hierarchy.
    double irih(const TypeName& i) const;

private:
    using Bag = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

    void compute(const std::vector<TypeName>& roots);
    std::uint32_t id_of(const TypeName& name) const;
    HierarchyBag to_bag(const TypeName& root, const Bag& bag) const;
    Bag merged_subtypes(std::uint32_t node) const;

    const CodeModel* model_;
    std::vector<TypeName> names_;
    std::map<TypeName, std::uint32_t> ids_;
    std::vector<std::vector<std::uint32_t>> subs_;
    std::vector<Bag> with_sub_;
    std::vector<bool> ready_;
};

HierarchyBag with_sub_h(const TypeName& x, const CodeModel& model);
HierarchyBag sub_h(const TypeName& i, const CodeModel& model);
std::uint64_t occurrences(const TypeName& x, const TypeName& i, const CodeModel& model);
std::uint64_t rep_node(const TypeName& x, const TypeName& i, const CodeModel& model);
std::uint64_t rep_total(const TypeName& i, const CodeModel& model);
double irih(const TypeName& i, const CodeModel& model);

/// Declared edges to interfaces that another inheritance path already
/// implies, each with a shortest witness path; sorted by subtype, interface.
std::vector<RedundantEdge> redundant_edges(const CodeModel& model);

struct InterfaceHierarchy {
    std::uint64_t subh_size = 0;
    std::size_t distinct = 0;
    std::uint64_t rep = 0;
    double irih = 0.0;

    friend bool operator==(const InterfaceHierarchy&, const InterfaceHierarchy&) = default;
};

struct HierarchyReport {
    std::map<TypeName, InterfaceHierarchy> per_interface;
    /// Mean IRIH over interfaces with a nonempty sub-hierarchy (0 if none).
    double system_irih = 0.0;
    std::vector<RedundantEdge> redundant_edges;
};

HierarchyReport hierarchy_report(const CodeModel& model);

}  // namespace ifacemetrics
