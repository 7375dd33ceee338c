#pragma once

#include "ifacemetrics/code_model.hpp"
#include "ifacemetrics/hierarchy.hpp"
#include "ifacemetrics/similarity.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ifacemetrics {

/// Critical IIS / IIC value; an interface is suspect when strictly above it.
inline constexpr double kDefaultThreshold = 0.5;

enum class FindingKind { SuspectSimilarity, SuspectClone, IdenticalInterfaces, FullClone, RedundantEdge };

std::string_view to_string(FindingKind kind);

struct Finding {
    FindingKind kind;
    std::vector<TypeName> subjects;
    double score = 0.0;
    /// Shared signature keys, or the witness path for redundant edges.
    std::vector<std::string> evidence;

    friend bool operator==(const Finding&, const Finding&) = default;
};

enum class SuggestionAction { MergeInterfaces, ExtractSubInterface, RemoveRedundantEdge };

std::string_view to_string(SuggestionAction action);

/// Subjects by action:
///  - merge-interfaces: [kept, removed...]
///  - extract-sub-interface: [contained, container]; container should extend
///    contained and drop the duplicated declarations
///  - remove-redundant-edge: [subtype, interface]
struct Suggestion {
    SuggestionAction action;
    std::vector<TypeName> subjects;
    std::string rationale;

    friend bool operator==(const Suggestion&, const Suggestion&) = default;
};

struct CorpusStats {
    std::size_t class_count = 0;
    std::size_t interface_count = 0;
    /// Share of classes with at least one resolved direct interface supertype.
    double pct_classes_implementing = 0.0;
    std::optional<std::size_t> size_min;
    std::optional<std::size_t> size_max;
    std::size_t size_sum = 0;

    friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

/// Throws ConfigError when threshold is outside [0, 1]. Ordering: kind,
/// then score descending, then subjects.
std::vector<Finding> detect_findings(const CodeModel& model, const SimilarityReport& similarity,
                                     const HierarchyReport& hierarchy, double threshold = kDefaultThreshold);

/// Refactoring suggestions for the findings. Suggestions that would tie a
/// type to its own subtype are not emitted.
std::vector<Suggestion> suggest(const std::vector<Finding>& findings, const CodeModel& model);

/// Applies suggestions to a copy of the model's declarations (model-level
/// simulation only; nothing touches source files).
CodeModel apply_suggestions(const CodeModel& model, const std::vector<Suggestion>& suggestions);

CorpusStats corpus_stats(const CodeModel& model);

/// One row in the layout `System |C| |I| |C_I|% min max sum`.
std::string corpus_stats_table(const std::string& system, const CorpusStats& stats);

/// `name,size,iis,iic`, rows by size ascending then name.
std::string similarity_csv(const SimilarityReport& similarity);

/// `name,subh,irih`, rows by sub-hierarchy size ascending then name.
std::string hierarchy_csv(const HierarchyReport& hierarchy);

/// Shortest decimal text that reads back to the same double.
std::string format_ratio(double value);

}  // namespace ifacemetrics
