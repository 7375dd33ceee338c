#pragma once

#include "ifacemetrics/code_model.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ifacemetrics {

/// Overlap of two interfaces' declared signature sets.
struct PairScore {
    TypeName a;
    TypeName b;
    std::size_t shared = 0;
    std::size_t union_size = 0;
    double is = 0.0;
    /// Fraction of a's signatures also declared by b.
    double ic_ab = 0.0;
    double ic_ba = 0.0;

    friend bool operator==(const PairScore&, const PairScore&) = default;
};

/// A max-over-partners index value and the partner reaching it
/// (smallest qualified name on ties; empty when nothing is similar).
struct IndexScore {
    double value = 0.0;
    std::optional<TypeName> partner;

    friend bool operator==(const IndexScore&, const IndexScore&) = default;
};

struct InterfaceSimilarity {
    std::size_t size = 0;
    IndexScore iis;
    IndexScore iic;

    friend bool operator==(const InterfaceSimilarity&, const InterfaceSimilarity&) = default;
};

struct SimilarityReport {
    std::map<TypeName, InterfaceSimilarity> per_interface;
    double system_iis = 0.0;
    double system_iic = 0.0;
    std::vector<std::string> warnings;
};

/// Interface Similarity: |a ∩ b| / |a ∪ b|, 0 when either set is empty.
/// Throws DomainError unless both are interfaces of the model.
double is_metric(const TypeName& a, const TypeName& b, const CodeModel& model);

/// Interface Clone: |a ∩ b| / |a|, 0 when either set is empty. Not symmetric.
double ic_metric(const TypeName& a, const TypeName& b, const CodeModel& model);

/// Interfaces sharing at least one signature with `i`, from the signature index.
TypeSet semi(const TypeName& i, const CodeModel& model);

IndexScore iis(const TypeName& i, const CodeModel& model);
IndexScore iic(const TypeName& i, const CodeModel& model);

/// Mean of iis / iic over all interfaces of the model (zeros included);
/// 0 for a model without interfaces.
double system_iis(const CodeModel& model);
double system_iic(const CodeModel& model);

/// All per-interface values in one pass over the signature index.
SimilarityReport similarity_report(const CodeModel& model);

/// Unordered interface pairs with IS >= min_is (IS > 0 when min_is is 0),
/// sorted by IS descending, then by names. Throws ConfigError when min_is
/// is outside [0, 1].
std::vector<PairScore> similarity_pairs(const CodeModel& model, double min_is);

/// Scores for one pair; `a` and `b` keep the given order.
PairScore score_pair(const TypeName& a, const TypeName& b, const CodeModel& model);

/// Signature keys declared by both interfaces, sorted.
std::vector<std::string> shared_signature_keys(const TypeName& a, const TypeName& b, const CodeModel& model);

}  // namespace ifacemetrics
