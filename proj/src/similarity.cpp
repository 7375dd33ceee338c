#include "ifacemetrics/similarity.hpp"
#include "ifacemetrics/errors.hpp"

#include <algorithm>
#include <iterator>

namespace ifacemetrics {
namespace {

std::size_t intersection_size(const std::set<MethodSignature>& a, const std::set<MethodSignature>& b) {
    std::size_t n = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++n;
            ++ia;
            ++ib;
        }
    }
    return n;
}

double jaccard(std::size_t shared, std::size_t size_a, std::size_t size_b) {
    if (size_a == 0 || size_b == 0) return 0.0;
    return static_cast<double>(shared) / static_cast<double>(size_a + size_b - shared);
}

double containment(std::size_t shared, std::size_t size_a, std::size_t size_b) {
    if (size_a == 0 || size_b == 0) return 0.0;
    return static_cast<double>(shared) / static_cast<double>(size_a);
}

/// partner -> number of shared signatures, for every partner of `i`.
std::map<TypeName, std::size_t> shared_counts(const TypeName& i, const CodeModel& model) {
    std::map<TypeName, std::size_t> counts;
    const auto& index = model.signature_index();
    for (const auto& sig : model.at(i).signatures) {
        const auto it = index.find(signature_key(sig));
        if (it == index.end()) continue;
        for (const auto& x : it->second)
            if (x != i) ++counts[x];
    }
    return counts;
}

InterfaceSimilarity evaluate(const TypeName& i, const CodeModel& model) {
    InterfaceSimilarity out;
    out.size = model.at(i).signatures.size();
    for (const auto& [x, shared] : shared_counts(i, model)) {
        const std::size_t other = model.at(x).signatures.size();
        const double is = jaccard(shared, out.size, other);
        const double ic = containment(shared, out.size, other);
        // Partners arrive in name order, so strict '>' keeps the smallest name on ties.
        if (is > out.iis.value) out.iis = {is, x};
        if (ic > out.iic.value) out.iic = {ic, x};
    }
    return out;
}

/// Sums in ascending order so the result depends only on the values, not on
/// the interface names that produced them.
double mean(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

}  // namespace

double is_metric(const TypeName& a, const TypeName& b, const CodeModel& model) {
    require_interface(model, a);
    require_interface(model, b);
    const auto& sa = model.at(a).signatures;
    const auto& sb = model.at(b).signatures;
    return jaccard(intersection_size(sa, sb), sa.size(), sb.size());
}

double ic_metric(const TypeName& a, const TypeName& b, const CodeModel& model) {
    require_interface(model, a);
    require_interface(model, b);
    const auto& sa = model.at(a).signatures;
    const auto& sb = model.at(b).signatures;
    return containment(intersection_size(sa, sb), sa.size(), sb.size());
}

PairScore score_pair(const TypeName& a, const TypeName& b, const CodeModel& model) {
    require_interface(model, a);
    require_interface(model, b);
    const auto& sa = model.at(a).signatures;
    const auto& sb = model.at(b).signatures;
    PairScore p;
    p.a = a;
    p.b = b;
    p.shared = intersection_size(sa, sb);
    p.union_size = sa.size() + sb.size() - p.shared;
    p.is = jaccard(p.shared, sa.size(), sb.size());
    p.ic_ab = containment(p.shared, sa.size(), sb.size());
    p.ic_ba = containment(p.shared, sb.size(), sa.size());
    return p;
}

std::vector<std::string> shared_signature_keys(const TypeName& a, const TypeName& b, const CodeModel& model) {
    const auto& sa = model.at(a).signatures;
    const auto& sb = model.at(b).signatures;
    std::vector<MethodSignature> common;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
    std::vector<std::string> keys;
    keys.reserve(common.size());
    for (const auto& sig : common) keys.push_back(signature_key(sig));
    std::sort(keys.begin(), keys.end());
    return keys;
}

TypeSet semi(const TypeName& i, const CodeModel& model) {
    require_interface(model, i);
    TypeSet out;
    for (const auto& [x, shared] : shared_counts(i, model))
        if (jaccard(shared, model.at(i).signatures.size(), model.at(x).signatures.size()) > 0.0) out.insert(x);
    return out;
}

IndexScore iis(const TypeName& i, const CodeModel& model) {
    require_interface(model, i);
    return evaluate(i, model).iis;
}

IndexScore iic(const TypeName& i, const CodeModel& model) {
    require_interface(model, i);
    return evaluate(i, model).iic;
}

SimilarityReport similarity_report(const CodeModel& model) {
    SimilarityReport report;
    std::vector<double> iis_values;
    std::vector<double> iic_values;
    for (const auto& i : model.interfaces()) {
        auto entry = evaluate(i, model);
        iis_values.push_back(entry.iis.value);
        iic_values.push_back(entry.iic.value);
        report.per_interface.emplace(i, std::move(entry));
    }
    if (iis_values.empty()) report.warnings.emplace_back("model has no interfaces in scope; aggregates set to 0");
    report.system_iis = mean(iis_values);
    report.system_iic = mean(iic_values);
    return report;
}

double system_iis(const CodeModel& model) {
    return similarity_report(model).system_iis;
}

double system_iic(const CodeModel& model) {
    return similarity_report(model).system_iic;
}

std::vector<PairScore> similarity_pairs(const CodeModel& model, double min_is) {
    if (!(min_is >= 0.0 && min_is <= 1.0)) throw ConfigError("minimum IS must lie in [0, 1]");
    std::vector<PairScore> pairs;
    for (const auto& i : model.interfaces()) {
        const std::size_t size_i = model.at(i).signatures.size();
        for (const auto& [x, shared] : shared_counts(i, model)) {
            if (!(i < x)) continue;
            const std::size_t size_x = model.at(x).signatures.size();
            PairScore p;
            p.a = i;
            p.b = x;
            p.shared = shared;
            p.union_size = size_i + size_x - shared;
            p.is = jaccard(shared, size_i, size_x);
            p.ic_ab = containment(shared, size_i, size_x);
            p.ic_ba = containment(shared, size_x, size_i);
            const bool keep = min_is == 0.0 ? p.is > 0.0 : p.is >= min_is;
            if (keep) pairs.push_back(std::move(p));
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const PairScore& l, const PairScore& r) {
        if (l.is != r.is) return l.is > r.is;
        if (l.a != r.a) return l.a < r.a;
        return l.b < r.b;
    });
    return pairs;
}

}  // namespace ifacemetrics
