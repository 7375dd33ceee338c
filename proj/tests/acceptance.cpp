// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "ifacemetrics/anomaly_report.hpp"
#include "ifacemetrics/cli.hpp"
#include "ifacemetrics/hierarchy.hpp"
#include "ifacemetrics/java_frontend.hpp"
#include "ifacemetrics/model_json.hpp"
#include "ifacemetrics/similarity.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

using namespace ifacemetrics;
using namespace ifacemetrics::testing;

namespace {

// Pinned limits.
constexpr double kFixtureSeconds = 1.0;
constexpr double kOracleSeconds = 60.0;
constexpr double kIrihTolerance = 1e-12;
constexpr int kRandomModels = 1000;
constexpr std::size_t kMaxInterfaces = 200;
constexpr std::size_t kMaxSignatures = 20;
constexpr int kRandomDags = 500;
constexpr std::size_t kMaxDagNodes = 30;
constexpr int kLawRounds = 300;
constexpr std::size_t kSanityMinFiles = 500;

struct Outcome {
    enum class Status { Pass, Fail, Skip } status = Status::Pass;
    std::string detail;
};

/// Collects failed expectations; the first few end up in the detail text.
class Checker {
public:
    bool expect(bool ok, const std::string& what) {
        if (!ok) {
            ++failures_;
            if (failures_ <= 3) messages_ += (messages_.empty() ? "" : "; ") + what;
        }
        return ok;
    }
    void note(const std::string& text) { notes_ += (notes_.empty() ? "" : ", ") + text; }
    Outcome outcome() const {
        if (failures_) return {Outcome::Status::Fail, std::to_string(failures_) + " failed: " + messages_};
        return {Outcome::Status::Pass, notes_};
    }

private:
    int failures_ = 0;
    std::string messages_;
    std::string notes_;
};

std::string str(double v) { return format_ratio(v); }

Outcome fig1() {
    Checker c;
    const CodeModel m = filter_model(java_fixture("fig1"), {});
    const auto all = m.interfaces();
    c.expect(all.size() == 4, "expected 4 interfaces, got " + std::to_string(all.size()));
    for (const auto& i : all) {
        c.expect(interface_size(m, i) == 3, i.qualified() + " size " + std::to_string(interface_size(m, i)));
        c.expect(semi(i, m).size() == 3, "semi(" + i.qualified() + ") size " + std::to_string(semi(i, m).size()));
        for (const auto& x : all) {
            if (x == i) continue;
            c.expect(score_pair(i, x, m).shared >= 3, "fewer than 3 shared signatures");
            const double v = is_metric(i, x, m);
            c.expect(v == 1.0, "IS(" + i.qualified() + "," + x.qualified() + ") = " + str(v));
        }
    }
    c.note("4 interfaces, 12 ordered pairs at IS=1");
    return c.outcome();
}

Outcome fig2() {
    Checker c;
    const CodeModel m = filter_model(java_fixture("fig2"), {});
    const TypeName ii("org.example.fig2.ii");
    const HierarchyBag bag = sub_h(ii, m);
    const auto rep = rep_total(ii, m);
    const double value = irih(ii, m);
    c.expect(rep == 6, "rep_total = " + std::to_string(rep));
    c.expect(bag.total == 13, "bag total = " + std::to_string(bag.total));
    c.expect(std::abs(value - 6.0 / 13.0) <= kIrihTolerance, "IRIH = " + str(value));

    std::vector<std::pair<std::string, std::string>> got;
    for (const auto& e : redundant_edges(m)) got.emplace_back(e.subtype.qualified(), e.interface.qualified());
    std::vector<std::pair<std::string, std::string>> want;
    for (const char* s : {"b", "c", "d", "e", "f", "g"})
        want.emplace_back(std::string("org.example.fig2.") + s, ii.qualified());
    c.expect(got == want, "redundant edges differ (" + std::to_string(got.size()) + " found)");
    c.note("rep=" + std::to_string(rep) + " total=" + std::to_string(bag.total) + " IRIH=" + str(value));
    return c.outcome();
}

Outcome section_vb4() {
    Checker c;
    const CodeModel m = filter_model(json_fixture("vb4.json"), {});
    const TypeName small("org.jboss.management.j2ee.deployers.LocalJBossServerDomainMBean");
    const TypeName large("org.jboss.management.j2ee.LocalJBossServerDomainMBean");
    const TypeName ha("org.jboss.management.j2ee.cluster.HAManagementServiceMBean");
    const TypeName mejb("org.jboss.management.mejb.MEJB");
    c.expect(interface_size(m, small) == 14 && interface_size(m, large) == 34, "fixture sizes are not 14/34");
    c.expect(interface_size(m, ha) == 15 && interface_size(m, mejb) == 15, "fixture sizes are not 15/15");
    c.expect(ic_metric(small, large, m) == 1.0, "IC(small,large) = " + str(ic_metric(small, large, m)));
    c.expect(is_metric(ha, mejb, m) == 1.0, "IS(identical) = " + str(is_metric(ha, mejb, m)));

    const auto findings = detect_findings(m, similarity_report(m), hierarchy_report(m), 0.5);
    bool full_clone = false;
    bool identical = false;
    for (const auto& f : findings) {
        full_clone = full_clone || (f.kind == FindingKind::FullClone && f.subjects == std::vector<TypeName>{small, large});
        identical = identical || (f.kind == FindingKind::IdenticalInterfaces && f.subjects == std::vector<TypeName>{ha, mejb});
    }
    c.expect(full_clone, "no full-clone finding for the 14-in-34 pair");
    c.expect(identical, "no identical-interfaces finding for the 15-method pair");
    c.note("IC=1, IS=1, both flagged at 0.5");
    return c.outcome();
}

Outcome oracle_equivalence() {
    Checker c;
    std::mt19937_64 rng(20240601);
    std::size_t interfaces = 0;
    for (int round = 0; round < kRandomModels; ++round) {
        const CodeModel m = random_interface_model(rng, kMaxInterfaces, kMaxSignatures);
        const SimilarityReport report = similarity_report(m);
        const OracleTable oracle = oracle_table(m);
        for (const auto& i : m.interfaces()) {
            ++interfaces;
            const auto& entry = report.per_interface.at(i);
            const auto& want_iis = oracle.iis.at(i);
            const auto& want_iic = oracle.iic.at(i);
            c.expect(semi(i, m) == oracle.semi.at(i), "semi mismatch at model " + std::to_string(round));
            c.expect(entry.iis.value == want_iis.value && entry.iis.partner == want_iis.partner,
                     "IIS mismatch at model " + std::to_string(round));
            c.expect(entry.iic.value == want_iic.value && entry.iic.partner == want_iic.partner,
                     "IIC mismatch at model " + std::to_string(round));
        }
    }

    int dags = 0;
    int redrawn = 0;
    std::size_t roots = 0;
    while (dags < kRandomDags) {
        const CodeModel m = random_dag(rng, kMaxDagNodes);
        const HierarchyIndex index(m);
        std::vector<std::pair<TypeName, std::map<TypeName, std::uint64_t>>> expected;
        bool too_many = false;
        for (const auto& i : m.interfaces()) {
            auto paths = enumerate_paths(m, i, false, 1'000'000);
            if (!paths) {
                too_many = true;
                break;
            }
            expected.emplace_back(i, std::move(*paths));
        }
        if (too_many) {
            ++redrawn;
            continue;
        }
        for (const auto& [i, counts] : expected) {
            ++roots;
            const HierarchyBag bag = index.sub_h(i);
            std::uint64_t total = 0;
            for (const auto& [n, k] : counts) total += k;
            c.expect(bag.counts == counts && bag.total == total, "bag mismatch at DAG " + std::to_string(dags));
            c.expect(index.rep_total(i) == bag.total - bag.distinct(), "rep_total identity broken");
        }
        ++dags;
    }
    c.note(std::to_string(kRandomModels) + " models / " + std::to_string(interfaces) + " interfaces, " +
           std::to_string(kRandomDags) + " DAGs / " + std::to_string(roots) + " roots (" + std::to_string(redrawn) +
           " DAGs redrawn for >1e6 paths)");
    return c.outcome();
}

Outcome metric_laws() {
    Checker c;
    std::mt19937_64 rng(7);
    std::size_t pairs = 0;
    for (int round = 0; round < kLawRounds; ++round) {
        const CodeModel m = random_interface_model(rng, 30, 8);
        const auto all = m.interfaces();
        for (const auto& a : all) {
            for (const auto& b : all) {
                if (a == b) continue;
                ++pairs;
                const double is = is_metric(a, b, m);
                const double ic = ic_metric(a, b, m);
                const auto& sa = m.at(a).signatures;
                const auto& sb = m.at(b).signatures;
                const bool nonempty = !sa.empty() && !sb.empty();
                c.expect(is >= 0.0 && is <= 1.0 && ic >= 0.0 && ic <= 1.0, "bounds");
                c.expect(is == is_metric(b, a, m), "IS symmetry");
                c.expect((is == 1.0) == (nonempty && sa == sb), "IS=1 iff equal sets");
                c.expect((ic == 1.0) == (nonempty && std::includes(sb.begin(), sb.end(), sa.begin(), sa.end())),
                         "IC=1 iff containment");
            }
            const double v_iis = iis(a, m).value;
            const double v_iic = iic(a, m).value;
            c.expect(v_iis >= 0.0 && v_iis <= 1.0 && v_iic >= 0.0 && v_iic <= 1.0, "index bounds");
            c.expect(v_iic >= v_iis, "IIC >= IIS");
        }
        const double s_iis = system_iis(m);
        const double s_iic = system_iic(m);
        c.expect(s_iis >= 0.0 && s_iis <= 1.0 && s_iic >= 0.0 && s_iic <= 1.0, "aggregate bounds");

        // hierarchy bounds, filter idempotence, renaming, JSON identity on a random hierarchy
        auto decls = random_dag(rng, 30).declarations();
        std::uniform_int_distribution<int> pick(0, 9);
        for (auto& d : decls) {
            if (d.is_interface()) d.signatures = {sig("s" + std::to_string(pick(rng))), sig("t" + std::to_string(pick(rng)))};
            if (pick(rng) == 0) d.signatures.clear();
            if (pick(rng) == 0) d.flags.is_test = true;
            if (pick(rng) == 0) d.declared_supertypes.push_back(tn("Missing" + std::to_string(pick(rng))));
        }
        const CodeModel h = build_model(decls);
        const CodeModel f = filter_model(h, {});
        c.expect(filter_model(f, {}) == f, "filter idempotence");
        c.expect(build_model(model_from_json(model_to_json(h.declarations()))) == h, "JSON round trip");

        const HierarchyReport hr = hierarchy_report(f);
        for (const auto& [name, v] : hr.per_interface)
            c.expect(v.irih >= 0.0 && (v.subh_size == 0 ? v.irih == 0.0 : v.irih < 1.0), "IRIH bounds");

        std::map<TypeName, TypeName> rename;
        std::size_t k = 0;
        for (const auto& [name, d] : f.types()) rename.emplace(name, tn("z" + std::to_string(997 * (k++) % 1009) + ".R"));
        std::vector<TypeDecl> moved;
        for (auto d : f.declarations()) {
            d.id = rename.at(d.id);
            for (auto& s : d.declared_supertypes) s = rename.count(s) ? rename.at(s) : s;
            moved.push_back(std::move(d));
        }
        const CodeModel r = build_model(moved);
        const SimilarityReport sf = similarity_report(f);
        const SimilarityReport sr = similarity_report(r);
        const HierarchyReport hrr = hierarchy_report(r);
        for (const auto& i : f.interfaces()) {
            const auto& a = sf.per_interface.at(i);
            const auto& b = sr.per_interface.at(rename.at(i));
            c.expect(a.iis.value == b.iis.value && a.iic.value == b.iic.value && a.size == b.size, "rename: similarity");
            c.expect(hr.per_interface.at(i) == hrr.per_interface.at(rename.at(i)), "rename: hierarchy");
        }
        c.expect(sf.system_iis == sr.system_iis && sf.system_iic == sr.system_iic && hr.system_irih == hrr.system_irih,
                 "rename: aggregates");
    }
    c.note(std::to_string(kLawRounds) + " rounds, " + std::to_string(pairs) + " ordered pairs");
    return c.outcome();
}

Outcome determinism() {
    Checker c;
    const std::string corpus = fixture("corpus").string();
    for (const char* format : {"json", "csv"}) {
        std::string outputs[2];
        for (auto& out : outputs) {
            std::ostringstream os;
            std::ostringstream err;
            const int code = cli::run({"analyze", corpus, "--format", format}, os, err);
            c.expect(code == cli::kExitOk, std::string(format) + " run exited " + std::to_string(code));
            out = os.str();
        }
        c.expect(!outputs[0].empty() && outputs[0] == outputs[1], std::string(format) + " outputs differ");
        c.note(std::string(format) + " " + std::to_string(outputs[0].size()) + " bytes");
    }
    return c.outcome();
}

Outcome sanity_run() {
    const std::filesystem::path tree = IFACEMETRICS_SANITY_TREE;
    if (!std::filesystem::is_directory(tree)) return {Outcome::Status::Skip, "no Java tree at " + tree.string()};
    Checker c;
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(tree))
        files += entry.is_regular_file() && entry.path().extension() == ".java";
    if (files < kSanityMinFiles)
        return {Outcome::Status::Skip, tree.string() + " has only " + std::to_string(files) + " .java files"};

    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"analyze", tree.string()}, out, err);
    c.expect(code == cli::kExitOk, "analyze exited " + std::to_string(code) + ": " + err.str().substr(0, 200));
    if (code != cli::kExitOk) return c.outcome();

    const auto doc = nlohmann::json::parse(out.str());
    const auto& stats = doc["stats"];
    for (const char* key : {"system_iis", "system_iic", "system_irih"}) {
        const double v = stats[key].get<double>();
        c.expect(v >= 0.0 && v <= 1.0, std::string(key) + " = " + str(v));
    }

    // every type found below a test directory or in a test package must be out of scope
    const auto scanned = java::scan_paths({tree});
    const CodeModel full = build_model(scanned.types);
    std::set<std::string> reported;
    for (const auto& row : doc["interfaces"]) reported.insert(row["name"].get<std::string>());
    std::set<std::string> excluded_tests;
    for (const auto& e : doc["excluded"])
        if (e["reason"] == "test") excluded_tests.insert(e["name"].get<std::string>());
    std::size_t test_types = 0;
    for (const auto& [name, decl] : full.types()) {
        if (!decl.flags.is_test) continue;
        ++test_types;
        c.expect(!reported.count(name.qualified()), name.qualified() + " reported although a test type");
        c.expect(excluded_tests.count(name.qualified()) == 1, name.qualified() + " not excluded as test");
    }
    c.expect(test_types > 0, "tree has no test types to exclude");
    c.note(std::to_string(files) + " files, " + std::to_string(reported.size()) + " interfaces, " +
           std::to_string(excluded_tests.size()) + " test types excluded, IIS=" + str(stats["system_iis"].get<double>()) +
           " IIC=" + str(stats["system_iic"].get<double>()) + " IRIH=" + str(stats["system_irih"].get<double>()));
    return c.outcome();
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* title;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"C1", "Fig. 1 read/write duplication: pairwise IS = 1, |semi| = 3", kFixtureSeconds, fig1},
        {"C2", "Fig. 2 redundant implements: rep 6, total 13, IRIH 6/13, six edges", kFixtureSeconds, fig2},
        {"C3", "JBoss clones: IC(14 in 34) = 1, identical 15-method pair, both flagged", kFixtureSeconds, section_vb4},
        {"C4", "index and memoized bags equal brute-force oracles", kOracleSeconds, oracle_equivalence},
        {"C5", "metric laws: bounds, symmetry, equality, containment, IIC >= IIS, filter, rename, JSON", 0.0, metric_laws},
        {"C6", "analyze on the bundled corpus is byte-identical across runs", 0.0, determinism},
        {"C7", "sanity run on a real Java tree", 0.0, sanity_run},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {Outcome::Status::Fail, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (outcome.status == Outcome::Status::Pass && criterion.limit_seconds > 0.0 && seconds >= criterion.limit_seconds) {
            outcome.status = Outcome::Status::Fail;
            outcome.detail += " (over the " + str(criterion.limit_seconds) + " s limit)";
        }
        const char* label = outcome.status == Outcome::Status::Pass ? "PASS"
                            : outcome.status == Outcome::Status::Skip ? "SKIP"
                                                                      : "FAIL";
        failed += outcome.status == Outcome::Status::Fail;
        std::ostringstream time;
        time.setf(std::ios::fixed);
        time.precision(3);
        time << seconds;
        std::cout << label << " [" << criterion.id << "] " << criterion.title << " | " << outcome.detail << " | "
                  << time.str() << " s" << std::endl;
    }
    return failed ? 1 : 0;
}
