#include "ifacemetrics/cli.hpp"

#include "ifacemetrics/anomaly_report.hpp"
#include "ifacemetrics/errors.hpp"
#include "ifacemetrics/hierarchy.hpp"
#include "ifacemetrics/java_frontend.hpp"
#include "ifacemetrics/model_json.hpp"
#include "ifacemetrics/similarity.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

namespace ifacemetrics::cli {
namespace {

using nlohmann::ordered_json;

enum class Format { Json, Csv, Table };

struct RunConfig {
    std::vector<std::string> inputs;
    bool model_json = false;
    double threshold = kDefaultThreshold;
    double min_is = 0.0;
    bool no_test_exclude = false;
    bool no_default_methods = false;
    std::vector<std::string> exclude;
    Format format = Format::Json;
    bool fail_on_findings = false;
    std::string output;
    std::string system_name = "system";
};

struct Loaded {
    CodeModel full;
    CodeModel scoped;
    std::vector<std::string> warnings;
};

Loaded load(const RunConfig& cfg, std::ostream& err) {
    if (cfg.inputs.empty()) throw ConfigError("no input paths");
    if (!(cfg.threshold >= 0.0 && cfg.threshold <= 1.0)) throw ConfigError("--threshold must lie in [0, 1]");

    std::vector<TypeDecl> decls;
    Loaded loaded;
    if (cfg.model_json) {
        for (const auto& in : cfg.inputs) {
            auto part = load_model_json(in);
            decls.insert(decls.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        }
    } else {
        java::ScanOptions opts;
        opts.include_default_methods = !cfg.no_default_methods;
        opts.exclude_path_patterns = cfg.exclude;
        std::vector<std::filesystem::path> roots(cfg.inputs.begin(), cfg.inputs.end());
        auto scanned = java::scan_paths(roots, opts);
        decls = std::move(scanned.types);
        loaded.warnings = std::move(scanned.warnings);
    }
    for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';

    loaded.full = build_model(std::move(decls));
    ExclusionPolicy policy;
    policy.exclude_tests = !cfg.no_test_exclude;
    policy.exclude_patterns = cfg.exclude;
    loaded.scoped = filter_model(loaded.full, policy);
    return loaded;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) throw Error("cannot write " + cfg.output);
    file << text;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json names_json(const std::vector<TypeName>& names) {
    ordered_json arr = ordered_json::array();
    for (const auto& n : names) arr.push_back(n.qualified());
    return arr;
}

ordered_json stats_json(const CorpusStats& s) {
    ordered_json j;
    j["classes"] = s.class_count;
    j["interfaces"] = s.interface_count;
    j["pct_classes_implementing"] = s.pct_classes_implementing;
    j["size_min"] = s.size_min ? ordered_json(*s.size_min) : ordered_json(nullptr);
    j["size_max"] = s.size_max ? ordered_json(*s.size_max) : ordered_json(nullptr);
    j["size_sum"] = s.size_sum;
    return j;
}

/// Resolves a user-supplied interface name: exact qualified name, else a
/// unique simple name. Throws DomainError with suggestions otherwise.
TypeName lookup_interface(const CodeModel& model, const std::string& query) {
    std::vector<std::string> names;
    std::vector<TypeName> simple_hits;
    for (const auto& i : model.interfaces()) {
        if (i.qualified() == query) return i;
        if (i.simple() == query) simple_hits.push_back(i);
        names.push_back(i.qualified());
    }
    if (simple_hits.size() == 1) return simple_hits.front();
    std::string msg = "unknown interface '" + query + "'";
    if (simple_hits.size() > 1) {
        msg += "; ambiguous, candidates:";
        for (const auto& h : simple_hits) msg += " " + h.qualified();
    } else if (auto near = nearest_names(query, names); !near.empty()) {
        msg += "; did you mean:";
        for (const auto& n : near) msg += " " + n;
    }
    throw DomainError(msg);
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Loaded loaded = load(cfg, err);
    const CodeModel& model = loaded.scoped;
    const SimilarityReport sim = similarity_report(model);
    const HierarchyReport hier = hierarchy_report(model);
    const auto findings = detect_findings(model, sim, hier, cfg.threshold);
    const auto suggestions = suggest(findings, model);
    const CorpusStats stats = corpus_stats(model);
    for (const auto& w : sim.warnings) err << "warning: " << w << '\n';

    std::string text;
    if (cfg.format == Format::Csv) {
        text = similarity_csv(sim) + "\n" + hierarchy_csv(hier);
    } else if (cfg.format == Format::Table) {
        std::ostringstream os;
        os << corpus_stats_table(cfg.system_name, stats) << '\n';
        os << "IIS(J) " << format_ratio(sim.system_iis) << "  IIC(J) " << format_ratio(sim.system_iic)
           << "  mean IRIH " << format_ratio(hier.system_irih) << "\n\n";
        os << std::left << std::setw(60) << "interface" << std::right << std::setw(6) << "size" << std::setw(10)
           << "IIS" << std::setw(10) << "IIC" << std::setw(8) << "|subH|" << std::setw(10) << "IRIH" << '\n';
        for (const auto& [name, entry] : sim.per_interface) {
            const auto& h = hier.per_interface.at(name);
            os << std::left << std::setw(60) << name.qualified() << std::right << std::setw(6) << entry.size
               << std::setw(10) << std::setprecision(4) << entry.iis.value << std::setw(10) << entry.iic.value
               << std::setw(8) << h.subh_size << std::setw(10) << h.irih << '\n';
        }
        os << "\nfindings: " << findings.size() << '\n';
        for (const auto& f : findings) {
            os << "  " << to_string(f.kind) << ' ' << format_ratio(f.score);
            for (const auto& s : f.subjects) os << ' ' << s.qualified();
            os << '\n';
        }
        os << "suggestions: " << suggestions.size() << '\n';
        for (const auto& s : suggestions) os << "  " << to_string(s.action) << ": " << s.rationale << '\n';
        text = os.str();
    } else {
        ordered_json doc;
        ordered_json st = stats_json(stats);
        st["system_iis"] = sim.system_iis;
        st["system_iic"] = sim.system_iic;
        st["system_irih"] = hier.system_irih;
        doc["stats"] = std::move(st);

        ordered_json ifaces = ordered_json::array();
        for (const auto& [name, entry] : sim.per_interface) {
            const auto& h = hier.per_interface.at(name);
            ordered_json row;
            row["name"] = name.qualified();
            row["size"] = entry.size;
            row["iis"] = entry.iis.value;
            row["iic"] = entry.iic.value;
            row["irih"] = h.irih;
            row["subh_size"] = h.subh_size;
            row["iis_partner"] = entry.iis.partner ? ordered_json(entry.iis.partner->qualified()) : ordered_json(nullptr);
            row["iic_partner"] = entry.iic.partner ? ordered_json(entry.iic.partner->qualified()) : ordered_json(nullptr);
            ifaces.push_back(std::move(row));
        }
        doc["interfaces"] = std::move(ifaces);

        ordered_json pairs = ordered_json::array();
        for (const auto& p : similarity_pairs(model, cfg.min_is)) {
            pairs.push_back({{"a", p.a.qualified()},
                             {"b", p.b.qualified()},
                             {"shared", p.shared},
                             {"union", p.union_size},
                             {"is", p.is},
                             {"ic_ab", p.ic_ab},
                             {"ic_ba", p.ic_ba}});
        }
        doc["pairs"] = std::move(pairs);

        ordered_json fs = ordered_json::array();
        for (const auto& f : findings) {
            fs.push_back({{"kind", std::string(to_string(f.kind))},
                          {"subjects", names_json(f.subjects)},
                          {"score", f.score},
                          {"evidence", f.evidence}});
        }
        doc["findings"] = std::move(fs);

        ordered_json ss = ordered_json::array();
        for (const auto& s : suggestions) {
            ss.push_back({{"action", std::string(to_string(s.action))},
                          {"subjects", names_json(s.subjects)},
                          {"rationale", s.rationale}});
        }
        doc["suggestions"] = std::move(ss);

        ordered_json excluded = ordered_json::array();
        for (const auto& e : model.exclusions())
            excluded.push_back({{"name", e.type.qualified()}, {"reason", std::string(to_string(e.reason))}});
        doc["excluded"] = std::move(excluded);
        doc["unresolved"] = loaded.full.unresolved().size();
        text = dump(doc);
    }
    emit(cfg, out, text);
    return cfg.fail_on_findings && !findings.empty() ? kExitFindings : kExitOk;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Loaded loaded = load(cfg, err);
    const CorpusStats stats = corpus_stats(loaded.scoped);
    std::string text;
    auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); };
    switch (cfg.format) {
        case Format::Json: text = dump(stats_json(stats)); break;
        case Format::Csv:
            text = "classes,interfaces,pct_classes_implementing,size_min,size_max,size_sum\n" +
                   std::to_string(stats.class_count) + "," + std::to_string(stats.interface_count) + "," +
                   format_ratio(stats.pct_classes_implementing) + "," + opt(stats.size_min) + "," +
                   opt(stats.size_max) + "," + std::to_string(stats.size_sum) + "\n";
            break;
        case Format::Table: text = corpus_stats_table(cfg.system_name, stats); break;
    }
    emit(cfg, out, text);
    return kExitOk;
}

int cmd_similar(const RunConfig& cfg, const std::string& query, std::ostream& out, std::ostream& err) {
    const Loaded loaded = load(cfg, err);
    const CodeModel& model = loaded.scoped;
    const TypeName target = lookup_interface(model, query);
    std::vector<PairScore> rows;
    for (const auto& x : semi(target, model)) rows.push_back(score_pair(target, x, model));
    std::stable_sort(rows.begin(), rows.end(), [](const PairScore& a, const PairScore& b) { return a.is > b.is; });

    std::string text;
    if (cfg.format == Format::Json) {
        ordered_json doc;
        doc["interface"] = target.qualified();
        doc["size"] = model.at(target).signatures.size();
        ordered_json partners = ordered_json::array();
        for (const auto& p : rows)
            partners.push_back({{"name", p.b.qualified()}, {"shared", p.shared}, {"is", p.is},
                                {"ic", p.ic_ab}, {"ic_reverse", p.ic_ba}});
        doc["partners"] = std::move(partners);
        text = dump(doc);
    } else if (cfg.format == Format::Csv) {
        text = "partner,shared,is,ic,ic_reverse\n";
        for (const auto& p : rows)
            text += p.b.qualified() + "," + std::to_string(p.shared) + "," + format_ratio(p.is) + "," +
                    format_ratio(p.ic_ab) + "," + format_ratio(p.ic_ba) + "\n";
    } else {
        std::ostringstream os;
        os << target.qualified() << " (" << model.at(target).signatures.size() << " methods), " << rows.size()
           << " similar interfaces\n";
        for (const auto& p : rows)
            os << "  " << std::left << std::setw(60) << p.b.qualified() << " shared " << p.shared << "  IS "
               << format_ratio(p.is) << "  IC " << format_ratio(p.ic_ab) << '\n';
        text = os.str();
    }
    emit(cfg, out, text);
    return kExitOk;
}

int cmd_hierarchy(const RunConfig& cfg, const std::string& query, std::ostream& out, std::ostream& err) {
    const Loaded loaded = load(cfg, err);
    const CodeModel& model = loaded.scoped;
    const TypeName target = lookup_interface(model, query);
    const HierarchyIndex index(model, {target});
    const HierarchyBag bag = index.sub_h(target);
    const std::uint64_t rep = index.rep_total(target);
    const double value = index.irih(target);

    std::string text;
    if (cfg.format == Format::Json) {
        ordered_json doc;
        doc["interface"] = target.qualified();
        doc["total"] = bag.total;
        doc["distinct"] = bag.distinct();
        doc["rep"] = rep;
        doc["irih"] = value;
        ordered_json members = ordered_json::array();
        for (const auto& [name, count] : bag.counts) members.push_back({{"name", name.qualified()}, {"count", count}});
        doc["members"] = std::move(members);
        text = dump(doc);
    } else if (cfg.format == Format::Csv) {
        text = "name,count\n";
        for (const auto& [name, count] : bag.counts) text += name.qualified() + "," + std::to_string(count) + "\n";
    } else {
        std::ostringstream os;
        os << "subH(" << target.qualified() << ")\n";
        for (const auto& [name, count] : bag.counts) os << "  " << name.qualified() << " x" << count << '\n';
        os << "total " << bag.total << '\n' << "rep " << rep << '\n' << "IRIH " << format_ratio(value) << '\n';
        text = os.str();
    }
    emit(cfg, out, text);
    return kExitOk;
}

int cmd_export_model(const RunConfig& cfg, std::ostream& err) {
    if (cfg.output.empty()) throw ConfigError("export-model needs --output");
    const Loaded loaded = load(cfg, err);
    save_model_json(loaded.full, cfg.output);
    return kExitOk;
}

void add_common(CLI::App& cmd, RunConfig& cfg, bool with_format = true) {
    cmd.add_option("inputs", cfg.inputs, "Java source roots/files, or model JSON files with --model-json")
        ->required();
    cmd.add_flag("--model-json", cfg.model_json, "Inputs are iface-model/1 JSON files");
    cmd.add_option("--threshold", cfg.threshold, "Critical IIS/IIC value (default 0.5)");
    cmd.add_flag("--no-test-exclude", cfg.no_test_exclude, "Keep test classes in scope");
    cmd.add_option("--exclude", cfg.exclude, "Glob on qualified type names and relative file paths")
        ->take_all();
    cmd.add_flag("--no-default-methods", cfg.no_default_methods, "Do not count default interface methods");
    cmd.add_option("-o,--output", cfg.output, "Write to this file instead of stdout");
    if (with_format) {
        const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}, {"table", Format::Table}};
        const CLI::Validator by_name(
            [formats](std::string& value) {
                const auto it = formats.find(value);
                if (it == formats.end()) return "expected json, csv or table, got '" + value + "'";
                value = std::to_string(static_cast<int>(it->second));
                return std::string();
            },
            "");
        cmd.add_option("--format", cfg.format, "json, csv or table")->transform(by_name)->type_name("json|csv|table");
    }
}

}  // namespace

std::vector<std::string> nearest_names(const std::string& query, const std::vector<std::string>& candidates,
                                       std::size_t limit) {
    auto distance = [](std::string_view a, std::string_view b) {
        std::vector<std::size_t> row(b.size() + 1);
        for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
        for (std::size_t i = 1; i <= a.size(); ++i) {
            std::size_t diag = row[0];
            row[0] = i;
            for (std::size_t j = 1; j <= b.size(); ++j) {
                const std::size_t up = row[j];
                row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
                diag = up;
            }
        }
        return row[b.size()];
    };
    std::vector<std::pair<std::size_t, std::string>> scored;
    for (const auto& c : candidates) {
        const auto dot = c.rfind('.');
        const std::string_view simple = dot == std::string::npos ? std::string_view(c) : std::string_view(c).substr(dot + 1);
        scored.emplace_back(std::min(distance(query, c), distance(query, simple)), c);
    }
    std::sort(scored.begin(), scored.end());
    std::vector<std::string> out;
    for (std::size_t k = 0; k < scored.size() && k < limit; ++k) out.push_back(scored[k].second);
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interface design metrics for Java code bases", "ifacemetrics"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string interface_name;

    auto* analyze = app.add_subcommand("analyze", "Similarity, clone and hierarchy metrics with findings");
    add_common(*analyze, cfg);
    analyze->add_option("--min-is", cfg.min_is, "Only list pairs with IS at or above this value");
    analyze->add_flag("--fail-on-findings", cfg.fail_on_findings, "Exit 1 when anything is reported");
    analyze->add_option("--name", cfg.system_name, "System name for table output");

    auto* stats = app.add_subcommand("stats", "Class/interface counts and interface size statistics");
    add_common(*stats, cfg);
    stats->add_option("--name", cfg.system_name, "System name for table output");

    auto* similar = app.add_subcommand("similar", "Interfaces sharing signatures with one interface");
    similar->add_option("interface", interface_name, "Qualified or unique simple name")->required();
    add_common(*similar, cfg);

    auto* hierarchy = app.add_subcommand("hierarchy", "Sub-hierarchy multiset and IRIH of one interface");
    hierarchy->add_option("interface", interface_name, "Qualified or unique simple name")->required();
    add_common(*hierarchy, cfg);

    auto* export_model = app.add_subcommand("export-model", "Write the extracted model as iface-model/1 JSON");
    add_common(*export_model, cfg, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(cfg, out, err);
        if (stats->parsed()) return cmd_stats(cfg, out, err);
        if (similar->parsed()) return cmd_similar(cfg, interface_name, out, err);
        if (hierarchy->parsed()) return cmd_hierarchy(cfg, interface_name, out, err);
        if (export_model->parsed()) return cmd_export_model(cfg, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace ifacemetrics::cli
