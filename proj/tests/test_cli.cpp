#include "ifacemetrics/cli.hpp"
#include "test_support.hpp"

#include <doctest.h>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

using namespace ifacemetrics;
using namespace ifacemetrics::testing;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_SUITE("analyze") {
    TEST_CASE("clean fixture") {
        const auto r = run({"analyze", fixture("clean").string(), "--fail-on-findings"});
        CHECK(r.code == cli::kExitOk);
        const auto doc = json::parse(r.out);
        CHECK(doc["findings"].empty());
        CHECK(doc["suggestions"].empty());
        CHECK(doc["stats"]["interfaces"] == 2);
    }

    TEST_CASE("Fig. 2 with --fail-on-findings") {
        const auto r = run({"analyze", fixture("fig2").string(), "--fail-on-findings"});
        CHECK(r.code == cli::kExitFindings);
        const auto doc = json::parse(r.out);
        REQUIRE(doc["findings"].size() == 6);
        for (const auto& f : doc["findings"]) CHECK(f["kind"] == "redundant-edge");
        CHECK(doc["suggestions"].size() == 6);
        const auto& row = doc["interfaces"][0];
        CHECK(row["name"] == "org.example.fig2.ii");
        CHECK(row["subh_size"] == 13);
        CHECK(row["irih"].get<double>() == 6.0 / 13.0);
        // without the flag the same run succeeds
        CHECK(run({"analyze", fixture("fig2").string()}).code == cli::kExitOk);
    }

    TEST_CASE("report layout") {
        const auto r = run({"analyze", fixture("corpus").string()});
        REQUIRE(r.code == cli::kExitOk);
        CHECK(r.err.find("Broken.java") != std::string::npos);
        const auto doc = nlohmann::ordered_json::parse(r.out);
        std::vector<std::string> keys;
        for (const auto& [k, v] : doc.items()) keys.push_back(k);
        CHECK(keys == std::vector<std::string>{"stats", "interfaces", "pairs", "findings", "suggestions", "excluded",
                                               "unresolved"});
        for (const char* k : {"classes", "interfaces", "pct_classes_implementing", "size_min", "size_max", "size_sum",
                              "system_iis", "system_iic", "system_irih"})
            CHECK(doc["stats"].contains(k));
        for (const auto& row : doc["interfaces"])
            for (const char* k : {"name", "size", "iis", "iic", "irih", "subh_size"}) CHECK(row.contains(k));
        bool saw_test = false;
        for (const auto& e : doc["excluded"]) saw_test = saw_test || e["reason"] == "test";
        CHECK(saw_test);
    }

    TEST_CASE("csv output is the two datasets") {
        const auto r = run({"analyze", fixture("diamond.json").string(), "--model-json", "--format", "csv"});
        REQUIRE(r.code == cli::kExitOk);
        CHECK(r.out == "name,size,iis,iic\nd.A,1,0,0\nd.B,1,0,0\nd.I,1,0,0\n\nname,subh,irih\nd.A,1,0\nd.B,1,0\nd.I,4,0.25\n");
    }

    TEST_CASE("table output") {
        const auto r = run({"analyze", fixture("vb4.json").string(), "--model-json", "--format", "table", "--name", "jboss"});
        REQUIRE(r.code == cli::kExitOk);
        CHECK(r.out.rfind("System\t|C|\t|I|\t|C_I|%\tmin\tmax\tsum\njboss\t0\t4\t0%\t14\t34\t78\n", 0) == 0);
        CHECK(r.out.find("identical-interfaces") != std::string::npos);
    }

    TEST_CASE("threshold, min-is and excludes") {
        const auto strict = json::parse(run({"analyze", fixture("vb4.json").string(), "--model-json", "--threshold", "1"}).out);
        for (const auto& f : strict["findings"]) CHECK(f["kind"] != "suspect-similarity");
        const auto pairs = json::parse(run({"analyze", fixture("vb4.json").string(), "--model-json", "--min-is", "1"}).out);
        CHECK(pairs["pairs"].size() == 1);
        const auto excl = json::parse(
            run({"analyze", fixture("vb4.json").string(), "--model-json", "--exclude", "*.mejb.*"}).out);
        CHECK(excl["stats"]["interfaces"] == 3);
        CHECK(excl["excluded"][0]["reason"] == "pattern");
        const auto keep = json::parse(run({"analyze", fixture("corpus").string(), "--no-test-exclude"}).out);
        CHECK(keep["stats"]["classes"].get<int>() > 7);
    }

    TEST_CASE("errors exit with 2") {
        auto r = run({"analyze", "/nonexistent/ifm/path"});
        CHECK(r.code == cli::kExitError);
        CHECK_FALSE(r.err.empty());
        CHECK(run({"analyze", fixture("clean").string(), "--threshold", "1.5"}).code == cli::kExitError);
        CHECK(run({"analyze", fixture("clean").string(), "--format", "xml"}).code == cli::kExitError);
        CHECK(run({"analyze"}).code == cli::kExitError);
        CHECK(run({}).code == cli::kExitError);
        CHECK(run({"frobnicate"}).code == cli::kExitError);
        CHECK(run({"analyze", fixture("fig1").string(), "--model-json"}).code == cli::kExitError);

        const auto bad = temp_file("ifm-bad-model.json");
        std::ofstream(bad) << R"({"schema":"iface-model/1","types":[{"name":"a.A","kind":"enum2"}]})";
        r = run({"analyze", bad.string(), "--model-json"});
        CHECK(r.code == cli::kExitError);
        CHECK(r.err.find("/types/0/kind") != std::string::npos);
        std::filesystem::remove(bad);
    }

    TEST_CASE("help") {
        const auto r = run({"--help"});
        CHECK(r.code == cli::kExitOk);
        CHECK(r.out.find("analyze") != std::string::npos);
    }

    TEST_CASE("output file") {
        const auto path = temp_file("ifm-report.json");
        const auto r = run({"analyze", fixture("fig2").string(), "-o", path.string()});
        CHECK(r.code == cli::kExitOk);
        CHECK(r.out.empty());
        CHECK(json::parse(slurp(path))["findings"].size() == 6);
        std::filesystem::remove(path);
    }
}

TEST_SUITE("single interface commands") {
    TEST_CASE("similar lists the three Fig. 1 partners") {
        for (const char* name : {"org.gudy.azureus2.plugins.disk.DiskManagerWriteRequest", "PeerReadRequest",
                                 "org.gudy.azureus2.core3.disk.DiskManagerReadRequest"}) {
            const auto r = run({"similar", name, fixture("fig1").string()});
            REQUIRE(r.code == cli::kExitOk);
            const auto doc = json::parse(r.out);
            CHECK(doc["partners"].size() == 3);
            for (const auto& p : doc["partners"]) CHECK(p["is"] == 1.0);
        }
    }

    TEST_CASE("similar sorts by IS") {
        const auto r = run({"similar", "MEJB", fixture("vb4.json").string(), "--model-json"});
        REQUIRE(r.code == cli::kExitOk);
        const auto doc = json::parse(r.out);
        REQUIRE(doc["partners"].size() == 3);
        CHECK(doc["partners"][0]["name"] == "org.jboss.management.j2ee.cluster.HAManagementServiceMBean");
        for (std::size_t k = 1; k < doc["partners"].size(); ++k)
            CHECK(doc["partners"][k - 1]["is"].get<double>() >= doc["partners"][k]["is"].get<double>());
    }

    TEST_CASE("ambiguous and unknown names") {
        auto r = run({"similar", "DiskManagerReadRequest", fixture("fig1").string()});
        CHECK(r.code == cli::kExitError);
        CHECK(r.err.find("ambiguous") != std::string::npos);

        r = run({"similar", "PeerReadRequst", fixture("fig1").string()});
        CHECK(r.code == cli::kExitError);
        CHECK(r.err.find("did you mean") != std::string::npos);
        CHECK(r.err.find("org.gudy.azureus2.plugins.peers.PeerReadRequest") != std::string::npos);
    }

    TEST_CASE("hierarchy on the diamond") {
        const auto r = run({"hierarchy", "d.I", fixture("diamond.json").string(), "--model-json", "--format", "table"});
        REQUIRE(r.code == cli::kExitOk);
        CHECK(r.out.find("total 4\n") != std::string::npos);
        CHECK(r.out.find("rep 1\n") != std::string::npos);
        CHECK(r.out.find("IRIH 0.25\n") != std::string::npos);

        const auto doc = json::parse(run({"hierarchy", "I", fixture("diamond.json").string(), "--model-json"}).out);
        CHECK(doc["total"] == 4);
        CHECK(doc["rep"] == 1);
        CHECK(doc["irih"] == 0.25);
        CHECK(doc["members"].size() == 3);
    }

    TEST_CASE("stats formats") {
        const auto r = run({"stats", fixture("clean").string(), "--format", "table", "--name", "clean"});
        CHECK(r.out == "System\t|C|\t|I|\t|C_I|%\tmin\tmax\tsum\nclean\t1\t2\t100%\t1\t2\t3\n");
        const auto csv = run({"stats", fixture("clean").string(), "--format", "csv"});
        CHECK(csv.out == "classes,interfaces,pct_classes_implementing,size_min,size_max,size_sum\n1,2,1,1,2,3\n");
        const auto doc = json::parse(run({"stats", fixture("clean").string()}).out);
        CHECK(doc["classes"] == 1);
    }
}

TEST_SUITE("export-model") {
    TEST_CASE("analyzing the export equals analyzing the sources") {
        const auto path = temp_file("ifm-export.json");
        REQUIRE(run({"export-model", fixture("corpus").string(), "-o", path.string()}).code == cli::kExitOk);
        const auto from_source = run({"analyze", fixture("corpus").string()});
        const auto from_model = run({"analyze", path.string(), "--model-json"});
        CHECK(from_model.code == cli::kExitOk);
        CHECK(from_model.out == from_source.out);
        std::filesystem::remove(path);
        CHECK(run({"export-model", fixture("corpus").string()}).code == cli::kExitError);
    }
}

TEST_SUITE("nearest names") {
    TEST_CASE("edit distance on qualified or simple names") {
        const std::vector<std::string> names = {"a.b.Alpha", "a.b.Beta", "c.Gamma", "c.Alphabet"};
        CHECK(cli::nearest_names("Alpah", names, 1) == std::vector<std::string>{"a.b.Alpha"});
        CHECK(cli::nearest_names("x", names).size() == 3);
        CHECK(cli::nearest_names("x", {}).empty());
    }
}
