#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "doctest.h"

#include "lexkg/lexkg.h"

namespace fs = std::filesystem;

namespace {

fs::path fixtures() { return LEXKG_FIXTURES; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Takes ownership of a library string.
std::string take(char* s) {
    std::string out = s ? s : "";
    lexkg_string_free(s);
    return out;
}

fs::path temp_dir(const std::string& name) {
    static std::random_device rd;
    auto p = fs::temp_directory_path() / ("lexkg-capi-" + name + "-" + std::to_string(rd()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

struct Ontology {
    lexkg_ontology* p = nullptr;
    Ontology() { REQUIRE(lexkg_ontology_builtin(&p) == LEXKG_OK); }
    ~Ontology() { lexkg_ontology_free(p); }
};

struct Graph {
    lexkg_graph* p = nullptr;
    ~Graph() { lexkg_graph_free(p); }
};

struct Report {
    lexkg_report* p = nullptr;
    ~Report() { lexkg_report_free(p); }
};

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::strlen(lexkg_version()) > 0);
    CHECK(std::string(lexkg_status_name(LEXKG_OK)) == "ok");
    CHECK(std::string(lexkg_status_name(LEXKG_ERR_PARSE)) == "parse_error");
    CHECK(std::string(lexkg_status_name(static_cast<lexkg_status>(12345))) == "unknown");
}

TEST_CASE("null arguments are rejected, not dereferenced") {
    lexkg_graph* g = nullptr;
    CHECK(lexkg_graph_parse_turtle(nullptr, 0, &g) == LEXKG_ERR_INVALID_ARGUMENT);
    CHECK(lexkg_graph_parse_turtle("x", 1, nullptr) == LEXKG_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(lexkg_last_error()) > 0);
    CHECK(lexkg_graph_size(nullptr) == 0);
    lexkg_graph_free(nullptr);
    lexkg_ontology_free(nullptr);
    lexkg_report_free(nullptr);
    lexkg_string_free(nullptr);
    char* out = nullptr;
    CHECK(lexkg_graph_to_ntriples(nullptr, &out) == LEXKG_ERR_INVALID_ARGUMENT);
    CHECK(lexkg_validate(nullptr, nullptr, LEXKG_MODE_LENIENT, nullptr) == LEXKG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("parse errors report their location") {
    Graph g;
    const std::string text = "@prefix ex: <urn:x:> .\nex:a ex:b";
    CHECK(lexkg_graph_parse_turtle(text.data(), text.size(), &g.p) == LEXKG_ERR_PARSE);
    CHECK(g.p == nullptr);
    size_t line = 0, col = 0;
    lexkg_last_error_location(&line, &col);
    CHECK(line == 2);
    CHECK(col > 0);
    CHECK(std::string(lexkg_last_error()).find("line 2") != std::string::npos);

    // Success does not clear the previous error, a new failure replaces it.
    Graph ok;
    CHECK(lexkg_graph_parse_turtle("<urn:a> <urn:b> <urn:c> .", 25, &ok.p) == LEXKG_OK);
    Graph bad;
    CHECK(lexkg_graph_parse_ntriples("<urn:a> <urn:b>", 15, &bad.p) == LEXKG_ERR_PARSE);
    lexkg_last_error_location(&line, &col);
    CHECK(line == 1);
}

TEST_CASE("graph round trip through both serializations") {
    Graph g;
    REQUIRE(lexkg_graph_load_file((fixtures() / "validator" / "clean.ttl").c_str(), &g.p) == LEXKG_OK);
    CHECK(lexkg_graph_size(g.p) == 20);
    char* nt = nullptr;
    REQUIRE(lexkg_graph_to_ntriples(g.p, &nt) == LEXKG_OK);
    const std::string nts = take(nt);
    Graph back;
    REQUIRE(lexkg_graph_parse_ntriples(nts.data(), nts.size(), &back.p) == LEXKG_OK);
    CHECK(lexkg_graph_size(back.p) == 20);
    char* ttl = nullptr;
    REQUIRE(lexkg_graph_to_turtle(g.p, &ttl) == LEXKG_OK);
    const std::string ttls = take(ttl);
    CHECK(ttls.find("@prefix fca:") != std::string::npos);
    Graph again;
    REQUIRE(lexkg_graph_parse_turtle(ttls.data(), ttls.size(), &again.p) == LEXKG_OK);
    char* nt2 = nullptr;
    REQUIRE(lexkg_graph_to_ntriples(again.p, &nt2) == LEXKG_OK);
    CHECK(take(nt2) == nts);

    const auto dir = temp_dir("rt");
    REQUIRE(lexkg_graph_write_ntriples(g.p, (dir / "g.nt").c_str()) == LEXKG_OK);
    CHECK(slurp(dir / "g.nt") == nts);
    Graph from_nt;
    REQUIRE(lexkg_graph_load_file((dir / "g.nt").c_str(), &from_nt.p) == LEXKG_OK);
    CHECK(lexkg_graph_size(from_nt.p) == 20);
    CHECK(lexkg_graph_load_file((dir / "missing.ttl").c_str(), &from_nt.p) == LEXKG_ERR_IO);
    fs::remove_all(dir);
}

TEST_CASE("validation through handles") {
    Ontology o;
    Graph good, bad;
    REQUIRE(lexkg_graph_load_file((fixtures() / "cli" / "good.ttl").c_str(), &good.p) == LEXKG_OK);
    REQUIRE(lexkg_graph_load_file((fixtures() / "cli" / "bad.ttl").c_str(), &bad.p) == LEXKG_OK);
    Report r1, r2;
    REQUIRE(lexkg_validate(good.p, o.p, LEXKG_MODE_STRICT, &r1.p) == LEXKG_OK);
    CHECK(lexkg_report_violation_count(r1.p) == 0);
    REQUIRE(lexkg_validate(bad.p, o.p, LEXKG_MODE_LENIENT, &r2.p) == LEXKG_OK);
    CHECK(lexkg_report_error_count(r2.p) == 1);
    CHECK(lexkg_report_warning_count(r2.p) == 0);
    char* text = nullptr;
    REQUIRE(lexkg_report_text(r2.p, &text) == LEXKG_OK);
    CHECK(take(text).rfind("BadLiteral", 0) == 0);
    char* json = nullptr;
    REQUIRE(lexkg_report_json(r2.p, &json) == LEXKG_OK);
    const auto j = nlohmann::json::parse(take(json));
    CHECK(j["errors"] == 1);
    CHECK(j["violations"][0]["rule"] == "BadLiteral");
}

TEST_CASE("ontology handles") {
    Ontology o;
    char* table = nullptr;
    REQUIRE(lexkg_ontology_table(o.p, &table) == LEXKG_OK);
    CHECK(take(table).find("fca:durationDays") != std::string::npos);
    char* problems = nullptr;
    size_t count = 99;
    REQUIRE(lexkg_ontology_check(o.p, &problems, &count) == LEXKG_OK);
    CHECK(count == 0);
    take(problems);
    char* src = nullptr;
    REQUIRE(lexkg_ontology_source(o.p, &src) == LEXKG_OK);
    const std::string source = take(src);
    lexkg_ontology* copy = nullptr;
    REQUIRE(lexkg_ontology_from_turtle(source.data(), source.size(), &copy) == LEXKG_OK);
    lexkg_ontology_free(copy);
    const std::string cyclic =
        "@prefix ex: <urn:ex:> . @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> . "
        "@prefix owl: <http://www.w3.org/2002/07/owl#> . ex:A a owl:Class ; rdfs:subClassOf ex:A2 . "
        "ex:A2 a owl:Class ; rdfs:subClassOf ex:A .";
    lexkg_ontology* bad = nullptr;
    CHECK(lexkg_ontology_from_turtle(cyclic.data(), cyclic.size(), &bad) == LEXKG_ERR_ONTOLOGY);
    CHECK(bad == nullptr);
}

TEST_CASE("batch run, merge, query, stats, export and cost") {
    Ontology o;
    const auto out = temp_dir("batch");
    nlohmann::json cfg = {{"out_dir", out.string()},
                          {"mock_dir", (fixtures() / "corpus10" / "mock").string()},
                          {"max_inflight", 3},
                          {"backoff_initial_seconds", 0}};
    std::vector<std::string> progress;
    auto cb = [](void* user, const char* id, const char* status) {
        static_cast<std::vector<std::string>*>(user)->push_back(std::string(id) + "=" + status);
    };
    char* state = nullptr;
    REQUIRE(lexkg_run_batch((fixtures() / "corpus10" / "corpus.jsonl").c_str(), cfg.dump().c_str(), o.p, cb,
                            &progress, &state) == LEXKG_OK);
    const auto st = nlohmann::json::parse(take(state));
    CHECK(st["totals"]["valid"] == 8);
    CHECK(progress.size() == 10);

    Graph merged;
    REQUIRE(lexkg_merge_outputs(out.c_str(), &merged.p) == LEXKG_OK);
    CHECK(lexkg_graph_size(merged.p) > 0);

    char* rows_text = nullptr;
    size_t rows = 0;
    REQUIRE(lexkg_query(merged.p, "?c fca:hasAppeal ?a .", o.p, &rows_text, &rows) == LEXKG_OK);
    CHECK(rows > 0);
    CHECK(take(rows_text).rfind("?a\t?c\n", 0) == 0);
    CHECK(lexkg_query(merged.p, "?c fca:hasAppeal", o.p, &rows_text, &rows) == LEXKG_ERR_PARSE);
    CHECK(lexkg_query(merged.p, "_:b fca:hasAppeal ?x .", o.p, &rows_text, &rows) == LEXKG_ERR_QUERY);

    lexkg_stats_options opts{0, 1};
    char* table = nullptr;
    char* csv = nullptr;
    char* plot = nullptr;
    REQUIRE(lexkg_stats(LEXKG_STATS_DURATION, out.c_str(), o.p, &opts, &table, &csv, &plot) == LEXKG_OK);
    CHECK(take(table).find("Rejected") != std::string::npos);
    CHECK(take(csv).rfind("bin_lo,bin_hi,count,fraction,group", 0) == 0);
    CHECK(nlohmann::json::parse(take(plot)).contains("groups"));
    REQUIRE(lexkg_stats(LEXKG_STATS_TRIPLES, out.c_str(), o.p, nullptr, &table, nullptr, nullptr) == LEXKG_OK);
    take(table);
    REQUIRE(lexkg_stats(LEXKG_STATS_OFFENSES, out.c_str(), o.p, nullptr, nullptr, &csv, nullptr) == LEXKG_OK);
    CHECK(take(csv).find("ViolentOffense") != std::string::npos);
    CHECK(lexkg_stats(LEXKG_STATS_FINES, (out / "nope").c_str(), o.p, nullptr, &table, nullptr, nullptr) ==
          LEXKG_ERR_IO);

    size_t nodes = 0, edges = 0;
    REQUIRE(lexkg_export_property_graph(merged.p, o.p, (out / "pg").c_str(), &nodes, &edges) == LEXKG_OK);
    CHECK(nodes > 0);
    CHECK(edges > 0);
    CHECK(fs::exists(out / "pg" / "nodes.csv"));

    char* cost = nullptr;
    REQUIRE(lexkg_cost_from_state((out / "run-state.json").c_str(), 0.15, 0.60, &cost) == LEXKG_OK);
    const auto c = nlohmann::json::parse(take(cost));
    CHECK(c["documents"] == 10);
    CHECK(c["requests"] == 15);

    // Different rules, same state file.
    std::ofstream(out / "rules.txt") << "Only one rule.\n";
    cfg["rules_path"] = (out / "rules.txt").string();
    CHECK(lexkg_run_batch((fixtures() / "corpus10" / "corpus.jsonl").c_str(), cfg.dump().c_str(), o.p, nullptr,
                          nullptr, nullptr) == LEXKG_ERR_STATE_MISMATCH);
    fs::remove_all(out);
}

TEST_CASE("batch configuration errors") {
    Ontology o;
    const std::string corpus = (fixtures() / "corpus10" / "corpus.jsonl").string();
    CHECK(lexkg_run_batch(corpus.c_str(), "{", o.p, nullptr, nullptr, nullptr) == LEXKG_ERR_CONFIG);
    CHECK(lexkg_run_batch(corpus.c_str(), "{}", o.p, nullptr, nullptr, nullptr) == LEXKG_ERR_CONFIG);
    CHECK(lexkg_run_batch(corpus.c_str(), R"({"out_dir":"x","max_inflight":0})", o.p, nullptr, nullptr, nullptr) ==
          LEXKG_ERR_CONFIG);
    CHECK(lexkg_run_batch(corpus.c_str(), R"({"out_dir":"x","bogus":1})", o.p, nullptr, nullptr, nullptr) ==
          LEXKG_ERR_CONFIG);
    CHECK(lexkg_run_batch(corpus.c_str(), R"({"out_dir":"x","backend":{"endpoint":"ftp://x"}})", o.p, nullptr,
                          nullptr, nullptr) == LEXKG_ERR_CONFIG);
    CHECK(lexkg_run_batch("/nonexistent.jsonl", R"({"out_dir":"x"})", o.p, nullptr, nullptr, nullptr) ==
          LEXKG_ERR_IO);
}

TEST_CASE("cost estimate") {
    const lexkg_cost_record recs[] = {{10000, 1000}, {0, 0}};
    int64_t pico = 0;
    REQUIRE(lexkg_estimate_cost(recs, 2, 0.15, 0.60, &pico) == LEXKG_OK);
    CHECK(pico == 2100000000);
    CHECK(lexkg_estimate_cost(recs, 2, -1, 0.60, &pico) == LEXKG_ERR_CONFIG);
    CHECK(lexkg_estimate_cost(nullptr, 0, 0.15, 0.60, &pico) == LEXKG_OK);
    CHECK(pico == 0);
}
