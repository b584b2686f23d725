#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

fs::path fixtures() { return LEXKG_FIXTURES; }

struct Run {
    int code = -1;
    std::string out;  // stdout and stderr
};

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Run lexkg(const std::string& args) {
    const std::string cmd = quote(LEXKG_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path temp_dir(const std::string& name) {
    static std::random_device rd;
    auto p = fs::temp_directory_path() / ("lexkg-cli-" + name + "-" + std::to_string(rd()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string fx(const fs::path& rel) { return quote((fixtures() / rel).string()); }

std::string extract_args(const fs::path& out) {
    return "extract --corpus " + fx("corpus10/corpus.jsonl") + " --mock " + fx("corpus10/mock") + " --out " +
           quote(out.string());
}

}  // namespace

TEST_CASE("validate: clean and faulty files") {
    const auto good = lexkg("validate " + fx("cli/good.ttl"));
    CHECK(good.code == 0);
    CHECK(good.out.find("0 violations") != std::string::npos);

    const auto bad = lexkg("validate " + fx("cli/bad.ttl"));
    CHECK(bad.code == 1);
    CHECK(bad.out.find("BadLiteral") != std::string::npos);
    CHECK(bad.out.find("1 violations (1 errors, 0 warnings)") != std::string::npos);

    const auto json = lexkg("validate --json " + fx("cli/bad.ttl"));
    CHECK(json.code == 1);
    CHECK(json.out.find("\"rule\": \"BadLiteral\"") != std::string::npos);

    const auto strict = lexkg("validate --strict " + fx("cli/good.ttl"));
    CHECK(strict.code == 0);

    const auto dir = temp_dir("val");
    std::ofstream(dir / "broken.ttl") << "@prefix ex: <urn:x:> .\nex:a ex:b\n";
    const auto broken = lexkg("validate " + quote((dir / "broken.ttl").string()));
    CHECK(broken.code == 1);
    CHECK(broken.out.find("ParseError") != std::string::npos);
    CHECK(broken.out.find("line") != std::string::npos);
    const auto missing = lexkg("validate " + quote((dir / "missing.ttl").string()));
    CHECK(missing.code == 4);
    fs::remove_all(dir);
}

TEST_CASE("usage errors exit with 2 and point at the help") {
    const auto r = lexkg("extract --out /tmp/x");
    CHECK(r.code == 2);
    CHECK(r.out.find("--corpus") != std::string::npos);
    CHECK(lexkg("").code == 2);
    CHECK(lexkg("frobnicate").code == 2);
    CHECK(lexkg("stats nonsense " + fx("cli")).code == 2);
    CHECK(lexkg("--help").code == 0);
}

TEST_CASE("ontology subcommands") {
    const auto show = lexkg("ontology show");
    CHECK(show.code == 0);
    CHECK(show.out.find("fca:CustodialPunishment") != std::string::npos);
    const auto check = lexkg("ontology check");
    CHECK(check.code == 0);
    CHECK(check.out.find("ontology OK") != std::string::npos);
}

TEST_CASE("extract with the mock backend, then merge, query, stats, export, cost") {
    const auto dir = temp_dir("pipe");
    const auto out = dir / "out";
    // The default endpoint is never contacted in mock mode.
    const auto run = lexkg(extract_args(out) + " --csv " + quote((dir / "summary.csv").string()));
    CHECK(run.code == 0);
    CHECK(run.out.find("valid            8") != std::string::npos);
    CHECK(run.out.find("parse_failed     1") != std::string::npos);
    CHECK(run.out.find("requests         15") != std::string::npos);
    const std::string csv1 = slurp(dir / "summary.csv");
    CHECK(csv1.rfind("id,status,attempts,input_tokens,output_tokens,requests\n", 0) == 0);

    // Second run of a fresh directory produces identical bytes.
    const auto out2 = dir / "out2";
    CHECK(lexkg(extract_args(out2) + " --max-inflight 1 --csv " + quote((dir / "summary2.csv").string())).code == 0);
    CHECK(slurp(dir / "summary2.csv") == csv1);

    const auto merged = dir / "merged.nt";
    CHECK(lexkg("merge " + quote(out.string()) + " --out " + quote(merged.string())).code == 0);
    CHECK(lexkg("merge " + quote(out2.string()) + " --out " + quote((dir / "merged2.nt").string())).code == 0);
    CHECK(slurp(merged) == slurp(dir / "merged2.nt"));

    const auto q = lexkg("query " + fx("cli/decisions.rq") + " " + quote(merged.string()));
    CHECK(q.code == 0);
    CHECK(q.out.rfind("?appeal\t?case\t?conviction\n", 0) == 0);

    const auto triples = lexkg("stats triples " + quote(out.string()));
    CHECK(triples.code == 0);
    const auto offenses = lexkg("stats offenses " + quote(merged.string()) + " --csv " +
                                quote((dir / "off.csv").string()));
    CHECK(offenses.code == 0);
    CHECK(slurp(dir / "off.csv").find("ViolentOffense") != std::string::npos);
    const auto dur = lexkg("stats duration " + quote(merged.string()) + " --plot-json " +
                           quote((dir / "plot.json").string()));
    CHECK(dur.code == 0);
    CHECK(dur.out.find("Rejected") != std::string::npos);
    CHECK(fs::file_size(dir / "plot.json") > 0);
    CHECK(lexkg("stats fines " + quote(merged.string()) + " --linear-bins --bin-width 500").code == 0);

    const auto pg = lexkg("export pg " + quote(merged.string()) + " --out " + quote((dir / "pg").string()));
    CHECK(pg.code == 0);
    CHECK(fs::exists(dir / "pg" / "nodes.csv"));
    CHECK(fs::exists(dir / "pg" / "edges.csv"));

    const auto cost = lexkg("cost " + quote((out / "run-state.json").string()));
    CHECK(cost.code == 0);
    CHECK(cost.out.find("documents           10") != std::string::npos);
    CHECK(cost.out.find("requests            15") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("extract: resume, fingerprint mismatch, backend failures") {
    const auto dir = temp_dir("resume");
    const auto out = dir / "out";
    const auto first = lexkg(extract_args(out) + " --limit 5");
    CHECK(first.code == 0);
    CHECK(first.out.find("pending          5") != std::string::npos);
    const auto second = lexkg(extract_args(out));
    CHECK(second.code == 0);
    CHECK(second.out.find("pending          0") != std::string::npos);

    std::ofstream(dir / "rules.txt") << "A different rule.\n";
    const auto mismatch = lexkg(extract_args(out) + " --rules " + quote((dir / "rules.txt").string()));
    CHECK(mismatch.code == 4);
    CHECK(mismatch.out.find("fingerprint") != std::string::npos);

    // A document whose every response is a backend error.
    fs::create_directories(dir / "mock");
    std::ofstream(dir / "mock" / "d1.attempt1.txt") << "!backend-error\nservice unavailable\n";
    std::ofstream(dir / "c.jsonl") << "{\"id\":\"d1\",\"text\":\"Texte.\"}\n";
    std::ofstream(dir / "cfg.json") << "{\"backoff_initial_seconds\": 0, \"transport_retries\": 1}\n";
    const auto failing = lexkg("--config " + quote((dir / "cfg.json").string()) + " extract --corpus " +
                               quote((dir / "c.jsonl").string()) + " --mock " + quote((dir / "mock").string()) +
                               " --out " + quote((dir / "out3").string()));
    CHECK(failing.code == 3);
    CHECK(failing.out.find("backend_failed   1") != std::string::npos);

    std::ofstream(dir / "typo.json") << "{\"run\": {\"max_inflihgt\": 2}}\n";
    const auto typo = lexkg("--config " + quote((dir / "typo.json").string()) + " " + extract_args(dir / "out4"));
    CHECK(typo.code == 2);
    fs::remove_all(dir);
}
