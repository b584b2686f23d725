// lexkg command-line front end. Talks to the library only through lexkg.h.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lexkg/lexkg.h"

namespace {

using json = nlohmann::json;

enum Exit { kOk = 0, kValidation = 1, kUsage = 2, kBackend = 3, kIo = 4 };

enum class Level { quiet, normal, verbose };
Level g_level = Level::normal;

void log_info(const std::string& msg) {
    if (g_level != Level::quiet) std::cerr << msg << "\n";
}
void log_debug(const std::string& msg) {
    if (g_level == Level::verbose) std::cerr << msg << "\n";
}
void log_error(const std::string& msg) { std::cerr << "error: " << msg << "\n"; }

int exit_for(lexkg_status s) {
    switch (s) {
        case LEXKG_OK: return kOk;
        case LEXKG_ERR_CONFIG:
        case LEXKG_ERR_INVALID_ARGUMENT:
        case LEXKG_ERR_QUERY:
        case LEXKG_ERR_UNKNOWN_PREDICATE: return kUsage;
        case LEXKG_ERR_BACKEND: return kBackend;
        default: return kIo;
    }
}

/// Reports the library's last error and returns the matching exit code.
int report(lexkg_status s) {
    log_error(std::string(lexkg_last_error()) + " [" + lexkg_status_name(s) + "]");
    return exit_for(s);
}

struct CString {
    char* p = nullptr;
    ~CString() { lexkg_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

struct OntologyHandle {
    lexkg_ontology* p = nullptr;
    ~OntologyHandle() { lexkg_ontology_free(p); }
};
struct GraphHandle {
    lexkg_graph* p = nullptr;
    ~GraphHandle() { lexkg_graph_free(p); }
};
struct ReportHandle {
    lexkg_report* p = nullptr;
    ~ReportHandle() { lexkg_report_free(p); }
};

bool write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.flush();
    if (!out) {
        log_error("cannot write " + path);
        return false;
    }
    return true;
}

/// Values from --config, overridden by flags given on the command line.
struct Options {
    std::string config_path;
    std::string ontology_path;
    bool quiet = false;
    bool verbose = false;

    // extract
    std::string corpus, out_dir, mock_dir, state_path, rules_path, format, pdf_extractor, summary_csv;
    std::optional<std::size_t> max_inflight, max_retries, limit;
    bool keep_invalid = false, drop_invalid = false, strict = false;

    // validate
    std::string validate_file;
    bool validate_json = false;

    // merge / query / stats / export / cost
    std::string merge_dir, merge_out;
    std::string query_patterns, query_graph;
    std::string stats_kind, stats_input, stats_csv, stats_plot;
    std::optional<double> bin_width;
    bool linear_bins = false;
    std::string export_input, export_out;
    std::string cost_state;
    std::optional<double> price_in, price_out;
};

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    json j = json::parse(buf.str(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw std::invalid_argument("config file " + path + " is not a JSON object");
    return j;
}

int open_ontology(const Options& opt, const json& cfg, OntologyHandle& h) {
    std::string path = opt.ontology_path;
    if (path.empty() && cfg.contains("ontology") && cfg["ontology"].is_string()) path = cfg["ontology"];
    const lexkg_status s = path.empty() ? lexkg_ontology_builtin(&h.p) : lexkg_ontology_load_file(path.c_str(), &h.p);
    return s == LEXKG_OK ? kOk : report(s);
}

int cmd_ontology_show(const Options& opt, const json& cfg) {
    OntologyHandle o;
    if (int rc = open_ontology(opt, cfg, o)) return rc;
    CString table;
    if (auto s = lexkg_ontology_table(o.p, &table.p)) return report(s);
    std::cout << table.str();
    return kOk;
}

int cmd_ontology_check(const Options& opt, const json& cfg) {
    OntologyHandle o;
    if (int rc = open_ontology(opt, cfg, o)) return rc;
    CString problems;
    size_t count = 0;
    if (auto s = lexkg_ontology_check(o.p, &problems.p, &count)) return report(s);
    std::cout << problems.str();
    std::cout << (count == 0 ? "ontology OK" : std::to_string(count) + " problem(s)") << "\n";
    return count == 0 ? kOk : kValidation;
}

void progress(void*, const char* doc_id, const char* status) {
    log_debug(std::string("  ") + doc_id + ": " + status);
}

int cmd_extract(const Options& opt, const json& cfg) {
    // Config file supplies defaults; flags override.
    json run = json::object();
    for (const char* key : {"max_inflight", "max_retries", "keep_invalid", "strict", "transport_retries",
                            "backoff_initial_seconds", "max_prompt_tokens", "format", "pdf_extractor", "rules_path",
                            "state_path", "mock_dir"})
        if (cfg.contains(key)) run[key] = cfg[key];
    if (cfg.contains("run") && cfg["run"].is_object())
        for (const auto& [k, v] : cfg["run"].items()) run[k] = v;
    if (cfg.contains("backend")) run["backend"] = cfg["backend"];
    if (cfg.contains("prices")) run["prices"] = cfg["prices"];

    run["out_dir"] = opt.out_dir;
    if (!opt.mock_dir.empty()) run["mock_dir"] = opt.mock_dir;
    if (!opt.state_path.empty()) run["state_path"] = opt.state_path;
    if (!opt.rules_path.empty()) run["rules_path"] = opt.rules_path;
    if (!opt.format.empty()) run["format"] = opt.format;
    if (!opt.pdf_extractor.empty()) run["pdf_extractor"] = opt.pdf_extractor;
    if (opt.max_inflight) run["max_inflight"] = *opt.max_inflight;
    if (opt.max_retries) run["max_retries"] = *opt.max_retries;
    if (opt.limit) run["limit"] = *opt.limit;
    if (opt.keep_invalid) run["keep_invalid"] = true;
    if (opt.drop_invalid) run["keep_invalid"] = false;
    if (opt.strict) run["strict"] = true;

    OntologyHandle o;
    if (int rc = open_ontology(opt, cfg, o)) return rc;
    log_info("extracting " + opt.corpus + " -> " + opt.out_dir);
    CString state_text;
    const std::string config_text = run.dump();
    if (auto s = lexkg_run_batch(opt.corpus.c_str(), config_text.c_str(), o.p, &progress, nullptr, &state_text.p))
        return report(s);

    const json state = json::parse(state_text.str());
    const json& totals = state["totals"];
    std::cout << "status           documents\n";
    for (const char* st : {"valid", "invalid", "parse_failed", "backend_failed", "pending"})
        std::cout << std::left << std::setw(17) << st << totals[st].get<std::size_t>() << "\n";
    std::cout << std::left << std::setw(17) << "total" << totals["documents"].get<std::size_t>() << "\n";
    std::cout << "tokens in/out    " << totals["input_tokens"].get<std::size_t>() << " / "
              << totals["output_tokens"].get<std::size_t>() << "\n";
    std::cout << "requests         " << totals["requests"].get<std::size_t>() << "\n";
    std::cout << "cost (USD)       " << totals["cost_usd"].get<std::string>() << "\n";

    if (!opt.summary_csv.empty()) {
        std::string csv = "id,status,attempts,input_tokens,output_tokens,requests\n";
        for (const auto& [id, d] : state["documents"].items()) {
            std::string field = id;
            if (field.find_first_of(",\"\n\r") != std::string::npos) {
                std::string q = "\"";
                for (char c : field) q += c == '"' ? std::string("\"\"") : std::string(1, c);
                field = q + "\"";
            }
            csv += field + "," + d["status"].get<std::string>() + "," + std::to_string(d["attempts"].get<std::size_t>()) +
                   "," + std::to_string(d["input_tokens"].get<std::size_t>()) + "," +
                   std::to_string(d["output_tokens"].get<std::size_t>()) + "," +
                   std::to_string(d["requests"].get<std::size_t>()) + "\n";
        }
        if (!write_text(opt.summary_csv, csv)) return kIo;
    }
    return totals["backend_failed"].get<std::size_t>() > 0 ? kBackend : kOk;
}

int cmd_validate(const Options& opt, const json& cfg) {
    OntologyHandle o;
    if (int rc = open_ontology(opt, cfg, o)) return rc;
    GraphHandle g;
    if (auto s = lexkg_graph_load_file(opt.validate_file.c_str(), &g.p)) {
        if (s != LEXKG_ERR_PARSE) return report(s);
        std::cout << "ParseError " << lexkg_last_error() << "\n";
        return kValidation;
    }
    const bool strict = opt.strict || (cfg.contains("strict") && cfg["strict"].is_boolean() && cfg["strict"].get<bool>());
    ReportHandle r;
    if (auto s = lexkg_validate(g.p, o.p, strict ? LEXKG_MODE_STRICT : LEXKG_MODE_LENIENT, &r.p)) return report(s);
    CString text;
    if (auto s = opt.validate_json ? lexkg_report_json(r.p, &text.p) : lexkg_report_text(r.p, &text.p))
        return report(s);
    std::cout << text.str();
    if (!opt.validate_json) {
        std::cout << lexkg_report_violation_count(r.p) << " violations (" << lexkg_report_error_count(r.p)
                  << " errors, " << lexkg_report_warning_count(r.p) << " warnings)\n";
    }
    return lexkg_report_error_count(r.p) > 0 ? kValidation : kOk;
}

int cmd_merge(const Options& opt) {
    GraphHandle g;
    if (auto s = lexkg_merge_outputs(opt.merge_dir.c_str(), &g.p)) return report(s);
    if (auto s = lexkg_graph_write_ntriples(g.p, opt.merge_out.c_str())) return report(s);
    log_info("merged " + std::to_string(lexkg_graph_size(g.p)) + " triples into " + opt.merge_out);
    return kOk;
}

int cmd_query(const Options& opt, const json& cfg) {
    std::ifstream in(opt.query_patterns, std::ios::binary);
    if (!in) {
        log_error("cannot read " + opt.query_patterns);
        return kIo;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    OntologyHandle o;
    if (int rc = open_ontology(opt, cfg, o)) return rc;
    GraphHandle g;
    if (auto s = lexkg_graph_load_file(opt.query_graph.c_str(), &g.p)) return report(s);
    CString table;
    size_t rows = 0;
    const std::string patterns = buf.str();
    if (auto s = lexkg_query(g.p, patterns.c_str(), o.p, &table.p, &rows)) {
        if (s == LEXKG_ERR_PARSE) {
            log_error(opt.query_patterns + ": " + lexkg_last_error());
            return kUsage;
        }
        return report(s);
    }
    std::cout << table.str();
    log_info(std::to_string(rows) + " result(s)");
    return kOk;
}

int cmd_stats(const Options& opt, const json& cfg) {
    lexkg_stats_kind kind;
    if (opt.stats_kind == "triples") kind = LEXKG_STATS_TRIPLES;
    else if (opt.stats_kind == "offenses") kind = LEXKG_STATS_OFFENSES;
    else if (opt.stats_kind == "duration") kind = LEXKG_STATS_DURATION;
    else kind = LEXKG_STATS_FINES;
    OntologyHandle o;
    if (int rc = open_ontology(opt, cfg, o)) return rc;
    lexkg_stats_options so{opt.bin_width.value_or(0.0), opt.linear_bins ? 0 : 1};
    CString table, csv, plot;
    if (auto s = lexkg_stats(kind, opt.stats_input.c_str(), o.p, &so, &table.p, &csv.p, &plot.p)) return report(s);
    std::cout << table.str();
    if (!opt.stats_csv.empty() && !write_text(opt.stats_csv, csv.str())) return kIo;
    if (!opt.stats_plot.empty()) {
        if (plot.str().empty()) {
            log_error("plot data is only available for duration and fines");
            return kUsage;
        }
        if (!write_text(opt.stats_plot, plot.str())) return kIo;
    }
    return kOk;
}

int cmd_export(const Options& opt, const json& cfg) {
    OntologyHandle o;
    if (int rc = open_ontology(opt, cfg, o)) return rc;
    GraphHandle g;
    if (auto s = lexkg_graph_load_file(opt.export_input.c_str(), &g.p)) return report(s);
    size_t nodes = 0, edges = 0;
    if (auto s = lexkg_export_property_graph(g.p, o.p, opt.export_out.c_str(), &nodes, &edges)) return report(s);
    std::cout << "nodes " << nodes << "\nedges " << edges << "\n";
    return kOk;
}

int cmd_cost(const Options& opt, const json& cfg) {
    double pin = 0.15, pout = 0.60;
    if (cfg.contains("prices") && cfg["prices"].is_object()) {
        const auto& p = cfg["prices"];
        if (p.contains("input_per_million") && p["input_per_million"].is_number()) pin = p["input_per_million"];
        if (p.contains("output_per_million") && p["output_per_million"].is_number()) pout = p["output_per_million"];
    }
    if (opt.price_in) pin = *opt.price_in;
    if (opt.price_out) pout = *opt.price_out;
    CString summary;
    if (auto s = lexkg_cost_from_state(opt.cost_state.c_str(), pin, pout, &summary.p)) return report(s);
    const json j = json::parse(summary.str());
    std::cout << "documents           " << j["documents"].get<std::size_t>() << "\n";
    std::cout << "input tokens        " << j["input_tokens"].get<std::size_t>() << "\n";
    std::cout << "output tokens       " << j["output_tokens"].get<std::size_t>() << "\n";
    std::cout << "requests            " << j["requests"].get<std::size_t>() << "\n";
    std::cout << "total USD           " << j["total_usd"].get<std::string>() << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", j["per_document_usd"].get<double>());
    std::cout << "per document USD    " << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.4f", j["per_thousand_documents_usd"].get<double>());
    std::cout << "per 1K documents    " << buf << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lexkg: knowledge graphs from criminal court decisions"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    Options opt;
    app.add_option("--config", opt.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    app.add_option("--ontology", opt.ontology_path, "Ontology Turtle file (default: built-in)");
    app.add_flag("-q,--quiet", opt.quiet, "Only print errors");
    app.add_flag("-v,--verbose", opt.verbose, "Print per-document progress");

    auto* ontology = app.add_subcommand("ontology", "Inspect the ontology");
    ontology->require_subcommand(1);
    auto* ont_show = ontology->add_subcommand("show", "Print the vocabulary table");
    auto* ont_check = ontology->add_subcommand("check", "Self-check the ontology");

    auto* extract = app.add_subcommand("extract", "Run batch extraction over a corpus");
    extract->add_option("--corpus", opt.corpus, "JSONL file or directory of .txt files")->required();
    extract->add_option("--out", opt.out_dir, "Output directory")->required();
    extract->add_option("--mock", opt.mock_dir, "Replay responses from a fixture directory")->check(CLI::ExistingDirectory);
    extract->add_option("--state", opt.state_path, "Run-state file (default: <out>/run-state.json)");
    extract->add_option("--rules", opt.rules_path, "Guidance rules file, one rule per line")->check(CLI::ExistingFile);
    extract->add_option("--format", opt.format, "Corpus format")->check(CLI::IsMember({"jsonl", "txt-dir"}));
    extract->add_option("--pdf-extractor", opt.pdf_extractor, "Command template converting {in} (.pdf) to {out} (.txt)");
    extract->add_option("--max-inflight", opt.max_inflight, "Concurrent extractions")->check(CLI::PositiveNumber);
    extract->add_option("--max-retries", opt.max_retries, "Repair attempts after the first");
    extract->add_option("--limit", opt.limit, "Stop after this many documents");
    auto* keep = extract->add_flag("--keep-invalid", opt.keep_invalid, "Keep graphs with validation errors (default)");
    extract->add_flag("--drop-invalid", opt.drop_invalid, "Do not write graphs with validation errors")->excludes(keep);
    extract->add_flag("--strict", opt.strict, "Strict validation");
    extract->add_option("--csv", opt.summary_csv, "Write the per-document summary as CSV");

    auto* validate = app.add_subcommand("validate", "Validate a Turtle or N-Triples file");
    validate->add_option("file", opt.validate_file, "Graph file")->required();
    validate->add_flag("--strict", opt.strict, "Strict validation");
    validate->add_flag("--json", opt.validate_json, "Print the report as JSON");

    auto* merge = app.add_subcommand("merge", "Merge per-document graphs into one N-Triples file");
    merge->add_option("dir", opt.merge_dir, "Directory of .ttl files")->required()->check(CLI::ExistingDirectory);
    merge->add_option("--out", opt.merge_out, "Output .nt file")->required();

    auto* query = app.add_subcommand("query", "Match triple patterns against a graph");
    query->add_option("patterns", opt.query_patterns, "Patterns file (Turtle with ?variables)")->required();
    query->add_option("graph", opt.query_graph, "Graph file (.nt or .ttl)")->required();

    auto* stats = app.add_subcommand("stats", "Corpus statistics");
    stats->add_option("kind", opt.stats_kind, "triples | offenses | duration | fines")
        ->required()
        ->check(CLI::IsMember({"triples", "offenses", "duration", "fines"}));
    stats->add_option("input", opt.stats_input, "Output directory or merged graph file")->required();
    stats->add_option("--csv", opt.stats_csv, "Write the table as CSV");
    stats->add_option("--plot-json", opt.stats_plot, "Write plot data (duration, fines)");
    stats->add_option("--bin-width", opt.bin_width, "Histogram bin width")->check(CLI::PositiveNumber);
    stats->add_flag("--linear-bins", opt.linear_bins, "Fixed-width bins for fines");

    auto* exp = app.add_subcommand("export", "Export to other representations");
    exp->require_subcommand(1);
    auto* pg = exp->add_subcommand("pg", "Property-graph tables (nodes.csv, edges.csv)");
    pg->add_option("graph", opt.export_input, "Graph file")->required();
    pg->add_option("--out", opt.export_out, "Output directory")->required();

    auto* cost = app.add_subcommand("cost", "Cost of a run from its state file");
    cost->add_option("state", opt.cost_state, "run-state.json")->required();
    cost->add_option("--input-price", opt.price_in, "USD per 1M input tokens")->check(CLI::NonNegativeNumber);
    cost->add_option("--output-price", opt.price_out, "USD per 1M output tokens")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    g_level = opt.quiet ? Level::quiet : opt.verbose ? Level::verbose : Level::normal;

    json cfg;
    try {
        cfg = load_config(opt.config_path);
    } catch (const std::invalid_argument& e) {
        log_error(e.what());
        return kUsage;
    } catch (const std::exception& e) {
        log_error(e.what());
        return kIo;
    }

    try {
        if (*ont_show) return cmd_ontology_show(opt, cfg);
        if (*ont_check) return cmd_ontology_check(opt, cfg);
        if (*extract) return cmd_extract(opt, cfg);
        if (*validate) return cmd_validate(opt, cfg);
        if (*merge) return cmd_merge(opt);
        if (*query) return cmd_query(opt, cfg);
        if (*stats) return cmd_stats(opt, cfg);
        if (*pg) return cmd_export(opt, cfg);
        if (*cost) return cmd_cost(opt, cfg);
    } catch (const std::exception& e) {
        log_error(e.what());
        return kIo;
    }
    return kUsage;
}
