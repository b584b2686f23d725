#include "lexkg/lexkg.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lexkg/analytics.hpp"
#include "lexkg/corpus.hpp"
#include "lexkg/errors.hpp"
#include "lexkg/extraction.hpp"
#include "lexkg/ontology.hpp"
#include "lexkg/turtle.hpp"
#include "lexkg/validator.hpp"

struct lexkg_ontology {
    lexkg::onto::Ontology value;
};
struct lexkg_graph {
    lexkg::rdf::Graph value;
};
struct lexkg_report {
    lexkg::validation::ValidationReport value;
};

namespace {

using namespace lexkg;
namespace fs = std::filesystem;
using json = nlohmann::json;

thread_local std::string g_error;
thread_local std::size_t g_line = 0;
thread_local std::size_t g_column = 0;

lexkg_status fail(lexkg_status status, const std::string& message) {
    g_error = message;
    g_line = g_column = 0;
    return status;
}

/// Maps the exception in flight to a status code and records its message.
lexkg_status translate() {
    try {
        throw;
    } catch (const ParseError& e) {
        lexkg_status s = fail(LEXKG_ERR_PARSE, e.what());
        g_line = e.line();
        g_column = e.column();
        return s;
    } catch (const CyclicHierarchy& e) {
        return fail(LEXKG_ERR_ONTOLOGY, e.what());
    } catch (const UnknownClass& e) {
        return fail(LEXKG_ERR_ONTOLOGY, e.what());
    } catch (const UnknownPredicate& e) {
        return fail(LEXKG_ERR_UNKNOWN_PREDICATE, e.what());
    } catch (const IoError& e) {
        return fail(LEXKG_ERR_IO, e.what());
    } catch (const BackendError& e) {
        return fail(LEXKG_ERR_BACKEND, e.what());
    } catch (const ConfigError& e) {
        return fail(LEXKG_ERR_CONFIG, e.what());
    } catch (const DuplicateId& e) {
        return fail(LEXKG_ERR_CORPUS, e.what());
    } catch (const MalformedRecord& e) {
        return fail(LEXKG_ERR_CORPUS, e.what());
    } catch (const EmptyCorpus& e) {
        return fail(LEXKG_ERR_CORPUS, e.what());
    } catch (const StateFingerprintMismatch& e) {
        return fail(LEXKG_ERR_STATE_MISMATCH, e.what());
    } catch (const QueryError& e) {
        return fail(LEXKG_ERR_QUERY, e.what());
    } catch (const EmptySample& e) {
        return fail(LEXKG_ERR_EMPTY, e.what());
    } catch (const EmptyInput& e) {
        return fail(LEXKG_ERR_EMPTY, e.what());
    } catch (const EmptyResponse& e) {
        return fail(LEXKG_ERR_EMPTY, e.what());
    } catch (const InvalidIri& e) {
        return fail(LEXKG_ERR_INVALID_ARGUMENT, e.what());
    } catch (const InvalidTerm& e) {
        return fail(LEXKG_ERR_INVALID_ARGUMENT, e.what());
    } catch (const UnknownPrefix& e) {
        return fail(LEXKG_ERR_INVALID_ARGUMENT, e.what());
    } catch (const Error& e) {
        return fail(LEXKG_ERR_INTERNAL, e.what());
    } catch (const fs::filesystem_error& e) {
        return fail(LEXKG_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LEXKG_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LEXKG_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(LEXKG_ERR_INTERNAL, "unknown error");
    }
}

template <class F>
lexkg_status guarded(F&& body) {
    try {
        body();
        return LEXKG_OK;
    } catch (...) {
        return translate();
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size());
    out[s.size()] = '\0';
    return out;
}

void set_out(char** out, const std::string& s) {
    if (out) *out = dup(s);
}

void require(const void* p, const char* what) {
    if (!p) throw InvalidTerm(std::string(what) + " must not be NULL");
}

bool is_ntriples_path(const fs::path& p) { return p.extension() == ".nt"; }

rdf::Graph load_graph(const fs::path& path) {
    const std::string text = corpus::read_file(path);
    try {
        return is_ntriples_path(path) ? turtle::parse_ntriples(text) : turtle::parse_turtle(text).graph;
    } catch (const ParseError& e) {
        throw e.in_source(path.filename().string());
    }
}

// --- run-config JSON --------------------------------------------------------

template <class T>
std::optional<T> field(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    const json& v = j[key];
    try {
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) throw ConfigError("");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) throw ConfigError("");
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("");
        } else {
            if (!v.is_number()) throw ConfigError("");
        }
        return v.get<T>();
    } catch (const std::exception&) {
        throw ConfigError(std::string("config field '") + key + "' has the wrong type");
    }
}

struct BatchSetup {
    corpus::RunConfig run;
    corpus::CorpusFormat format = corpus::CorpusFormat::jsonl;
    bool format_given = false;
    corpus::IngestOptions ingest;
    std::optional<fs::path> mock_dir;
    std::optional<fs::path> rules_path;
    extract::BackendConfig backend;
};

BatchSetup parse_batch_config(const char* text) {
    json j = text && *text ? json::parse(text, nullptr, false) : json::object();
    if (j.is_discarded() || !j.is_object()) throw ConfigError("configuration is not a JSON object");
    static const std::set<std::string> known{
        "out_dir", "state_path", "format", "pdf_extractor", "mock_dir", "rules_path", "max_inflight",
        "max_retries", "keep_invalid", "strict", "limit", "transport_retries", "backoff_initial_seconds",
        "max_prompt_tokens", "prices", "backend"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ConfigError("unknown configuration key '" + key + "'");
    BatchSetup s;
    auto out_dir = field<std::string>(j, "out_dir");
    if (!out_dir || out_dir->empty()) throw ConfigError("out_dir is required");
    s.run.output_dir = *out_dir;
    if (auto v = field<std::string>(j, "state_path")) s.run.state_path = *v;
    if (auto v = field<std::string>(j, "format")) {
        if (*v == "jsonl") s.format = corpus::CorpusFormat::jsonl;
        else if (*v == "txt-dir") s.format = corpus::CorpusFormat::txt_dir;
        else throw ConfigError("format must be 'jsonl' or 'txt-dir'");
        s.format_given = true;
    }
    s.ingest.pdf_extractor = field<std::string>(j, "pdf_extractor");
    if (s.ingest.pdf_extractor &&
        (s.ingest.pdf_extractor->find("{in}") == std::string::npos ||
         s.ingest.pdf_extractor->find("{out}") == std::string::npos))
        throw ConfigError("pdf_extractor must contain {in} and {out}");
    if (auto v = field<std::string>(j, "mock_dir")) s.mock_dir = fs::path(*v);
    if (auto v = field<std::string>(j, "rules_path")) s.rules_path = fs::path(*v);
    if (auto v = field<std::size_t>(j, "max_inflight")) s.run.max_inflight = *v;
    if (auto v = field<std::size_t>(j, "max_retries")) s.run.max_retries = *v;
    if (auto v = field<bool>(j, "keep_invalid")) s.run.keep_invalid = *v;
    if (auto v = field<bool>(j, "strict")) s.run.extraction.mode = *v ? validation::Mode::strict : validation::Mode::lenient;
    if (auto v = field<std::size_t>(j, "limit")) s.run.limit = *v;
    if (auto v = field<std::size_t>(j, "transport_retries")) s.run.extraction.transport_retries = *v;
    if (auto v = field<double>(j, "backoff_initial_seconds")) s.run.extraction.backoff_initial_seconds = *v;
    if (auto v = field<std::size_t>(j, "max_prompt_tokens")) s.run.extraction.max_prompt_tokens = *v;
    if (j.contains("prices")) {
        const json& p = j["prices"];
        if (!p.is_object()) throw ConfigError("prices must be an object");
        if (auto v = field<double>(p, "input_per_million")) s.run.extraction.prices.input_per_million = *v;
        if (auto v = field<double>(p, "output_per_million")) s.run.extraction.prices.output_per_million = *v;
    }
    if (j.contains("backend")) {
        const json& b = j["backend"];
        if (!b.is_object()) throw ConfigError("backend must be an object");
        if (auto v = field<std::string>(b, "endpoint")) s.backend.endpoint = *v;
        if (auto v = field<std::string>(b, "model")) s.backend.model = *v;
        if (auto v = field<double>(b, "temperature")) s.backend.temperature = *v;
        if (auto v = field<int>(b, "max_output_tokens")) s.backend.max_output_tokens = *v;
        if (auto v = field<double>(b, "timeout_seconds")) s.backend.timeout_seconds = *v;
        if (auto v = field<std::string>(b, "api_key_env")) s.backend.api_key_env = *v;
    }
    s.run.validate();
    extract::price_tokens(0, 0, s.run.extraction.prices);  // rejects bad prices
    if (!s.mock_dir) s.backend.validate();
    return s;
}

struct ProgressBridge {
    lexkg_progress_fn fn;
    void* user;
};

void forward_progress(void* user, const std::string& id, const corpus::DocState& st) {
    auto* b = static_cast<ProgressBridge*>(user);
    b->fn(b->user, id.c_str(), std::string(corpus::to_string(st.status)).c_str());
}

// --- statistics ---------------------------------------------------------------

/// Left-aligned cell; always followed by at least one space.
std::string pad(std::string s, std::size_t width) {
    s.append(s.size() < width ? width - s.size() : 1, ' ');
    return s;
}

/// At most two decimals, trailing zeros dropped.
std::string human(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    while (s.find('.') != std::string::npos && (s.back() == '0' || s.back() == '.')) {
        const bool dot = s.back() == '.';
        s.pop_back();
        if (dot) break;
    }
    return s == "-0" ? "0" : s;
}

std::string render_term(const rdf::Term& t, const onto::Ontology& o) {
    if (const auto* iri = std::get_if<rdf::Iri>(&t)) return o.compact(*iri);
    return rdf::to_ntriples(t);
}

struct StatsOutput {
    std::string table;
    std::string csv;
    std::string plot;
};

StatsOutput triples_stats(const fs::path& input, double bin_width) {
    const auto counts = fs::is_directory(input) ? analytics::triples_per_doc(input, bin_width)
                                                : analytics::triples_per_doc(load_graph(input), bin_width);
    std::ostringstream t;
    t << "documents  " << counts.per_document.size() << "\n";
    t << "mean       " << human(counts.mean) << "\n";
    t << "median     " << human(counts.median) << "\n\n";
    t << pad("bin", 16) << "count\n";
    const auto& h = counts.histogram;
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        t << pad("[" + analytics::format_number(h.bin_edges[i]) + ", " + analytics::format_number(h.bin_edges[i + 1]) +
                     ")",
                 16)
          << h.counts[i] << "\n";
    return {t.str(), analytics::histogram_csv(h, "all"), ""};
}

rdf::Graph graph_for_stats(const fs::path& input) {
    return fs::is_directory(input) ? corpus::merge_outputs(input) : load_graph(input);
}

StatsOutput offense_stats(const fs::path& input, const onto::Ontology& o) {
    const auto graph = graph_for_stats(input);
    const auto rows = analytics::count_by_object(graph, rdf::make_iri(rdf::ns::fca, "offenseCategory"), o);
    std::vector<std::pair<std::string, std::size_t>> named;
    std::ostringstream t;
    t << pad("offense", 28) << "count\n";
    for (const auto& [term, n] : rows) {
        std::string name = render_term(term, o);
        t << pad(name, 28) << n << "\n";
        named.emplace_back(std::move(name), n);
    }
    return {t.str(), analytics::counts_csv(named, "offense"), ""};
}

StatsOutput grouped_stats(const fs::path& input, const onto::Ontology& o, const char* predicate,
                          const analytics::BinSpec& bins) {
    const auto graph = graph_for_stats(input);
    const auto r = analytics::grouped_distribution(graph, o, rdf::make_iri(rdf::ns::fca, predicate),
                                                   analytics::default_decision_path(), bins);
    std::ostringstream t;
    for (const auto& w : r.warnings) t << "warning: " << w << "\n";
    t << pad("group", 12) << pad("n", 6) << pad("mean", 12) << pad("median", 12) << pad("q1", 12) << pad("q3", 12)
      << pad("min", 12) << "max\n";
    std::vector<analytics::GroupSummary> summaries;
    for (const auto& [name, d] : r.groups) {
        const auto& s = d.summary;
        t << pad(name, 12) << pad(std::to_string(s.n), 6) << pad(human(s.mean), 12) << pad(human(s.median), 12)
          << pad(human(s.q1), 12) << pad(human(s.q3), 12) << pad(human(s.min), 12) << human(s.max) << "\n";
        summaries.push_back(s);
    }
    if (r.groups.size() == 2) {
        auto it = r.groups.begin();
        const auto& a = it->second;
        const auto& b = (++it)->second;
        t << "KS statistic D = " << human(analytics::ks_statistic(a.values, b.values)) << "\n";
    }
    return {t.str(), analytics::grouped_csv(r), analytics::plot_data_json(r)};
}

}  // namespace

extern "C" {

const char* lexkg_version(void) { return "1.0.0"; }

const char* lexkg_status_name(lexkg_status status) {
    switch (status) {
        case LEXKG_OK: return "ok";
        case LEXKG_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case LEXKG_ERR_PARSE: return "parse_error";
        case LEXKG_ERR_IO: return "io_error";
        case LEXKG_ERR_BACKEND: return "backend_error";
        case LEXKG_ERR_CONFIG: return "config_error";
        case LEXKG_ERR_ONTOLOGY: return "ontology_error";
        case LEXKG_ERR_UNKNOWN_PREDICATE: return "unknown_predicate";
        case LEXKG_ERR_CORPUS: return "corpus_error";
        case LEXKG_ERR_STATE_MISMATCH: return "state_mismatch";
        case LEXKG_ERR_QUERY: return "query_error";
        case LEXKG_ERR_EMPTY: return "empty";
        case LEXKG_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* lexkg_last_error(void) { return g_error.c_str(); }

void lexkg_last_error_location(size_t* line, size_t* column) {
    if (line) *line = g_line;
    if (column) *column = g_column;
}

void lexkg_string_free(char* s) { std::free(s); }

// --- ontology ---

lexkg_status lexkg_ontology_builtin(lexkg_ontology** out) {
    return guarded([&] {
        require(out, "out");
        *out = new lexkg_ontology{onto::builtin_criminal_ontology()};
    });
}

lexkg_status lexkg_ontology_from_turtle(const char* text, size_t len, lexkg_ontology** out) {
    return guarded([&] {
        require(out, "out");
        require(text, "text");
        *out = new lexkg_ontology{onto::load_ontology(std::string_view(text, len))};
    });
}

lexkg_status lexkg_ontology_load_file(const char* path, lexkg_ontology** out) {
    return guarded([&] {
        require(out, "out");
        require(path, "path");
        const std::string text = corpus::read_file(path);
        try {
            *out = new lexkg_ontology{onto::load_ontology(text)};
        } catch (const ParseError& e) {
            throw e.in_source(fs::path(path).filename().string());
        }
    });
}

void lexkg_ontology_free(lexkg_ontology* o) { delete o; }

lexkg_status lexkg_ontology_table(const lexkg_ontology* o, char** out) {
    return guarded([&] {
        require(o, "ontology");
        set_out(out, onto::vocabulary_table(o->value));
    });
}

lexkg_status lexkg_ontology_check(const lexkg_ontology* o, char** problems, size_t* count) {
    return guarded([&] {
        require(o, "ontology");
        std::vector<std::string> all = onto::self_check(o->value);
        for (const auto& w : o->value.warnings()) all.push_back("warning: " + w);
        std::string joined;
        for (const auto& p : all) joined += p + "\n";
        if (count) *count = onto::self_check(o->value).size();
        set_out(problems, joined);
    });
}

lexkg_status lexkg_ontology_source(const lexkg_ontology* o, char** out) {
    return guarded([&] {
        require(o, "ontology");
        set_out(out, o->value.source_text());
    });
}

// --- graphs ---

lexkg_status lexkg_graph_parse_turtle(const char* text, size_t len, lexkg_graph** out) {
    return guarded([&] {
        require(out, "out");
        require(text, "text");
        *out = new lexkg_graph{turtle::parse_turtle(std::string_view(text, len)).graph};
    });
}

lexkg_status lexkg_graph_parse_ntriples(const char* text, size_t len, lexkg_graph** out) {
    return guarded([&] {
        require(out, "out");
        require(text, "text");
        *out = new lexkg_graph{turtle::parse_ntriples(std::string_view(text, len))};
    });
}

lexkg_status lexkg_graph_load_file(const char* path, lexkg_graph** out) {
    return guarded([&] {
        require(out, "out");
        require(path, "path");
        *out = new lexkg_graph{load_graph(path)};
    });
}

void lexkg_graph_free(lexkg_graph* g) { delete g; }

size_t lexkg_graph_size(const lexkg_graph* g) { return g ? g->value.size() : 0; }

lexkg_status lexkg_graph_to_ntriples(const lexkg_graph* g, char** out) {
    return guarded([&] {
        require(g, "graph");
        set_out(out, turtle::serialize_ntriples(g->value));
    });
}

lexkg_status lexkg_graph_to_turtle(const lexkg_graph* g, char** out) {
    return guarded([&] {
        require(g, "graph");
        set_out(out, turtle::serialize_turtle(g->value));
    });
}

lexkg_status lexkg_graph_write_ntriples(const lexkg_graph* g, const char* path) {
    return guarded([&] {
        require(g, "graph");
        require(path, "path");
        corpus::write_file(path, turtle::serialize_ntriples(g->value));
    });
}

lexkg_status lexkg_merge_outputs(const char* dir, lexkg_graph** out) {
    return guarded([&] {
        require(dir, "dir");
        require(out, "out");
        *out = new lexkg_graph{corpus::merge_outputs(dir)};
    });
}

// --- validation ---

lexkg_status lexkg_validate(const lexkg_graph* g, const lexkg_ontology* o, lexkg_mode mode, lexkg_report** out) {
    return guarded([&] {
        require(g, "graph");
        require(o, "ontology");
        require(out, "out");
        const auto m = mode == LEXKG_MODE_STRICT ? validation::Mode::strict : validation::Mode::lenient;
        *out = new lexkg_report{validation::validate_graph(g->value, o->value, m)};
    });
}

void lexkg_report_free(lexkg_report* r) { delete r; }
size_t lexkg_report_error_count(const lexkg_report* r) { return r ? r->value.error_count() : 0; }
size_t lexkg_report_warning_count(const lexkg_report* r) { return r ? r->value.warning_count() : 0; }
size_t lexkg_report_violation_count(const lexkg_report* r) { return r ? r->value.violations.size() : 0; }

lexkg_status lexkg_report_text(const lexkg_report* r, char** out) {
    return guarded([&] {
        require(r, "report");
        set_out(out, r->value.to_text());
    });
}

lexkg_status lexkg_report_json(const lexkg_report* r, char** out) {
    return guarded([&] {
        require(r, "report");
        set_out(out, r->value.to_json());
    });
}

// --- batch ---

lexkg_status lexkg_run_batch(const char* corpus_path, const char* config_json, const lexkg_ontology* o,
                             lexkg_progress_fn progress, void* user, char** state_json) {
    return guarded([&] {
        require(corpus_path, "corpus_path");
        require(o, "ontology");
        BatchSetup setup = parse_batch_config(config_json);
        const extract::GuidanceRules rules = setup.rules_path
                                                 ? extract::GuidanceRules::parse(corpus::read_file(*setup.rules_path))
                                                 : extract::GuidanceRules::defaults();
        if (rules.rules.empty()) throw ConfigError("rules file contains no rules");
        const auto format = setup.format_given ? setup.format : corpus::detect_format(corpus_path);
        const auto docs = corpus::ingest_corpus(corpus_path, format, setup.ingest);

        std::unique_ptr<extract::Backend> backend;
        if (setup.mock_dir) backend = std::make_unique<extract::MockBackend>(*setup.mock_dir);
        else backend = std::make_unique<extract::HttpBackend>(setup.backend);

        ProgressBridge bridge{progress, user};
        const auto state = corpus::run_batch(docs, *backend, o->value, rules, setup.run,
                                             progress ? &forward_progress : nullptr, &bridge);
        set_out(state_json, state.to_json());
    });
}

lexkg_status lexkg_cost_from_state(const char* state_path, double input_per_million, double output_per_million,
                                   char** summary_json) {
    return guarded([&] {
        require(state_path, "state_path");
        const auto state = corpus::load_run_state(state_path);
        const extract::PriceTable prices{input_per_million, output_per_million};
        std::vector<extract::CostRecord> records;
        for (const auto& [id, d] : state.docs)
            if (corpus::is_terminal(d.status)) records.push_back(d.cost);
        const auto s = extract::summarize_cost(records, prices);
        nlohmann::ordered_json j;
        j["documents"] = s.documents;
        j["input_tokens"] = s.input_tokens;
        j["output_tokens"] = s.output_tokens;
        j["requests"] = s.requests;
        j["total_usd"] = s.total.to_string(6);
        j["per_document_usd"] = s.per_document_usd;
        j["per_thousand_documents_usd"] = s.per_thousand_documents_usd;
        set_out(summary_json, j.dump(2) + "\n");
    });
}

lexkg_status lexkg_estimate_cost(const lexkg_cost_record* records, size_t n, double input_per_million,
                                 double output_per_million, int64_t* picodollars) {
    return guarded([&] {
        require(picodollars, "picodollars");
        if (n) require(records, "records");
        std::vector<extract::CostRecord> rs;
        rs.reserve(n);
        for (size_t i = 0; i < n; ++i)
            rs.push_back(extract::CostRecord{static_cast<std::size_t>(records[i].input_tokens),
                                             static_cast<std::size_t>(records[i].output_tokens), 1, {}});
        *picodollars = extract::estimate_cost(rs, {input_per_million, output_per_million}).picodollars();
    });
}

// --- analytics ---

lexkg_status lexkg_query(const lexkg_graph* g, const char* patterns, const lexkg_ontology* o, char** table,
                         size_t* rows) {
    return guarded([&] {
        require(g, "graph");
        require(patterns, "patterns");
        const rdf::PrefixMap prefixes = o ? o->value.prefixes() : rdf::PrefixMap{};
        const auto bindings = analytics::bgp_match(g->value, analytics::parse_patterns(patterns, prefixes));
        if (rows) *rows = bindings.size();
        set_out(table, analytics::format_bindings(bindings, prefixes));
    });
}

lexkg_status lexkg_stats(lexkg_stats_kind kind, const char* input, const lexkg_ontology* o,
                         const lexkg_stats_options* options, char** table, char** csv, char** plot_json) {
    return guarded([&] {
        require(input, "input");
        require(o, "ontology");
        const double width = options && options->bin_width > 0 ? options->bin_width : 0.0;
        StatsOutput r;
        switch (kind) {
            case LEXKG_STATS_TRIPLES: r = triples_stats(input, width > 0 ? width : 5.0); break;
            case LEXKG_STATS_OFFENSES: r = offense_stats(input, o->value); break;
            case LEXKG_STATS_DURATION:
                r = grouped_stats(input, o->value, "durationDays",
                                  {analytics::Binning::fixed_width, width > 0 ? width : 90.0});
                break;
            case LEXKG_STATS_FINES: {
                const bool log_bins = !options || options->log_bins;
                r = grouped_stats(input, o->value, "amountEUR",
                                  {log_bins ? analytics::Binning::log_decade : analytics::Binning::fixed_width,
                                   width > 0 ? width : 1000.0});
                break;
            }
            default: throw InvalidTerm("unknown statistics kind");
        }
        set_out(table, r.table);
        set_out(csv, r.csv);
        set_out(plot_json, r.plot);
    });
}

lexkg_status lexkg_export_property_graph(const lexkg_graph* g, const lexkg_ontology* o, const char* out_dir,
                                         size_t* nodes, size_t* edges) {
    return guarded([&] {
        require(g, "graph");
        require(o, "ontology");
        require(out_dir, "out_dir");
        const auto pg = analytics::export_property_graph(g->value, o->value);
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (!fs::is_directory(out_dir)) throw IoError(std::string("cannot create directory ") + out_dir);
        corpus::write_file(fs::path(out_dir) / "nodes.csv", pg.nodes_csv());
        corpus::write_file(fs::path(out_dir) / "edges.csv", pg.edges_csv());
        if (nodes) *nodes = pg.nodes.size();
        if (edges) *edges = pg.edges.size();
    });
}

}  // extern "C"
