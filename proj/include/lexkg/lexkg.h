/* C interface to the lexkg knowledge-graph pipeline.
 *
 * Every function returns a lexkg_status. On failure the thread's last error
 * message (and, for syntax errors, a line/column) describes the problem until
 * the next failing call on the same thread. Strings returned through char**
 * out-parameters are owned by the caller and released with lexkg_string_free.
 */
#ifndef LEXKG_H
#define LEXKG_H

#include <stddef.h>
#include <stdint.h>

#if defined(LEXKG_BUILDING_LIBRARY)
#define LEXKG_API __attribute__((visibility("default")))
#else
#define LEXKG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lexkg_status {
    LEXKG_OK = 0,
    LEXKG_ERR_INVALID_ARGUMENT = 1,
    LEXKG_ERR_PARSE = 2,
    LEXKG_ERR_IO = 3,
    LEXKG_ERR_BACKEND = 4,
    LEXKG_ERR_CONFIG = 5,
    LEXKG_ERR_ONTOLOGY = 6,
    LEXKG_ERR_UNKNOWN_PREDICATE = 7,
    LEXKG_ERR_CORPUS = 8,
    LEXKG_ERR_STATE_MISMATCH = 9,
    LEXKG_ERR_QUERY = 10,
    LEXKG_ERR_EMPTY = 11,
    LEXKG_ERR_INTERNAL = 99
} lexkg_status;

typedef enum lexkg_mode { LEXKG_MODE_LENIENT = 0, LEXKG_MODE_STRICT = 1 } lexkg_mode;

typedef struct lexkg_ontology lexkg_ontology;
typedef struct lexkg_graph lexkg_graph;
typedef struct lexkg_report lexkg_report;

LEXKG_API const char* lexkg_version(void);
LEXKG_API const char* lexkg_status_name(lexkg_status status);
/* Message of the last failure on this thread ("" if none). */
LEXKG_API const char* lexkg_last_error(void);
/* 1-based position of the last syntax error on this thread; 0 when unknown. */
LEXKG_API void lexkg_last_error_location(size_t* line, size_t* column);
LEXKG_API void lexkg_string_free(char* s);

/* Ontology */
LEXKG_API lexkg_status lexkg_ontology_builtin(lexkg_ontology** out);
LEXKG_API lexkg_status lexkg_ontology_from_turtle(const char* text, size_t len, lexkg_ontology** out);
LEXKG_API lexkg_status lexkg_ontology_load_file(const char* path, lexkg_ontology** out);
LEXKG_API void lexkg_ontology_free(lexkg_ontology* o);
/* Human-readable class/property/individual listing. */
LEXKG_API lexkg_status lexkg_ontology_table(const lexkg_ontology* o, char** out);
/* Self-check; problems are newline separated, *count is their number. */
LEXKG_API lexkg_status lexkg_ontology_check(const lexkg_ontology* o, char** problems, size_t* count);
/* Turtle source the ontology was loaded from. */
LEXKG_API lexkg_status lexkg_ontology_source(const lexkg_ontology* o, char** out);

/* Graphs */
LEXKG_API lexkg_status lexkg_graph_parse_turtle(const char* text, size_t len, lexkg_graph** out);
LEXKG_API lexkg_status lexkg_graph_parse_ntriples(const char* text, size_t len, lexkg_graph** out);
/* N-Triples for *.nt files, Turtle otherwise. */
LEXKG_API lexkg_status lexkg_graph_load_file(const char* path, lexkg_graph** out);
LEXKG_API void lexkg_graph_free(lexkg_graph* g);
LEXKG_API size_t lexkg_graph_size(const lexkg_graph* g);
LEXKG_API lexkg_status lexkg_graph_to_ntriples(const lexkg_graph* g, char** out);
LEXKG_API lexkg_status lexkg_graph_to_turtle(const lexkg_graph* g, char** out);
LEXKG_API lexkg_status lexkg_graph_write_ntriples(const lexkg_graph* g, const char* path);
/* Union of the *.ttl files in dir with blank-node relabeling and provenance. */
LEXKG_API lexkg_status lexkg_merge_outputs(const char* dir, lexkg_graph** out);

/* Validation */
LEXKG_API lexkg_status lexkg_validate(const lexkg_graph* g, const lexkg_ontology* o, lexkg_mode mode,
                                      lexkg_report** out);
LEXKG_API void lexkg_report_free(lexkg_report* r);
LEXKG_API size_t lexkg_report_error_count(const lexkg_report* r);
LEXKG_API size_t lexkg_report_warning_count(const lexkg_report* r);
LEXKG_API size_t lexkg_report_violation_count(const lexkg_report* r);
LEXKG_API lexkg_status lexkg_report_text(const lexkg_report* r, char** out);
LEXKG_API lexkg_status lexkg_report_json(const lexkg_report* r, char** out);

/* Batch extraction.
 *
 * config_json keys (all optional except out_dir):
 *   out_dir, state_path, format ("jsonl" | "txt-dir"), pdf_extractor,
 *   mock_dir, rules_path, max_inflight, max_retries, keep_invalid, strict,
 *   limit, transport_retries, backoff_initial_seconds, max_prompt_tokens,
 *   prices {input_per_million, output_per_million},
 *   backend {endpoint, model, temperature, max_output_tokens, timeout_seconds, api_key_env}
 * The run state JSON is returned through state_json (may be NULL).
 */
typedef void (*lexkg_progress_fn)(void* user, const char* doc_id, const char* status);
LEXKG_API lexkg_status lexkg_run_batch(const char* corpus_path, const char* config_json, const lexkg_ontology* o,
                                       lexkg_progress_fn progress, void* user, char** state_json);

/* Cost of a run-state file: JSON with input_tokens, output_tokens, requests,
 * documents, total_usd, per_document_usd, per_thousand_documents_usd. */
LEXKG_API lexkg_status lexkg_cost_from_state(const char* state_path, double input_per_million,
                                             double output_per_million, char** summary_json);

typedef struct lexkg_cost_record {
    uint64_t input_tokens;
    uint64_t output_tokens;
} lexkg_cost_record;
LEXKG_API lexkg_status lexkg_estimate_cost(const lexkg_cost_record* records, size_t n, double input_per_million,
                                           double output_per_million, int64_t* picodollars);

/* Query: Turtle-like patterns with ?variables. Result is a tab-separated table. */
LEXKG_API lexkg_status lexkg_query(const lexkg_graph* g, const char* patterns, const lexkg_ontology* o,
                                   char** table, size_t* rows);

/* Statistics */
typedef enum lexkg_stats_kind {
    LEXKG_STATS_TRIPLES = 0,
    LEXKG_STATS_OFFENSES = 1,
    LEXKG_STATS_DURATION = 2,
    LEXKG_STATS_FINES = 3
} lexkg_stats_kind;

typedef struct lexkg_stats_options {
    /* <= 0 selects the default: 5 (triples), 90 days (durations). */
    double bin_width;
    /* Fines: 1 = decade bins (default), 0 = fixed width bins. */
    int log_bins;
} lexkg_stats_options;

/* input: an output directory of .ttl files or a merged .nt/.ttl file. Any of
 * table, csv, plot_json may be NULL. plot_json is only produced for durations
 * and fines. */
LEXKG_API lexkg_status lexkg_stats(lexkg_stats_kind kind, const char* input, const lexkg_ontology* o,
                                   const lexkg_stats_options* options, char** table, char** csv, char** plot_json);

/* Writes nodes.csv and edges.csv into out_dir. */
LEXKG_API lexkg_status lexkg_export_property_graph(const lexkg_graph* g, const lexkg_ontology* o, const char* out_dir,
                                                   size_t* nodes, size_t* edges);

#ifdef __cplusplus
}
#endif

#endif
