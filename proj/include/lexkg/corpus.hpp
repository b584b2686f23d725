#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexkg/cost.hpp"
#include "lexkg/document.hpp"
#include "lexkg/extraction.hpp"
#include "lexkg/ontology.hpp"
#include "lexkg/rdf.hpp"

namespace lexkg::corpus {

namespace fs = std::filesystem;

enum class CorpusFormat { jsonl, txt_dir };

std::string_view to_string(CorpusFormat f) noexcept;
/// Directories are txt-dir, everything else jsonl.
CorpusFormat detect_format(const fs::path& path);

struct IngestOptions {
    /// Shell command template with {in} and {out} placeholders, run for every
    /// .pdf file of a txt-dir corpus to produce its text.
    std::optional<std::string> pdf_extractor;
};

/// Ids must be usable as file names: non-empty, no path separators, no
/// control characters, not "." or "..". Throws MalformedRecord.
void check_document_id(const std::string& id);

/// jsonl: {"id","text","date"?} per line, blank lines skipped. txt-dir: every
/// .txt file below `path` (recursively), id = file stem. Records are returned in
/// input order (jsonl) or path order (txt-dir).
/// Throws DuplicateId, MalformedRecord, EmptyCorpus, IoError.
std::vector<DocumentRecord> ingest_corpus(const fs::path& path, CorpusFormat format,
                                          const IngestOptions& options = {});

// ---------------------------------------------------------------------------
// Batch runs

enum class DocStatus { pending, running, valid, invalid, parse_failed, backend_failed };

std::string_view to_string(DocStatus s) noexcept;
std::optional<DocStatus> doc_status_from_string(std::string_view s) noexcept;
bool is_terminal(DocStatus s) noexcept;

struct DocState {
    DocStatus status = DocStatus::pending;
    std::size_t attempts = 0;
    extract::CostRecord cost;
    std::string error;
    /// Output files that could not be written.
    std::vector<std::string> io_errors;
};

struct RunTotals {
    std::size_t documents = 0;
    std::map<DocStatus, std::size_t> by_status;
    extract::CostRecord cost;
};

struct RunState {
    std::string fingerprint;
    std::string model;
    std::string started_at;
    std::string updated_at;
    std::map<std::string, DocState> docs;

    RunTotals totals() const;
    std::string to_json() const;
    /// Throws MalformedRecord on a structurally invalid state document.
    static RunState from_json(std::string_view text);
};

/// FNV-1a 64 over the three inputs, separated, as 16 hex digits.
std::string config_fingerprint(std::string_view ontology_text, std::string_view rules_text,
                               std::string_view model_id);

/// Throws IoError / MalformedRecord.
RunState load_run_state(const fs::path& path);
/// Write to a temporary sibling, then rename over `path`.
void save_run_state(const fs::path& path, const RunState& state);

struct RunConfig {
    std::size_t max_inflight = 4;
    std::size_t max_retries = 2;
    bool keep_invalid = true;
    fs::path output_dir = "out";
    /// Defaults to <output_dir>/run-state.json when empty.
    fs::path state_path;
    /// Process at most this many pending documents, then stop as if interrupted.
    std::optional<std::size_t> limit;
    /// Validation mode, transport retries, prices. Its max_retries is replaced
    /// by the field above.
    extract::ExtractionConfig extraction;

    fs::path resolved_state_path() const;
    /// Throws ConfigError.
    void validate() const;
};

/// Called by the coordinator after each terminal transition.
using ProgressCallback = void (*)(void* user, const std::string& doc_id, const DocState& state);

/// Extracts every non-terminal document with at most max_inflight concurrent
/// extractions, persisting <id>.ttl, <id>.report.json and <id>.comments.txt
/// under output_dir. An existing state file is resumed; running entries left by
/// a crash are re-run. Throws StateFingerprintMismatch, DuplicateId, IoError
/// (output dir or state file), ConfigError.
RunState run_batch(const std::vector<DocumentRecord>& docs, extract::Backend& backend, const onto::Ontology& ontology,
                   const extract::GuidanceRules& rules, const RunConfig& config,
                   ProgressCallback progress = nullptr, void* progress_user = nullptr);

/// Sorted list of the .ttl files directly inside `dir`.
std::vector<fs::path> list_turtle_files(const fs::path& dir);

/// Union of every .ttl file in `dir`. Blank nodes of the i-th file (in name
/// order) get the prefix "f<i>_"; every subject is linked to the file stem with
/// fca:fromDocument. Throws ParseError naming the file, IoError.
rdf::Graph merge_outputs(const fs::path& dir);

std::string read_file(const fs::path& path);
void write_file(const fs::path& path, std::string_view content);

}  // namespace lexkg::corpus
