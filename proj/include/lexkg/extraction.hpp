#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexkg/cost.hpp"
#include "lexkg/document.hpp"
#include "lexkg/ontology.hpp"
#include "lexkg/rdf.hpp"
#include "lexkg/validator.hpp"

namespace lexkg::extract {

/// Ordered, one-sentence instructions appended to the ontology in the prompt.
struct GuidanceRules {
    std::vector<std::string> rules;

    /// Shipped defaults. These are a reconstruction of the kind of rules an
    /// ontology-constrained extraction needs, not a published rule set.
    static GuidanceRules defaults();
    /// One rule per non-empty line; '#' lines are skipped.
    static GuidanceRules parse(std::string_view text);
    /// Numbered list, one rule per line.
    std::string text() const;
};

struct Prompt {
    std::string system;
    std::string user;
    std::size_t token_estimate = 0;
};

/// ceil(characters / 4), counting UTF-8 code points.
std::size_t estimate_tokens(std::string_view text);

/// Section headers, in the order they appear in the user message.
inline constexpr std::string_view kOntologySection = "ONTOLOGY";
inline constexpr std::string_view kRulesSection = "RULES";
inline constexpr std::string_view kDocumentSection = "DOCUMENT";
inline constexpr std::string_view kOutputSection = "OUTPUT INSTRUCTIONS";
inline constexpr std::string_view kRepairSection = "REPAIR";

/// Deterministic prompt. Throws EmptyInput naming the blank section.
Prompt assemble_prompt(std::string_view ontology_turtle, const GuidanceRules& rules, std::string_view doc_text);

/// `base` plus a REPAIR section quoting the errors and the rejected output.
Prompt add_repair_section(const Prompt& base, std::string_view errors, std::string_view previous_output);

struct ResponseParts {
    std::string turtle;
    std::optional<std::string> comments;
};

/// First fenced block (or text before a COMMENTS header) as Turtle; text
/// after the COMMENTS header as comments. Throws EmptyResponse on blank input.
ResponseParts split_response(std::string_view raw);

// ---------------------------------------------------------------------------
// Backends

struct BackendConfig {
    std::string endpoint = "https://api.openai.com/v1/chat/completions";
    std::string model = "gpt-4o-mini";
    double temperature = 0.0;
    int max_output_tokens = 4096;
    double timeout_seconds = 120.0;
    std::string api_key_env = "LEXKG_API_KEY";

    /// Throws ConfigError.
    void validate() const;
};

struct BackendReply {
    std::string text;
    std::size_t input_tokens = 0;
    std::size_t output_tokens = 0;
};

struct RequestContext {
    std::string doc_id;
    std::size_t attempt = 1;  // 1-based repair-loop attempt
};

/// A text generator. send() is a single blocking call that either returns a
/// reply or throws BackendError; it must be safe to call concurrently.
class Backend {
public:
    virtual ~Backend() = default;
    virtual BackendReply send(const Prompt& prompt, const RequestContext& context) = 0;
    virtual std::string model_id() const = 0;
};

/// Replays fixture files `<doc_id>.attempt<N>.txt` from a directory. When
/// attempt N has no file the highest lower-numbered one is reused. A file whose
/// first line is `!backend-error` raises BackendError with the rest as message.
class MockBackend final : public Backend {
public:
    explicit MockBackend(std::filesystem::path fixture_dir, std::string model = "mock");

    BackendReply send(const Prompt& prompt, const RequestContext& context) override;
    std::string model_id() const override { return model_; }

    std::size_t calls() const noexcept { return calls_.load(); }

private:
    std::filesystem::path dir_;
    std::string model_;
    std::atomic<std::size_t> calls_{0};
};

/// Chat-completions style HTTP(S) endpoint. The API key is read from the
/// environment variable named in the config and sent as a bearer token.
class HttpBackend final : public Backend {
public:
    explicit HttpBackend(BackendConfig config);

    BackendReply send(const Prompt& prompt, const RequestContext& context) override;
    std::string model_id() const override { return config_.model; }

    /// Request body for `prompt` (exposed for tests).
    std::string request_body(const Prompt& prompt) const;
    /// Extracts text and usage from a response body. Throws BackendError.
    static BackendReply parse_response_body(std::string_view body, const Prompt& prompt);

private:
    BackendConfig config_;
};

// ---------------------------------------------------------------------------
// Repair loop

enum class Status { valid, invalid, parse_failed, backend_failed };

std::string_view to_string(Status status) noexcept;
std::optional<Status> status_from_string(std::string_view s) noexcept;

struct Attempt {
    std::string raw_response;
    std::optional<ParseError> parse_error;
    std::optional<validation::ValidationReport> report;
};

struct ExtractionConfig {
    std::size_t max_retries = 2;
    validation::Mode mode = validation::Mode::lenient;
    /// Transport retries per backend call, with exponential backoff.
    std::size_t transport_retries = 2;
    double backoff_initial_seconds = 1.0;
    /// Prompts estimated above this many tokens are not sent.
    std::size_t max_prompt_tokens = 100000;
    PriceTable prices;
};

struct ExtractionOutcome {
    std::string doc_id;
    Status status = Status::backend_failed;
    std::vector<Attempt> attempts;
    std::optional<rdf::Graph> graph;
    std::optional<std::string> comments;
    CostRecord cost;
    /// Transport or oversized-prompt failure description.
    std::string error;

    /// Report of the last attempt that parsed, if any.
    const validation::ValidationReport* final_report() const;
};

ExtractionOutcome run_extraction(const DocumentRecord& doc, Backend& backend, const onto::Ontology& ontology,
                                 const GuidanceRules& rules, const ExtractionConfig& config);

}  // namespace lexkg::extract
