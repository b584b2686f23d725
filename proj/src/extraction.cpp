#include <chrono>
#include <cmath>
#include <thread>

#include "lexkg/extraction.hpp"
#include "lexkg/turtle.hpp"

namespace lexkg::extract {

std::string_view to_string(Status status) noexcept {
    switch (status) {
        case Status::valid: return "valid";
        case Status::invalid: return "invalid";
        case Status::parse_failed: return "parse_failed";
        case Status::backend_failed: return "backend_failed";
    }
    return "?";
}

std::optional<Status> status_from_string(std::string_view s) noexcept {
    for (Status st : {Status::valid, Status::invalid, Status::parse_failed, Status::backend_failed})
        if (to_string(st) == s) return st;
    return std::nullopt;
}

const validation::ValidationReport* ExtractionOutcome::final_report() const {
    for (auto it = attempts.rbegin(); it != attempts.rend(); ++it)
        if (it->report) return &*it->report;
    return nullptr;
}

namespace {

std::string describe_parse_error(const ParseError& e) {
    std::string out = "Turtle syntax error at line " + std::to_string(e.line()) + ", column " +
                      std::to_string(e.column()) + ": " + e.message();
    if (!e.snippet().empty()) out += " (near: " + e.snippet() + ")";
    return out + "\n";
}

/// One backend call with transport retries; every call counts as a request.
BackendReply send_with_retry(Backend& backend, const Prompt& prompt, const RequestContext& ctx,
                             const ExtractionConfig& config, CostRecord& cost) {
    double delay = config.backoff_initial_seconds;
    for (std::size_t tries = 0;; ++tries) {
        ++cost.requests;
        try {
            return backend.send(prompt, ctx);
        } catch (const BackendError&) {
            if (tries >= config.transport_retries) throw;
        }
        if (delay > 0) std::this_thread::sleep_for(std::chrono::duration<double>(delay));
        delay *= 2;
    }
}

}  // namespace

ExtractionOutcome run_extraction(const DocumentRecord& doc, Backend& backend, const onto::Ontology& ontology,
                                 const GuidanceRules& rules, const ExtractionConfig& config) {
    ExtractionOutcome outcome;
    outcome.doc_id = doc.id;
    const Prompt base = assemble_prompt(ontology.source_text(), rules, doc.text);
    if (base.token_estimate > config.max_prompt_tokens) {
        outcome.status = Status::backend_failed;
        outcome.error = "prompt too large: about " + std::to_string(base.token_estimate) + " tokens, limit " +
                        std::to_string(config.max_prompt_tokens);
        return outcome;
    }

    Prompt prompt = base;
    for (std::size_t attempt = 1; attempt <= config.max_retries + 1; ++attempt) {
        BackendReply reply;
        try {
            reply = send_with_retry(backend, prompt, RequestContext{doc.id, attempt}, config, outcome.cost);
        } catch (const BackendError& e) {
            outcome.status = Status::backend_failed;
            outcome.error = e.what();
            break;
        }
        outcome.cost.input_tokens += reply.input_tokens;
        outcome.cost.output_tokens += reply.output_tokens;

        Attempt& a = outcome.attempts.emplace_back();
        a.raw_response = reply.text;

        std::string turtle_text;
        std::string repair_errors;
        try {
            ResponseParts parts = split_response(reply.text);
            turtle_text = std::move(parts.turtle);
            if (parts.comments) outcome.comments = std::move(parts.comments);
            turtle::TurtleDocument parsed = turtle::parse_turtle(turtle_text);
            a.report = validation::validate_graph(parsed.graph, ontology, config.mode);
            outcome.graph = std::move(parsed.graph);
            if (!a.report->has_errors()) {
                outcome.status = Status::valid;
                break;
            }
            outcome.status = Status::invalid;
            repair_errors = "The Turtle parsed but violates the ontology:\n" + a.report->to_text();
        } catch (const EmptyResponse&) {
            a.parse_error = ParseError(1, 1, "empty response", "");
            outcome.status = Status::parse_failed;
            outcome.graph.reset();
            repair_errors = "The answer was empty.\n";
        } catch (const ParseError& e) {
            a.parse_error = e;
            outcome.status = Status::parse_failed;
            outcome.graph.reset();
            repair_errors = describe_parse_error(e);
        }
        prompt = add_repair_section(base, repair_errors, turtle_text.empty() ? reply.text : turtle_text);
    }
    outcome.cost.cost = price_tokens(outcome.cost.input_tokens, outcome.cost.output_tokens, config.prices);
    return outcome;
}

}  // namespace lexkg::extract
