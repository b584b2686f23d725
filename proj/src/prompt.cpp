#include <algorithm>
#include <cctype>

#include "lexkg/extraction.hpp"

namespace lexkg::extract {

namespace {

bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string_view rtrim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

void section(std::string& out, std::string_view name, std::string_view body) {
    out += "=== ";
    out += name;
    out += " ===\n";
    out += body;
    if (body.empty() || body.back() != '\n') out += '\n';
    out += "=== END ";
    out += name;
    out += " ===\n";
}

constexpr std::string_view kSystem =
    "You are an information extraction assistant for criminal court decisions. "
    "You turn one decision into an RDF knowledge graph written in Turtle, using only the "
    "vocabulary of the ontology you are given.";

constexpr std::string_view kOutputInstructions =
    "Return the knowledge graph as exactly one fenced code block tagged turtle:\n"
    "```turtle\n"
    "...\n"
    "```\n"
    "Declare every prefix you use inside the block. Type every literal that is not plain text.\n"
    "After the block you may add a section that starts with the line \"COMMENTS:\" containing remarks "
    "about the document and suggestions for improving the ontology. Write nothing else.\n";

/// Line that opens the comments section: optional markdown decoration, then
/// COMMENTS in capitals, then an optional colon. Returns the text after it.
std::optional<std::string_view> comments_header(std::string_view line) {
    std::string_view s = trim(line);
    while (!s.empty() && (s.front() == '#' || s.front() == '*')) s.remove_prefix(1);
    s = trim(s);
    constexpr std::string_view kw = "COMMENTS";
    if (s.substr(0, kw.size()) != kw) return std::nullopt;
    s.remove_prefix(kw.size());
    while (!s.empty() && s.front() == '*') s.remove_prefix(1);
    if (!s.empty() && s.front() == ':') s.remove_prefix(1);
    while (!s.empty() && s.front() == '*') s.remove_prefix(1);
    if (!s.empty() && !std::isspace(static_cast<unsigned char>(s.front()))) return std::nullopt;
    return trim(s);
}

struct Line {
    std::size_t begin;
    std::size_t end;  // exclusive, without '\n'
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back({start, text.size()});
            break;
        }
        lines.push_back({start, nl});
        start = nl + 1;
    }
    return lines;
}

std::optional<std::size_t> find_header(std::string_view raw, const std::vector<Line>& lines, std::size_t from) {
    for (std::size_t i = from; i < lines.size(); ++i)
        if (comments_header(raw.substr(lines[i].begin, lines[i].end - lines[i].begin))) return i;
    return std::nullopt;
}

/// Trimmed text following the header on line `header`, or nullopt if blank.
std::optional<std::string> comments_after(std::string_view raw, const std::vector<Line>& lines, std::size_t header) {
    std::string body(*comments_header(raw.substr(lines[header].begin, lines[header].end - lines[header].begin)));
    if (header + 1 < lines.size()) {
        if (!body.empty()) body += '\n';
        body += raw.substr(lines[header + 1].begin);
    }
    std::string trimmed(trim(body));
    if (trimmed.empty()) return std::nullopt;
    return trimmed;
}

}  // namespace

GuidanceRules GuidanceRules::defaults() {
    return GuidanceRules{{
        "Use only classes and properties declared in the ontology, plus rdf:type, rdfs:label, rdfs:comment, "
        "foaf:name, schema:name and schema:date.",
        "Create exactly one fca:Case node for the document.",
        "Give every node an explicit rdf:type taken from the ontology.",
        "State the duration of a custodial punishment in days with fca:durationDays as an "
        "xsd:nonNegativeInteger literal.",
        "State the amount of a fine in euros with fca:amountEUR as an xsd:decimal literal.",
        "Write every date as an ISO 8601 xsd:date literal of the form YYYY-MM-DD.",
        "Never give the location of a court as the location of a crime; use fca:courtLocation for courts and "
        "fca:crimeLocation only for the place where the crime happened.",
        "Express the outcome of the appeal with fca:hasDecision pointing to fca:Rejected or fca:Upheld.",
        "Classify every crime with fca:offenseCategory using one of the offense category individuals.",
        "Do not assert facts that the document does not state.",
    }};
}

GuidanceRules GuidanceRules::parse(std::string_view text) {
    GuidanceRules r;
    for (const auto& l : split_lines(text)) {
        auto line = trim(text.substr(l.begin, l.end - l.begin));
        if (line.empty() || line.front() == '#') continue;
        r.rules.emplace_back(line);
    }
    return r;
}

std::string GuidanceRules::text() const {
    std::string out;
    for (std::size_t i = 0; i < rules.size(); ++i) out += std::to_string(i + 1) + ". " + rules[i] + "\n";
    return out;
}

std::size_t estimate_tokens(std::string_view text) {
    const auto chars = static_cast<std::size_t>(
        std::count_if(text.begin(), text.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
    return (chars + 3) / 4;
}

Prompt assemble_prompt(std::string_view ontology_turtle, const GuidanceRules& rules, std::string_view doc_text) {
    if (blank(ontology_turtle)) throw EmptyInput(std::string(kOntologySection));
    const std::string rules_text = rules.text();
    if (rules.rules.empty() || blank(rules_text)) throw EmptyInput(std::string(kRulesSection));
    if (blank(doc_text)) throw EmptyInput(std::string(kDocumentSection));

    Prompt p;
    p.system = std::string(kSystem);
    section(p.user, kOntologySection, ontology_turtle);
    p.user += '\n';
    section(p.user, kRulesSection, rules_text);
    p.user += '\n';
    section(p.user, kDocumentSection, doc_text);
    p.user += '\n';
    section(p.user, kOutputSection, kOutputInstructions);
    p.token_estimate = estimate_tokens(p.system + p.user);
    return p;
}

Prompt add_repair_section(const Prompt& base, std::string_view errors, std::string_view previous_output) {
    std::string body = "Your previous answer could not be accepted because of these errors:\n";
    body += errors;
    if (!errors.empty() && errors.back() != '\n') body += '\n';
    body += "Previous answer:\n```turtle\n";
    body += previous_output;
    if (!previous_output.empty() && previous_output.back() != '\n') body += '\n';
    body += "```\nReturn a corrected and complete answer that follows the OUTPUT INSTRUCTIONS.\n";
    Prompt p = base;
    p.user += '\n';
    section(p.user, kRepairSection, body);
    p.token_estimate = estimate_tokens(p.system + p.user);
    return p;
}

ResponseParts split_response(std::string_view raw) {
    if (blank(raw)) throw EmptyResponse();
    const auto lines = split_lines(raw);

    auto line_at = [&](std::size_t i) { return raw.substr(lines[i].begin, lines[i].end - lines[i].begin); };
    auto is_fence = [&](std::size_t i) { return trim(line_at(i)).substr(0, 3) == "```"; };

    for (std::size_t open = 0; open < lines.size(); ++open) {
        if (!is_fence(open)) continue;
        std::size_t close = open + 1;
        while (close < lines.size() && !is_fence(close)) ++close;
        const std::size_t body_begin = open + 1 < lines.size() ? lines[open + 1].begin : raw.size();
        const std::size_t body_end = close < lines.size() ? lines[close].begin : raw.size();
        ResponseParts parts;
        parts.turtle = std::string(rtrim(raw.substr(body_begin, body_end > body_begin ? body_end - body_begin : 0)));
        if (close < lines.size())
            if (auto header = find_header(raw, lines, close + 1)) parts.comments = comments_after(raw, lines, *header);
        return parts;
    }

    ResponseParts parts;
    if (auto header = find_header(raw, lines, 0)) {
        parts.turtle = std::string(rtrim(raw.substr(0, lines[*header].begin)));
        parts.comments = comments_after(raw, lines, *header);
        return parts;
    }
    parts.turtle = std::string(raw);
    return parts;
}

}  // namespace lexkg::extract
