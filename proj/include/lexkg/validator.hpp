#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexkg/ontology.hpp"
#include "lexkg/rdf.hpp"

namespace lexkg::validation {

enum class Rule { UnknownPredicate, BadLiteral, DomainMismatch, RangeMismatch, UntypedSubject };
enum class Severity { error, warning };
enum class Mode { strict, lenient };

std::string_view to_string(Rule rule) noexcept;
std::string_view to_string(Severity severity) noexcept;
std::string_view to_string(Mode mode) noexcept;

struct LiteralIssue {
    Severity severity = Severity::error;
    std::string message;
};

/// Lexical-space check for the supported xsd datatypes (string, integer,
/// nonNegativeInteger, decimal, boolean, date, dateTime). Any other datatype
/// yields a warning. std::nullopt means the literal is fine.
std::optional<LiteralIssue> validate_literal(std::string_view lexical, const rdf::Iri& datatype);

bool is_supported_datatype(const rdf::Iri& datatype);

/// Calendar check for year/month/day, proleptic Gregorian.
bool is_valid_calendar_date(long year, int month, int day) noexcept;

struct Violation {
    Rule rule;
    rdf::Triple triple;
    Severity severity;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::size_t checked_triples = 0;
    Mode mode = Mode::lenient;

    std::size_t error_count() const;
    std::size_t warning_count() const;
    bool has_errors() const { return error_count() > 0; }

    /// One line per violation: "RULE at <triple>: message".
    std::string to_text() const;
    /// {"mode","checked_triples","errors","warnings","violations":[{rule,severity,subject,predicate,object,message}]}
    std::string to_json() const;
};

/// Keyed by the node's N-Triples form. Explicit rdf:type assertions and ontology individuals, plus (lenient)
/// classes implied by the domains and ranges of the properties a node is used
/// with; closed under superclasses.
std::map<std::string, std::set<rdf::Iri>> infer_types(const rdf::Graph& graph, const onto::Ontology& ontology,
                                                      Mode mode = Mode::lenient);

/// Runs every rule over every triple. Violations are ordered by the triple's
/// canonical form, then by rule.
ValidationReport validate_graph(const rdf::Graph& graph, const onto::Ontology& ontology,
                                Mode mode = Mode::lenient);

}  // namespace lexkg::validation
