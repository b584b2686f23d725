#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexkg/rdf.hpp"

namespace lexkg::turtle {

struct TurtleDocument {
    rdf::Graph graph;
    rdf::PrefixMap prefixes;
    std::optional<rdf::Iri> base;
    /// Triples in the order the statements produced them (duplicates kept).
    std::vector<rdf::Triple> statements;
};

struct ParseOptions {
    /// Accept `?name` terms and encode them as <urn:lexkg:var:name> IRIs.
    /// Used by the query-pattern reader; never enabled for data files.
    bool allow_variables = false;
    /// Maximum nesting of [] and () before the parser gives up.
    std::size_t max_depth = 256;
    /// Prefixes in scope before the first directive.
    rdf::PrefixMap initial_prefixes;
};

inline constexpr std::string_view variable_iri_prefix = "urn:lexkg:var:";

/// Parses the supported Turtle subset. Throws lexkg::ParseError on the first
/// syntax error; line and column always point at a character of `text`.
TurtleDocument parse_turtle(std::string_view text, const ParseOptions& options = {});

/// Prefix block, then one statement per subject (subjects and predicates in
/// canonical order). Uses qnames where a prefix covers an IRI.
std::string serialize_turtle(const TurtleDocument& doc);
std::string serialize_turtle(const rdf::Graph& graph);

/// One triple per non-empty, non-comment line. Throws lexkg::ParseError.
rdf::Graph parse_ntriples(std::string_view text);

/// Sorted canonical lines, each terminated by LF.
std::string serialize_ntriples(const rdf::Graph& graph);

}  // namespace lexkg::turtle
