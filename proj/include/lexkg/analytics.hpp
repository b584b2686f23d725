#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lexkg/ontology.hpp"
#include "lexkg/rdf.hpp"

namespace lexkg::analytics {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Basic graph patterns

struct Variable {
    std::string name;
    friend bool operator==(const Variable&, const Variable&) = default;
};

/// [a-z][a-z0-9_]*
bool is_valid_variable_name(std::string_view name) noexcept;

using PatternTerm = std::variant<rdf::Term, Variable>;

/// The predicate position holds an IRI or a variable.
struct TriplePattern {
    PatternTerm subject;
    PatternTerm predicate;
    PatternTerm object;

    /// Throws QueryError on a bad variable name, a literal subject, or a
    /// predicate that is neither an IRI nor a variable.
    void check() const;
    std::vector<std::string> variables() const;
};

using Binding = std::map<std::string, rdf::Term>;

/// Left-to-right nested-loop join. Bindings are deduplicated and ordered by
/// the N-Triples forms of their values in variable-name order.
/// Throws QueryError for an empty pattern list or an invalid pattern.
std::vector<Binding> bgp_match(const rdf::Graph& graph, const std::vector<TriplePattern>& patterns);

/// Reads patterns written as Turtle triples where `?name` marks a variable.
/// The ontology prefixes are predeclared. Blank nodes are not allowed.
/// Throws ParseError or QueryError.
std::vector<TriplePattern> parse_patterns(std::string_view text, const rdf::PrefixMap& predeclared = {});

/// Tab-separated table: header of variable names, then one row per binding.
std::string format_bindings(const std::vector<Binding>& bindings, const rdf::PrefixMap& prefixes);

// ---------------------------------------------------------------------------
// Histograms and summaries

struct Histogram {
    /// counts.size() + 1 sorted edges; bin i is [edges[i], edges[i+1]), the last
    /// bin also holds values equal to the final edge.
    std::vector<double> bin_edges;
    std::vector<std::size_t> counts;
    std::optional<std::vector<double>> normalized;

    std::size_t total() const;
};

/// Bins of `width` aligned to multiples of width, spanning the data.
/// Throws EmptySample, ConfigError (width <= 0).
std::vector<double> fixed_width_edges(const std::vector<double>& values, double width);
/// Decade edges 10^k covering the positive values; a leading [0, 10^kmin) bin
/// is added when some value is below 10^kmin. Throws EmptySample.
std::vector<double> log_decade_edges(const std::vector<double>& values);

Histogram make_histogram(const std::vector<double>& values, std::vector<double> edges);
/// Adds fractions that sum to 1 (left unset for an empty histogram).
void normalize(Histogram& h);

struct GroupSummary {
    std::string group;
    std::size_t n = 0;
    double mean = 0, median = 0, q1 = 0, q3 = 0, min = 0, max = 0;
};

/// Linear interpolation between order statistics (position p * (n - 1)).
/// `sorted` must be non-empty and ascending.
double quantile(const std::vector<double>& sorted, double p);

/// Throws EmptySample.
GroupSummary summarize(std::string group, std::vector<double> values);

/// Kolmogorov-Smirnov two-sample statistic sup |F_a - F_b|. Throws EmptySample.
double ks_statistic(std::vector<double> a, std::vector<double> b);

// ---------------------------------------------------------------------------
// Corpus statistics

struct TripleCounts {
    std::map<std::string, std::size_t> per_document;
    Histogram histogram;
    double mean = 0;
    double median = 0;
};

/// Triples per .ttl file of `dir`. Throws EmptyCorpus, ParseError, IoError.
TripleCounts triples_per_doc(const fs::path& dir, double bin_width = 5.0);
/// Same for a merged graph, grouping by fca:fromDocument (provenance triples
/// are not counted). Throws EmptyCorpus.
TripleCounts triples_per_doc(const rdf::Graph& merged, double bin_width = 5.0);

/// Distinct (subject, object) pairs per object of `predicate`, by descending
/// count, ties by N-Triples order. Throws UnknownPredicate.
std::vector<std::pair<rdf::Term, std::size_t>> count_by_object(const rdf::Graph& graph, const rdf::Iri& predicate,
                                                               const onto::Ontology& ontology);

enum class Binning { fixed_width, log_decade };

struct BinSpec {
    Binning kind = Binning::fixed_width;
    double width = 90.0;
};

/// Path from a punishment node (?node) to an appeal decision (?group).
std::vector<TriplePattern> default_decision_path();

struct GroupDistribution {
    Histogram histogram;  // normalized
    GroupSummary summary;
    std::vector<double> values;  // ascending
};

struct GroupedResult {
    std::map<std::string, GroupDistribution> groups;
    std::size_t skipped_literals = 0;
    std::vector<std::string> warnings;
};

/// Values of `value_predicate` on every ?node bound by `group_path`, split by
/// the ?group binding (labelled by local name). All groups share bin edges.
/// Throws UnknownPredicate, QueryError.
GroupedResult grouped_distribution(const rdf::Graph& graph, const onto::Ontology& ontology,
                                   const rdf::Iri& value_predicate, const std::vector<TriplePattern>& group_path,
                                   const BinSpec& bins);

// ---------------------------------------------------------------------------
// Property-graph export and CSV

struct NodeRow {
    std::string id;
    std::string cls;
    std::string doc;
    std::map<std::string, std::string> attributes;
};

struct EdgeRow {
    std::string src;
    std::string dst;
    std::string relation;
    friend auto operator<=>(const EdgeRow&, const EdgeRow&) = default;
};

struct PropertyGraph {
    std::vector<std::string> attribute_columns;  // sorted
    std::vector<NodeRow> nodes;                  // by id
    std::vector<EdgeRow> edges;                  // sorted

    std::string nodes_csv() const;
    std::string edges_csv() const;
};

/// Nodes: every IRI or blank subject, plus objects of object properties.
/// Literal-valued triples become attributes (multi-values joined by "|"),
/// fca:fromDocument fills the doc column, object properties become edges.
PropertyGraph export_property_graph(const rdf::Graph& graph, const onto::Ontology& ontology);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view value);
std::string csv_rows(const std::vector<std::vector<std::string>>& rows);

/// Shortest decimal form that parses back to the same double.
std::string format_number(double v);

/// bin_lo,bin_hi,count,fraction,group
std::string histogram_csv(const Histogram& h, const std::string& group);
std::string grouped_csv(const GroupedResult& r);
std::string summary_csv(const std::vector<GroupSummary>& rows);
std::string counts_csv(const std::vector<std::pair<std::string, std::size_t>>& rows, std::string_view key_header);

/// {"groups":{name:{"summary":{...},"bin_edges":[...],"counts":[...],"fractions":[...]}},"ks":D?}
std::string plot_data_json(const GroupedResult& r);

}  // namespace lexkg::analytics
