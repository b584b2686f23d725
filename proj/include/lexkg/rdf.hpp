#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "lexkg/errors.hpp"

namespace lexkg::rdf {

namespace ns {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view owl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view foaf = "http://xmlns.com/foaf/0.1/";
inline constexpr std::string_view schema = "https://schema.org/";
inline constexpr std::string_view fca = "https://growgraph.dev/fcaont#";
}  // namespace ns

/// An absolute IRI. Validation is syntactic: a scheme, no whitespace or
/// characters that cannot appear inside <...>.
class Iri {
public:
    explicit Iri(std::string value);

    static bool is_valid(std::string_view text) noexcept;

    const std::string& str() const noexcept { return value_; }

    /// Text after the last '#', '/' or ':'.
    std::string_view local_name() const noexcept;

    friend bool operator==(const Iri&, const Iri&) = default;
    friend auto operator<=>(const Iri&, const Iri&) = default;

private:
    std::string value_;
};

Iri make_iri(std::string_view ns, std::string_view local);

namespace vocab {
Iri rdf_type();
Iri rdf_first();
Iri rdf_rest();
Iri rdf_nil();
Iri rdf_lang_string();
Iri xsd_string();
Iri xsd_integer();
Iri xsd_decimal();
Iri xsd_double();
Iri xsd_boolean();
}  // namespace vocab

class BlankNode {
public:
    explicit BlankNode(std::string label);

    /// Labels are restricted to [A-Za-z0-9_]+.
    static bool is_valid_label(std::string_view label) noexcept;

    const std::string& label() const noexcept { return label_; }

    friend bool operator==(const BlankNode&, const BlankNode&) = default;
    friend auto operator<=>(const BlankNode&, const BlankNode&) = default;

private:
    std::string label_;
};

class Literal {
public:
    /// Plain literal of type xsd:string.
    explicit Literal(std::string lexical);
    /// Typed literal; rdf:langString is rejected here, use with_language.
    Literal(std::string lexical, Iri datatype);

    static Literal with_language(std::string lexical, std::string language);

    static bool is_valid_language(std::string_view tag) noexcept;

    const std::string& lexical() const noexcept { return lexical_; }
    const Iri& datatype() const noexcept { return datatype_; }
    const std::optional<std::string>& language() const noexcept { return language_; }

    friend bool operator==(const Literal&, const Literal&) = default;

private:
    Literal(std::string lexical, Iri datatype, std::optional<std::string> language);

    std::string lexical_;
    Iri datatype_;
    std::optional<std::string> language_;
};

using Term = std::variant<Iri, BlankNode, Literal>;

inline bool is_iri(const Term& t) noexcept { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) noexcept { return std::holds_alternative<BlankNode>(t); }
inline bool is_literal(const Term& t) noexcept { return std::holds_alternative<Literal>(t); }

/// N-Triples rendering of a single term.
std::string to_ntriples(const Term& term);

/// N-Triples string escaping (quotes, backslash, line breaks, other controls).
std::string escape_string(std::string_view text);

class Triple {
public:
    /// Throws InvalidTerm when the subject is a literal.
    Triple(Term subject, Iri predicate, Term object);

    const Term& subject() const noexcept { return subject_; }
    const Iri& predicate() const noexcept { return predicate_; }
    const Term& object() const noexcept { return object_; }

    friend bool operator==(const Triple&, const Triple&) = default;

private:
    Term subject_;
    Iri predicate_;
    Term object_;
};

/// One line `<s> <p> o .` without the trailing newline.
std::string canonical_ntriple(const Triple& triple);

class PrefixMap {
public:
    /// Adds or replaces a label; the label set never holds duplicates.
    void set(std::string label, Iri ns);

    std::optional<Iri> find(std::string_view label) const;
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<std::string, Iri, std::less<>>& entries() const noexcept { return entries_; }

    /// Longest-namespace match rendered as "label:local" when the local part is
    /// a plain name that round-trips through the Turtle grammar.
    std::optional<std::string> compact(const Iri& iri) const;

    friend bool operator==(const PrefixMap&, const PrefixMap&) = default;

private:
    std::map<std::string, Iri, std::less<>> entries_;
};

/// "label:local" -> namespace ++ local. Throws UnknownPrefix.
Iri expand_qname(const PrefixMap& prefixes, std::string_view qname);

/// Set of triples with subject, predicate and object indexes. Iteration and
/// every query result follow the lexicographic order of canonical_ntriple.
class Graph {
    struct KeyLess {
        bool operator()(const std::string* a, const std::string* b) const { return *a < *b; }
    };
    using KeySet = std::set<const std::string*, KeyLess>;
    using Store = std::map<std::string, Triple>;

public:
    class const_iterator {
    public:
        using value_type = Triple;
        using difference_type = std::ptrdiff_t;
        using reference = const Triple&;
        using pointer = const Triple*;
        using iterator_category = std::bidirectional_iterator_tag;

        const_iterator() = default;
        reference operator*() const { return it_->second; }
        pointer operator->() const { return &it_->second; }
        const_iterator& operator++() { ++it_; return *this; }
        const_iterator operator++(int) { auto c = *this; ++it_; return c; }
        const_iterator& operator--() { --it_; return *this; }
        const_iterator operator--(int) { auto c = *this; --it_; return c; }
        friend bool operator==(const const_iterator&, const const_iterator&) = default;

    private:
        friend class Graph;
        explicit const_iterator(Store::const_iterator it) : it_(it) {}
        Store::const_iterator it_;
    };

    Graph() = default;
    Graph(const Graph& other);
    Graph& operator=(const Graph& other);
    Graph(Graph&&) noexcept = default;
    Graph& operator=(Graph&&) noexcept = default;

    /// True iff the triple was absent.
    bool insert(const Triple& triple);
    /// True iff the triple was present.
    bool erase(const Triple& triple);
    bool contains(const Triple& triple) const;
    void insert_all(const Graph& other);

    std::size_t size() const noexcept { return triples_.size(); }
    bool empty() const noexcept { return triples_.empty(); }

    const_iterator begin() const { return const_iterator(triples_.begin()); }
    const_iterator end() const { return const_iterator(triples_.end()); }

    /// Triples agreeing with every bound position.
    std::vector<Triple> match(const std::optional<Term>& subject,
                              const std::optional<Iri>& predicate,
                              const std::optional<Term>& object) const;

    /// Sum of posting-list sizes for each index (subject, predicate, object).
    struct IndexCardinality {
        std::size_t subject = 0;
        std::size_t predicate = 0;
        std::size_t object = 0;
    };
    IndexCardinality index_cardinality() const;

    PrefixMap& prefixes() noexcept { return prefixes_; }
    const PrefixMap& prefixes() const noexcept { return prefixes_; }

    /// Same triple set (prefixes are not compared).
    friend bool operator==(const Graph& a, const Graph& b);

private:
    using Index = std::unordered_map<std::string, KeySet>;

    void index(const std::string* key, const Triple& triple);
    static void unindex(Index& index, const std::string& term_key, const std::string* key);

    Store triples_;
    Index by_subject_;
    Index by_predicate_;
    Index by_object_;
    PrefixMap prefixes_;
};

/// Copy of `graph` with every blank node label prefixed by `prefix`.
Graph relabel_blank_nodes(const Graph& graph, std::string_view prefix);

/// Graph holding the full triple set with the given prefix map.
Graph graph_union(const Graph& a, const Graph& b);

}  // namespace lexkg::rdf
