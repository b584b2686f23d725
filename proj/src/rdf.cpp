#include "lexkg/rdf.hpp"

#include <algorithm>
#include <cctype>

namespace lexkg::rdf {

namespace {

bool forbidden_iri_char(unsigned char c) {
    if (c <= 0x20) return true;
    switch (c) {
        case '<': case '>': case '"': case '{': case '}':
        case '|': case '^': case '`': case '\\':
            return true;
        default:
            return false;
    }
}

bool is_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

std::string term_key(const Term& t) { return to_ntriples(t); }

}  // namespace

// ---------------------------------------------------------------------------
// Iri

Iri::Iri(std::string value) : value_(std::move(value)) {
    if (!is_valid(value_)) throw InvalidIri(value_);
}

bool Iri::is_valid(std::string_view text) noexcept {
    if (text.empty() || !is_alpha(static_cast<unsigned char>(text[0]))) return false;
    std::size_t colon = std::string_view::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (forbidden_iri_char(c)) return false;
        if (colon == std::string_view::npos) {
            if (c == ':') {
                colon = i;
            } else if (!is_alpha(c) && !is_digit(c) && c != '+' && c != '-' && c != '.') {
                return false;
            }
        }
    }
    return colon != std::string_view::npos;
}

std::string_view Iri::local_name() const noexcept {
    const auto pos = value_.find_last_of("#/:");
    std::string_view v = value_;
    return pos == std::string::npos ? v : v.substr(pos + 1);
}

Iri make_iri(std::string_view ns, std::string_view local) {
    std::string s(ns);
    s.append(local);
    return Iri(std::move(s));
}

namespace vocab {
Iri rdf_type() { return make_iri(ns::rdf, "type"); }
Iri rdf_first() { return make_iri(ns::rdf, "first"); }
Iri rdf_rest() { return make_iri(ns::rdf, "rest"); }
Iri rdf_nil() { return make_iri(ns::rdf, "nil"); }
Iri rdf_lang_string() { return make_iri(ns::rdf, "langString"); }
Iri xsd_string() { return make_iri(ns::xsd, "string"); }
Iri xsd_integer() { return make_iri(ns::xsd, "integer"); }
Iri xsd_decimal() { return make_iri(ns::xsd, "decimal"); }
Iri xsd_double() { return make_iri(ns::xsd, "double"); }
Iri xsd_boolean() { return make_iri(ns::xsd, "boolean"); }
}  // namespace vocab

// ---------------------------------------------------------------------------
// BlankNode / Literal

BlankNode::BlankNode(std::string label) : label_(std::move(label)) {
    if (!is_valid_label(label_)) throw InvalidTerm("invalid blank node label '" + label_ + "'");
}

bool BlankNode::is_valid_label(std::string_view label) noexcept {
    if (label.empty()) return false;
    return std::all_of(label.begin(), label.end(), [](char ch) {
        const auto c = static_cast<unsigned char>(ch);
        return is_alpha(c) || is_digit(c) || c == '_';
    });
}

Literal::Literal(std::string lexical) : Literal(std::move(lexical), vocab::xsd_string()) {}

Literal::Literal(std::string lexical, Iri datatype)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)) {
    if (datatype_ == vocab::rdf_lang_string())
        throw InvalidTerm("rdf:langString literal requires a language tag");
}

Literal::Literal(std::string lexical, Iri datatype, std::optional<std::string> language)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)), language_(std::move(language)) {}

Literal Literal::with_language(std::string lexical, std::string language) {
    if (!is_valid_language(language))
        throw InvalidTerm("invalid language tag '" + language + "'");
    std::transform(language.begin(), language.end(), language.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return Literal(std::move(lexical), vocab::rdf_lang_string(), std::move(language));
}

bool Literal::is_valid_language(std::string_view tag) noexcept {
    // [a-zA-Z]+ ('-' [a-zA-Z0-9]+)*
    if (tag.empty()) return false;
    std::size_t i = 0;
    while (i < tag.size() && is_alpha(static_cast<unsigned char>(tag[i]))) ++i;
    if (i == 0) return false;
    while (i < tag.size()) {
        if (tag[i] != '-') return false;
        ++i;
        const std::size_t start = i;
        while (i < tag.size() && (is_alpha(static_cast<unsigned char>(tag[i])) ||
                                  is_digit(static_cast<unsigned char>(tag[i]))))
            ++i;
        if (i == start) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// N-Triples rendering

std::string escape_string(std::string_view text) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(text.size() + 2);
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20 || c == 0x7f) {
                    out += "\\u00";
                    out += hex[c >> 4];
                    out += hex[c & 0xf];
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

std::string to_ntriples(const Term& term) {
    struct Visitor {
        std::string operator()(const Iri& iri) const { return "<" + iri.str() + ">"; }
        std::string operator()(const BlankNode& b) const { return "_:" + b.label(); }
        std::string operator()(const Literal& lit) const {
            std::string out = "\"" + escape_string(lit.lexical()) + "\"";
            if (lit.language()) {
                out += "@" + *lit.language();
            } else if (lit.datatype() != vocab::xsd_string()) {
                out += "^^<" + lit.datatype().str() + ">";
            }
            return out;
        }
    };
    return std::visit(Visitor{}, term);
}

Triple::Triple(Term subject, Iri predicate, Term object)
    : subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {
    if (is_literal(subject_)) throw InvalidTerm("literal in subject position");
}

std::string canonical_ntriple(const Triple& triple) {
    std::string out = to_ntriples(triple.subject());
    out += ' ';
    out += to_ntriples(triple.predicate());
    out += ' ';
    out += to_ntriples(triple.object());
    out += " .";
    return out;
}

// ---------------------------------------------------------------------------
// Prefixes

void PrefixMap::set(std::string label, Iri ns) { entries_.insert_or_assign(std::move(label), std::move(ns)); }

std::optional<Iri> PrefixMap::find(std::string_view label) const {
    auto it = entries_.find(label);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

namespace {
bool plain_local_name(std::string_view local) {
    if (local.empty()) return true;
    auto ok_first = [](unsigned char c) { return is_alpha(c) || is_digit(c) || c == '_'; };
    if (!ok_first(static_cast<unsigned char>(local[0]))) return false;
    return std::all_of(local.begin() + 1, local.end(), [&](char ch) {
        const auto c = static_cast<unsigned char>(ch);
        return ok_first(c) || c == '-';
    });
}
}  // namespace

std::optional<std::string> PrefixMap::compact(const Iri& iri) const {
    const std::string* best_label = nullptr;
    std::size_t best_len = 0;
    for (const auto& [label, ns] : entries_) {
        const auto& n = ns.str();
        if (n.size() >= best_len && iri.str().size() >= n.size() &&
            iri.str().compare(0, n.size(), n) == 0 &&
            plain_local_name(std::string_view(iri.str()).substr(n.size()))) {
            if (best_label && n.size() == best_len && label > *best_label) continue;
            best_label = &label;
            best_len = n.size();
        }
    }
    if (!best_label) return std::nullopt;
    return *best_label + ":" + iri.str().substr(best_len);
}

Iri expand_qname(const PrefixMap& prefixes, std::string_view qname) {
    const auto colon = qname.find(':');
    if (colon == std::string_view::npos)
        throw InvalidTerm("'" + std::string(qname) + "' is not a prefixed name");
    const auto label = qname.substr(0, colon);
    auto ns = prefixes.find(label);
    if (!ns) throw UnknownPrefix(std::string(label));
    return make_iri(ns->str(), qname.substr(colon + 1));
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(const Graph& other) : prefixes_(other.prefixes_) {
    for (const auto& t : other) insert(t);
}

Graph& Graph::operator=(const Graph& other) {
    if (this != &other) {
        Graph copy(other);
        *this = std::move(copy);
    }
    return *this;
}

void Graph::index(const std::string* key, const Triple& triple) {
    by_subject_[term_key(triple.subject())].insert(key);
    by_predicate_[term_key(triple.predicate())].insert(key);
    by_object_[term_key(triple.object())].insert(key);
}

void Graph::unindex(Index& index, const std::string& term, const std::string* key) {
    auto it = index.find(term);
    if (it == index.end()) return;
    it->second.erase(key);
    if (it->second.empty()) index.erase(it);
}

bool Graph::insert(const Triple& triple) {
    auto [it, inserted] = triples_.try_emplace(canonical_ntriple(triple), triple);
    if (inserted) index(&it->first, it->second);
    return inserted;
}

bool Graph::erase(const Triple& triple) {
    auto it = triples_.find(canonical_ntriple(triple));
    if (it == triples_.end()) return false;
    const std::string* key = &it->first;
    unindex(by_subject_, term_key(triple.subject()), key);
    unindex(by_predicate_, term_key(triple.predicate()), key);
    unindex(by_object_, term_key(triple.object()), key);
    triples_.erase(it);
    return true;
}

bool Graph::contains(const Triple& triple) const {
    return triples_.find(canonical_ntriple(triple)) != triples_.end();
}

void Graph::insert_all(const Graph& other) {
    for (const auto& t : other) insert(t);
}

std::vector<Triple> Graph::match(const std::optional<Term>& subject,
                                 const std::optional<Iri>& predicate,
                                 const std::optional<Term>& object) const {
    std::vector<Triple> out;
    const KeySet* candidates = nullptr;
    auto narrow = [&](const Index& index, const std::string& key) -> bool {
        auto it = index.find(key);
        if (it == index.end()) return false;
        if (!candidates || it->second.size() < candidates->size()) candidates = &it->second;
        return true;
    };
    if (subject && !narrow(by_subject_, term_key(*subject))) return out;
    if (predicate && !narrow(by_predicate_, term_key(*predicate))) return out;
    if (object && !narrow(by_object_, term_key(*object))) return out;

    auto agrees = [&](const Triple& t) {
        return (!subject || t.subject() == *subject) &&
               (!predicate || t.predicate() == *predicate) &&
               (!object || t.object() == *object);
    };
    if (!candidates) {
        out.reserve(triples_.size());
        for (const auto& [key, t] : triples_) out.push_back(t);
        return out;
    }
    for (const std::string* key : *candidates) {
        const Triple& t = triples_.find(*key)->second;
        if (agrees(t)) out.push_back(t);
    }
    return out;
}

Graph::IndexCardinality Graph::index_cardinality() const {
    IndexCardinality c;
    for (const auto& [k, v] : by_subject_) c.subject += v.size();
    for (const auto& [k, v] : by_predicate_) c.predicate += v.size();
    for (const auto& [k, v] : by_object_) c.object += v.size();
    return c;
}

bool operator==(const Graph& a, const Graph& b) {
    if (a.triples_.size() != b.triples_.size()) return false;
    return std::equal(a.triples_.begin(), a.triples_.end(), b.triples_.begin(),
                      [](const auto& x, const auto& y) { return x.first == y.first; });
}

Graph relabel_blank_nodes(const Graph& graph, std::string_view prefix) {
    auto relabel = [&](const Term& t) -> Term {
        if (const auto* b = std::get_if<BlankNode>(&t))
            return BlankNode(std::string(prefix) + b->label());
        return t;
    };
    Graph out;
    out.prefixes() = graph.prefixes();
    for (const auto& t : graph) out.insert(Triple(relabel(t.subject()), t.predicate(), relabel(t.object())));
    return out;
}

Graph graph_union(const Graph& a, const Graph& b) {
    Graph out(a);
    for (const auto& [label, ns] : b.prefixes().entries())
        if (!out.prefixes().find(label)) out.prefixes().set(label, ns);
    out.insert_all(b);
    return out;
}

}  // namespace lexkg::rdf
