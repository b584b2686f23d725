#include <algorithm>
#include <set>

#include "lexkg/analytics.hpp"
#include "lexkg/errors.hpp"
#include "lexkg/turtle.hpp"

namespace lexkg::analytics {

using rdf::Iri;
using rdf::Term;

bool is_valid_variable_name(std::string_view name) noexcept {
    if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
    return std::all_of(name.begin(), name.end(),
                       [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; });
}

void TriplePattern::check() const {
    for (const PatternTerm* t : {&subject, &predicate, &object})
        if (const auto* v = std::get_if<Variable>(t); v && !is_valid_variable_name(v->name))
            throw QueryError("invalid variable name '?" + v->name + "'");
    if (const auto* s = std::get_if<Term>(&subject); s && rdf::is_literal(*s))
        throw QueryError("a literal cannot be a subject");
    if (const auto* p = std::get_if<Term>(&predicate); p && !rdf::is_iri(*p))
        throw QueryError("a predicate must be an IRI or a variable");
}

std::vector<std::string> TriplePattern::variables() const {
    std::vector<std::string> out;
    for (const PatternTerm* t : {&subject, &predicate, &object})
        if (const auto* v = std::get_if<Variable>(t))
            if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
    return out;
}

namespace {

/// Constant value of a position under `b`, or nullopt when it is a free variable.
std::optional<Term> resolve(const PatternTerm& t, const Binding& b) {
    if (const auto* c = std::get_if<Term>(&t)) return *c;
    const auto it = b.find(std::get<Variable>(t).name);
    if (it == b.end()) return std::nullopt;
    return it->second;
}

/// Binds `t` to `value`; false on conflict (same variable twice in a pattern).
bool bind_var(const PatternTerm& t, const Term& value, Binding& b) {
    const auto* v = std::get_if<Variable>(&t);
    if (!v) return true;
    auto [it, inserted] = b.emplace(v->name, value);
    return inserted || it->second == value;
}

std::vector<std::string> sort_key(const Binding& b) {
    std::vector<std::string> key;
    key.reserve(b.size());
    for (const auto& [name, value] : b) key.push_back(rdf::to_ntriples(value));
    return key;
}

}  // namespace

std::vector<Binding> bgp_match(const rdf::Graph& graph, const std::vector<TriplePattern>& patterns) {
    if (patterns.empty()) throw QueryError("query has no patterns");
    for (const auto& p : patterns) p.check();

    std::vector<Binding> partial{Binding{}};
    for (const auto& p : patterns) {
        std::vector<Binding> next;
        for (const auto& b : partial) {
            const auto s = resolve(p.subject, b);
            const auto pr = resolve(p.predicate, b);
            const auto o = resolve(p.object, b);
            if (s && rdf::is_literal(*s)) continue;
            std::optional<Iri> pred;
            if (pr) {
                if (!rdf::is_iri(*pr)) continue;
                pred = std::get<Iri>(*pr);
            }
            for (const auto& t : graph.match(s, pred, o)) {
                Binding ext = b;
                if (bind_var(p.subject, t.subject(), ext) && bind_var(p.predicate, Term(t.predicate()), ext) &&
                    bind_var(p.object, t.object(), ext))
                    next.push_back(std::move(ext));
            }
        }
        partial = std::move(next);
        if (partial.empty()) break;
    }

    std::vector<std::pair<std::vector<std::string>, Binding>> keyed;
    keyed.reserve(partial.size());
    for (auto& b : partial) keyed.emplace_back(sort_key(b), std::move(b));
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first == y.first; }),
                keyed.end());
    std::vector<Binding> out;
    out.reserve(keyed.size());
    for (auto& [k, b] : keyed) out.push_back(std::move(b));
    return out;
}

std::vector<TriplePattern> parse_patterns(std::string_view text, const rdf::PrefixMap& predeclared) {
    turtle::ParseOptions opts;
    opts.allow_variables = true;
    opts.initial_prefixes = predeclared;
    const auto doc = turtle::parse_turtle(text, opts);

    auto convert = [](const Term& t) -> PatternTerm {
        if (const auto* iri = std::get_if<Iri>(&t)) {
            std::string_view s = iri->str();
            if (s.substr(0, turtle::variable_iri_prefix.size()) == turtle::variable_iri_prefix)
                return Variable{std::string(s.substr(turtle::variable_iri_prefix.size()))};
        }
        if (rdf::is_blank(t)) throw QueryError("blank nodes are not supported in query patterns; use a variable");
        return t;
    };
    std::vector<TriplePattern> out;
    for (const auto& t : doc.statements) {
        TriplePattern p{convert(t.subject()), convert(Term(t.predicate())), convert(t.object())};
        p.check();
        out.push_back(std::move(p));
    }
    if (out.empty()) throw QueryError("query has no patterns");
    return out;
}

std::string format_bindings(const std::vector<Binding>& bindings, const rdf::PrefixMap& prefixes) {
    if (bindings.empty()) return "";
    auto render = [&](const Term& t) {
        if (const auto* iri = std::get_if<Iri>(&t))
            if (auto q = prefixes.compact(*iri)) return *q;
        return rdf::to_ntriples(t);
    };
    std::string out;
    bool first = true;
    for (const auto& [name, v] : bindings.front()) {
        out += first ? "" : "\t";
        out += "?" + name;
        first = false;
    }
    out += '\n';
    for (const auto& b : bindings) {
        first = true;
        for (const auto& [name, v] : b) {
            out += first ? "" : "\t";
            out += render(v);
            first = false;
        }
        out += '\n';
    }
    return out;
}

std::vector<TriplePattern> default_decision_path() {
    auto fca = [](std::string_view local) { return PatternTerm(Term(rdf::make_iri(rdf::ns::fca, local))); };
    auto var = [](std::string name) { return PatternTerm(Variable{std::move(name)}); };
    return {
        {var("case"), fca("hasAppeal"), var("appeal")},
        {var("appeal"), fca("hasDecision"), var("group")},
        {var("case"), fca("hasConviction"), var("conviction")},
        {var("conviction"), fca("imposedPunishment"), var("node")},
    };
}

}  // namespace lexkg::analytics
