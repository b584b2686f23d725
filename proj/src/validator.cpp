#include "lexkg/validator.hpp"

#include <algorithm>
#include <tuple>

#include "json.hpp"

namespace lexkg::validation {

using onto::PropertyKind;
using onto::PropertySpec;
using rdf::Iri;
using rdf::Term;
using rdf::Triple;

std::string_view to_string(Rule rule) noexcept {
    switch (rule) {
        case Rule::UnknownPredicate: return "UnknownPredicate";
        case Rule::BadLiteral: return "BadLiteral";
        case Rule::DomainMismatch: return "DomainMismatch";
        case Rule::RangeMismatch: return "RangeMismatch";
        case Rule::UntypedSubject: return "UntypedSubject";
    }
    return "?";
}

std::string_view to_string(Severity severity) noexcept {
    return severity == Severity::error ? "error" : "warning";
}

std::string_view to_string(Mode mode) noexcept { return mode == Mode::strict ? "strict" : "lenient"; }

namespace {

using ClassCounts = std::map<Iri, std::size_t>;

/// Type evidence for every node of a graph.
struct TypeEvidence {
    std::map<std::string, std::set<Iri>> asserted;  // rdf:type + ontology individuals
    std::map<std::string, ClassCounts> implied;     // via property domains/ranges

    static void add_classes(ClassCounts& counts, const std::set<Iri>& classes) {
        for (const auto& c : classes)
            if (!onto::Ontology::is_top_class(c)) ++counts[c];
    }

    /// Classes implied for `node` by triple `t` alone.
    static ClassCounts contribution(const Triple& t, const std::string& node, const onto::Ontology& o) {
        ClassCounts out;
        const PropertySpec spec = o.property_spec(t.predicate());
        if (spec.status != PropertySpec::Status::declared) return out;
        const auto& p = *spec.property;
        if (rdf::to_ntriples(t.subject()) == node) add_classes(out, p.domains);
        if (p.kind == PropertyKind::object && !rdf::is_literal(t.object()) && rdf::to_ntriples(t.object()) == node)
            add_classes(out, p.ranges);
        return out;
    }

    TypeEvidence(const rdf::Graph& g, const onto::Ontology& o) {
        const Iri type = rdf::vocab::rdf_type();
        for (const auto& t : g) {
            const std::string s = rdf::to_ntriples(t.subject());
            if (const auto* iri = std::get_if<Iri>(&t.subject()))
                if (auto cls = o.individual_class(*iri)) asserted[s].insert(*cls);
            if (!rdf::is_literal(t.object())) {
                if (const auto* iri = std::get_if<Iri>(&t.object()))
                    if (auto cls = o.individual_class(*iri)) asserted[rdf::to_ntriples(t.object())].insert(*cls);
            }
            if (t.predicate() == type) {
                if (const auto* cls = std::get_if<Iri>(&t.object())) asserted[s].insert(*cls);
                continue;
            }
            const PropertySpec spec = o.property_spec(t.predicate());
            if (spec.status != PropertySpec::Status::declared) continue;
            add_classes(implied[s], spec.property->domains);
            if (spec.property->kind == PropertyKind::object && !rdf::is_literal(t.object()))
                add_classes(implied[rdf::to_ntriples(t.object())], spec.property->ranges);
        }
    }

    bool has_asserted(const std::string& node) const {
        auto it = asserted.find(node);
        return it != asserted.end() && !it->second.empty();
    }

    /// Asserted classes plus classes implied by triples other than `t`.
    std::set<Iri> for_check(const std::string& node, const Triple& t, const onto::Ontology& o) const {
        std::set<Iri> out;
        if (auto it = asserted.find(node); it != asserted.end()) out = it->second;
        if (auto it = implied.find(node); it != implied.end()) {
            const ClassCounts own = contribution(t, node, o);
            for (const auto& [cls, n] : it->second) {
                auto own_it = own.find(cls);
                const std::size_t mine = own_it == own.end() ? 0 : own_it->second;
                if (n > mine) out.insert(cls);
            }
        }
        return out;
    }
};

/// Known classes among `types` related to no declared class by subsumption in
/// either direction (siblings under a common parent do not fit each other).
/// Empty when `declared` admits everything.
std::vector<Iri> disjoint_types(const std::set<Iri>& types, const std::set<Iri>& declared,
                                const onto::Ontology& o) {
    std::vector<Iri> out;
    if (declared.empty()) return out;
    for (const auto& d : declared)
        if (onto::Ontology::is_top_class(d)) return out;
    for (const auto& t : types) {
        if (!o.has_class(t) || onto::Ontology::is_top_class(t)) continue;
        const bool related = std::any_of(declared.begin(), declared.end(), [&](const Iri& d) {
            return o.superclass_closure(t).count(d) != 0 || o.superclass_closure(d).count(t) != 0;
        });
        if (!related) out.push_back(t);
    }
    return out;
}

std::string join_compact(const std::vector<Iri>& v, const onto::Ontology& o) {
    std::string out;
    for (const auto& i : v) {
        if (!out.empty()) out += ", ";
        out += o.compact(i);
    }
    return out;
}

std::string join_compact(const std::set<Iri>& s, const onto::Ontology& o) {
    return join_compact(std::vector<Iri>(s.begin(), s.end()), o);
}

const std::set<std::string>& numeric_family() {
    static const std::set<std::string> f = {std::string(rdf::ns::xsd) + "integer",
                                            std::string(rdf::ns::xsd) + "nonNegativeInteger",
                                            std::string(rdf::ns::xsd) + "decimal"};
    return f;
}

enum class LiteralFit { ok, bad_lexical, wrong_type };

struct LiteralVerdict {
    LiteralFit fit = LiteralFit::ok;
    std::optional<LiteralIssue> issue;
};

LiteralVerdict check_against_range(const rdf::Literal& lit, const Iri& range) {
    const Iri xsd_string = rdf::vocab::xsd_string();
    if (lit.language()) {
        if (range == xsd_string || range == rdf::vocab::rdf_lang_string()) return {};
        return {LiteralFit::wrong_type, std::nullopt};
    }
    const Iri& dt = lit.datatype();
    const bool compatible = dt == range || dt == xsd_string ||
                            (numeric_family().count(dt.str()) && numeric_family().count(range.str()));
    if (!compatible) return {LiteralFit::wrong_type, std::nullopt};
    if (dt != range && dt != xsd_string) {
        if (auto issue = validate_literal(lit.lexical(), dt)) return {LiteralFit::bad_lexical, issue};
    }
    if (auto issue = validate_literal(lit.lexical(), range)) return {LiteralFit::bad_lexical, issue};
    return {};
}

}  // namespace

std::map<std::string, std::set<Iri>> infer_types(const rdf::Graph& graph, const onto::Ontology& ontology,
                                                 Mode mode) {
    const TypeEvidence ev(graph, ontology);
    std::map<std::string, std::set<Iri>> raw = ev.asserted;
    if (mode == Mode::lenient)
        for (const auto& [node, counts] : ev.implied)
            for (const auto& [cls, n] : counts) raw[node].insert(cls);
    std::map<std::string, std::set<Iri>> out;
    for (const auto& [node, classes] : raw) {
        std::set<Iri> closed;
        for (const auto& c : classes) {
            const auto& cl = ontology.superclass_closure(c);
            closed.insert(cl.begin(), cl.end());
        }
        if (!closed.empty()) out.emplace(node, std::move(closed));
    }
    return out;
}

ValidationReport validate_graph(const rdf::Graph& graph, const onto::Ontology& o, Mode mode) {
    ValidationReport report;
    report.mode = mode;
    report.checked_triples = graph.size();
    const TypeEvidence ev(graph, o);

    for (const auto& t : graph) {
        auto add = [&](Rule rule, Severity sev, std::string message) {
            report.violations.push_back(Violation{rule, t, sev, std::move(message)});
        };
        const std::string pname = o.compact(t.predicate());
        const PropertySpec spec = o.property_spec(t.predicate());
        if (!spec.known()) {
            add(Rule::UnknownPredicate, Severity::error,
                "predicate <" + t.predicate().str() + "> is neither declared in the ontology nor whitelisted");
            continue;
        }
        if (spec.status == PropertySpec::Status::external) continue;

        const auto& prop = *spec.property;
        const std::string s = rdf::to_ntriples(t.subject());

        if (mode == Mode::strict && !ev.has_asserted(s))
            add(Rule::UntypedSubject, Severity::error, "subject " + s + " of " + pname + " has no rdf:type");

        const auto bad_domain = disjoint_types(ev.for_check(s, t, o), prop.domains, o);
        if (!bad_domain.empty())
            add(Rule::DomainMismatch, Severity::error,
                "subject " + s + " has type " + join_compact(bad_domain, o) + ", disjoint from the domain " +
                    join_compact(prop.domains, o) + " of " + pname);

        if (prop.kind == PropertyKind::datatype) {
            const auto* lit = std::get_if<rdf::Literal>(&t.object());
            if (!lit) {
                add(Rule::RangeMismatch, Severity::error,
                    "object " + rdf::to_ntriples(t.object()) + " of datatype property " + pname +
                        " must be a literal of type " + join_compact(prop.ranges, o));
                continue;
            }
            if (prop.ranges.empty()) continue;
            std::optional<LiteralVerdict> first_failure;
            bool fits = false;
            for (const auto& range : prop.ranges) {
                LiteralVerdict v = check_against_range(*lit, range);
                if (v.fit == LiteralFit::ok) {
                    fits = true;
                    break;
                }
                if (!first_failure) first_failure = std::move(v);
            }
            if (fits || !first_failure) continue;
            if (first_failure->fit == LiteralFit::wrong_type) {
                add(Rule::RangeMismatch, Severity::error,
                    "literal " + rdf::to_ntriples(t.object()) + " does not match the range " +
                        join_compact(prop.ranges, o) + " of " + pname);
            } else {
                add(Rule::BadLiteral, first_failure->issue->severity,
                    first_failure->issue->message + " for " + pname);
            }
            continue;
        }

        // Object property.
        if (rdf::is_literal(t.object())) {
            add(Rule::RangeMismatch, Severity::error,
                "literal " + rdf::to_ntriples(t.object()) + " used as object of object property " + pname +
                    "; expected a node of type " + join_compact(prop.ranges, o));
            continue;
        }
        const std::string obj = rdf::to_ntriples(t.object());
        const auto bad_range = disjoint_types(ev.for_check(obj, t, o), prop.ranges, o);
        if (!bad_range.empty())
            add(Rule::RangeMismatch, Severity::error,
                "object " + obj + " has type " + join_compact(bad_range, o) + ", disjoint from the range " +
                    join_compact(prop.ranges, o) + " of " + pname);
    }

    // Graph iteration is already canonical; order by rule within a triple.
    std::stable_sort(report.violations.begin(), report.violations.end(), [](const Violation& a, const Violation& b) {
        const std::string ka = rdf::canonical_ntriple(a.triple);
        const std::string kb = rdf::canonical_ntriple(b.triple);
        return std::tie(ka, a.rule) < std::tie(kb, b.rule);
    });
    return report;
}

std::size_t ValidationReport::error_count() const {
    return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                  [](const Violation& v) { return v.severity == Severity::error; }));
}

std::size_t ValidationReport::warning_count() const { return violations.size() - error_count(); }

std::string ValidationReport::to_text() const {
    std::string out;
    for (const auto& v : violations) {
        std::string triple = rdf::canonical_ntriple(v.triple);
        triple.resize(triple.size() - 2);  // drop " ."
        out += to_string(v.rule);
        if (v.severity == Severity::warning) out += " (warning)";
        out += " at " + triple + ": " + v.message + "\n";
    }
    return out;
}

std::string ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["mode"] = to_string(mode);
    j["checked_triples"] = checked_triples;
    j["errors"] = error_count();
    j["warnings"] = warning_count();
    j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : violations) {
        nlohmann::ordered_json e;
        e["rule"] = to_string(v.rule);
        e["severity"] = to_string(v.severity);
        e["subject"] = rdf::to_ntriples(v.triple.subject());
        e["predicate"] = rdf::to_ntriples(v.triple.predicate());
        e["object"] = rdf::to_ntriples(v.triple.object());
        e["message"] = v.message;
        j["violations"].push_back(std::move(e));
    }
    return j.dump(2);
}

}  // namespace lexkg::validation
