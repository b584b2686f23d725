#include <algorithm>
#include <vector>

#include "lexkg/turtle.hpp"

namespace lexkg::turtle {

namespace {

using rdf::Term;

std::string render_iri(const rdf::Iri& iri, const rdf::PrefixMap& prefixes) {
    if (auto q = prefixes.compact(iri)) return *q;
    return "<" + iri.str() + ">";
}

std::string render(const Term& term, const rdf::PrefixMap& prefixes) {
    if (const auto* iri = std::get_if<rdf::Iri>(&term)) return render_iri(*iri, prefixes);
    if (const auto* b = std::get_if<rdf::BlankNode>(&term)) return "_:" + b->label();
    const auto& lit = std::get<rdf::Literal>(term);
    std::string out = "\"" + rdf::escape_string(lit.lexical()) + "\"";
    if (lit.language())
        out += "@" + *lit.language();
    else if (lit.datatype() != rdf::vocab::xsd_string())
        out += "^^" + render_iri(lit.datatype(), prefixes);
    return out;
}

}  // namespace

std::string serialize_turtle(const TurtleDocument& doc) {
    const auto& prefixes = doc.prefixes;
    std::string out;
    for (const auto& [label, ns] : prefixes.entries())
        out += "@prefix " + label + ": <" + ns.str() + "> .\n";
    if (doc.graph.empty()) return out;
    if (!out.empty()) out += "\n";

    const rdf::Iri type = rdf::vocab::rdf_type();
    auto it = doc.graph.begin();
    while (it != doc.graph.end()) {
        const Term subject = it->subject();
        out += render(subject, prefixes);
        bool first_predicate = true;
        while (it != doc.graph.end() && it->subject() == subject) {
            const rdf::Iri predicate = it->predicate();
            out += first_predicate ? " " : " ;\n    ";
            first_predicate = false;
            out += predicate == type ? std::string("a") : render_iri(predicate, prefixes);
            bool first_object = true;
            while (it != doc.graph.end() && it->subject() == subject && it->predicate() == predicate) {
                out += first_object ? " " : ", ";
                first_object = false;
                out += render(it->object(), prefixes);
                ++it;
            }
        }
        out += " .\n";
    }
    return out;
}

std::string serialize_turtle(const rdf::Graph& graph) {
    TurtleDocument doc{graph, graph.prefixes(), std::nullopt, {}};
    return serialize_turtle(doc);
}

std::string serialize_ntriples(const rdf::Graph& graph) {
    std::vector<std::string> lines;
    lines.reserve(graph.size());
    for (const auto& t : graph) lines.push_back(rdf::canonical_ntriple(t));
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

}  // namespace lexkg::turtle
