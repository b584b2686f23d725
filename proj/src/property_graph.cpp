#include <algorithm>
#include <set>

#include "lexkg/analytics.hpp"

namespace lexkg::analytics {

using rdf::Iri;
using rdf::Term;

namespace {

std::string node_id(const Term& t) {
    if (const auto* iri = std::get_if<Iri>(&t)) return iri->str();
    return rdf::to_ntriples(t);
}

std::string join(const std::set<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += '|';
        out += p;
    }
    return out;
}

/// Most specific asserted class; ties broken by IRI order.
std::string primary_class(const std::set<Iri>& types, const Term& node, const onto::Ontology& ontology) {
    std::vector<Iri> candidates;
    for (const auto& t : types) {
        bool more_specific_exists = false;
        for (const auto& other : types)
            if (other != t && ontology.superclass_closure(other).count(t)) more_specific_exists = true;
        if (!more_specific_exists) candidates.push_back(t);
    }
    if (!candidates.empty()) return std::string(candidates.front().local_name());
    if (const auto* iri = std::get_if<Iri>(&node))
        if (auto cls = ontology.individual_class(*iri)) return std::string(cls->local_name());
    return "";
}

}  // namespace

PropertyGraph export_property_graph(const rdf::Graph& graph, const onto::Ontology& ontology) {
    const Iri type = rdf::vocab::rdf_type();
    const Iri from_doc = rdf::make_iri(rdf::ns::fca, "fromDocument");

    struct Acc {
        Term term;
        std::set<Iri> types;
        std::set<std::string> docs;
        std::map<std::string, std::set<std::string>> attrs;
    };
    std::map<std::string, Acc> nodes;
    auto node = [&](const Term& t) -> Acc& {
        return nodes.try_emplace(node_id(t), Acc{t, {}, {}, {}}).first->second;
    };

    PropertyGraph pg;
    std::set<std::string> columns;
    for (const auto& t : graph) {
        Acc& s = node(t.subject());
        const auto spec = ontology.property_spec(t.predicate());
        if (t.predicate() == type) {
            if (const auto* cls = std::get_if<Iri>(&t.object())) s.types.insert(*cls);
        } else if (t.predicate() == from_doc) {
            if (const auto* lit = std::get_if<rdf::Literal>(&t.object())) s.docs.insert(lit->lexical());
        } else if (const auto* lit = std::get_if<rdf::Literal>(&t.object())) {
            std::string col(t.predicate().local_name());
            s.attrs[col].insert(lit->lexical());
            columns.insert(col);
        } else if (spec.property && spec.property->kind == onto::PropertyKind::object) {
            node(t.object());
            pg.edges.push_back({node_id(t.subject()), node_id(t.object()), std::string(t.predicate().local_name())});
        }
    }
    // Reserved column names cannot be attributes.
    columns.erase("id");
    columns.erase("class");
    columns.erase("doc");
    pg.attribute_columns.assign(columns.begin(), columns.end());

    for (const auto& [id, acc] : nodes) {
        NodeRow row;
        row.id = id;
        row.cls = primary_class(acc.types, acc.term, ontology);
        row.doc = join(acc.docs);
        for (const auto& [col, vals] : acc.attrs)
            if (columns.count(col)) row.attributes[col] = join(vals);
        pg.nodes.push_back(std::move(row));
    }
    std::sort(pg.edges.begin(), pg.edges.end());
    return pg;
}

std::string PropertyGraph::nodes_csv() const {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"id", "class", "doc"};
    header.insert(header.end(), attribute_columns.begin(), attribute_columns.end());
    rows.push_back(std::move(header));
    for (const auto& n : nodes) {
        std::vector<std::string> r{n.id, n.cls, n.doc};
        for (const auto& col : attribute_columns) {
            auto it = n.attributes.find(col);
            r.push_back(it == n.attributes.end() ? "" : it->second);
        }
        rows.push_back(std::move(r));
    }
    return csv_rows(rows);
}

std::string PropertyGraph::edges_csv() const {
    std::vector<std::vector<std::string>> rows{{"src", "dst", "relation"}};
    for (const auto& e : edges) rows.push_back({e.src, e.dst, e.relation});
    return csv_rows(rows);
}

}  // namespace lexkg::analytics
