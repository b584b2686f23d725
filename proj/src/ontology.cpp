#include "lexkg/ontology.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "lexkg/turtle.hpp"

namespace lexkg::onto {

using rdf::make_iri;
namespace ns = rdf::ns;

std::string_view to_string(PropertyKind kind) noexcept {
    return kind == PropertyKind::object ? "object" : "datatype";
}

namespace {

bool is_xsd(const Iri& iri) { return iri.str().rfind(ns::xsd, 0) == 0; }

std::optional<std::string> literal_value(const rdf::Graph& g, const rdf::Term& s, const Iri& p) {
    for (const auto& t : g.match(s, p, std::nullopt))
        if (const auto* lit = std::get_if<rdf::Literal>(&t.object())) return lit->lexical();
    return std::nullopt;
}

std::set<Iri> iri_objects(const rdf::Graph& g, const rdf::Term& s, const Iri& p) {
    std::set<Iri> out;
    for (const auto& t : g.match(s, p, std::nullopt))
        if (const auto* iri = std::get_if<Iri>(&t.object())) out.insert(*iri);
    return out;
}

}  // namespace

Iri allows_predicate_iri() { return make_iri(ns::fca, "allowsPredicate"); }

bool Ontology::is_top_class(const Iri& iri) {
    return iri.str() == std::string(ns::owl) + "Thing" || iri.str() == std::string(ns::rdfs) + "Resource";
}

bool Ontology::is_subclass(const Iri& sub, const Iri& super) const {
    if (!is_top_class(super) && !has_class(super)) throw UnknownClass(super.str());
    if (!has_class(sub)) throw UnknownClass(sub.str());
    if (is_top_class(super)) return true;
    return superclass_closure(sub).count(super) != 0;
}

const std::set<Iri>& Ontology::superclass_closure(const Iri& iri) const {
    auto it = closure_.find(iri);
    if (it != closure_.end()) return it->second;
    // Unknown IRIs are their own closure; cache them so the reference stays valid.
    static thread_local std::map<Iri, std::set<Iri>> singletons;
    auto [s, inserted] = singletons.try_emplace(iri, std::set<Iri>{iri});
    return s->second;
}

PropertySpec Ontology::property_spec(const Iri& iri) const {
    if (auto it = properties_.find(iri); it != properties_.end())
        return {PropertySpec::Status::declared, &it->second};
    if (externals_.count(iri)) return {PropertySpec::Status::external, nullptr};
    return {};
}

std::optional<Iri> Ontology::individual_class(const Iri& iri) const {
    auto it = individuals_.find(iri);
    if (it == individuals_.end()) return std::nullopt;
    return it->second;
}

std::string Ontology::compact(const Iri& iri) const {
    if (auto q = prefixes_.compact(iri)) return *q;
    return "<" + iri.str() + ">";
}

Ontology load_ontology(std::string_view turtle_text) {
    auto doc = turtle::parse_turtle(turtle_text);
    const rdf::Graph& g = doc.graph;

    const Iri type = rdf::vocab::rdf_type();
    const Iri rdfs_class = make_iri(ns::rdfs, "Class");
    const Iri owl_class = make_iri(ns::owl, "Class");
    const Iri rdf_property = make_iri(ns::rdf, "Property");
    const Iri owl_object = make_iri(ns::owl, "ObjectProperty");
    const Iri owl_datatype = make_iri(ns::owl, "DatatypeProperty");
    const Iri owl_ontology = make_iri(ns::owl, "Ontology");
    const Iri owl_named = make_iri(ns::owl, "NamedIndividual");
    const Iri sub_class_of = make_iri(ns::rdfs, "subClassOf");
    const Iri domain = make_iri(ns::rdfs, "domain");
    const Iri range = make_iri(ns::rdfs, "range");
    const Iri label = make_iri(ns::rdfs, "label");
    const Iri comment = make_iri(ns::rdfs, "comment");
    const Iri allows = allows_predicate_iri();

    Ontology o;
    o.source_ = std::string(turtle_text);
    o.prefixes_ = doc.prefixes;
    o.externals_.insert(type);

    auto label_of = [&](const Iri& iri) {
        if (auto l = literal_value(g, iri, label)) return *l;
        return std::string(iri.local_name());
    };

    // Classes.
    for (const Iri& cls_type : {rdfs_class, owl_class}) {
        for (const auto& t : g.match(std::nullopt, type, rdf::Term(cls_type))) {
            const auto* iri = std::get_if<Iri>(&t.subject());
            if (!iri) {
                o.warnings_.push_back("ignored anonymous class declaration");
                continue;
            }
            if (o.classes_.count(*iri)) continue;
            OntClass c{*iri, label_of(*iri), iri_objects(g, *iri, sub_class_of), literal_value(g, *iri, comment)};
            o.classes_.emplace(*iri, std::move(c));
        }
    }
    for (const auto& t : g.match(std::nullopt, sub_class_of, std::nullopt)) {
        const auto* iri = std::get_if<Iri>(&t.subject());
        if (!iri || !o.classes_.count(*iri))
            o.warnings_.push_back("subClassOf on undeclared class " + rdf::to_ntriples(t.subject()));
    }
    for (const auto& [iri, c] : o.classes_)
        for (const auto& super : c.superclasses)
            if (!o.classes_.count(super) && !Ontology::is_top_class(super))
                o.warnings_.push_back("superclass <" + super.str() + "> of <" + iri.str() + "> is not declared");

    // Properties.
    for (const Iri& prop_type : {owl_object, owl_datatype, rdf_property}) {
        for (const auto& t : g.match(std::nullopt, type, rdf::Term(prop_type))) {
            const auto* iri = std::get_if<Iri>(&t.subject());
            if (!iri || o.properties_.count(*iri)) continue;
            OntProperty p{*iri, PropertyKind::object, {}, {}, {}, std::nullopt};
            p.domains = iri_objects(g, *iri, domain);
            p.ranges = iri_objects(g, *iri, range);
            p.label = label_of(*iri);
            p.comment = literal_value(g, *iri, comment);
            if (prop_type == owl_datatype) {
                p.kind = PropertyKind::datatype;
            } else if (prop_type == owl_object) {
                p.kind = PropertyKind::object;
            } else {
                const bool all_xsd = !p.ranges.empty() &&
                                     std::all_of(p.ranges.begin(), p.ranges.end(), is_xsd);
                p.kind = all_xsd ? PropertyKind::datatype : PropertyKind::object;
            }
            o.properties_.emplace(*iri, std::move(p));
        }
    }

    // Whitelisted external predicates.
    for (const auto& t : g.match(std::nullopt, allows, std::nullopt)) {
        if (const auto* iri = std::get_if<Iri>(&t.object()))
            o.externals_.insert(*iri);
        else
            o.warnings_.push_back("allowsPredicate value is not an IRI: " + rdf::to_ntriples(t.object()));
    }

    // Individuals: typed resources that are neither classes nor properties.
    const std::set<Iri> meta = {rdfs_class, owl_class, rdf_property, owl_object,
                                owl_datatype, owl_ontology, owl_named};
    for (const auto& t : g.match(std::nullopt, type, std::nullopt)) {
        const auto* subject = std::get_if<Iri>(&t.subject());
        const auto* cls = std::get_if<Iri>(&t.object());
        if (!subject || !cls || meta.count(*cls)) continue;
        if (o.classes_.count(*subject) || o.properties_.count(*subject)) continue;
        if (!o.classes_.count(*cls)) {
            o.warnings_.push_back("individual <" + subject->str() + "> has undeclared class <" +
                                  cls->str() + ">; ignored");
            continue;
        }
        auto [it, inserted] = o.individuals_.try_emplace(*subject, *cls);
        if (!inserted && it->second != *cls)
            o.warnings_.push_back("individual <" + subject->str() + "> has several classes; keeping <" +
                                  it->second.str() + ">");
    }

    // Cycle check and closure.
    enum class Mark { none, active, done };
    std::map<Iri, Mark> marks;
    std::vector<Iri> stack;
    std::function<void(const Iri&)> visit = [&](const Iri& c) {
        auto& m = marks[c];
        if (m == Mark::done) return;
        if (m == Mark::active) {
            auto start = std::find(stack.begin(), stack.end(), c);
            std::vector<std::string> cycle;
            for (auto it = start; it != stack.end(); ++it) cycle.push_back(it->str());
            cycle.push_back(c.str());
            throw CyclicHierarchy(std::move(cycle));
        }
        m = Mark::active;
        stack.push_back(c);
        std::set<Iri> closure{c};
        if (auto it = o.classes_.find(c); it != o.classes_.end()) {
            for (const auto& super : it->second.superclasses) {
                visit(super);
                const auto& sc = o.closure_.at(super);
                closure.insert(sc.begin(), sc.end());
            }
        }
        stack.pop_back();
        marks[c] = Mark::done;
        o.closure_[c] = std::move(closure);
    };
    for (const auto& [iri, c] : o.classes_) visit(iri);

    for (const auto& t : g) {
        const auto& p = t.predicate();
        if (p == type || p == sub_class_of || p == domain || p == range || p == label || p == comment ||
            p == allows)
            continue;
        o.warnings_.push_back("ignored statement " + rdf::canonical_ntriple(t));
    }
    return o;
}

const Ontology& builtin_criminal_ontology() {
    static const Ontology ontology = load_ontology(criminal_ontology_turtle());
    return ontology;
}

std::vector<Iri> required_properties() {
    std::vector<Iri> out;
    for (const char* local : {"hasAppeal", "hasDecision", "hasConviction", "imposedPunishment",
                              "offenseCategory", "durationDays", "amountEUR", "fromDocument",
                              "crimeLocation", "courtLocation"})
        out.push_back(make_iri(ns::fca, local));
    return out;
}

std::string to_turtle(const Ontology& o) {
    const Iri type = rdf::vocab::rdf_type();
    const Iri label = make_iri(ns::rdfs, "label");
    const Iri comment = make_iri(ns::rdfs, "comment");
    rdf::Graph g;
    g.prefixes() = o.prefixes();
    for (const auto& [label_name, iri] : std::map<std::string, std::string_view>{
             {"rdf", ns::rdf}, {"rdfs", ns::rdfs}, {"owl", ns::owl}, {"xsd", ns::xsd}})
        if (!g.prefixes().find(label_name)) g.prefixes().set(label_name, Iri(std::string(iri)));

    auto annotate = [&](const Iri& iri, const std::string& l, const std::optional<std::string>& c) {
        g.insert(rdf::Triple(iri, label, rdf::Literal(l)));
        if (c) g.insert(rdf::Triple(iri, comment, rdf::Literal(*c)));
    };
    for (const auto& [iri, c] : o.classes()) {
        g.insert(rdf::Triple(iri, type, make_iri(ns::owl, "Class")));
        for (const auto& s : c.superclasses) g.insert(rdf::Triple(iri, make_iri(ns::rdfs, "subClassOf"), s));
        annotate(iri, c.label, c.comment);
    }
    for (const auto& [iri, p] : o.properties()) {
        g.insert(rdf::Triple(iri, type,
                             make_iri(ns::owl, p.kind == PropertyKind::object ? "ObjectProperty" : "DatatypeProperty")));
        for (const auto& d : p.domains) g.insert(rdf::Triple(iri, make_iri(ns::rdfs, "domain"), d));
        for (const auto& r : p.ranges) g.insert(rdf::Triple(iri, make_iri(ns::rdfs, "range"), r));
        annotate(iri, p.label, p.comment);
    }
    for (const auto& [iri, cls] : o.individuals()) g.insert(rdf::Triple(iri, type, cls));
    const Iri holder = make_iri(ns::fca, "ontology");
    for (const auto& e : o.externals()) g.insert(rdf::Triple(holder, allows_predicate_iri(), e));
    return turtle::serialize_turtle(g);
}

std::vector<std::string> self_check(const Ontology& o) {
    std::vector<std::string> problems;
    for (const auto& [iri, p] : o.properties()) {
        const std::string name = o.compact(iri);
        if (p.domains.empty()) problems.push_back(name + ": no rdfs:domain");
        if (p.ranges.empty()) problems.push_back(name + ": no rdfs:range");
        for (const auto& d : p.domains)
            if (!o.has_class(d) && !Ontology::is_top_class(d))
                problems.push_back(name + ": domain " + o.compact(d) + " is not a declared class");
        for (const auto& r : p.ranges) {
            if (p.kind == PropertyKind::datatype && !is_xsd(r))
                problems.push_back(name + ": datatype property with non-xsd range " + o.compact(r));
            if (p.kind == PropertyKind::object && !o.has_class(r) && !Ontology::is_top_class(r))
                problems.push_back(name + ": object property range " + o.compact(r) + " is not a declared class");
        }
    }
    for (const auto& [ind, cls] : o.individuals())
        if (!o.has_class(cls)) problems.push_back(o.compact(ind) + ": class " + o.compact(cls) + " missing");
    for (const auto& req : required_properties())
        if (o.property_spec(req).status != PropertySpec::Status::declared)
            problems.push_back("required property " + o.compact(req) + " is not declared");
    // Antisymmetry of the subclass order.
    for (const auto& [a, ca] : o.classes())
        for (const auto& b : o.superclass_closure(a))
            if (b != a && o.superclass_closure(b).count(a))
                problems.push_back("classes " + o.compact(a) + " and " + o.compact(b) + " are mutual subclasses");
    return problems;
}

std::string vocabulary_table(const Ontology& o) {
    std::ostringstream out;
    auto join = [&](const std::set<Iri>& s) {
        std::string r;
        for (const auto& i : s) {
            if (!r.empty()) r += ", ";
            r += o.compact(i);
        }
        return r.empty() ? std::string("-") : r;
    };
    std::size_t width = 0;
    for (const auto& [iri, c] : o.classes()) width = std::max(width, o.compact(iri).size());
    for (const auto& [iri, p] : o.properties()) width = std::max(width, o.compact(iri).size());
    for (const auto& [iri, c] : o.individuals()) width = std::max(width, o.compact(iri).size());
    auto pad = [&](const std::string& s) { return s + std::string(width + 2 - std::min(width + 1, s.size()), ' '); };

    out << "Classes (" << o.classes().size() << ")\n";
    for (const auto& [iri, c] : o.classes())
        out << "  " << pad(o.compact(iri)) << "subClassOf " << join(c.superclasses) << "\n";
    out << "\nProperties (" << o.properties().size() << ")\n";
    for (const auto& [iri, p] : o.properties())
        out << "  " << pad(o.compact(iri)) << to_string(p.kind) << "  " << join(p.domains) << " -> "
            << join(p.ranges) << "\n";
    out << "\nIndividuals (" << o.individuals().size() << ")\n";
    for (const auto& [iri, c] : o.individuals()) out << "  " << pad(o.compact(iri)) << o.compact(c) << "\n";
    out << "\nExternal predicates (" << o.externals().size() << ")\n";
    for (const auto& e : o.externals()) out << "  " << o.compact(e) << "\n";
    return out.str();
}

}  // namespace lexkg::onto
