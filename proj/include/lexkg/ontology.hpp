#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexkg/rdf.hpp"

namespace lexkg::onto {

using rdf::Iri;

enum class PropertyKind { object, datatype };

std::string_view to_string(PropertyKind kind) noexcept;

struct OntClass {
    Iri iri;
    std::string label;
    std::set<Iri> superclasses;
    std::optional<std::string> comment;

    friend bool operator==(const OntClass&, const OntClass&) = default;
};

struct OntProperty {
    Iri iri;
    PropertyKind kind = PropertyKind::object;
    std::set<Iri> domains;
    std::set<Iri> ranges;
    std::string label;
    std::optional<std::string> comment;

    friend bool operator==(const OntProperty&, const OntProperty&) = default;
};

/// Result of a predicate lookup.
struct PropertySpec {
    enum class Status { declared, external, unknown };
    Status status = Status::unknown;
    /// Set only when status == declared.
    const OntProperty* property = nullptr;

    bool known() const noexcept { return status != Status::unknown; }
};

/// Classes, properties and named individuals of an RDFS/OWL-lite vocabulary.
/// Immutable once loaded.
class Ontology {
public:
    const std::map<Iri, OntClass>& classes() const noexcept { return classes_; }
    const std::map<Iri, OntProperty>& properties() const noexcept { return properties_; }
    const std::map<Iri, Iri>& individuals() const noexcept { return individuals_; }
    const std::set<Iri>& externals() const noexcept { return externals_; }
    const rdf::PrefixMap& prefixes() const noexcept { return prefixes_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    /// Turtle text the ontology was loaded from (injected into prompts).
    const std::string& source_text() const noexcept { return source_; }

    bool has_class(const Iri& iri) const { return classes_.count(iri) != 0; }

    /// Reflexive-transitive subClassOf. Throws UnknownClass.
    bool is_subclass(const Iri& sub, const Iri& super) const;

    /// Class plus all its (transitive) superclasses; {iri} for unknown IRIs.
    const std::set<Iri>& superclass_closure(const Iri& iri) const;

    PropertySpec property_spec(const Iri& iri) const;

    std::optional<Iri> individual_class(const Iri& iri) const;

    /// owl:Thing and rdfs:Resource: domains/ranges that admit every node.
    static bool is_top_class(const Iri& iri);

    /// Compact rendering using the ontology prefixes.
    std::string compact(const Iri& iri) const;

    friend bool operator==(const Ontology& a, const Ontology& b) {
        return a.classes_ == b.classes_ && a.properties_ == b.properties_ &&
               a.individuals_ == b.individuals_ && a.externals_ == b.externals_;
    }

private:
    friend Ontology load_ontology(std::string_view turtle_text);

    std::map<Iri, OntClass> classes_;
    std::map<Iri, OntProperty> properties_;
    std::map<Iri, Iri> individuals_;
    std::set<Iri> externals_;
    rdf::PrefixMap prefixes_;
    std::vector<std::string> warnings_;
    std::string source_;
    std::map<Iri, std::set<Iri>> closure_;
};

/// IRI naming the whitelist annotation: `<ontology> fca:allowsPredicate <p>`.
Iri allows_predicate_iri();

/// Interprets class, property, subclass, domain/range and individual
/// declarations. Throws ParseError or CyclicHierarchy.
Ontology load_ontology(std::string_view turtle_text);

/// Embedded Turtle source of the criminal appeal vocabulary.
std::string_view criminal_ontology_turtle() noexcept;

/// The embedded vocabulary, loaded once.
const Ontology& builtin_criminal_ontology();

/// Regenerates Turtle describing the ontology model.
std::string to_turtle(const Ontology& ontology);

/// Structural problems (empty domains, kind/range conflicts, missing
/// properties the pipeline relies on). Empty when the ontology is usable.
std::vector<std::string> self_check(const Ontology& ontology);

/// Properties used by the validator, prompt rules and analytics.
std::vector<Iri> required_properties();

/// Human-readable listing of classes, properties and individuals.
std::string vocabulary_table(const Ontology& ontology);

}  // namespace lexkg::onto
