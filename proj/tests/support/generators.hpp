// Random inputs and brute-force oracles shared by unit and acceptance tests.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lexkg/analytics.hpp"
#include "lexkg/rdf.hpp"

namespace testsupport {

using lexkg::rdf::BlankNode;
using lexkg::rdf::Graph;
using lexkg::rdf::Iri;
using lexkg::rdf::Literal;
using lexkg::rdf::Term;
using lexkg::rdf::Triple;

inline std::filesystem::path fixtures() { return LEXKG_FIXTURES; }

inline Iri xsd(const char* local) { return lexkg::rdf::make_iri(lexkg::rdf::ns::xsd, local); }

class Random {
public:
    explicit Random(std::uint64_t seed) : rng_(seed) {}

    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
    long between(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Strings that stress escaping: quotes, backslashes, line breaks, tabs,
/// controls, non-ASCII, triple quotes.
inline std::string random_text(Random& r) {
    static const std::vector<std::string> pieces{
        "a", "Z", "0", " ", "\"", "'", "\\", "\n", "\r", "\t", "\x01", "\x7f", "é", "漢", "😀", "\"\"\"", "''",
        "#", "@", "<", ">", "{", "}", ".", ";", ",", "^^", "_:x", "nul", "Cour d'appel"};
    std::string s;
    const std::size_t n = r.below(7);
    for (std::size_t i = 0; i < n; ++i) s += r.pick(pieces);
    return s;
}

inline Literal random_literal(Random& r) {
    char buf[64];
    switch (r.below(12)) {
        case 0: return Literal(random_text(r));
        case 1: return Literal::with_language(random_text(r), r.chance(0.5) ? "fr" : "en-GB");
        case 2: return Literal(std::to_string(r.between(-100000, 100000)), xsd("integer"));
        case 3: return Literal(std::to_string(r.between(0, 100000)), xsd("nonNegativeInteger"));
        case 4:
            std::snprintf(buf, sizeof buf, "%ld.%02ld", r.between(-9999, 9999), r.between(0, 99));
            return Literal(buf, xsd("decimal"));
        case 5:
            std::snprintf(buf, sizeof buf, "%.3E", r.real(-1e6, 1e6));
            return Literal(buf, xsd("double"));
        case 6: return Literal(r.chance(0.5) ? "true" : "false", xsd("boolean"));
        case 7:
            std::snprintf(buf, sizeof buf, "%04ld-%02ld-%02ld", r.between(1900, 2030), r.between(1, 12),
                          r.between(1, 28));
            return Literal(buf, xsd("date"));
        case 8:
            std::snprintf(buf, sizeof buf, "%04ld-%02ld-%02ldT%02ld:%02ld:%02ldZ", r.between(1900, 2030),
                          r.between(1, 12), r.between(1, 28), r.between(0, 23), r.between(0, 59), r.between(0, 59));
            return Literal(buf, xsd("dateTime"));
        case 9: return Literal(random_text(r), xsd("string"));
        case 10: return Literal(random_text(r), Iri("https://example.org/dt#custom"));
        default:
            // Forms the writer cannot abbreviate.
            return Literal(r.chance(0.5) ? "+5" : "1.", r.chance(0.5) ? xsd("integer") : xsd("decimal"));
    }
}

inline Iri random_iri(Random& r) {
    static const std::vector<std::string> bases{
        "https://growgraph.dev/fcaont#", "https://example.org/cass/", "http://xmlns.com/foaf/0.1/",
        "urn:x-test:", "https://example.org/path/with%20space/", "https://example.org/ns#"};
    static const std::vector<std::string> locals{
        "Case", "a", "n1", "b-2", "x_y", "", "caf\xc3\xa9", "with.dot", "a.", "1start", "q%41", "deep/er", "x~y",
        "h#frag", "ü"};
    return Iri(r.pick(bases) + r.pick(locals));
}

inline BlankNode random_blank(Random& r) {
    static const std::vector<std::string> labels{"b0", "b1", "node", "x_1", "A9", "b10", "f0_b0", "_u"};
    return BlankNode(r.pick(labels));
}

inline Term random_node(Random& r) {
    if (r.chance(0.35)) return random_blank(r);
    return random_iri(r);
}

/// Up to max_triples triples over all supported term kinds.
inline Graph random_graph(Random& r, std::size_t max_triples) {
    Graph g;
    const std::size_t n = r.below(max_triples + 1);
    for (std::size_t i = 0; i < n; ++i) {
        Term s = random_node(r);
        Iri p = r.chance(0.15) ? lexkg::rdf::vocab::rdf_type() : random_iri(r);
        Term o = r.chance(0.5) ? Term(random_literal(r)) : random_node(r);
        g.insert(Triple(std::move(s), std::move(p), std::move(o)));
    }
    if (r.chance(0.5)) {
        g.prefixes().set("fca", Iri("https://growgraph.dev/fcaont#"));
        g.prefixes().set("ex", Iri("https://example.org/cass/"));
    }
    if (r.chance(0.3)) g.prefixes().set("", Iri("https://example.org/ns#"));
    return g;
}

// ---------------------------------------------------------------------------
// Small-universe graphs and queries for join oracles.

struct SmallUniverse {
    std::vector<Term> nodes;
    std::vector<Iri> predicates;
    std::vector<Term> literals;
};

inline SmallUniverse small_universe() {
    SmallUniverse u;
    for (int i = 0; i < 6; ++i) u.nodes.push_back(Iri("https://example.org/n" + std::to_string(i)));
    u.nodes.push_back(BlankNode("b0"));
    u.nodes.push_back(BlankNode("b1"));
    for (int i = 0; i < 4; ++i) u.predicates.push_back(Iri("https://example.org/p" + std::to_string(i)));
    u.literals.push_back(Literal("x"));
    u.literals.push_back(Literal("1", xsd("integer")));
    u.literals.push_back(Literal::with_language("x", "fr"));
    return u;
}

inline Graph random_small_graph(Random& r, const SmallUniverse& u, std::size_t max_triples) {
    Graph g;
    const std::size_t n = r.below(max_triples + 1);
    for (std::size_t i = 0; i < n; ++i) {
        Term o = r.chance(0.25) ? r.pick(u.literals) : r.pick(u.nodes);
        g.insert(Triple(r.pick(u.nodes), r.pick(u.predicates), std::move(o)));
    }
    return g;
}

inline std::vector<lexkg::analytics::TriplePattern> random_query(Random& r, const SmallUniverse& u) {
    using lexkg::analytics::PatternTerm;
    using lexkg::analytics::Variable;
    static const std::vector<std::string> vars{"x", "y", "z"};
    auto var = [&] { return PatternTerm(Variable{r.pick(vars)}); };
    std::vector<lexkg::analytics::TriplePattern> q;
    const std::size_t n = 1 + r.below(3);
    for (std::size_t i = 0; i < n; ++i) {
        PatternTerm s = r.chance(0.7) ? var() : PatternTerm(r.pick(u.nodes));
        PatternTerm p = r.chance(0.3) ? var() : PatternTerm(Term(r.pick(u.predicates)));
        PatternTerm o = r.chance(0.6) ? var()
                        : r.chance(0.3) ? PatternTerm(r.pick(u.literals))
                                        : PatternTerm(r.pick(u.nodes));
        q.push_back({std::move(s), std::move(p), std::move(o)});
    }
    return q;
}

/// Every assignment of the query's variables to terms of the graph, kept when
/// all substituted patterns are triples of the graph.
inline std::set<std::vector<std::string>> brute_force_bgp(const Graph& g,
                                                          const std::vector<lexkg::analytics::TriplePattern>& q) {
    using lexkg::analytics::PatternTerm;
    using lexkg::analytics::Variable;
    std::set<std::string> names;
    for (const auto& p : q)
        for (const auto& v : p.variables()) names.insert(v);
    std::vector<std::string> vars(names.begin(), names.end());

    std::vector<Term> universe;
    std::set<std::string> seen;
    auto add = [&](const Term& t) {
        if (seen.insert(lexkg::rdf::to_ntriples(t)).second) universe.push_back(t);
    };
    for (const auto& t : g) {
        add(t.subject());
        add(Term(t.predicate()));
        add(t.object());
    }

    std::set<std::vector<std::string>> out;
    std::map<std::string, Term> assignment;
    auto value = [&](const PatternTerm& pt) -> const Term& {
        if (const auto* v = std::get_if<Variable>(&pt)) return assignment.at(v->name);
        return std::get<Term>(pt);
    };
    auto holds = [&] {
        for (const auto& p : q) {
            const Term& s = value(p.subject);
            const Term& pr = value(p.predicate);
            const Term& o = value(p.object);
            if (lexkg::rdf::is_literal(s) || !lexkg::rdf::is_iri(pr)) return false;
            if (!g.contains(Triple(s, std::get<Iri>(pr), o))) return false;
        }
        return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vars.size()) {
            if (holds()) {
                std::vector<std::string> row;
                for (const auto& v : vars) row.push_back(lexkg::rdf::to_ntriples(assignment.at(v)));
                out.insert(row);
            }
            return;
        }
        for (const auto& t : universe) {
            assignment.insert_or_assign(vars[i], t);
            rec(i + 1);
        }
        assignment.erase(vars[i]);
    };
    if (vars.empty()) {
        if (holds()) out.insert({});
    } else {
        rec(0);
    }
    return out;
}

inline std::set<std::vector<std::string>> as_rows(const std::vector<lexkg::analytics::Binding>& bindings) {
    std::set<std::vector<std::string>> out;
    for (const auto& b : bindings) {
        std::vector<std::string> row;
        for (const auto& [name, v] : b) row.push_back(lexkg::rdf::to_ntriples(v));
        out.insert(row);
    }
    return out;
}

/// sup |F_a - F_b| by direct counting at every sample point.
inline double brute_force_ks(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0;
    std::vector<double> points = a;
    points.insert(points.end(), b.begin(), b.end());
    for (double x : points) {
        std::size_t ca = 0, cb = 0;
        for (double v : a) ca += v <= x;
        for (double v : b) cb += v <= x;
        const double diff = static_cast<double>(ca) / static_cast<double>(a.size()) -
                            static_cast<double>(cb) / static_cast<double>(b.size());
        d = std::max(d, diff < 0 ? -diff : diff);
    }
    return d;
}

inline std::vector<double> random_sample(Random& r, std::size_t max_n) {
    std::vector<double> v(1 + r.below(max_n));
    const bool ties = r.chance(0.5);
    for (auto& x : v) x = ties ? static_cast<double>(r.between(0, 10)) : r.real(-50, 50);
    return v;
}

/// Fresh, empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
    static std::random_device rd;
    auto p = std::filesystem::temp_directory_path() /
             ("lexkg-test-" + name + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace testsupport
