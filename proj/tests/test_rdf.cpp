#include "doctest.h"
#include "support/generators.hpp"

#include "lexkg/rdf.hpp"

using namespace lexkg;
using namespace lexkg::rdf;

TEST_CASE("iri validation") {
    CHECK(Iri::is_valid("https://growgraph.dev/fcaont#Case"));
    CHECK(Iri::is_valid("urn:x:y"));
    CHECK_FALSE(Iri::is_valid("no-scheme"));
    CHECK_FALSE(Iri::is_valid("http://a b"));
    CHECK_FALSE(Iri::is_valid("http://a<b"));
    CHECK_FALSE(Iri::is_valid("http://a\"b"));
    CHECK_FALSE(Iri::is_valid(""));
    CHECK_THROWS_AS(Iri("bad iri"), InvalidIri);
    CHECK(Iri("https://growgraph.dev/fcaont#Case").local_name() == "Case");
    CHECK(Iri("https://example.org/a/b").local_name() == "b");
    CHECK(Iri("urn:x:y").local_name() == "y");
}

TEST_CASE("blank labels and languages") {
    CHECK(BlankNode::is_valid_label("b0"));
    CHECK_FALSE(BlankNode::is_valid_label(""));
    CHECK_FALSE(BlankNode::is_valid_label("a-b"));
    CHECK_THROWS_AS(BlankNode("x y"), InvalidTerm);
    CHECK(Literal::is_valid_language("fr"));
    CHECK(Literal::is_valid_language("en-GB"));
    CHECK_FALSE(Literal::is_valid_language("1en"));
    CHECK_FALSE(Literal::is_valid_language(""));
    CHECK_THROWS(Literal("x", vocab::rdf_lang_string()));
}

TEST_CASE("literal subject is rejected") {
    CHECK_THROWS_AS(Triple(Literal("x"), vocab::rdf_type(), Iri("urn:a")), InvalidTerm);
}

TEST_CASE("n-triples term rendering") {
    CHECK(to_ntriples(Iri("urn:a")) == "<urn:a>");
    CHECK(to_ntriples(BlankNode("b1")) == "_:b1");
    CHECK(to_ntriples(Literal("a\"b\\c\nd")) == "\"a\\\"b\\\\c\\nd\"");
    CHECK(to_ntriples(Literal::with_language("x", "fr")) == "\"x\"@fr");
    CHECK(to_ntriples(Literal("5", vocab::xsd_integer())) ==
          "\"5\"^^<http://www.w3.org/2001/XMLSchema#integer>");
    CHECK(escape_string("\t\r\x01") == "\\t\\r\\u0001");
}

TEST_CASE("graph is a set with consistent indexes") {
    Graph g;
    const Triple t(Iri("urn:s"), Iri("urn:p"), Literal("o"));
    CHECK(g.insert(t));
    CHECK_FALSE(g.insert(t));
    CHECK(g.size() == 1);
    CHECK(g.contains(t));
    CHECK(g.match(Term(Iri("urn:s")), std::nullopt, std::nullopt).size() == 1);
    CHECK(g.match(std::nullopt, Iri("urn:q"), std::nullopt).empty());
    CHECK(g.erase(t));
    CHECK_FALSE(g.erase(t));
    CHECK(g.empty());
    const auto c = g.index_cardinality();
    CHECK(c.subject == 0);
    CHECK(c.object == 0);
}

TEST_CASE("property: match agrees with a linear scan and index sizes equal the triple count") {
    testsupport::Random r(7);
    const auto u = testsupport::small_universe();
    for (int round = 0; round < 200; ++round) {
        Graph g = testsupport::random_small_graph(r, u, 40);
        // Random deletions exercise index maintenance.
        std::vector<Triple> all(g.begin(), g.end());
        for (const auto& t : all)
            if (r.chance(0.3)) g.erase(t);
        const auto c = g.index_cardinality();
        CHECK(c.subject == g.size());
        CHECK(c.predicate == g.size());
        CHECK(c.object == g.size());

        std::optional<Term> s, o;
        std::optional<Iri> p;
        if (r.chance(0.5)) s = r.pick(u.nodes);
        if (r.chance(0.5)) p = r.pick(u.predicates);
        if (r.chance(0.5)) o = r.chance(0.3) ? r.pick(u.literals) : r.pick(u.nodes);
        std::vector<Triple> expected;
        for (const auto& t : g)
            if ((!s || t.subject() == *s) && (!p || t.predicate() == *p) && (!o || t.object() == *o))
                expected.push_back(t);
        CHECK(g.match(s, p, o) == expected);
    }
}

TEST_CASE("iteration follows canonical line order") {
    testsupport::Random r(11);
    for (int i = 0; i < 50; ++i) {
        const Graph g = testsupport::random_graph(r, 30);
        std::string prev;
        for (const auto& t : g) {
            const auto line = canonical_ntriple(t);
            CHECK(prev < line);
            prev = line;
        }
    }
}

TEST_CASE("prefix map compaction") {
    PrefixMap pm;
    pm.set("fca", Iri(std::string(ns::fca)));
    pm.set("ex", Iri("https://example.org/"));
    pm.set("exc", Iri("https://example.org/cass/"));
    CHECK(pm.compact(Iri("https://growgraph.dev/fcaont#Case")) == "fca:Case");
    CHECK(pm.compact(Iri("https://example.org/cass/x")) == "exc:x");
    CHECK_FALSE(pm.compact(Iri("https://example.org/a/b%25")).has_value());
    CHECK_FALSE(pm.compact(Iri("urn:other")).has_value());
    pm.set("ex", Iri("urn:replaced:"));
    CHECK(pm.size() == 3);
    CHECK(expand_qname(pm, "ex:y") == Iri("urn:replaced:y"));
    CHECK_THROWS_AS(expand_qname(pm, "nope:y"), UnknownPrefix);
}

TEST_CASE("blank relabeling and union") {
    Graph a;
    a.insert(Triple(BlankNode("b0"), Iri("urn:p"), BlankNode("b1")));
    Graph b;
    b.insert(Triple(BlankNode("b0"), Iri("urn:p"), BlankNode("b1")));
    const Graph ra = relabel_blank_nodes(a, "f0_");
    const Graph rb = relabel_blank_nodes(b, "f1_");
    CHECK(ra.contains(Triple(BlankNode("f0_b0"), Iri("urn:p"), BlankNode("f0_b1"))));
    CHECK(graph_union(ra, rb).size() == 2);
    CHECK(graph_union(a, b).size() == 1);
}
