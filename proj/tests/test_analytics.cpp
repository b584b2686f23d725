#include <cmath>
#include <numeric>

#include <json.hpp>

#include "doctest.h"
#include "support/generators.hpp"

#include "lexkg/analytics.hpp"
#include "lexkg/corpus.hpp"
#include "lexkg/turtle.hpp"

using namespace lexkg;
using namespace lexkg::analytics;
using rdf::Iri;
using rdf::Term;

namespace {

const onto::Ontology& ont() { return onto::builtin_criminal_ontology(); }
Iri fca(const char* l) { return rdf::make_iri(rdf::ns::fca, l); }

const char* kPrefixes =
    "@prefix fca: <https://growgraph.dev/fcaont#> .\n"
    "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
    "@prefix ex: <https://example.org/> .\n";

rdf::Graph ttl(const std::string& body) { return turtle::parse_turtle(std::string(kPrefixes) + body).graph; }

/// Two rejected cases (365 and 730 days) and one upheld case (365 days).
const char* kDecisions = R"(
ex:c1 fca:hasAppeal ex:a1 ; fca:hasConviction ex:v1 .
ex:a1 fca:hasDecision fca:Rejected .
ex:v1 fca:imposedPunishment ex:p1 , ex:f1 .
ex:p1 a fca:CustodialPunishment ; fca:durationDays "365"^^xsd:nonNegativeInteger .
ex:f1 a fca:MonetaryPunishment ; fca:amountEUR 1500.00 .
ex:c2 fca:hasAppeal ex:a2 ; fca:hasConviction ex:v2 .
ex:a2 fca:hasDecision fca:Rejected .
ex:v2 fca:imposedPunishment ex:p2 .
ex:p2 a fca:CustodialPunishment ; fca:durationDays "730"^^xsd:nonNegativeInteger .
ex:c3 fca:hasAppeal ex:a3 ; fca:hasConviction ex:v3 .
ex:a3 fca:hasDecision fca:Upheld .
ex:v3 fca:imposedPunishment ex:p3 , ex:f3 .
ex:p3 a fca:CustodialPunishment ; fca:durationDays "365"^^xsd:nonNegativeInteger .
ex:f3 a fca:MonetaryPunishment ; fca:amountEUR 20 .
)";

}  // namespace

TEST_CASE("basic graph pattern examples") {
    const auto g = ttl(kDecisions);
    const auto q = parse_patterns("?case fca:hasAppeal ?a . ?a fca:hasDecision fca:Rejected .", ont().prefixes());
    const auto rows = bgp_match(g, q);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].at("case") == Term(Iri("https://example.org/c1")));
    CHECK(rows[1].at("case") == Term(Iri("https://example.org/c2")));
    const std::string table = format_bindings(rows, g.prefixes());
    CHECK(table == "?a\t?case\nex:a1\tex:c1\nex:a2\tex:c2\n");

    // Same variable twice in one pattern.
    auto self = ttl("ex:x fca:hasAppeal ex:x . ex:y fca:hasAppeal ex:z .");
    CHECK(bgp_match(self, parse_patterns("?v fca:hasAppeal ?v .", ont().prefixes())).size() == 1);
    // Variable predicate.
    CHECK(bgp_match(g, parse_patterns("ex:p1 ?p ?o .", g.prefixes())).size() == 2);
    // No match.
    CHECK(bgp_match(g, parse_patterns("?x fca:hasDecision fca:Nothing .", ont().prefixes())).empty());
    CHECK(format_bindings({}, {}).empty());
}

TEST_CASE("pattern errors") {
    CHECK_THROWS_AS(parse_patterns("", ont().prefixes()), QueryError);
    CHECK_THROWS_AS(parse_patterns("_:b fca:hasAppeal ?x .", ont().prefixes()), QueryError);
    CHECK_THROWS_AS(parse_patterns("?x nope:p ?y .", ont().prefixes()), ParseError);
    CHECK_THROWS_AS(parse_patterns("?x fca:hasAppeal", ont().prefixes()), ParseError);
    CHECK_THROWS_AS(bgp_match(rdf::Graph{}, {}), QueryError);
    TriplePattern bad{Variable{"X"}, Term(fca("hasAppeal")), Variable{"y"}};
    CHECK_THROWS_AS(bgp_match(rdf::Graph{}, {bad}), QueryError);
    TriplePattern lit_subject{Term(rdf::Literal("x")), Term(fca("hasAppeal")), Variable{"y"}};
    CHECK_THROWS_AS(lit_subject.check(), QueryError);
    TriplePattern blank_pred{Variable{"x"}, Term(rdf::BlankNode("b")), Variable{"y"}};
    CHECK_THROWS_AS(blank_pred.check(), QueryError);
    CHECK(is_valid_variable_name("case_2"));
    CHECK_FALSE(is_valid_variable_name("2case"));
    CHECK_FALSE(is_valid_variable_name(""));
}

TEST_CASE("property: bgp results equal brute-force enumeration") {
    testsupport::Random r(42);
    const auto u = testsupport::small_universe();
    for (int i = 0; i < 300; ++i) {
        const auto g = testsupport::random_small_graph(r, u, 25);
        const auto q = testsupport::random_query(r, u);
        CHECK(testsupport::as_rows(bgp_match(g, q)) == testsupport::brute_force_bgp(g, q));
    }
}

TEST_CASE("quantiles and summaries") {
    const std::vector<double> v{1, 2, 3, 4};
    CHECK(quantile(v, 0.25) == doctest::Approx(1.75));
    CHECK(quantile(v, 0.5) == doctest::Approx(2.5));
    CHECK(quantile(v, 0.75) == doctest::Approx(3.25));
    CHECK(quantile(v, 0) == 1);
    CHECK(quantile(v, 1) == 4);
    CHECK(quantile({7}, 0.3) == 7);
    const auto s = summarize("g", {5, 1, 3});
    CHECK(s.n == 3);
    CHECK(s.mean == doctest::Approx(3));
    CHECK(s.median == 3);
    CHECK(s.min == 1);
    CHECK(s.max == 5);
    CHECK_THROWS_AS(summarize("g", {}), EmptySample);
}

TEST_CASE("property: summary order statistics are ordered") {
    testsupport::Random r(8);
    for (int i = 0; i < 500; ++i) {
        const auto s = summarize("g", testsupport::random_sample(r, 40));
        CHECK(s.min <= s.q1);
        CHECK(s.q1 <= s.median);
        CHECK(s.median <= s.q3);
        CHECK(s.q3 <= s.max);
        CHECK(s.min <= s.mean);
        CHECK(s.mean <= s.max);
    }
}

TEST_CASE("ks statistic examples") {
    CHECK(ks_statistic({1, 2, 3}, {2, 3, 4}) == doctest::Approx(1.0 / 3));
    CHECK(ks_statistic({1, 2, 3}, {1, 2, 3}) == 0);
    CHECK(ks_statistic({1, 2}, {3, 4}) == 1);
    CHECK(ks_statistic({365, 730}, {365}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(ks_statistic({}, {1}), EmptySample);
}

TEST_CASE("property: ks agrees with direct ecdf counting") {
    testsupport::Random r(1234);
    for (int i = 0; i < 300; ++i) {
        const auto a = testsupport::random_sample(r, 30);
        const auto b = testsupport::random_sample(r, 30);
        const double d = ks_statistic(a, b);
        CHECK(std::abs(d - testsupport::brute_force_ks(a, b)) <= 1e-12);
        CHECK(d >= 0);
        CHECK(d <= 1);
        CHECK(std::abs(d - ks_statistic(b, a)) <= 1e-15);
    }
}

TEST_CASE("histogram edges and binning") {
    CHECK(fixed_width_edges({0, 89, 90, 400}, 90) == std::vector<double>{0, 90, 180, 270, 360, 450});
    CHECK(fixed_width_edges({-5}, 10) == std::vector<double>{-10, 0});
    CHECK_THROWS_AS(fixed_width_edges({1}, 0), ConfigError);
    CHECK_THROWS_AS(fixed_width_edges({}, 5), EmptySample);
    CHECK(log_decade_edges({20, 1500}) == std::vector<double>{10, 100, 1000, 10000});
    CHECK(log_decade_edges({0, 5}) == std::vector<double>{0, 1, 10});
    CHECK(log_decade_edges({1000}) == std::vector<double>{1000, 10000});
    CHECK(log_decade_edges({0}) == std::vector<double>{0, 1});

    auto h = make_histogram({0, 89, 90, 400}, {0, 90, 180, 270, 360, 450});
    CHECK(h.counts == std::vector<std::size_t>{2, 1, 0, 0, 1});
    // The last bin includes its upper edge.
    CHECK(make_histogram({0, 10}, {0, 10}).counts == std::vector<std::size_t>{2});
    CHECK(make_histogram({11, -1}, {0, 10}).total() == 0);
    normalize(h);
    REQUIRE(h.normalized);
    CHECK((*h.normalized)[0] == doctest::Approx(0.5));
    Histogram empty = make_histogram({}, {0, 1});
    normalize(empty);
    CHECK_FALSE(empty.normalized);
    CHECK_THROWS_AS(make_histogram({1}, {1}), ConfigError);
}

TEST_CASE("property: histograms count every value once and normalize to 1") {
    testsupport::Random r(77);
    for (int i = 0; i < 300; ++i) {
        std::vector<double> v = testsupport::random_sample(r, 60);
        const bool log = r.chance(0.5);
        if (log)
            for (auto& x : v) x = std::abs(x) * std::pow(10.0, static_cast<double>(r.below(5)));
        auto h = make_histogram(v, log ? log_decade_edges(v) : fixed_width_edges(v, 0.5 + r.real(0, 20)));
        CHECK(h.total() == v.size());
        normalize(h);
        REQUIRE(h.normalized);
        const double sum = std::accumulate(h.normalized->begin(), h.normalized->end(), 0.0);
        CHECK(std::abs(sum - 1.0) <= 1e-9);
        // Oracle: count per bin by direct interval tests.
        for (std::size_t b = 0; b < h.counts.size(); ++b) {
            const bool last = b + 1 == h.counts.size();
            std::size_t c = 0;
            for (double x : v)
                c += x >= h.bin_edges[b] && (x < h.bin_edges[b + 1] || (last && x == h.bin_edges[b + 1]));
            CHECK(h.counts[b] == c);
        }
    }
}

TEST_CASE("grouped punishment durations") {
    const auto g = ttl(kDecisions);
    const auto r = grouped_distribution(g, ont(), fca("durationDays"), default_decision_path(), BinSpec{});
    REQUIRE(r.groups.size() == 2);
    const auto& rej = r.groups.at("Rejected");
    const auto& up = r.groups.at("Upheld");
    CHECK(rej.values == std::vector<double>{365, 730});
    CHECK(up.values == std::vector<double>{365});
    CHECK(rej.summary.mean == doctest::Approx(547.5));
    CHECK(rej.histogram.bin_edges == up.histogram.bin_edges);
    CHECK(rej.histogram.bin_edges.front() == 360);
    CHECK(rej.histogram.bin_edges.back() == 810);
    CHECK(r.skipped_literals == 0);
    CHECK(ks_statistic(rej.values, up.values) == doctest::Approx(0.5));

    const auto fines = grouped_distribution(g, ont(), fca("amountEUR"), default_decision_path(),
                                            BinSpec{Binning::log_decade, 0});
    CHECK(fines.groups.at("Rejected").values == std::vector<double>{1500});
    CHECK(fines.groups.at("Upheld").histogram.bin_edges == std::vector<double>{10, 100, 1000, 10000});

    const std::string json = plot_data_json(r);
    const auto j = nlohmann::json::parse(json);
    CHECK(j["groups"]["Rejected"]["counts"].size() == rej.histogram.counts.size());
    CHECK(j["ks"].get<double>() == doctest::Approx(0.5));
    CHECK(grouped_csv(r).rfind("bin_lo,bin_hi,count,fraction,group\n", 0) == 0);
}

TEST_CASE("grouped distribution edge cases") {
    const auto g = ttl(std::string(kDecisions) + "ex:p2 fca:durationDays \"two years\" .\n");
    const auto r = grouped_distribution(g, ont(), fca("durationDays"), default_decision_path(), BinSpec{});
    CHECK(r.skipped_literals == 1);
    CHECK(r.warnings.size() == 1);
    CHECK(r.groups.at("Rejected").values.size() == 2);

    const auto none = grouped_distribution(ttl("ex:a fca:hasDecision fca:Rejected ."), ont(), fca("durationDays"),
                                           default_decision_path(), BinSpec{});
    CHECK(none.groups.empty());
    CHECK_FALSE(none.warnings.empty());
    CHECK_THROWS_AS(grouped_distribution(g, ont(), fca("nope"), default_decision_path(), BinSpec{}), UnknownPredicate);
    CHECK_THROWS_AS(grouped_distribution(g, ont(), fca("hasAppeal"), default_decision_path(), BinSpec{}), QueryError);
    CHECK_THROWS_AS(
        grouped_distribution(g, ont(), fca("durationDays"), parse_patterns("?x fca:hasAppeal ?y .", ont().prefixes()), BinSpec{}),
        QueryError);
}

TEST_CASE("counts by offense category") {
    const auto g = ttl(R"(
ex:k1 fca:offenseCategory fca:ViolentOffense . ex:k2 fca:offenseCategory fca:ViolentOffense .
ex:k3 fca:offenseCategory fca:DrugOffense . ex:k4 fca:offenseCategory fca:PropertyOffense .
)");
    const auto c = count_by_object(g, fca("offenseCategory"), ont());
    REQUIRE(c.size() == 3);
    CHECK(c[0].first == Term(fca("ViolentOffense")));
    CHECK(c[0].second == 2);
    CHECK(c[1].first == Term(fca("DrugOffense")));  // tie broken by N-Triples order
    CHECK(c[2].first == Term(fca("PropertyOffense")));
    CHECK_THROWS_AS(count_by_object(g, fca("nope"), ont()), UnknownPredicate);
}

TEST_CASE("triples per document from a directory and from a merged graph agree") {
    const auto dir = testsupport::temp_dir("tpd");
    corpus::write_file(dir / "a.ttl", std::string(kPrefixes) + "ex:x a fca:Case ; fca:hasAppeal ex:y .\nex:y a fca:Appeal .\n");
    corpus::write_file(dir / "b.ttl", std::string(kPrefixes) + "_:n a fca:Case .\n");
    const auto from_dir = triples_per_doc(dir);
    CHECK(from_dir.per_document == std::map<std::string, std::size_t>{{"a", 3}, {"b", 1}});
    CHECK(from_dir.mean == doctest::Approx(2));
    CHECK(from_dir.median == doctest::Approx(2));
    const auto from_graph = triples_per_doc(corpus::merge_outputs(dir));
    CHECK(from_graph.per_document == from_dir.per_document);
    CHECK(from_graph.histogram.counts == from_dir.histogram.counts);
    CHECK_THROWS_AS(triples_per_doc(rdf::Graph{}), EmptyCorpus);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    CHECK_THROWS_AS(triples_per_doc(dir), EmptyCorpus);
    std::filesystem::remove_all(dir);
}

TEST_CASE("property graph export") {
    const auto g = ttl(R"(
ex:c a fca:Case ; fca:hasConviction ex:v ; fca:fromDocument "d1" .
ex:v a fca:Conviction ; fca:imposedPunishment ex:p ; fca:fromDocument "d1" .
ex:p a fca:CustodialPunishment , fca:Punishment ; fca:durationDays "30"^^xsd:nonNegativeInteger ;
  fca:description "a, \"quoted\"" , "second" ; fca:fromDocument "d1" .
ex:v fca:offenseCategory fca:DrugOffense .
)");
    const auto pg = export_property_graph(g, ont());
    CHECK(pg.attribute_columns == std::vector<std::string>{"description", "durationDays"});
    REQUIRE(pg.nodes.size() == 4);
    const auto& p = pg.nodes[1];
    CHECK(p.id == "https://example.org/p");
    CHECK(p.cls == "CustodialPunishment");
    CHECK(p.doc == "d1");
    CHECK(p.attributes.at("description") == "a, \"quoted\"|second");
    CHECK(pg.nodes[3].id == "https://growgraph.dev/fcaont#DrugOffense");
    CHECK(pg.nodes[3].cls == "OffenseCategory");
    CHECK(pg.edges.size() == 3);
    const std::string nodes = pg.nodes_csv();
    CHECK(nodes.rfind("id,class,doc,description,durationDays\n", 0) == 0);
    CHECK(nodes.find("\"a, \"\"quoted\"\"|second\"") != std::string::npos);
    CHECK(pg.edges_csv().rfind("src,dst,relation\n", 0) == 0);
    CHECK(pg.edges_csv().find("https://example.org/c,https://example.org/v,hasConviction") != std::string::npos);
}

TEST_CASE("csv and number formatting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("line\nbreak") == "\"line\nbreak\"");
    CHECK(csv_rows({{"a", "b"}, {"1", "x,y"}}) == "a,b\n1,\"x,y\"\n");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(365) == "365");
    CHECK(format_number(1.0 / 3) == "0.3333333333333333");
    testsupport::Random r(3);
    for (int i = 0; i < 200; ++i) {
        const double v = r.real(-1e9, 1e9) / std::pow(10.0, static_cast<double>(r.below(12)));
        CHECK(std::stod(format_number(v)) == v);
    }
    CHECK(counts_csv({{"fca:ViolentOffense", 3}}, "category") == "category,count\nfca:ViolentOffense,3\n");
}
