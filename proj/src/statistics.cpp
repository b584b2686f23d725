#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

#include "lexkg/analytics.hpp"
#include "lexkg/corpus.hpp"
#include "lexkg/errors.hpp"
#include "lexkg/turtle.hpp"

namespace lexkg::analytics {

using rdf::Iri;
using rdf::Term;

std::size_t Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

std::vector<double> fixed_width_edges(const std::vector<double>& values, double width) {
    if (values.empty()) throw EmptySample();
    if (!(width > 0) || !std::isfinite(width)) throw ConfigError("bin width must be positive");
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double first = std::floor(*mn / width);
    const double last = std::floor(*mx / width);
    std::vector<double> edges;
    for (double k = first; k <= last + 1; ++k) edges.push_back(k * width);
    return edges;
}

namespace {
double pow10(int k) { return std::pow(10.0, k); }

int decade(double v) {
    int k = static_cast<int>(std::floor(std::log10(v)));
    while (pow10(k) > v) --k;
    while (pow10(k + 1) <= v) ++k;
    return k;
}
}  // namespace

std::vector<double> log_decade_edges(const std::vector<double>& values) {
    if (values.empty()) throw EmptySample();
    std::optional<int> lo, hi;
    bool non_positive = false;
    for (double v : values) {
        if (!(v > 0)) {
            non_positive = true;
            continue;
        }
        const int k = decade(v);
        lo = lo ? std::min(*lo, k) : k;
        hi = hi ? std::max(*hi, k) : k;
    }
    if (!lo) return {0.0, 1.0};
    std::vector<double> edges;
    if (non_positive) edges.push_back(0.0);
    for (int k = *lo; k <= *hi + 1; ++k) edges.push_back(pow10(k));
    return edges;
}

Histogram make_histogram(const std::vector<double>& values, std::vector<double> edges) {
    if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end()))
        throw ConfigError("histogram needs at least two ascending edges");
    Histogram h;
    h.bin_edges = std::move(edges);
    h.counts.assign(h.bin_edges.size() - 1, 0);
    for (double v : values) {
        if (v < h.bin_edges.front() || v > h.bin_edges.back()) continue;
        auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), v);
        auto bin = static_cast<std::size_t>(it - h.bin_edges.begin()) - 1;
        if (bin >= h.counts.size()) bin = h.counts.size() - 1;
        ++h.counts[bin];
    }
    return h;
}

void normalize(Histogram& h) {
    const std::size_t n = h.total();
    if (n == 0) {
        h.normalized.reset();
        return;
    }
    std::vector<double> f;
    f.reserve(h.counts.size());
    for (std::size_t c : h.counts) f.push_back(static_cast<double>(c) / static_cast<double>(n));
    h.normalized = std::move(f);
}

double quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw EmptySample();
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

GroupSummary summarize(std::string group, std::vector<double> values) {
    if (values.empty()) throw EmptySample();
    std::sort(values.begin(), values.end());
    GroupSummary s;
    s.group = std::move(group);
    s.n = values.size();
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    s.min = values.front();
    s.max = values.back();
    s.q1 = quantile(values, 0.25);
    s.median = quantile(values, 0.5);
    s.q3 = quantile(values, 0.75);
    return s;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw EmptySample();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    double d = 0;
    for (const auto* sample : {&a, &b}) {
        for (double x : *sample) {
            const auto ca = static_cast<double>(std::upper_bound(a.begin(), a.end(), x) - a.begin());
            const auto cb = static_cast<double>(std::upper_bound(b.begin(), b.end(), x) - b.begin());
            d = std::max(d, std::abs(ca / na - cb / nb));
        }
    }
    return d;
}

namespace {

TripleCounts finish_counts(std::map<std::string, std::size_t> per_doc, double bin_width) {
    TripleCounts out;
    std::vector<double> values;
    for (const auto& [doc, n] : per_doc) values.push_back(static_cast<double>(n));
    out.histogram = make_histogram(values, fixed_width_edges(values, bin_width));
    std::sort(values.begin(), values.end());
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    out.median = quantile(values, 0.5);
    out.per_document = std::move(per_doc);
    return out;
}

const Iri& from_document() {
    static const Iri iri = rdf::make_iri(rdf::ns::fca, "fromDocument");
    return iri;
}

std::optional<double> parse_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

TripleCounts triples_per_doc(const fs::path& dir, double bin_width) {
    const auto files = corpus::list_turtle_files(dir);
    if (files.empty()) throw EmptyCorpus("no .ttl files in " + dir.string());
    std::map<std::string, std::size_t> per_doc;
    for (const auto& f : files) {
        try {
            per_doc[f.stem().string()] = turtle::parse_turtle(corpus::read_file(f)).graph.size();
        } catch (const ParseError& e) {
            throw e.in_source(f.filename().string());
        }
    }
    return finish_counts(std::move(per_doc), bin_width);
}

TripleCounts triples_per_doc(const rdf::Graph& merged, double bin_width) {
    std::map<std::string, std::vector<std::string>> docs_of;  // subject N-Triples -> doc ids
    std::map<std::string, std::size_t> per_doc;
    for (const auto& t : merged.match(std::nullopt, from_document(), std::nullopt)) {
        const auto* lit = std::get_if<rdf::Literal>(&t.object());
        if (!lit) continue;
        docs_of[rdf::to_ntriples(t.subject())].push_back(lit->lexical());
        per_doc.try_emplace(lit->lexical(), 0);
    }
    if (per_doc.empty()) throw EmptyCorpus("graph has no fca:fromDocument provenance");
    for (const auto& t : merged) {
        if (t.predicate() == from_document()) continue;
        auto it = docs_of.find(rdf::to_ntriples(t.subject()));
        if (it == docs_of.end()) continue;
        for (const auto& d : it->second) ++per_doc[d];
    }
    return finish_counts(std::move(per_doc), bin_width);
}

std::vector<std::pair<Term, std::size_t>> count_by_object(const rdf::Graph& graph, const Iri& predicate,
                                                          const onto::Ontology& ontology) {
    if (!ontology.property_spec(predicate).known()) throw UnknownPredicate(predicate.str());
    std::map<std::string, std::pair<Term, std::size_t>> counts;
    for (const auto& t : graph.match(std::nullopt, predicate, std::nullopt)) {
        auto [it, inserted] = counts.try_emplace(rdf::to_ntriples(t.object()), t.object(), 0);
        ++it->second.second;
    }
    std::vector<std::pair<Term, std::size_t>> out;
    for (auto& [key, entry] : counts) out.push_back(std::move(entry));
    // `counts` iterates in N-Triples order, so a stable sort keeps ties ordered.
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
}

GroupedResult grouped_distribution(const rdf::Graph& graph, const onto::Ontology& ontology,
                                   const Iri& value_predicate, const std::vector<TriplePattern>& group_path,
                                   const BinSpec& bins) {
    const auto spec = ontology.property_spec(value_predicate);
    if (!spec.known()) throw UnknownPredicate(value_predicate.str());
    if (spec.property && spec.property->kind != onto::PropertyKind::datatype)
        throw QueryError("<" + value_predicate.str() + "> is not a datatype property");
    bool has_node = false, has_group = false;
    for (const auto& p : group_path)
        for (const auto& v : p.variables()) {
            has_node |= v == "node";
            has_group |= v == "group";
        }
    if (!has_node || !has_group) throw QueryError("group path must bind ?node and ?group");

    // (group label, node) pairs, each value-bearing node counted once per group.
    std::map<std::string, std::map<std::string, Term>> members;
    for (const auto& b : bgp_match(graph, group_path)) {
        const Term& g = b.at("group");
        const std::string label = rdf::is_iri(g) ? std::string(std::get<Iri>(g).local_name()) : rdf::to_ntriples(g);
        members[label].try_emplace(rdf::to_ntriples(b.at("node")), b.at("node"));
    }

    GroupedResult r;
    std::map<std::string, std::vector<double>> values;
    std::vector<double> all;
    for (const auto& [group, nodes] : members) {
        for (const auto& [key, node] : nodes) {
            for (const auto& t : graph.match(node, value_predicate, std::nullopt)) {
                const auto* lit = std::get_if<rdf::Literal>(&t.object());
                std::optional<double> v = lit ? parse_number(lit->lexical()) : std::nullopt;
                if (!v) {
                    ++r.skipped_literals;
                    continue;
                }
                values[group].push_back(*v);
                all.push_back(*v);
            }
        }
    }
    if (r.skipped_literals)
        r.warnings.push_back("skipped " + std::to_string(r.skipped_literals) + " non-numeric value(s) of <" +
                             value_predicate.str() + ">");
    if (all.empty()) {
        r.warnings.push_back("no values of <" + value_predicate.str() + "> reachable from any group");
        return r;
    }
    const auto edges = bins.kind == Binning::log_decade ? log_decade_edges(all) : fixed_width_edges(all, bins.width);
    for (auto& [group, vs] : values) {
        std::sort(vs.begin(), vs.end());
        GroupDistribution d;
        d.histogram = make_histogram(vs, edges);
        normalize(d.histogram);
        d.summary = summarize(group, vs);
        d.values = vs;
        r.groups.emplace(group, std::move(d));
    }
    return r;
}

}  // namespace lexkg::analytics
