#include <array>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "lexkg/analytics.hpp"

namespace lexkg::analytics {

std::string csv_field(std::string_view value) {
    if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_rows(const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_field(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0) return "0";
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return ec == std::errc() ? std::string(buf.data(), ptr) : std::to_string(v);
}

namespace {

void append_histogram_rows(std::vector<std::vector<std::string>>& rows, const Histogram& h, const std::string& group) {
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        rows.push_back({format_number(h.bin_edges[i]), format_number(h.bin_edges[i + 1]), std::to_string(h.counts[i]),
                        h.normalized ? format_number((*h.normalized)[i]) : "", group});
    }
}

const std::vector<std::string> kHistogramHeader{"bin_lo", "bin_hi", "count", "fraction", "group"};

}  // namespace

std::string histogram_csv(const Histogram& h, const std::string& group) {
    std::vector<std::vector<std::string>> rows{kHistogramHeader};
    append_histogram_rows(rows, h, group);
    return csv_rows(rows);
}

std::string grouped_csv(const GroupedResult& r) {
    std::vector<std::vector<std::string>> rows{kHistogramHeader};
    for (const auto& [group, d] : r.groups) append_histogram_rows(rows, d.histogram, group);
    return csv_rows(rows);
}

std::string summary_csv(const std::vector<GroupSummary>& summaries) {
    std::vector<std::vector<std::string>> rows{{"group", "n", "mean", "median", "q1", "q3", "min", "max"}};
    for (const auto& s : summaries)
        rows.push_back({s.group, std::to_string(s.n), format_number(s.mean), format_number(s.median),
                        format_number(s.q1), format_number(s.q3), format_number(s.min), format_number(s.max)});
    return csv_rows(rows);
}

std::string counts_csv(const std::vector<std::pair<std::string, std::size_t>>& counts, std::string_view key_header) {
    std::vector<std::vector<std::string>> rows{{std::string(key_header), "count"}};
    for (const auto& [k, n] : counts) rows.push_back({k, std::to_string(n)});
    return csv_rows(rows);
}

std::string plot_data_json(const GroupedResult& r) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json groups = nlohmann::ordered_json::object();
    for (const auto& [name, d] : r.groups) {
        const auto& s = d.summary;
        nlohmann::ordered_json g;
        g["summary"] = {{"n", s.n},       {"mean", s.mean}, {"median", s.median}, {"q1", s.q1},
                        {"q3", s.q3},     {"min", s.min},   {"max", s.max}};
        g["bin_edges"] = d.histogram.bin_edges;
        g["counts"] = d.histogram.counts;
        g["fractions"] = d.histogram.normalized ? *d.histogram.normalized : std::vector<double>{};
        g["values"] = d.values;
        groups[name] = g;
    }
    j["groups"] = groups;
    if (r.groups.size() == 2) {
        auto it = r.groups.begin();
        const auto& a = it->second.values;
        const auto& b = (++it)->second.values;
        j["ks"] = ks_statistic(a, b);
    }
    j["skipped_literals"] = r.skipped_literals;
    j["warnings"] = r.warnings;
    return j.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
}

}  // namespace lexkg::analytics
