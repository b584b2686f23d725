#include "lexkg/cost.hpp"

#include <cmath>

#include "lexkg/errors.hpp"

namespace lexkg::extract {

namespace {
std::int64_t micro_usd(double usd) {
    if (!(usd >= 0.0) || !std::isfinite(usd)) throw ConfigError("prices must be finite and non-negative");
    return static_cast<std::int64_t>(std::llround(usd * 1e6));
}
}  // namespace

std::string UsdAmount::to_string(int decimals) const {
    if (decimals < 0) decimals = 0;
    if (decimals > 12) decimals = 12;
    std::int64_t scale = 1;
    for (int i = 0; i < 12 - decimals; ++i) scale *= 10;
    const bool negative = pico_ < 0;
    std::int64_t v = negative ? -pico_ : pico_;
    v = (v + scale / 2) / scale;  // round half up
    std::int64_t unit = 1;
    for (int i = 0; i < decimals; ++i) unit *= 10;
    std::string out = (negative ? "-" : "") + std::to_string(v / unit);
    if (decimals > 0) {
        std::string frac = std::to_string(v % unit);
        out += "." + std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
    }
    return out;
}

CostRecord& CostRecord::operator+=(const CostRecord& o) {
    input_tokens += o.input_tokens;
    output_tokens += o.output_tokens;
    requests += o.requests;
    cost += o.cost;
    return *this;
}

UsdAmount price_tokens(std::size_t input_tokens, std::size_t output_tokens, const PriceTable& prices) {
    // tokens * (micro-USD per 1e6 tokens) is exactly picodollars.
    const auto in = static_cast<std::int64_t>(input_tokens) * micro_usd(prices.input_per_million);
    const auto out = static_cast<std::int64_t>(output_tokens) * micro_usd(prices.output_per_million);
    return UsdAmount::from_picodollars(in + out);
}

CostRecord make_cost_record(std::size_t input_tokens, std::size_t output_tokens, std::size_t requests,
                            const PriceTable& prices) {
    return CostRecord{input_tokens, output_tokens, requests, price_tokens(input_tokens, output_tokens, prices)};
}

UsdAmount estimate_cost(std::span<const CostRecord> records, const PriceTable& prices) {
    UsdAmount total;
    for (const auto& r : records) total += price_tokens(r.input_tokens, r.output_tokens, prices);
    return total;
}

CostSummary summarize_cost(std::span<const CostRecord> records, const PriceTable& prices) {
    CostSummary s;
    s.documents = records.size();
    for (const auto& r : records) {
        s.input_tokens += r.input_tokens;
        s.output_tokens += r.output_tokens;
        s.requests += r.requests;
    }
    s.total = estimate_cost(records, prices);
    if (s.documents > 0) {
        s.per_document_usd = s.total.usd() / static_cast<double>(s.documents);
        s.per_thousand_documents_usd = s.per_document_usd * 1000.0;
    }
    return s;
}

}  // namespace lexkg::extract
