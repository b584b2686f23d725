#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace lexkg::extract {

/// Money in integer picodollars (1e-12 USD), so sums are exact and additive.
class UsdAmount {
public:
    constexpr UsdAmount() = default;
    static constexpr UsdAmount from_picodollars(std::int64_t p) { return UsdAmount(p); }

    constexpr std::int64_t picodollars() const noexcept { return pico_; }
    double usd() const noexcept { return static_cast<double>(pico_) / 1e12; }
    /// Fixed-point rendering with `decimals` digits, e.g. "2.4996".
    std::string to_string(int decimals = 6) const;

    friend constexpr UsdAmount operator+(UsdAmount a, UsdAmount b) { return UsdAmount(a.pico_ + b.pico_); }
    constexpr UsdAmount& operator+=(UsdAmount o) {
        pico_ += o.pico_;
        return *this;
    }
    friend constexpr auto operator<=>(UsdAmount, UsdAmount) = default;

private:
    constexpr explicit UsdAmount(std::int64_t p) : pico_(p) {}
    std::int64_t pico_ = 0;
};

/// USD per one million tokens.
struct PriceTable {
    double input_per_million = 0.15;
    double output_per_million = 0.60;
};

struct CostRecord {
    std::size_t input_tokens = 0;
    std::size_t output_tokens = 0;
    std::size_t requests = 0;
    UsdAmount cost;

    CostRecord& operator+=(const CostRecord& o);
};

/// input_tokens * price_in + output_tokens * price_out. Prices are resolved to
/// micro-USD per million tokens.
UsdAmount price_tokens(std::size_t input_tokens, std::size_t output_tokens, const PriceTable& prices);

CostRecord make_cost_record(std::size_t input_tokens, std::size_t output_tokens, std::size_t requests,
                            const PriceTable& prices);

/// Sum of per-record costs, recomputed from the token counts.
UsdAmount estimate_cost(std::span<const CostRecord> records, const PriceTable& prices);

struct CostSummary {
    std::size_t documents = 0;
    std::size_t input_tokens = 0;
    std::size_t output_tokens = 0;
    std::size_t requests = 0;
    UsdAmount total;
    double per_document_usd = 0.0;
    double per_thousand_documents_usd = 0.0;
};

CostSummary summarize_cost(std::span<const CostRecord> records, const PriceTable& prices);

}  // namespace lexkg::extract
