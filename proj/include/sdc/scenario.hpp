#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdc/calibration.hpp"
#include "sdc/core.hpp"
#include "sdc/overdue.hpp"
#include "sdc/solvency.hpp"
#include "sdc/units.hpp"

namespace sdc::cli {

/// One problem found in a scenario file. `path` is the field path
/// (`series[0].survival_coefficient`), `line` is 1-based or 0 when unknown.
struct Diagnostic {
    std::string path;
    std::string message;
    int line = 0;

    std::string str() const;
};

struct PricePoint {
    std::int64_t day = 0;
    std::string metal;
    Currency currency;
    Decimal price_per_troy_ounce;
};

enum class EventType { buy, buy_in_kind, transfer, redeem, buyback, reprice };

std::string_view event_type_name(EventType type);

struct TimelineEvent {
    std::int64_t day = 0;
    EventType type = EventType::buy;
    std::string series;
    std::string party;         // buyer, holder, or sender
    std::string counterparty;  // transfer recipient
    std::uint64_t units = 0;
    std::optional<Decimal> markup;
    std::optional<Decimal> rate;                // reprice; resolved from the overdue section when absent
    std::optional<std::int64_t> effective_day;  // reprice; defaults to the event day
    // Published figures to compare against, keyed by report quantity name.
    std::map<std::string, Decimal> reference;
};

struct CalibrationConfig {
    std::string interval_unit = "day";
    Decimal backlog_correction{0};
    std::vector<calibration::IntervalForecast> forecasts;
};

struct OverdueConfig {
    std::string series;
    std::uint64_t look_back_days = 0;
    Decimal blend_alpha{0};
    std::vector<overdue::PeerCoefficientSample> peers;
};

struct SolvencyConfig {
    solvency::IssuerFeeModel fees;
    Decimal invest_yield{0};
    std::int64_t horizon_day = 0;
    std::optional<Decimal> reference_price_per_oz;
    std::vector<solvency::TimelineEntry> timeline;
};

struct ScenarioConfig {
    std::string name;
    Date epoch;
    Currency currency;
    Decimal markup{0};
    std::vector<SdcSeries> series;
    std::vector<PricePoint> prices;
    std::vector<TimelineEvent> events;
    std::optional<CalibrationConfig> calibration;
    std::optional<OverdueConfig> overdue;
    std::optional<SolvencyConfig> solvency;

    const SdcSeries* find_series(const std::string& id) const;
    /// Scenario day of the series' issue date.
    std::int64_t issue_day(const SdcSeries& series) const;
    std::int64_t expiry_day(const SdcSeries& series) const;
    /// Exact-day lookup; no interpolation.
    std::optional<PriceQuote> price_on(std::int64_t day, const std::string& metal) const;
};

struct LoadResult {
    ScenarioConfig config;
    std::vector<Diagnostic> diagnostics;
};

/// Parses and validates a YAML scenario. Every problem found is reported;
/// throws IoError only when the file cannot be read.
LoadResult load_scenario(const std::filesystem::path& path);
LoadResult parse_scenario(const std::string& text);

std::vector<Diagnostic> validate(const std::filesystem::path& path);

}  // namespace sdc::cli
