#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdc/decimal.hpp"
#include "sdc/units.hpp"

// Choosing the decay rate from forecasts of storage cost and metal price.
//
// Rates here are extraction fractions per interval (the share of the
// remaining weight taken in that interval). The per-interval survival factor
// applied to certificates is 1 - extraction.
namespace sdc::calibration {

struct IntervalForecast {
    int interval_index = 1;
    MoneyAmount storage_cost_per_gram;
    MoneyAmount metal_price_per_gram;

    void validate() const;
};

struct MinRate {
    Decimal rate;
    bool feasible = true;  // false when storage cost eats the whole weight
};

MinRate min_extraction_rate(const IntervalForecast& forecast);

struct CalibrationResult {
    std::vector<Decimal> per_interval_min_rate;
    Decimal mean_rate;
    // 1 - (prod(1 - rate))^(1/D); audit only. Empty when some rate >= 1.
    std::optional<Decimal> geometric_mean_rate;
    Decimal backlog_correction;
    Decimal extraction_rate;
    Decimal survival_coefficient_per_interval;
    std::string interval_unit;
};

/// Arithmetic mean of the per-interval minima plus an absolute backlog
/// correction. Throws DomainError("infeasible calibration") when the
/// resulting extraction rate reaches 1.
CalibrationResult calibrate(std::span<const IntervalForecast> forecasts, const Decimal& backlog_correction,
                            std::string interval_unit = "day");

struct CoverageReport {
    std::vector<bool> passes;
    std::optional<std::size_t> first_failure;  // index into the forecast list

    bool all_pass() const { return !first_failure.has_value(); }
};

/// Interval d passes iff price(d) * rate >= storage_cost(d).
CoverageReport solvency_check(std::span<const IntervalForecast> forecasts, const Decimal& chosen_rate);

}  // namespace sdc::calibration
