#include "sdc/calibration.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "sdc/error.hpp"

namespace sdc::calibration {

void IntervalForecast::validate() const {
    const std::string where = "interval " + std::to_string(interval_index) + ": ";
    require_same_currency(storage_cost_per_gram, metal_price_per_gram);
    if (metal_price_per_gram.amount() <= 0) {
        throw DomainError(where + "metal price must be positive");
    }
    if (storage_cost_per_gram.amount() < 0) {
        throw DomainError(where + "storage cost must be non-negative");
    }
}

MinRate min_extraction_rate(const IntervalForecast& forecast) {
    forecast.validate();
    Decimal rate = divide(forecast.storage_cost_per_gram.amount(), forecast.metal_price_per_gram.amount());
    return {rate, rate < 1};
}

CalibrationResult calibrate(std::span<const IntervalForecast> forecasts, const Decimal& backlog_correction,
                            std::string interval_unit) {
    check(!forecasts.empty(), "calibration needs at least one interval forecast");
    check(backlog_correction >= 0, "backlog correction must be non-negative");
    const Currency& currency = forecasts.front().metal_price_per_gram.currency();

    CalibrationResult result;
    result.interval_unit = std::move(interval_unit);
    result.backlog_correction = backlog_correction;

    Decimal sum{0};
    Decimal survival_product{1};
    bool geometric_defined = true;
    for (const auto& f : forecasts) {
        if (!(f.metal_price_per_gram.currency() == currency)) {
            throw DomainError("forecasts mix currencies: " + currency.code() + " and " +
                              f.metal_price_per_gram.currency().code());
        }
        const MinRate m = min_extraction_rate(f);
        sum += m.rate;
        geometric_defined = geometric_defined && m.feasible;
        if (geometric_defined) {
            survival_product *= Decimal{1} - m.rate;
        }
        result.per_interval_min_rate.push_back(m.rate);
    }
    const Decimal count(forecasts.size());
    result.mean_rate = divide(sum, count);
    if (geometric_defined) {
        result.geometric_mean_rate = Decimal{1} - boost::multiprecision::pow(survival_product, divide(Decimal{1}, count));
    }
    result.extraction_rate = result.mean_rate + backlog_correction;
    if (result.extraction_rate >= 1) {
        throw DomainError("infeasible calibration: extraction rate " + to_canonical(result.extraction_rate) +
                          " is not below 1");
    }
    result.survival_coefficient_per_interval = Decimal{1} - result.extraction_rate;
    return result;
}

CoverageReport solvency_check(std::span<const IntervalForecast> forecasts, const Decimal& chosen_rate) {
    CoverageReport report;
    report.passes.reserve(forecasts.size());
    for (std::size_t i = 0; i < forecasts.size(); ++i) {
        // Compared in quotient form against the same rounded minimum that
        // calibrate() averages, so a rate taken from those minima never
        // fails on last-digit rounding.
        const bool ok = chosen_rate >= min_extraction_rate(forecasts[i]).rate;
        report.passes.push_back(ok);
        if (!ok && !report.first_failure) {
            report.first_failure = i;
        }
    }
    return report;
}

}  // namespace sdc::calibration
