#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdc/decimal.hpp"
#include "sdc/units.hpp"

// Economics of an issuer whose certificates never lose weight: fee income is
// fixed per token while warehousing cost grows with holding time, so a long
// enough holding always bankrupts the issuer.
namespace sdc::solvency {

struct RedemptionRecord {
    std::string customer_id;
    std::uint64_t tokens = 1;
    std::int64_t buy_time = 0;
    std::int64_t redeem_time = 0;

    void validate() const;
};

enum class RateUnit { gram, troy_ounce };

/// Fee income per token and warehousing cost per mass-unit-day. The
/// warehouse rate is quoted per `rate_unit` and converted through the troy
/// ounce constant when the token is denominated in grams.
struct IssuerFeeModel {
    MoneyAmount processing_fee_per_token;
    MoneyAmount warehouse_rate;
    RateUnit rate_unit = RateUnit::gram;
    Weight grams_per_token = Weight::grams(Decimal{1});

    void validate() const;
    /// Warehouse cost of holding one token for one day.
    Decimal cost_per_token_day() const { return per_token_day(warehouse_rate.amount()); }
    /// Converts any rate quoted per `rate_unit` per day to per token per day.
    Decimal per_token_day(const Decimal& rate_per_unit_day) const;
};

MoneyAmount gross_profit(std::span<const RedemptionRecord> records, const IssuerFeeModel& fees);
MoneyAmount warehouse_cost(std::span<const RedemptionRecord> records, const IssuerFeeModel& fees);

struct Verdict {
    bool insolvent = false;
    MoneyAmount margin;  // profit - cost
};

/// Insolvent iff cost strictly exceeds profit.
Verdict is_insolvent(std::span<const RedemptionRecord> records, const IssuerFeeModel& fees);

/// Holding duration in days beyond which one token loses money. Empty when the
/// warehouse rate is zero (never breaks even, never loses).
std::optional<Decimal> breakeven_horizon(const IssuerFeeModel& fees);

enum class Action { purchase, redemption };

struct TimelineEntry {
    std::int64_t day = 0;
    std::string customer_id;
    Action action = Action::purchase;
    std::uint64_t tokens = 1;
};

struct DayRow {
    std::int64_t day = 0;
    std::uint64_t tokens_held = 0;
    MoneyAmount cumulative_profit;
    MoneyAmount cumulative_cost;
    MoneyAmount cumulative_yield;
    MoneyAmount margin;
};

struct Simulation {
    std::vector<DayRow> rows;
    std::optional<std::int64_t> first_insolvency_day;
    // Holdings closed by redemption, plus open ones cut at the horizon.
    std::vector<RedemptionRecord> records;
};

/// Day-by-day accrual from day 0 through `horizon_day`. On each day the
/// previous day's holdings accrue warehouse cost (and investment yield, quoted
/// in the same unit as the warehouse rate), then that day's entries apply.
/// Purchases earn the processing fee immediately. Throws DomainError on an
/// unsorted timeline or a redemption exceeding the customer's holding.
Simulation simulate_issuer(std::span<const TimelineEntry> timeline, const IssuerFeeModel& fees,
                           const Decimal& invest_yield, std::int64_t horizon_day);

}  // namespace sdc::solvency
