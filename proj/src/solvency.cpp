#include "sdc/solvency.hpp"

#include <deque>
#include <map>

#include "sdc/error.hpp"

namespace sdc::solvency {

void RedemptionRecord::validate() const {
    check(tokens >= 1, "redemption record for " + customer_id + " must cover at least one token");
    check(redeem_time >= buy_time, "redemption record for " + customer_id + " redeems before it buys");
}

void IssuerFeeModel::validate() const {
    require_same_currency(processing_fee_per_token, warehouse_rate);
    check(processing_fee_per_token.amount() >= 0, "processing fee must be non-negative");
    check(warehouse_rate.amount() >= 0, "warehouse rate must be non-negative");
    check(grams_per_token.in_grams() > 0, "grams per token must be positive");
}

Decimal IssuerFeeModel::per_token_day(const Decimal& rate_per_unit_day) const {
    const Decimal unit_grams = rate_unit == RateUnit::gram ? Decimal{1} : kTroyOunceGrams;
    return rate_per_unit_day * divide(grams_per_token.in_grams(), unit_grams);
}

MoneyAmount gross_profit(std::span<const RedemptionRecord> records, const IssuerFeeModel& fees) {
    fees.validate();
    MoneyAmount total(fees.processing_fee_per_token.currency(), 0);
    for (const auto& r : records) {
        r.validate();
        total += fees.processing_fee_per_token * Decimal(r.tokens);
    }
    return total;
}

MoneyAmount warehouse_cost(std::span<const RedemptionRecord> records, const IssuerFeeModel& fees) {
    fees.validate();
    const Decimal per_token_day = fees.cost_per_token_day();
    Decimal total{0};
    for (const auto& r : records) {
        r.validate();
        total += per_token_day * Decimal(r.tokens) * Decimal(r.redeem_time - r.buy_time);
    }
    return {fees.warehouse_rate.currency(), total};
}

Verdict is_insolvent(std::span<const RedemptionRecord> records, const IssuerFeeModel& fees) {
    const MoneyAmount profit = gross_profit(records, fees);
    const MoneyAmount cost = warehouse_cost(records, fees);
    return {cost.amount() > profit.amount(), profit - cost};
}

std::optional<Decimal> breakeven_horizon(const IssuerFeeModel& fees) {
    fees.validate();
    const Decimal per_token_day = fees.cost_per_token_day();
    if (per_token_day == 0) {
        return std::nullopt;
    }
    return divide(fees.processing_fee_per_token.amount(), per_token_day);
}

Simulation simulate_issuer(std::span<const TimelineEntry> timeline, const IssuerFeeModel& fees,
                           const Decimal& invest_yield, std::int64_t horizon_day) {
    fees.validate();
    check(invest_yield >= 0, "investment yield must be non-negative");
    check(horizon_day >= 0, "horizon day must be non-negative");
    for (std::size_t i = 0; i < timeline.size(); ++i) {
        check(timeline[i].day >= 0, "timeline days must be non-negative");
        check(timeline[i].tokens >= 1, "timeline entries must move at least one token");
        if (i > 0 && timeline[i].day < timeline[i - 1].day) {
            throw DomainError("timeline is not sorted by day at entry " + std::to_string(i));
        }
    }

    const Currency currency = fees.processing_fee_per_token.currency();
    const Decimal cost_rate = fees.cost_per_token_day();
    const Decimal yield_rate = fees.per_token_day(invest_yield);
    const Decimal& fee = fees.processing_fee_per_token.amount();

    struct Lot {
        std::uint64_t tokens;
        std::int64_t day;
    };
    std::map<std::string, std::deque<Lot>> open;

    Simulation sim;
    sim.rows.reserve(static_cast<std::size_t>(horizon_day) + 1);
    Decimal profit{0};
    Decimal cost{0};
    Decimal yield{0};
    std::uint64_t held = 0;
    std::size_t next = 0;

    for (std::int64_t day = 0; day <= horizon_day; ++day) {
        if (day > 0 && held > 0) {
            const Decimal tokens(held);
            cost += cost_rate * tokens;
            yield += yield_rate * tokens;
        }
        for (; next < timeline.size() && timeline[next].day == day; ++next) {
            const auto& entry = timeline[next];
            auto& lots = open[entry.customer_id];
            if (entry.action == Action::purchase) {
                profit += fee * Decimal(entry.tokens);
                lots.push_back({entry.tokens, day});
                held += entry.tokens;
                continue;
            }
            std::uint64_t remaining = entry.tokens;
            std::uint64_t available = 0;
            for (const auto& lot : lots) {
                available += lot.tokens;
            }
            if (available < remaining) {
                throw DomainError("customer " + entry.customer_id + " redeems " + std::to_string(remaining) +
                                  " tokens but holds " + std::to_string(available));
            }
            while (remaining > 0) {
                Lot& lot = lots.front();
                const std::uint64_t taken = std::min(lot.tokens, remaining);
                sim.records.push_back({entry.customer_id, taken, lot.day, day});
                lot.tokens -= taken;
                remaining -= taken;
                if (lot.tokens == 0) {
                    lots.pop_front();
                }
            }
            held -= entry.tokens;
        }
        DayRow row{day, held, {currency, profit}, {currency, cost}, {currency, yield}, {currency, profit + yield - cost}};
        if (!sim.first_insolvency_day && cost > profit + yield) {
            sim.first_insolvency_day = day;
        }
        sim.rows.push_back(std::move(row));
    }
    if (next < timeline.size()) {
        throw DomainError("timeline entry on day " + std::to_string(timeline[next].day) + " lies beyond horizon day " +
                          std::to_string(horizon_day));
    }
    for (const auto& [customer, lots] : open) {
        for (const auto& lot : lots) {
            sim.records.push_back({customer, lot.tokens, lot.day, horizon_day});
        }
    }
    return sim;
}

}  // namespace sdc::solvency
