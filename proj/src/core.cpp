#include "sdc/core.hpp"

#include "sdc/error.hpp"

namespace sdc {

namespace {

void require_units(std::uint64_t units) {
    check(units >= 1, "units must be at least 1");
}

void require_metal(const SdcSeries& series, const PriceQuote& quote) {
    quote.validate();
    if (quote.metal != series.metal) {
        throw DomainError("quote is for " + quote.metal + " but series " + series.series_id + " is backed by " +
                          series.metal);
    }
}

MoneyAmount value_of(const Weight& weight, const PriceQuote& quote) {
    return MoneyAmount(quote.currency, divide(weight.in_grams() * quote.price_per_troy_ounce, kTroyOunceGrams));
}

}  // namespace

std::vector<std::string> SdcSeries::violations() const {
    std::vector<std::string> out;
    if (series_id.empty()) {
        out.emplace_back("series_id: must not be empty");
    }
    if (issuer_id.empty()) {
        out.emplace_back("issuer_id: must not be empty");
    }
    if (metal.empty()) {
        out.emplace_back("metal: must not be empty");
    }
    if (!issue_date.ok()) {
        out.emplace_back("issue_date: not a valid date");
    }
    if (!expiry.ok()) {
        out.emplace_back("expiry: not a valid date");
    } else if (issue_date.ok() && std::chrono::sys_days(expiry) <= std::chrono::sys_days(issue_date)) {
        out.emplace_back("expiry: must be after issue_date");
    }
    if (unit_weight.in_grams() <= 0) {
        out.emplace_back("unit_weight: must be positive");
    }
    if (purity <= 0 || purity > 1) {
        out.emplace_back("purity: must be in (0, 1], got " + to_canonical(purity));
    }
    if (survival_coefficient <= 0 || survival_coefficient > 1) {
        out.emplace_back("survival_coefficient: must be in (0, 1], got " + to_canonical(survival_coefficient));
    }
    if (delivery_fee_rate < 0 || delivery_fee_rate >= 1) {
        out.emplace_back("delivery_fee_rate: must be in [0, 1), got " + to_canonical(delivery_fee_rate));
    }
    if (repo_fee_rate < 0 || repo_fee_rate >= 1) {
        out.emplace_back("repo_fee_rate: must be in [0, 1), got " + to_canonical(repo_fee_rate));
    }
    if (min_delivery_weight.in_grams() <= 0) {
        out.emplace_back("min_delivery_weight: must be positive");
    }
    if (inspection_fee.amount() < 0) {
        out.emplace_back("inspection_fee: must be non-negative");
    }
    if (issue_count == 0) {
        out.emplace_back("issue_count: must be positive");
    }
    return out;
}

void SdcSeries::validate() const {
    auto problems = violations();
    if (problems.empty()) {
        return;
    }
    std::string message = "invalid series '" + series_id + "':";
    for (const auto& p : problems) {
        message += " " + p + ";";
    }
    message.pop_back();
    throw ValidationError(message);
}

Weight residual_weight(const SdcSeries& series, std::uint64_t units, DayCount elapsed) {
    require_units(units);
    const Decimal survival = pow_by_squaring(series.survival_coefficient, elapsed.days);
    return series.unit_weight * (Decimal(units) * survival);
}

Weight redeemable_of_claim(const SdcSeries& series, const Weight& residual) {
    return residual * (Decimal{1} - series.delivery_fee_rate);
}

Weight redeemable_weight(const SdcSeries& series, std::uint64_t units, DayCount elapsed) {
    return redeemable_of_claim(series, residual_weight(series, units, elapsed));
}

MoneyAmount purchase_price(const SdcSeries& series, std::uint64_t units, DayCount elapsed,
                           const PriceQuote& quote, const Decimal& markup) {
    require_metal(series, quote);
    check(markup >= 0, "markup must be non-negative");
    const Weight weight = residual_weight(series, units, elapsed);
    return (value_of(weight, quote) * (Decimal{1} + markup)).settled();
}

BuybackValue buyback_of_claim(const SdcSeries& series, const Weight& residual, const PriceQuote& quote) {
    require_metal(series, quote);
    const Weight chargeable = residual * (Decimal{1} - series.repo_fee_rate);
    return {chargeable, value_of(chargeable, quote).settled()};
}

BuybackValue buyback_value(const SdcSeries& series, std::uint64_t units, DayCount elapsed,
                           const PriceQuote& quote) {
    return buyback_of_claim(series, residual_weight(series, units, elapsed), quote);
}

Weight deliverable_lot(const SdcSeries& series, const Weight& redeemable) {
    check(redeemable.in_grams() > 0, "redeemable weight must be positive");
    const Decimal& lot = series.min_delivery_weight.in_grams();
    if (redeemable.in_grams() < lot && !series.top_up_below_min_lot) {
        throw DomainError("below minimum lot: " + redeemable.str() + " g is less than one " +
                          series.min_delivery_weight.str() + " g delivery lot");
    }
    const Decimal lots = boost::multiprecision::ceil(divide(redeemable.in_grams(), lot));
    return Weight::grams(lots * lot);
}

Settlement settle_redeemable(const SdcSeries& series, const Weight& redeemable, const PriceQuote& quote) {
    require_metal(series, quote);
    Weight deliverable = deliverable_lot(series, redeemable);
    const Weight gap = deliverable - redeemable;
    return {redeemable, std::move(deliverable), value_of(gap, quote).settled()};
}

Settlement redemption_settlement(const SdcSeries& series, std::uint64_t units, DayCount elapsed,
                                 const PriceQuote& quote) {
    return settle_redeemable(series, redeemable_weight(series, units, elapsed), quote);
}

InKindCost in_kind_purchase_cost(const SdcSeries& series, std::uint64_t units, DayCount elapsed) {
    return {residual_weight(series, units, elapsed), (series.inspection_fee * Decimal(units)).settled()};
}

}  // namespace sdc
