#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdc/decimal.hpp"
#include "sdc/units.hpp"

namespace sdc {

/// The immutable issuance contract of one certificate series.
///
/// Each certificate is backed by `unit_weight` of `metal` at `purity`. The
/// claim of a certificate aged n days is `unit_weight * survival_coefficient^n`;
/// the decayed part pays for warehousing. Physical redemption deducts
/// `delivery_fee_rate` of the claim, a sale back to the issuer deducts
/// `repo_fee_rate`.
struct SdcSeries {
    std::string series_id;
    std::string issuer_id;
    Date issue_date;
    std::string metal;
    Weight unit_weight;
    Decimal purity{1};
    Decimal survival_coefficient{1};
    Date expiry;
    Decimal delivery_fee_rate{0};
    Decimal repo_fee_rate{0};
    Weight min_delivery_weight;
    MoneyAmount inspection_fee;
    std::uint64_t issue_count = 0;
    // When false, a redemption whose net weight is below one delivery lot is
    // rejected; when true it is rounded up to one lot with a cash top-up.
    bool top_up_below_min_lot = false;

    /// Every violated invariant, each prefixed with its field name.
    std::vector<std::string> violations() const;
    /// Throws ValidationError listing all violations.
    void validate() const;

    Decimal extraction_rate() const { return Decimal{1} - survival_coefficient; }
    DayCount lifetime() const { return days_between(issue_date, expiry); }

    friend bool operator==(const SdcSeries&, const SdcSeries&) = default;
};

Weight residual_weight(const SdcSeries& series, std::uint64_t units, DayCount elapsed);

Weight redeemable_weight(const SdcSeries& series, std::uint64_t units, DayCount elapsed);

/// Metal price times markup times the decayed weight, rounded to cents once.
MoneyAmount purchase_price(const SdcSeries& series, std::uint64_t units, DayCount elapsed,
                           const PriceQuote& quote, const Decimal& markup);

struct BuybackValue {
    Weight chargeable;
    MoneyAmount payout;
};

BuybackValue buyback_value(const SdcSeries& series, std::uint64_t units, DayCount elapsed,
                           const PriceQuote& quote);

/// Buy-back of an already computed claim (for instance an overdue one).
BuybackValue buyback_of_claim(const SdcSeries& series, const Weight& residual, const PriceQuote& quote);

/// Claim net of the delivery fee.
Weight redeemable_of_claim(const SdcSeries& series, const Weight& residual);

/// Net redeemable weight rounded up to whole delivery lots. Throws
/// DomainError("below minimum lot") when the series forbids topping up a
/// sub-lot claim.
Weight deliverable_lot(const SdcSeries& series, const Weight& redeemable);

struct Settlement {
    Weight redeemable;
    Weight deliverable;
    MoneyAmount top_up;
};

Settlement settle_redeemable(const SdcSeries& series, const Weight& redeemable, const PriceQuote& quote);

Settlement redemption_settlement(const SdcSeries& series, std::uint64_t units, DayCount elapsed,
                                 const PriceQuote& quote);

struct InKindCost {
    Weight metal_due;
    MoneyAmount fee;
};

InKindCost in_kind_purchase_cost(const SdcSeries& series, std::uint64_t units, DayCount elapsed);

}  // namespace sdc
