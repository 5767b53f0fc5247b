#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sdc/core.hpp"
#include "sdc/decimal.hpp"
#include "sdc/error.hpp"
#include "sdc/units.hpp"

namespace sdc::ledger {

struct SeriesIssued {
    SdcSeries series;
    friend bool operator==(const SeriesIssued&, const SeriesIssued&) = default;
};

struct UnitsSold {
    std::uint64_t units = 0;
    MoneyAmount price;
    std::string buyer;
    friend bool operator==(const UnitsSold&, const UnitsSold&) = default;
};

struct UnitsSoldInKind {
    std::uint64_t units = 0;
    Weight metal_in;
    MoneyAmount fee;
    std::string buyer;
    friend bool operator==(const UnitsSoldInKind&, const UnitsSoldInKind&) = default;
};

struct Transferred {
    std::uint64_t units = 0;
    std::string from;
    std::string to;
    friend bool operator==(const Transferred&, const Transferred&) = default;
};

struct Redeemed {
    std::uint64_t units = 0;
    std::string holder;
    Weight deliverable;
    MoneyAmount top_up;
    friend bool operator==(const Redeemed&, const Redeemed&) = default;
};

struct BoughtBack {
    std::uint64_t units = 0;
    std::string holder;
    MoneyAmount payout;
    friend bool operator==(const BoughtBack&, const BoughtBack&) = default;
};

struct OverdueRepriced {
    Decimal new_coefficient;  // extraction rate per day
    std::int64_t effective_day = 0;
    friend bool operator==(const OverdueRepriced&, const OverdueRepriced&) = default;
};

using EventBody = std::variant<SeriesIssued, UnitsSold, UnitsSoldInKind, Transferred, Redeemed, BoughtBack,
                               OverdueRepriced>;

/// `day` is the ledger's own day index; a series' issue day is the day of its
/// SeriesIssued event and certificate age is measured from it.
struct LedgerEvent {
    std::uint64_t sequence = 0;
    std::int64_t day = 0;
    std::string series_id;
    EventBody body;

    friend bool operator==(const LedgerEvent&, const LedgerEvent&) = default;
};

std::string_view kind_name(const EventBody& body);

enum class Rejection {
    unknown_series,
    insufficient_balance,
    day_regression,
    over_issuance,
    sequence_regression,
    invalid_event,
};

std::string_view rejection_name(Rejection r);

class LedgerError : public DomainError {
public:
    LedgerError(Rejection reason, std::uint64_t sequence, const std::string& detail);
    Rejection reason() const noexcept { return reason_; }
    std::uint64_t sequence() const noexcept { return sequence_; }

private:
    Rejection reason_;
    std::uint64_t sequence_;
};

/// From `start_day` on, each day multiplies the claim by `survival`.
struct DecaySegment {
    std::int64_t start_day = 0;
    Decimal survival;
    friend bool operator==(const DecaySegment&, const DecaySegment&) = default;
};

struct SeriesBook {
    SdcSeries series;
    std::int64_t issue_day = 0;
    std::vector<DecaySegment> decay;  // first segment starts at issue_day
    std::map<std::string, std::uint64_t> holders;
    std::uint64_t outstanding_units = 0;
    std::uint64_t destroyed_units = 0;
    Decimal vault_grams{0};
    // Grams not claimed by any holder: unsold stock, decay taken from
    // holders, fees and top-up shortfalls. May dip below zero only when a
    // redemption rounds up out of the issuer's own stock.
    Decimal issuer_accrued_grams{0};
    Decimal extracted_grams{0};  // cumulative decay moved from holders

    std::uint64_t available_for_sale() const { return series.issue_count - destroyed_units - outstanding_units; }
    std::int64_t expiry_day() const;
    /// Claim in grams of one certificate on `day`.
    Decimal claim_per_unit(std::int64_t day) const;
    Decimal holder_claims(std::int64_t day) const;

    friend bool operator==(const SeriesBook&, const SeriesBook&) = default;
};

struct LedgerState {
    std::map<std::string, SeriesBook> books;
    std::uint64_t event_count = 0;
    std::optional<std::uint64_t> last_sequence;
    std::int64_t day = 0;

    const SeriesBook& book(const std::string& series_id) const;
    /// vault - (holder claims + issuer accrual) for one series; zero up to
    /// arithmetic precision when the books balance.
    Decimal conservation_gap(const std::string& series_id) const;

    friend bool operator==(const LedgerState&, const LedgerState&) = default;
};

/// Applies one event; throws LedgerError and leaves `state` untouched on
/// rejection.
LedgerState append(LedgerState state, const LedgerEvent& event);

/// Fold of append from the empty state.
LedgerState replay(std::span<const LedgerEvent> events);

}  // namespace sdc::ledger
