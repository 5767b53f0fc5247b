#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "sdc/core.hpp"
#include "sdc/decimal.hpp"
#include "sdc/units.hpp"

// Decay rate for certificates still outstanding after their expiry.
//
// All coefficients in this namespace are extraction rates per day (1 minus the
// survival factor). The successor rule wins whenever the issuer has a newer
// series outliving the expired one; otherwise the rate is blended from peer
// issuers' series.
namespace sdc::overdue {

struct DateWindow {
    Date start;
    Date end;
};

struct PeerCoefficientSample {
    std::string issuer_id;
    Decimal coefficient;
    DateWindow window;

    void validate() const;
};

class OverduePolicy {
public:
    /// Throws ValidationError unless 0 <= alpha <= 0.5.
    explicit OverduePolicy(Decimal blend_alpha);
    const Decimal& blend_alpha() const noexcept { return alpha_; }

private:
    Decimal alpha_;
};

/// Extraction rate of the issuer's most recently issued series that was issued
/// before `expiring.expiry` and expires after it. Same issuer and metal only.
std::optional<Decimal> successor_coefficient(const SdcSeries& expiring, std::span<const SdcSeries> own_versions);

Decimal peer_mean(std::span<const PeerCoefficientSample> samples);
Decimal peer_max(std::span<const PeerCoefficientSample> samples);

/// peer_mean + alpha * peer_max. Throws DomainError("infeasible overdue rate")
/// when the result reaches 1.
Decimal overdue_coefficient(std::span<const PeerCoefficientSample> samples, const OverduePolicy& policy);

/// Samples whose window lies inside [expiry - look_back_days, expiry].
std::vector<PeerCoefficientSample> select_peers(std::span<const PeerCoefficientSample> samples, const Date& expiry,
                                                std::uint64_t look_back_days);

enum class RateSource { successor, peer_blend };

struct OverdueRate {
    Decimal rate;
    RateSource source;
};

OverdueRate resolve_overdue_rate(const SdcSeries& expiring, std::span<const SdcSeries> own_versions,
                                 std::span<const PeerCoefficientSample> peers, const OverduePolicy& policy);

/// Claim of `units` certificates aged `elapsed` days when days past expiry
/// decay at `overdue_rate` instead of the series' own coefficient.
Weight overdue_residual_weight(const SdcSeries& series, std::uint64_t units, DayCount elapsed,
                               const Decimal& overdue_rate);

}  // namespace sdc::overdue
