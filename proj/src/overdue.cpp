#include "sdc/overdue.hpp"

#include <algorithm>

#include "sdc/error.hpp"

namespace sdc::overdue {

namespace {

void require_samples(std::span<const PeerCoefficientSample> samples) {
    check(!samples.empty(), "no peer data");
    for (const auto& s : samples) {
        s.validate();
    }
}

}  // namespace

void PeerCoefficientSample::validate() const {
    if (coefficient <= 0 || coefficient >= 1) {
        throw DomainError("peer coefficient for " + issuer_id + " must be in (0, 1), got " +
                          to_canonical(coefficient));
    }
    if (std::chrono::sys_days(window.end) < std::chrono::sys_days(window.start)) {
        throw DomainError("peer window for " + issuer_id + " ends before it starts");
    }
}

OverduePolicy::OverduePolicy(Decimal blend_alpha) : alpha_(std::move(blend_alpha)) {
    if (alpha_ < 0 || alpha_ > Decimal{"0.5"}) {
        throw ValidationError("blend_alpha must be in [0, 0.5], got " + to_canonical(alpha_));
    }
}

std::optional<Decimal> successor_coefficient(const SdcSeries& expiring, std::span<const SdcSeries> own_versions) {
    const auto expiry = std::chrono::sys_days(expiring.expiry);
    const SdcSeries* best = nullptr;
    for (const auto& candidate : own_versions) {
        if (candidate.series_id == expiring.series_id || candidate.issuer_id != expiring.issuer_id ||
            candidate.metal != expiring.metal) {
            continue;
        }
        if (std::chrono::sys_days(candidate.issue_date) >= expiry ||
            std::chrono::sys_days(candidate.expiry) <= expiry) {
            continue;
        }
        if (best == nullptr || candidate.issue_date > best->issue_date ||
            (candidate.issue_date == best->issue_date && candidate.series_id > best->series_id)) {
            best = &candidate;
        }
    }
    if (best == nullptr) {
        return std::nullopt;
    }
    return best->extraction_rate();
}

Decimal peer_mean(std::span<const PeerCoefficientSample> samples) {
    require_samples(samples);
    Decimal sum{0};
    for (const auto& s : samples) {
        sum += s.coefficient;
    }
    return divide(sum, Decimal(samples.size()));
}

Decimal peer_max(std::span<const PeerCoefficientSample> samples) {
    require_samples(samples);
    Decimal best = samples.front().coefficient;
    for (const auto& s : samples) {
        best = std::max(best, s.coefficient);
    }
    return best;
}

Decimal overdue_coefficient(std::span<const PeerCoefficientSample> samples, const OverduePolicy& policy) {
    Decimal rate = peer_mean(samples) + policy.blend_alpha() * peer_max(samples);
    if (rate >= 1) {
        throw DomainError("infeasible overdue rate: " + to_canonical(rate));
    }
    return rate;
}

std::vector<PeerCoefficientSample> select_peers(std::span<const PeerCoefficientSample> samples, const Date& expiry,
                                                std::uint64_t look_back_days) {
    const auto end = std::chrono::sys_days(expiry);
    const auto start = end - std::chrono::days(static_cast<std::int64_t>(look_back_days));
    std::vector<PeerCoefficientSample> out;
    for (const auto& s : samples) {
        if (std::chrono::sys_days(s.window.start) >= start && std::chrono::sys_days(s.window.end) <= end) {
            out.push_back(s);
        }
    }
    return out;
}

OverdueRate resolve_overdue_rate(const SdcSeries& expiring, std::span<const SdcSeries> own_versions,
                                 std::span<const PeerCoefficientSample> peers, const OverduePolicy& policy) {
    if (auto successor = successor_coefficient(expiring, own_versions)) {
        return {*successor, RateSource::successor};
    }
    return {overdue_coefficient(peers, policy), RateSource::peer_blend};
}

Weight overdue_residual_weight(const SdcSeries& series, std::uint64_t units, DayCount elapsed,
                               const Decimal& overdue_rate) {
    check(overdue_rate >= 0 && overdue_rate < 1, "overdue rate must be in [0, 1)");
    const DayCount lifetime = series.lifetime();
    if (elapsed <= lifetime) {
        return residual_weight(series, units, elapsed);
    }
    const Decimal late = pow_by_squaring(Decimal{1} - overdue_rate, elapsed.days - lifetime.days);
    return residual_weight(series, units, lifetime) * late;
}

}  // namespace sdc::overdue
