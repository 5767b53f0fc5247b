#pragma once

// Random valid ledger histories plus an independent bookkeeping oracle:
// the vault is re-derived from event sums and holder claims from a
// day-by-day survival table, neither touching SeriesBook's own formulas.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sdc/ledger.hpp"

namespace sdc::test {

struct OracleBook {
    Decimal unit_grams;
    std::int64_t issue_day = 0;
    std::vector<Decimal> factor{Decimal{1}};  // factor[age] = survival product
    std::vector<std::pair<std::int64_t, Decimal>> survival_from;  // (day, survival) ordered
    Decimal vault{0};
    std::map<std::string, std::uint64_t> holders;

    const Decimal& factor_at(std::int64_t day) {
        const auto age = static_cast<std::size_t>(day - issue_day);
        while (factor.size() <= age) {
            const std::int64_t step_day = issue_day + static_cast<std::int64_t>(factor.size());
            Decimal s = survival_from.front().second;
            for (const auto& [from, value] : survival_from) {
                if (step_day > from) {
                    s = value;
                }
            }
            factor.push_back(factor.back() * s);
        }
        return factor[age];
    }

    Decimal claims(std::int64_t day) {
        std::uint64_t units = 0;
        for (const auto& [h, n] : holders) {
            units += n;
        }
        return Decimal(units) * unit_grams * factor_at(day);
    }
};

struct RandomHistory {
    std::vector<ledger::LedgerEvent> events;
    std::size_t rejected_attempts = 0;
    Decimal worst_gap{0};   // |oracle vault - (oracle claims + issuer accrual)|
    bool vault_matches = true;
    bool claims_match = true;
};

inline RandomHistory random_history(std::uint64_t seed, int steps, bool check_each_step = true) {
    using namespace sdc::ledger;
    std::mt19937_64 rng(seed);
    auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
    const std::vector<std::string> people{"ann", "bob", "cy", "dee"};

    RandomHistory out;
    LedgerState state;
    std::map<std::string, OracleBook> oracle;
    std::uint64_t seq = 0;
    std::int64_t day = pick(0, 3);

    auto commit = [&](LedgerEvent e) -> bool {
        e.sequence = ++seq;
        e.day = day;
        try {
            state = append(state, e);
        } catch (const LedgerError&) {
            ++out.rejected_attempts;
            --seq;
            return false;
        }
        out.events.push_back(std::move(e));
        return true;
    };

    auto check = [&] {
        for (auto& [id, ob] : oracle) {
            const SeriesBook& b = state.book(id);
            if (ob.vault != b.vault_grams) {
                out.vault_matches = false;
            }
            if (ob.holders != b.holders) {
                out.claims_match = false;
            }
            const Decimal claims = ob.claims(state.day);
            if (relative_error(claims, b.holder_claims(state.day)) > dec("1e-40")) {
                out.claims_match = false;
            }
            const Decimal gap = boost::multiprecision::abs(ob.vault - (claims + b.issuer_accrued_grams));
            if (gap > out.worst_gap) {
                out.worst_gap = gap;
            }
        }
    };

    const int series_count = static_cast<int>(pick(1, 2));
    for (int i = 0; i < series_count; ++i) {
        SdcSeries s = au999_series();
        s.series_id = "S" + std::to_string(i);
        s.unit_weight = Weight::grams(random_scaled(rng, 1, 500000, 3));
        s.survival_coefficient = random_scaled(rng, 9900, 10000, 4);
        s.delivery_fee_rate = random_scaled(rng, 0, 30, 3);
        s.min_delivery_weight = Weight::grams(s.unit_weight.in_grams() * Decimal(pick(1, 4)));
        s.issue_count = static_cast<std::uint64_t>(pick(5, 60));
        s.top_up_below_min_lot = pick(0, 1) == 1;
        s.issue_date = parse_date("2030-01-01");
        s.expiry = add_days(s.issue_date, pick(20, 400));
        if (commit({0, 0, s.series_id, SeriesIssued{s}})) {
            OracleBook ob;
            ob.unit_grams = s.unit_weight.in_grams();
            ob.issue_day = day;
            ob.survival_from.push_back({day, s.survival_coefficient});
            ob.vault = s.unit_weight.in_grams() * Decimal(s.issue_count);
            oracle.emplace(s.series_id, std::move(ob));
        }
    }
    if (check_each_step) {
        check();
    }

    for (int step = 0; step < steps; ++step) {
        day += pick(0, 1) == 0 ? 0 : pick(1, 25);
        const std::string id = "S" + std::to_string(pick(0, series_count - 1));
        OracleBook& ob = oracle.at(id);
        const SeriesBook& book = state.book(id);
        const std::string who = people[static_cast<std::size_t>(pick(0, 3))];
        const std::string other = people[static_cast<std::size_t>(pick(0, 3))];
        const std::uint64_t held = ob.holders.contains(who) ? ob.holders.at(who) : 0;
        const std::uint64_t units = static_cast<std::uint64_t>(pick(1, 8));
        const MoneyAmount usd(Currency("USD"), random_scaled(rng, 0, 100000, 2));

        switch (pick(0, 7)) {
            case 0:
            case 1:
                if (commit({0, 0, id, UnitsSold{units, usd, who}})) {
                    ob.holders[who] += units;
                }
                break;
            case 2: {
                const Decimal due = round_half_even(Decimal(units) * ob.unit_grams * ob.factor_at(day), 4);
                const Decimal metal = due + random_scaled(rng, 0, 20, 4);
                const MoneyAmount fee = (book.series.inspection_fee * Decimal(units)).settled();
                if (commit({0, 0, id, UnitsSoldInKind{units, Weight::grams(metal), fee, who}})) {
                    ob.holders[who] += units;
                    ob.vault += metal;
                }
                break;
            }
            case 3:
                if (commit({0, 0, id, Transferred{units, who, other}})) {
                    if ((ob.holders[who] -= units) == 0) {
                        ob.holders.erase(who);
                    }
                    ob.holders[other] += units;
                }
                break;
            case 4: {
                const std::uint64_t n = held > 0 ? static_cast<std::uint64_t>(pick(1, static_cast<std::int64_t>(held))) : units;
                const Decimal redeemable =
                    Decimal(n) * ob.unit_grams * ob.factor_at(day) * (Decimal{1} - book.series.delivery_fee_rate);
                const Decimal lot = book.series.min_delivery_weight.in_grams();
                const Decimal deliverable = boost::multiprecision::ceil(divide(redeemable, lot)) * lot;
                if (commit({0, 0, id, Redeemed{n, who, Weight::grams(deliverable), usd}})) {
                    if ((ob.holders[who] -= n) == 0) {
                        ob.holders.erase(who);
                    }
                    ob.vault -= deliverable;
                }
                break;
            }
            case 5: {
                const std::uint64_t n = held > 0 ? static_cast<std::uint64_t>(pick(1, static_cast<std::int64_t>(held))) : units;
                if (commit({0, 0, id, BoughtBack{n, who, usd}})) {
                    if ((ob.holders[who] -= n) == 0) {
                        ob.holders.erase(who);
                    }
                }
                break;
            }
            case 6: {
                const std::int64_t effective = std::max(day, book.expiry_day()) + pick(0, 5);
                const Decimal rate = random_scaled(rng, 1, 500, 5);
                if (commit({0, 0, id, OverdueRepriced{rate, effective}})) {
                    if (ob.survival_from.size() > 1 && ob.survival_from.back().first == effective) {
                        ob.survival_from.back().second = Decimal{1} - rate;
                    } else {
                        ob.survival_from.push_back({effective, Decimal{1} - rate});
                    }
                }
                break;
            }
            default:
                // deliberately invalid: unknown series or an over-sized transfer
                if (pick(0, 1) == 0) {
                    commit({0, 0, "NOPE", UnitsSold{1, usd, who}});
                } else {
                    commit({0, 0, id, Transferred{held + 1, who, other}});
                }
                break;
        }
        if (check_each_step) {
            check();
        }
    }
    return out;
}

}  // namespace sdc::test
