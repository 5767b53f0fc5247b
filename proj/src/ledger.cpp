#include "sdc/ledger.hpp"

#include <algorithm>

namespace sdc::ledger {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t balance_of(const SeriesBook& book, const std::string& holder) {
    auto it = book.holders.find(holder);
    return it == book.holders.end() ? 0 : it->second;
}

class Applier {
public:
    Applier(LedgerState& state, const LedgerEvent& event) : state_(state), event_(event) {}

    [[noreturn]] void reject(Rejection reason, const std::string& detail) const {
        throw LedgerError(reason, event_.sequence, detail);
    }

    void require(bool condition, Rejection reason, const std::string& detail) const {
        if (!condition) {
            reject(reason, detail);
        }
    }

    SeriesBook& book() {
        auto it = state_.books.find(event_.series_id);
        if (it == state_.books.end()) {
            reject(Rejection::unknown_series, "series '" + event_.series_id + "' has not been issued");
        }
        return it->second;
    }

    void debit(SeriesBook& b, const std::string& holder, std::uint64_t units) {
        const std::uint64_t held = balance_of(b, holder);
        require(held >= units, Rejection::insufficient_balance,
                holder + " holds " + std::to_string(held) + " units, needs " + std::to_string(units));
        if (held == units) {
            b.holders.erase(holder);
        } else {
            b.holders[holder] = held - units;
        }
    }

    void require_units(std::uint64_t units) const {
        require(units >= 1, Rejection::invalid_event, "units must be at least 1");
    }

    void require_name(const std::string& name, const char* role) const {
        require(!name.empty(), Rejection::invalid_event, std::string(role) + " must not be empty");
    }

    DayCount age(const SeriesBook& b) const { return DayCount{static_cast<std::uint64_t>(event_.day - b.issue_day)}; }

    void operator()(const SeriesIssued& e) {
        require(!state_.books.contains(event_.series_id), Rejection::invalid_event,
                "series '" + event_.series_id + "' already issued");
        require(e.series.series_id == event_.series_id, Rejection::invalid_event,
                "event series id does not match the issued series");
        try {
            e.series.validate();
        } catch (const ValidationError& err) {
            reject(Rejection::invalid_event, err.what());
        }
        SeriesBook b;
        b.series = e.series;
        b.issue_day = event_.day;
        b.decay.push_back({event_.day, e.series.survival_coefficient});
        b.vault_grams = e.series.unit_weight.in_grams() * Decimal(e.series.issue_count);
        b.issuer_accrued_grams = b.vault_grams;
        state_.books.emplace(event_.series_id, std::move(b));
    }

    void sell(SeriesBook& b, std::uint64_t units, const std::string& buyer) {
        require_units(units);
        require_name(buyer, "buyer");
        require(units <= b.available_for_sale(), Rejection::over_issuance,
                "selling " + std::to_string(units) + " units but only " + std::to_string(b.available_for_sale()) +
                    " remain unissued to holders");
        b.holders[buyer] += units;
        b.outstanding_units += units;
        b.issuer_accrued_grams -= Decimal(units) * b.claim_per_unit(event_.day);
    }

    void operator()(const UnitsSold& e) {
        SeriesBook& b = book();
        require(e.price.amount() >= 0, Rejection::invalid_event, "price must be non-negative");
        sell(b, e.units, e.buyer);
    }

    void operator()(const UnitsSoldInKind& e) {
        SeriesBook& b = book();
        require_units(e.units);
        const InKindCost due = in_kind_purchase_cost(b.series, e.units, age(b));
        require(e.metal_in.in_grams() >= due.metal_due.surfaced(), Rejection::invalid_event,
                "metal delivered " + e.metal_in.str() + " g is below the " + due.metal_due.str() + " g due");
        require(e.fee == due.fee, Rejection::invalid_event,
                "inspection fee " + e.fee.tagged() + " does not match the announced " + due.fee.tagged());
        sell(b, e.units, e.buyer);
        b.vault_grams += e.metal_in.in_grams();
        b.issuer_accrued_grams += e.metal_in.in_grams();
    }

    void operator()(const Transferred& e) {
        SeriesBook& b = book();
        require_units(e.units);
        require_name(e.to, "recipient");
        require(e.from != e.to, Rejection::invalid_event, "transfer to self");
        debit(b, e.from, e.units);
        b.holders[e.to] += e.units;
    }

    void operator()(const Redeemed& e) {
        SeriesBook& b = book();
        require_units(e.units);
        debit(b, e.holder, e.units);
        const Decimal claim = Decimal(e.units) * b.claim_per_unit(event_.day);
        Weight expected;
        try {
            expected = deliverable_lot(b.series, Weight::grams(claim * (Decimal{1} - b.series.delivery_fee_rate)));
        } catch (const DomainError& err) {
            reject(Rejection::invalid_event, err.what());
        }
        require(e.deliverable == expected, Rejection::invalid_event,
                "deliverable " + e.deliverable.str() + " g does not match settlement " + expected.str() + " g");
        require(e.top_up.amount() >= 0, Rejection::invalid_event, "top-up must be non-negative");
        require(b.vault_grams >= expected.in_grams(), Rejection::invalid_event, "vault cannot cover the delivery");
        b.outstanding_units -= e.units;
        b.destroyed_units += e.units;
        b.vault_grams -= expected.in_grams();
        b.issuer_accrued_grams += claim - expected.in_grams();
    }

    void operator()(const BoughtBack& e) {
        SeriesBook& b = book();
        require_units(e.units);
        require(e.payout.amount() >= 0, Rejection::invalid_event, "payout must be non-negative");
        debit(b, e.holder, e.units);
        b.outstanding_units -= e.units;
        b.issuer_accrued_grams += Decimal(e.units) * b.claim_per_unit(event_.day);
    }

    void operator()(const OverdueRepriced& e) {
        SeriesBook& b = book();
        require(e.new_coefficient > 0 && e.new_coefficient < 1, Rejection::invalid_event,
                "overdue coefficient must be in (0, 1)");
        require(e.effective_day >= b.expiry_day(), Rejection::invalid_event,
                "overdue repricing cannot take effect before expiry");
        require(e.effective_day >= event_.day, Rejection::day_regression,
                "overdue repricing cannot take effect retroactively");
        require(e.effective_day >= b.decay.back().start_day, Rejection::day_regression,
                "overdue repricing precedes an earlier repricing");
        if (b.decay.size() > 1 && b.decay.back().start_day == e.effective_day) {
            b.decay.back().survival = Decimal{1} - e.new_coefficient;
        } else {
            b.decay.push_back({e.effective_day, Decimal{1} - e.new_coefficient});
        }
    }

private:
    LedgerState& state_;
    const LedgerEvent& event_;
};

}  // namespace

std::string_view kind_name(const EventBody& body) {
    return std::visit(overloaded{
                          [](const SeriesIssued&) { return std::string_view("SeriesIssued"); },
                          [](const UnitsSold&) { return std::string_view("UnitsSold"); },
                          [](const UnitsSoldInKind&) { return std::string_view("UnitsSoldInKind"); },
                          [](const Transferred&) { return std::string_view("Transferred"); },
                          [](const Redeemed&) { return std::string_view("Redeemed"); },
                          [](const BoughtBack&) { return std::string_view("BoughtBack"); },
                          [](const OverdueRepriced&) { return std::string_view("OverdueRepriced"); },
                      },
                      body);
}

std::string_view rejection_name(Rejection r) {
    switch (r) {
        case Rejection::unknown_series: return "unknown series";
        case Rejection::insufficient_balance: return "insufficient balance";
        case Rejection::day_regression: return "day regression";
        case Rejection::over_issuance: return "over-issuance";
        case Rejection::sequence_regression: return "sequence regression";
        case Rejection::invalid_event: return "invalid event";
    }
    return "rejected";
}

LedgerError::LedgerError(Rejection reason, std::uint64_t sequence, const std::string& detail)
    : DomainError("event " + std::to_string(sequence) + " rejected (" + std::string(rejection_name(reason)) +
                  "): " + detail),
      reason_(reason),
      sequence_(sequence) {}

std::int64_t SeriesBook::expiry_day() const {
    return issue_day + static_cast<std::int64_t>(series.lifetime().days);
}

Decimal SeriesBook::claim_per_unit(std::int64_t day) const {
    Decimal factor{1};
    for (std::size_t i = 0; i < decay.size(); ++i) {
        const std::int64_t start = decay[i].start_day;
        const std::int64_t end = i + 1 < decay.size() ? std::min(day, decay[i + 1].start_day) : day;
        if (end > start) {
            factor *= pow_by_squaring(decay[i].survival, static_cast<std::uint64_t>(end - start));
        }
    }
    return series.unit_weight.in_grams() * factor;
}

Decimal SeriesBook::holder_claims(std::int64_t day) const {
    return Decimal(outstanding_units) * claim_per_unit(day);
}

const SeriesBook& LedgerState::book(const std::string& series_id) const {
    auto it = books.find(series_id);
    if (it == books.end()) {
        throw DomainError("unknown series '" + series_id + "'");
    }
    return it->second;
}

Decimal LedgerState::conservation_gap(const std::string& series_id) const {
    const SeriesBook& b = book(series_id);
    return b.vault_grams - (b.holder_claims(day) + b.issuer_accrued_grams);
}

LedgerState append(LedgerState state, const LedgerEvent& event) {
    if (state.last_sequence && event.sequence <= *state.last_sequence) {
        throw LedgerError(Rejection::sequence_regression, event.sequence,
                          "sequence must exceed " + std::to_string(*state.last_sequence));
    }
    if (event.day < state.day || event.day < 0) {
        throw LedgerError(Rejection::day_regression, event.sequence,
                          "day " + std::to_string(event.day) + " precedes ledger day " + std::to_string(state.day));
    }
    if (event.day > state.day) {
        for (auto& [id, b] : state.books) {
            if (b.outstanding_units == 0) {
                continue;
            }
            const Decimal decayed = b.holder_claims(state.day) - b.holder_claims(event.day);
            b.issuer_accrued_grams += decayed;
            b.extracted_grams += decayed;
        }
        state.day = event.day;
    }
    Applier applier(state, event);
    std::visit(applier, event.body);
    state.last_sequence = event.sequence;
    ++state.event_count;
    return state;
}

LedgerState replay(std::span<const LedgerEvent> events) {
    LedgerState state;
    for (const auto& e : events) {
        state = append(std::move(state), e);
    }
    return state;
}

}  // namespace sdc::ledger
