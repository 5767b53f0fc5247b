#include "sdc/runner.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>
#include <variant>

#include "sdc/calibration.hpp"
#include "sdc/core.hpp"
#include "sdc/ledger.hpp"
#include "sdc/ledger_log.hpp"
#include "sdc/overdue.hpp"
#include "sdc/solvency.hpp"

namespace sdc::cli {

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::validation: return kExitInvalidConfig;
        case ErrorKind::domain: return kExitDomain;
        case ErrorKind::io: return kExitIo;
    }
    return kExitDomain;
}

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"quote",    "redeem",    "buyback", "calibrate",
                                                "overdue",  "solvency",  "replay",  "validate"};
    return names;
}

namespace {

constexpr const char* kWeightRounding = "half-even 4dp";
constexpr const char* kMoneyRounding = "half-even 2dp";
constexpr const char* kNoRounding = "none";

std::string dec(const Decimal& d) { return to_canonical(d); }

std::string grams4(const Decimal& g) { return format_fixed(g, kWeightPlaces); }

struct Target {
    std::string subject;
    const SdcSeries* series = nullptr;
    std::int64_t day = 0;
    std::uint64_t units = 1;
    Decimal markup;
    bool in_kind = false;
    std::map<std::string, Decimal> reference;
};

struct Claim {
    Weight residual;
    DayCount elapsed;
    std::optional<overdue::OverdueRate> overdue_rate;
};

// A computed figure as surfaced by its module, kept to compare against a
// published reference value.
struct Surfaced {
    Decimal value;
    std::string unit;
};

class Builder {
public:
    Builder(const ScenarioConfig& cfg, const RunOptions& opts) : cfg_(cfg), opts_(opts) {
        report_.scenario = cfg.name;
        report_.subcommand = opts.subcommand;
    }

    Report build() {
        const std::string& sub = opts_.subcommand;
        if (sub == "quote") {
            for (const auto& t : targets({EventType::buy, EventType::buy_in_kind})) {
                quote(t);
            }
        } else if (sub == "redeem") {
            for (const auto& t : targets({EventType::redeem})) {
                redeem(t);
            }
        } else if (sub == "buyback") {
            for (const auto& t : targets({EventType::buyback})) {
                buyback(t);
            }
        } else if (sub == "calibrate") {
            calibrate();
        } else if (sub == "overdue") {
            overdue_rate();
        } else if (sub == "solvency") {
            solvency();
        } else if (sub == "replay") {
            replay();
        } else {
            throw ValidationError("unknown subcommand '" + sub + "'");
        }
        return std::move(report_);
    }

private:
    void row(const std::string& subject, const std::string& quantity, const std::string& value,
             const std::string& unit, const std::string& formula, const std::string& inputs,
             const std::string& rounding) {
        report_.rows.push_back({subject, quantity, value, unit, formula, inputs, rounding});
    }

    void weight_row(const std::string& subject, const std::string& quantity, const Weight& w,
                    const std::string& formula, const std::string& inputs) {
        row(subject, quantity, w.str(), "g", formula, inputs, kWeightRounding);
        surfaced_[quantity] = {w.surfaced(), "g"};
    }

    void money_row(const std::string& subject, const std::string& quantity, const MoneyAmount& m,
                   const std::string& formula, const std::string& inputs) {
        row(subject, quantity, m.str(), m.currency().code(), formula, inputs, kMoneyRounding);
        surfaced_[quantity] = {m.amount(), m.currency().code()};
    }

    // Rows comparing the figures just produced for `t` with its published ones.
    void reference_rows(const Target& t) {
        for (const auto& [quantity, ref] : t.reference) {
            const auto it = surfaced_.find(quantity);
            if (it == surfaced_.end()) {
                throw ValidationError(t.subject + ".reference." + quantity + ": '" + opts_.subcommand +
                                      "' produces no quantity of that name");
            }
            row(t.subject, quantity + "_reference", dec(ref), it->second.unit, "published figure", "", kNoRounding);
            row(t.subject, quantity + "_reference_delta", dec(it->second.value - ref), it->second.unit,
                "computed - published", quantity + "=" + dec(it->second.value) + ";reference=" + dec(ref),
                kNoRounding);
        }
        surfaced_.clear();
    }

    const SdcSeries& pick_series() const {
        if (opts_.series) {
            const SdcSeries* s = cfg_.find_series(*opts_.series);
            if (s == nullptr) {
                throw ValidationError("--series: scenario defines no series '" + *opts_.series + "'");
            }
            return *s;
        }
        if (cfg_.series.size() != 1) {
            throw ValidationError("--series is required when the scenario does not define exactly one series");
        }
        return cfg_.series.front();
    }

    std::vector<Target> targets(std::initializer_list<EventType> types) const {
        auto wanted = [&](EventType t) { return std::find(types.begin(), types.end(), t) != types.end(); };
        std::vector<Target> out;
        if (opts_.day) {
            Target t;
            t.series = &pick_series();
            t.day = *opts_.day;
            t.units = opts_.units.value_or(1);
            t.markup = cfg_.markup;
            t.subject = "day " + std::to_string(t.day) + " x" + std::to_string(t.units);
            check(t.units >= 1, "--units must be at least 1");
            // Published figures of a matching scenario event still apply.
            for (const auto& e : cfg_.events) {
                if (wanted(e.type) && e.type != EventType::buy_in_kind && e.series == t.series->series_id &&
                    e.day == t.day && e.units == t.units) {
                    t.reference = e.reference;
                    if (e.markup) {
                        t.markup = *e.markup;
                    }
                    break;
                }
            }
            out.push_back(std::move(t));
            return out;
        }
        for (std::size_t i = 0; i < cfg_.events.size(); ++i) {
            const auto& e = cfg_.events[i];
            if (!wanted(e.type)) {
                continue;
            }
            Target t;
            t.subject = "events[" + std::to_string(i) + "]";
            t.series = cfg_.find_series(e.series);
            t.day = e.day;
            t.units = e.units;
            t.markup = e.markup.value_or(cfg_.markup);
            t.in_kind = e.type == EventType::buy_in_kind;
            t.reference = e.reference;
            out.push_back(std::move(t));
        }
        return out;
    }

    PriceQuote price(const SdcSeries& s, std::int64_t day) const {
        auto q = cfg_.price_on(day, s.metal);
        if (!q) {
            throw ValidationError("prices: no " + s.metal + " price for day " + std::to_string(day));
        }
        return *q;
    }

    overdue::OverdueRate resolve(const SdcSeries& s) const {
        if (!cfg_.overdue || cfg_.overdue->series != s.series_id) {
            throw DomainError("series " + s.series_id + " is past expiry and the scenario has no overdue section for it");
        }
        const auto peers = overdue::select_peers(cfg_.overdue->peers, s.expiry, cfg_.overdue->look_back_days);
        return overdue::resolve_overdue_rate(s, cfg_.series, peers, overdue::OverduePolicy(cfg_.overdue->blend_alpha));
    }

    DayCount age(const SdcSeries& s, std::int64_t day) const {
        const std::int64_t n = day - cfg_.issue_day(s);
        check(n >= 0, "day " + std::to_string(day) + " precedes the issue of series " + s.series_id);
        return DayCount{static_cast<std::uint64_t>(n)};
    }

    Claim claim(const SdcSeries& s, std::uint64_t units, std::int64_t day) const {
        const DayCount elapsed = age(s, day);
        if (elapsed <= s.lifetime()) {
            return {residual_weight(s, units, elapsed), elapsed, std::nullopt};
        }
        const auto rate = resolve(s);
        return {overdue::overdue_residual_weight(s, units, elapsed, rate.rate), elapsed, rate};
    }

    static std::string decay_inputs(const SdcSeries& s, const Claim& c, std::uint64_t units) {
        std::string in = "W=" + dec(s.unit_weight.in_grams()) + ";theta=" + dec(s.survival_coefficient) +
                         ";n=" + std::to_string(c.elapsed.days) + ";units=" + std::to_string(units);
        if (c.overdue_rate) {
            in += ";lifetime=" + std::to_string(s.lifetime().days) + ";overdue_rate=" + dec(c.overdue_rate->rate);
        }
        return in;
    }

    std::string decay_formula(const Claim& c) const {
        return c.overdue_rate ? "W*theta^L*(1-overdue_rate)^(n-L)*units" : "W*theta^n*units";
    }

    void overdue_rows(const std::string& subject, const Claim& c) {
        if (!c.overdue_rate) {
            return;
        }
        row(subject, "overdue_rate", dec(c.overdue_rate->rate), "per day",
            c.overdue_rate->source == overdue::RateSource::successor ? "successor series extraction rate"
                                                                     : "peer_mean+alpha*peer_max",
            "", kNoRounding);
    }

    void quote(const Target& t) {
        const SdcSeries& s = *t.series;
        const Claim c = claim(s, t.units, t.day);
        check(!c.overdue_rate, "series " + s.series_id + " cannot be sold after expiry");
        const std::string decay_in = decay_inputs(s, c, t.units);
        if (t.in_kind) {
            const InKindCost cost = in_kind_purchase_cost(s, t.units, c.elapsed);
            weight_row(t.subject, "in_kind_metal_due", cost.metal_due, "W*theta^n*units", decay_in);
            money_row(t.subject, "in_kind_fee", cost.fee, "inspection_fee*units",
                      "inspection_fee=" + s.inspection_fee.tagged() + ";units=" + std::to_string(t.units));
            reference_rows(t);
            return;
        }
        const PriceQuote q = price(s, t.day);
        const std::string price_in = ";P=" + dec(q.price_per_troy_ounce) + " " + q.currency.code() +
                                     "/oz;markup=" + dec(t.markup);
        const Claim one = claim(s, 1, t.day);
        weight_row(t.subject, "residual_weight_per_unit", one.residual, "W*theta^n", decay_inputs(s, one, 1));
        weight_row(t.subject, "residual_weight", c.residual, "W*theta^n*units", decay_in);
        money_row(t.subject, "unit_price", purchase_price(s, 1, c.elapsed, q, t.markup),
                  "P/31.1035*W*theta^n*(1+markup)", decay_inputs(s, one, 1) + price_in);
        money_row(t.subject, "total_price", purchase_price(s, t.units, c.elapsed, q, t.markup),
                  "P/31.1035*W*theta^n*units*(1+markup)", decay_in + price_in);
        reference_rows(t);
    }

    void redeem(const Target& t) {
        const SdcSeries& s = *t.series;
        const Claim c = claim(s, t.units, t.day);
        const PriceQuote q = price(s, t.day);
        const std::string decay_in = decay_inputs(s, c, t.units);
        const Weight redeemable = redeemable_of_claim(s, c.residual);
        overdue_rows(t.subject, c);
        weight_row(t.subject, "residual_weight", c.residual, decay_formula(c), decay_in);
        weight_row(t.subject, "delivery_fee_weight", c.residual - redeemable, "residual*lambda",
                   "lambda=" + dec(s.delivery_fee_rate));
        weight_row(t.subject, "redeemable_weight", redeemable, "residual*(1-lambda)",
                   decay_in + ";lambda=" + dec(s.delivery_fee_rate));
        const Settlement st = settle_redeemable(s, redeemable, q);
        weight_row(t.subject, "deliverable_weight", st.deliverable, "ceil(redeemable/lot)*lot",
                   "lot=" + dec(s.min_delivery_weight.in_grams()) +
                       " g;top_up_below_min_lot=" + (s.top_up_below_min_lot ? "true" : "false"));
        money_row(t.subject, "top_up", st.top_up, "(deliverable-redeemable)*P/31.1035",
                  "P=" + dec(q.price_per_troy_ounce) + " " + q.currency.code() + "/oz");
        reference_rows(t);
    }

    void buyback(const Target& t) {
        const SdcSeries& s = *t.series;
        const Claim c = claim(s, t.units, t.day);
        const PriceQuote q = price(s, t.day);
        const std::string decay_in = decay_inputs(s, c, t.units);
        const BuybackValue b = buyback_of_claim(s, c.residual, q);
        overdue_rows(t.subject, c);
        weight_row(t.subject, "residual_weight", c.residual, decay_formula(c), decay_in);
        weight_row(t.subject, "repo_fee_weight", c.residual - b.chargeable, "residual*repo_rate",
                   "repo_rate=" + dec(s.repo_fee_rate));
        weight_row(t.subject, "chargeable_weight", b.chargeable, "residual*(1-repo_rate)",
                   decay_in + ";repo_rate=" + dec(s.repo_fee_rate));
        money_row(t.subject, "payout", b.payout, "chargeable*P/31.1035",
                  "P=" + dec(q.price_per_troy_ounce) + " " + q.currency.code() + "/oz");
        reference_rows(t);
    }

    void calibrate() {
        if (!cfg_.calibration) {
            throw ValidationError("calibration: section required by 'calibrate'");
        }
        const auto& c = *cfg_.calibration;
        const auto result = calibration::calibrate(c.forecasts, c.backlog_correction, c.interval_unit);
        const std::string per = "per " + c.interval_unit;
        for (std::size_t i = 0; i < c.forecasts.size(); ++i) {
            const auto& f = c.forecasts[i];
            const std::string subject = "interval " + std::to_string(f.interval_index);
            const std::string in = "c=" + dec(f.storage_cost_per_gram.amount()) +
                                   ";P=" + dec(f.metal_price_per_gram.amount());
            row(subject, "min_extraction_rate", dec(result.per_interval_min_rate[i]), per, "c/P", in, kNoRounding);
            row(subject, "feasible", calibration::min_extraction_rate(f).feasible ? "true" : "false", "",
                "c/P < 1", in, kNoRounding);
        }
        const std::string n = "D=" + std::to_string(c.forecasts.size());
        row("calibration", "mean_rate", dec(result.mean_rate), per, "sum(c/P)/D", n, kNoRounding);
        row("calibration", "geometric_mean_rate",
            result.geometric_mean_rate ? dec(*result.geometric_mean_rate) : "undefined", per,
            "1-prod(1-c/P)^(1/D)", n, kNoRounding);
        row("calibration", "backlog_correction", dec(result.backlog_correction), per, "configured", "", kNoRounding);
        row("calibration", "extraction_rate", dec(result.extraction_rate), per, "mean_rate+backlog_correction", "",
            kNoRounding);
        row("calibration", "survival_coefficient", dec(result.survival_coefficient_per_interval), per,
            "1-extraction_rate", "", kNoRounding);
        coverage_rows("calibration", c.forecasts, result.extraction_rate);
        for (const auto& s : cfg_.series) {
            row("series " + s.series_id, "extraction_rate", dec(s.extraction_rate()), "per day", "1-theta",
                "theta=" + dec(s.survival_coefficient), kNoRounding);
            coverage_rows("series " + s.series_id, c.forecasts, s.extraction_rate());
        }
    }

    void coverage_rows(const std::string& subject, const std::vector<calibration::IntervalForecast>& forecasts,
                       const Decimal& rate) {
        const auto cov = calibration::solvency_check(forecasts, rate);
        row(subject, "covers_all_intervals", cov.all_pass() ? "true" : "false", "", "P*rate >= c each interval",
            "rate=" + dec(rate), kNoRounding);
        row(subject, "first_uncovered_interval",
            cov.first_failure ? std::to_string(forecasts[*cov.first_failure].interval_index) : "none", "",
            "P*rate >= c each interval", "rate=" + dec(rate), kNoRounding);
    }

    void overdue_rate() {
        if (!cfg_.overdue) {
            throw ValidationError("overdue: section required by 'overdue'");
        }
        const auto& o = *cfg_.overdue;
        const SdcSeries& s = *cfg_.find_series(o.series);
        const std::string subject = "series " + s.series_id;
        const auto successor = overdue::successor_coefficient(s, cfg_.series);
        row(subject, "successor_coefficient", successor ? dec(*successor) : "none", "per day",
            "1-theta of latest own series outliving expiry", "expiry=" + format_date(s.expiry), kNoRounding);
        const auto peers = overdue::select_peers(o.peers, s.expiry, o.look_back_days);
        const std::string window = "look_back_days=" + std::to_string(o.look_back_days) +
                                   ";expiry=" + format_date(s.expiry);
        row(subject, "peer_samples", std::to_string(peers.size()), "", "samples inside the look-back window",
            window + ";configured=" + std::to_string(o.peers.size()), kNoRounding);
        const overdue::OverduePolicy policy(o.blend_alpha);
        if (!peers.empty()) {
            row(subject, "peer_mean", dec(overdue::peer_mean(peers)), "per day", "mean(peer coefficients)", window,
                kNoRounding);
            row(subject, "peer_max", dec(overdue::peer_max(peers)), "per day", "max(peer coefficients)", window,
                kNoRounding);
            row(subject, "peer_blend_coefficient", dec(overdue::overdue_coefficient(peers, policy)), "per day",
                "peer_mean+alpha*peer_max", "alpha=" + dec(o.blend_alpha), kNoRounding);
        }
        const auto resolved = overdue::resolve_overdue_rate(s, cfg_.series, peers, policy);
        row(subject, "overdue_rate", dec(resolved.rate), "per day",
            resolved.source == overdue::RateSource::successor ? "successor" : "peer blend", "", kNoRounding);
        row(subject, "overdue_survival", dec(Decimal{1} - resolved.rate), "per day", "1-overdue_rate", "",
            kNoRounding);
    }

    void solvency() {
        if (!cfg_.solvency) {
            throw ValidationError("solvency: section required by 'solvency'");
        }
        const auto& sc = *cfg_.solvency;
        const auto& fees = sc.fees;
        const std::string unit = fees.rate_unit == solvency::RateUnit::gram ? "gram" : "troy_ounce";
        const std::string fee_in = "fee=" + fees.processing_fee_per_token.tagged() +
                                   ";rate=" + fees.warehouse_rate.tagged() + " per " + unit +
                                   "-day;grams_per_token=" + dec(fees.grams_per_token.in_grams());
        const std::string ccy = fees.processing_fee_per_token.currency().code();
        row("fees", "cost_per_token_day", dec(fees.cost_per_token_day()), ccy, "rate*grams_per_token/unit_grams",
            fee_in, kNoRounding);
        const auto horizon = solvency::breakeven_horizon(fees);
        row("fees", "breakeven_horizon", horizon ? dec(*horizon) : "none", "days", "fee/cost_per_token_day", fee_in,
            kNoRounding);
        if (sc.reference_price_per_oz) {
            row("fees", "fee_share_of_price", dec(divide(fees.processing_fee_per_token.amount(),
                                                         *sc.reference_price_per_oz)),
                "", "fee/price", "price=" + dec(*sc.reference_price_per_oz), kNoRounding);
        }
        const auto sim = solvency::simulate_issuer(sc.timeline, fees, sc.invest_yield, sc.horizon_day);
        const std::string sim_in = "horizon_day=" + std::to_string(sc.horizon_day) +
                                   ";invest_yield=" + dec(sc.invest_yield) +
                                   ";entries=" + std::to_string(sc.timeline.size());
        row("simulation", "first_insolvency_day",
            sim.first_insolvency_day ? std::to_string(*sim.first_insolvency_day) : "none", "day",
            "first day with cost > profit + yield", sim_in, kNoRounding);
        const auto& last = sim.rows.back();
        row("simulation", "cumulative_profit", dec(last.cumulative_profit.amount()), ccy, "sum(fee)", sim_in,
            kNoRounding);
        row("simulation", "cumulative_cost", dec(last.cumulative_cost.amount()), ccy, "sum(cost_per_token_day)",
            sim_in, kNoRounding);
        row("simulation", "cumulative_yield", dec(last.cumulative_yield.amount()), ccy, "sum(yield_per_token_day)",
            sim_in, kNoRounding);
        row("simulation", "margin", dec(last.margin.amount()), ccy, "profit+yield-cost", sim_in, kNoRounding);
        const auto verdict = solvency::is_insolvent(sim.records, fees);
        const std::string rec_in = "records=" + std::to_string(sim.records.size());
        row("records", "gross_profit", dec(solvency::gross_profit(sim.records, fees).amount()), ccy,
            "sum(tokens*fee)", rec_in, kNoRounding);
        row("records", "warehouse_cost", dec(solvency::warehouse_cost(sim.records, fees).amount()), ccy,
            "sum(tokens*cost_per_token_day*(redeem-buy))", rec_in, kNoRounding);
        row("records", "margin", dec(verdict.margin.amount()), ccy, "profit-cost", rec_in, kNoRounding);
        row("records", "insolvent", verdict.insolvent ? "true" : "false", "", "cost > profit", rec_in, kNoRounding);

        Table series;
        series.header = {"day", "tokens_held", "cumulative_profit", "cumulative_cost", "cumulative_yield", "margin",
                         "insolvent"};
        for (const auto& r : sim.rows) {
            series.rows.push_back({std::to_string(r.day), std::to_string(r.tokens_held),
                                   dec(r.cumulative_profit.amount()), dec(r.cumulative_cost.amount()),
                                   dec(r.cumulative_yield.amount()), dec(r.margin.amount()),
                                   r.margin.amount() < 0 ? "true" : "false"});
        }
        report_.tables.emplace_back("solvency_series.csv", std::move(series));
    }

    ledger::EventBody ledger_body(const ledger::LedgerState& state, const TimelineEvent& e) const {
        const SdcSeries& s = *cfg_.find_series(e.series);
        switch (e.type) {
            case EventType::buy: {
                const Decimal markup = e.markup.value_or(cfg_.markup);
                return ledger::UnitsSold{e.units, purchase_price(s, e.units, age(s, e.day), price(s, e.day), markup),
                                         e.party};
            }
            case EventType::buy_in_kind: {
                const InKindCost cost = in_kind_purchase_cost(s, e.units, age(s, e.day));
                return ledger::UnitsSoldInKind{e.units, Weight::grams(cost.metal_due.surfaced()), cost.fee, e.party};
            }
            case EventType::transfer:
                return ledger::Transferred{e.units, e.party, e.counterparty};
            case EventType::redeem:
            case EventType::buyback: {
                const auto it = state.books.find(s.series_id);
                check(it != state.books.end(), "series " + s.series_id + " is not issued");
                const Weight residual = Weight::grams(Decimal(e.units) * it->second.claim_per_unit(e.day));
                if (e.type == EventType::buyback) {
                    return ledger::BoughtBack{e.units, e.party, buyback_of_claim(s, residual, price(s, e.day)).payout};
                }
                const Settlement st = settle_redeemable(s, redeemable_of_claim(s, residual), price(s, e.day));
                return ledger::Redeemed{e.units, e.party, st.deliverable, st.top_up};
            }
            case EventType::reprice: {
                const Decimal rate = e.rate ? *e.rate : resolve(s).rate;
                return ledger::OverdueRepriced{rate, e.effective_day.value_or(std::max(e.day, cfg_.expiry_day(s)))};
            }
        }
        throw DomainError("unknown event type");
    }

    static std::string detail(const ledger::EventBody& body) {
        return std::visit(
            [](const auto& b) -> std::string {
                using T = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<T, ledger::SeriesIssued>) {
                    return "issue_count=" + std::to_string(b.series.issue_count);
                } else if constexpr (std::is_same_v<T, ledger::UnitsSold>) {
                    return "units=" + std::to_string(b.units) + ";buyer=" + b.buyer + ";price=" + b.price.tagged();
                } else if constexpr (std::is_same_v<T, ledger::UnitsSoldInKind>) {
                    return "units=" + std::to_string(b.units) + ";buyer=" + b.buyer +
                           ";metal_in=" + dec(b.metal_in.in_grams()) + " g;fee=" + b.fee.tagged();
                } else if constexpr (std::is_same_v<T, ledger::Transferred>) {
                    return "units=" + std::to_string(b.units) + ";from=" + b.from + ";to=" + b.to;
                } else if constexpr (std::is_same_v<T, ledger::Redeemed>) {
                    return "units=" + std::to_string(b.units) + ";holder=" + b.holder +
                           ";deliverable=" + dec(b.deliverable.in_grams()) + " g;top_up=" + b.top_up.tagged();
                } else if constexpr (std::is_same_v<T, ledger::BoughtBack>) {
                    return "units=" + std::to_string(b.units) + ";holder=" + b.holder + ";payout=" + b.payout.tagged();
                } else {
                    return "rate=" + dec(b.new_coefficient) + ";effective_day=" + std::to_string(b.effective_day);
                }
            },
            body);
    }

    void replay() {
        ledger::LedgerState state;
        std::vector<ledger::LedgerEvent> events;
        Table table;
        table.header = {"seq",       "day",           "series",           "kind",
                        "detail",    "outstanding",   "vault_g",          "holder_claims_g",
                        "issuer_g",  "extracted_g",   "conservation_gap_g"};
        auto apply = [&](ledger::LedgerEvent ev) {
            state = ledger::append(std::move(state), ev);
            const auto& book = state.book(ev.series_id);
            table.rows.push_back({std::to_string(ev.sequence), std::to_string(ev.day), ev.series_id,
                                  std::string(ledger::kind_name(ev.body)), detail(ev.body),
                                  std::to_string(book.outstanding_units), grams4(book.vault_grams),
                                  grams4(book.holder_claims(state.day)), grams4(book.issuer_accrued_grams),
                                  grams4(book.extracted_grams), dec(state.conservation_gap(ev.series_id))});
            events.push_back(std::move(ev));
        };

        if (opts_.log) {
            for (auto& ev : ledger::read_log(*opts_.log)) {
                apply(std::move(ev));
            }
        } else {
            // Series are issued on their issue day, ahead of that day's events.
            std::vector<const SdcSeries*> pending;
            for (const auto& s : cfg_.series) {
                pending.push_back(&s);
            }
            std::stable_sort(pending.begin(), pending.end(), [&](const SdcSeries* a, const SdcSeries* b) {
                return cfg_.issue_day(*a) < cfg_.issue_day(*b);
            });
            std::size_t next_issue = 0;
            std::uint64_t seq = 0;
            auto issue_through = [&](std::int64_t day) {
                while (next_issue < pending.size() && cfg_.issue_day(*pending[next_issue]) <= day) {
                    const SdcSeries& s = *pending[next_issue++];
                    apply({++seq, cfg_.issue_day(s), s.series_id, ledger::SeriesIssued{s}});
                }
            };
            for (const auto& e : cfg_.events) {
                issue_through(e.day);
                apply({++seq, e.day, e.series, ledger_body(state, e)});
            }
            issue_through(std::numeric_limits<std::int64_t>::max());
        }

        row("ledger", "events", std::to_string(state.event_count), "", "count", "", kNoRounding);
        row("ledger", "final_day", std::to_string(state.day), "day", "last event day", "", kNoRounding);
        for (const auto& [id, book] : state.books) {
            const std::string subject = "series " + id;
            const std::string at = "day=" + std::to_string(state.day);
            row(subject, "outstanding_units", std::to_string(book.outstanding_units), "units", "sold-redeemed-bought back",
                "", kNoRounding);
            row(subject, "destroyed_units", std::to_string(book.destroyed_units), "units", "redeemed", "", kNoRounding);
            row(subject, "vault", grams4(book.vault_grams), "g", "issued+metal in-delivered", at, kWeightRounding);
            row(subject, "holder_claims", grams4(book.holder_claims(state.day)), "g", "outstanding*claim_per_unit", at,
                kWeightRounding);
            row(subject, "issuer_accrued", grams4(book.issuer_accrued_grams), "g", "vault-holder_claims", at,
                kWeightRounding);
            row(subject, "extracted", grams4(book.extracted_grams), "g", "decay moved from holders", at,
                kWeightRounding);
            row(subject, "conservation_gap", dec(state.conservation_gap(id)), "g",
                "vault-(holder_claims+issuer_accrued)", at, kNoRounding);
            for (const auto& [holder, units] : book.holders) {
                if (units > 0) {
                    row(subject, "holder " + holder, std::to_string(units), "units", "balance", "", kNoRounding);
                }
            }
        }
        report_.tables.emplace_back("replay_events.csv", std::move(table));
        report_.files.emplace_back("ledger.log", ledger::encode_log(events));
        report_.files.emplace_back("snapshot.json", ledger::encode_snapshot(state));
    }

    const ScenarioConfig& cfg_;
    const RunOptions& opts_;
    Report report_;
    std::map<std::string, Surfaced> surfaced_;
};

std::string_view category(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::validation: return "invalid config";
        case ErrorKind::domain: return "domain error";
        case ErrorKind::io: return "i/o error";
    }
    return "error";
}

}  // namespace

Report build_report(const ScenarioConfig& config, const RunOptions& options) {
    return Builder(config, options).build();
}

int run(const RunOptions& options, std::ostream& out, std::ostream& err) {
    try {
        const auto loaded = load_scenario(options.config);
        if (options.subcommand == "validate") {
            for (const auto& d : loaded.diagnostics) {
                out << d.str() << "\n";
            }
            if (loaded.diagnostics.empty()) {
                out << options.config.string() << ": ok\n";
                return kExitOk;
            }
            return kExitInvalidConfig;
        }
        if (!loaded.diagnostics.empty()) {
            err << "invalid config: " << options.config.string() << "\n";
            for (const auto& d : loaded.diagnostics) {
                err << "  " << d.str() << "\n";
            }
            return kExitInvalidConfig;
        }
        const Report report = build_report(loaded.config, options);
        for (const auto& name : report.write(options.out_dir)) {
            out << (options.out_dir / name).string() << "\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        err << category(e.kind()) << ": " << e.what() << "\n";
        return exit_code(e.kind());
    }
}

}  // namespace sdc::cli
