#include "sdc/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "sdc/error.hpp"

namespace sdc::cli {

std::string Diagnostic::str() const {
    std::string out = path.empty() ? std::string("<root>") : path;
    if (line > 0) {
        out += " (line " + std::to_string(line) + ")";
    }
    return out + ": " + message;
}

std::string_view event_type_name(EventType type) {
    switch (type) {
        case EventType::buy: return "buy";
        case EventType::buy_in_kind: return "buy_in_kind";
        case EventType::transfer: return "transfer";
        case EventType::redeem: return "redeem";
        case EventType::buyback: return "buyback";
        case EventType::reprice: return "reprice";
    }
    return "?";
}

const SdcSeries* ScenarioConfig::find_series(const std::string& id) const {
    for (const auto& s : series) {
        if (s.series_id == id) {
            return &s;
        }
    }
    return nullptr;
}

std::int64_t ScenarioConfig::issue_day(const SdcSeries& s) const {
    return (std::chrono::sys_days(s.issue_date) - std::chrono::sys_days(epoch)).count();
}

std::int64_t ScenarioConfig::expiry_day(const SdcSeries& s) const {
    return (std::chrono::sys_days(s.expiry) - std::chrono::sys_days(epoch)).count();
}

std::optional<PriceQuote> ScenarioConfig::price_on(std::int64_t day, const std::string& metal) const {
    for (const auto& p : prices) {
        if (p.day == day && p.metal == metal) {
            return PriceQuote{p.metal, p.currency, p.price_per_troy_ounce, add_days(epoch, day)};
        }
    }
    return std::nullopt;
}

namespace {

int line_of(const YAML::Node& node) {
    return node.Mark().is_null() ? 0 : node.Mark().line + 1;
}

// Typed field access that records a diagnostic instead of throwing.
class Reader {
public:
    explicit Reader(std::vector<Diagnostic>& diags) : diags_(diags) {}

    void error(const std::string& path, const std::string& message, const YAML::Node& at) {
        diags_.push_back({path, message, line_of(at)});
    }

    // Flags keys outside `allowed`, which catches misspelled optional fields.
    void known_keys(const YAML::Node& map, const std::string& path, std::initializer_list<std::string_view> allowed) {
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                error(join(path, key), "unknown field", kv.first);
            }
        }
    }

    bool is_map(const YAML::Node& node, const std::string& path) {
        if (!node.IsMap()) {
            error(path, "expected a mapping", node);
            return false;
        }
        return true;
    }

    bool is_list(const YAML::Node& node, const std::string& path) {
        if (!node.IsSequence()) {
            error(path, "expected a list", node);
            return false;
        }
        return true;
    }

    std::optional<std::string> text(const YAML::Node& map, const std::string& path, const std::string& key,
                                    bool required = true) {
        const YAML::Node node = map[key];
        if (!node) {
            if (required) {
                error(join(path, key), "required field missing", map);
            }
            return std::nullopt;
        }
        if (!node.IsScalar()) {
            error(join(path, key), "expected a scalar value", node);
            return std::nullopt;
        }
        return node.Scalar();
    }

    template <typename T, typename Convert>
    std::optional<T> field(const YAML::Node& map, const std::string& path, const std::string& key, bool required,
                           Convert convert) {
        auto raw = text(map, path, key, required);
        if (!raw) {
            return std::nullopt;
        }
        try {
            return convert(*raw);
        } catch (const Error& e) {
            error(join(path, key), e.what(), map[key]);
        } catch (const std::exception&) {
            error(join(path, key), "cannot parse '" + *raw + "'", map[key]);
        }
        return std::nullopt;
    }

    std::optional<Decimal> decimal(const YAML::Node& map, const std::string& path, const std::string& key,
                                   bool required = true) {
        return field<Decimal>(map, path, key, required, [](const std::string& s) { return parse_decimal(s); });
    }

    std::optional<Date> date(const YAML::Node& map, const std::string& path, const std::string& key,
                             bool required = true) {
        return field<Date>(map, path, key, required, [](const std::string& s) { return parse_date(s); });
    }

    std::optional<std::int64_t> integer(const YAML::Node& map, const std::string& path, const std::string& key,
                                        bool required = true) {
        return field<std::int64_t>(map, path, key, required, [](const std::string& s) {
            std::size_t used = 0;
            const long long v = std::stoll(s, &used);
            if (used != s.size()) {
                throw ValidationError("expected an integer, got '" + s + "'");
            }
            return static_cast<std::int64_t>(v);
        });
    }

    std::optional<std::uint64_t> count(const YAML::Node& map, const std::string& path, const std::string& key,
                                       bool required = true) {
        auto v = integer(map, path, key, required);
        if (v && *v < 0) {
            error(join(path, key), "must be non-negative", map[key]);
            return std::nullopt;
        }
        return v ? std::optional<std::uint64_t>(static_cast<std::uint64_t>(*v)) : std::nullopt;
    }

    std::optional<bool> boolean(const YAML::Node& map, const std::string& path, const std::string& key) {
        return field<bool>(map, path, key, false, [](const std::string& s) {
            if (s == "true") {
                return true;
            }
            if (s == "false") {
                return false;
            }
            throw ValidationError("expected true or false, got '" + s + "'");
        });
    }

    std::optional<Currency> currency(const YAML::Node& map, const std::string& path, const std::string& key,
                                     bool required = true) {
        return field<Currency>(map, path, key, required, [](const std::string& s) { return Currency(s); });
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

    static std::string index(const std::string& path, std::size_t i) {
        return path + "[" + std::to_string(i) + "]";
    }

private:
    std::vector<Diagnostic>& diags_;
};

// Maps the series' own violation strings ("purity: ...") onto field paths.
std::string series_field_path(std::string_view field) {
    if (field == "unit_weight") {
        return "unit_weight_g";
    }
    if (field == "min_delivery_weight") {
        return "min_delivery_weight_g";
    }
    if (field == "series_id") {
        return "id";
    }
    if (field == "issuer_id") {
        return "issuer";
    }
    return std::string(field);
}

void parse_series(Reader& r, const YAML::Node& list, ScenarioConfig& cfg, const Currency& currency) {
    if (!r.is_list(list, "series")) {
        return;
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const YAML::Node n = list[i];
        const std::string path = Reader::index("series", i);
        if (!r.is_map(n, path)) {
            continue;
        }
        r.known_keys(n, path,
                     {"id", "issuer", "issue_date", "metal", "unit_weight_g", "purity", "survival_coefficient",
                      "expiry", "delivery_fee_rate", "repo_fee_rate", "min_delivery_weight_g", "inspection_fee",
                      "issue_count", "top_up_below_min_lot"});
        SdcSeries s;
        bool complete = true;
        auto need = [&](auto opt, auto& target) {
            if (opt) {
                target = *opt;
            } else {
                complete = false;
            }
        };
        need(r.text(n, path, "id"), s.series_id);
        need(r.text(n, path, "issuer"), s.issuer_id);
        need(r.date(n, path, "issue_date"), s.issue_date);
        need(r.text(n, path, "metal"), s.metal);
        need(r.date(n, path, "expiry"), s.expiry);
        need(r.decimal(n, path, "purity"), s.purity);
        need(r.decimal(n, path, "survival_coefficient"), s.survival_coefficient);
        need(r.decimal(n, path, "delivery_fee_rate"), s.delivery_fee_rate);
        need(r.decimal(n, path, "repo_fee_rate"), s.repo_fee_rate);
        need(r.count(n, path, "issue_count"), s.issue_count);
        // Weights are checked by violations() below, so parse them raw.
        Decimal unit_weight, min_lot, fee;
        need(r.decimal(n, path, "unit_weight_g"), unit_weight);
        need(r.decimal(n, path, "min_delivery_weight_g"), min_lot);
        need(r.decimal(n, path, "inspection_fee"), fee);
        if (auto b = r.boolean(n, path, "top_up_below_min_lot")) {
            s.top_up_below_min_lot = *b;
        }
        if (unit_weight < 0 || min_lot < 0) {
            if (unit_weight < 0) {
                r.error(path + ".unit_weight_g", "must be positive", n["unit_weight_g"]);
            }
            if (min_lot < 0) {
                r.error(path + ".min_delivery_weight_g", "must be positive", n["min_delivery_weight_g"]);
            }
            complete = false;
        } else {
            s.unit_weight = Weight::grams(unit_weight);
            s.min_delivery_weight = Weight::grams(min_lot);
        }
        s.inspection_fee = MoneyAmount(currency, fee);

        for (const auto& v : s.violations()) {
            const auto colon = v.find(':');
            const std::string field = series_field_path(v.substr(0, colon));
            // Fields that failed to parse were already reported.
            if (!complete && !n[field]) {
                continue;
            }
            r.error(path + "." + field, v.substr(colon + 2), n[field] ? n[field] : n);
        }
        if (!s.series_id.empty() && !seen.insert(s.series_id).second) {
            r.error(path + ".id", "duplicate series id '" + s.series_id + "'", n["id"]);
        }
        cfg.series.push_back(std::move(s));
    }
}

void parse_prices(Reader& r, const YAML::Node& list, ScenarioConfig& cfg) {
    if (!r.is_list(list, "prices")) {
        return;
    }
    std::set<std::pair<std::int64_t, std::string>> seen;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const YAML::Node n = list[i];
        const std::string path = Reader::index("prices", i);
        if (!r.is_map(n, path)) {
            continue;
        }
        r.known_keys(n, path, {"day", "metal", "currency", "price_per_oz"});
        auto day = r.integer(n, path, "day");
        auto metal = r.text(n, path, "metal");
        auto price = r.decimal(n, path, "price_per_oz");
        auto currency = r.currency(n, path, "currency", false);
        if (currency && !(*currency == cfg.currency)) {
            r.error(path + ".currency", "price in " + currency->code() + " but scenario currency is " +
                                            cfg.currency.code(), n["currency"]);
        }
        if (price && *price <= 0) {
            r.error(path + ".price_per_oz", "must be positive", n["price_per_oz"]);
        }
        if (!day || !metal || !price) {
            continue;
        }
        if (!seen.insert({*day, *metal}).second) {
            r.error(path, "duplicate price for " + *metal + " on day " + std::to_string(*day), n);
        }
        cfg.prices.push_back({*day, *metal, cfg.currency, *price});
    }
}

std::optional<EventType> parse_event_type(const std::string& s) {
    for (auto t : {EventType::buy, EventType::buy_in_kind, EventType::transfer, EventType::redeem,
                   EventType::buyback, EventType::reprice}) {
        if (event_type_name(t) == s) {
            return t;
        }
    }
    return std::nullopt;
}

void parse_events(Reader& r, const YAML::Node& list, ScenarioConfig& cfg) {
    if (!r.is_list(list, "events")) {
        return;
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
        const YAML::Node n = list[i];
        const std::string path = Reader::index("events", i);
        if (!r.is_map(n, path)) {
            continue;
        }
        r.known_keys(n, path, {"day", "type", "series", "party", "to", "units", "markup", "rate", "effective_day",
                               "reference"});
        TimelineEvent e;
        auto day = r.integer(n, path, "day");
        auto type_text = r.text(n, path, "type");
        auto series = r.text(n, path, "series");
        std::optional<EventType> type;
        if (type_text) {
            type = parse_event_type(*type_text);
            if (!type) {
                r.error(path + ".type", "unknown event type '" + *type_text + "'", n["type"]);
            }
        }
        if (!day || !type || !series) {
            continue;
        }
        e.day = *day;
        e.type = *type;
        e.series = *series;
        if (e.type != EventType::reprice) {
            if (auto party = r.text(n, path, "party")) {
                e.party = *party;
            }
            if (auto units = r.count(n, path, "units")) {
                e.units = *units;
                if (e.units == 0) {
                    r.error(path + ".units", "must be at least 1", n["units"]);
                }
            }
        }
        if (e.type == EventType::transfer) {
            if (auto to = r.text(n, path, "to")) {
                e.counterparty = *to;
            }
        }
        e.markup = r.decimal(n, path, "markup", false);
        if (e.markup && *e.markup < 0) {
            r.error(path + ".markup", "must be non-negative", n["markup"]);
        }
        e.rate = r.decimal(n, path, "rate", false);
        e.effective_day = r.integer(n, path, "effective_day", false);
        if (const YAML::Node ref = n["reference"]) {
            if (r.is_map(ref, path + ".reference")) {
                for (const auto& kv : ref) {
                    const auto key = kv.first.as<std::string>();
                    if (auto v = r.decimal(ref, path + ".reference", key)) {
                        e.reference.emplace(key, *v);
                    }
                }
            }
        }
        cfg.events.push_back(std::move(e));
    }
}

void parse_calibration(Reader& r, const YAML::Node& n, ScenarioConfig& cfg) {
    const std::string path = "calibration";
    if (!r.is_map(n, path)) {
        return;
    }
    r.known_keys(n, path, {"interval_unit", "backlog_correction", "forecasts"});
    CalibrationConfig c;
    if (auto unit = r.text(n, path, "interval_unit", false)) {
        c.interval_unit = *unit;
    }
    if (auto backlog = r.decimal(n, path, "backlog_correction", false)) {
        c.backlog_correction = *backlog;
        if (*backlog < 0) {
            r.error(path + ".backlog_correction", "must be non-negative", n["backlog_correction"]);
        }
    }
    const YAML::Node list = n["forecasts"];
    if (!list) {
        r.error(path + ".forecasts", "required field missing", n);
    } else if (r.is_list(list, path + ".forecasts")) {
        if (list.size() == 0) {
            r.error(path + ".forecasts", "must not be empty", list);
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            const YAML::Node f = list[i];
            const std::string fpath = Reader::index(path + ".forecasts", i);
            if (!r.is_map(f, fpath)) {
                continue;
            }
            r.known_keys(f, fpath, {"interval", "storage_cost_per_gram", "price_per_gram"});
            auto idx = r.integer(f, fpath, "interval", false);
            auto cost = r.decimal(f, fpath, "storage_cost_per_gram");
            auto price = r.decimal(f, fpath, "price_per_gram");
            if (!cost || !price) {
                continue;
            }
            calibration::IntervalForecast fc{idx ? static_cast<int>(*idx) : static_cast<int>(i + 1),
                                             MoneyAmount(cfg.currency, *cost), MoneyAmount(cfg.currency, *price)};
            try {
                fc.validate();
            } catch (const Error& e) {
                r.error(fpath, e.what(), f);
            }
            c.forecasts.push_back(std::move(fc));
        }
    }
    cfg.calibration = std::move(c);
}

void parse_overdue(Reader& r, const YAML::Node& n, ScenarioConfig& cfg) {
    const std::string path = "overdue";
    if (!r.is_map(n, path)) {
        return;
    }
    r.known_keys(n, path, {"series", "look_back_days", "blend_alpha", "peers"});
    OverdueConfig o;
    if (auto s = r.text(n, path, "series")) {
        o.series = *s;
    }
    if (auto lb = r.count(n, path, "look_back_days")) {
        o.look_back_days = *lb;
    }
    if (auto a = r.decimal(n, path, "blend_alpha")) {
        o.blend_alpha = *a;
        if (*a < 0 || *a > Decimal("0.5")) {
            r.error(path + ".blend_alpha", "must be in [0, 0.5], got " + to_canonical(*a), n["blend_alpha"]);
        }
    }
    if (const YAML::Node list = n["peers"]; list && r.is_list(list, path + ".peers")) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            const YAML::Node p = list[i];
            const std::string ppath = Reader::index(path + ".peers", i);
            if (!r.is_map(p, ppath)) {
                continue;
            }
            r.known_keys(p, ppath, {"issuer", "coefficient", "window_start", "window_end"});
            auto issuer = r.text(p, ppath, "issuer");
            auto coef = r.decimal(p, ppath, "coefficient");
            auto start = r.date(p, ppath, "window_start");
            auto end = r.date(p, ppath, "window_end");
            if (!issuer || !coef || !start || !end) {
                continue;
            }
            overdue::PeerCoefficientSample sample{*issuer, *coef, {*start, *end}};
            try {
                sample.validate();
            } catch (const Error& e) {
                r.error(ppath, e.what(), p);
            }
            o.peers.push_back(std::move(sample));
        }
    }
    cfg.overdue = std::move(o);
}

void parse_solvency(Reader& r, const YAML::Node& n, ScenarioConfig& cfg) {
    const std::string path = "solvency";
    if (!r.is_map(n, path)) {
        return;
    }
    r.known_keys(n, path, {"processing_fee_per_token", "warehouse_rate", "rate_unit", "grams_per_token",
                           "invest_yield", "horizon_day", "reference_price_per_oz", "timeline"});
    SolvencyConfig s;
    auto fee = r.decimal(n, path, "processing_fee_per_token");
    auto rate = r.decimal(n, path, "warehouse_rate");
    auto unit = r.text(n, path, "rate_unit");
    auto grams = r.decimal(n, path, "grams_per_token");
    auto horizon = r.integer(n, path, "horizon_day");
    if (auto y = r.decimal(n, path, "invest_yield", false)) {
        s.invest_yield = *y;
        if (*y < 0) {
            r.error(path + ".invest_yield", "must be non-negative", n["invest_yield"]);
        }
    }
    s.reference_price_per_oz = r.decimal(n, path, "reference_price_per_oz", false);
    if (unit) {
        if (*unit == "gram") {
            s.fees.rate_unit = solvency::RateUnit::gram;
        } else if (*unit == "troy_ounce") {
            s.fees.rate_unit = solvency::RateUnit::troy_ounce;
        } else {
            r.error(path + ".rate_unit", "must be gram or troy_ounce, got '" + *unit + "'", n["rate_unit"]);
        }
    }
    if (horizon) {
        s.horizon_day = *horizon;
        if (*horizon < 0) {
            r.error(path + ".horizon_day", "must be non-negative", n["horizon_day"]);
        }
    }
    if (fee && rate && grams) {
        try {
            s.fees.processing_fee_per_token = MoneyAmount(cfg.currency, *fee);
            s.fees.warehouse_rate = MoneyAmount(cfg.currency, *rate);
            s.fees.grams_per_token = Weight::grams(*grams);
            s.fees.validate();
        } catch (const Error& e) {
            r.error(path, e.what(), n);
        }
    }
    if (const YAML::Node list = n["timeline"]; list && r.is_list(list, path + ".timeline")) {
        std::int64_t last_day = std::numeric_limits<std::int64_t>::min();
        for (std::size_t i = 0; i < list.size(); ++i) {
            const YAML::Node t = list[i];
            const std::string tpath = Reader::index(path + ".timeline", i);
            if (!r.is_map(t, tpath)) {
                continue;
            }
            r.known_keys(t, tpath, {"day", "customer", "action", "tokens"});
            auto day = r.integer(t, tpath, "day");
            auto customer = r.text(t, tpath, "customer");
            auto action = r.text(t, tpath, "action");
            auto tokens = r.count(t, tpath, "tokens");
            if (!day || !customer || !action || !tokens) {
                continue;
            }
            solvency::TimelineEntry entry{*day, *customer, solvency::Action::purchase, *tokens};
            if (*action == "redemption") {
                entry.action = solvency::Action::redemption;
            } else if (*action != "purchase") {
                r.error(tpath + ".action", "must be purchase or redemption, got '" + *action + "'", t["action"]);
            }
            if (*tokens == 0) {
                r.error(tpath + ".tokens", "must be at least 1", t["tokens"]);
            }
            if (*day < last_day) {
                r.error(tpath + ".day", "timeline is not sorted by day", t["day"]);
            }
            if (*day < 0 || (horizon && *day > *horizon)) {
                r.error(tpath + ".day", "outside [0, horizon_day]", t["day"]);
            }
            last_day = *day;
            s.timeline.push_back(std::move(entry));
        }
    }
    cfg.solvency = std::move(s);
}

// Cross-reference checks that need the whole document.
void check_events(Reader& r, const YAML::Node& list, ScenarioConfig& cfg) {
    std::int64_t last_day = std::numeric_limits<std::int64_t>::min();
    for (std::size_t i = 0; i < cfg.events.size(); ++i) {
        const auto& e = cfg.events[i];
        const std::string path = Reader::index("events", i);
        auto at = [&](const char* key) {
            const YAML::Node n = list[i];
            return n[key] ? n[key] : n;
        };
        auto report = [&](const std::string& field, const std::string& message, const YAML::Node& node) {
            r.error(field.empty() ? path : path + "." + field, message, node);
        };
        if (e.day < last_day) {
            report("day", "events are not sorted by day", at("day"));
        }
        last_day = std::max(last_day, e.day);
        const SdcSeries* s = cfg.find_series(e.series);
        if (s == nullptr) {
            report("series", "references undefined series '" + e.series + "'", at("series"));
            continue;
        }
        if (e.day < cfg.issue_day(*s)) {
            report("day", "day " + std::to_string(e.day) + " is before series " + s->series_id + " is issued",
                   at("day"));
        }
        const bool overdue_configured = cfg.overdue && cfg.overdue->series == s->series_id;
        if (e.day > cfg.expiry_day(*s) && !overdue_configured && e.type != EventType::reprice) {
            report("day", "day " + std::to_string(e.day) + " is after series " + s->series_id +
                              " expires and no overdue section covers it", at("day"));
        }
        const bool needs_price =
            e.type == EventType::buy || e.type == EventType::redeem || e.type == EventType::buyback;
        if (needs_price && !cfg.price_on(e.day, s->metal)) {
            report("day", "no " + s->metal + " price for day " + std::to_string(e.day) + " in prices", at("day"));
        }
        if (e.type == EventType::reprice) {
            if (!e.rate && !overdue_configured) {
                report("rate", "reprice needs a rate or an overdue section for series " + s->series_id, list[i]);
            }
            if (e.rate && (*e.rate <= 0 || *e.rate >= 1)) {
                report("rate", "must be in (0, 1), got " + to_canonical(*e.rate), at("rate"));
            }
        }
    }
}

LoadResult parse_document(const YAML::Node& root) {
    LoadResult result;
    auto& cfg = result.config;
    Reader r(result.diagnostics);
    if (!root.IsMap()) {
        r.error("", "scenario must be a mapping", root);
        return result;
    }
    r.known_keys(root, "", {"scenario", "epoch", "currency", "markup", "series", "prices", "events", "calibration",
                            "overdue", "solvency"});
    if (auto name = r.text(root, "", "scenario")) {
        cfg.name = *name;
    }
    if (auto epoch = r.date(root, "", "epoch")) {
        cfg.epoch = *epoch;
    }
    if (auto currency = r.currency(root, "", "currency")) {
        cfg.currency = *currency;
    }
    if (auto markup = r.decimal(root, "", "markup", false)) {
        cfg.markup = *markup;
        if (*markup < 0) {
            r.error("markup", "must be non-negative", root["markup"]);
        }
    }
    if (root["series"]) {
        parse_series(r, root["series"], cfg, cfg.currency);
    }
    for (std::size_t i = 0; i < cfg.series.size(); ++i) {
        if (cfg.series[i].issue_date.ok() && cfg.epoch.ok() && cfg.issue_day(cfg.series[i]) < 0) {
            r.error(Reader::index("series", i) + ".issue_date", "is before the scenario epoch",
                    root["series"][i]["issue_date"]);
        }
    }
    if (root["prices"]) {
        parse_prices(r, root["prices"], cfg);
    }
    if (root["events"]) {
        parse_events(r, root["events"], cfg);
    }
    if (root["calibration"]) {
        parse_calibration(r, root["calibration"], cfg);
    }
    if (root["overdue"]) {
        parse_overdue(r, root["overdue"], cfg);
        if (!cfg.overdue->series.empty() && cfg.find_series(cfg.overdue->series) == nullptr) {
            r.error("overdue.series", "references undefined series '" + cfg.overdue->series + "'",
                    root["overdue"]["series"]);
        }
    }
    if (root["solvency"]) {
        parse_solvency(r, root["solvency"], cfg);
    }
    // Event cross-references only make sense when every event parsed.
    if (root["events"] && root["events"].IsSequence() && cfg.events.size() == root["events"].size()) {
        check_events(r, root["events"], cfg);
    }
    return result;
}

}  // namespace

LoadResult parse_scenario(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        LoadResult result;
        result.diagnostics.push_back({"", "syntax error: " + e.msg, e.mark.is_null() ? 0 : e.mark.line + 1});
        return result;
    }
    try {
        return parse_document(root);
    } catch (const YAML::Exception& e) {
        LoadResult result;
        result.diagnostics.push_back({"", e.msg, e.mark.is_null() ? 0 : e.mark.line + 1});
        return result;
    }
}

LoadResult load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("error reading config " + path.string());
    }
    return parse_scenario(buffer.str());
}

std::vector<Diagnostic> validate(const std::filesystem::path& path) {
    return load_scenario(path).diagnostics;
}

}  // namespace sdc::cli
