#include "sdc/ledger_log.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <zlib.h>

#include "json.hpp"

namespace sdc::ledger {

namespace {

using Fields = std::vector<std::pair<std::string, std::string>>;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string checksum(std::string_view previous, std::string_view payload) {
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(previous.data()), static_cast<uInt>(previous.size()));
    crc = crc32(crc, reinterpret_cast<const Bytef*>("\n"), 1);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size()));
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc & 0xffffffffUL));
    return buf;
}

const std::string& plain(const std::string& text) {
    for (char c : text) {
        if (c == '\t' || c == '\n' || c == '\r') {
            throw ValidationError("text field contains a tab or line break: '" + text + "'");
        }
    }
    return text;
}

Fields series_fields(const SdcSeries& s) {
    return {
        {"issuer", plain(s.issuer_id)},
        {"issue_date", format_date(s.issue_date)},
        {"metal", plain(s.metal)},
        {"unit_weight", to_canonical(s.unit_weight.in_grams())},
        {"purity", to_canonical(s.purity)},
        {"survival", to_canonical(s.survival_coefficient)},
        {"expiry", format_date(s.expiry)},
        {"delivery_fee", to_canonical(s.delivery_fee_rate)},
        {"repo_fee", to_canonical(s.repo_fee_rate)},
        {"min_delivery", to_canonical(s.min_delivery_weight.in_grams())},
        {"inspection_fee", s.inspection_fee.tagged()},
        {"issue_count", std::to_string(s.issue_count)},
        {"top_up_below_min_lot", s.top_up_below_min_lot ? "1" : "0"},
    };
}

class FieldReader {
public:
    explicit FieldReader(std::map<std::string, std::string> fields) : fields_(std::move(fields)) {}

    const std::string& text(const std::string& key) {
        auto it = fields_.find(key);
        if (it == fields_.end()) {
            throw ValidationError("missing field '" + key + "'");
        }
        used_.push_back(key);
        return it->second;
    }

    Decimal decimal(const std::string& key) { return parse_decimal(text(key)); }
    Weight weight(const std::string& key) { return Weight::grams(decimal(key)); }
    MoneyAmount money(const std::string& key) { return MoneyAmount::parse(text(key)); }
    Date date(const std::string& key) { return parse_date(text(key)); }

    std::uint64_t count(const std::string& key) {
        const std::string& t = text(key);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
            throw ValidationError("field '" + key + "' is not a non-negative integer");
        }
        return value;
    }

    std::int64_t integer(const std::string& key) {
        const std::string& t = text(key);
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
            throw ValidationError("field '" + key + "' is not an integer");
        }
        return value;
    }

    bool flag(const std::string& key) {
        const std::string& t = text(key);
        if (t != "0" && t != "1") {
            throw ValidationError("field '" + key + "' must be 0 or 1");
        }
        return t == "1";
    }

    void finish() const {
        if (used_.size() != fields_.size()) {
            throw ValidationError("unexpected extra fields");
        }
    }

private:
    std::map<std::string, std::string> fields_;
    std::vector<std::string> used_;
};

SdcSeries read_series(FieldReader& r, const std::string& series_id) {
    SdcSeries s;
    s.series_id = series_id;
    s.issuer_id = r.text("issuer");
    s.issue_date = r.date("issue_date");
    s.metal = r.text("metal");
    s.unit_weight = r.weight("unit_weight");
    s.purity = r.decimal("purity");
    s.survival_coefficient = r.decimal("survival");
    s.expiry = r.date("expiry");
    s.delivery_fee_rate = r.decimal("delivery_fee");
    s.repo_fee_rate = r.decimal("repo_fee");
    s.min_delivery_weight = r.weight("min_delivery");
    s.inspection_fee = r.money("inspection_fee");
    s.issue_count = r.count("issue_count");
    s.top_up_below_min_lot = r.flag("top_up_below_min_lot");
    return s;
}

Fields body_fields(const EventBody& body) {
    return std::visit(
        overloaded{
            [](const SeriesIssued& e) { return series_fields(e.series); },
            [](const UnitsSold& e) -> Fields {
                return {{"units", std::to_string(e.units)}, {"price", e.price.tagged()}, {"buyer", plain(e.buyer)}};
            },
            [](const UnitsSoldInKind& e) -> Fields {
                return {{"units", std::to_string(e.units)},
                        {"metal_in", to_canonical(e.metal_in.in_grams())},
                        {"fee", e.fee.tagged()},
                        {"buyer", plain(e.buyer)}};
            },
            [](const Transferred& e) -> Fields {
                return {{"units", std::to_string(e.units)}, {"from", plain(e.from)}, {"to", plain(e.to)}};
            },
            [](const Redeemed& e) -> Fields {
                return {{"units", std::to_string(e.units)},
                        {"holder", plain(e.holder)},
                        {"deliverable", to_canonical(e.deliverable.in_grams())},
                        {"top_up", e.top_up.tagged()}};
            },
            [](const BoughtBack& e) -> Fields {
                return {{"units", std::to_string(e.units)}, {"holder", plain(e.holder)}, {"payout", e.payout.tagged()}};
            },
            [](const OverdueRepriced& e) -> Fields {
                return {{"coefficient", to_canonical(e.new_coefficient)},
                        {"effective_day", std::to_string(e.effective_day)}};
            },
        },
        body);
}

EventBody read_body(const std::string& kind, FieldReader& r, const std::string& series_id) {
    if (kind == "SeriesIssued") {
        return SeriesIssued{read_series(r, series_id)};
    }
    if (kind == "UnitsSold") {
        return UnitsSold{r.count("units"), r.money("price"), r.text("buyer")};
    }
    if (kind == "UnitsSoldInKind") {
        return UnitsSoldInKind{r.count("units"), r.weight("metal_in"), r.money("fee"), r.text("buyer")};
    }
    if (kind == "Transferred") {
        return Transferred{r.count("units"), r.text("from"), r.text("to")};
    }
    if (kind == "Redeemed") {
        return Redeemed{r.count("units"), r.text("holder"), r.weight("deliverable"), r.money("top_up")};
    }
    if (kind == "BoughtBack") {
        return BoughtBack{r.count("units"), r.text("holder"), r.money("payout")};
    }
    if (kind == "OverdueRepriced") {
        return OverdueRepriced{r.decimal("coefficient"), r.integer("effective_day")};
    }
    throw ValidationError("unknown event kind '" + kind + "'");
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

LedgerEvent parse_payload(std::string_view payload) {
    const auto parts = split(payload, '\t');
    if (parts.size() < 4) {
        throw ValidationError("too few columns");
    }
    FieldReader head({{"seq", std::string(parts[0])}, {"day", std::string(parts[1])}});
    LedgerEvent event;
    event.sequence = head.count("seq");
    event.day = head.integer("day");
    event.series_id = std::string(parts[2]);
    std::map<std::string, std::string> fields;
    for (std::size_t i = 4; i < parts.size(); ++i) {
        auto eq = parts[i].find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("column without '='");
        }
        auto [it, inserted] = fields.emplace(std::string(parts[i].substr(0, eq)), std::string(parts[i].substr(eq + 1)));
        if (!inserted) {
            throw ValidationError("duplicate field '" + it->first + "'");
        }
    }
    FieldReader reader(std::move(fields));
    event.body = read_body(std::string(parts[3]), reader, event.series_id);
    reader.finish();
    return event;
}

bool is_hex8(std::string_view s) {
    if (s.size() != 8) {
        return false;
    }
    for (char c : s) {
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) {
            return false;
        }
    }
    return true;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

using nlohmann::ordered_json;

ordered_json series_json(const SdcSeries& s) {
    ordered_json j;
    j["series_id"] = s.series_id;
    for (const auto& [k, v] : series_fields(s)) {
        j[k] = v;
    }
    return j;
}

SdcSeries series_from_json(const ordered_json& j) {
    std::map<std::string, std::string> fields;
    for (const auto& [k, v] : j.items()) {
        if (k != "series_id") {
            fields.emplace(k, v.get<std::string>());
        }
    }
    FieldReader r(std::move(fields));
    SdcSeries s = read_series(r, j.at("series_id").get<std::string>());
    r.finish();
    return s;
}

}  // namespace

LogCorrupted::LogCorrupted(std::size_t line, const std::string& detail)
    : IoError("log corrupted at line " + std::to_string(line) + ": " + detail), line_(line) {}

std::string encode_log(std::span<const LedgerEvent> events) {
    std::string out;
    std::string previous = checksum("", kLogHeader);
    out.append(kLogHeader).append("\tchk=").append(previous).push_back('\n');
    for (const auto& e : events) {
        std::string payload = std::to_string(e.sequence) + "\t" + std::to_string(e.day) + "\t" + plain(e.series_id) +
                              "\t" + std::string(kind_name(e.body));
        for (const auto& [key, value] : body_fields(e.body)) {
            payload += "\t" + key + "=" + value;
        }
        previous = checksum(previous, payload);
        out.append(payload).append("\tchk=").append(previous).push_back('\n');
    }
    return out;
}

std::vector<LedgerEvent> decode_log(std::string_view text) {
    std::vector<LedgerEvent> events;
    if (text.empty()) {
        return events;
    }
    if (text.back() != '\n') {
        throw LogCorrupted(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1,
                           "missing final line break");
    }
    text.remove_suffix(1);
    const auto lines = split(text, '\n');
    std::string previous;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const std::string_view line = lines[i];
        const auto marker = line.rfind("\tchk=");
        if (marker == std::string_view::npos) {
            throw LogCorrupted(line_no, "no checksum");
        }
        const std::string_view payload = line.substr(0, marker);
        const std::string_view stored = line.substr(marker + 5);
        if (!is_hex8(stored) || stored != checksum(previous, payload)) {
            throw LogCorrupted(line_no, "checksum mismatch");
        }
        previous = std::string(stored);
        if (i == 0) {
            if (payload != kLogHeader) {
                throw LogCorrupted(line_no, "unsupported header");
            }
            continue;
        }
        try {
            events.push_back(parse_payload(payload));
        } catch (const Error& err) {
            throw LogCorrupted(line_no, err.what());
        }
    }
    return events;
}

void write_log(const std::filesystem::path& path, std::span<const LedgerEvent> events) {
    write_file(path, encode_log(events));
}

std::vector<LedgerEvent> read_log(const std::filesystem::path& path) {
    return decode_log(read_file(path));
}

std::string encode_snapshot(const LedgerState& state) {
    ordered_json j;
    j["format"] = "sdc-ledger-snapshot";
    j["version"] = 1;
    j["event_count"] = state.event_count;
    j["last_sequence"] = state.last_sequence ? ordered_json(*state.last_sequence) : ordered_json(nullptr);
    j["day"] = state.day;
    ordered_json books = ordered_json::object();
    for (const auto& [id, b] : state.books) {
        ordered_json book;
        book["series"] = series_json(b.series);
        book["issue_day"] = b.issue_day;
        ordered_json decay = ordered_json::array();
        for (const auto& seg : b.decay) {
            decay.push_back({{"start_day", seg.start_day}, {"survival", to_canonical(seg.survival)}});
        }
        book["decay"] = decay;
        ordered_json holders = ordered_json::object();
        for (const auto& [holder, units] : b.holders) {
            holders[holder] = units;
        }
        book["holders"] = holders;
        book["outstanding_units"] = b.outstanding_units;
        book["destroyed_units"] = b.destroyed_units;
        book["vault_grams"] = to_canonical(b.vault_grams);
        book["issuer_accrued_grams"] = to_canonical(b.issuer_accrued_grams);
        book["extracted_grams"] = to_canonical(b.extracted_grams);
        books[id] = book;
    }
    j["books"] = books;
    return j.dump(2) + "\n";
}

LedgerState decode_snapshot(std::string_view text) {
    LedgerState state;
    try {
        const auto j = ordered_json::parse(text);
        if (j.at("format") != "sdc-ledger-snapshot" || j.at("version") != 1) {
            throw IoError("snapshot has an unsupported format");
        }
        state.event_count = j.at("event_count").get<std::uint64_t>();
        if (!j.at("last_sequence").is_null()) {
            state.last_sequence = j.at("last_sequence").get<std::uint64_t>();
        }
        state.day = j.at("day").get<std::int64_t>();
        for (const auto& [id, book] : j.at("books").items()) {
            SeriesBook b;
            b.series = series_from_json(book.at("series"));
            b.issue_day = book.at("issue_day").get<std::int64_t>();
            for (const auto& seg : book.at("decay")) {
                b.decay.push_back({seg.at("start_day").get<std::int64_t>(),
                                   parse_decimal(seg.at("survival").get<std::string>())});
            }
            for (const auto& [holder, units] : book.at("holders").items()) {
                b.holders.emplace(holder, units.get<std::uint64_t>());
            }
            b.outstanding_units = book.at("outstanding_units").get<std::uint64_t>();
            b.destroyed_units = book.at("destroyed_units").get<std::uint64_t>();
            b.vault_grams = parse_decimal(book.at("vault_grams").get<std::string>());
            b.issuer_accrued_grams = parse_decimal(book.at("issuer_accrued_grams").get<std::string>());
            b.extracted_grams = parse_decimal(book.at("extracted_grams").get<std::string>());
            state.books.emplace(id, std::move(b));
        }
    } catch (const nlohmann::json::exception& err) {
        throw IoError(std::string("snapshot malformed: ") + err.what());
    } catch (const ValidationError& err) {
        throw IoError(std::string("snapshot malformed: ") + err.what());
    }
    return state;
}

void save_snapshot(const std::filesystem::path& path, const LedgerState& state) {
    write_file(path, encode_snapshot(state));
}

LedgerState load_snapshot(const std::filesystem::path& path) {
    return decode_snapshot(read_file(path));
}

}  // namespace sdc::ledger
