#include "sdc/units.hpp"

#include <cctype>
#include <cstdio>

#include "sdc/error.hpp"

namespace sdc {

Weight Weight::grams(const Decimal& value) {
    if (value < 0) {
        throw DomainError("weight must be non-negative, got " + to_canonical(value) + " g");
    }
    return Weight(value);
}

Weight Weight::operator-(const Weight& other) const {
    if (other.grams_ > grams_) {
        throw DomainError("weight subtraction would go negative");
    }
    return Weight(grams_ - other.grams_);
}

Weight Weight::operator*(const Decimal& factor) const {
    if (factor < 0) {
        throw DomainError("weight scaled by a negative factor");
    }
    return Weight(grams_ * factor);
}

Currency::Currency(std::string_view code) {
    bool ok = code.size() == 3;
    for (char c : code) {
        ok = ok && c >= 'A' && c <= 'Z';
    }
    if (!ok) {
        throw ValidationError("currency code must be three upper-case letters, got '" + std::string(code) + "'");
    }
    code_ = std::string(code);
}

MoneyAmount MoneyAmount::parse(std::string_view text) {
    auto sep = text.find_first_of(": ");
    if (sep == std::string_view::npos) {
        throw ValidationError("money amount must look like 'USD:12.34', got '" + std::string(text) + "'");
    }
    return {Currency(text.substr(0, sep)), parse_decimal(text.substr(sep + 1))};
}

void require_same_currency(const MoneyAmount& a, const MoneyAmount& b) {
    if (!(a.currency() == b.currency())) {
        throw DomainError("currency mismatch: " + a.currency().code() + " vs " + b.currency().code());
    }
}

MoneyAmount MoneyAmount::operator+(const MoneyAmount& other) const {
    require_same_currency(*this, other);
    return {currency_, amount_ + other.amount_};
}

MoneyAmount MoneyAmount::operator-(const MoneyAmount& other) const {
    require_same_currency(*this, other);
    return {currency_, amount_ - other.amount_};
}

void PriceQuote::validate() const {
    if (price_per_troy_ounce <= 0) {
        throw DomainError("price per troy ounce must be positive for " + metal);
    }
}

DayCount days_between(const Date& from, const Date& to) {
    const auto diff = (std::chrono::sys_days(to) - std::chrono::sys_days(from)).count();
    if (diff < 0) {
        throw DomainError("date " + format_date(to) + " precedes " + format_date(from));
    }
    return DayCount{static_cast<std::uint64_t>(diff)};
}

Date add_days(const Date& from, std::int64_t days) {
    return Date(std::chrono::sys_days(from) + std::chrono::days(days));
}

Date parse_date(std::string_view text) {
    const auto bad = [&] { return ValidationError("expected a YYYY-MM-DD date, got '" + std::string(text) + "'"); };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw bad();
    }
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw bad();
        }
    }
    const int y = std::stoi(std::string(text.substr(0, 4)));
    const unsigned m = static_cast<unsigned>(std::stoi(std::string(text.substr(5, 2))));
    const unsigned d = static_cast<unsigned>(std::stoi(std::string(text.substr(8, 2))));
    Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) {
        throw bad();
    }
    return date;
}

std::string format_date(const Date& date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

}  // namespace sdc
