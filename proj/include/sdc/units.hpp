#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "sdc/decimal.hpp"

namespace sdc {

using Date = std::chrono::year_month_day;

/// Grams per troy ounce; every per-ounce quote is converted through this.
inline const Decimal kTroyOunceGrams{"31.1035"};

/// Non-negative mass in grams. Arithmetic is unrounded; call `surfaced()` at
/// a settlement boundary.
class Weight {
public:
    Weight() = default;
    static Weight grams(const Decimal& value);
    static Weight grams(std::string_view text) { return grams(parse_decimal(text)); }

    const Decimal& in_grams() const noexcept { return grams_; }
    Decimal surfaced() const { return round_half_even(grams_, kWeightPlaces); }
    std::string str() const { return format_fixed(grams_, kWeightPlaces); }

    Weight operator+(const Weight& other) const { return Weight(grams_ + other.grams_); }
    Weight operator-(const Weight& other) const;
    Weight operator*(const Decimal& factor) const;

    friend bool operator==(const Weight&, const Weight&) = default;
    friend std::weak_ordering operator<=>(const Weight& a, const Weight& b) {
        if (a.grams_ < b.grams_) {
            return std::weak_ordering::less;
        }
        return b.grams_ < a.grams_ ? std::weak_ordering::greater : std::weak_ordering::equivalent;
    }

private:
    explicit Weight(Decimal g) : grams_(std::move(g)) {}
    Decimal grams_{0};
};

/// Three upper-case ASCII letters, ISO-4217 style.
class Currency {
public:
    Currency() = default;
    explicit Currency(std::string_view code);
    const std::string& code() const noexcept { return code_; }
    friend bool operator==(const Currency&, const Currency&) = default;

private:
    std::string code_{"USD"};
};

class MoneyAmount {
public:
    MoneyAmount() = default;
    MoneyAmount(Currency currency, Decimal amount) : currency_(std::move(currency)), amount_(std::move(amount)) {}

    /// Accepts "USD:48.35" or "USD 48.35".
    static MoneyAmount parse(std::string_view text);

    const Currency& currency() const noexcept { return currency_; }
    const Decimal& amount() const noexcept { return amount_; }

    MoneyAmount settled() const { return {currency_, round_half_even(amount_, kMoneyPlaces)}; }
    std::string str() const { return format_fixed(amount_, kMoneyPlaces); }
    std::string tagged() const { return currency_.code() + ":" + to_canonical(amount_); }

    MoneyAmount operator+(const MoneyAmount& other) const;
    MoneyAmount operator-(const MoneyAmount& other) const;
    MoneyAmount operator*(const Decimal& factor) const { return {currency_, amount_ * factor}; }
    MoneyAmount& operator+=(const MoneyAmount& other) { return *this = *this + other; }

    friend bool operator==(const MoneyAmount&, const MoneyAmount&) = default;

private:
    Currency currency_;
    Decimal amount_{0};
};

/// Throws DomainError when currencies differ.
void require_same_currency(const MoneyAmount& a, const MoneyAmount& b);

struct PriceQuote {
    std::string metal;
    Currency currency;
    Decimal price_per_troy_ounce;
    Date quote_date;

    Decimal price_per_gram() const { return divide(price_per_troy_ounce, kTroyOunceGrams); }
    void validate() const;
};

struct DayCount {
    std::uint64_t days = 0;
    friend auto operator<=>(const DayCount&, const DayCount&) = default;
};

/// Calendar subtraction; throws when `to` precedes `from`.
DayCount days_between(const Date& from, const Date& to);

Date add_days(const Date& from, std::int64_t days);

/// Strict YYYY-MM-DD.
Date parse_date(std::string_view text);
std::string format_date(const Date& date);

}  // namespace sdc
