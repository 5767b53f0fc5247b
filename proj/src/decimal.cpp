#include "sdc/decimal.hpp"

#include <cctype>
#include <ios>
#include <limits>

#include "sdc/error.hpp"

namespace sdc {

namespace {

bool is_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

Decimal power_of_ten(int exponent) {
    return Decimal("1e" + std::to_string(exponent));
}

constexpr int kQuotientDigits = 60;

}  // namespace

Decimal parse_decimal(std::string_view text) {
    std::string_view rest = text;
    if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
        rest.remove_prefix(1);
    }
    std::string_view mantissa = rest;
    std::string_view exponent;
    if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = rest.substr(0, e);
        exponent = rest.substr(e + 1);
        if (!exponent.empty() && (exponent.front() == '+' || exponent.front() == '-')) {
            exponent.remove_prefix(1);
        }
        if (!is_digits(exponent) || exponent.size() > 4) {
            throw ValidationError("not a decimal number: '" + std::string(text) + "'");
        }
    }
    std::string_view whole = mantissa;
    std::string_view fraction;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        whole = mantissa.substr(0, dot);
        fraction = mantissa.substr(dot + 1);
        if (!fraction.empty() && !is_digits(fraction)) {
            throw ValidationError("not a decimal number: '" + std::string(text) + "'");
        }
    }
    if (!is_digits(whole) || (mantissa.find('.') != std::string_view::npos && fraction.empty())) {
        throw ValidationError("not a decimal number: '" + std::string(text) + "'");
    }
    return Decimal(std::string(text));
}

Decimal divide(const Decimal& numerator, const Decimal& denominator) {
    if (denominator == 0) {
        throw DomainError("division by zero");
    }
    const Decimal raw = numerator / denominator;
    if (raw == 0) {
        return raw;
    }
    return Decimal(raw.str(kQuotientDigits, std::ios_base::scientific));
}

Decimal round_half_even(const Decimal& value, int places) {
    const Decimal scaled = value * power_of_ten(places);
    Decimal floor_part = boost::multiprecision::floor(scaled);
    const Decimal remainder = scaled - floor_part;
    const Decimal half{"0.5"};
    if (remainder > half) {
        floor_part += 1;
    } else if (remainder == half && boost::multiprecision::fmod(floor_part, Decimal{2}) != 0) {
        floor_part += 1;
    }
    return floor_part * power_of_ten(-places);
}

std::string format_fixed(const Decimal& value, int places) {
    Decimal rounded = round_half_even(value, places);
    if (rounded == 0) {
        rounded = 0;  // drops a negative sign on zero
    }
    std::string text = rounded.str(places, std::ios_base::fixed);
    if (places == 0) {
        if (auto dot = text.find('.'); dot != std::string::npos) {
            text.erase(dot);
        }
    }
    return text;
}

std::string to_canonical(const Decimal& value) {
    if (value == 0) {
        return "0";
    }
    std::string fixed = value.str(40, std::ios_base::fixed);
    if (auto dot = fixed.find('.'); dot != std::string::npos) {
        while (fixed.back() == '0') {
            fixed.pop_back();
        }
        if (fixed.back() == '.') {
            fixed.pop_back();
        }
    }
    if (fixed.size() <= 60 && Decimal(fixed) == value) {
        return fixed;
    }
    std::string sci = value.str(std::numeric_limits<Decimal>::max_digits10, std::ios_base::scientific);
    const auto e = sci.find('e');
    std::size_t end = e;
    while (end > 0 && sci[end - 1] == '0') {
        --end;
    }
    if (sci[end - 1] == '.') {
        --end;
    }
    return sci.substr(0, end) + sci.substr(e);
}

Decimal pow_by_squaring(Decimal base, std::uint64_t exponent) {
    Decimal result{1};
    while (exponent != 0) {
        if (exponent & 1u) {
            result *= base;
        }
        exponent >>= 1;
        if (exponent != 0) {
            base *= base;
        }
    }
    return result;
}

}  // namespace sdc
