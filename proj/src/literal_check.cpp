#include <cctype>

#include "lexkg/validator.hpp"

namespace lexkg::validation {

namespace {

bool digit(char c) { return c >= '0' && c <= '9'; }

std::size_t count_digits(std::string_view s, std::size_t pos) {
    std::size_t n = 0;
    while (pos + n < s.size() && digit(s[pos + n])) ++n;
    return n;
}

int two_digits(std::string_view s, std::size_t pos) { return (s[pos] - '0') * 10 + (s[pos + 1] - '0'); }

bool is_integer(std::string_view s, bool allow_minus) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '+' || (allow_minus && s[0] == '-'))) i = 1;
    return i < s.size() && count_digits(s, i) == s.size() - i;
}

bool is_decimal(std::string_view s) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) i = 1;
    const std::size_t int_digits = count_digits(s, i);
    i += int_digits;
    if (i == s.size()) return int_digits > 0;
    if (s[i] != '.') return false;
    ++i;
    const std::size_t frac_digits = count_digits(s, i);
    i += frac_digits;
    return i == s.size() && (int_digits + frac_digits) > 0;
}

/// (Z | (+|-)hh:mm)? at `pos` through the end of the string.
bool timezone_ok(std::string_view s, std::size_t pos) {
    if (pos == s.size()) return true;
    if (s.substr(pos) == "Z") return true;
    if (s.size() - pos != 6 || (s[pos] != '+' && s[pos] != '-') || s[pos + 3] != ':') return false;
    if (!digit(s[pos + 1]) || !digit(s[pos + 2]) || !digit(s[pos + 4]) || !digit(s[pos + 5])) return false;
    const int hh = two_digits(s, pos + 1);
    const int mm = two_digits(s, pos + 4);
    return mm <= 59 && (hh < 14 || (hh == 14 && mm == 0));
}

/// -?YYYY-MM-DD; returns the position after the day or npos.
std::size_t parse_date_part(std::string_view s) {
    std::size_t i = 0;
    if (!s.empty() && s[0] == '-') i = 1;
    const std::size_t year_digits = count_digits(s, i);
    if (year_digits < 4 || (year_digits > 4 && s[i] == '0') || year_digits > 9) return std::string_view::npos;
    long year = 0;
    for (std::size_t k = 0; k < year_digits; ++k) year = year * 10 + (s[i + k] - '0');
    if (year == 0) return std::string_view::npos;
    if (i == 1) year = -year;
    i += year_digits;
    if (s.size() < i + 6 || s[i] != '-' || !digit(s[i + 1]) || !digit(s[i + 2]) || s[i + 3] != '-' ||
        !digit(s[i + 4]) || !digit(s[i + 5]))
        return std::string_view::npos;
    const int month = two_digits(s, i + 1);
    const int day = two_digits(s, i + 4);
    if (!is_valid_calendar_date(year, month, day)) return std::string_view::npos;
    return i + 6;
}

bool is_date(std::string_view s) {
    const auto end = parse_date_part(s);
    return end != std::string_view::npos && timezone_ok(s, end);
}

bool is_date_time(std::string_view s) {
    const auto end = parse_date_part(s);
    if (end == std::string_view::npos || s.size() < end + 9 || s[end] != 'T') return false;
    const std::size_t t = end + 1;
    if (!digit(s[t]) || !digit(s[t + 1]) || s[t + 2] != ':' || !digit(s[t + 3]) || !digit(s[t + 4]) ||
        s[t + 5] != ':' || !digit(s[t + 6]) || !digit(s[t + 7]))
        return false;
    const int hh = two_digits(s, t);
    const int mm = two_digits(s, t + 3);
    const int ss = two_digits(s, t + 6);
    std::size_t i = t + 8;
    bool fraction_zero = true;
    if (i < s.size() && s[i] == '.') {
        const std::size_t n = count_digits(s, i + 1);
        if (n == 0) return false;
        for (std::size_t k = i + 1; k <= i + n; ++k) fraction_zero = fraction_zero && s[k] == '0';
        i += 1 + n;
    }
    if (hh == 24) {
        if (mm != 0 || ss != 0 || !fraction_zero) return false;
    } else if (hh > 23 || mm > 59 || ss > 59) {
        return false;
    }
    return timezone_ok(s, i);
}

std::string xsd(std::string_view local) { return std::string(rdf::ns::xsd) + std::string(local); }

}  // namespace

bool is_valid_calendar_date(long year, int month, int day) noexcept {
    if (month < 1 || month > 12 || day < 1) return false;
    static constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    const int limit = (month == 2 && leap) ? 29 : days[month - 1];
    return day <= limit;
}

bool is_supported_datatype(const rdf::Iri& datatype) {
    const auto& d = datatype.str();
    return d == xsd("string") || d == xsd("integer") || d == xsd("nonNegativeInteger") ||
           d == xsd("decimal") || d == xsd("boolean") || d == xsd("date") || d == xsd("dateTime");
}

std::optional<LiteralIssue> validate_literal(std::string_view lexical, const rdf::Iri& datatype) {
    const auto& d = datatype.str();
    auto bad = [&](const char* expected) {
        return LiteralIssue{Severity::error,
                            "'" + std::string(lexical) + "' is not a valid " + expected};
    };
    if (d == xsd("string")) return std::nullopt;
    if (d == xsd("integer")) {
        if (is_integer(lexical, true)) return std::nullopt;
        return bad("xsd:integer");
    }
    if (d == xsd("nonNegativeInteger")) {
        if (is_integer(lexical, false)) return std::nullopt;
        return bad("xsd:nonNegativeInteger (digits, no minus sign)");
    }
    if (d == xsd("decimal")) {
        if (is_decimal(lexical)) return std::nullopt;
        return bad("xsd:decimal");
    }
    if (d == xsd("boolean")) {
        if (lexical == "true" || lexical == "false" || lexical == "1" || lexical == "0") return std::nullopt;
        return bad("xsd:boolean (true, false, 1 or 0)");
    }
    if (d == xsd("date")) {
        if (is_date(lexical)) return std::nullopt;
        return bad("xsd:date (YYYY-MM-DD, real calendar day)");
    }
    if (d == xsd("dateTime")) {
        if (is_date_time(lexical)) return std::nullopt;
        return bad("xsd:dateTime (YYYY-MM-DDThh:mm:ss)");
    }
    return LiteralIssue{Severity::warning, "datatype <" + d + "> of '" + std::string(lexical) +
                                               "' is not checked"};
}

}  // namespace lexkg::validation
