#include "ckn/rational.hpp"

#include <cctype>
#include <cstdint>
#include <cstdlib>

namespace ckn {

namespace {

long long parse_ll(std::string_view s, std::string_view whole) {
    if (s.empty()) throw InvalidParams("cannot parse rational: '" + std::string(whole) + "'");
    long long value = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw InvalidParams("cannot parse rational: '" + std::string(whole) + "'");
        value = value * 10 + (c - '0');
        if (value < 0) throw InvalidParams("rational out of range: '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Rational rational_from_string(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw InvalidParams("cannot parse rational: empty string");

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        long long num = parse_ll(s.substr(0, slash), text);
        long long den = parse_ll(s.substr(slash + 1), text);
        if (den == 0) throw InvalidParams("zero denominator: '" + std::string(text) + "'");
        Rational r(num, den);
        return negative ? -r : r;
    }

    auto dot = s.find('.');
    if (dot == std::string_view::npos) {
        long long num = parse_ll(s, text);
        return Rational(negative ? -num : num);
    }

    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
        throw InvalidParams("cannot parse rational: '" + std::string(text) + "'");
    long long whole = int_part.empty() ? 0 : parse_ll(int_part, text);
    long long num = frac_part.empty() ? 0 : parse_ll(frac_part, text);
    long long den = 1;
    for (size_t i = 0; i < frac_part.size(); ++i) {
        if (den > 922337203685477580LL / 10)
            throw InvalidParams("rational out of range: '" + std::string(text) + "'");
        den *= 10;
    }
    Rational r = Rational(whole) + Rational(num, den);
    return negative ? -r : r;
}

std::string rational_to_string(const Rational& x) {
    long long num = x.numerator();
    long long den = x.denominator();
    if (den == 1) return std::to_string(num);

    // Terminating decimal iff den = 2^i 5^j.
    long long d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1 || std::max(twos, fives) > 18)
        return std::to_string(num) + "/" + std::to_string(den);

    int digits = std::max(twos, fives);
    __int128 scaled = static_cast<__int128>(num < 0 ? -num : num);
    for (int i = 0; i < digits - twos; ++i) scaled *= 2;
    for (int i = 0; i < digits - fives; ++i) scaled *= 5;

    __int128 pow10 = 1;
    for (int i = 0; i < digits; ++i) pow10 *= 10;
    __int128 whole = scaled / pow10;
    __int128 frac = scaled % pow10;

    std::string frac_str(digits, '0');
    for (int i = digits - 1; i >= 0; --i) {
        frac_str[i] = static_cast<char>('0' + static_cast<int>(frac % 10));
        frac /= 10;
    }
    while (!frac_str.empty() && frac_str.back() == '0') frac_str.pop_back();

    std::string out;
    if (num < 0) out += '-';
    // whole fits in long long: |num|/den < |num|
    out += std::to_string(static_cast<long long>(whole));
    if (!frac_str.empty()) {
        out += '.';
        out += frac_str;
    }
    return out;
}

}  // namespace ckn
