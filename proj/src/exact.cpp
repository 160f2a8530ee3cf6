#include "sumrank/exact.hpp"

#include "sumrank/errors.hpp"

#include <regex>

namespace sumrank {

std::string ratio_string(const ExactRatio& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

ExactRatio parse_ratio(const std::string& text) {
    static const std::regex pattern(R"((-?[0-9]+)(?:/([0-9]+))?)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) throw ParseError("malformed rational '" + text + "'");
    const ExactInt num(m[1].str());
    const ExactInt den = m[2].matched ? ExactInt(m[2].str()) : ExactInt(1);
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return ExactRatio(num, den);
}

ExactInt ipow(std::uint64_t base, std::uint64_t exponent) {
    return boost::multiprecision::pow(ExactInt(base), static_cast<unsigned>(exponent));
}

std::string to_decimal(const ExactRatio& r, unsigned significant) {
    if (significant == 0) significant = 1;
    if (r == 0) return "0";
    const bool negative = r < 0;
    const ExactInt num = abs(numerator(r));
    const ExactInt den = denominator(r);

    // Smallest exponent E with value < 10^(E+1).
    long exponent = static_cast<long>(num.str().size()) - static_cast<long>(den.str().size());
    auto below_power = [&](long k) { // value < 10^k
        return k >= 0 ? num < den * ipow(10, static_cast<std::uint64_t>(k))
                      : num * ipow(10, static_cast<std::uint64_t>(-k)) < den;
    };
    while (!below_power(exponent + 1)) ++exponent;
    while (below_power(exponent)) --exponent;

    auto scaled_digits = [&](long e) {
        // round(value * 10^(significant - 1 - e))
        const long shift = static_cast<long>(significant) - 1 - e;
        ExactInt n = num, d = den;
        if (shift >= 0) n *= ipow(10, static_cast<std::uint64_t>(shift));
        else d *= ipow(10, static_cast<std::uint64_t>(-shift));
        ExactInt q = n / d;
        if (2 * (n - q * d) >= d) ++q;
        return q;
    };
    ExactInt digits = scaled_digits(exponent);
    if (digits.str().size() > significant) { // rounded up to the next power of ten
        ++exponent;
        digits = scaled_digits(exponent);
    }

    std::string s = digits.str();
    std::string out;
    if (exponent >= 0) {
        const auto int_len = static_cast<std::size_t>(exponent) + 1;
        if (s.size() <= int_len) {
            out = s + std::string(int_len - s.size(), '0');
        } else {
            out = s.substr(0, int_len) + "." + s.substr(int_len);
        }
    } else {
        out = "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + s;
    }
    return negative ? "-" + out : out;
}

} // namespace sumrank
