#include "sumrank/counting.hpp"

#include "sumrank/errors.hpp"
#include "sumrank/field.hpp"

namespace sumrank {

namespace {

void require_dims(std::int64_t big, std::int64_t t, const char* what) {
    if (t < 0) throw InvalidDimension("t must be nonnegative");
    if (big < t) throw InvalidDimension(std::string(what) + " must be at least t");
}

// q^k for possibly negative k.
ExactRatio qpow(std::uint64_t q, std::int64_t k) {
    if (k >= 0) return ExactRatio(ipow(q, static_cast<std::uint64_t>(k)));
    return ExactRatio(ExactInt(1), ipow(q, static_cast<std::uint64_t>(-k)));
}

} // namespace

void validate_scenario(const Scenario& s) {
    require_prime_power(s.q);
    require_dims(s.m, s.t, "m");
    for (const auto part : s.partition.parts())
        if (static_cast<std::int64_t>(part) < s.t)
            throw InvalidDimension("every partition part must be at least t (part " + std::to_string(part) +
                                   " < t = " + std::to_string(s.t) + ")");
}

ExactInt q_falling_product(std::uint64_t q, std::int64_t r, std::int64_t t) {
    require_prime_power(q);
    if (t < 0) throw InvalidDimension("t must be nonnegative");
    if (r < 0) throw InvalidDimension("exponent r must be nonnegative");
    const ExactInt x = ipow(q, static_cast<std::uint64_t>(r));
    ExactInt result = 1;
    ExactInt qi = 1;
    for (std::int64_t i = 0; i < t; ++i) {
        result *= x - qi;
        qi *= q;
    }
    return result;
}

ExactInt gaussian_binomial(std::int64_t m, std::int64_t t, std::uint64_t q) {
    require_dims(m, t, "m");
    const ExactInt num = q_falling_product(q, m, t);
    const ExactInt den = q_falling_product(q, t, t);
    if (num % den != 0) throw Error("internal: Gaussian binomial division is not exact");
    return num / den;
}

ExactInt count_fixed_colspace(std::int64_t n, std::int64_t t, std::uint64_t q) {
    require_dims(n, t, "n");
    return q_falling_product(q, n, t);
}

ExactInt count_rank_t(std::int64_t m, std::int64_t n, std::int64_t t, std::uint64_t q) {
    require_dims(m, t, "m");
    require_dims(n, t, "n");
    return gaussian_binomial(m, t, q) * q_falling_product(q, n, t);
}

ExactInt count_full_sumrank(const Scenario& s) {
    validate_scenario(s);
    ExactInt result = gaussian_binomial(s.m, s.t, s.q);
    for (const auto part : s.partition.parts()) result *= q_falling_product(s.q, static_cast<std::int64_t>(part), s.t);
    return result;
}

ExactRatio exact_prob_full_sumrank(const Scenario& s) {
    validate_scenario(s);
    ExactInt num = 1;
    for (const auto part : s.partition.parts()) num *= q_falling_product(s.q, static_cast<std::int64_t>(part), s.t);
    return ExactRatio(num, q_falling_product(s.q, s.n(), s.t));
}

ExactRatio lower_bound_prob(std::int64_t n, std::int64_t ell, std::int64_t t, std::uint64_t q) {
    if (ell < 1) throw InvalidDimension("l must be at least 1");
    if (t < 1) throw InvalidDimension("t must be at least 1");
    if (n < ell * t) throw InvalidDimension("n must be at least l*t");
    const ExactInt num = boost::multiprecision::pow(q_falling_product(q, t, t), static_cast<unsigned>(ell - 1)) *
                         q_falling_product(q, n - (ell - 1) * t, t);
    return ExactRatio(num, q_falling_product(q, n, t));
}

ExactRatio lower_bound_product(std::int64_t n, std::int64_t ell, std::int64_t t, std::uint64_t q,
                               std::int64_t first_index) {
    require_prime_power(q);
    if (ell < 1) throw InvalidDimension("l must be at least 1");
    if (t < 1) throw InvalidDimension("t must be at least 1");
    if (n < ell * t) throw InvalidDimension("n must be at least l*t");
    ExactRatio result = 1;
    const ExactRatio one = 1;
    for (std::int64_t i = first_index; i < t; ++i) {
        const ExactRatio block = one - qpow(q, i - t);
        const ExactRatio last = one - qpow(q, i - n + (ell - 1) * t);
        const ExactRatio whole = one - qpow(q, i - n);
        for (std::int64_t k = 0; k < ell - 1; ++k) result *= block;
        result *= last;
        result /= whole;
    }
    return result;
}

PochhammerEnclosure pochhammer_partial(std::uint64_t q, std::uint64_t terms) {
    require_prime_power(q);
    if (terms == 0) throw InvalidDimension("at least one term is required");
    PochhammerEnclosure out;
    out.q = q;
    out.terms = terms;
    ExactInt num = 1, den = 1, qj = 1;
    for (std::uint64_t j = 1; j <= terms; ++j) {
        qj *= q;
        num *= qj - 1;
        den *= qj;
    }
    out.partial = ExactRatio(num, den);
    // prod_{j>J}(1 - q^{-j}) >= 1 - sum_{j>J} q^{-j} = 1 - q^{-J}/(q-1)
    out.lower = out.partial * (ExactRatio(1) - ExactRatio(ExactInt(1), qj * (q - 1)));
    out.partial_decimal = to_decimal(out.partial, 30);
    out.lower_decimal = to_decimal(out.lower, 30);
    return out;
}

ExactRatio pentagonal_series(std::uint64_t q, std::int64_t K) {
    require_prime_power(q);
    ExactRatio sum = 0;
    for (std::int64_t k = -K; k <= K; ++k) {
        const std::int64_t exponent = k * (3 * k - 1) / 2;
        const ExactRatio term = qpow(q, -exponent);
        sum += (k % 2 == 0) ? term : ExactRatio(-term);
    }
    return sum;
}

ExactRatio pentagonal_lower_bound(std::uint64_t q) {
    require_prime_power(q);
    return ExactRatio(1) - qpow(q, -1) - qpow(q, -2);
}

ExactRatio corollary_bound(std::uint64_t q, std::int64_t ell) {
    if (ell < 1) throw InvalidDimension("l must be at least 1");
    const ExactRatio base = pentagonal_lower_bound(q);
    ExactRatio result = 1;
    for (std::int64_t i = 0; i < ell; ++i) result *= base;
    return result;
}

bool quarter_threshold_applies(std::uint64_t q, std::int64_t ell) {
    return ell >= 1 && static_cast<std::uint64_t>(ell) + 1 <= q;
}

} // namespace sumrank
