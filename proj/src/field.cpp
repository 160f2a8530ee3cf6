#include "sumrank/field.hpp"

#include "sumrank/errors.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace sumrank {

namespace {

using Poly = std::vector<std::uint32_t>; // low degree first

constexpr std::uint64_t kMaxQ = std::uint64_t{1} << 32;
constexpr std::uint32_t kMaxExtensionQ = 1u << 16;

// m < 2^32, so the product of two residues fits in 64 bits.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (a % m) * (b % m) % m;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t k, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (k) {
        if (k & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        k >>= 1;
    }
    return r;
}

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo the monic polynomial g over F_p.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
    trim(f);
    const std::size_t dg = g.size() - 1;
    while (f.size() > dg) {
        const std::uint64_t lead = f.back();
        const std::size_t shift = f.size() - 1 - dg;
        for (std::size_t i = 0; i <= dg; ++i) {
            const std::uint64_t sub = lead * g[i] % p;
            f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
        }
        trim(f);
    }
    return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    return poly_mod(std::move(r), g, p);
}

// Built-in moduli, low degree first.
const std::map<std::uint32_t, Poly>& builtin_moduli() {
    static const std::map<std::uint32_t, Poly> table{
        {4, {1, 1, 1}},                // x^2 + x + 1
        {8, {1, 1, 0, 1}},             // x^3 + x + 1
        {9, {2, 2, 1}},                // x^2 + 2x + 2
        {16, {1, 1, 0, 0, 1}},         // x^4 + x + 1
        {25, {2, 4, 1}},               // x^2 + 4x + 2
        {27, {1, 2, 0, 1}},            // x^3 + 2x + 1
        {32, {1, 0, 1, 0, 0, 1}},      // x^5 + x^2 + 1
        {49, {3, 6, 1}},               // x^2 + 6x + 3
        {64, {1, 1, 0, 1, 1, 0, 1}},   // x^6 + x^4 + x^3 + x + 1
    };
    return table;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> factor_prime_power(std::uint64_t q) {
    if (q < 2 || q >= kMaxQ) return std::nullopt;
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return std::pair{static_cast<std::uint32_t>(q), 1u};
    std::uint32_t e = 0;
    while (q % p == 0) {
        q /= p;
        ++e;
    }
    if (q != 1) return std::nullopt;
    return std::pair{static_cast<std::uint32_t>(p), e};
}

void require_prime_power(std::uint64_t q) {
    if (!factor_prime_power(q)) throw NotAPrimePower(std::to_string(q) + " is not a prime power");
}

bool is_irreducible(const std::vector<std::uint32_t>& monic, std::uint32_t p) {
    if (monic.size() < 2 || monic.back() != 1) return false;
    const std::size_t deg = monic.size() - 1;
    // Every monic divisor candidate of degree d is x^d + (lower part), where
    // the lower part runs over all p^d coefficient vectors.
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        Poly g(d + 1, 0);
        g[d] = 1;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            if (poly_mod(monic, g, p).empty()) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t e) {
    if (e <= 1) return {};
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) q *= p;
    if (auto it = builtin_moduli().find(static_cast<std::uint32_t>(q)); it != builtin_moduli().end())
        return it->second;
    Poly f(e + 1, 0);
    f[e] = 1;
    for (std::uint64_t code = 0; code < q; ++code) {
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < e; ++i) {
            f[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        if (is_irreducible(f, p)) return f;
    }
    throw Error("no irreducible polynomial found"); // unreachable for prime p
}

FieldSpec::FieldSpec(std::uint32_t q, std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus)
    : q_(q), p_(p), e_(e), modulus_(std::move(modulus)) {}

std::shared_ptr<const FieldSpec> FieldSpec::make(std::uint64_t q) {
    const auto pe = factor_prime_power(q);
    if (!pe) throw NotAPrimePower(std::to_string(q) + " is not a prime power");
    const auto [p, e] = *pe;
    if (e > 1 && q > kMaxExtensionQ)
        throw NotAPrimePower("extension fields larger than 2^16 elements are not supported");
    auto modulus = default_modulus(p, e);
    if (e > 1 && !is_irreducible(modulus, p)) throw Error("modulus is reducible");
    std::shared_ptr<FieldSpec> f(new FieldSpec(static_cast<std::uint32_t>(q), p, e, std::move(modulus)));
    if (e > 1) f->build_tables();
    return f;
}

void FieldSpec::build_tables() {
    auto to_poly = [this](std::uint32_t v) {
        Poly out(e_, 0);
        for (std::uint32_t i = 0; i < e_; ++i) {
            out[i] = v % p_;
            v /= p_;
        }
        trim(out);
        return out;
    };
    auto from_poly = [this](const Poly& f) {
        std::uint32_t v = 0;
        for (std::size_t i = f.size(); i-- > 0;) v = v * p_ + f[i];
        return v;
    };

    // Primitive element: g^((q-1)/r) != 1 for every prime r dividing q - 1.
    const std::uint32_t order = q_ - 1;
    const auto factors = prime_factors(order);
    auto poly_pow = [&](const Poly& base, std::uint64_t k) {
        Poly r{1};
        Poly b = base;
        while (k) {
            if (k & 1) r = poly_mulmod(r, b, modulus_, p_);
            b = poly_mulmod(b, b, modulus_, p_);
            k >>= 1;
        }
        return r;
    };
    std::uint32_t generator = 0;
    for (std::uint32_t g = 2; g < q_ && generator == 0; ++g) {
        const Poly gp = to_poly(g);
        const bool primitive = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t r) {
            return poly_pow(gp, order / r) != Poly{1};
        });
        if (primitive) generator = g;
    }

    exp_.assign(2 * static_cast<std::size_t>(order), 0);
    log_.assign(q_, 0);
    Poly cur{1};
    const Poly gp = to_poly(generator);
    for (std::uint32_t k = 0; k < order; ++k) {
        const std::uint32_t v = from_poly(cur);
        exp_[k] = v;
        exp_[k + order] = v;
        log_[v] = k;
        cur = poly_mulmod(cur, gp, modulus_, p_);
    }

    if (q_ <= 256) {
        add_table_.resize(static_cast<std::size_t>(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            for (std::uint32_t b = 0; b < q_; ++b) {
                std::uint32_t x = a, y = b, r = 0, scale = 1;
                for (std::uint32_t i = 0; i < e_; ++i) {
                    r += ((x % p_ + y % p_) % p_) * scale;
                    x /= p_;
                    y /= p_;
                    scale *= p_;
                }
                add_table_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(r);
            }
        }
    }
}

FqElem FieldSpec::add(FqElem a, FqElem b) const noexcept {
    if (e_ == 1) {
        const std::uint64_t s = std::uint64_t{a.value} + b.value;
        return {static_cast<std::uint32_t>(s >= p_ ? s - p_ : s)};
    }
    if (p_ == 2) return {a.value ^ b.value};
    if (!add_table_.empty()) return {add_table_[static_cast<std::size_t>(a.value) * q_ + b.value]};
    std::uint32_t x = a.value, y = b.value, r = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        r += ((x % p_ + y % p_) % p_) * scale;
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return {r};
}

FqElem FieldSpec::neg(FqElem a) const noexcept {
    if (e_ == 1) return {a.value == 0 ? 0 : p_ - a.value};
    if (p_ == 2) return a;
    std::uint32_t x = a.value, r = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        const std::uint32_t c = x % p_;
        r += (c == 0 ? 0 : p_ - c) * scale;
        x /= p_;
        scale *= p_;
    }
    return {r};
}

FqElem FieldSpec::sub(FqElem a, FqElem b) const noexcept { return add(a, neg(b)); }

FqElem FieldSpec::mul(FqElem a, FqElem b) const noexcept {
    if (e_ == 1) return {static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value % p_)};
    if (a.value == 0 || b.value == 0) return zero();
    return {exp_[log_[a.value] + log_[b.value]]};
}

FqElem FieldSpec::inv(FqElem a) const {
    if (a.value == 0) throw DivisionByZero("inverse of zero");
    if (e_ == 1) return {static_cast<std::uint32_t>(powmod(a.value, p_ - 2, p_))};
    const std::uint32_t order = q_ - 1;
    return {exp_[(order - log_[a.value]) % order]};
}

FqElem FieldSpec::pow(FqElem a, std::uint64_t k) const noexcept {
    FqElem r = one();
    while (k) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

FqElem FieldSpec::apply(Op op, FqElem a, FqElem b) const {
    switch (op) {
    case Op::add: return add(a, b);
    case Op::sub: return sub(a, b);
    case Op::mul: return mul(a, b);
    case Op::inv: return inv(b);
    }
    throw Error("unknown field operation");
}

std::vector<std::uint32_t> FieldSpec::coefficients(FqElem a) const {
    std::vector<std::uint32_t> out(e_, 0);
    std::uint32_t v = a.value;
    for (std::uint32_t i = 0; i < e_; ++i) {
        out[i] = v % p_;
        v /= p_;
    }
    return out;
}

FqElem FieldSpec::from_coefficients(const std::vector<std::uint32_t>& coeffs) const {
    if (coeffs.size() != e_) throw ParseError("expected " + std::to_string(e_) + " coefficients");
    std::uint32_t v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= p_) throw ParseError("coefficient out of range");
        v = v * p_ + coeffs[i];
    }
    return {v};
}

std::string FieldSpec::encode(FqElem a) const {
    if (e_ == 1) return std::to_string(a.value);
    std::string out;
    const auto c = coefficients(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ':';
        out += std::to_string(c[i]);
    }
    return out;
}

FqElem FieldSpec::decode(const std::string& token) const {
    auto parse_uint = [](std::string_view s) {
        std::uint32_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
            throw ParseError("malformed field element '" + std::string(s) + "'");
        return v;
    };
    if (e_ == 1) {
        const auto v = parse_uint(token);
        if (v >= p_) throw ParseError("field element out of range: " + token);
        return {v};
    }
    std::vector<std::uint32_t> coeffs;
    std::string_view rest = token;
    while (true) {
        const auto pos = rest.find(':');
        coeffs.push_back(parse_uint(rest.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    return from_coefficients(coeffs);
}

} // namespace sumrank
