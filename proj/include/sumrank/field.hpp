#pragma once

// Arithmetic in GF(q) for prime q and small prime-power q.
//
// Elements are stored as a single integer. For q = p the integer is the
// residue in [0, p). For q = p^e with e > 1 the integer packs the coefficient
// vector (c_0, ..., c_{e-1}) of c_0 + c_1 x + ... + c_{e-1} x^{e-1} in base p,
// so the element x is encoded as p and x + 1 as p + 1.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sumrank {

struct FqElem {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(FqElem, FqElem) = default;
};

/// q = p^e factorisation, or nullopt when q is not a prime power.
/// Accepts q < 2^32.
[[nodiscard]] std::optional<std::pair<std::uint32_t, std::uint32_t>> factor_prime_power(std::uint64_t q);

[[nodiscard]] bool is_prime(std::uint64_t n);

/// Throws NotAPrimePower unless q is a prime power below 2^32.
void require_prime_power(std::uint64_t q);

/// True when the monic polynomial with the given coefficients (low degree
/// first, leading 1 included) has no monic factor of degree 1..deg/2 over F_p.
[[nodiscard]] bool is_irreducible(const std::vector<std::uint32_t>& monic, std::uint32_t p);

/// Immutable description of GF(q) plus the lookup tables used for arithmetic.
class FieldSpec {
public:
    enum class Op { add, sub, mul, inv };

    /// Validates q and constructs the field. Extension fields above 2^16
    /// elements are rejected.
    [[nodiscard]] static std::shared_ptr<const FieldSpec> make(std::uint64_t q);

    [[nodiscard]] std::uint32_t q() const noexcept { return q_; }
    [[nodiscard]] std::uint32_t p() const noexcept { return p_; }
    [[nodiscard]] std::uint32_t e() const noexcept { return e_; }
    /// Monic modulus, low degree first, length e + 1. Empty for prime fields.
    [[nodiscard]] const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    [[nodiscard]] static constexpr FqElem zero() noexcept { return {0}; }
    [[nodiscard]] static constexpr FqElem one() noexcept { return {1}; }

    [[nodiscard]] bool is_canonical(FqElem a) const noexcept { return a.value < q_; }

    [[nodiscard]] FqElem add(FqElem a, FqElem b) const noexcept;
    [[nodiscard]] FqElem sub(FqElem a, FqElem b) const noexcept;
    [[nodiscard]] FqElem neg(FqElem a) const noexcept;
    [[nodiscard]] FqElem mul(FqElem a, FqElem b) const noexcept;
    /// Throws DivisionByZero for a = 0.
    [[nodiscard]] FqElem inv(FqElem a) const;
    [[nodiscard]] FqElem pow(FqElem a, std::uint64_t k) const noexcept;

    /// Dispatching form: for Op::inv the operand b is inverted and a ignored.
    [[nodiscard]] FqElem apply(Op op, FqElem a, FqElem b) const;

    [[nodiscard]] std::vector<std::uint32_t> coefficients(FqElem a) const;
    [[nodiscard]] FqElem from_coefficients(const std::vector<std::uint32_t>& coeffs) const;

    /// Integer for prime fields, "c0:c1:...:c_{e-1}" otherwise.
    [[nodiscard]] std::string encode(FqElem a) const;
    /// Inverse of encode. Throws ParseError on malformed or out-of-range input.
    [[nodiscard]] FqElem decode(const std::string& token) const;

private:
    FieldSpec(std::uint32_t q, std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus);

    void build_tables();

    std::uint32_t q_;
    std::uint32_t p_;
    std::uint32_t e_;
    std::vector<std::uint32_t> modulus_;

    // Extension fields only: discrete log tables with respect to a primitive
    // element, and a full addition table for q <= 256.
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint16_t> add_table_;
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Canonical irreducible modulus used for GF(p^e): a built-in table entry
/// when available, otherwise the first irreducible monic polynomial in
/// lexicographic order of (c_{e-1}, ..., c_0).
[[nodiscard]] std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t e);

} // namespace sumrank
